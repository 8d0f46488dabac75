#include "dp1/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace dp1 {

Rat rat_of(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat_of: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos)
    throw std::invalid_argument("parse_rat: empty input");
  std::string s = text.substr(begin, end - begin + 1);

  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  // mpq_set_str rejects a leading '+', so drop it after validation.
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };

  std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) throw std::invalid_argument("parse_rat: not a rational: '" + text + "'");
    return Rat(strip_plus(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("parse_rat: not a rational: '" + text + "'");
  num = strip_plus(num);
  den = strip_plus(den);
  Rat d(den);
  if (d == 0) throw std::invalid_argument("parse_rat: zero denominator: '" + text + "'");
  Rat r = Rat(num) / d;
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& x) {
  Rat c(x);
  c.canonicalize();
  return c.get_str();
}

std::string rat_approx(const Rat& x, int significant) {
  if (significant < 1) significant = 1;
  if (sgn(x) == 0) return "0";

  mpz_class num = abs(x.get_num());
  mpz_class den = x.get_den();

  // Decimal exponent e with 10^e <= num/den < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto at_least_pow = [&](long k) {
    // true iff num/den >= 10^k
    mpz_class p;
    if (k >= 0) {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
      return num >= den * p;
    }
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-k));
    return num * p >= den;
  };
  while (!at_least_pow(e)) --e;
  while (at_least_pow(e + 1)) ++e;

  // mantissa = round(num * 10^(sig-1-e) / den), half away from zero.
  long shift = significant - 1 - e;
  mpz_class scaled_num = num, scaled_den = den;
  mpz_class p;
  if (shift >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    scaled_num *= p;
  } else {
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    scaled_den *= p;
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  if (r * 2 >= scaled_den) q += 1;

  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > significant) {
    // Rounding carried into an extra digit (e.g. 999.96 -> 1000).
    digits.pop_back();
    ++e;
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  std::string sign = (sgn(x) < 0) ? "-" : "";
  if (e >= 0 && e <= 14) {
    std::string out;
    if (static_cast<long>(digits.size()) <= e) {
      out = digits + std::string(e + 1 - digits.size(), '0');
    } else if (static_cast<long>(digits.size()) == e + 1) {
      out = digits;
    } else {
      out = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
    }
    return sign + out;
  }
  if (e < 0 && e >= -4) {
    return sign + "0." + std::string(-e - 1, '0') + digits;
  }
  std::string mant = digits.substr(0, 1);
  if (digits.size() > 1) mant += "." + digits.substr(1);
  return sign + mant + "e" + (e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
}

}  // namespace dp1
