#include "dp1/report.hpp"

#include <atomic>
#include <exception>
#include <ostream>
#include <thread>

namespace dp1 {

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Inserts the exact value and, on request, a labeled decimal companion.
void put_rat(Json& j, const std::string& key, const Rat& v, bool approx) {
  j[key] = rat_str(v);
  if (approx) j[key + "_approx"] = rat_approx(v);
}

Json a_sorted_json(const Decomposition& d) {
  Json arr = Json::array();
  for (const Rat& c : d.a_sorted) arr.push_back(rat_str(c));
  return arr;
}

Json exceptionals_json(const Decomposition& d) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < d.exceptionals.size(); ++i) {
    Json e;
    e["name"] = curve_name(d.exceptionals[i]);
    e["class"] = class_tuple(d.exceptionals[i].cls);
    e["coefficient"] = rat_str(d.coefficients[i]);
    arr.push_back(e);
  }
  return arr;
}

bool want_alpha_mu_a(Normalization n) { return n != Normalization::A; }
bool want_alpha_a(Normalization n) {
  return n == Normalization::A || n == Normalization::Both;
}
bool want_nu_a(Normalization n) { return n != Normalization::MuA; }
bool want_nu_mu_a(Normalization n) {
  return n == Normalization::MuA || n == Normalization::Both;
}

Json oracle_json(const AlphaReport& rep, bool approx) {
  Json o;
  put_rat(o, "alpha_c_oracle", rep.oracle.value, approx);
  o["max_mult"] = rat_str(rep.oracle.max_mult);
  o["argmax"] = rep.oracle.argmax_name;
  o["argmax_class"] = class_tuple(rep.oracle.argmax);
  o["agree"] = rep.agree;
  o["lemma_ok"] = rep.lemma_ok;
  o["extended"] = rep.extended;
  return o;
}

Json closed_json(const AlphaClosed& c) {
  Json j;
  j["value"] = rat_str(c.value);
  j["branch"] = alpha_branch_name(c.branch);
  Json cand = Json::array();
  for (const Rat& v : c.candidates) cand.push_back(rat_str(v));
  j["candidates"] = cand;
  if (c.mid_winner >= 0) j["winner"] = c.mid_winner;
  j["capped"] = c.capped;
  Json prof;
  prof["a1"] = rat_str(c.a1);
  prof["a2"] = rat_str(c.a2);
  prof["a3"] = rat_str(c.a3);
  prof["a4"] = rat_str(c.a4);
  prof["s"] = rat_str(c.s);
  prof["a"] = rat_str(c.a);
  j["profile"] = prof;
  j["relabeled"] = c.relabeled;
  if (c.relabeled) {
    Json per = Json::array();
    for (const Rat& v : c.per_m) per.push_back(rat_str(v));
    j["deletion_readings"] = per;
    j["relabeling_consistent"] = c.relabeling_consistent;
    j["literal_value"] = rat_str(c.literal_value);
    j["literal_agrees"] = c.literal_agrees;
  }
  return j;
}

}  // namespace

std::string normalization_name(Normalization n) {
  switch (n) {
    case Normalization::Default: return "default";
    case Normalization::MuA: return "muA";
    case Normalization::A: return "A";
    case Normalization::Both: return "both";
  }
  return "?";
}

std::string class_tuple(const DivClass& x) {
  std::string out;
  for (int i = 0; i < 9; ++i) {
    if (i) out += ",";
    out += rat_str(x.coeffs[i]);
  }
  return out;
}

std::string kind_str(const Decomposition& d) {
  if (d.kind == ContractionKind::Birational) return "birational";
  return d.subtype == BundleSubtype::F1 ? "conic-f1" : "conic-p1p1";
}

Json check_json(const DivClass& input, const AmpleCheck& chk) {
  Json j;
  j["schema"] = "1";
  j["command"] = "check";
  j["input_class"] = class_tuple(input);
  j["ample"] = chk.ample;
  if (!chk.ample && chk.witness) {
    j["witness"] = curve_name(*chk.witness);
    j["witness_class"] = class_tuple(chk.witness->cls);
    j["pairing"] = rat_str(chk.pairing);
  }
  return j;
}

Json decompose_json(const DivClass& input, const Decomposition& d) {
  Json j;
  j["schema"] = "1";
  j["command"] = "decompose";
  j["input_class"] = class_tuple(input);
  j["mu"] = rat_str(d.mu);
  j["kind"] = kind_str(d);
  j["exceptionals"] = exceptionals_json(d);
  if (d.kind == ContractionKind::ConicBundle) {
    j["a"] = rat_str(d.a);
    j["fiber_class"] = class_tuple(d.fiber_class);
  }
  j["a_sorted"] = a_sorted_json(d);
  j["s_A"] = rat_str(d.s_A);
  Json face = Json::array();
  for (const CurveClass& c : d.face) face.push_back(curve_name(c));
  j["face"] = face;
  j["face_certificate"] = class_tuple(d.face_certificate);
  return j;
}

Json alpha_json(const DivClass& input, const Decomposition& d, const AlphaReport& rep,
                const ReportOptions& opt) {
  Json j;
  j["schema"] = "1";
  j["command"] = "alpha";
  j["input_class"] = class_tuple(input);
  j["mu"] = rat_str(d.mu);
  j["kind"] = kind_str(d);
  j["a_sorted"] = a_sorted_json(d);
  j["a"] = rat_str(d.a);
  j["s_A"] = rat_str(d.s_A);
  if (want_alpha_mu_a(opt.normalization)) {
    put_rat(j, "alpha_c_muA", rep.closed.value, opt.approx);
  }
  if (want_alpha_a(opt.normalization)) {
    put_rat(j, "alpha_c_A", d.mu * rep.closed.value, opt.approx);
  }
  j["closed"] = closed_json(rep.closed);
  j["mult_bound"] = rat_str(rep.bound);
  j["oracle"] = oracle_json(rep, opt.approx);
  j["agree"] = rep.agree;
  return j;
}

Json verdict_json(const DivClass& input, const Verdict& v, const ReportOptions& opt) {
  Json j;
  j["schema"] = "1";
  j["command"] = "verdict";
  j["input_class"] = class_tuple(input);
  put_rat(j, "mu", v.mu, opt.approx);
  j["kind"] = kind_str(v.decomp);
  j["exceptionals"] = exceptionals_json(v.decomp);
  if (v.decomp.kind == ContractionKind::ConicBundle) {
    j["a"] = rat_str(v.decomp.a);
    j["fiber_class"] = class_tuple(v.decomp.fiber_class);
  }
  j["a_sorted"] = a_sorted_json(v.decomp);
  j["s_A"] = rat_str(v.decomp.s_A);
  const Normalization n = opt.normalization;
  if (want_alpha_mu_a(n)) put_rat(j, "alpha_c_muA", v.closed.value, opt.approx);
  if (want_alpha_a(n)) put_rat(j, "alpha_c_A", v.alpha_c_a, opt.approx);
  j["alpha_branch"] = alpha_branch_name(v.closed.branch);
  j["point_bound"] = rat_str(v.point_bound);
  if (want_alpha_mu_a(n)) j["alpha_lower_muA"] = rat_str(v.alpha_lower_mu_a);
  if (want_alpha_a(n)) j["alpha_lower_A"] = rat_str(v.alpha_lower_a);
  if (want_nu_a(n)) put_rat(j, "nu_A", v.nu_a, opt.approx);
  if (want_nu_mu_a(n)) put_rat(j, "nu_muA", v.nu_mu_a, opt.approx);
  j["condition_i"] = v.dervan_condition_i;
  Json nef;
  nef["holds"] = v.nef.holds;
  nef["test_divisor"] = class_tuple(v.nef.test_divisor);
  if (!v.nef.holds && v.nef.witness) {
    nef["witness"] = curve_name(*v.nef.witness);
    nef["pairing"] = rat_str(v.nef.pairing);
  }
  j["nef"] = nef;
  if (v.z_check) {
    Json z;
    z["lhs"] = rat_str(v.z_check->lhs);
    z["rhs"] = rat_str(v.z_check->rhs);
    z["holds"] = v.z_check->holds;
    j["z_check"] = z;
  }
  if (v.alpha_report) j["oracle"] = oracle_json(*v.alpha_report, opt.approx);
  j["outcome"] = outcome_name(v.outcome);
  return j;
}

Json selftest_json(const SelftestConfig& cfg, const SelftestReport& rep) {
  Json j;
  j["schema"] = "1";
  j["command"] = "selftest";
  j["seed"] = cfg.seed;
  j["per_stratum"] = cfg.per_stratum;
  j["extended_oracle"] = cfg.extended_oracle;
  if (cfg.inject_drop_curves) j["inject_drop_curves"] = cfg.inject_drop_curves;
  if (cfg.inject_perturb_formula) j["inject_perturb_formula"] = true;
  Json props = Json::array();
  for (const PropertyResult& p : rep.properties) {
    Json e;
    e["name"] = p.name;
    e["pass"] = p.pass;
    e["detail"] = p.detail;
    props.push_back(e);
  }
  j["properties"] = props;
  j["all_pass"] = rep.all_pass;
  return j;
}

Json not_ample_json(const std::string& command, const DivClass& input, const NotAmple& e) {
  Json j;
  j["schema"] = "1";
  j["command"] = command;
  j["input_class"] = class_tuple(input);
  Json err;
  err["type"] = "not-ample";
  err["witness"] = curve_name(e.witness);
  err["witness_class"] = class_tuple(e.witness.cls);
  err["pairing"] = rat_str(e.pairing);
  j["error"] = err;
  return j;
}

void check_text(std::ostream& out, const DivClass& input, const AmpleCheck& chk) {
  out << "class: " << div_str(input) << "  (" << class_tuple(input) << ")\n";
  out << "ample: " << bool_str(chk.ample) << "\n";
  if (!chk.ample && chk.witness) {
    out << "witness: " << curve_name(*chk.witness) << ", pairing " << rat_str(chk.pairing)
        << "\n";
  }
}

void decompose_text(std::ostream& out, const DivClass& input, const Decomposition& d) {
  out << "class: " << div_str(input) << "  (" << class_tuple(input) << ")\n";
  out << "mu: " << rat_str(d.mu) << "\n";
  out << "kind: " << kind_str(d) << "\n";
  if (d.kind == ContractionKind::ConicBundle) {
    out << "fiber class B: " << div_str(d.fiber_class) << ", a = " << rat_str(d.a) << "\n";
  }
  out << "components of K + mu*A" << (d.kind == ContractionKind::ConicBundle ? " - a*B" : "")
      << ":\n";
  for (std::size_t i = 0; i < d.exceptionals.size(); ++i) {
    out << "  " << curve_name(d.exceptionals[i]) << ": " << rat_str(d.coefficients[i])
        << "\n";
  }
  out << "sorted coefficients:";
  for (const Rat& c : d.a_sorted) out << " " << rat_str(c);
  out << "\n";
  out << "s_A: " << rat_str(d.s_A) << "\n";
  out << "face:";
  for (const CurveClass& c : d.face) out << " " << curve_name(c);
  out << "\n";
  out << "face certificate: " << div_str(d.face_certificate) << "\n";
}

void alpha_text(std::ostream& out, const DivClass& input, const Decomposition& d,
                const AlphaReport& rep, const ReportOptions& opt) {
  out << "class: " << div_str(input) << "  (" << class_tuple(input) << ")\n";
  out << "mu: " << rat_str(d.mu) << ", kind: " << kind_str(d) << ", s_A: " << rat_str(d.s_A)
      << "\n";
  const AlphaClosed& c = rep.closed;
  out << "alpha_c(S, muA) = " << rat_str(c.value);
  if (opt.approx) out << " (~" << rat_approx(c.value) << ")";
  out << "  [branch " << alpha_branch_name(c.branch) << (c.capped ? ", capped at 1" : "")
      << "]\n";
  if (want_alpha_a(opt.normalization)) {
    out << "alpha_c(S, A) = mu * alpha_c(S, muA) = " << rat_str(d.mu * c.value) << "\n";
  }
  if (!c.candidates.empty()) {
    out << "candidates:";
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
      out << " " << rat_str(c.candidates[i]);
      if (static_cast<int>(i) == c.mid_winner) out << "*";
    }
    out << "\n";
  }
  if (c.relabeled) {
    out << "deletion readings:";
    for (const Rat& v : c.per_m) out << " " << rat_str(v);
    out << (c.relabeling_consistent ? "  (consistent)" : "  (inconsistent)") << "\n";
    out << "printed expressions give " << rat_str(c.literal_value)
        << (c.literal_agrees ? " (agrees)" : " (differs)") << "\n";
  }
  out << "multiplicity bound: " << rat_str(rep.bound) << "\n";
  out << "oracle: " << rat_str(rep.oracle.value) << " (max multiplicity "
      << rat_str(rep.oracle.max_mult) << " along " << rep.oracle.argmax_name << ")"
      << (rep.extended ? " [extended]" : "") << "\n";
  out << "closed form agrees with oracle: " << bool_str(rep.agree) << "\n";
  out << "multiplicity bound check: " << bool_str(rep.lemma_ok) << "\n";
}

void verdict_text(std::ostream& out, const DivClass& input, const Verdict& v) {
  out << "class: " << div_str(input) << "  (" << class_tuple(input) << ")\n";
  for (const TraceEntry& t : v.trace) out << t.label << ": " << t.value << "\n";
}

void selftest_text(std::ostream& out, const SelftestReport& rep) {
  int failed = 0;
  for (const PropertyResult& p : rep.properties) {
    if (!p.pass) ++failed;
    out << (p.pass ? "pass: " : "FAIL: ") << p.name;
    if (!p.detail.empty()) out << " (" << p.detail << ")";
    out << "\n";
  }
  if (rep.all_pass) {
    out << "selftest: all " << rep.properties.size() << " properties pass\n";
  } else {
    out << "selftest: " << failed << " of " << rep.properties.size()
        << " properties FAILED\n";
  }
}

std::vector<ScanRow> run_scan(const ScanGrid& grid, bool extended_oracle) {
  const std::size_t dims = grid.directions.size();
  std::size_t total = 1;
  for (int s : grid.steps) total *= static_cast<std::size_t>(s);
  std::vector<ScanRow> rows(total);
  std::vector<std::exception_ptr> errors(total);

  // Explicit return type: letting the compiler deduce it would hand back a
  // lazy gmp expression referring to dead temporaries.
  auto lambda_at = [&](std::size_t axis, std::size_t k) -> Rat {
    const Rat& lo = grid.ranges[axis].first;
    const Rat& hi = grid.ranges[axis].second;
    return lo + (hi - lo) * Rat(static_cast<long>(k)) / Rat(grid.steps[axis]);
  };

  auto eval_row = [&](std::size_t idx) {
    ScanRow& row = rows[idx];
    std::size_t inner = dims == 2 ? static_cast<std::size_t>(grid.steps[1]) : 1;
    std::size_t k1 = idx / inner;
    row.lambdas.push_back(lambda_at(0, k1));
    DivClass cls = grid.base + grid.directions[0] * row.lambdas[0];
    if (dims == 2) {
      row.lambdas.push_back(lambda_at(1, idx % inner));
      cls = cls + grid.directions[1] * row.lambdas[1];
    }
    VerdictOptions opts;
    opts.with_oracle = true;
    opts.extended_oracle = extended_oracle;
    try {
      row.verdict = verdict(cls, opts);
    } catch (const NotAmple&) {
      row.verdict.reset();
    }
  };

  // Grid points are independent pure computations; evaluate them on a small
  // pool and keep the rows indexed so output order never depends on timing.
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > total) workers = total;
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) eval_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= total) return;
          try {
            eval_row(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (std::size_t i = 0; i < total; ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
    }
  }
  return rows;
}

namespace {

// The normalization-selected scalar columns shared by the scan renderers.
std::vector<std::pair<std::string, Rat>> scan_values(const Verdict& v,
                                                     const ReportOptions& opt) {
  std::vector<std::pair<std::string, Rat>> out;
  out.push_back({"alpha_c_closed", v.closed.value});
  Rat oracle = v.alpha_report ? v.alpha_report->oracle.value : v.closed.value;
  out.push_back({"alpha_c_oracle", oracle});
  out.push_back({"nu", v.nu_a});
  if (want_alpha_a(opt.normalization)) out.push_back({"alpha_c_A", v.alpha_c_a});
  if (want_nu_mu_a(opt.normalization)) out.push_back({"nu_muA", v.nu_mu_a});
  return out;
}

std::vector<std::string> scan_value_names(const ReportOptions& opt) {
  std::vector<std::string> names = {"alpha_c_closed", "alpha_c_oracle", "nu"};
  if (want_alpha_a(opt.normalization)) names.push_back("alpha_c_A");
  if (want_nu_mu_a(opt.normalization)) names.push_back("nu_muA");
  return names;
}

}  // namespace

Json scan_json(const ScanGrid& grid, const std::vector<ScanRow>& rows, bool extended_oracle,
               const ReportOptions& opt) {
  Json j;
  j["schema"] = "1";
  j["command"] = "scan";
  j["base"] = class_tuple(grid.base);
  Json dirs = Json::array();
  for (const DivClass& d : grid.directions) dirs.push_back(class_tuple(d));
  j["directions"] = dirs;
  Json ranges = Json::array();
  for (const auto& r : grid.ranges) {
    ranges.push_back(Json::array({rat_str(r.first), rat_str(r.second)}));
  }
  j["ranges"] = ranges;
  j["steps"] = grid.steps;
  j["normalization"] = normalization_name(opt.normalization);
  j["extended_oracle"] = extended_oracle;
  Json out_rows = Json::array();
  for (const ScanRow& row : rows) {
    Json r;
    put_rat(r, "lambda1", row.lambdas[0], opt.approx);
    if (row.lambdas.size() == 2) put_rat(r, "lambda2", row.lambdas[1], opt.approx);
    r["ample"] = row.verdict.has_value();
    if (row.verdict) {
      const Verdict& v = *row.verdict;
      r["mu"] = rat_str(v.mu);
      r["kind"] = kind_str(v.decomp);
      r["a_sorted"] = a_sorted_json(v.decomp);
      r["a"] = rat_str(v.decomp.a);
      r["s_A"] = rat_str(v.decomp.s_A);
      for (const auto& [name, value] : scan_values(v, opt)) {
        put_rat(r, name, value, opt.approx);
      }
      r["nef"] = v.nef.holds;
      r["verdict"] = outcome_name(v.outcome);
    }
    out_rows.push_back(r);
  }
  j["rows"] = out_rows;
  return j;
}

std::string scan_csv(const ScanGrid& grid, const std::vector<ScanRow>& rows,
                     const ReportOptions& opt) {
  std::string out = "# schema=1\n";
  const bool two = grid.directions.size() == 2;
  std::vector<std::string> names = scan_value_names(opt);
  out += "lambda1";
  if (two) out += ",lambda2";
  out += ",mu,kind,a1,a2,a3,a4,a5,a6,a7,a8,a,s_A";
  for (const std::string& n : names) out += "," + n;
  out += ",nef,verdict";
  if (opt.approx) {
    for (const std::string& n : names) out += "," + n + "_approx";
  }
  out += "\n";
  for (const ScanRow& row : rows) {
    out += rat_str(row.lambdas[0]);
    if (two) out += "," + rat_str(row.lambdas[1]);
    if (!row.verdict) {
      // Placeholder row: kind and verdict say not-ample, value columns stay
      // empty, column count unchanged.
      out += ",,not-ample";
      for (int i = 0; i < 10; ++i) out += ",";
      for (std::size_t i = 0; i < names.size(); ++i) out += ",";
      out += ",,not-ample";
      if (opt.approx) {
        for (std::size_t i = 0; i < names.size(); ++i) out += ",";
      }
      out += "\n";
      continue;
    }
    const Verdict& v = *row.verdict;
    out += "," + rat_str(v.mu);
    out += "," + kind_str(v.decomp);
    for (const Rat& c : v.decomp.a_sorted) out += "," + rat_str(c);
    out += "," + rat_str(v.decomp.a);
    out += "," + rat_str(v.decomp.s_A);
    auto values = scan_values(v, opt);
    for (const auto& [name, value] : values) {
      (void)name;
      out += "," + rat_str(value);
    }
    out += ",";
    out += bool_str(v.nef.holds);
    out += "," + outcome_name(v.outcome);
    if (opt.approx) {
      for (const auto& [name, value] : values) {
        (void)name;
        out += "," + rat_approx(value);
      }
    }
    out += "\n";
  }
  return out;
}

void scan_text(std::ostream& out, const ScanGrid& grid, const std::vector<ScanRow>& rows,
               const ReportOptions& opt) {
  out << "scan: base " << div_str(grid.base);
  for (std::size_t i = 0; i < grid.directions.size(); ++i) {
    out << ", direction " << div_str(grid.directions[i]) << " over ["
        << rat_str(grid.ranges[i].first) << ", " << rat_str(grid.ranges[i].second) << ") in "
        << grid.steps[i] << " steps";
  }
  out << "\n";
  for (const ScanRow& row : rows) {
    out << "lambda1=" << rat_str(row.lambdas[0]);
    if (row.lambdas.size() == 2) out << " lambda2=" << rat_str(row.lambdas[1]);
    if (!row.verdict) {
      out << "  not-ample\n";
      continue;
    }
    const Verdict& v = *row.verdict;
    out << "  mu=" << rat_str(v.mu) << " kind=" << kind_str(v.decomp)
        << " s_A=" << rat_str(v.decomp.s_A);
    for (const auto& [name, value] : scan_values(v, opt)) {
      out << " " << name << "=" << rat_str(value);
    }
    out << " nef=" << bool_str(v.nef.holds) << " verdict=" << outcome_name(v.outcome)
        << "\n";
  }
}

Json compare_json(std::uint64_t seed, int per_stratum, bool extended_oracle,
                  const std::vector<CompareRow>& rows) {
  Json j;
  j["schema"] = "1";
  j["command"] = "oracle-compare";
  j["seed"] = seed;
  j["per_stratum"] = per_stratum;
  j["extended_oracle"] = extended_oracle;
  Json out_rows = Json::array();
  int agree_count = 0;
  for (const CompareRow& r : rows) {
    if (r.agree && r.lemma_ok) ++agree_count;
    Json e;
    e["name"] = r.name;
    e["class"] = class_tuple(r.cls);
    e["kind"] = r.kind;
    e["branch"] = r.branch;
    e["alpha_c_closed"] = rat_str(r.closed);
    e["alpha_c_oracle"] = rat_str(r.oracle);
    e["agree"] = r.agree;
    e["lemma_ok"] = r.lemma_ok;
    out_rows.push_back(e);
  }
  j["rows"] = out_rows;
  j["agree_count"] = agree_count;
  j["total"] = rows.size();
  j["all_agree"] = agree_count == static_cast<int>(rows.size());
  return j;
}

void compare_text(std::ostream& out, const std::vector<CompareRow>& rows) {
  int agree_count = 0;
  for (const CompareRow& r : rows) {
    bool ok = r.agree && r.lemma_ok;
    if (ok) ++agree_count;
    out << r.name << ": closed " << rat_str(r.closed) << ", oracle " << rat_str(r.oracle)
        << " [" << r.kind << ", " << r.branch << "] "
        << (ok ? "agree" : (r.agree ? "BOUND-CHECK-FAIL" : "DISAGREE")) << "\n";
  }
  if (agree_count == static_cast<int>(rows.size())) {
    out << "agree: 100% (" << rows.size() << "/" << rows.size() << ")\n";
  } else {
    out << "agree: " << agree_count << "/" << rows.size() << " (disagreements above)\n";
  }
}

}  // namespace dp1
