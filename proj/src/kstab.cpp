#include "dp1/kstab.hpp"

namespace dp1 {

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

Rat slope_nu(const DivClass& a) {
  AmpleCheck chk = is_ample(a);
  if (!chk.ample) throw NotAmple(*chk.witness, chk.pairing);
  DivClass mk = -canonical_class();
  return intersect(mk, a) / intersect(a, a);
}

NefCondition nef_condition(const DivClass& a) {
  NefCondition out;
  Rat nu = slope_nu(a);
  out.test_divisor = -canonical_class() - (rat_of(2, 3) * nu) * a;
  NefCheck chk = is_nef(out.test_divisor);
  out.holds = chk.nef;
  out.witness = chk.witness;
  out.pairing = chk.pairing;
  return out;
}

Rat point_alpha_bound(const Decomposition& d) {
  return Rat(2) / (Rat(3) + d.a_sorted[0]);
}

ZClassCheck z_class_inequality(const Decomposition& d, const DivClass& a) {
  ZClassCheck out;
  out.lhs = Rat(1) / (Rat(3) * d.a_sorted[0] + Rat(2) * d.s_A + Rat(1) + Rat(2) * d.a);
  out.rhs = rat_of(2, 3) * slope_nu(a) * (Rat(1) / d.mu);
  out.holds = out.lhs >= out.rhs;
  return out;
}

std::string outcome_name(Outcome o) {
  return o == Outcome::KStable ? "KStable" : "Inconclusive";
}

Verdict verdict(const DivClass& a, const VerdictOptions& opts) {
  Verdict v;
  v.decomp = decompose(a);
  v.mu = v.decomp.mu;
  v.nu_a = slope_nu(a);
  v.nu_mu_a = v.nu_a / v.mu;
  v.nef = nef_condition(a);
  v.closed = alpha_c_closed_form(v.decomp);
  v.alpha_c_a = v.mu * v.closed.value;
  v.point_bound = point_alpha_bound(v.decomp);
  v.alpha_lower_mu_a =
      v.closed.value < v.point_bound ? v.closed.value : v.point_bound;
  v.alpha_lower_a = v.mu * v.alpha_lower_mu_a;
  v.dervan_condition_i = v.alpha_lower_mu_a > rat_of(2, 3) * v.nu_mu_a;
  if (v.nef.holds) v.z_check = z_class_inequality(v.decomp, a);
  if (opts.with_oracle) {
    v.alpha_report = compare_alpha(v.decomp, opts.extended_oracle);
  }
  v.outcome = v.nef.holds ? Outcome::KStable : Outcome::Inconclusive;

  auto put = [&](const std::string& label, const std::string& value) {
    v.trace.push_back({label, value});
  };
  put("mu", rat_str(v.mu));
  put("nu(A)", rat_str(v.nu_a));
  put("nu(muA) = nu(A)/mu", rat_str(v.nu_mu_a));
  put("contraction", v.decomp.kind == ContractionKind::Birational
                         ? "birational"
                         : (v.decomp.subtype == BundleSubtype::F1
                                ? "conic bundle (extra section)"
                                : "conic bundle (no extra section)"));
  put("alpha_c(S,muA) closed form", rat_str(v.closed.value));
  put("alpha_c branch", alpha_branch_name(v.closed.branch));
  put("alpha_c(S,A) = mu*alpha_c(S,muA)", rat_str(v.alpha_c_a));
  put("point bound 2/(3+a1)", rat_str(v.point_bound));
  put("alpha(S,muA) lower bound", rat_str(v.alpha_lower_mu_a));
  put("alpha(S,A) lower bound", rat_str(v.alpha_lower_a));
  put("condition (i): lower bound > (2/3)nu(muA)", bool_str(v.dervan_condition_i));
  put("nef test divisor -K-(2/3)nu(A)A", div_str(v.nef.test_divisor));
  put("nef condition", bool_str(v.nef.holds));
  if (!v.nef.holds && v.nef.witness) {
    put("nef witness", curve_name(*v.nef.witness));
    put("nef witness pairing", rat_str(v.nef.pairing));
  }
  if (v.z_check) {
    put("z-class check 1/(3a1+2s_A+1+2a)", rat_str(v.z_check->lhs));
    put("z-class check (2/3)nu(muA)", rat_str(v.z_check->rhs));
    put("z-class inequality", bool_str(v.z_check->holds));
  }
  if (v.alpha_report) {
    put("alpha_c oracle", rat_str(v.alpha_report->oracle.value));
    put("oracle max multiplicity", rat_str(v.alpha_report->oracle.max_mult));
    put("oracle argmax", v.alpha_report->oracle.argmax_name);
    put("closed form agrees with oracle", bool_str(v.alpha_report->agree));
    put("multiplicity bound check", bool_str(v.alpha_report->lemma_ok));
  }
  put("outcome", outcome_name(v.outcome));
  return v;
}

}  // namespace dp1
