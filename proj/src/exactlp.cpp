#include "dp1/exactlp.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace dp1 {
namespace {

constexpr std::size_t kRows = 9;
// Bland's rule makes cycling impossible, so this cap only guards against an
// implementation bug turning into a hang.
constexpr long kPivotCap = 2000000;

// Dense tableau. Column layout: [0..kRows) artificial columns (these stay
// around because together they hold the current basis inverse), then the
// structural columns, then the right-hand side. obj holds the reduced costs
// z_j - c_j with the current objective value in the rhs slot. The simplex
// convention throughout is maximization.
struct Tab {
  std::size_t ncols = 0;
  std::vector<std::vector<Rat>> row;
  std::vector<Rat> obj;
  std::vector<std::size_t> basis;
  long pivots = 0;

  std::size_t rhs() const { return ncols - 1; }
};

void pivot(Tab& t, std::size_t r, std::size_t c) {
  std::vector<Rat>& pr = t.row[r];
  Rat d = pr[c];
  for (std::size_t j = 0; j < t.ncols; ++j) pr[j] /= d;
  for (std::size_t i = 0; i < kRows; ++i) {
    if (i == r) continue;
    Rat f = t.row[i][c];
    if (sgn(f) == 0) continue;
    std::vector<Rat>& ri = t.row[i];
    for (std::size_t j = 0; j < t.ncols; ++j)
      if (sgn(pr[j]) != 0) ri[j] -= f * pr[j];
  }
  Rat f = t.obj[c];
  if (sgn(f) != 0)
    for (std::size_t j = 0; j < t.ncols; ++j)
      if (sgn(pr[j]) != 0) t.obj[j] -= f * pr[j];
  t.basis[r] = c;
  if (++t.pivots > kPivotCap) throw std::logic_error("simplex pivot cap exceeded");
}

// Entering column by Bland: lowest structural index with negative reduced
// cost. Artificial columns never enter.
std::optional<std::size_t> choose_enter(const Tab& t) {
  for (std::size_t j = kRows; j + 1 < t.ncols; ++j)
    if (sgn(t.obj[j]) < 0) return j;
  return std::nullopt;
}

// Leaving row: minimum ratio, ties broken by lowest basic column index.
std::optional<std::size_t> choose_leave(const Tab& t, std::size_t enter) {
  std::optional<std::size_t> best;
  Rat best_ratio;
  for (std::size_t i = 0; i < kRows; ++i) {
    const Rat& a = t.row[i][enter];
    if (sgn(a) <= 0) continue;
    Rat ratio = t.row[i][t.rhs()] / a;
    if (!best || ratio < best_ratio ||
        (ratio == best_ratio && t.basis[i] < t.basis[*best])) {
      best = i;
      best_ratio = ratio;
    }
  }
  return best;
}

// Returns false when an unbounded ray was found.
bool run_simplex(Tab& t, bool stop_at_zero) {
  while (true) {
    if (stop_at_zero && sgn(t.obj[t.rhs()]) == 0) return true;
    std::optional<std::size_t> e = choose_enter(t);
    if (!e) return true;
    std::optional<std::size_t> l = choose_leave(t, *e);
    if (!l) return false;
    pivot(t, *l, *e);
  }
}

// Phase-1 tableau: one artificial per row, rows flipped so the rhs is
// nonnegative, objective = maximize minus the artificial sum.
Tab make_phase1(const std::vector<DivClass>& gens, const DivClass& target,
                std::vector<int>& sigma) {
  std::size_t n = gens.size();
  Tab t;
  t.ncols = kRows + n + 1;
  t.row.assign(kRows, std::vector<Rat>(t.ncols, Rat(0)));
  t.basis.resize(kRows);
  sigma.assign(kRows, 1);
  for (std::size_t i = 0; i < kRows; ++i) {
    int s = sgn(target.coeffs[i]) < 0 ? -1 : 1;
    sigma[i] = s;
    t.basis[i] = i;
    t.row[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j)
      t.row[i][kRows + j] = s < 0 ? Rat(-gens[j].coeffs[i]) : gens[j].coeffs[i];
    t.row[i][t.rhs()] = s < 0 ? Rat(-target.coeffs[i]) : target.coeffs[i];
  }
  t.obj.assign(t.ncols, Rat(0));
  for (std::size_t j = kRows; j < t.ncols; ++j) {
    Rat z(0);
    for (std::size_t i = 0; i < kRows; ++i) z += t.row[i][j];
    t.obj[j] = -z;
  }
  return t;
}

// After a feasible phase 1, pivot leftover artificials out of the basis.
// Their rows carry rhs 0, so these pivots are degenerate and keep the point.
// A row whose structural entries are all zero stays artificial-basic; such a
// row is inert from here on (every later entering column has a zero there).
void drive_out_artificials(Tab& t) {
  for (std::size_t i = 0; i < kRows; ++i) {
    if (t.basis[i] >= kRows) continue;
    for (std::size_t j = kRows; j + 1 < t.ncols; ++j) {
      if (sgn(t.row[i][j]) != 0) {
        pivot(t, i, j);
        break;
      }
    }
  }
}

// Dual reading at a phase-1 optimum with negative value. The artificial block
// is the basis inverse, the basic costs are -1 exactly on artificial rows, and
// the row flips plus the metric flip J turn the dual vector into a class whose
// intersection pairing is >= 0 with every column and < 0 with the target.
DivClass extract_functional(const Tab& t, const std::vector<int>& sigma) {
  DivClass f;
  for (std::size_t i = 0; i < kRows; ++i) {
    Rat y(0);
    for (std::size_t r = 0; r < kRows; ++r)
      if (t.basis[r] < kRows) y -= t.row[r][i];
    if (sigma[i] < 0) y = -y;
    f.coeffs[i] = i == 0 ? y : Rat(-y);
  }
  return f;
}

std::vector<Rat> structural_point(const Tab& t, std::size_t n) {
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t i = 0; i < kRows; ++i)
    if (t.basis[i] >= kRows && t.basis[i] < kRows + n)
      x[t.basis[i] - kRows] = t.row[i][t.rhs()];
  return x;
}

// New structural column B^-1 * (sigma o d), computed from the artificial
// block, inserted just before the rhs. If an inert artificial-basic row sees
// a nonzero entry, one degenerate pivot clears it before phase 2 begins.
void append_column(Tab& t, const DivClass& d, const std::vector<int>& sigma) {
  std::size_t pos = t.rhs();
  for (std::size_t i = 0; i < kRows; ++i) {
    Rat v(0);
    for (std::size_t k = 0; k < kRows; ++k) {
      if (sgn(d.coeffs[k]) == 0) continue;
      Rat dk = sigma[k] < 0 ? Rat(-d.coeffs[k]) : d.coeffs[k];
      v += t.row[i][k] * dk;
    }
    t.row[i].insert(t.row[i].begin() + static_cast<std::ptrdiff_t>(pos), v);
  }
  t.obj.insert(t.obj.begin() + static_cast<std::ptrdiff_t>(pos), Rat(0));
  ++t.ncols;
  for (std::size_t i = 0; i < kRows; ++i) {
    if (t.basis[i] < kRows && sgn(t.row[i][pos]) != 0) {
      pivot(t, i, pos);
      break;
    }
  }
}

// Objective: maximize sense * x_column. Rebuilds the reduced-cost row from
// the current basis.
void set_objective(Tab& t, std::size_t column, int sense) {
  for (std::size_t j = 0; j < t.ncols; ++j) {
    Rat z(0);
    for (std::size_t r = 0; r < kRows; ++r)
      if (t.basis[r] == column) z += sense > 0 ? t.row[r][j] : Rat(-t.row[r][j]);
    t.obj[j] = z;
  }
  t.obj[column] -= sense;
}

Rat column_value(const Tab& t, std::size_t column) {
  for (std::size_t i = 0; i < kRows; ++i)
    if (t.basis[i] == column) return t.row[i][t.rhs()];
  return Rat(0);
}

DivClass combine(const std::vector<DivClass>& gens, const std::vector<Rat>& coeff) {
  DivClass out = zero_class();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (sgn(coeff[j]) == 0) continue;
    for (std::size_t i = 0; i < kRows; ++i)
      out.coeffs[i] += coeff[j] * gens[j].coeffs[i];
  }
  return out;
}

void verify_representation(const std::vector<DivClass>& gens, const std::vector<Rat>& coeff,
                           const Rat& scalar, const DivClass* direction,
                           const DivClass& target) {
  DivClass sum = combine(gens, coeff);
  if (direction && sgn(scalar) != 0) sum = sum + *direction * scalar;
  for (const Rat& c : coeff)
    if (sgn(c) < 0) throw std::logic_error("lp representation has a negative coefficient");
  if (sgn(scalar) < 0) throw std::logic_error("lp scalar went negative");
  if (!(sum == target)) throw std::logic_error("lp representation does not reconstruct the target");
}

void verify_functional(const DivClass& f, const std::vector<DivClass>& gens,
                       const DivClass& target) {
  for (const DivClass& g : gens)
    if (sgn(intersect(f, g)) < 0)
      throw std::logic_error("separating functional pairs negatively with a generator");
  if (sgn(intersect(f, target)) >= 0)
    throw std::logic_error("separating functional does not separate the target");
}

}  // namespace

ConeSolver::ConeSolver(std::vector<DivClass> generators, DivClass target)
    : generators_(std::move(generators)), target_(std::move(target)) {
  if (generators_.empty()) throw std::invalid_argument("ConeSolver: no generators");
  Tab t = make_phase1(generators_, target_, sigma_);
  if (!run_simplex(t, true)) throw std::logic_error("phase 1 cannot be unbounded");
  phase1_pivots_ = t.pivots;
  if (sgn(t.obj[t.rhs()]) != 0) {
    feasible_ = false;
    functional_ = extract_functional(t, sigma_);
    verify_functional(functional_, generators_, target_);
    return;
  }
  feasible_ = true;
  drive_out_artificials(t);
  point_ = structural_point(t, generators_.size());
  verify_representation(generators_, point_, Rat(0), nullptr, target_);
  snap_rows_ = std::move(t.row);
  snap_basis_ = std::move(t.basis);
  phase1_pivots_ = t.pivots;
}

const std::vector<Rat>& ConeSolver::feasible_point() const {
  if (!feasible_) throw std::logic_error("feasible_point on an infeasible instance");
  return point_;
}

const DivClass& ConeSolver::separating_functional() const {
  if (feasible_) throw std::logic_error("separating_functional on a feasible instance");
  return functional_;
}

LpOutcome ConeSolver::run_phase2(const DivClass* appended, std::size_t column, int sense) const {
  if (!feasible_) throw std::logic_error("phase 2 requires a feasible instance");
  Tab t;
  t.row = snap_rows_;
  t.basis = snap_basis_;
  t.ncols = kRows + generators_.size() + 1;
  t.obj.assign(t.ncols, Rat(0));
  if (appended) append_column(t, *appended, sigma_);
  set_objective(t, column, sense);
  bool bounded = run_simplex(t, false);

  LpOutcome out;
  out.pivots = phase1_pivots_ + t.pivots;
  if (!bounded) {
    if (sense < 0) throw std::logic_error("minimization cannot be unbounded over the cone");
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.coefficients = structural_point(t, generators_.size());
  out.value = column_value(t, column);
  if (appended) {
    out.scalar = out.value;
    verify_representation(generators_, out.coefficients, out.scalar, appended, target_);
  } else {
    verify_representation(generators_, out.coefficients, Rat(0), nullptr, target_);
  }
  return out;
}

LpOutcome ConeSolver::maximize_coefficient(std::size_t index) const {
  if (index >= generators_.size()) throw std::invalid_argument("generator index out of range");
  return run_phase2(nullptr, kRows + index, 1);
}

LpOutcome ConeSolver::minimize_coefficient(std::size_t index) const {
  if (index >= generators_.size()) throw std::invalid_argument("generator index out of range");
  return run_phase2(nullptr, kRows + index, -1);
}

LpOutcome ConeSolver::maximize_scalar(const DivClass& direction) const {
  return run_phase2(&direction, kRows + generators_.size(), 1);
}

LpOutcome solve(const ConeProgram& program) {
  LpOutcome out;
  switch (program.objective) {
    case LpObjective::Feasibility: {
      ConeSolver s(program.generators, program.target);
      out.pivots = s.phase1_pivots();
      if (s.feasible()) {
        out.status = LpStatus::Optimal;
        out.coefficients = s.feasible_point();
      } else {
        out.status = LpStatus::Infeasible;
        out.functional = s.separating_functional();
      }
      return out;
    }
    case LpObjective::MaximizeCoefficient: {
      ConeSolver s(program.generators, program.target);
      if (!s.feasible()) {
        out.status = LpStatus::Infeasible;
        out.functional = s.separating_functional();
        out.pivots = s.phase1_pivots();
        return out;
      }
      return s.maximize_coefficient(program.generator_index);
    }
    case LpObjective::MaximizeScalar:
    case LpObjective::MinimizeScalar: {
      // The scalar column takes part in feasibility, so it joins the
      // generator list for phase 1 instead of being appended afterwards.
      std::vector<DivClass> gens = program.generators;
      gens.push_back(program.direction);
      ConeSolver s(std::move(gens), program.target);
      if (!s.feasible()) {
        out.status = LpStatus::Infeasible;
        out.functional = s.separating_functional();
        out.pivots = s.phase1_pivots();
        return out;
      }
      int sense = program.objective == LpObjective::MaximizeScalar ? 1 : -1;
      LpOutcome inner = sense > 0 ? s.maximize_coefficient(program.generators.size())
                                  : s.minimize_coefficient(program.generators.size());
      if (inner.status != LpStatus::Optimal) return inner;
      inner.scalar = inner.coefficients.back();
      inner.value = inner.scalar;
      inner.coefficients.pop_back();
      return inner;
    }
  }
  throw std::logic_error("unreachable objective kind");
}

ConeMembership cone_member(const DivClass& target, const std::vector<DivClass>& generators) {
  ConeSolver s(generators, target);
  ConeMembership m;
  m.inside = s.feasible();
  if (m.inside)
    m.coefficients = s.feasible_point();
  else
    m.functional = s.separating_functional();
  return m;
}

MultiplicityResult max_coefficient(const DivClass& target,
                                   const std::vector<DivClass>& generators,
                                   const DivClass& pivot) {
  ConeSolver s(generators, target);
  if (!s.feasible()) throw NotInCone(s.separating_functional());
  LpOutcome out = s.maximize_scalar(pivot);
  MultiplicityResult r;
  r.bounded = out.status == LpStatus::Optimal;
  if (r.bounded) {
    r.value = out.scalar;
    r.coefficients = std::move(out.coefficients);
  }
  return r;
}

}  // namespace dp1
