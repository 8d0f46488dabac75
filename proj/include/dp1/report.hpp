#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dp1/alphac.hpp"
#include "dp1/coneops.hpp"
#include "dp1/kstab.hpp"
#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"
#include "dp1/selfcheck.hpp"

namespace dp1 {

using Json = nlohmann::ordered_json;

// Which alpha/slope normalization the report carries. The underlying
// quantities are alpha_c(S, muA), alpha_c(S, A) = mu * alpha_c(S, muA),
// nu(A), and nu(muA) = nu(A)/mu. The default pairs the muA-normalized alpha
// with the A-normalized slope, which is how the stability criterion is
// stated; the other modes swap in or add the remaining normalizations.
enum class Normalization { Default, MuA, A, Both };

std::string normalization_name(Normalization n);

struct ReportOptions {
  Normalization normalization = Normalization::Default;
  // Append decimal companions (12 significant digits) next to the exact
  // rationals, clearly labeled; never used in any computation.
  bool approx = false;
};

// Canonical comma-separated coefficient tuple "b,b1,...,b8" in lowest terms.
// parse_class reads this back exactly, which is what makes JSON reports
// round-trip byte for byte.
std::string class_tuple(const DivClass& x);

// Lowercase contraction tag: birational, conic-f1, conic-p1p1.
std::string kind_str(const Decomposition& d);

// JSON report builders. Every document starts with "schema": "1" and echoes
// the input class as a canonical tuple.
Json check_json(const DivClass& input, const AmpleCheck& chk);
Json decompose_json(const DivClass& input, const Decomposition& d);
Json alpha_json(const DivClass& input, const Decomposition& d, const AlphaReport& rep,
                const ReportOptions& opt);
Json verdict_json(const DivClass& input, const Verdict& v, const ReportOptions& opt);
Json selftest_json(const SelftestConfig& cfg, const SelftestReport& rep);
Json not_ample_json(const std::string& command, const DivClass& input, const NotAmple& e);

// Text renderers for the same payloads.
void check_text(std::ostream& out, const DivClass& input, const AmpleCheck& chk);
void decompose_text(std::ostream& out, const DivClass& input, const Decomposition& d);
void alpha_text(std::ostream& out, const DivClass& input, const Decomposition& d,
                const AlphaReport& rep, const ReportOptions& opt);
void verdict_text(std::ostream& out, const DivClass& input, const Verdict& v);
void selftest_text(std::ostream& out, const SelftestReport& rep);

// One-parameter or two-parameter affine family base + lambda1*d1 [+ lambda2*d2]
// over half-open ranges [lo, hi), each axis sampled at `steps` points
// lambda_k = lo + k*(hi - lo)/steps for k = 0..steps-1.
struct ScanGrid {
  DivClass base;
  std::vector<DivClass> directions;         // 1 or 2 entries
  std::vector<std::pair<Rat, Rat>> ranges;  // aligned with directions
  std::vector<int> steps;                   // aligned with directions
};

struct ScanRow {
  std::vector<Rat> lambdas;
  // Absent exactly when the grid point is not ample; such rows are reported
  // as "not-ample" and do not fail the scan.
  std::optional<Verdict> verdict;
};

// Evaluates the grid (each point runs the full verdict pipeline including the
// alpha oracle). Points are processed concurrently; the returned rows are in
// grid order (last axis fastest), so output is deterministic.
std::vector<ScanRow> run_scan(const ScanGrid& grid, bool extended_oracle);

Json scan_json(const ScanGrid& grid, const std::vector<ScanRow>& rows, bool extended_oracle,
               const ReportOptions& opt);
// "# schema=1" comment line, then a header, then one line per grid point.
// The base columns are pinned: alpha columns are muA-normalized and nu is
// nu(A); the normalization modes only append extra labeled columns.
std::string scan_csv(const ScanGrid& grid, const std::vector<ScanRow>& rows,
                     const ReportOptions& opt);
void scan_text(std::ostream& out, const ScanGrid& grid, const std::vector<ScanRow>& rows,
               const ReportOptions& opt);

// One suite instance compared closed-form vs oracle.
struct CompareRow {
  std::string name;
  DivClass cls;
  std::string kind;
  std::string branch;
  Rat closed;
  Rat oracle;
  bool agree = false;
  bool lemma_ok = false;
};

Json compare_json(std::uint64_t seed, int per_stratum, bool extended_oracle,
                  const std::vector<CompareRow>& rows);
void compare_text(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace dp1
