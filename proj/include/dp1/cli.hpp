#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dp1/piclattice.hpp"

namespace dp1 {

// Raised on malformed class input; position is a byte offset into the
// original text.
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t pos)
      : std::runtime_error(message), position(pos) {}
  std::size_t position;
};

// Tuple and symbolic syntax mixed in one class spec.
struct AmbiguousForm : ParseError {
  explicit AmbiguousForm(std::size_t pos)
      : ParseError("mixed tuple and symbolic class forms", pos) {}
};

// Accepts either a 9-tuple "b,b1,...,b8" of rationals or the symbolic form
// "-K + a1*E1 + ... + a*B:<9-tuple>" (terms in any order, each optional).
// Expansion is purely syntactic; geometric validation happens downstream.
DivClass parse_class(const std::string& text);

// Whole command-line pipeline: args are argv[1..] of the dp1kstab binary,
// reports go to out, diagnostics to err. Returns the process exit code:
// 0 success (Inconclusive verdicts included), 1 usage or parse error,
// 2 not ample, 3 internal disagreement or invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dp1
