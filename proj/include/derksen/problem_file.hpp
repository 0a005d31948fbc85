#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "derksen/derksen.hpp"

namespace derksen {

/// One problem per file, as `key = value` lines; `#` starts a comment.
///
///   field = "GF(7)"                         # or "QQ"
///   d = 2                                   # optional with a preset
///   generators = [[[2, 0], [0, 1]], ...]    # row-major matrices, may span lines
///   preset = "scalar(3,2)"                  # instead of generators
///   n = "1..3"                              # exponent range, or a single integer
///   local = true                            # punctured-spectrum check
///
/// Exactly one of `generators` and `preset` must be present.
struct ProblemFile {
  FieldSpec field = FieldSpec::rationals();
  std::size_t dim = 0;
  std::vector<GroupElement> generators;
  std::optional<std::string> preset;
  std::optional<std::pair<unsigned, unsigned>> n_range;
  bool local = false;
};

/// Throws ParseError with the 1-based line and column of the offending token.
ProblemFile parse_problem(std::string_view text);

/// Reads and parses a file; an unreadable file is a ParseError at 0:0.
ProblemFile load_problem(const std::filesystem::path& path);

/// "A..B" or "A" with 1 <= A <= B; std::invalid_argument otherwise.
std::pair<unsigned, unsigned> parse_range(std::string_view text);

/// Closes the generators into a group. Propagates NotInvertible and GroupTooLarge.
DerksenProblem build_problem(const ProblemFile& file, std::size_t cap = kDefaultGroupCap);

}  // namespace derksen
