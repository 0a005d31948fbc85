#pragma once

#include <span>
#include <string>
#include <vector>

#include "derksen/derksen.hpp"

namespace derksen {

/// 64-bit FNV-1a over the field, dimension and the sorted group matrices, as 16 hex digits.
std::string problem_hash(const DerksenProblem& P);

/// Aligned table with one row per report. Timings appear only when requested,
/// so that the default output is byte-identical across runs.
std::string format_reports(const DerksenProblem& P, std::span<const EqualityReport> reports, bool timings = false);

/// One JSON object per report and line, keys in a fixed order:
/// problem_hash, field, d, group_order, n, mode, verdict, witness, note[, timings].
std::string format_reports_json(const DerksenProblem& P, std::span<const EqualityReport> reports,
                                bool timings = false);

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotEqual = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNotReductive = 4;
inline constexpr int kExitInternal = 5;

/// 1 if any report is NotEqual, else 3 if any is Inconclusive, else 0.
int exit_code_for(std::span<const EqualityReport> reports);

}  // namespace derksen
