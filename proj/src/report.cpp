#include "derksen/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace derksen {

std::string problem_hash(const DerksenProblem& P) {
  std::string canonical = P.field().to_string() + ";" + std::to_string(P.dim());
  std::vector<std::string> elements;
  for (const auto& g : P.group().elements()) elements.push_back(g.to_string());
  std::sort(elements.begin(), elements.end());
  for (const auto& e : elements) canonical += ";" + e;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_reports(const DerksenProblem& P, std::span<const EqualityReport> reports, bool timings) {
  std::ostringstream out;
  out << "problem " << problem_hash(P) << "  field " << P.field().to_string() << "  d = " << P.dim()
      << "  |G| = " << P.group().order() << "\n";
  std::vector<std::vector<std::string>> rows{{"n", "mode", "verdict", "witness"}};
  if (timings) rows[0].push_back("seconds");
  for (const auto& r : reports) {
    std::string detail = r.witness ? r.witness->to_string() : r.note.empty() ? "-" : r.note;
    rows.push_back({std::to_string(r.n), to_string(r.mode), to_string(r.verdict), detail});
    if (timings) {
      double total = 0;
      for (const auto& t : r.timings) total += t.seconds;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", total);
      rows.back().push_back(buf);
    }
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

std::string format_reports_json(const DerksenProblem& P, std::span<const EqualityReport> reports, bool timings) {
  std::string out;
  const std::string hash = problem_hash(P);
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["problem_hash"] = hash;
    j["field"] = P.field().to_string();
    j["d"] = P.dim();
    j["group_order"] = P.group().order();
    j["n"] = r.n;
    j["mode"] = to_string(r.mode);
    j["verdict"] = to_string(r.verdict);
    j["witness"] = r.witness ? nlohmann::ordered_json(r.witness->to_string()) : nlohmann::ordered_json(nullptr);
    j["note"] = r.note.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.note);
    if (timings) {
      nlohmann::ordered_json t = nlohmann::ordered_json::object();
      for (const auto& s : r.timings) t[s.stage] = s.seconds;
      j["timings"] = std::move(t);
    }
    out += j.dump() + "\n";
  }
  return out;
}

int exit_code_for(std::span<const EqualityReport> reports) {
  auto any = [&](Verdict v) {
    return std::any_of(reports.begin(), reports.end(), [&](const EqualityReport& r) { return r.verdict == v; });
  };
  if (any(Verdict::NotEqual)) return kExitNotEqual;
  if (any(Verdict::Inconclusive)) return kExitResource;
  return kExitOk;
}

}  // namespace derksen
