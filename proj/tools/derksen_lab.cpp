#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "derksen/errors.hpp"
#include "derksen/problem_file.hpp"
#include "derksen/report.hpp"

using namespace derksen;

namespace {

struct Options {
  std::string file;
  std::string range;
  bool local = false;
  bool json = false;
  bool timings = false;
  std::size_t max_basis = 0;
  std::size_t max_pairs = 0;
};

nlohmann::ordered_json header(const DerksenProblem& P) {
  nlohmann::ordered_json j;
  j["problem_hash"] = problem_hash(P);
  j["field"] = P.field().to_string();
  j["d"] = P.dim();
  j["group_order"] = P.group().order();
  return j;
}

nlohmann::ordered_json strings(const std::vector<Polynomial>& polys) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& p : polys) a.push_back(p.to_string());
  return a;
}

int cmd_derksen(const DerksenProblem& P, const Options& opt, std::ostream& out) {
  Ideal I = derksen_ideal(P);
  if (opt.json) {
    auto j = header(P);
    j["derksen_ideal"] = strings(I.generators());
    out << j.dump() << "\n";
  } else {
    out << I.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_check(const DerksenProblem& P, const ProblemFile& file, const Options& opt, std::ostream& out) {
  auto [a, b] = !opt.range.empty() ? parse_range(opt.range) : file.n_range.value_or(std::pair{1u, 3u});
  const bool local = opt.local || file.local;
  std::vector<EqualityReport> reports;
  for (unsigned n = a; n <= b; ++n) reports.push_back(local ? check_local_equality(P, n) : check_equality(P, n));
  out << (opt.json ? format_reports_json(P, reports, opt.timings) : format_reports(P, reports, opt.timings));
  return exit_code_for(reports);
}

int cmd_invariants(const DerksenProblem& P, const Options& opt, std::ostream& out) {
  Ideal Z = zero_fiber(P);
  auto j = header(P);
  j["zero_fiber"] = strings(Z.generators());
  if (!opt.json) out << "zero_fiber: " << Z.to_string() << "\n";
  try {
    auto inv = invariant_generators(P);
    j["invariants"] = strings(inv);
    if (!opt.json) out << "invariants: " << join(inv) << "\n";
  } catch (const NotReductive&) {
    j["invariants"] = nullptr;
    if (opt.json) out << j.dump() << "\n";
    throw;
  }
  if (opt.json) out << j.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derksen ideals of finite linear group actions: symbolic versus ordinary powers."};
  app.name("derksen-lab");
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("file", opt.file, "problem file")->required();
    cmd->add_flag("--json", opt.json, "machine-readable output, one JSON object per line");
    cmd->add_option("--max-basis", opt.max_basis, "cap on Groebner basis size");
    cmd->add_option("--max-pairs", opt.max_pairs, "cap on processed S-pairs");
  };
  CLI::App* derksen = app.add_subcommand("derksen", "print the reduced Groebner basis of the Derksen ideal");
  CLI::App* check = app.add_subcommand("check", "compare symbolic and ordinary powers");
  CLI::App* invariants = app.add_subcommand("invariants", "print the zero-fiber ideal and invariant generators");
  for (CLI::App* cmd : {derksen, check, invariants}) common(cmd);
  check->add_option("--n", opt.range, "exponent range A..B (default: the file's n, else 1..3)");
  check->add_flag("--local", opt.local, "check equality on the punctured spectrum");
  check->add_flag("--timings", opt.timings, "include per-stage wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::ostringstream out;
  int code = kExitOk;
  try {
    GbLimits limits = default_limits();
    if (opt.max_basis) limits.max_basis = opt.max_basis;
    if (opt.max_pairs) limits.max_pairs = opt.max_pairs;
    set_default_limits(limits);

    ProblemFile file = load_problem(opt.file);
    DerksenProblem P = build_problem(file);
    for (const auto& w : P.group().warnings()) std::cerr << "warning: " << w << "\n";

    if (derksen->parsed()) code = cmd_derksen(P, opt, out);
    if (check->parsed()) code = cmd_check(P, file, opt, out);
    if (invariants->parsed()) code = cmd_invariants(P, opt, out);
  } catch (const ParseError& e) {
    std::cerr << opt.file << ":" << e.what() << "\n";
    code = kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitParse;
  } catch (const NotInvertible& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitParse;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    code = kExitResource;
  } catch (const GroupTooLarge& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    code = kExitResource;
  } catch (const NotReductive& e) {
    std::cerr << "not reductive: " << e.what() << "\n";
    code = kExitNotReductive;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    code = kExitInternal;
  }
  std::cout << out.str() << std::flush;
  return code;
}
