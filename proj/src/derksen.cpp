#include "derksen/derksen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "derksen/errors.hpp"

namespace derksen {

struct DerksenProblem::Cache {
  std::mutex mutex;
  std::optional<Ideal> derksen;
  std::map<unsigned, Ideal> symbolic;
};

namespace {

/// Runs fn(0..count-1) on up to thread_budget() workers. The exception of the
/// lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Pairwise intersection rounds; each round runs in parallel.
Ideal intersect_tree(std::vector<Ideal> parts) {
  while (parts.size() > 1) {
    const std::size_t half = parts.size() / 2;
    std::vector<std::optional<Ideal>> merged(half);
    parallel_for(half, [&](std::size_t i) { merged[i] = intersect(parts[2 * i], parts[2 * i + 1]); });
    std::vector<Ideal> next;
    for (auto& m : merged) next.push_back(std::move(*m));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return parts.front();
}

class Stopwatch {
public:
  explicit Stopwatch(std::vector<StageTiming>& out) : out_(out), start_(std::chrono::steady_clock::now()) {}
  void lap(std::string stage) {
    auto now = std::chrono::steady_clock::now();
    out_.push_back({std::move(stage), std::chrono::duration<double>(now - start_).count()});
    start_ = now;
  }

private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point start_;
};

/// The linear form g(x_i) = Σ_k A[i][k]·x_k in S.
Polynomial image_of_x(const DerksenProblem& P, const GroupElement& g, std::size_t i) {
  const std::size_t d = P.dim();
  std::vector<Term> terms;
  for (std::size_t k = 0; k < d; ++k) {
    if (g.at(i, k).is_zero()) continue;
    Monomial m(2 * d);
    m.set(d + k, 1);
    terms.push_back({m, g.at(i, k)});
  }
  return Polynomial::from_terms(P.ring(), std::move(terms));
}

/// S -> R sending y to 0 and x_i to x_i.
Polynomial restrict_to_x(const DerksenProblem& P, const Polynomial& f) {
  const std::size_t d = P.dim();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < d; ++i) images.push_back(Polynomial(P.affine_ring()));
  for (std::size_t i = 0; i < d; ++i) images.push_back(Polynomial::variable(P.affine_ring(), i));
  return substitute(f.with_order(MonomialOrder::degrevlex()), images);
}

/// R -> S sending x_i to x_i, or to y_i when to_y is set.
Polynomial embed(const DerksenProblem& P, const Polynomial& f, bool to_y) {
  const std::size_t d = P.dim();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < d; ++i) images.push_back(Polynomial::variable(P.ring(), to_y ? i : d + i));
  return substitute(f.with_order(MonomialOrder::degrevlex()), images);
}

std::vector<Polynomial> unique_monic(std::vector<Polynomial> polys) {
  std::vector<Polynomial> out;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    Polynomial m = p.monic();
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

unsigned thread_budget() {
  if (const char* env = std::getenv("DERKSEN_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min(v, 256UL));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

DerksenProblem::DerksenProblem(FiniteGroup group)
    : group_(std::move(group)),
      ring_(RingSpec::derksen(group_.field(), group_.dim())),
      affine_(RingSpec::affine(group_.field(), group_.dim())),
      cache_(std::make_shared<Cache>()) {
  const std::size_t d = dim();
  for (const auto& g : group_.elements()) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < d; ++i) gens.push_back(Polynomial::variable(ring_, i) - image_of_x(*this, g, i));
    components_.emplace_back(ring_, std::move(gens));
  }
}

Ideal derksen_ideal(const DerksenProblem& P) {
  std::lock_guard lock(P.cache_->mutex);
  if (!P.cache_->derksen) P.cache_->derksen = intersect_tree(P.components());
  return *P.cache_->derksen;
}

Ideal symbolic_power(const DerksenProblem& P, unsigned n) {
  if (n == 0) throw std::invalid_argument("symbolic_power needs n >= 1");
  if (n == 1) return derksen_ideal(P);
  std::lock_guard lock(P.cache_->mutex);
  auto it = P.cache_->symbolic.find(n);
  if (it != P.cache_->symbolic.end()) return it->second;
  std::vector<std::optional<Ideal>> powers(P.components().size());
  parallel_for(powers.size(), [&](std::size_t i) { powers[i] = ideal_power(P.components()[i], n); });
  std::vector<Ideal> parts;
  for (auto& p : powers) parts.push_back(std::move(*p));
  Ideal S = intersect_tree(std::move(parts));
  P.cache_->symbolic.emplace(n, S);
  return S;
}

bool symbolic_member_oracle(const Polynomial& f, const DerksenProblem& P, unsigned n) {
  if (n == 0) throw std::invalid_argument("symbolic_member_oracle needs n >= 1");
  if (!same_ring(f.ring(), P.ring())) throw ArityMismatch("oracle: polynomial is not in K[y, x]");
  if (f.is_zero()) return true;
  const std::size_t d = P.dim();
  const auto& elements = P.group().elements();
  std::vector<char> ok(elements.size(), 0);
  parallel_for(elements.size(), [&](std::size_t k) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < d; ++i)
      images.push_back(Polynomial::variable(P.ring(), i) + image_of_x(P, elements[k], i));
    for (std::size_t i = 0; i < d; ++i) images.push_back(Polynomial::variable(P.ring(), d + i));
    Polynomial moved = substitute(f, images);
    ok[k] = std::all_of(moved.terms().begin(), moved.terms().end(), [&](const Term& t) {
      unsigned ydeg = 0;
      for (std::size_t i = 0; i < d; ++i) ydeg += t.mono[i];
      return ydeg >= n;
    });
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(CheckMode m) { return m == CheckMode::Global ? "Global" : "PuncturedSpectrum"; }

std::string to_string(DifferenceVerdict v) {
  return v == DifferenceVerdict::Contained ? "Contained" : "RadicalEqualWitnessed";
}

namespace {

/// The containment step shared by compare_powers and the Derksen checks. Timings
/// are appended to `report`; ResourceLimit propagates.
void decide_containment(const Ideal& S, const Ideal& O, EqualityReport& report) {
  Stopwatch clock(report.timings);
  const auto& gens = S.generators();
  unsigned top = 0;
  for (const auto& s : gens) top = std::max(top, static_cast<unsigned>(s.total_degree()));
  O.basis_up_to(top);
  std::vector<char> inside(gens.size(), 0);
  parallel_for(gens.size(), [&](std::size_t i) { inside[i] = ideal_member(gens[i], O); });
  clock.lap("membership");

  if (report.mode == CheckMode::PuncturedSpectrum && std::find(inside.begin(), inside.end(), 0) != inside.end()) {
    // (O : 𝔫^∞) is the intersection of the saturations by each variable
    const std::size_t nv = O.ring()->nvars();
    std::vector<std::optional<Ideal>> saturated(nv);
    parallel_for(nv, [&](std::size_t v) { saturated[v] = saturate_by_variable(O, v); });
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (inside[i]) continue;
      inside[i] = std::all_of(saturated.begin(), saturated.end(),
                              [&](const std::optional<Ideal>& J) { return ideal_member(gens[i], *J); });
    }
    clock.lap("saturation");
  }

  report.verdict = Verdict::Equal;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (inside[i]) continue;
    report.verdict = Verdict::NotEqual;
    report.witness = gens[i];
    break;
  }
}

EqualityReport run_check(const DerksenProblem& P, unsigned n, CheckMode mode) {
  if (n == 0) throw std::invalid_argument("equality check needs n >= 1");
  EqualityReport report;
  report.n = n;
  report.mode = mode;
  Stopwatch clock(report.timings);
  try {
    Ideal I = derksen_ideal(P);
    clock.lap("derksen_ideal");
    Ideal S = symbolic_power(P, n);
    clock.lap("symbolic_power");
    Ideal O = ideal_power(I, n);
    clock.lap("ordinary_power");
    decide_containment(S, O, report);
    if (report.witness && !symbolic_member_oracle(*report.witness, P, n))
      throw CrossCheckFailure("symbolic power generator " + report.witness->to_string() + " rejected by the oracle");
  } catch (const ResourceLimit& e) {
    report = EqualityReport{n, Verdict::Inconclusive, mode, std::nullopt, e.what(), std::move(report.timings)};
  }
  return report;
}

}  // namespace

EqualityReport check_equality(const DerksenProblem& P, unsigned n) { return run_check(P, n, CheckMode::Global); }

EqualityReport check_local_equality(const DerksenProblem& P, unsigned n) {
  return run_check(P, n, CheckMode::PuncturedSpectrum);
}

EqualityReport compare_powers(const Ideal& S, const Ideal& O, unsigned n, CheckMode mode) {
  if (!same_ring(S.ring(), O.ring())) throw ArityMismatch("compare_powers: ideals in different rings");
  EqualityReport report;
  report.n = n;
  report.mode = mode;
  try {
    decide_containment(S, O, report);
  } catch (const ResourceLimit& e) {
    report = EqualityReport{n, Verdict::Inconclusive, mode, std::nullopt, e.what(), std::move(report.timings)};
  }
  return report;
}

bool fixes_only_origin(const FiniteGroup& G) {
  for (const auto& g : G.elements())
    if (!g.is_identity() && !fixed_subspace(g).empty()) return false;
  return true;
}

Ideal zero_fiber(const DerksenProblem& P) {
  const std::size_t d = P.dim();
  Ideal I = derksen_ideal(P);

  std::vector<Polynomial> route_a;
  for (const auto& f : I.generators()) route_a.push_back(restrict_to_x(P, f));
  Ideal A(P.affine_ring(), std::move(route_a));

  std::vector<Polynomial> ys;
  for (std::size_t i = 0; i < d; ++i) ys.push_back(Polynomial::variable(P.ring(), i));
  Ideal eliminated = eliminate(ideal_sum(I, Ideal(P.ring(), std::move(ys))), d);
  std::vector<Polynomial> route_b;
  for (const auto& f : eliminated.generators()) route_b.push_back(restrict_to_x(P, f));
  Ideal B(P.affine_ring(), std::move(route_b));

  if (!ideal_equal(A, B))
    throw CrossCheckFailure("zero fiber: substitution gives (" + A.to_string() + ") but elimination gives (" +
                            B.to_string() + ")");
  return Ideal::from_reduced_basis(P.affine_ring(), A.groebner_basis(), MonomialOrder::degrevlex());
}

std::vector<Polynomial> invariant_generators(const DerksenProblem& P) {
  if (!P.group().is_reductive())
    throw NotReductive("characteristic " + std::to_string(P.field().characteristic()) + " divides |G| = " +
                       std::to_string(P.group().order()));
  std::vector<Polynomial> out;
  const Ideal Z = zero_fiber(P);
  for (const auto& h : Z.generators()) out.push_back(reynolds(h, P.group()));
  return unique_monic(std::move(out));
}

DifferenceVerdict derksen_vs_invariant_differences(const DerksenProblem& P, std::span<const Polynomial> fs) {
  Ideal I = derksen_ideal(P);
  std::vector<Polynomial> diffs;
  for (const auto& f : fs) {
    if (!same_ring(f.ring(), P.affine_ring())) throw ArityMismatch("differences: polynomial is not in K[x]");
    Polynomial diff = embed(P, f, false) - embed(P, f, true);
    if (!ideal_member(diff, I))
      throw CrossCheckFailure("f(x) - f(y) is not in the Derksen ideal for f = " + f.to_string());
    if (!diff.is_zero()) diffs.push_back(std::move(diff));
  }

  Ring ext = P.ring()->with_leading_variable("u");
  const std::size_t nv = P.ring()->nvars();
  std::vector<Polynomial> lift;
  for (std::size_t i = 0; i < nv; ++i) lift.push_back(Polynomial::variable(ext, i + 1));
  std::vector<Polynomial> base;
  for (const auto& h : diffs) base.push_back(substitute(h, lift));
  const Polynomial u = Polynomial::variable(ext, 0);
  const Polynomial one = Polynomial::constant(ext, ext->field().one());

  for (const auto& h : I.generators()) {
    std::vector<Polynomial> gens = base;
    gens.push_back(one - u * substitute(h, lift));
    if (!Ideal(ext, std::move(gens)).is_unit()) return DifferenceVerdict::Contained;
  }
  return DifferenceVerdict::RadicalEqualWitnessed;
}

}  // namespace derksen
