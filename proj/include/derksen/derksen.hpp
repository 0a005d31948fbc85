#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derksen/group.hpp"
#include "derksen/ideal_ops.hpp"

namespace derksen {

/// A finite group acting on K[x1..xd], embedded in S = K[y1..yd, x1..xd] with
/// one component J_g = (y_1 - g(x_1), ..., y_d - g(x_d)) per group element.
class DerksenProblem {
public:
  explicit DerksenProblem(FiniteGroup group);

  std::size_t dim() const { return group_.dim(); }
  const FieldSpec& field() const { return group_.field(); }
  const FiniteGroup& group() const { return group_; }
  /// S = K[y1..yd, x1..xd]
  const Ring& ring() const { return ring_; }
  /// R = K[x1..xd]
  const Ring& affine_ring() const { return affine_; }
  const std::vector<Ideal>& components() const { return components_; }

private:
  friend Ideal derksen_ideal(const DerksenProblem&);
  friend Ideal symbolic_power(const DerksenProblem&, unsigned);
  struct Cache;

  FiniteGroup group_;
  Ring ring_;
  Ring affine_;
  std::vector<Ideal> components_;
  std::shared_ptr<Cache> cache_;
};

/// Worker count for the parallel stages: DERKSEN_THREADS if set, else the
/// hardware concurrency; always at least 1.
unsigned thread_budget();

/// I_G, the intersection of all components. Cached per problem.
Ideal derksen_ideal(const DerksenProblem& P);

/// ⋂_g J_g^n. Cached per (problem, n). n >= 1.
Ideal symbolic_power(const DerksenProblem& P, unsigned n);

/// f ∈ J_g^n for every g, decided without Groebner bases: after y_i -> y_i + g(x_i)
/// every term must have degree >= n in the y-variables.
bool symbolic_member_oracle(const Polynomial& f, const DerksenProblem& P, unsigned n);

enum class Verdict { Equal, NotEqual, Inconclusive };
enum class CheckMode { Global, PuncturedSpectrum };

struct StageTiming {
  std::string stage;
  double seconds;
};

struct EqualityReport {
  unsigned n = 1;
  Verdict verdict = Verdict::Inconclusive;
  CheckMode mode = CheckMode::Global;
  /// Present iff verdict == NotEqual: a generator of I^(n) outside I^n.
  std::optional<Polynomial> witness;
  /// Reason for an Inconclusive verdict.
  std::string note;
  std::vector<StageTiming> timings;
};

std::string to_string(Verdict v);
std::string to_string(CheckMode m);

/// Compares I_G^(n) with I_G^n by testing each generator of the symbolic power
/// for membership in the ordinary power.
EqualityReport check_equality(const DerksenProblem& P, unsigned n);

/// Equality away from the homogeneous maximal ideal: I_G^(n) ⊆ (I_G^n : 𝔫^∞).
EqualityReport check_local_equality(const DerksenProblem& P, unsigned n);

/// The decision step of both checks for an arbitrary pair with O ⊆ S: Equal iff
/// every generator of S lies in O (Global) or in (O : 𝔫^∞) (PuncturedSpectrum).
/// The witness is the first generator of S that does not.
EqualityReport compare_powers(const Ideal& S, const Ideal& O, unsigned n, CheckMode mode);

/// Every non-identity element has trivial fixed space.
bool fixes_only_origin(const FiniteGroup& G);

/// Ideal of R generated by the positive-degree invariants, from I_G by y -> 0.
/// Cross-checked against ((y) + I_G) ∩ R; CrossCheckFailure on disagreement.
Ideal zero_fiber(const DerksenProblem& P);

/// Reynolds images of the zero-fiber basis, nonzero, monic and deduplicated.
/// Throws NotReductive when char K divides |G|.
std::vector<Polynomial> invariant_generators(const DerksenProblem& P);

enum class DifferenceVerdict { Contained, RadicalEqualWitnessed };
std::string to_string(DifferenceVerdict v);

/// Checks that every f(x) - f(y) lies in I_G (CrossCheckFailure otherwise) and
/// whether each generator of I_G lies in the radical of those differences.
/// fs are polynomials of R.
DifferenceVerdict derksen_vs_invariant_differences(const DerksenProblem& P, std::span<const Polynomial> fs);

}  // namespace derksen
