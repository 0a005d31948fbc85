#pragma once

#include <span>
#include <vector>

#include "derksen/groebner.hpp"

namespace derksen {

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);

/// Generators are the n-fold products of generators of I (with repetition),
/// minus those that reduce to zero modulo the remaining ones. n >= 1.
Ideal ideal_power(const Ideal& I, unsigned n);

/// I ∩ J, by eliminating t from t·I + (1 - t)·J. Each output generator is
/// checked for membership in both inputs (CrossCheckFailure otherwise).
Ideal intersect(const Ideal& I, const Ideal& J);

/// Left fold of `intersect`. Precondition: nonempty.
Ideal intersect_all(std::span<const Ideal> ideals);

/// I ∩ K[variables k..n-1]: the reduced basis elements under BlockElim(k)
/// that avoid the first k variables. The result stays in I's ring.
Ideal eliminate(const Ideal& I, std::size_t k);

/// (I : f) = { g : g·f ∈ I }, computed as (I ∩ (f)) / f. f must be nonzero.
Ideal quotient(const Ideal& I, const Polynomial& f);
/// (I : J) as the intersection of (I : g) over the generators g of J.
Ideal quotient(const Ideal& I, const Ideal& J);

/// (I : J^∞): iterates quotient by J until two successive ideals agree.
/// Raises ResourceLimit after `max_iterations` steps.
Ideal saturate(const Ideal& I, const Ideal& J, unsigned max_iterations = 100);

/// (I : x_var^∞). For homogeneous I this divides the reverse-lex basis (with
/// x_var moved last) by the largest power of x_var; otherwise it calls saturate.
Ideal saturate_by_variable(const Ideal& I, std::size_t var);

/// q with f = q·g exactly; throws std::domain_error when g does not divide f.
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);

}  // namespace derksen
