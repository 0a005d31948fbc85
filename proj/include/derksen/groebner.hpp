#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "derksen/polynomial.hpp"

namespace derksen {

/// Caps that turn a runaway Groebner computation into a ResourceLimit error.
struct GbLimits {
  std::size_t max_basis = 10'000;
  std::size_t max_pairs = 1'000'000;
};

/// Process-wide defaults, used whenever a call does not pass its own limits.
GbLimits default_limits();
void set_default_limits(GbLimits limits);

/// Sentinel for "no degree truncation".
inline constexpr unsigned kNoDegreeBound = std::numeric_limits<unsigned>::max();

/// Reduced Groebner basis of the ideal generated by `gens`: interreduced, monic
/// and sorted by descending leading monomial.
///
/// With a finite `degree_bound` and homogeneous input, S-pairs whose lcm has
/// degree above the bound are skipped. The result then reduces every element
/// of the ideal of degree <= bound to zero, but need not be a full basis.
/// The bound is ignored for inhomogeneous input.
std::vector<Polynomial> buchberger(std::span<const Polynomial> gens, MonomialOrder order,
                                   const GbLimits& limits = default_limits(),
                                   unsigned degree_bound = kNoDegreeBound);

/// A finitely generated ideal of a fixed ring, with lazily computed reduced
/// Groebner bases per monomial order. Copies share the basis cache; the cache
/// tolerates concurrent readers.
class Ideal {
public:
  /// Zero generators are dropped.
  Ideal(Ring ring, std::vector<Polynomial> generators);

  /// Wraps a list already known to be the reduced basis for `order`.
  static Ideal from_reduced_basis(Ring ring, std::vector<Polynomial> basis, MonomialOrder order);
  static Ideal unit(Ring ring);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_homogeneous() const;

  /// Cached reduced Groebner basis. Propagates ResourceLimit.
  const std::vector<Polynomial>& groebner_basis(MonomialOrder order = MonomialOrder::degrevlex(),
                                                const GbLimits& limits = default_limits()) const;

  /// A basis that decides membership for elements of degree <= `degree`.
  /// Falls back to the full basis for inhomogeneous ideals.
  const std::vector<Polynomial>& basis_up_to(unsigned degree, const GbLimits& limits = default_limits()) const;

  bool is_unit() const;
  bool is_zero() const { return generators_.empty(); }

  std::string to_string() const;

private:
  struct Cache {
    std::shared_mutex mutex;
    // key: (order, degree bound); kNoDegreeBound marks a full basis
    std::map<std::pair<MonomialOrder, unsigned>, std::shared_ptr<const std::vector<Polynomial>>> bases;
  };

  const std::vector<Polynomial>* lookup(MonomialOrder order, unsigned degree) const;
  const std::vector<Polynomial>& store(MonomialOrder order, unsigned degree, std::vector<Polynomial> basis) const;

  Ring ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// f lies in I. The answer does not depend on `order`.
bool ideal_member(const Polynomial& f, const Ideal& I, MonomialOrder order = MonomialOrder::degrevlex());

/// Same ideal: reduced DegRevLex bases coincide.
bool ideal_equal(const Ideal& I, const Ideal& J);

/// Every generator of I lies in J.
bool ideal_contained(const Ideal& I, const Ideal& J);

}  // namespace derksen
