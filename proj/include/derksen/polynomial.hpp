#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derksen/scalar.hpp"

namespace derksen {

/// Upper bound on the number of ring variables (2d plus two auxiliaries).
inline constexpr std::size_t kMaxVars = 24;

/// A polynomial ring over a field with named variables. Variable 0 has the
/// highest precedence in every monomial order.
class RingSpec {
public:
  /// `d` is the number of x-variables for Derksen rings and 0 otherwise.
  RingSpec(FieldSpec field, std::vector<std::string> names, std::size_t d = 0);

  /// K[y1..yd, x1..xd]: y-variables first so that they dominate x-variables.
  static std::shared_ptr<const RingSpec> derksen(FieldSpec field, std::size_t d);
  /// K[x1..xd]
  static std::shared_ptr<const RingSpec> affine(FieldSpec field, std::size_t d);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  std::size_t d() const { return d_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same ring with one extra variable in front (the elimination slot).
  std::shared_ptr<const RingSpec> with_leading_variable(const std::string& name) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

private:
  FieldSpec field_;
  std::vector<std::string> names_;
  std::size_t d_;
};

using Ring = std::shared_ptr<const RingSpec>;

bool same_ring(const Ring& a, const Ring& b);

/// Dense exponent vector with cached total degree.
class Monomial {
public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exps);
  explicit Monomial(std::span<const unsigned> exps);

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, unsigned e);
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  /// Bit i set iff variable i occurs (folded modulo 64).
  std::uint64_t support_mask() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }
  std::size_t hash() const;

private:
  std::array<Exponent, kMaxVars> exp_{};
  std::uint16_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Lex, graded reverse lex, or an elimination order that compares the first
/// `block` variables lexicographically and breaks ties by DegRevLex on the rest.
class MonomialOrder {
public:
  enum class Kind : std::uint8_t { Lex, DegRevLex, BlockElim };

  constexpr MonomialOrder() = default;
  static constexpr MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static constexpr MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex, 0); }
  static constexpr MonomialOrder block_elim(std::uint16_t k) { return MonomialOrder(Kind::BlockElim, k); }

  Kind kind() const { return kind_; }
  std::uint16_t block() const { return block_; }

  /// No arity check; see monomial_compare for the checked variant.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;

  std::string to_string() const;

  friend constexpr auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;

private:
  constexpr MonomialOrder(Kind k, std::uint16_t block) : kind_(k), block_(block) {}

  Kind kind_ = Kind::DegRevLex;
  std::uint16_t block_ = 0;
};

/// Throws ArityMismatch if a and b have different lengths.
std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Scalar coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// A polynomial over a RingSpec. Terms are nonzero and strictly descending in
/// the polynomial's storage order, so structural equality is mathematical
/// equality.
class Polynomial {
public:
  explicit Polynomial(Ring ring, MonomialOrder order = MonomialOrder::degrevlex());

  static Polynomial constant(Ring ring, const Scalar& c, MonomialOrder order = MonomialOrder::degrevlex());
  static Polynomial variable(Ring ring, std::size_t index, MonomialOrder order = MonomialOrder::degrevlex());
  static Polynomial monomial(Ring ring, const Monomial& m, const Scalar& c,
                             MonomialOrder order = MonomialOrder::degrevlex());
  /// Sorts, merges duplicates and drops zero coefficients.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::degrevlex());
  /// Precondition: terms nonzero and strictly descending in `order`.
  static Polynomial from_sorted_terms(Ring ring, std::vector<Term> terms, MonomialOrder order) {
    return Polynomial(std::move(ring), order, std::move(terms));
  }
  /// Parses the text syntax, e.g. "3*y1^2*x2 - 1/2*x2" or "(y1 - x1)^2".
  static Polynomial parse(Ring ring, std::string_view text, MonomialOrder order = MonomialOrder::degrevlex());

  const Ring& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_->field(); }
  MonomialOrder order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Precondition: nonzero.
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  Polynomial with_order(MonomialOrder order) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, const Polynomial& f);
  Polynomial pow(unsigned k) const;

  /// this - c * m * g, computed by a single merge. g must share ring and order.
  Polynomial sub_scaled(const Scalar& c, const Monomial& m, const Polynomial& g) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

private:
  Polynomial(Ring ring, MonomialOrder order, std::vector<Term> terms)
      : ring_(std::move(ring)), order_(order), terms_(std::move(terms)) {}
  void check_ring(const Polynomial& o) const;

  Ring ring_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& f);

/// Multivariate division with remainder. The result r satisfies: f - r lies in
/// the ideal of `basis` and no term of r is divisible by a leading monomial of
/// `basis`. Each step uses the first basis element (input order) whose leading
/// monomial divides the current term. The result is in `order`.
Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis, MonomialOrder order);

/// The ring homomorphism sending variable i to images[i]. The result lives in
/// the images' common ring, stored in f's order.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);

namespace detail {
/// out = a - c*m*g for term ranges sorted descending in `order`.
void sub_scaled_into(std::vector<Term>& out, std::span<const Term> a, const Scalar& c, const Monomial& m,
                     std::span<const Term> g, const MonomialOrder& order);
}  // namespace detail

/// Comma-separated rendering, e.g. "y1^2 - x1^2, y2 - x2".
std::string join(std::span<const Polynomial> polys);

}  // namespace derksen
