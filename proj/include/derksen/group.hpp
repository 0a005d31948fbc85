#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derksen/polynomial.hpp"

namespace derksen {

/// An invertible d×d matrix A acting on K[x1..xd] by g(x_j) = Σ_i A[j][i]·x_i.
class GroupElement {
public:
  /// Row-major entries; throws ArityMismatch on a size or field mismatch.
  GroupElement(FieldSpec field, std::size_t dim, std::vector<Scalar> entries);

  static GroupElement identity(FieldSpec field, std::size_t dim);
  static GroupElement diagonal(FieldSpec field, std::span<const Scalar> diag);

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Scalar& at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

  Scalar determinant() const;
  bool is_identity() const;

  /// Composition of ring automorphisms, (g*h)(f) = g(h(f)). Its matrix is A_h·A_g.
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }
  std::size_t hash() const;

  /// "[[a,b],[c,d]]"
  std::string to_string() const;

private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<Scalar> entries_;
};

/// The closure of a generating set; elements()[0] is the identity and the
/// remaining elements follow breadth-first discovery order.
class FiniteGroup {
public:
  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& identity() const { return elements_.front(); }

  /// |G| is a unit in the field, so the Reynolds operator exists.
  bool is_reductive() const { return field_.is_unit(order()); }
  /// Non-fatal notes collected at construction (e.g. char p divides |G|).
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  friend FiniteGroup generate_group(FieldSpec, std::size_t, std::span<const GroupElement>, std::size_t);
  FiniteGroup(FieldSpec field, std::size_t dim) : field_(field), dim_(dim) {}

  FieldSpec field_;
  std::size_t dim_;
  std::vector<GroupElement> elements_;
  std::vector<std::string> warnings_;
};

inline constexpr std::size_t kDefaultGroupCap = 10'000;

/// Throws NotInvertible for a singular generator and GroupTooLarge when the
/// closure exceeds `cap` elements.
FiniteGroup generate_group(FieldSpec field, std::size_t dim, std::span<const GroupElement> gens,
                           std::size_t cap = kDefaultGroupCap);

/// Applies g to the x-variables of f (variables named x1..xd); every other
/// variable is fixed.
Polynomial act(const GroupElement& g, const Polynomial& f);

/// Basis of ker(A - Id) in reduced row echelon form; empty iff g fixes only
/// the origin.
std::vector<std::vector<Scalar>> fixed_subspace(const GroupElement& g);

/// (1/|G|) Σ_g g(f). Throws NotReductive when the characteristic divides |G|.
Polynomial reynolds(const Polynomial& f, const FiniteGroup& G);

/// Generators described by a preset string:
///   sign(j,d)            x_i -> x_i for i < j, x_i -> -x_i for i >= j (char != 2)
///   jordan2(j,d)         x_i -> x_i + x_{i+1} for i = j, j+2, ..., d-1 (char 2)
///   diag(d1,...,da;d)    g_i scales x_i by a root of unity of order d_i
///   scalar(t,d)          x_i -> w·x_i with w of order t
/// Throws std::invalid_argument for malformed or ill-suited presets and
/// NoSuchRoot when the field lacks the required root of unity.
struct Preset {
  std::size_t dim;
  std::vector<GroupElement> generators;
};
Preset make_preset(std::string_view text, const FieldSpec& field);

}  // namespace derksen
