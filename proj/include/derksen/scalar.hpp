#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace derksen {

class Scalar;

/// The coefficient field: the rationals or a prime field GF(p), p < 2^31.
class FieldSpec {
public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime in [2, 2^31).
  static FieldSpec prime(std::uint32_t p);
  /// Accepts "QQ" or "GF(p)".
  static FieldSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  /// Zero for the rationals.
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_mpq(const mpq_class& q) const;
  /// Parses an integer or fraction literal such as "-3" or "2/3".
  Scalar parse_scalar(std::string_view text) const;

  /// True when n is a unit of the field (n != 0 mod char).
  bool is_unit(std::uint64_t n) const { return p_ == 0 || n % p_ != 0; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
  FieldSpec(Kind k, std::uint32_t p) : kind_(k), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

/// An exact field element with a unique canonical representation.
///
/// Rationals are normalized GMP fractions; residues are stored in [0, p)
/// together with their modulus, so arithmetic needs no external context.
/// Mixing elements of different fields throws ArityMismatch.
class Scalar {
public:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
    friend bool operator==(const Residue&, const Residue&) = default;
  };

  /// Rational zero.
  Scalar() = default;
  explicit Scalar(mpq_class q) : rep_(std::move(q)) { std::get<mpq_class>(rep_).canonicalize(); }
  Scalar(std::uint32_t value, std::uint32_t modulus) : rep_(Residue{value % modulus, modulus}) {}

  bool is_rational() const { return std::holds_alternative<mpq_class>(rep_); }
  bool is_residue() const { return std::holds_alternative<Residue>(rep_); }
  FieldSpec field() const;

  bool is_zero() const;
  bool is_one() const;
  /// True if the printed form starts with a minus sign. Residues print in the
  /// symmetric range (-p/2, p/2].
  bool prints_negative() const;

  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
  std::uint32_t residue() const { return std::get<Residue>(rep_).value; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws DivisionByZero on zero.
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.rep_ == b.rep_; }

  std::size_t hash() const;
  std::string to_string() const;

private:
  std::variant<mpq_class, Residue> rep_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const FieldSpec& f);

/// Multiplicative inverse in `field`. Throws DivisionByZero when a = 0.
Scalar field_inv(const Scalar& a, const FieldSpec& field);

/// The smallest residue of multiplicative order exactly t; over QQ only 1 and -1
/// exist. Throws NoSuchRoot otherwise.
Scalar root_of_unity(std::uint32_t t, const FieldSpec& field);

bool is_prime(std::uint64_t n);

}  // namespace derksen
