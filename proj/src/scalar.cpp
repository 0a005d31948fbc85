#include "derksen/scalar.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include "derksen/errors.hpp"

namespace derksen {

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw DivisionByZero();
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  // r0 == gcd == 1 because p is prime
  if (s0 < 0) s0 += p;
  return static_cast<std::uint32_t>(s0);
}

std::uint32_t checked_modulus(const Scalar::Residue& a, const Scalar::Residue& b) {
  if (a.modulus != b.modulus) throw ArityMismatch("scalars from different prime fields");
  return a.modulus;
}

[[noreturn]] void mixed_fields() { throw ArityMismatch("mixing rational and modular scalars"); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("GF(p) needs a prime 2 <= p < 2^31, got " + std::to_string(p));
  return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "QQ") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    auto body = text.substr(3, text.size() - 4);
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec == std::errc() && ptr == body.data() + body.size()) return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "', expected QQ or GF(p)");
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long long n) const {
  if (kind_ == Kind::Rationals) return Scalar(mpq_class(static_cast<long>(n)));
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Scalar(static_cast<std::uint32_t>(r), p_);
}

Scalar FieldSpec::from_mpq(const mpq_class& q) const {
  if (kind_ == Kind::Rationals) return Scalar(q);
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) throw DivisionByZero();
  Scalar n(static_cast<std::uint32_t>(num.get_ui()), p_);
  Scalar d(static_cast<std::uint32_t>(den.get_ui()), p_);
  return n / d;
}

Scalar FieldSpec::parse_scalar(std::string_view text) const {
  text = trim(text);
  mpq_class q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("bad scalar literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return from_mpq(q);
}

std::string FieldSpec::to_string() const {
  return kind_ == Kind::Rationals ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

FieldSpec Scalar::field() const {
  if (is_rational()) return FieldSpec::rationals();
  return FieldSpec::prime(std::get<Residue>(rep_).modulus);
}

bool Scalar::is_zero() const {
  if (auto r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(rational()) == 0;
}

bool Scalar::is_one() const {
  if (auto r = std::get_if<Residue>(&rep_)) return r->value == 1;
  return rational() == 1;
}

bool Scalar::prints_negative() const {
  if (auto r = std::get_if<Residue>(&rep_)) return r->value > r->modulus / 2;
  return sgn(rational()) < 0;
}

Scalar Scalar::operator-() const {
  if (auto r = std::get_if<Residue>(&rep_))
    return Scalar(r->value == 0 ? 0 : r->modulus - r->value, r->modulus);
  return Scalar(mpq_class(-rational()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (auto r = std::get_if<Residue>(&rep_)) {
    auto s = std::get_if<Residue>(&o.rep_);
    if (!s) mixed_fields();
    std::uint32_t p = checked_modulus(*r, *s);
    std::uint64_t v = static_cast<std::uint64_t>(r->value) + s->value;
    r->value = static_cast<std::uint32_t>(v >= p ? v - p : v);
    return *this;
  }
  if (!o.is_rational()) mixed_fields();
  std::get<mpq_class>(rep_) += o.rational();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (auto r = std::get_if<Residue>(&rep_)) {
    auto s = std::get_if<Residue>(&o.rep_);
    if (!s) mixed_fields();
    r->value = mul_mod(r->value, s->value, checked_modulus(*r, *s));
    return *this;
  }
  if (!o.is_rational()) mixed_fields();
  std::get<mpq_class>(rep_) *= o.rational();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (auto r = std::get_if<Residue>(&rep_)) return Scalar(inv_mod(r->value, r->modulus), r->modulus);
  if (sgn(rational()) == 0) throw DivisionByZero();
  return Scalar(mpq_class(1 / rational()));
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = field().one();
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::size_t Scalar::hash() const {
  if (auto r = std::get_if<Residue>(&rep_)) return r->value * 0x9e3779b97f4a7c15ULL + r->modulus;
  const mpq_class& q = rational();
  std::size_t h = mpz_get_ui(q.get_num_mpz_t()) ^ (static_cast<std::size_t>(sgn(q)) << 1);
  return h * 0x9e3779b97f4a7c15ULL + mpz_get_ui(q.get_den_mpz_t());
}

std::string Scalar::to_string() const {
  if (auto r = std::get_if<Residue>(&rep_)) {
    if (prints_negative()) return "-" + std::to_string(r->modulus - r->value);
    return std::to_string(r->value);
  }
  return rational().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const FieldSpec& f) { return os << f.to_string(); }

Scalar field_inv(const Scalar& a, const FieldSpec& field) {
  if (!(a.field() == field)) throw ArityMismatch("scalar is not an element of " + field.to_string());
  return a.inverse();
}

Scalar root_of_unity(std::uint32_t t, const FieldSpec& field) {
  if (t == 0) throw NoSuchRoot("root of unity of order 0");
  if (field.kind() == FieldSpec::Kind::Rationals) {
    if (t == 1) return field.one();
    if (t == 2) return field.from_int(-1);
    throw NoSuchRoot("QQ has no primitive root of unity of order " + std::to_string(t));
  }
  const std::uint32_t p = field.characteristic();
  if ((p - 1) % t != 0)
    throw NoSuchRoot("order " + std::to_string(t) + " does not divide " + std::to_string(p - 1));
  for (std::uint32_t w = 1; w < p; ++w) {
    Scalar c(w, p);
    if (!c.pow(t).is_one()) continue;
    bool primitive = true;
    // order of c divides t; it is exactly t iff c^(t/q) != 1 for each prime q | t
    std::uint32_t rest = t;
    for (std::uint32_t q = 2; q <= rest; ++q) {
      if (rest % q != 0) continue;
      while (rest % q == 0) rest /= q;
      if (c.pow(t / q).is_one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return c;
  }
  throw NoSuchRoot("no root of order " + std::to_string(t));  // unreachable for t | p-1
}

}  // namespace derksen
