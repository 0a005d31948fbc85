#include "derksen/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "derksen/errors.hpp"

namespace derksen {

// ---------------------------------------------------------------------------
// RingSpec

RingSpec::RingSpec(FieldSpec field, std::vector<std::string> names, std::size_t d)
    : field_(field), names_(std::move(names)), d_(d) {
  if (names_.size() > kMaxVars)
    throw ArityMismatch("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw ArityMismatch("duplicate variable name '" + n + "'");
}

Ring RingSpec::derksen(FieldSpec field, std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("y" + std::to_string(i));
  for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return std::make_shared<const RingSpec>(field, std::move(names), d);
}

Ring RingSpec::affine(FieldSpec field, std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return std::make_shared<const RingSpec>(field, std::move(names), d);
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Ring RingSpec::with_leading_variable(const std::string& name) const {
  std::vector<std::string> names{name};
  names.insert(names.end(), names_.begin(), names_.end());
  return std::make_shared<const RingSpec>(field_, std::move(names), d_);
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint16_t>(nvars)) {
  if (nvars > kMaxVars) throw ArityMismatch("too many variables");
}

Monomial::Monomial(std::initializer_list<unsigned> exps)
    : Monomial(std::span<const unsigned>(exps.begin(), exps.size())) {}

Monomial::Monomial(std::span<const unsigned> exps) : Monomial(exps.size()) {
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > 0xFFFF) throw ResourceLimit("exponent overflow");
  degree_ = degree_ - exp_[i] + e;
  exp_[i] = static_cast<Exponent>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i]) mask |= std::uint64_t{1} << (i % 64);
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    unsigned e = unsigned{a.exp_[i]} + b.exp_[i];
    if (e > 0xFFFF) throw ResourceLimit("exponent overflow");
    r.exp_[i] = static_cast<Monomial::Exponent>(e);
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] = static_cast<Exponent>(exp_[i] - divisor.exp_[i]);
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  unsigned deg = 0;
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    deg += r.exp_[i];
  }
  r.degree_ = deg;
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.nvars_; ++i)
    if (a.exp_[i] && b.exp_[i]) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exp_[i]) * 1099511628211ULL;
  return h;
}

// ---------------------------------------------------------------------------
// MonomialOrder

namespace {

std::strong_ordering degrevlex_range(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) {
  unsigned da = 0, db = 0;
  for (std::size_t i = from; i < to; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = to; i-- > from;)
    if (a[i] != b[i]) return b[i] <=> a[i];
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.nvars();
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::DegRevLex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return b[i] <=> a[i];
      return std::strong_ordering::equal;
    case Kind::BlockElim: {
      const std::size_t k = std::min<std::size_t>(block_, n);
      for (std::size_t i = 0; i < k; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return degrevlex_range(a, b, k, n);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::DegRevLex: return "degrevlex";
    case Kind::BlockElim: return "elim(" + std::to_string(block_) + ")";
  }
  return "?";
}

std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw ArityMismatch("monomials of different arity");
  return order.compare(a, b);
}

// ---------------------------------------------------------------------------
// Polynomial

namespace detail {

void sub_scaled_into(std::vector<Term>& out, std::span<const Term> a, const Scalar& c, const Monomial& m,
                     std::span<const Term> g, const MonomialOrder& order) {
  out.clear();
  out.reserve(a.size() + g.size());
  const Scalar neg = -c;
  std::size_t i = 0, j = 0;
  Monomial gm;
  bool have_gm = false;
  while (i < a.size() || j < g.size()) {
    if (j < g.size() && !have_gm) {
      gm = g[j].mono * m;
      have_gm = true;
    }
    if (j >= g.size()) {
      out.insert(out.end(), a.begin() + i, a.end());
      break;
    }
    if (i >= a.size()) {
      out.push_back({gm, neg * g[j].coeff});
      ++j;
      have_gm = false;
      continue;
    }
    auto cmp = order.compare(a[i].mono, gm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, neg * g[j].coeff});
      ++j;
      have_gm = false;
    } else {
      Scalar s = a[i].coeff + neg * g[j].coeff;
      if (!s.is_zero()) out.push_back({gm, std::move(s)});
      ++i;
      ++j;
      have_gm = false;
    }
  }
}

}  // namespace detail

namespace {

using detail::sub_scaled_into;

void canonicalize(std::vector<Term>& terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size();) {
    Term acc = std::move(terms[r]);
    std::size_t s = r + 1;
    while (s < terms.size() && terms[s].mono == acc.mono) acc.coeff += terms[s++].coeff;
    if (!acc.coeff.is_zero()) terms[w++] = std::move(acc);
    r = s;
  }
  terms.resize(w);
}

}  // namespace

Polynomial::Polynomial(Ring ring, MonomialOrder order) : ring_(std::move(ring)), order_(order) {}

Polynomial Polynomial::constant(Ring ring, const Scalar& c, MonomialOrder order) {
  return monomial(ring, Monomial(ring->nvars()), c, order);
}

Polynomial Polynomial::variable(Ring ring, std::size_t index, MonomialOrder order) {
  if (index >= ring->nvars()) throw ArityMismatch("variable index out of range");
  Monomial m(ring->nvars());
  m.set(index, 1);
  Scalar one = ring->field().one();
  return monomial(std::move(ring), m, one, order);
}

Polynomial Polynomial::monomial(Ring ring, const Monomial& m, const Scalar& c, MonomialOrder order) {
  if (m.nvars() != ring->nvars()) throw ArityMismatch("monomial arity does not match ring");
  std::vector<Term> terms;
  if (!c.is_zero()) terms.push_back({m, c});
  return Polynomial(std::move(ring), order, std::move(terms));
}

Polynomial Polynomial::from_terms(Ring ring, std::vector<Term> terms, MonomialOrder order) {
  for (const auto& t : terms)
    if (t.mono.nvars() != ring->nvars()) throw ArityMismatch("monomial arity does not match ring");
  canonicalize(terms, order);
  return Polynomial(std::move(ring), order, std::move(terms));
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
  if (order == order_) return *this;
  std::vector<Term> terms = terms_;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
  return Polynomial(ring_, order, std::move(terms));
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coeff().is_one()) return *this;
  Scalar inv = leading_coeff().inverse();
  return inv * *this;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw ArityMismatch("polynomials from different rings");
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff = -t.coeff;
  return Polynomial(ring_, order_, std::move(terms));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  *this = sub_scaled(-field().one(), Monomial(ring_->nvars()), o);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  *this = sub_scaled(field().one(), Monomial(ring_->nvars()), o);
  return *this;
}

Polynomial Polynomial::sub_scaled(const Scalar& c, const Monomial& m, const Polynomial& g) const {
  check_ring(g);
  if (c.is_zero()) return *this;
  if (g.order_ != order_) return sub_scaled(c, m, g.with_order(order_));
  std::vector<Term> out;
  sub_scaled_into(out, terms_, c, m, g.terms_, order_);
  return Polynomial(ring_, order_, std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
  canonicalize(terms, a.order_);
  return Polynomial(a.ring_, a.order_, std::move(terms));
}

Polynomial operator*(const Scalar& c, const Polynomial& f) {
  if (c.is_zero()) return Polynomial(f.ring_, f.order_);
  std::vector<Term> terms = f.terms_;
  for (auto& t : terms) t.coeff *= c;
  return Polynomial(f.ring_, f.order_, std::move(terms));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, field().one(), order_);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_) || a.size() != b.size()) return false;
  if (a.order_ == b.order_) return a.terms_ == b.terms_;
  return a.terms_ == b.with_order(a.order_).terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.prints_negative();
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const std::string mag = (negative ? -t.coeff : t.coeff).to_string();
    bool wrote = false;
    if (t.mono.is_one() || mag != "1") {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (wrote) os << '*';
      os << ring_->name(i);
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.to_string(); }

std::string join(std::span<const Polynomial> polys) {
  std::string out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) out += ", ";
    out += polys[i].to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
public:
  PolyParser(Ring ring, std::string_view text, MonomialOrder order)
      : ring_(std::move(ring)), text_(text), order_(order) {}

  Polynomial parse() {
    Polynomial f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc(ring_, order_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 5) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      std::size_t save = pos_;
      if (accept('/')) {
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          lit += "/" + digits();
        else
          pos_ = save;
      }
      try {
        return Polynomial::constant(ring_, ring_->field().parse_scalar(lit), order_);
      } catch (const DivisionByZero&) {
        fail("zero denominator in '" + lit + "'");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *idx, order_);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Ring ring_;
  std::string_view text_;
  MonomialOrder order_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(Ring ring, std::string_view text, MonomialOrder order) {
  return PolyParser(std::move(ring), text, order).parse();
}

// ---------------------------------------------------------------------------
// Division and substitution

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis, MonomialOrder order) {
  std::vector<const Polynomial*> divisors;
  std::vector<Polynomial> converted;
  std::vector<std::uint64_t> masks;
  converted.reserve(basis.size());
  for (const auto& b : basis) {
    if (!same_ring(b.ring(), f.ring())) throw ArityMismatch("divisor from a different ring");
    if (b.is_zero()) continue;
    if (b.order() == order) {
      divisors.push_back(&b);
    } else {
      converted.push_back(b.with_order(order));
      divisors.push_back(&converted.back());
    }
    masks.push_back(divisors.back()->leading_monomial().support_mask());
  }
  std::vector<Term> current = f.with_order(order).terms();
  std::vector<Term> scratch;
  std::vector<Term> remainder;
  std::size_t head = 0;
  while (head < current.size()) {
    const Term& lt = current[head];
    const std::uint64_t lt_mask = lt.mono.support_mask();
    const Polynomial* hit = nullptr;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if ((masks[i] & ~lt_mask) != 0) continue;
      if (divisors[i]->leading_monomial().divides(lt.mono)) {
        hit = divisors[i];
        break;
      }
    }
    if (!hit) {
      remainder.push_back(lt);
      ++head;
      continue;
    }
    Scalar c = lt.coeff / hit->leading_coeff();
    Monomial m = lt.mono / hit->leading_monomial();
    sub_scaled_into(scratch, std::span<const Term>(current).subspan(head), c, m, hit->terms(), order);
    std::swap(current, scratch);
    head = 0;
  }
  return Polynomial::from_terms(f.ring(), std::move(remainder), order);
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (images.size() != f.ring()->nvars())
    throw ArityMismatch("substitute needs one image per variable");
  if (images.empty()) return f;
  const Ring& target = images[0].ring();
  for (const auto& im : images)
    if (!same_ring(im.ring(), target)) throw ArityMismatch("images live in different rings");
  if (!(target->field() == f.field())) throw ArityMismatch("images over a different field");

  const MonomialOrder order = f.order();
  // powers[i][e] = images[i]^e, filled on demand
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& table = powers[i];
    if (table.empty()) {
      table.push_back(Polynomial::constant(target, target->field().one(), order));
      table.push_back(images[i].with_order(order));
    }
    while (table.size() <= e) table.push_back(table.back() * table[1]);
    return table[e];
  };

  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(target, t.coeff, order);
    for (std::size_t i = 0; i < t.mono.nvars() && !prod.is_zero(); ++i)
      if (t.mono[i]) prod = prod * power(i, t.mono[i]);
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return Polynomial::from_terms(target, std::move(acc), order);
}

}  // namespace derksen
