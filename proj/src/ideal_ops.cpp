#include "derksen/ideal_ops.hpp"

#include <algorithm>
#include <stdexcept>

#include "derksen/errors.hpp"

namespace derksen {

namespace {

void check_same_ring(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw ArityMismatch("ideals in different rings");
}

std::string fresh_name(const RingSpec& ring, const std::string& base) {
  std::string name = base;
  while (ring.index_of(name)) name += "_";
  return name;
}

/// Embeds f into `ext`, which has one extra leading variable.
Polynomial lift(const Polynomial& f, const Ring& ext, MonomialOrder order) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(ext->nvars());
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) m.set(i + 1, t.mono[i]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(ext, std::move(terms), order);
}

/// Inverse of lift for polynomials free of the leading variable.
Polynomial drop_leading(const Polynomial& f, const Ring& ring, MonomialOrder order) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(ring->nvars());
    for (std::size_t i = 0; i < m.nvars(); ++i) m.set(i, t.mono[i + 1]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(ring, std::move(terms), order);
}

bool avoids_first(const Polynomial& f, std::size_t k) {
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < k; ++i)
      if (t.mono[i]) return false;
  return true;
}

void combinations(const std::vector<Polynomial>& gens, unsigned n, std::size_t start, const Polynomial& acc,
                  std::vector<Polynomial>& out) {
  if (n == 0) {
    out.push_back(acc.monic());
    return;
  }
  for (std::size_t i = start; i < gens.size(); ++i) combinations(gens, n - 1, i, acc * gens[i], out);
}

/// Applies the transposition (a b) to the variables of f, landing in `target`.
Polynomial swap_variables(const Polynomial& f, const Ring& target, std::size_t a, std::size_t b) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.set(a, t.mono[b]);
    m.set(b, t.mono[a]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms), f.order());
}

}  // namespace

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  check_same_ring(I, J);
  std::vector<Polynomial> gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  check_same_ring(I, J);
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators())
    for (const auto& g : J.generators()) gens.push_back(f * g);
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_power(const Ideal& I, unsigned n) {
  if (n == 0) throw std::invalid_argument("ideal_power needs n >= 1");
  if (n == 1) return I;
  std::vector<Polynomial> products;
  Polynomial one = Polynomial::constant(I.ring(), I.ring()->field().one());
  combinations(I.generators(), n, 0, one, products);

  std::vector<Polynomial> unique;
  for (auto& p : products)
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));

  // drop generators that reduce to zero modulo the surviving others
  std::vector<char> removed(unique.size(), 0);
  std::vector<Polynomial> others;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < unique.size(); ++j)
      if (j != i && !removed[j]) others.push_back(unique[j]);
    if (!others.empty() && reduce(unique[i], others, MonomialOrder::degrevlex()).is_zero()) removed[i] = 1;
  }
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < unique.size(); ++i)
    if (!removed[i]) gens.push_back(std::move(unique[i]));
  return Ideal(I.ring(), std::move(gens));
}

Ideal intersect(const Ideal& I, const Ideal& J) {
  check_same_ring(I, J);
  const Ring& ring = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal(ring, {});

  const auto elim = MonomialOrder::block_elim(1);
  const auto grevlex = MonomialOrder::degrevlex();
  Ring ext = ring->with_leading_variable(fresh_name(*ring, "t"));
  Polynomial t = Polynomial::variable(ext, 0, elim);
  Polynomial one_minus_t = Polynomial::constant(ext, ext->field().one(), elim) - t;

  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(t * lift(f, ext, elim));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * lift(g, ext, elim));

  std::vector<Polynomial> result;
  for (const auto& p : buchberger(gens, elim))
    if (avoids_first(p, 1)) result.push_back(drop_leading(p, ring, grevlex));

  Ideal K = Ideal::from_reduced_basis(ring, std::move(result), grevlex);
  for (const auto& h : K.generators())
    if (!ideal_member(h, I) || !ideal_member(h, J))
      throw CrossCheckFailure("intersection generator " + h.to_string() + " is not in both inputs");
  return K;
}

Ideal intersect_all(std::span<const Ideal> ideals) {
  if (ideals.empty()) throw std::invalid_argument("intersect_all needs at least one ideal");
  Ideal acc = ideals.front();
  for (std::size_t i = 1; i < ideals.size(); ++i) acc = intersect(acc, ideals[i]);
  return acc;
}

Ideal eliminate(const Ideal& I, std::size_t k) {
  if (k >= I.ring()->nvars() && I.ring()->nvars() > 0)
    throw std::invalid_argument("eliminate: k must be below the number of variables");
  const auto order = MonomialOrder::block_elim(static_cast<std::uint16_t>(k));
  std::vector<Polynomial> kept;
  for (const auto& p : I.groebner_basis(order))
    if (avoids_first(p, k)) kept.push_back(p.with_order(MonomialOrder::degrevlex()));
  return Ideal::from_reduced_basis(I.ring(), std::move(kept), MonomialOrder::degrevlex());
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw DivisionByZero();
  const auto order = MonomialOrder::degrevlex();
  Polynomial rest = f.with_order(order);
  Polynomial div = g.with_order(order);
  std::vector<Term> quotient;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading_term();
    if (!div.leading_monomial().divides(lt.mono)) throw std::domain_error("divide_exact: not a multiple");
    Scalar c = lt.coeff / div.leading_coeff();
    Monomial m = lt.mono / div.leading_monomial();
    quotient.push_back({m, c});
    rest = rest.sub_scaled(c, m, div);
  }
  return Polynomial::from_terms(f.ring(), std::move(quotient), order);
}

Ideal quotient(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("quotient by the zero polynomial");
  if (!same_ring(I.ring(), f.ring())) throw ArityMismatch("quotient: polynomial from a different ring");
  if (f.is_constant()) return I;
  Ideal K = intersect(I, Ideal(I.ring(), {f}));
  std::vector<Polynomial> gens;
  for (const auto& h : K.generators()) gens.push_back(divide_exact(h, f).monic());
  return Ideal(I.ring(), std::move(gens));
}

Ideal quotient(const Ideal& I, const Ideal& J) {
  check_same_ring(I, J);
  if (J.is_zero()) return Ideal::unit(I.ring());
  std::vector<Ideal> parts;
  for (const auto& g : J.generators()) parts.push_back(quotient(I, g));
  return intersect_all(parts);
}

Ideal saturate(const Ideal& I, const Ideal& J, unsigned max_iterations) {
  check_same_ring(I, J);
  Ideal current = I;
  for (unsigned step = 0; step < max_iterations; ++step) {
    Ideal next = quotient(current, J);
    if (ideal_equal(next, current)) return current;
    current = std::move(next);
  }
  throw ResourceLimit("saturation did not stabilize within " + std::to_string(max_iterations) + " steps");
}

Ideal saturate_by_variable(const Ideal& I, std::size_t var) {
  const Ring& ring = I.ring();
  if (var >= ring->nvars()) throw std::invalid_argument("saturate_by_variable: no such variable");
  if (!I.is_homogeneous()) return saturate(I, Ideal(ring, {Polynomial::variable(ring, var)}));

  const std::size_t last = ring->nvars() - 1;
  std::vector<std::string> names = ring->names();
  std::swap(names[var], names[last]);
  Ring swapped = std::make_shared<const RingSpec>(ring->field(), names, ring->d());

  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(swap_variables(f, swapped, var, last));
  const Ideal moved(swapped, std::move(gens));
  std::vector<Polynomial> out;
  for (const auto& g : moved.groebner_basis()) {
    unsigned k = g.terms().front().mono[last];
    for (const auto& t : g.terms()) k = std::min(k, t.mono[last]);
    Monomial divisor(ring->nvars());
    divisor.set(last, k);
    std::vector<Term> terms;
    for (const auto& t : g.terms()) terms.push_back({t.mono / divisor, t.coeff});
    out.push_back(swap_variables(Polynomial::from_terms(swapped, std::move(terms)), ring, var, last));
  }
  return Ideal(ring, std::move(out));
}

}  // namespace derksen
