#include "derksen/groebner.hpp"

#include <algorithm>
#include <mutex>
#include <cstdint>
#include <set>

#include "derksen/errors.hpp"

namespace derksen {

namespace {

std::mutex g_limits_mutex;
GbLimits g_limits;

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint64_t seq;
};

struct PairLess {
  MonomialOrder order;
  bool operator()(const Pair& a, const Pair& b) const {
    auto c = order.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return a.seq < b.seq;
  }
};

struct GbResult {
  std::vector<Polynomial> basis;
  bool truncated = false;
};

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer-Moeller installation of the coprime and chain criteria.
class Engine {
public:
  Engine(Ring ring, MonomialOrder order, const GbLimits& limits, unsigned bound)
      : ring_(std::move(ring)), order_(order), limits_(limits), bound_(bound), pairs_(PairLess{order}) {}

  void add_generator(const Polynomial& f) {
    if (unit_) return;
    if (bound_ != kNoDegreeBound && f.total_degree() > static_cast<int>(bound_)) {
      truncated_ = true;
      return;
    }
    std::vector<Term> nf = normal_form(f.with_order(order_).terms());
    if (!nf.empty()) insert(make_monic(std::move(nf)));
  }

  void run() {
    while (!pairs_.empty() && !unit_) {
      Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      std::vector<Term> nf = normal_form(s_polynomial(p));
      if (!nf.empty()) insert(make_monic(std::move(nf)));
    }
  }

  GbResult result() const {
    GbResult out;
    out.truncated = truncated_;
    if (unit_) {
      out.basis.push_back(Polynomial::constant(ring_, ring_->field().one(), order_));
      return out;
    }
    std::vector<std::size_t> live;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (live_[k]) live.push_back(k);
    // The live set is minimal; tail-reduce each element against the others.
    for (std::size_t k : live) {
      std::vector<Term> tail(basis_[k].terms().begin() + 1, basis_[k].terms().end());
      std::vector<Term> reduced = normal_form(std::move(tail), k);
      reduced.insert(reduced.begin(), basis_[k].leading_term());
      out.basis.push_back(Polynomial::from_sorted_terms(ring_, std::move(reduced), order_));
    }
    std::sort(out.basis.begin(), out.basis.end(), [&](const Polynomial& a, const Polynomial& b) {
      return order_.compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
  }

private:
  Polynomial make_monic(std::vector<Term> terms) const {
    if (!terms.front().coeff.is_one()) {
      Scalar inv = terms.front().coeff.inverse();
      for (auto& t : terms) t.coeff *= inv;
    }
    return Polynomial::from_sorted_terms(ring_, std::move(terms), order_);
  }

  std::vector<Term> s_polynomial(const Pair& p) const {
    const Polynomial& a = basis_[p.i];
    const Polynomial& b = basis_[p.j];
    Monomial ma = p.lcm / a.leading_monomial();
    std::vector<Term> scaled;
    scaled.reserve(a.size());
    for (const auto& t : a.terms()) scaled.push_back({t.mono * ma, t.coeff});
    std::vector<Term> out;
    detail::sub_scaled_into(out, scaled, ring_->field().one(), p.lcm / b.leading_monomial(), b.terms(), order_);
    return out;
  }

  /// Full reduction against the live basis, skipping index `skip`.
  std::vector<Term> normal_form(std::vector<Term> current, std::size_t skip = SIZE_MAX) const {
    std::vector<Term> scratch;
    std::vector<Term> remainder;
    std::size_t head = 0;
    while (head < current.size()) {
      const Term& lt = current[head];
      const std::uint64_t lt_mask = lt.mono.support_mask();
      const Polynomial* hit = nullptr;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (!live_[k] || k == skip || (masks_[k] & ~lt_mask) != 0) continue;
        if (basis_[k].leading_monomial().divides(lt.mono)) {
          hit = &basis_[k];
          break;
        }
      }
      if (!hit) {
        remainder.push_back(lt);
        ++head;
        continue;
      }
      // basis elements are monic
      Scalar c = lt.coeff;
      Monomial m = lt.mono / hit->leading_monomial();
      detail::sub_scaled_into(scratch, std::span<const Term>(current).subspan(head), c, m, hit->terms(), order_);
      std::swap(current, scratch);
      head = 0;
    }
    return remainder;
  }

  void insert(Polynomial h) {
    if (h.leading_monomial().is_one()) {
      unit_ = true;
      pairs_.clear();
      return;
    }
    if (basis_.size() >= limits_.max_basis)
      throw ResourceLimit("Groebner basis exceeds " + std::to_string(limits_.max_basis) + " elements");

    const Monomial& lh = h.leading_monomial();
    std::vector<std::size_t> cand;
    std::vector<Monomial> lcms;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (live_[k]) {
        cand.push_back(k);
        lcms.push_back(lcm(lh, basis_[k].leading_monomial()));
      }

    // Criterion on the new pairs (h, g): keep coprime ones for now, and among
    // the others only those whose lcm is not a multiple of another pair's lcm.
    const std::size_t n = cand.size();
    std::vector<char> in_d(n, 0), processed(n, 0), is_coprime(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      processed[a] = 1;
      if (coprime(lh, basis_[cand[a]].leading_monomial())) {
        in_d[a] = is_coprime[a] = 1;
        continue;
      }
      bool dominated = false;
      for (std::size_t b = 0; b < n && !dominated; ++b)
        if (b != a && (!processed[b] || in_d[b]) && lcms[b].divides(lcms[a])) dominated = true;
      if (!dominated) in_d[a] = 1;
    }

    // Chain criterion on old pairs.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      if (lh.divides(it->lcm) &&
          !(lcm(basis_[it->i].leading_monomial(), lh) == it->lcm) &&
          !(lcm(basis_[it->j].leading_monomial(), lh) == it->lcm))
        it = pairs_.erase(it);
      else
        ++it;
    }

    const std::size_t k_new = basis_.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (!in_d[a] || is_coprime[a]) continue;
      if (bound_ != kNoDegreeBound && lcms[a].degree() > bound_) {
        truncated_ = true;
        continue;
      }
      pairs_.insert(Pair{cand[a], k_new, lcms[a], seq_++});
    }
    if (pairs_.size() > limits_.max_pairs)
      throw ResourceLimit("pair queue exceeds " + std::to_string(limits_.max_pairs) + " pairs");

    for (std::size_t k : cand)
      if (lh.divides(basis_[k].leading_monomial())) live_[k] = 0;

    masks_.push_back(lh.support_mask());
    live_.push_back(1);
    basis_.push_back(std::move(h));
  }

  Ring ring_;
  MonomialOrder order_;
  GbLimits limits_;
  unsigned bound_;
  std::vector<Polynomial> basis_;
  std::vector<std::uint64_t> masks_;
  std::vector<char> live_;
  std::set<Pair, PairLess> pairs_;
  std::uint64_t seq_ = 0;
  bool unit_ = false;
  bool truncated_ = false;
};

GbResult run_buchberger(std::span<const Polynomial> gens, MonomialOrder order, const GbLimits& limits,
                        unsigned degree_bound) {
  if (gens.empty()) return {};
  const Ring& ring = gens.front().ring();
  std::vector<Polynomial> input;
  bool homogeneous = true;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw ArityMismatch("generators from different rings");
    if (g.is_zero()) continue;
    input.push_back(g.with_order(order));
    homogeneous = homogeneous && input.back().is_homogeneous();
  }
  if (!homogeneous) degree_bound = kNoDegreeBound;
  std::stable_sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  Engine engine(ring, order, limits, degree_bound);
  for (const auto& g : input) engine.add_generator(g);
  engine.run();
  return engine.result();
}

}  // namespace

GbLimits default_limits() {
  std::lock_guard lock(g_limits_mutex);
  return g_limits;
}

void set_default_limits(GbLimits limits) {
  std::lock_guard lock(g_limits_mutex);
  g_limits = limits;
}

std::vector<Polynomial> buchberger(std::span<const Polynomial> gens, MonomialOrder order, const GbLimits& limits,
                                   unsigned degree_bound) {
  return run_buchberger(gens, order, limits, degree_bound).basis;
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) throw ArityMismatch("generator from a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::from_reduced_basis(Ring ring, std::vector<Polynomial> basis, MonomialOrder order) {
  Ideal I(std::move(ring), basis);
  I.store(order, kNoDegreeBound, std::move(basis));
  return I;
}

Ideal Ideal::unit(Ring ring) {
  Scalar one = ring->field().one();
  std::vector<Polynomial> gens{Polynomial::constant(ring, one)};
  return from_reduced_basis(std::move(ring), std::move(gens), MonomialOrder::degrevlex());
}

bool Ideal::is_homogeneous() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
}

const std::vector<Polynomial>* Ideal::lookup(MonomialOrder order, unsigned degree) const {
  std::shared_lock lock(cache_->mutex);
  auto it = cache_->bases.lower_bound({order, degree});
  if (it != cache_->bases.end() && it->first.first == order) return it->second.get();
  return nullptr;
}

const std::vector<Polynomial>& Ideal::store(MonomialOrder order, unsigned degree,
                                            std::vector<Polynomial> basis) const {
  std::unique_lock lock(cache_->mutex);
  auto [it, inserted] =
      cache_->bases.try_emplace({order, degree}, std::make_shared<const std::vector<Polynomial>>(std::move(basis)));
  return *it->second;
}

const std::vector<Polynomial>& Ideal::groebner_basis(MonomialOrder order, const GbLimits& limits) const {
  if (auto hit = lookup(order, kNoDegreeBound)) return *hit;
  return store(order, kNoDegreeBound, run_buchberger(generators_, order, limits, kNoDegreeBound).basis);
}

const std::vector<Polynomial>& Ideal::basis_up_to(unsigned degree, const GbLimits& limits) const {
  const auto order = MonomialOrder::degrevlex();
  if (!is_homogeneous()) return groebner_basis(order, limits);
  if (auto hit = lookup(order, degree)) return *hit;
  GbResult r = run_buchberger(generators_, order, limits, degree);
  return store(order, r.truncated ? degree : kNoDegreeBound, std::move(r.basis));
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb.front().is_constant();
}

std::string Ideal::to_string() const { return join(generators_); }

bool ideal_member(const Polynomial& f, const Ideal& I, MonomialOrder order) {
  if (!same_ring(f.ring(), I.ring())) throw ArityMismatch("polynomial and ideal in different rings");
  if (f.is_zero()) return true;
  if (I.is_zero()) return false;
  if (order.kind() == MonomialOrder::Kind::DegRevLex) {
    const auto& basis = I.basis_up_to(static_cast<unsigned>(f.total_degree()));
    return reduce(f, basis, order).is_zero();
  }
  return reduce(f, I.groebner_basis(order), order).is_zero();
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw ArityMismatch("ideals in different rings");
  const auto& a = I.groebner_basis();
  const auto& b = J.groebner_basis();
  return a == b;
}

bool ideal_contained(const Ideal& I, const Ideal& J) {
  for (const auto& g : I.generators())
    if (!ideal_member(g, J)) return false;
  return true;
}

}  // namespace derksen
