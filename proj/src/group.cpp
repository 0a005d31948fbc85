#include "derksen/group.hpp"

#include <charconv>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "derksen/errors.hpp"

namespace derksen {

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(Matrix& m, const FieldSpec& field) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar inv = field_inv(m[r][c], field);
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<long long> parse_int_list(std::string_view text, std::string_view preset) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v < 1)
      throw std::invalid_argument("preset " + std::string(preset) + ": expected positive integers");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

void require(bool ok, std::string_view preset, const std::string& why) {
  if (!ok) throw std::invalid_argument("preset " + std::string(preset) + ": " + why);
}

}  // namespace

GroupElement::GroupElement(FieldSpec field, std::size_t dim, std::vector<Scalar> entries)
    : field_(field), dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim * dim)
    throw ArityMismatch("matrix needs " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(entries_.size()));
  for (const auto& e : entries_)
    if (!(e.field() == field_)) throw ArityMismatch("matrix entry from a different field");
}

GroupElement GroupElement::identity(FieldSpec field, std::size_t dim) {
  std::vector<Scalar> e(dim * dim, field.zero());
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = field.one();
  return GroupElement(field, dim, std::move(e));
}

GroupElement GroupElement::diagonal(FieldSpec field, std::span<const Scalar> diag) {
  const std::size_t dim = diag.size();
  std::vector<Scalar> e(dim * dim, field.zero());
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = diag[i];
  return GroupElement(field, dim, std::move(e));
}

Scalar GroupElement::determinant() const {
  Matrix m(dim_, std::vector<Scalar>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m[i][j] = at(i, j);
  Scalar det = field_.one();
  for (std::size_t c = 0; c < dim_; ++c) {
    std::size_t p = c;
    while (p < dim_ && m[p][c].is_zero()) ++p;
    if (p == dim_) return field_.zero();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = field_inv(m[c][c], field_);
    for (std::size_t i = c + 1; i < dim_; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] * inv;
      for (std::size_t k = c; k < dim_; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

bool GroupElement::is_identity() const { return *this == identity(field_, dim_); }

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (g.dim_ != h.dim_ || !(g.field_ == h.field_)) throw ArityMismatch("group elements of different shape");
  const std::size_t d = g.dim_;
  std::vector<Scalar> e(d * d, g.field_.zero());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Scalar& a = h.at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) e[i * d + j] += a * g.at(k, j);
    }
  return GroupElement(g.field_, d, std::move(e));
}

std::size_t GroupElement::hash() const {
  std::size_t h = dim_;
  for (const auto& e : entries_) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string GroupElement::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) s += ",";
      s += at(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

FiniteGroup generate_group(FieldSpec field, std::size_t dim, std::span<const GroupElement> gens, std::size_t cap) {
  for (const auto& g : gens) {
    if (g.dim() != dim || !(g.field() == field)) throw ArityMismatch("generator of the wrong dimension or field");
    if (g.determinant().is_zero()) throw NotInvertible("singular generator " + g.to_string());
  }
  FiniteGroup G(field, dim);
  struct Hash {
    std::size_t operator()(const GroupElement& g) const { return g.hash(); }
  };
  std::unordered_map<GroupElement, std::size_t, Hash> seen;
  auto add = [&](GroupElement g) {
    if (seen.contains(g)) return false;
    if (G.elements_.size() >= cap) throw GroupTooLarge(cap);
    seen.emplace(g, G.elements_.size());
    G.elements_.push_back(std::move(g));
    return true;
  };
  add(GroupElement::identity(field, dim));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      if (add(G.elements_[i] * g)) queue.push_back(G.elements_.size() - 1);
    }
  }
  if (!G.is_reductive())
    G.warnings_.push_back("characteristic " + std::to_string(field.characteristic()) + " divides |G| = " +
                          std::to_string(G.order()) + "; the Reynolds operator is unavailable");
  return G;
}

Polynomial act(const GroupElement& g, const Polynomial& f) {
  const Ring& ring = f.ring();
  if (!(ring->field() == g.field())) throw ArityMismatch("act: field mismatch");
  const std::size_t d = g.dim();
  std::vector<std::size_t> xs(d);
  for (std::size_t j = 0; j < d; ++j) {
    auto idx = ring->index_of("x" + std::to_string(j + 1));
    if (!idx) throw ArityMismatch("act: ring has no variable x" + std::to_string(j + 1));
    xs[j] = *idx;
  }
  std::vector<Polynomial> images;
  images.reserve(ring->nvars());
  for (std::size_t v = 0; v < ring->nvars(); ++v) images.push_back(Polynomial::variable(ring, v, f.order()));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < d; ++i) {
      if (g.at(j, i).is_zero()) continue;
      Monomial m(ring->nvars());
      m.set(xs[i], 1);
      terms.push_back({m, g.at(j, i)});
    }
    images[xs[j]] = Polynomial::from_terms(ring, std::move(terms), f.order());
  }
  return substitute(f, images);
}

std::vector<std::vector<Scalar>> fixed_subspace(const GroupElement& g) {
  const std::size_t d = g.dim();
  const FieldSpec& field = g.field();
  Matrix m(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = i == j ? g.at(i, j) - field.one() : g.at(i, j);
  std::vector<std::size_t> pivots = rref(m, field);

  std::vector<char> is_pivot(d, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix basis;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(d, field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  rref(basis, field);
  return basis;
}

Polynomial reynolds(const Polynomial& f, const FiniteGroup& G) {
  if (!(f.field() == G.field())) throw ArityMismatch("reynolds: field mismatch");
  if (!G.is_reductive())
    throw NotReductive("characteristic " + std::to_string(G.field().characteristic()) + " divides |G| = " +
                       std::to_string(G.order()));
  Polynomial sum(f.ring(), f.order());
  for (const auto& g : G.elements()) sum += act(g, f);
  return field_inv(G.field().from_int(static_cast<long long>(G.order())), G.field()) * sum;
}

Preset make_preset(std::string_view text, const FieldSpec& field) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto open = text.find('(');
  require(open != std::string_view::npos && text.back() == ')', text, "expected name(arguments)");
  const std::string_view name = text.substr(0, open);
  const std::string_view args = text.substr(open + 1, text.size() - open - 2);

  if (name == "diag") {
    const auto semi = args.find(';');
    require(semi != std::string_view::npos, text, "expected diag(d1,...,da;d)");
    std::vector<long long> orders = parse_int_list(args.substr(0, semi), text);
    std::vector<long long> dv = parse_int_list(args.substr(semi + 1), text);
    require(dv.size() == 1, text, "expected a single dimension after ';'");
    const auto d = static_cast<std::size_t>(dv[0]);
    require(orders.size() <= d, text, "more orders than variables");
    require(d <= 12, text, "dimension above 12");
    Preset p{d, {}};
    for (std::size_t i = 0; i < orders.size(); ++i) {
      std::vector<Scalar> diag(d, field.one());
      diag[i] = root_of_unity(static_cast<std::uint32_t>(orders[i]), field);
      p.generators.push_back(GroupElement::diagonal(field, diag));
    }
    return p;
  }

  std::vector<long long> a = parse_int_list(args, text);
  require(a.size() == 2, text, "expected two arguments");
  require(a[1] <= 12, text, "dimension above 12");
  const auto d = static_cast<std::size_t>(a[1]);

  if (name == "sign") {
    const auto j = static_cast<std::size_t>(a[0]);
    require(j <= d, text, "need 1 <= j <= d");
    require(field.characteristic() != 2, text, "needs characteristic different from 2");
    std::vector<Scalar> diag(d, field.one());
    for (std::size_t i = j - 1; i < d; ++i) diag[i] = -field.one();
    return {d, {GroupElement::diagonal(field, diag)}};
  }
  if (name == "jordan2") {
    const auto j = static_cast<std::size_t>(a[0]);
    require(j < d && (d - j + 1) % 2 == 0, text, "need j < d with d - j + 1 even");
    require(field.characteristic() == 2, text, "needs characteristic 2");
    std::vector<Scalar> e(d * d, field.zero());
    for (std::size_t i = 0; i < d; ++i) e[i * d + i] = field.one();
    for (std::size_t i = j - 1; i + 1 < d; i += 2) e[i * d + i + 1] = field.one();
    return {d, {GroupElement(field, d, std::move(e))}};
  }
  if (name == "scalar") {
    Scalar w = root_of_unity(static_cast<std::uint32_t>(a[0]), field);
    std::vector<Scalar> diag(d, w);
    return {d, {GroupElement::diagonal(field, diag)}};
  }
  throw std::invalid_argument("unknown preset " + std::string(name));
}

}  // namespace derksen
