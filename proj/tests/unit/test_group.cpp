#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "derksen/errors.hpp"
#include "derksen/group.hpp"

using namespace derksen;

namespace {

FieldSpec QQ = FieldSpec::rationals();

GroupElement diag(const FieldSpec& F, std::initializer_list<long long> entries) {
  std::vector<Scalar> d;
  for (auto e : entries) d.push_back(F.from_int(e));
  return GroupElement::diagonal(F, d);
}

GroupElement matrix(const FieldSpec& F, std::size_t dim, std::initializer_list<long long> entries) {
  std::vector<Scalar> e;
  for (auto v : entries) e.push_back(F.from_int(v));
  return GroupElement(F, dim, e);
}

FiniteGroup from_preset(const char* text, const FieldSpec& F) {
  Preset p = make_preset(text, F);
  return generate_group(F, p.dim, p.generators);
}

/// Evaluates f at the point whose x_j coordinate is point[j]; y-variables are set to ys[j].
Scalar evaluate(const Polynomial& f, const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  const auto& ring = *f.ring();
  Scalar total = ring.field().zero();
  for (const auto& t : f.terms()) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      const std::string& name = ring.name(i);
      std::size_t j = std::stoul(name.substr(1)) - 1;
      v *= (name[0] == 'x' ? xs[j] : ys[j]).pow(t.mono[i]);
    }
    total += v;
  }
  return total;
}

Polynomial random_poly(const Ring& ring, std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), coeff(-3, 3), exp(-2, 2);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m(ring->nvars());
    for (std::size_t v = 0; v < ring->nvars(); ++v) m.set(v, static_cast<unsigned>(std::max(0, exp(rng))));
    terms.push_back({m, ring->field().from_int(coeff(rng))});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

std::vector<Scalar> random_point(const FieldSpec& F, std::size_t d, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(F.from_int(c(rng)));
  return v;
}

struct Case {
  const char* preset;
  FieldSpec field;
};

std::vector<Case> test_groups() {
  return {{"sign(1,2)", QQ},
          {"sign(2,3)", FieldSpec::prime(5)},
          {"diag(3,2;2)", FieldSpec::prime(7)},
          {"diag(2,2,2;3)", FieldSpec::prime(5)},
          {"scalar(3,2)", FieldSpec::prime(7)},
          {"scalar(4,1)", FieldSpec::prime(13)},
          {"scalar(6,2)", FieldSpec::prime(13)},
          {"jordan2(1,2)", FieldSpec::prime(2)},
          {"jordan2(2,3)", FieldSpec::prime(2)},
          {"diag(4,4;2)", FieldSpec::prime(5)}};
}

}  // namespace

TEST(GenerateGroup, WorkedExamples) {
  FiniteGroup G = generate_group(QQ, 2, std::vector{diag(QQ, {-1, 1})});
  EXPECT_EQ(G.order(), 2u);
  EXPECT_TRUE(G.identity().is_identity());

  FiniteGroup T = generate_group(QQ, 3, std::vector<GroupElement>{});
  EXPECT_EQ(T.order(), 1u);
  EXPECT_TRUE(T.identity().is_identity());

  FieldSpec F7 = FieldSpec::prime(7);
  FiniteGroup C = generate_group(F7, 2, std::vector{diag(F7, {2, 2})});
  unsigned order = 1;
  for (Scalar s = F7.from_int(2); !s.is_one(); s *= F7.from_int(2)) ++order;
  EXPECT_EQ(C.order(), order);
  EXPECT_EQ(C.order(), 3u);
}

TEST(GenerateGroup, DiscoveryOrderIsDeterministic) {
  FieldSpec F7 = FieldSpec::prime(7);
  FiniteGroup C = generate_group(F7, 1, std::vector{diag(F7, {3})});
  ASSERT_EQ(C.order(), 6u);
  long long expected = 1;
  for (const auto& g : C.elements()) {
    EXPECT_EQ(g.at(0, 0), F7.from_int(expected));
    expected = expected * 3 % 7;
  }
}

TEST(GenerateGroup, Errors) {
  EXPECT_THROW(generate_group(QQ, 2, std::vector{diag(QQ, {0, 1})}), NotInvertible);
  EXPECT_THROW(generate_group(QQ, 2, std::vector{matrix(QQ, 2, {1, 2, 2, 4})}), NotInvertible);
  EXPECT_THROW(generate_group(QQ, 1, std::vector{diag(QQ, {2})}, 50), GroupTooLarge);
  try {
    generate_group(QQ, 2, std::vector{matrix(QQ, 2, {1, 1, 0, 1})}, 20);
    FAIL();
  } catch (const GroupTooLarge& e) {
    EXPECT_EQ(e.cap(), 20u);
  }
  EXPECT_THROW(generate_group(QQ, 3, std::vector{diag(QQ, {-1, 1})}), ArityMismatch);
  EXPECT_THROW(GroupElement(QQ, 2, {QQ.one()}), ArityMismatch);
}

TEST(GenerateGroup, CharacteristicWarning) {
  FiniteGroup J = from_preset("jordan2(1,2)", FieldSpec::prime(2));
  EXPECT_EQ(J.order(), 2u);
  EXPECT_FALSE(J.is_reductive());
  EXPECT_EQ(J.warnings().size(), 1u);
  FiniteGroup S = from_preset("sign(1,2)", QQ);
  EXPECT_TRUE(S.is_reductive());
  EXPECT_TRUE(S.warnings().empty());
}

TEST(GroupElement, DeterminantAgainstCofactorExpansion) {
  std::mt19937 rng(7);
  for (const FieldSpec& F : {QQ, FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto v = random_point(F, 9, rng);
      GroupElement g(F, 3, v);
      Scalar cofactor = v[0] * (v[4] * v[8] - v[5] * v[7]) - v[1] * (v[3] * v[8] - v[5] * v[6]) +
                        v[2] * (v[3] * v[7] - v[4] * v[6]);
      EXPECT_EQ(g.determinant(), cofactor);
    }
  }
}

TEST(GroupAxioms, ClosureInversesNoDuplicates) {
  for (const auto& c : test_groups()) {
    FiniteGroup G = from_preset(c.preset, c.field);
    ASSERT_LE(G.order(), 64u) << c.preset;
    const auto& el = G.elements();
    auto contains = [&](const GroupElement& x) { return std::find(el.begin(), el.end(), x) != el.end(); };
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j) EXPECT_FALSE(el[i] == el[j]) << c.preset;
    for (const auto& a : el) {
      bool has_inverse = false;
      for (const auto& b : el) {
        EXPECT_TRUE(contains(a * b)) << c.preset;
        if ((a * b).is_identity() && (b * a).is_identity()) has_inverse = true;
      }
      EXPECT_TRUE(has_inverse) << c.preset << " " << a.to_string();
    }
  }
}

TEST(GroupAxioms, PresetOrders) {
  EXPECT_EQ(from_preset("sign(1,2)", QQ).order(), 2u);
  EXPECT_EQ(from_preset("diag(3,2;2)", FieldSpec::prime(7)).order(), 6u);
  EXPECT_EQ(from_preset("diag(2,2,2;3)", FieldSpec::prime(5)).order(), 8u);
  EXPECT_EQ(from_preset("scalar(6,2)", FieldSpec::prime(13)).order(), 6u);
  EXPECT_EQ(from_preset("jordan2(2,3)", FieldSpec::prime(2)).order(), 2u);
  EXPECT_EQ(from_preset("diag(4,4;2)", FieldSpec::prime(5)).order(), 16u);
}

TEST(Act, WorkedExamples) {
  auto ring = RingSpec::derksen(QQ, 2);
  auto p = [&](const char* s) { return Polynomial::parse(ring, s); };
  GroupElement g = diag(QQ, {-1, 1});
  EXPECT_EQ(act(g, p("x1")), p("-x1"));
  EXPECT_EQ(act(g, p("y1 - x1")), p("y1 + x1"));
  Polynomial f = p("3*x1^2*x2 - y2*x1 + 7");
  EXPECT_EQ(act(GroupElement::identity(QQ, 2), f), f);

  FieldSpec F2 = FieldSpec::prime(2);
  auto r2 = RingSpec::affine(F2, 2);
  GroupElement jordan = matrix(F2, 2, {1, 1, 0, 1});
  EXPECT_EQ(act(jordan, Polynomial::parse(r2, "x1^2")), Polynomial::parse(r2, "x1^2 + x2^2"));
  EXPECT_EQ(act(jordan, Polynomial::parse(r2, "x1^2")).to_string(), "x1^2 + x2^2");
}

TEST(Act, MatchesPointEvaluation) {
  std::mt19937 rng(11);
  for (const auto& c : test_groups()) {
    FiniteGroup G = from_preset(c.preset, c.field);
    const std::size_t d = G.dim();
    auto ring = RingSpec::derksen(c.field, d);
    for (int trial = 0; trial < 10; ++trial) {
      Polynomial f = random_poly(ring, rng);
      auto xs = random_point(c.field, d, rng), ys = random_point(c.field, d, rng);
      for (const auto& g : G.elements()) {
        std::vector<Scalar> moved(d, c.field.zero());
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t i = 0; i < d; ++i) moved[j] += g.at(j, i) * xs[i];
        EXPECT_EQ(evaluate(act(g, f), xs, ys), evaluate(f, moved, ys)) << c.preset;
      }
    }
  }
}

TEST(Act, IsHomomorphism) {
  std::mt19937 rng(3);
  for (const auto& c : test_groups()) {
    FiniteGroup G = from_preset(c.preset, c.field);
    if (G.order() > 8) continue;
    auto ring = RingSpec::derksen(c.field, G.dim());
    for (int trial = 0; trial < 20; ++trial) {
      Polynomial f = random_poly(ring, rng);
      for (const auto& g : G.elements())
        for (const auto& h : G.elements()) EXPECT_EQ(act(g * h, f), act(g, act(h, f))) << c.preset;
    }
  }
}

TEST(FixedSubspace, WorkedExamples) {
  auto basis = fixed_subspace(diag(QQ, {-1, 1}));
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (std::vector<Scalar>{QQ.zero(), QQ.one()}));

  auto full = fixed_subspace(GroupElement::identity(QQ, 3));
  ASSERT_EQ(full.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(full[i][j], i == j ? QQ.one() : QQ.zero());

  FieldSpec F7 = FieldSpec::prime(7);
  Scalar w = root_of_unity(3, F7);
  EXPECT_TRUE(fixed_subspace(GroupElement::diagonal(F7, std::vector{w, w})).empty());

  auto axis = fixed_subspace(diag(QQ, {1, -1}));
  ASSERT_EQ(axis.size(), 1u);
  EXPECT_EQ(axis[0], (std::vector<Scalar>{QQ.one(), QQ.zero()}));
}

TEST(FixedSubspace, VectorsAreFixedAndCountMatchesRank) {
  std::mt19937 rng(5);
  for (const auto& c : test_groups()) {
    FiniteGroup G = from_preset(c.preset, c.field);
    const std::size_t d = G.dim();
    for (const auto& g : G.elements()) {
      auto basis = fixed_subspace(g);
      for (const auto& v : basis)
        for (std::size_t j = 0; j < d; ++j) {
          Scalar s = c.field.zero();
          for (std::size_t i = 0; i < d; ++i) s += g.at(j, i) * v[i];
          EXPECT_EQ(s, v[j]) << c.preset;
        }
      if (g.is_identity()) EXPECT_EQ(basis.size(), d);
      // brute-force count of fixed points over a small prime field
      if (c.field.is_prime_field() && c.field.characteristic() <= 7 && d <= 3) {
        const std::uint32_t p = c.field.characteristic();
        std::size_t total = 1, fixed = 0;
        for (std::size_t i = 0; i < d; ++i) total *= p;
        for (std::size_t code = 0; code < total; ++code) {
          std::vector<Scalar> v;
          for (std::size_t i = 0, k = code; i < d; ++i, k /= p) v.push_back(c.field.from_int(k % p));
          bool ok = true;
          for (std::size_t j = 0; j < d && ok; ++j) {
            Scalar s = c.field.zero();
            for (std::size_t i = 0; i < d; ++i) s += g.at(j, i) * v[i];
            ok = s == v[j];
          }
          fixed += ok;
        }
        std::size_t expected = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) expected *= p;
        EXPECT_EQ(fixed, expected) << c.preset << " " << g.to_string();
      }
    }
  }
}

TEST(Reynolds, WorkedExamples) {
  auto ring = RingSpec::affine(QQ, 2);
  auto p = [&](const char* s) { return Polynomial::parse(ring, s); };
  FiniteGroup G = generate_group(QQ, 2, std::vector{diag(QQ, {-1, 1})});
  EXPECT_EQ(reynolds(p("x1^2"), G), p("x1^2"));
  EXPECT_TRUE(reynolds(p("x1"), G).is_zero());
  EXPECT_EQ(reynolds(p("x1^3*x2 + x1^2*x2 + x1"), G), p("x1^2*x2"));
  FiniteGroup T = generate_group(QQ, 2, std::vector<GroupElement>{});
  Polynomial f = p("x1*x2 - 5*x1 + 1/3");
  EXPECT_EQ(reynolds(f, T), f);
  EXPECT_THROW(reynolds(f.with_order(MonomialOrder::lex()), from_preset("jordan2(1,2)", FieldSpec::prime(2))),
               ArityMismatch);
  auto r2 = RingSpec::affine(FieldSpec::prime(2), 2);
  EXPECT_THROW(reynolds(Polynomial::parse(r2, "x1"), from_preset("jordan2(1,2)", FieldSpec::prime(2))),
               NotReductive);
}

TEST(Reynolds, InvariantIdempotentAndLinearOverInvariants) {
  std::mt19937 rng(13);
  for (const auto& c : test_groups()) {
    FiniteGroup G = from_preset(c.preset, c.field);
    if (!G.is_reductive()) continue;
    auto ring = RingSpec::affine(c.field, G.dim());
    for (int trial = 0; trial < 10; ++trial) {
      Polynomial f = random_poly(ring, rng);
      Polynomial r = reynolds(f, G);
      for (const auto& g : G.elements()) EXPECT_EQ(act(g, r), r) << c.preset;
      EXPECT_EQ(reynolds(r, G), r) << c.preset;
      for (std::size_t i = 0; i < G.dim(); ++i) {
        Polynomial h = Polynomial::variable(ring, i).pow(static_cast<unsigned>(G.order()));
        EXPECT_EQ(reynolds(h * f, G), h * r) << c.preset;
      }
    }
  }
}

TEST(Presets, Shapes) {
  Preset s = make_preset("sign(2,3)", QQ);
  ASSERT_EQ(s.generators.size(), 1u);
  EXPECT_EQ(s.generators[0], diag(QQ, {1, -1, -1}));

  FieldSpec F2 = FieldSpec::prime(2);
  Preset j = make_preset("jordan2(2,5)", F2);
  EXPECT_EQ(j.dim, 5u);
  EXPECT_EQ(j.generators[0], matrix(F2, 5, {1, 0, 0, 0, 0,  //
                                            0, 1, 1, 0, 0,  //
                                            0, 0, 1, 0, 0,  //
                                            0, 0, 0, 1, 1,  //
                                            0, 0, 0, 0, 1}));

  FieldSpec F7 = FieldSpec::prime(7);
  Preset dg = make_preset("diag(3,2;3)", F7);
  ASSERT_EQ(dg.generators.size(), 2u);
  EXPECT_EQ(dg.generators[0], GroupElement::diagonal(F7, std::vector{root_of_unity(3, F7), F7.one(), F7.one()}));
  EXPECT_EQ(dg.generators[1], diag(F7, {1, -1, 1}));

  Preset sc = make_preset(" scalar(3, 2) ", F7);
  Scalar w = root_of_unity(3, F7);
  EXPECT_EQ(sc.generators[0], GroupElement::diagonal(F7, std::vector{w, w}));
}

TEST(Presets, Guards) {
  EXPECT_THROW(make_preset("sign(1,2)", FieldSpec::prime(2)), std::invalid_argument);
  EXPECT_THROW(make_preset("sign(3,2)", QQ), std::invalid_argument);
  EXPECT_THROW(make_preset("sign(0,2)", QQ), std::invalid_argument);
  EXPECT_THROW(make_preset("jordan2(1,2)", QQ), std::invalid_argument);
  EXPECT_THROW(make_preset("jordan2(1,3)", FieldSpec::prime(2)), std::invalid_argument);
  EXPECT_THROW(make_preset("jordan2(2,2)", FieldSpec::prime(2)), std::invalid_argument);
  EXPECT_THROW(make_preset("scalar(3,2)", FieldSpec::prime(5)), NoSuchRoot);
  EXPECT_THROW(make_preset("scalar(3,2)", QQ), NoSuchRoot);
  EXPECT_THROW(make_preset("diag(2,2,2;2)", FieldSpec::prime(5)), std::invalid_argument);
  EXPECT_THROW(make_preset("diag(2,2)", FieldSpec::prime(5)), std::invalid_argument);
  EXPECT_THROW(make_preset("cyclic(2,2)", QQ), std::invalid_argument);
  EXPECT_THROW(make_preset("sign(1,x)", QQ), std::invalid_argument);
  EXPECT_THROW(make_preset("sign 1,2", QQ), std::invalid_argument);
}
