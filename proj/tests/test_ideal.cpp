#include <gtest/gtest.h>

#include <random>

#include "heisenrep/ideal.hpp"

using namespace heisenrep;

namespace {

SWRep make_rep(std::int64_t n, const std::string& label) {
  return SWRep(RepConfig::make(FieldConfig::make(n), find_subspace(label), 1));
}

// c0 and c1 straight from the algebra: count N(l) = 0 and sum e(2 w0 Tr(l h*)).
std::pair<std::int64_t, cplx> constants_oracle(const SWRep& rep, const AlgElem& h) {
  std::int64_t c0 = 0;
  cplx c1 = 0.0;
  for (const auto& l : enumerate(rep.config().subspace, rep.N())) {
    if (!norm_id(l).is_zero()) continue;
    ++c0;
    c1 += additive_character(rep.N(), 2 * rep.w0() * trace_id(l * star(h)).value());
  }
  return {c0, c1};
}

// Operator of the basis element M t_x^p t_y^q on wave functions.
WaveFunction basis_operator(const SWRep& rep, const std::array<std::int64_t, 4>& m, std::int64_t p, std::int64_t q,
                            const WaveFunction& f) {
  const auto& fc = rep.config().field;
  const SL2Elem g = SL2Elem::make(rep.N(), m[0], m[1], m[2], m[3]);
  const auto& ix = rep.indexer();
  return apply(sl2_word(g, fc), act_tx(ix.element(p), act_ty(ix.element(q), f, rep), rep), rep);
}

}  // namespace

TEST(Constants, MatchEnumeration) {
  struct Case {
    std::int64_t n;
    const char* label;
    std::int64_t c0;
    double c1;
  };
  for (const Case& c : {Case{3, "c2", 5, 2}, Case{5, "c2", 9, 4}, Case{3, "c2c4", 33, 6}, Case{3, "lorentz", 21, -6},
                        Case{3, "q", 33, 6}}) {
    const SWRep rep = make_rep(c.n, c.label);
    const IdealConstants k = ideal_constants(rep);
    ASSERT_TRUE(k.isotropic);
    const auto [c0, c1] = constants_oracle(rep, *k.null_vector);
    EXPECT_EQ(k.c0, c0) << c.label;
    EXPECT_EQ(k.c0, c.c0) << c.label;
    EXPECT_LT(std::abs(k.c1 - c1), 1e-9) << c.label;
    EXPECT_LT(std::abs(k.c1 - c.c1), 1e-9) << c.label;
    EXPECT_FALSE(k.null_vector->is_zero());
    EXPECT_TRUE(norm_id(*k.null_vector).is_zero());
    ASSERT_EQ(k.tau_roots.size(), 2u);
    const cplx a = static_cast<double>(k.c0) - k.c1;
    for (const cplx& t : k.tau_roots) EXPECT_LT(std::abs(t * t * a - t * k.c1 - 1.0), 1e-9);
  }
}

TEST(Constants, AnisotropicSubspace) {
  const SWRep rep = make_rep(3, "span1");
  const IdealConstants k = ideal_constants(rep);
  EXPECT_EQ(k.c0, 1);
  EXPECT_FALSE(k.isotropic);
  EXPECT_LT(std::abs(k.kappa - rep.kappa()), 1e-15);
  EXPECT_THROW(stability_check(rep), NoNullVector);
  // x^2 + y^2 + z^2 vanishes at (1,1,1) over F_3
  EXPECT_TRUE(ideal_constants(make_rep(3, "q3")).isotropic);
}

TEST(Algebra, ProductMatchesOperators) {
  const SWRep rep = make_rep(3, "c2");
  const JacobiAlgebra alg(rep);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> pm(0, static_cast<std::int64_t>(alg.group_order()) - 1), pv(0, rep.V() - 1);
  // recover matrices from keys through the public index map
  std::vector<std::array<std::int64_t, 4>> mats(alg.group_order());
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b)
      for (std::int64_t c = 0; c < 3; ++c)
        for (std::int64_t d = 0; d < 3; ++d)
          if (reduce(a * d - b * c, 3) == 1) mats[static_cast<std::size_t>(alg.sl2_index(a, b, c, d))] = {a, b, c, d};
  for (int t = 0; t < 60; ++t) {
    const JacobiAlgebra::Basis x{pm(rng), pv(rng), pv(rng)}, y{pm(rng), pv(rng), pv(rng)};
    const auto [z, phase] = alg.multiply(x, y);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    const WaveFunction lhs =
        basis_operator(rep, mats[x.m], x.p, x.q, basis_operator(rep, mats[y.m], y.p, y.q, f));
    const WaveFunction rhs = phase * basis_operator(rep, mats[z.m], z.p, z.q, f);
    ASSERT_LT(distance(lhs, rhs), 1e-9);
  }
}

TEST(Algebra, Associative) {
  const SWRep rep = make_rep(3, "c2");
  const JacobiAlgebra alg(rep);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> pm(0, static_cast<std::int64_t>(alg.group_order()) - 1), pv(0, rep.V() - 1);
  for (int t = 0; t < 300; ++t) {
    const JacobiAlgebra::Basis x{pm(rng), pv(rng), pv(rng)}, y{pm(rng), pv(rng), pv(rng)}, w{pm(rng), pv(rng), pv(rng)};
    const auto [xy, p1] = alg.multiply(x, y);
    const auto [xy_w, p2] = alg.multiply(xy, w);
    const auto [yw, p3] = alg.multiply(y, w);
    const auto [x_yw, p4] = alg.multiply(x, yw);
    EXPECT_EQ(alg.key(xy_w), alg.key(x_yw));
    EXPECT_LT(std::abs(p1 * p2 - p3 * p4), 1e-12);
  }
}

TEST(Algebra, BudgetGuard) {
  RepConfig cfg = RepConfig::make(FieldConfig::make(3), Subspace::full(), 1);
  const SWRep rep(cfg);
  EXPECT_THROW(JacobiAlgebra{rep}, BudgetExceeded);
}

class Stability : public ::testing::TestWithParam<std::pair<std::int64_t, const char*>> {};

TEST_P(Stability, OneRootPasses) {
  const auto [n, label] = GetParam();
  const SWRep rep = make_rep(n, label);
  const StabilityReport r = stability_check(rep);
  EXPECT_TRUE(r.pass) << label;
  ASSERT_EQ(r.roots.size(), 2u);
  const RootReport& sel = r.roots[r.constants.selected];
  EXPECT_TRUE(sel.pass);
  EXPECT_LE(sel.j_residual, 1e-8);
  EXPECT_LE(sel.u_residual, 1e-8);
  EXPECT_EQ(sel.rank, rep.V());
  EXPECT_LE(r.ident_residual, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Isotropic, Stability,
                         ::testing::Values(std::pair<std::int64_t, const char*>{3, "c2"},
                                           std::pair<std::int64_t, const char*>{5, "c2"},
                                           std::pair<std::int64_t, const char*>{3, "d4plus"},
                                           std::pair<std::int64_t, const char*>{3, "d4"},
                                           std::pair<std::int64_t, const char*>{3, "lorentz"}),
                         [](const auto& info) { return std::string(info.param.second) + "_N" + std::to_string(info.param.first); });
