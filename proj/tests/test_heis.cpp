#include <gtest/gtest.h>

#include <random>

#include "heisenrep/heis.hpp"

using namespace heisenrep;

namespace {

HeisElem random_heis(const Subspace& s, std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  return {random_element(s, n, rng), random_element(s, n, rng), CentralElem{Fp(d(rng), n), Fp(d(rng), n)}};
}

SL2Elem random_sl2(std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  for (;;) {
    const Fp a(d(rng), n), b(d(rng), n), c(d(rng), n);
    if (a.is_zero()) continue;
    return SL2Elem::make(a, b, c, (Fp(1, n) + b * c) / a);
  }
}

}  // namespace

TEST(Heisenberg, CommutatorOfTranslations) {
  for (std::int64_t n : {3, 5, 7}) {
    const AlgElem one = AlgElem::scalar(n, 1);
    const HeisElem c = heis_commutator(HeisElem::tx(one), HeisElem::ty(one));
    EXPECT_TRUE(c.p.is_zero());
    EXPECT_TRUE(c.q.is_zero());
    EXPECT_EQ(c.z.c0, Fp(2, n));
    EXPECT_EQ(c.z.c7, Fp(0, n));
  }
}

TEST(Heisenberg, GroupAxioms) {
  std::mt19937_64 rng(1);
  const Subspace s = find_subspace("lorentz");
  for (int t = 0; t < 300; ++t) {
    const auto a = random_heis(s, 5, rng), b = random_heis(s, 5, rng), c = random_heis(s, 5, rng);
    EXPECT_EQ(heis_mul(heis_mul(a, b), c), heis_mul(a, heis_mul(b, c)));
    EXPECT_EQ(heis_mul(a, heis_inverse(a)), HeisElem::identity(5));
    EXPECT_EQ(heis_mul(heis_inverse(a), a), HeisElem::identity(5));
  }
}

TEST(Heisenberg, MatrixFormIsFaithful) {
  std::mt19937_64 rng(2);
  for (std::int64_t n : {3, 5}) {
    for (const auto& s : subspace_catalog()) {
      for (int t = 0; t < 100; ++t) {
        const auto a = random_heis(s, n, rng), b = random_heis(s, n, rng);
        ASSERT_EQ(matmul(matrix_form(a), matrix_form(b)), matrix_form(heis_mul(a, b))) << s.label();
      }
    }
  }
}

TEST(Heisenberg, SubspaceChecked) {
  const Subspace c2 = find_subspace("c2");
  const HeisElem outside = HeisElem::tx(AlgElem::basis(3, 4));
  EXPECT_THROW(heis_mul(outside, HeisElem::identity(3), c2), SubspaceMismatch);
}

TEST(SL2, GeneratorFormsMatchGeneralConjugation) {
  std::mt19937_64 rng(3);
  const auto fc = FieldConfig::make(5);
  const Subspace s = Subspace::full();
  std::vector<Gen> gens = {Gen::u(fc.scalar(2)), Gen::d(fc.scalar(3)), Gen::s(fc.scalar(2)), Gen::j(5)};
  for (const auto& z : circle_subgroup(fc)) gens.push_back(Gen::r(z.a, z.b));
  for (const auto& g : gens)
    for (int t = 0; t < 50; ++t) {
      const auto h = random_heis(s, 5, rng);
      EXPECT_EQ(sl2_conjugate(g, h, fc), sl2_conjugate(gen_matrix(g, fc), h)) << g.to_string();
    }
}

TEST(SL2, ConjugationIsAnAutomorphism) {
  std::mt19937_64 rng(4);
  for (std::int64_t n : {3, 5, 7}) {
    const Subspace s = find_subspace("d4");
    for (int t = 0; t < 200; ++t) {
      const SL2Elem g = random_sl2(n, rng), k = random_sl2(n, rng);
      const auto a = random_heis(s, n, rng), b = random_heis(s, n, rng);
      EXPECT_EQ(sl2_conjugate(g, heis_mul(a, b)), heis_mul(sl2_conjugate(g, a), sl2_conjugate(g, b)));
      EXPECT_EQ(sl2_conjugate(g * k, a), sl2_conjugate(g, sl2_conjugate(k, a)));
    }
  }
}

TEST(SL2, JFourthPowerAndSquare) {
  const auto fc = FieldConfig::make(7);
  const SL2Elem j = gen_matrix(Gen::j(7), fc);
  EXPECT_EQ(j * j, gen_matrix(Gen::s(fc.scalar(-1)), fc));
  EXPECT_EQ(j * j * j * j, SL2Elem::identity(7));
}

TEST(SL2, Words) {
  const auto fc = FieldConfig::make(5);
  EXPECT_TRUE(sl2_word(SL2Elem::identity(5), fc).empty());
  const Word wj = sl2_word(gen_matrix(Gen::j(5), fc), fc);
  ASSERT_EQ(wj.size(), 1u);
  EXPECT_EQ(wj[0].kind, GenKind::j);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const SL2Elem g = random_sl2(5, rng);
    const Word w = sl2_word(g, fc);
    EXPECT_EQ(word_matrix(w, fc), g);
    EXPECT_EQ(word_matrix(word_inverse(w, fc), fc), g.inverse());
  }
  EXPECT_THROW(SL2Elem::make(5, 1, 1, 1, 1), ConfigError);
}

TEST(SL2, CircleFactorisations) {
  for (std::int64_t n : {3, 5, 7, 11}) {
    const auto fc = FieldConfig::make(n);
    for (const auto& z : circle_subgroup(fc)) {
      const SL2Elem r = gen_matrix(Gen::r(z.a, z.b), fc);
      if (auto w = circle_word_scaling(z.a, z.b, fc)) EXPECT_EQ(word_matrix(*w, fc), r);
      if (auto w = circle_word_shear(z.a, z.b, fc)) EXPECT_EQ(word_matrix(*w, fc), r);
    }
    EXPECT_THROW(gen_matrix(Gen::r(fc.scalar(1), fc.scalar(1)), fc), NotOnCircle);
  }
}

TEST(Diagonal, ConjugationPreservesGroupLaw) {
  std::mt19937_64 rng(8);
  const Subspace s = Subspace::full();
  for (int t = 0; t < 200; ++t) {
    const DiagElem d = DiagElem::make(random_unit_norm(5, rng), random_unit_norm(5, rng));
    const auto a = random_heis(s, 5, rng), b = random_heis(s, 5, rng);
    EXPECT_EQ(diag_conjugate(d, heis_mul(a, b)), heis_mul(diag_conjugate(d, a), diag_conjugate(d, b)));
    // commutes with the SL2 action
    const SL2Elem g = random_sl2(5, rng);
    EXPECT_EQ(diag_conjugate(d, sl2_conjugate(g, a)), sl2_conjugate(g, diag_conjugate(d, a)));
  }
  EXPECT_THROW(DiagElem::make(AlgElem::scalar(5, 2), AlgElem::scalar(5, 1)), NotUnitNorm);
}

TEST(Diagonal, PreservesSubspace) {
  const std::int64_t n = 5;
  const AlgElem one = AlgElem::scalar(n, 1);
  EXPECT_TRUE(preserves(DiagElem{one, one}, find_subspace("c2")));
  EXPECT_TRUE(preserves(DiagElem{AlgElem::basis(n, 4), AlgElem::basis(n, 4, -1)}, find_subspace("q")));
  EXPECT_FALSE(preserves(DiagElem{AlgElem::basis(n, 4), one}, find_subspace("c2")));
}

TEST(SLStar, MatricesOverTheField) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const SL2Elem g = random_sl2(5, rng);
    auto sc = [](Fp v) { return AlgElem::scalar(v.modulus(), v.value()); };
    EXPECT_TRUE(is_sl_star(sc(g.a), sc(g.b), sc(g.c), sc(g.d)));
  }
  const AlgElem one = AlgElem::scalar(5, 1), zero(5);
  EXPECT_FALSE(is_sl_star(one, one, one, one));
  // diagonal entries r, (r*)^-1 with r of unit norm
  const AlgElem r = AlgElem::basis(5, 4);
  EXPECT_TRUE(is_sl_star(r, zero, zero, r));
}
