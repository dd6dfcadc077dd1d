#include <gtest/gtest.h>

#include <random>

#include "heisenrep/serialize.hpp"

using namespace heisenrep;

TEST(Json, AlgebraAndHeisenbergRoundTrip) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const AlgElem x = random_element(Subspace::full(), 7, rng);
    EXPECT_EQ(alg_from_json(json::parse(to_json(x).dump()), 7), x);
    const HeisElem h{x, random_element(Subspace::full(), 7, rng), CentralElem{Fp(3, 7), Fp(5, 7)}};
    EXPECT_EQ(heis_from_json(json::parse(to_json(h).dump()), 7), h);
  }
  EXPECT_THROW(alg_from_json(json::array({1, 2, 3}), 7), ConfigError);
}

TEST(Json, WaveFunctionRoundTrip) {
  const RepConfig cfg = RepConfig::make(FieldConfig::make(3), find_subspace("c2"), 1);
  std::mt19937_64 rng(2);
  const WaveFunction f = WaveFunction::random(9, rng);
  const json j = to_json(f, cfg);
  EXPECT_EQ(j["schema"], "heisenrep/1");
  EXPECT_EQ(j["subspace"]["label"], "c2");
  EXPECT_EQ(j["subspace"]["signature"], json::array({1, 1}));
  EXPECT_LT(distance(wave_function_from_json(json::parse(j.dump())), f), 1e-15);
}

TEST(Json, DenseMatrixLayout) {
  const RepConfig cfg = RepConfig::make(FieldConfig::make(3), find_subspace("span1"), 1);
  const SWRep rep(cfg);
  const DenseMatrix m = operator_matrix(GenSpec{}, rep);
  const json j = to_json(m, "j", cfg);
  EXPECT_EQ(j["rows"], 3);
  EXPECT_EQ(j["layout"], "row-major");
  EXPECT_EQ(j["metadata"]["generator"], "j");
  ASSERT_EQ(j["data"].size(), 9u);
  EXPECT_LT(std::abs(complex_from_json(j["data"][5]) - m.at(1, 2)), 1e-15);
}

TEST(Json, ConstantsMarkAnisotropic) {
  const RepConfig cfg = RepConfig::make(FieldConfig::make(3), find_subspace("span1"), 1);
  const json j = to_json(ideal_constants(SWRep(cfg)));
  EXPECT_EQ(j["tau"], "unavailable");
  EXPECT_EQ(j["alpha"], "unavailable");
  EXPECT_EQ(j["reason"], "NoNullVector");
  EXPECT_TRUE(j.contains("kappa"));
  const RepConfig c2 = RepConfig::make(FieldConfig::make(3), find_subspace("c2"), 1);
  const json k = to_json(ideal_constants(SWRep(c2)));
  EXPECT_EQ(k["c0"], 5);
  EXPECT_EQ(k["tau"].size(), 2u);
  EXPECT_EQ(k["alpha"].size(), 2u);
}

TEST(Json, GradValueKeyedByBasisIndex) {
  GradValue g;
  g.components = {{0, cplx(1.0, 0.0)}, {4, cplx(0.0, -2.0)}};
  const json j = to_json(g);
  EXPECT_EQ(j["4"], json::array({0.0, -2.0}));
  EXPECT_EQ(j.size(), 2u);
}

TEST(Csv, CharacterRows) {
  EXPECT_EQ(character_csv({{"j", cplx(1.0, 0.0)}}), "generator,re,im\nj,1,0\n");
}
