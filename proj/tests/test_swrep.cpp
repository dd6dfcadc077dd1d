#include <gtest/gtest.h>

#include <random>
#include <set>

#include "heisenrep/swrep.hpp"

using namespace heisenrep;

namespace {

constexpr double kTol = 1e-9;

SWRep make_rep(std::int64_t n, const std::string& label, std::int64_t w0 = 1) {
  return SWRep(RepConfig::make(FieldConfig::make(n), find_subspace(label), w0));
}

HeisElem random_heis(const SWRep& rep, std::mt19937_64& rng) {
  const auto n = rep.N();
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  const auto& s = rep.config().subspace;
  return {random_element(s, n, rng), random_element(s, n, rng), CentralElem{Fp(d(rng), n), Fp(0, n)}};
}

cplx e(std::int64_t n, std::int64_t t) { return additive_character(n, t); }

// Tr(x) as an integer: twice the identity coefficient.
std::int64_t tr(const AlgElem& x) { return trace_id(x).value(); }

// Kernel sums written with the algebra product; no use of SWRep coordinates.
WaveFunction j_oracle(const WaveFunction& f, const SWRep& rep) {
  const auto all = enumerate(rep.config().subspace, rep.N());
  const std::int64_t n = rep.N(), w0 = rep.w0();
  WaveFunction out(f.size());
  for (std::size_t h = 0; h < all.size(); ++h) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < all.size(); ++k) acc += e(n, w0 * 2 * tr(all[k] * star(all[h]))) * f[k];
    out[h] = rep.kappa() * acc;
  }
  return out;
}

WaveFunction td_oracle(std::int64_t c, const WaveFunction& f, const SWRep& rep) {
  const auto all = enumerate(rep.config().subspace, rep.N());
  const std::int64_t n = rep.N(), w0 = rep.w0();
  WaveFunction out(f.size());
  for (std::size_t l = 0; l < all.size(); ++l) {
    cplx acc = 0.0;
    for (const auto& h : all)
      for (std::size_t k = 0; k < all.size(); ++k) {
        const AlgElem arg = Fp(-c, n) * (h * star(h)) + Fp(2, n) * (star(h) * (all[k] - all[l]));
        acc += e(n, w0 * tr(arg)) * f[k];
      }
    out[l] = acc / static_cast<double>(all.size());
  }
  return out;
}

WaveFunction tr_oracle(Fp a, Fp b, const WaveFunction& f, const SWRep& rep) {
  const auto all = enumerate(rep.config().subspace, rep.N());
  const std::int64_t n = rep.N();
  const Fp w0 = rep.config().omega0;
  const Fp x = (a - Fp(1, n)) / b, cp = b / (Fp(4, n) * w0 * w0);
  WaveFunction out(f.size());
  for (std::size_t h = 0; h < all.size(); ++h) {
    cplx acc = 0.0;
    for (const auto& p : all)
      for (std::size_t k = 0; k < all.size(); ++k) {
        const AlgElem q = x * (all[k] * star(all[k]) + all[h] * star(all[h])) - cp * (p * star(p));
        acc += e(n, w0.value() * tr(q)) * e(n, tr(p * (all[k] - all[h]))) * f[k];
      }
    out[h] = acc / static_cast<double>(all.size());
  }
  return out;
}

}  // namespace

TEST(Config, Validation) {
  const auto fc = FieldConfig::make(3);
  EXPECT_THROW(RepConfig::make(fc, find_subspace("span1"), 0), ConfigError);
  EXPECT_THROW(RepConfig::make(fc, find_subspace("span1"), 3), ConfigError);
  EXPECT_THROW(RepConfig::make(fc, find_subspace("span1"), 1, Chi::plus), ConfigError);
  EXPECT_EQ(RepConfig::make(fc, find_subspace("c2"), 1).chi, Chi::plus);
  EXPECT_THROW(RepConfig::make(fc, find_subspace("c2"), CentralElem{Fp(1, 3), Fp(1, 3)}), ConfigError);
}

TEST(Kappa, ClosedForm) {
  const SWRep rep = make_rep(3, "span1");
  EXPECT_LT(std::abs(rep.kappa() - cplx(0.0, -1.0 / std::sqrt(3.0))), 1e-12);
}

TEST(Heisenberg, TranslationAndPhaseActions) {
  const SWRep rep = make_rep(5, "c2");
  std::mt19937_64 rng(1);
  const WaveFunction f = WaveFunction::random(rep.size(), rng);
  const auto& ix = rep.indexer();
  const AlgElem h = random_element(rep.config().subspace, 5, rng);
  const WaveFunction tx = act_tx(h, f, rep), ty = act_ty(h, f, rep);
  for (std::int64_t i = 0; i < rep.V(); ++i) {
    const AlgElem k = ix.element(i);
    EXPECT_LT(std::abs(tx[i] - f[ix.index(k - h)]), kTol);
    EXPECT_LT(std::abs(ty[i] - e(5, -rep.w0() * 2 * tr(k * star(h))) * f[i]), kTol);
  }
}

TEST(Heisenberg, SchrodingerIsAHomomorphism) {
  for (const char* label : {"span1", "c2", "d4plus", "c4"}) {
    const SWRep rep = make_rep(3, label, 2);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
      const HeisElem a = random_heis(rep, rng), b = random_heis(rep, rng);
      const WaveFunction f = WaveFunction::random(rep.size(), rng);
      const WaveFunction lhs = act_heis(a, act_heis(b, f, rep), rep);
      const WaveFunction rhs = act_heis(heis_mul(a, b), f, rep);
      ASSERT_LT(distance(lhs, rhs), kTol) << label;
    }
  }
}

TEST(Weil, JMatchesKernelSum) {
  for (const char* label : {"span1", "c2", "d4plus", "c4r"}) {
    const SWRep rep = make_rep(5, label, 3);
    std::mt19937_64 rng(3);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    EXPECT_LT(distance(act_j(f, rep), j_oracle(f, rep)), kTol) << label;
  }
}

TEST(Weil, TdMatchesDoubleSum) {
  for (const char* label : {"span1", "c2", "lorentz"}) {
    const SWRep rep = make_rep(3, label);
    std::mt19937_64 rng(4);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    for (std::int64_t c : {1, 2}) EXPECT_LT(distance(act_d(Fp(c, 3), f, rep), td_oracle(c, f, rep)), 1e-8) << label;
  }
}

TEST(Weil, TrMatchesTripleSumAndWords) {
  for (const char* label : {"span1", "c2"}) {
    const SWRep rep = make_rep(5, label);
    const auto& fc = rep.config().field;
    std::mt19937_64 rng(5);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    for (const auto& z : circle_subgroup(fc)) {
      const WaveFunction r = act_r(z.a, z.b, f, rep);
      if (!z.b.is_zero()) {
        EXPECT_LT(distance(r, tr_oracle(z.a, z.b, f, rep)), 1e-8);
        EXPECT_LT(distance(r, apply(*circle_word_shear(z.a, z.b, fc), f, rep)), 1e-8);
      }
      if (!z.a.is_zero()) EXPECT_LT(distance(r, apply(*circle_word_scaling(z.a, z.b, fc), f, rep)), 1e-8);
    }
  }
}

TEST(Weil, JIdentities) {
  for (const char* label : {"span1", "c2", "q3", "lorentz"}) {
    const SWRep rep = make_rep(3, label);
    std::mt19937_64 rng(6);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    const WaveFunction j1 = act_j(f, rep);
    const WaveFunction j2 = act_j(j1, rep);
    EXPECT_LT(distance(j2, act_s(Fp(-1, 3), f, rep)), kTol) << label;
    EXPECT_LT(distance(act_j(act_j(j2, rep), rep), f), kTol) << label;
    EXPECT_NEAR(j1.norm(), f.norm(), kTol);
    EXPECT_LT(distance(act_j_inverse(j1, rep), f), kTol);
  }
}

TEST(Weil, CovarianceUnderSl2) {
  const SWRep rep = make_rep(3, "c2");
  const auto& fc = rep.config().field;
  std::mt19937_64 rng(7);
  std::vector<Gen> gens = {Gen::u(fc.scalar(1)), Gen::d(fc.scalar(2)), Gen::s(fc.scalar(2)), Gen::j(3)};
  for (const auto& z : circle_subgroup(fc))
    if (!z.b.is_zero()) gens.push_back(Gen::r(z.a, z.b));
  for (const auto& g : gens)
    for (int t = 0; t < 20; ++t) {
      const HeisElem h = random_heis(rep, rng);
      const WaveFunction f = WaveFunction::random(rep.size(), rng);
      // W(g) rho(h) f = rho(g h g^-1) W(g) f
      const WaveFunction lhs = apply(g, act_heis(h, f, rep), rep);
      const WaveFunction rhs = act_heis(sl2_conjugate(g, h, fc), apply(g, f, rep), rep);
      ASSERT_LT(distance(lhs, rhs), kTol) << g.to_string();
    }
}

TEST(Weil, TraceOfJ) {
  const GenSpec j;
  EXPECT_LT(std::abs(character(j, make_rep(3, "span1")) - cplx(1.0)), 1e-8);
  EXPECT_LT(std::abs(character(j, make_rep(5, "span1")) - cplx(-1.0)), 1e-8);
  for (const auto& s : subspace_catalog())
    for (std::int64_t n : {3, 5}) {
      RepConfig cfg = RepConfig::make(FieldConfig::make(n), s, 1);
      std::int64_t v = 1;
      for (int i = 0; i < s.dim(); ++i) v *= n;
      if (v > cfg.dense_cap) continue;
      EXPECT_LT(std::abs(character(j, SWRep(cfg)) - j_character_expected(n, s.dim())), 1e-8) << s.label() << " N=" << n;
    }
}

TEST(Weil, DenseMatrixOfCentralElement) {
  const SWRep rep = make_rep(3, "c2");
  GenSpec z;
  z.kind = GenSpec::Kind::z;
  z.a = 1;  // Tr l = 1
  const DenseMatrix m = operator_matrix(z, rep);
  ASSERT_EQ(m.rows, 9);
  for (std::int64_t i = 0; i < 9; ++i)
    for (std::int64_t k = 0; k < 9; ++k) EXPECT_LT(std::abs(m.at(i, k) - (i == k ? e(3, 1) : cplx(0.0))), kTol);
  RepConfig big = RepConfig::make(FieldConfig::make(3), Subspace::full(), 1);
  EXPECT_THROW(operator_matrix(GenSpec{}, SWRep(big)), BudgetExceeded);
}

TEST(Weil, Errors) {
  const SWRep rep = make_rep(3, "c2");
  EXPECT_THROW(act_s(Fp(0, 3), WaveFunction(rep.size()), rep), ZeroScale);
  EXPECT_THROW(act_r(Fp(1, 3), Fp(1, 3), WaveFunction(rep.size()), rep), NotOnCircle);
  EXPECT_THROW(act_j(WaveFunction(3), rep), SubspaceMismatch);
  EXPECT_THROW(projector(WaveFunction(rep.size()), Subgroup::s, 2, rep), IndexOutOfRange);
}

TEST(Projectors, ResolveTheIdentityAndAreEigenstates) {
  const SWRep rep = make_rep(3, "c2");
  const auto& fc = rep.config().field;
  std::mt19937_64 rng(8);
  const WaveFunction f = WaveFunction::random(rep.size(), rng);
  for (Subgroup g : {Subgroup::x, Subgroup::y, Subgroup::u, Subgroup::d, Subgroup::s, Subgroup::r}) {
    WaveFunction sum(rep.size());
    for (std::int64_t i = 0; i < subgroup_order(g, rep); ++i) {
      const WaveFunction p = projector(f, g, i, rep);
      EXPECT_LT(distance(projector(p, g, i, rep), p), kTol);
      sum += p;
    }
    EXPECT_LT(distance(sum, f), kTol) << static_cast<int>(g);
  }
  // t_u^1 acts on the u-projection with index tau by e(tau)
  for (std::int64_t tau = 0; tau < 3; ++tau) {
    const WaveFunction p = projector(f, Subgroup::u, tau, rep);
    EXPECT_LT(distance(act_u(Fp(1, 3), p, rep), e(3, tau) * p), kTol);
  }
  // t_r on the r-projection with index m: eigenvalue exp(2 pi i m / (N+1)) on the generator
  const auto circle = circle_subgroup(fc);
  for (std::int64_t m = 0; m <= 3; ++m) {
    const WaveFunction p = projector(f, Subgroup::r, m, rep);
    const cplx lam = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / 4.0);
    EXPECT_LT(distance(act_r(circle[1].a, circle[1].b, p, rep), lam * p), kTol);
  }
  EXPECT_LT(distance(projector(f, Subgroup::z, 1, rep), f), kTol);
  EXPECT_LT(projector(f, Subgroup::z, 2, rep).norm(), kTol);
}

TEST(Diagonal, ActionCovariance) {
  const SWRep rep = make_rep(3, "q");
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const DiagElem d = sample_stabilizer(rep.config().subspace, 3, rng);
    ASSERT_TRUE(preserves(d, rep.config().subspace));
    const HeisElem h = random_heis(rep, rng);
    const WaveFunction f = WaveFunction::random(rep.size(), rng);
    // D rho(h) D^-1 = rho(d h d^-1) with (D f)(k) = f(s^-1 k r)
    const WaveFunction lhs = act_diag(d.r, d.s, act_heis(h, f, rep), rep);
    const WaveFunction rhs = act_heis(diag_conjugate(d, h), act_diag(d.r, d.s, f, rep), rep);
    EXPECT_LT(distance(lhs, rhs), kTol);
    ++checked;
  }
  EXPECT_EQ(checked, 40);
  const AlgElem one = AlgElem::scalar(3, 1);
  for (const auto& r : unit_norm_generators(3))
    if (!preserves(DiagElem{r, one}, rep.config().subspace)) {
      EXPECT_THROW(act_diag(r, one, WaveFunction(rep.size()), rep), SubspaceMismatch);
      break;
    }
  EXPECT_THROW(act_diag(AlgElem::basis(3, 1), one, WaveFunction(rep.size()), rep), NotUnitNorm);
}

TEST(Orbits, OrbitOfOneIsTheUnitGroup) {
  const auto units = unit_norm_group(Subspace::full(), 3);
  const auto o = orbit(AlgElem::scalar(3, 1));
  EXPECT_EQ(std::set<AlgElem>(o.begin(), o.end()), std::set<AlgElem>(units.begin(), units.end()));
}

TEST(Orbits, OrbitsPreserveNorm) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    const AlgElem tau = random_element(Subspace::full(), 3, rng);
    for (const auto& x : orbit(tau)) EXPECT_EQ(norm(x), norm(tau));
  }
}

TEST(Orbits, ActionIsARepresentation) {
  const AlgElem tau = AlgElem::scalar(3, 1) + AlgElem::basis(3, 1);
  OrbitFunction fa{orbit(tau), {}};
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (std::size_t i = 0; i < fa.points.size(); ++i) fa.values.push_back({nd(rng), nd(rng)});
  for (int t = 0; t < 20; ++t) {
    const AlgElem r1 = random_unit_norm(3, rng), s1 = random_unit_norm(3, rng);
    const AlgElem r2 = random_unit_norm(3, rng), s2 = random_unit_norm(3, rng);
    const AlgElem zero(3);
    const auto lhs = orbit_action(zero, r1, s1, orbit_action(zero, r2, s2, fa));
    const auto rhs = orbit_action(zero, r1 * r2, s1 * s2, fa);
    for (std::size_t i = 0; i < fa.points.size(); ++i) ASSERT_LT(std::abs(lhs.values[i] - rhs.values[i]), kTol);
  }
  EXPECT_THROW(orbit_action(AlgElem(3), AlgElem::scalar(3, 1) + AlgElem::basis(3, 1), AlgElem::scalar(3, 1), fa), NotUnitNorm);
}
