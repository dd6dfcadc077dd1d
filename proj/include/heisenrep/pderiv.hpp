#pragma once

/**
 * @file pderiv.hpp
 * @brief Pseudo-derivatives on functions over S: grad, the finite Taylor
 * shift, Tr(grad grad*) and the Klein-Gordon residual.
 *
 * Everything is a multiplier on the Fourier table
 *   f~(sigma) = sum_k e(Tr(k sigma)) f(k),   f(k) = (1/V) sum_sigma f~(sigma) e(-Tr(k sigma)).
 * Field values that have to become numbers (the components sigma_i of grad,
 * the eigenvalue of the Laplacian) use the symmetric lift into (-N/2, N/2].
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "heisenrep/cqalg.hpp"
#include "heisenrep/ffield.hpp"
#include "heisenrep/swrep.hpp"

namespace heisenrep {

/// Fourier table, indexed like the wave function (sigma in S).
using FourierTable = WaveFunction;

inline FourierTable fourier(const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  return rep.character_transform(f, 2, false);
}

inline WaveFunction inverse_fourier(const FourierTable& ft, const SWRep& rep) {
  require_size(ft, rep);
  return (1.0 / static_cast<double>(rep.V())) * rep.character_transform(ft, -2, false);
}

/// Multiplies f~(sigma) by m(sigma index) and transforms back.
template <typename Mult>
WaveFunction fourier_multiplier(const WaveFunction& f, const SWRep& rep, Mult&& m) {
  FourierTable ft = fourier(f, rep);
  for (std::int64_t s = 0; s < rep.V(); ++s) ft[static_cast<std::size_t>(s)] *= m(s);
  return inverse_fourier(ft, rep);
}

/// One complex value per basis index of S: the components of grad f at a point.
struct GradValue {
  std::vector<std::pair<int, cplx>> components;  ///< (basis index, d f / d l_i)

  cplx operator[](int basis_index) const {
    for (const auto& [i, v] : components)
      if (i == basis_index) return v;
    return 0.0;
  }
};

/// The component functions d f / d l_i, one wave function per axis of S.
inline std::vector<WaveFunction> grad(const WaveFunction& f, const SWRep& rep) {
  const FourierTable ft = fourier(f, rep);
  std::vector<WaveFunction> out;
  for (int a = 0; a < rep.dim(); ++a) {
    FourierTable g = ft;
    for (std::int64_t s = 0; s < rep.V(); ++s)
      g[static_cast<std::size_t>(s)] *= static_cast<double>(symmetric_lift(rep.digit(s, a), rep.N()));
    out.push_back(inverse_fourier(g, rep));
  }
  return out;
}

inline GradValue grad_at(const WaveFunction& f, const AlgElem& l, const SWRep& rep) {
  const auto comps = grad(f, rep);
  const auto idx = static_cast<std::size_t>(rep.indexer().index(l));
  GradValue gv;
  const auto axes = rep.config().subspace.axes();
  for (int a = 0; a < rep.dim(); ++a) gv.components.push_back({axes[a], comps[a][idx]});
  return gv;
}

/// f(l - h), computed as the multiplier e(Tr(h sigma)).
inline WaveFunction taylor_shift(const WaveFunction& f, const AlgElem& h, const SWRep& rep) {
  const auto hc = rep.coords(h);
  return fourier_multiplier(f, rep, [&](std::int64_t s) { return rep.e()(2 * rep.pairing(s, hc, false)); });
}

/// Partial sum sum_{j <= m} (2 pi i / N Tr(h grad))^j / j! f of the Taylor
/// series, with Tr(h sigma) evaluated on lifted coordinates.
inline WaveFunction taylor_partial_sum(const WaveFunction& f, const AlgElem& h, int m, const SWRep& rep) {
  const auto hc = rep.coords(h);
  const std::int64_t n = rep.N();
  return fourier_multiplier(f, rep, [&](std::int64_t s) {
    double t = 0.0;
    for (int a = 0; a < rep.dim(); ++a)
      t += 2.0 * rep.product_sign(a) * static_cast<double>(symmetric_lift(hc[a], n)) *
           static_cast<double>(symmetric_lift(rep.digit(s, a), n));
    const cplx x(0.0, 2.0 * std::numbers::pi * t / static_cast<double>(n));
    cplx term = 1.0, sum = 1.0;
    for (int j = 1; j <= m; ++j) {
      term *= x / static_cast<double>(j);
      sum += term;
    }
    return sum;
  });
}

/// Tr(grad grad*): multiplier lift(2 N(sigma)).
inline WaveFunction laplace(const WaveFunction& f, const SWRep& rep) {
  return fourier_multiplier(f, rep, [&](std::int64_t s) {
    return cplx(static_cast<double>(symmetric_lift(2 * rep.norm_id(s), rep.N())), 0.0);
  });
}

/// exp(-2 pi i / N * c / (4 w0) * Tr(grad grad*)) f; equals act_d(c) f.
inline WaveFunction laplace_exp(Fp c, const WaveFunction& f, const SWRep& rep) {
  const Fp k = c / (Fp(4, rep.N()) * rep.config().omega0);
  return fourier_multiplier(f, rep, [&](std::int64_t s) { return rep.e()(-k.value() * 2 * rep.norm_id(s)); });
}

/// |(Tr(grad grad*) + 4 w0 eta) f|.
inline double kg_residual(const WaveFunction& f, Fp eta, const SWRep& rep) {
  const std::int64_t shift = symmetric_lift(4 * rep.w0() * eta.value(), rep.N());
  WaveFunction r = laplace(f, rep);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += static_cast<double>(shift) * f[i];
  return r.norm();
}

/// Largest component of grad(f g) - grad(f) g - f grad(g).
inline double leibniz_defect(const WaveFunction& f, const WaveFunction& g, const SWRep& rep) {
  const auto lhs = grad(hadamard(f, g), rep);
  const auto gf = grad(f, rep), gg = grad(g, rep);
  double worst = 0.0;
  for (int a = 0; a < rep.dim(); ++a) worst = std::max(worst, distance(lhs[a], hadamard(gf[a], g) + hadamard(f, gg[a])));
  return worst;
}

}  // namespace heisenrep
