#pragma once

/**
 * @file swrep.hpp
 * @brief Schrodinger-Weil representation of (SL(2,F_N) x D(A_0^x)) |x H_*(S)
 * on complex functions over S.
 *
 * A wave function f is the vector of values f(k), k in S, in the mixed-radix
 * order of SubspaceIndexer. Every operator is applied matrix-free. Operators
 * built from characters of the diagonal forms on S (j, the Fourier transform,
 * t_d, t_r) factor into one N x N transform per coordinate axis, so a full
 * application costs O(V N dim).
 *
 * Conventions, with e(t) = exp(2 pi i t / N) and w0 the central character:
 *   t_x^h f(k) = f(k - h)
 *   t_y^h f(k) = e(-2 w0 Tr(k h*)) f(k)
 *   t_z^l f    = e(w0 Tr(l)) f
 *   t_u^b f(k) = e(w0 b Tr n(k)) f(k)
 *   t_s^a f(k) = (a/N)^dim f(a k)
 *   j f(h)     = kappa sum_k e(2 w0 Tr(k h*)) f(k)
 *   t_d^c      = j t_u^{-c} j^{-1},  j^{-1} = j t_s^{-1}
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "heisenrep/cqalg.hpp"
#include "heisenrep/error.hpp"
#include "heisenrep/ffield.hpp"
#include "heisenrep/heis.hpp"

namespace heisenrep {

/// Choice of the F_N^x character in the invariant vector: trivial (plus) or
/// the Legendre symbol (minus).
enum class Chi { plus, minus };

inline std::string to_string(Chi c) { return c == Chi::plus ? "plus" : "minus"; }

struct RepConfig {
  FieldConfig field;
  Subspace subspace;
  Fp omega0;
  Chi chi = Chi::plus;
  double tol = kDefaultTolerance;
  std::int64_t dense_cap = 4096;
  std::int64_t budget = kDefaultEnumerationBudget;

  /// Validates w0 != 0 and the parity rule chi = plus iff dim is even.
  static RepConfig make(const FieldConfig& field, const Subspace& s, std::int64_t omega0,
                        std::optional<Chi> chi = std::nullopt) {
    RepConfig cfg;
    cfg.field = field;
    cfg.subspace = s;
    cfg.omega0 = field.scalar(omega0);
    if (cfg.omega0.is_zero()) throw ConfigError("central character omega0 must be nonzero");
    const Chi expected = s.dim() % 2 == 0 ? Chi::plus : Chi::minus;
    if (chi && *chi != expected)
      throw ConfigError("chi=" + to_string(*chi) + " inconsistent with dim=" + std::to_string(s.dim()) +
                        " (plus iff dim is even)");
    cfg.chi = expected;
    return cfg;
  }

  /// Central characters must lie in the ground field.
  static RepConfig make(const FieldConfig& field, const Subspace& s, const CentralElem& omega,
                        std::optional<Chi> chi = std::nullopt) {
    if (!omega.c7.is_zero()) throw ConfigError("central character with an e123 component is not supported");
    return make(field, s, omega.c0.value(), chi);
  }

  std::int64_t N() const { return field.N; }
  int dim() const { return subspace.dim(); }
  int q_minus() const { return subspace.q_minus(); }
};

class WaveFunction {
 public:
  WaveFunction() = default;
  explicit WaveFunction(std::size_t n, cplx fill = 0.0) : v_(n, fill) {}
  explicit WaveFunction(std::vector<cplx> v) : v_(std::move(v)) {}

  static WaveFunction delta(std::size_t n, std::size_t at) {
    WaveFunction f(n);
    f.v_.at(at) = 1.0;
    return f;
  }
  static WaveFunction random(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    WaveFunction f(n);
    for (auto& x : f.v_) x = {g(rng), g(rng)};
    return f;
  }

  std::size_t size() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  const std::vector<cplx>& values() const { return v_; }
  std::vector<cplx>& values() { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  double norm() const {
    double s = 0.0;
    for (const auto& x : v_) s += std::norm(x);
    return std::sqrt(s);
  }
  /// <this, o> antilinear in the first argument.
  cplx inner(const WaveFunction& o) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += std::conj(v_[i]) * o.v_[i];
    return s;
  }

  WaveFunction& operator+=(const WaveFunction& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  WaveFunction& operator-=(const WaveFunction& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  WaveFunction& operator*=(cplx s) {
    for (auto& x : v_) x *= s;
    return *this;
  }
  friend WaveFunction operator+(WaveFunction a, const WaveFunction& b) { return a += b; }
  friend WaveFunction operator-(WaveFunction a, const WaveFunction& b) { return a -= b; }
  friend WaveFunction operator*(cplx s, WaveFunction a) { return a *= s; }

  /// Pointwise product.
  friend WaveFunction hadamard(const WaveFunction& a, const WaveFunction& b) {
    WaveFunction r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.v_[i] = a.v_[i] * b.v_[i];
    return r;
  }

 private:
  std::vector<cplx> v_;
};

inline double distance(const WaveFunction& a, const WaveFunction& b) { return (a - b).norm(); }

/// Best phase lambda with b ~ lambda a, and the residual |b - lambda a|.
struct PhaseFit {
  cplx lambda;
  double residual;
};
inline PhaseFit fit_phase(const WaveFunction& a, const WaveFunction& b) {
  const double na = a.inner(a).real();
  const cplx lambda = na > 0 ? a.inner(b) / na : cplx(0.0);
  return {lambda, distance(lambda * a, b)};
}

/// Precomputed state for one (N, S, w0): coordinates of every k in S, the
/// norm form and the character tables. Operators are free functions over it.
class SWRep {
 public:
  explicit SWRep(RepConfig cfg)
      : cfg_(std::move(cfg)), ix_(cfg_.N(), cfg_.subspace, cfg_.budget), chars_(cfg_.N()) {
    const std::int64_t n = cfg_.N();
    V_ = ix_.size();
    dim_ = cfg_.dim();
    digits_.resize(static_cast<std::size_t>(V_ * dim_));
    norm_id_.resize(static_cast<std::size_t>(V_));
    strides_.assign(static_cast<std::size_t>(dim_), 1);
    for (int a = dim_ - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * n;
    for (const int axis : cfg_.subspace.axes()) {
      norm_sign_.push_back(kNormSigns[axis]);
      product_sign_.push_back(kProductSigns[axis]);
    }
    for (std::int64_t i = 0; i < V_; ++i) {
      std::int64_t rest = i, nid = 0;
      for (int a = dim_ - 1; a >= 0; --a) {
        const std::int64_t d = rest % n;
        rest /= n;
        digits_[static_cast<std::size_t>(i * dim_ + a)] = static_cast<std::int32_t>(d);
        nid += norm_sign_[a] * d * d;
      }
      norm_id_[static_cast<std::size_t>(i)] = reduce(nid, n);
    }
    const cplx g = gauss_sum_closed_form(n);
    const int l2w = legendre(2 * cfg_.omega0.value(), n);
    const int lm1 = legendre(-1, n);
    kappa_ = std::pow(g, dim_) * std::pow(static_cast<double>(l2w), dim_) *
             std::pow(static_cast<double>(lm1), cfg_.q_minus()) / static_cast<double>(V_);
  }

  const RepConfig& config() const { return cfg_; }
  const SubspaceIndexer& indexer() const { return ix_; }
  std::int64_t N() const { return cfg_.N(); }
  std::int64_t V() const { return V_; }
  std::size_t size() const { return static_cast<std::size_t>(V_); }
  int dim() const { return dim_; }
  std::int64_t w0() const { return cfg_.omega0.value(); }
  cplx kappa() const { return kappa_; }
  const CharacterTable& e() const { return chars_; }

  std::int32_t digit(std::int64_t idx, int axis_pos) const {
    return digits_[static_cast<std::size_t>(idx * dim_ + axis_pos)];
  }
  /// N(k) for the k with index idx.
  std::int64_t norm_id(std::int64_t idx) const { return norm_id_[static_cast<std::size_t>(idx)]; }
  int norm_sign(int axis_pos) const { return norm_sign_[axis_pos]; }
  int product_sign(int axis_pos) const { return product_sign_[axis_pos]; }
  std::int64_t stride(int axis_pos) const { return strides_[axis_pos]; }

  std::vector<std::int64_t> coords(const AlgElem& x) const {
    ix_.index(x);  // membership check
    std::vector<std::int64_t> c;
    for (int a : cfg_.subspace.axes()) c.push_back(x[a]);
    return c;
  }

  /// Index of k(idx) + sign * h, h given by its coordinates.
  std::int64_t shifted(std::int64_t idx, const std::vector<std::int64_t>& h, int sign) const {
    std::int64_t out = 0;
    for (int a = 0; a < dim_; ++a) out += reduce(digit(idx, a) + sign * h[a], N()) * strides_[a];
    return out;
  }

  /// Index of c * k(idx).
  std::int64_t scaled(std::int64_t idx, Fp c) const {
    std::int64_t out = 0;
    for (int a = 0; a < dim_; ++a) out += (digit(idx, a) * c.value() % N()) * strides_[a];
    return out;
  }

  /// sum_a sign_a k_a h_a: the identity component of k h* (norm signs) or of k h (product signs).
  std::int64_t pairing(std::int64_t idx, const std::vector<std::int64_t>& h, bool star_form) const {
    std::int64_t s = 0;
    for (int a = 0; a < dim_; ++a)
      s += (star_form ? norm_sign_[a] : product_sign_[a]) * digit(idx, a) * h[a];
    return reduce(s, N());
  }

  /// Applies the N x N matrix m (out[y] = sum_x m[y N + x] in[x]) along one axis.
  void transform_axis(std::vector<cplx>& v, int axis_pos, const std::vector<cplx>& m) const {
    const std::int64_t n = N(), st = strides_[axis_pos], block = st * n;
    std::vector<cplx> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    for (std::int64_t outer = 0; outer < V_; outer += block)
      for (std::int64_t inner = 0; inner < st; ++inner) {
        const std::int64_t base = outer + inner;
        for (std::int64_t t = 0; t < n; ++t) in[t] = v[static_cast<std::size_t>(base + t * st)];
        for (std::int64_t y = 0; y < n; ++y) {
          cplx acc = 0.0;
          for (std::int64_t x = 0; x < n; ++x) acc += m[static_cast<std::size_t>(y * n + x)] * in[x];
          out[y] = acc;
        }
        for (std::int64_t t = 0; t < n; ++t) v[static_cast<std::size_t>(base + t * st)] = out[t];
      }
  }

  /// Separable character transform out(h) = sum_k e(coef * sum_a sign_a k_a h_a) f(k).
  WaveFunction character_transform(const WaveFunction& f, std::int64_t coef, bool star_form) const {
    std::vector<cplx> v = f.values();
    const std::int64_t n = N();
    std::vector<cplx> m(static_cast<std::size_t>(n * n));
    for (int a = 0; a < dim_; ++a) {
      const int sg = star_form ? norm_sign_[a] : product_sign_[a];
      for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x) m[static_cast<std::size_t>(y * n + x)] = chars_(coef * sg * x * y);
      transform_axis(v, a, m);
    }
    return WaveFunction(std::move(v));
  }

 private:
  RepConfig cfg_;
  SubspaceIndexer ix_;
  CharacterTable chars_;
  std::int64_t V_ = 0;
  int dim_ = 0;
  std::vector<std::int32_t> digits_;
  std::vector<std::int64_t> norm_id_;
  std::vector<std::int64_t> strides_;
  std::vector<int> norm_sign_;
  std::vector<int> product_sign_;
  cplx kappa_;
};

inline void require_size(const WaveFunction& f, const SWRep& rep) {
  if (f.size() != rep.size())
    throw SubspaceMismatch("wave function has " + std::to_string(f.size()) + " values, subspace has " +
                           std::to_string(rep.V()));
}

// Heisenberg group ---------------------------------------------------------

inline WaveFunction act_tx(const AlgElem& h, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  const auto hc = rep.coords(h);
  WaveFunction out(f.size());
  for (std::int64_t i = 0; i < rep.V(); ++i) out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(rep.shifted(i, hc, -1))];
  return out;
}

inline WaveFunction act_ty(const AlgElem& h, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  const auto hc = rep.coords(h);
  WaveFunction out(f.size());
  // -2 w0 Tr(k h*) = -4 w0 (k h*)_0
  for (std::int64_t i = 0; i < rep.V(); ++i)
    out[static_cast<std::size_t>(i)] = rep.e()(-4 * rep.w0() * rep.pairing(i, hc, true)) * f[static_cast<std::size_t>(i)];
  return out;
}

inline WaveFunction act_tz(const CentralElem& l, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  return rep.e()(rep.w0() * 2 * l.c0.value()) * f;
}

/// t_x^p t_y^q t_z^z as one operator (t_z acts first, then t_y, then t_x).
inline WaveFunction act_heis(const HeisElem& h, const WaveFunction& f, const SWRep& rep) {
  const auto& s = rep.config().subspace;
  require_in(s, h);
  return act_tx(h.p, act_ty(h.q, act_tz(h.z, f, rep), rep), rep);
}

// SL(2, F_N) ---------------------------------------------------------------

inline WaveFunction act_u(Fp b, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  WaveFunction out(f.size());
  // Tr n(k) = 2 N(k)
  for (std::int64_t i = 0; i < rep.V(); ++i)
    out[static_cast<std::size_t>(i)] = rep.e()(rep.w0() * b.value() * 2 * rep.norm_id(i)) * f[static_cast<std::size_t>(i)];
  return out;
}

inline WaveFunction act_s(Fp a, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  if (a.is_zero()) throw ZeroScale("t_s with a = 0");
  const double sign = std::pow(static_cast<double>(legendre(a)), rep.dim());
  WaveFunction out(f.size());
  for (std::int64_t i = 0; i < rep.V(); ++i) out[static_cast<std::size_t>(i)] = sign * f[static_cast<std::size_t>(rep.scaled(i, a))];
  return out;
}

inline WaveFunction act_j(const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  // 2 w0 Tr(k h*) = 4 w0 (k h*)_0
  return rep.kappa() * rep.character_transform(f, 4 * rep.w0(), true);
}

inline WaveFunction act_j_inverse(const WaveFunction& f, const SWRep& rep) {
  return act_j(act_s(Fp(-1, rep.N()), f, rep), rep);
}

inline WaveFunction act_d(Fp c, const WaveFunction& f, const SWRep& rep) {
  return act_j(act_u(-c, act_j_inverse(f, rep), rep), rep);
}

/// Multiplication by e(coef * N(k)).
inline WaveFunction norm_chirp(std::int64_t coef, const WaveFunction& f, const SWRep& rep) {
  WaveFunction out(f.size());
  for (std::int64_t i = 0; i < rep.V(); ++i)
    out[static_cast<std::size_t>(i)] = rep.e()(coef * rep.norm_id(i)) * f[static_cast<std::size_t>(i)];
  return out;
}

/// t_r^{a + sqrt(delta) b}. For b != 0 this evaluates
///   (1/V) sum_{h,p,k} e(w0 Tr((n(k)+n(h))(a-1)/b - b/(4 w0^2) n(p))) e(Tr p(k-h)) f(k) t_x^h
/// with the sums over p and k carried out as chirp / Fourier / chirp passes.
inline WaveFunction act_r(Fp a, Fp b, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  const auto& fc = rep.config().field;
  if (!(a * a - fc.scalar(fc.delta) * b * b == fc.scalar(1)))
    throw NotOnCircle("a^2 - delta b^2 != 1 for t_r(" + std::to_string(a.value()) + "," +
                      std::to_string(b.value()) + ")");
  if (b.is_zero()) return act_s(a, f, rep);
  const Fp w0 = rep.config().omega0;
  const Fp x = (a - fc.scalar(1)) / b;
  const Fp cp = b / (fc.scalar(4) * w0 * w0);
  const std::int64_t chirp_kh = (w0 * x * fc.scalar(2)).value();   // w0 x Tr n(k)
  const std::int64_t chirp_p = (-(w0 * cp * fc.scalar(2))).value();  // -w0 c' Tr n(p)
  WaveFunction g = norm_chirp(chirp_kh, f, rep);
  g = rep.character_transform(g, 2, false);                            // sum_k e(Tr p k)
  g = norm_chirp(chirp_p, g, rep);
  g = rep.character_transform(g, -2, false);                           // sum_p e(-Tr p h)
  g *= 1.0 / static_cast<double>(rep.V());
  return norm_chirp(chirp_kh, g, rep);
}

inline WaveFunction apply(const Gen& g, const WaveFunction& f, const SWRep& rep) {
  switch (g.kind) {
    case GenKind::u: return act_u(g.x, f, rep);
    case GenKind::d: return act_d(g.x, f, rep);
    case GenKind::s: return act_s(g.x, f, rep);
    case GenKind::j: return act_j(f, rep);
    case GenKind::r: return act_r(g.x, g.y, f, rep);
  }
  throw ConfigError("bad generator");
}

/// Word g1 ... gk applied as an operator product (gk acts first).
inline WaveFunction apply(const Word& w, const WaveFunction& f, const SWRep& rep) {
  WaveFunction out = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = apply(*it, out, rep);
  return out;
}

// Diagonal group -----------------------------------------------------------

/// f(k) -> f(s^-1 k r). S must be stable under k -> s^-1 k r.
inline WaveFunction act_diag(const AlgElem& r, const AlgElem& s, const WaveFunction& f, const SWRep& rep) {
  require_size(f, rep);
  const DiagElem d = DiagElem::make(r, s);
  const Subspace& sub = rep.config().subspace;
  if (!preserves(d, sub)) throw SubspaceMismatch("diagonal element does not preserve " + sub.label());
  const AlgElem sinv = star(s);
  WaveFunction out(f.size());
  for (std::int64_t i = 0; i < rep.V(); ++i) {
    const AlgElem k = rep.indexer().element(i);
    out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(rep.indexer().index(sinv * k * r))];
  }
  return out;
}

/// Random (r, s) of unit norm whose action preserves S. Tries short then
/// long random products r with s in {r, r^eta, r^xi, (r^xi)*}, then falls back
/// to (-1, 1).
inline DiagElem sample_stabilizer(const Subspace& sub, std::int64_t n, std::mt19937_64& rng, int tries = 64) {
  for (int t = 0; t < tries; ++t) {
    const AlgElem r = random_unit_norm(n, rng, t < tries / 2 ? 1 + t % 2 : 12);
    for (const AlgElem& s : {r, eta(r), xi(r), star(xi(r))}) {
      if (!is_unit_norm(s)) continue;
      DiagElem d{r, s};
      if (preserves(d, sub)) return d;
    }
  }
  return {AlgElem::scalar(n, -1), AlgElem::scalar(n, 1)};
}

/// A small generating set of A_0^x for orbit closures: the bivectors plus a
/// few fixed random products.
inline std::vector<AlgElem> orbit_generators(std::int64_t n) {
  std::vector<AlgElem> g;
  for (int i = 4; i <= 6; ++i) g.push_back(AlgElem::basis(n, i));
  std::mt19937_64 rng(0x5eed);
  for (int i = 0; i < 6; ++i) g.push_back(random_unit_norm(n, rng));
  return g;
}

/// O_tau = {r tau s* : r, s in the group generated by `generators`}, by
/// closure under sigma -> g sigma and sigma -> sigma g*.
inline std::vector<AlgElem> orbit(const AlgElem& tau, const std::vector<AlgElem>& generators,
                                  std::int64_t budget = kDefaultEnumerationBudget) {
  std::set<AlgElem> seen{tau};
  std::vector<AlgElem> frontier{tau};
  while (!frontier.empty()) {
    std::vector<AlgElem> next;
    for (const auto& x : frontier)
      for (const auto& g : generators)
        for (const AlgElem& y : {g * x, x * star(g)})
          if (seen.insert(y).second) {
            if (static_cast<std::int64_t>(seen.size()) > budget) throw BudgetExceeded("orbit exceeds budget");
            next.push_back(y);
          }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<AlgElem> orbit(const AlgElem& tau) { return orbit(tau, orbit_generators(tau.modulus())); }

/// Function on an orbit, values aligned with `points` (sorted).
struct OrbitFunction {
  std::vector<AlgElem> points;
  std::vector<cplx> values;

  std::size_t index(const AlgElem& x) const {
    auto it = std::lower_bound(points.begin(), points.end(), x);
    if (it == points.end() || !(*it == x)) throw SubspaceMismatch(x.to_string() + " is not on the orbit");
    return static_cast<std::size_t>(it - points.begin());
  }
};

/// (t_x^h t_A^{r,s} f_A)(sigma) = e(Tr h sigma) f_A(r^-1 sigma s).
inline OrbitFunction orbit_action(const AlgElem& h, const AlgElem& r, const AlgElem& s, const OrbitFunction& fa) {
  if (!is_unit_norm(r) || !is_unit_norm(s)) throw NotUnitNorm("orbit_action needs unit-norm r, s");
  const std::int64_t n = h.modulus();
  OrbitFunction out{fa.points, std::vector<cplx>(fa.points.size())};
  const AlgElem rinv = star(r);
  for (std::size_t i = 0; i < fa.points.size(); ++i) {
    const AlgElem& sigma = fa.points[i];
    out.values[i] = additive_character(trace_id(h * sigma)) * fa.values[fa.index(rinv * sigma * s)];
  }
  (void)n;
  return out;
}

// Generic generators, dense matrices, characters ----------------------------

/// Any single group element the CLI can name.
struct GenSpec {
  enum class Kind { x, y, z, u, d, s, j, r } kind = Kind::j;
  AlgElem elem;      ///< x, y
  std::int64_t a = 0;  ///< z (Tr value), u (b), d (c), s (a), r (a)
  std::int64_t b = 0;  ///< r (b)

  std::string to_string() const {
    switch (kind) {
      case Kind::x: return "x:" + elem.to_string();
      case Kind::y: return "y:" + elem.to_string();
      case Kind::z: return "z:" + std::to_string(a);
      case Kind::u: return "u:" + std::to_string(a);
      case Kind::d: return "d:" + std::to_string(a);
      case Kind::s: return "s:" + std::to_string(a);
      case Kind::j: return "j";
      case Kind::r: return "r:" + std::to_string(a) + "," + std::to_string(b);
    }
    return "?";
  }
};

inline WaveFunction apply(const GenSpec& g, const WaveFunction& f, const SWRep& rep) {
  const std::int64_t n = rep.N();
  switch (g.kind) {
    case GenSpec::Kind::x: return act_tx(g.elem, f, rep);
    case GenSpec::Kind::y: return act_ty(g.elem, f, rep);
    case GenSpec::Kind::z: {
      // t_z^l with Tr(l) = a, i.e. l = a/2.
      const Fp half = Fp(2, n).inverse();
      return act_tz(CentralElem{Fp(g.a, n) * half, Fp(0, n)}, f, rep);
    }
    case GenSpec::Kind::u: return act_u(Fp(g.a, n), f, rep);
    case GenSpec::Kind::d: return act_d(Fp(g.a, n), f, rep);
    case GenSpec::Kind::s: return act_s(Fp(g.a, n), f, rep);
    case GenSpec::Kind::j: return act_j(f, rep);
    case GenSpec::Kind::r: return act_r(Fp(g.a, n), Fp(g.b, n), f, rep);
  }
  throw ConfigError("bad generator");
}

/// Row-major V x V complex matrix.
struct DenseMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<cplx> data;

  cplx& at(std::int64_t i, std::int64_t j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  cplx at(std::int64_t i, std::int64_t j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  cplx trace() const {
    cplx t = 0.0;
    for (std::int64_t i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
    return t;
  }
};

/// Dense matrix of any linear map on wave functions; column k is the image of delta_k.
template <typename Op>
DenseMatrix dense_matrix(Op&& op, const SWRep& rep) {
  const std::int64_t v = rep.V();
  if (v > rep.config().dense_cap)
    throw BudgetExceeded("dense matrix of size " + std::to_string(v) + " exceeds dense cap " +
                         std::to_string(rep.config().dense_cap));
  DenseMatrix m{v, v, std::vector<cplx>(static_cast<std::size_t>(v * v))};
  for (std::int64_t k = 0; k < v; ++k) {
    const WaveFunction col = op(WaveFunction::delta(rep.size(), static_cast<std::size_t>(k)));
    for (std::int64_t i = 0; i < v; ++i) m.at(i, k) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

inline DenseMatrix operator_matrix(const GenSpec& g, const SWRep& rep) {
  return dense_matrix([&](const WaveFunction& f) { return apply(g, f, rep); }, rep);
}

/// Trace of the operator, accumulated column by column (no dense storage).
template <typename Op>
cplx operator_trace(Op&& op, const SWRep& rep) {
  if (rep.V() > rep.config().dense_cap)
    throw BudgetExceeded("character needs V <= dense cap " + std::to_string(rep.config().dense_cap));
  cplx t = 0.0;
  for (std::int64_t k = 0; k < rep.V(); ++k)
    t += op(WaveFunction::delta(rep.size(), static_cast<std::size_t>(k)))[static_cast<std::size_t>(k)];
  return t;
}

inline cplx character(const GenSpec& g, const SWRep& rep) {
  return operator_trace([&](const WaveFunction& f) { return apply(g, f, rep); }, rep);
}

/// Closed form of the j character, (-2/N)^dim.
inline double j_character_expected(std::int64_t n, int dim) {
  return std::pow(static_cast<double>(legendre(-2, n)), dim);
}

// Projectors onto eigenstates of cyclic subgroups -------------------------

enum class Subgroup { x, y, z, u, d, s, r };

/// Number of characters of the subgroup: V for x and y, N for z, u, d,
/// N-1 for s, N+1 for r.
inline std::int64_t subgroup_order(Subgroup g, const SWRep& rep) {
  switch (g) {
    case Subgroup::x:
    case Subgroup::y: return rep.V();
    case Subgroup::z:
    case Subgroup::u:
    case Subgroup::d: return rep.N();
    case Subgroup::s: return rep.N() - 1;
    case Subgroup::r: return rep.N() + 1;
  }
  return 0;
}

/// Applies the averaged character sum of the chosen subgroup,
///   (1/|G|) sum_g conj(chi_index(g)) T(g) f.
/// For x and y the index is the enumeration index of eta in S.
inline WaveFunction projector(const WaveFunction& f, Subgroup g, std::int64_t index, const SWRep& rep) {
  require_size(f, rep);
  const std::int64_t order = subgroup_order(g, rep);
  if (index < 0 || index >= order)
    throw IndexOutOfRange("projector index " + std::to_string(index) + " outside [0," + std::to_string(order) + ")");
  const std::int64_t n = rep.N();
  const auto& fc = rep.config().field;
  WaveFunction out(f.size());
  switch (g) {
    case Subgroup::x: {
      // (1/V) sum_h e(-Tr eta h) t_x^h keeps only the Fourier mode sigma = eta
      WaveFunction ft = rep.character_transform(f, 2, false);
      WaveFunction kept(f.size());
      kept[static_cast<std::size_t>(index)] = ft[static_cast<std::size_t>(index)];
      return (1.0 / static_cast<double>(rep.V())) * rep.character_transform(kept, -2, false);
    }
    case Subgroup::y: {
      // keeps f(k) iff 2 s_a eta_a + 4 w0 e_a k_a = 0 on every axis
      const auto eta = rep.coords(rep.indexer().element(index));
      for (std::int64_t k = 0; k < rep.V(); ++k) {
        bool keep = true;
        for (int a = 0; a < rep.dim() && keep; ++a)
          keep = reduce(2 * rep.product_sign(a) * eta[a] + 4 * rep.w0() * rep.norm_sign(a) * rep.digit(k, a), n) == 0;
        if (keep) out[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)];
      }
      return out;
    }
    case Subgroup::z:
      return index == rep.w0() ? f : out;
    case Subgroup::u:
      for (std::int64_t k = 0; k < rep.V(); ++k)
        if (reduce(2 * rep.w0() * rep.norm_id(k) - index, n) == 0) out[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)];
      return out;
    case Subgroup::d:
      for (std::int64_t c = 0; c < n; ++c) out += rep.e()(-index * c) * act_d(Fp(c, n), f, rep);
      out *= 1.0 / static_cast<double>(n);
      return out;
    case Subgroup::s: {
      const Fp gen = base_generator(fc);
      Fp a = fc.scalar(1);
      for (std::int64_t t = 0; t < n - 1; ++t, a *= gen) {
        const cplx w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(index * t % (n - 1)) / static_cast<double>(n - 1));
        out += w * act_s(a, f, rep);
      }
      out *= 1.0 / static_cast<double>(n - 1);
      return out;
    }
    case Subgroup::r: {
      const auto circle = circle_subgroup(fc);
      for (std::int64_t m = 0; m <= n; ++m) {
        const cplx w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(index * m % (n + 1)) / static_cast<double>(n + 1));
        const Ext& z = circle[static_cast<std::size_t>(m)];
        out += w * act_r(z.a, z.b, f, rep);
      }
      out *= 1.0 / static_cast<double>(n + 1);
      return out;
    }
  }
  return out;
}

}  // namespace heisenrep
