#pragma once

/**
 * @file heis.hpp
 * @brief The Heisenberg group H_*(S) over a subspace S of C4 (x) Q(F_N),
 * its 4x4 matrix realisation, and the automorphisms induced by SL(2, F_N)
 * and the diagonal group D(A_0^x).
 *
 * An element (p, q, z) stands for t_x^p t_y^q t_z^z, where z = tr(t) is kept
 * as a full central element (identity and e123 components).
 */

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heisenrep/cqalg.hpp"
#include "heisenrep/error.hpp"
#include "heisenrep/ffield.hpp"

namespace heisenrep {

struct HeisElem {
  AlgElem p;
  AlgElem q;
  CentralElem z;

  static HeisElem identity(std::int64_t n) { return {AlgElem(n), AlgElem(n), CentralElem::zero(n)}; }
  static HeisElem tx(const AlgElem& p) { return {p, AlgElem(p.modulus()), CentralElem::zero(p.modulus())}; }
  static HeisElem ty(const AlgElem& q) { return {AlgElem(q.modulus()), q, CentralElem::zero(q.modulus())}; }
  static HeisElem tz(const CentralElem& z) { return {AlgElem(z.modulus()), AlgElem(z.modulus()), z}; }

  std::int64_t modulus() const { return p.modulus(); }
  friend bool operator==(const HeisElem&, const HeisElem&) = default;
};

/// (p,q,z)(p',q',z') = (p+p', q+q', z+z' - tr(q p'*)).
inline HeisElem heis_mul(const HeisElem& g, const HeisElem& h) {
  return {g.p + h.p, g.q + h.q, g.z + h.z - trace(g.q * star(h.p))};
}

inline HeisElem heis_inverse(const HeisElem& g) {
  return {-g.p, -g.q, CentralElem::zero(g.modulus()) - g.z - trace(g.q * star(g.p))};
}

/// g h g^-1 h^-1.
inline HeisElem heis_commutator(const HeisElem& g, const HeisElem& h) {
  return heis_mul(heis_mul(g, h), heis_mul(heis_inverse(g), heis_inverse(h)));
}

inline void require_in(const Subspace& s, const HeisElem& h) {
  if (!s.contains(h.p) || !s.contains(h.q))
    throw SubspaceMismatch("Heisenberg element not over subspace " + s.label());
}

/// heis_mul with both factors checked against S.
inline HeisElem heis_mul(const HeisElem& g, const HeisElem& h, const Subspace& s) {
  require_in(s, g);
  require_in(s, h);
  return heis_mul(g, h);
}

using AlgMatrix4 = std::array<std::array<AlgElem, 4>, 4>;

/// The 4x4 algebra-valued matrix
///   [1 0 0 q*; p 1 q z+pq*; 0 0 1 -p*; 0 0 0 1].
inline AlgMatrix4 matrix_form(const HeisElem& g) {
  const std::int64_t n = g.modulus();
  const AlgElem zero(n), one = AlgElem::scalar(n, 1);
  AlgMatrix4 m;
  for (auto& row : m) row.fill(zero);
  for (int i = 0; i < 4; ++i) m[i][i] = one;
  m[0][3] = star(g.q);
  m[1][0] = g.p;
  m[1][2] = g.q;
  m[1][3] = g.z.to_alg() + g.p * star(g.q);
  m[2][3] = -star(g.p);
  return m;
}

inline AlgMatrix4 matmul(const AlgMatrix4& a, const AlgMatrix4& b) {
  AlgMatrix4 c;
  const std::int64_t n = a[0][0].modulus();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      AlgElem acc(n);
      for (int k = 0; k < 4; ++k) acc = acc + a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  return c;
}

/// Element of SL(2, F_N) acting on H(S) by conjugation.
struct SL2Elem {
  Fp a, b, c, d;

  static SL2Elem make(Fp a, Fp b, Fp c, Fp d) {
    SL2Elem g{a, b, c, d};
    if (!(g.det() == Fp(1, a.modulus())))
      throw ConfigError("SL2 element with determinant " + std::to_string(g.det().value()));
    return g;
  }
  static SL2Elem make(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return make(Fp(a, n), Fp(b, n), Fp(c, n), Fp(d, n));
  }
  static SL2Elem identity(std::int64_t n) { return make(n, 1, 0, 0, 1); }

  std::int64_t modulus() const { return a.modulus(); }
  Fp det() const { return a * d - b * c; }
  SL2Elem inverse() const { return {d, -b, -c, a}; }

  friend SL2Elem operator*(const SL2Elem& x, const SL2Elem& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const SL2Elem&, const SL2Elem&) = default;
};

/// Generators of SL(2, F_N) used in words.
enum class GenKind { u, d, s, j, r };

struct Gen {
  GenKind kind;
  Fp x;  ///< b for t_u, c for t_d, a for t_s and t_r
  Fp y;  ///< b for t_r; unused otherwise

  static Gen u(Fp b) { return {GenKind::u, b, Fp(0, b.modulus())}; }
  static Gen d(Fp c) { return {GenKind::d, c, Fp(0, c.modulus())}; }
  static Gen s(Fp a) { return {GenKind::s, a, Fp(0, a.modulus())}; }
  static Gen j(std::int64_t n) { return {GenKind::j, Fp(0, n), Fp(0, n)}; }
  static Gen r(Fp a, Fp b) { return {GenKind::r, a, b}; }

  std::string to_string() const {
    switch (kind) {
      case GenKind::u: return "u" + std::to_string(x.value());
      case GenKind::d: return "d" + std::to_string(x.value());
      case GenKind::s: return "s" + std::to_string(x.value());
      case GenKind::j: return "j";
      case GenKind::r: return "r" + std::to_string(x.value()) + "," + std::to_string(y.value());
    }
    return "?";
  }
  friend bool operator==(const Gen&, const Gen&) = default;
};

using Word = std::vector<Gen>;

/// 2x2 matrix of a generator: t_u = [1 b; 0 1], t_d = [1 0; c 1],
/// t_s = diag(a, 1/a), j = [0 1; -1 0], t_r = [a b delta; b a].
inline SL2Elem gen_matrix(const Gen& g, const FieldConfig& cfg) {
  const std::int64_t n = cfg.N;
  const Fp zero(0, n), one(1, n);
  switch (g.kind) {
    case GenKind::u: return {one, g.x, zero, one};
    case GenKind::d: return {one, zero, g.x, one};
    case GenKind::s: return {g.x, zero, zero, g.x.inverse()};
    case GenKind::j: return {zero, one, -one, zero};
    case GenKind::r: {
      if (!(g.x * g.x - cfg.scalar(cfg.delta) * g.y * g.y == one))
        throw NotOnCircle("t_r parameter off the unit circle");
      return {g.x, g.y * cfg.scalar(cfg.delta), g.y, g.x};
    }
  }
  throw ConfigError("bad generator");
}

inline SL2Elem word_matrix(const Word& w, const FieldConfig& cfg) {
  SL2Elem m = SL2Elem::identity(cfg.N);
  for (const auto& g : w) m = m * gen_matrix(g, cfg);
  return m;
}

inline Gen gen_inverse(const Gen& g, const FieldConfig& cfg) {
  switch (g.kind) {
    case GenKind::u: return Gen::u(-g.x);
    case GenKind::d: return Gen::d(-g.x);
    case GenKind::s: return Gen::s(g.x.inverse());
    case GenKind::j: return Gen::j(cfg.N);  // caller must follow with t_s(-1); see word_inverse
    case GenKind::r: return Gen::r(g.x, -g.y);
  }
  return g;
}

/// Inverse word, with j^-1 = j t_s^-1.
inline Word word_inverse(const Word& w, const FieldConfig& cfg) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(gen_inverse(*it, cfg));
    if (it->kind == GenKind::j) out.push_back(Gen::s(cfg.scalar(-1)));
  }
  return out;
}

/// g (p,q,z) g^-1 for a general g = [a b; c d]:
///   (pd - qc, qa - pb, z + bd n(p) + ac n(q) - bc tr(pq*)).
inline HeisElem sl2_conjugate(const SL2Elem& g, const HeisElem& h) {
  const AlgElem p2 = g.d * h.p - g.c * h.q;
  const AlgElem q2 = g.a * h.q - g.b * h.p;
  const CentralElem z2 = h.z + (g.b * g.d) * norm(h.p) + (g.a * g.c) * norm(h.q) -
                         (g.b * g.c) * trace(h.p * star(h.q));
  return {p2, q2, z2};
}

/// The five generator automorphisms in closed form.
inline HeisElem sl2_conjugate(const Gen& g, const HeisElem& h, const FieldConfig& cfg) {
  const auto& [p, q, z] = h;
  switch (g.kind) {
    case GenKind::s: {
      const Fp a = g.x;
      return {a.inverse() * p, a * q, z};
    }
    case GenKind::d: {
      const Fp c = g.x;
      return {p - c * q, q, z + c * norm(q)};
    }
    case GenKind::u: {
      const Fp b = g.x;
      return {p, q - b * p, z + b * norm(p)};
    }
    case GenKind::j:
      return {q, -p, z + trace(p * star(q))};
    case GenKind::r: {
      const Fp a = g.x, b = g.y, dl = cfg.scalar(cfg.delta);
      const AlgElem p2 = a * p - b * q;
      const AlgElem q2 = a * q - (b * dl) * p;
      return {p2, q2, z + CentralElem::from(p * star(q) - p2 * star(q2))};
    }
  }
  throw ConfigError("bad generator");
}

/// w h w^-1 for a word w = g1 g2 ... gk (gk acts first).
inline HeisElem sl2_conjugate(const Word& w, const HeisElem& h, const FieldConfig& cfg) {
  HeisElem out = h;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = sl2_conjugate(*it, out, cfg);
  return out;
}

/// Canonical word over {t_u, j, t_s}. For c != 0 the word is
/// t_u^{a/c} j t_s^{-c} t_u^{d/c}; for c = 0 it is t_s^a t_u^{b/a}. Identity
/// factors are dropped, and the result is checked by multiplying it out.
inline Word sl2_word(const SL2Elem& g, const FieldConfig& cfg) {
  if (!(g.det() == cfg.scalar(1))) throw ConfigError("sl2_word: determinant is not 1");
  Word w;
  auto push = [&](const Gen& x) {
    if (x.kind == GenKind::u && x.x.is_zero()) return;
    if (x.kind == GenKind::s && x.x == cfg.scalar(1)) return;
    w.push_back(x);
  };
  if (!g.c.is_zero()) {
    const Fp ci = g.c.inverse();
    push(Gen::u(g.a * ci));
    push(Gen::j(cfg.N));
    push(Gen::s(-g.c));
    push(Gen::u(g.d * ci));
  } else {
    push(Gen::s(g.a));
    push(Gen::u(g.b / g.a));
  }
  if (!(word_matrix(w, cfg) == g)) throw ConfigError("sl2_word: decomposition failed to validate");
  return w;
}

/// Two factorisations of t_r^{a + sqrt(delta) b}:
/// t_d^{b/a} t_s^a t_u^{b delta/a} (a != 0) and t_u^{(a-1)/b} t_d^b t_u^{(a-1)/b} (b != 0).
inline std::optional<Word> circle_word_scaling(Fp a, Fp b, const FieldConfig& cfg) {
  if (a.is_zero()) return std::nullopt;
  return Word{Gen::d(b / a), Gen::s(a), Gen::u(b * cfg.scalar(cfg.delta) / a)};
}
inline std::optional<Word> circle_word_shear(Fp a, Fp b, const FieldConfig& cfg) {
  (void)cfg;
  if (b.is_zero()) return std::nullopt;
  const Fp x = (a - Fp(1, a.modulus())) / b;
  return Word{Gen::u(x), Gen::d(b), Gen::u(x)};
}

/// t_A^{r,s} with r, s of unit norm.
struct DiagElem {
  AlgElem r;
  AlgElem s;

  static DiagElem make(const AlgElem& r, const AlgElem& s) {
    if (!is_unit_norm(r) || !is_unit_norm(s))
      throw NotUnitNorm("diagonal element needs n(r) = n(s) = 1");
    return {r, s};
  }
};

/// (s p r^-1, s q r^-1, z).
inline HeisElem diag_conjugate(const DiagElem& d, const HeisElem& h) {
  if (!is_unit_norm(d.r) || !is_unit_norm(d.s)) throw NotUnitNorm("diag_conjugate needs unit-norm r, s");
  const AlgElem rinv = star(d.r);
  return {d.s * h.p * rinv, d.s * h.q * rinv, h.z};
}

/// True iff s^-1 S r lands in S (checked on the basis), i.e. k -> s^-1 k r
/// is a bijection of S.
inline bool preserves(const DiagElem& d, const Subspace& sub) {
  const std::int64_t n = d.r.modulus();
  const AlgElem sinv = star(d.s);
  for (int a : sub.axes()) {
    if (!sub.contains(sinv * AlgElem::basis(n, a) * d.r)) return false;
    if (!sub.contains(d.s * AlgElem::basis(n, a) * star(d.r))) return false;
  }
  return true;
}

/// Membership test for SL_*(2, A): 1 = ad* - bc*, 0 = cd* - dc* = -ab* + ba*,
/// and the same relations for the inverse.
inline bool is_sl_star(const AlgElem& a, const AlgElem& b, const AlgElem& c, const AlgElem& d) {
  const std::int64_t n = a.modulus();
  const AlgElem one = AlgElem::scalar(n, 1), zero(n);
  return a * star(d) - b * star(c) == one && c * star(d) - d * star(c) == zero &&
         b * star(a) - a * star(b) == zero && star(a) * d - star(c) * b == one &&
         star(a) * c - star(c) * a == zero && star(b) * d - star(d) * b == zero;
}

}  // namespace heisenrep
