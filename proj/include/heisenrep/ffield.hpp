#pragma once

/**
 * @file ffield.hpp
 * @brief Prime field F_N, its quadratic extension F_{N^2}, and the complex
 * valued character sums built on them.
 *
 * Field elements carry their modulus so that arithmetic between elements of
 * different fields is caught instead of silently reduced. Everything here is
 * exact except the complex layer (additive characters, Gauss sums), which
 * works in double precision.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heisenrep/error.hpp"

namespace heisenrep {

using cplx = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// Trial division. Inputs are desk-scale, so this is never the bottleneck.
constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr std::int64_t reduce(std::int64_t x, std::int64_t n) {
  x %= n;
  return x < 0 ? x + n : x;
}

/// Representative of x mod n in (-n/2, n/2]. For odd n the lift is odd:
/// lift(-x) = -lift(x).
constexpr std::int64_t symmetric_lift(std::int64_t x, std::int64_t n) {
  x = reduce(x, n);
  return 2 * x > n ? x - n : x;
}

constexpr std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t n) {
  std::int64_t result = 1 % n;
  base = reduce(base, n);
  while (exp > 0) {
    if (exp & 1) result = result * base % n;
    base = base * base % n;
    exp >>= 1;
  }
  return result;
}

/// Element of F_N. The default-constructed value is an invalid placeholder
/// (modulus 0) and must be assigned before use.
class Fp {
 public:
  constexpr Fp() = default;
  constexpr Fp(std::int64_t value, std::int64_t modulus)
      : v_(reduce(value, modulus)), n_(modulus) {}

  constexpr std::int64_t value() const { return v_; }
  constexpr std::int64_t modulus() const { return n_; }
  constexpr bool is_zero() const { return v_ == 0; }
  constexpr std::int64_t lift() const { return symmetric_lift(v_, n_); }

  constexpr Fp operator-() const { return {-v_, n_}; }
  constexpr Fp& operator+=(Fp o) { check(o); v_ = reduce(v_ + o.v_, n_); return *this; }
  constexpr Fp& operator-=(Fp o) { check(o); v_ = reduce(v_ - o.v_, n_); return *this; }
  constexpr Fp& operator*=(Fp o) { check(o); v_ = v_ * o.v_ % n_; return *this; }
  constexpr Fp& operator/=(Fp o) { return *this *= o.inverse(); }
  friend constexpr Fp operator+(Fp a, Fp b) { return a += b; }
  friend constexpr Fp operator-(Fp a, Fp b) { return a -= b; }
  friend constexpr Fp operator*(Fp a, Fp b) { return a *= b; }
  friend constexpr Fp operator/(Fp a, Fp b) { return a /= b; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.n_ == b.n_; }

  constexpr Fp pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    return {pow_mod(v_, e, n_), n_};
  }

  /// Fermat inverse; N is prime.
  constexpr Fp inverse() const {
    if (v_ == 0) throw ZeroScale("inverse of zero in F_" + std::to_string(n_));
    return {pow_mod(v_, n_ - 2, n_), n_};
  }

 private:
  constexpr void check(Fp o) const {
    if (o.n_ != n_) throw ConfigError("mixed moduli in field arithmetic");
  }

  std::int64_t v_ = 0;
  std::int64_t n_ = 0;
};

/// Legendre symbol (a/N) via Euler's criterion.
constexpr int legendre(std::int64_t a, std::int64_t n) {
  a = reduce(a, n);
  if (a == 0) return 0;
  return pow_mod(a, (n - 1) / 2, n) == 1 ? 1 : -1;
}
constexpr int legendre(Fp a) { return legendre(a.value(), a.modulus()); }

/// Smallest positive quadratic non-residue mod N.
constexpr std::int64_t find_nonresidue(std::int64_t n) {
  for (std::int64_t a = 2; a < n; ++a)
    if (legendre(a, n) == -1) return a;
  throw ConfigError("no quadratic non-residue mod " + std::to_string(n));
}

/// Odd prime modulus plus the non-residue delta defining F_{N^2} = F_N(sqrt delta).
struct FieldConfig {
  std::int64_t N = 3;
  std::int64_t delta = 2;

  static FieldConfig make(std::int64_t n, std::optional<std::int64_t> delta = std::nullopt) {
    if (!is_prime(n) || n == 2)
      throw ConfigError("N not prime: " + std::to_string(n) + " (an odd prime is required)");
    FieldConfig cfg{n, delta ? reduce(*delta, n) : find_nonresidue(n)};
    if (legendre(cfg.delta, n) != -1)
      throw ConfigError("delta=" + std::to_string(cfg.delta) + " is not a non-residue mod " +
                        std::to_string(n));
    return cfg;
  }

  Fp scalar(std::int64_t v) const { return {v, N}; }
  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

/// Element a + sqrt(delta) b of F_{N^2}.
struct Ext {
  Fp a;
  Fp b;
  std::int64_t delta = 0;

  static Ext make(const FieldConfig& cfg, std::int64_t a, std::int64_t b) {
    return {cfg.scalar(a), cfg.scalar(b), cfg.delta};
  }
  std::int64_t modulus() const { return a.modulus(); }
  Fp dl() const { return {delta, modulus()}; }

  friend Ext operator*(const Ext& x, const Ext& y) {
    return {x.a * y.a + x.dl() * x.b * y.b, x.a * y.b + x.b * y.a, x.delta};
  }
  friend bool operator==(const Ext& x, const Ext& y) { return x.a == y.a && x.b == y.b; }

  Ext conj() const { return {a, -b, delta}; }
  /// Extension norm a^2 - delta b^2.
  Fp norm() const { return a * a - dl() * b * b; }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  Ext pow(std::int64_t e) const {
    Ext result{Fp(1, modulus()), Fp(0, modulus()), delta};
    Ext base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }
};

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// True iff z has multiplicative order exactly `order` (which must be a
/// multiple of the true order for the answer to be meaningful).
inline bool has_exact_order(const Ext& z, std::int64_t order) {
  const Ext one = Ext{Fp(1, z.modulus()), Fp(0, z.modulus()), z.delta};
  if (!(z.pow(order) == one)) return false;
  for (auto p : prime_factors(order))
    if (z.pow(order / p) == one) return false;
  return true;
}

/// Lexicographically smallest (a, b) generating F_{N^2}^x (order N^2 - 1).
inline Ext ext_generator(const FieldConfig& cfg) {
  const std::int64_t order = cfg.N * cfg.N - 1;
  for (std::int64_t a = 0; a < cfg.N; ++a)
    for (std::int64_t b = 0; b < cfg.N; ++b) {
      if (a == 0 && b == 0) continue;
      Ext z = Ext::make(cfg, a, b);
      if (has_exact_order(z, order)) return z;
    }
  throw ConfigError("F_{N^2} has no generator; is delta a non-residue?");
}

/// z^{N+1}: a generator of F_N^x.
inline Fp base_generator(const FieldConfig& cfg) {
  Ext g = ext_generator(cfg).pow(cfg.N + 1);
  return g.a;
}

/// The unit-norm circle U = {z^{(N-1)m} : m = 0..N} in order of m.
inline std::vector<Ext> circle_subgroup(const FieldConfig& cfg) {
  Ext step = ext_generator(cfg).pow(cfg.N - 1);
  std::vector<Ext> out;
  Ext cur = Ext::make(cfg, 1, 0);
  for (std::int64_t m = 0; m <= cfg.N; ++m) {
    out.push_back(cur);
    cur = cur * step;
  }
  return out;
}

/// exp(2 pi i a / N).
inline cplx additive_character(std::int64_t n, std::int64_t a) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduce(a, n)) / static_cast<double>(n);
  return std::polar(1.0, angle);
}
inline cplx additive_character(Fp a) { return additive_character(a.modulus(), a.value()); }

/// Quadratic Gauss sum G(1,N) = sum_a exp(2 pi i a^2 / N), summed directly.
inline cplx gauss_sum(std::int64_t n) {
  cplx sum = 0.0;
  for (std::int64_t a = 0; a < n; ++a) sum += additive_character(n, a * a);
  return sum;
}

/// sqrt(N) when N = 1 mod 4, i sqrt(N) when N = 3 mod 4.
inline cplx gauss_sum_closed_form(std::int64_t n) {
  const double r = std::sqrt(static_cast<double>(n));
  return n % 4 == 1 ? cplx(r, 0.0) : cplx(0.0, r);
}

/// Table of exp(2 pi i t / N) for t in [0, N).
class CharacterTable {
 public:
  explicit CharacterTable(std::int64_t n) : n_(n), values_(static_cast<std::size_t>(n)) {
    for (std::int64_t t = 0; t < n; ++t) values_[static_cast<std::size_t>(t)] = additive_character(n, t);
  }
  cplx operator()(std::int64_t t) const { return values_[static_cast<std::size_t>(reduce(t, n_))]; }
  std::int64_t modulus() const { return n_; }

 private:
  std::int64_t n_;
  std::vector<cplx> values_;
};

}  // namespace heisenrep
