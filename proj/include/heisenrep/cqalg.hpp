#pragma once

/**
 * @file cqalg.hpp
 * @brief The complex quaternion group algebra C4 (x) Q over F_N.
 *
 * Elements are written over the ordered basis
 *
 *     [1, e1, e2, e3, e12, e23, e31, e123]
 *
 * with e_i^2 = 1, e_i e_j = e_ij, (e_ij)^2 = -1 and e123 central with
 * e123^2 = -1. Multiplication goes through a signed structure-constant table
 * generated once from the generator relations, so it works for every odd N
 * (the 2x2 complex matrix picture would need sqrt(-1) in F_N).
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "heisenrep/error.hpp"
#include "heisenrep/ffield.hpp"

namespace heisenrep {

inline constexpr int kAlgebraDim = 8;

inline constexpr std::array<std::string_view, kAlgebraDim> kBasisNames = {
    "1", "e1", "e2", "e3", "e12", "e23", "e31", "e123"};

/// Diagonal of the identity component of the norm, N(x) = sum sign_i x_i^2.
inline constexpr std::array<int, kAlgebraDim> kNormSigns = {1, -1, -1, -1, 1, 1, 1, -1};

/// Diagonal of the identity component of a product, (xy)_0 = sum sign_i x_i y_i.
inline constexpr std::array<int, kAlgebraDim> kProductSigns = {1, 1, 1, 1, -1, -1, -1, -1};

enum class Involution { eta, xi, star };

inline constexpr std::array<int, kAlgebraDim> involution_signs(Involution kind) {
  switch (kind) {
    case Involution::eta: return {1, -1, -1, -1, 1, 1, 1, -1};
    case Involution::xi: return {1, 1, 1, 1, -1, -1, -1, -1};
    case Involution::star: return {1, -1, -1, -1, -1, -1, -1, 1};
  }
  return {};
}

/// e_i * e_j = sign[i][j] * e_{index[i][j]}.
struct StructureTable {
  std::array<std::array<int, kAlgebraDim>, kAlgebraDim> sign{};
  std::array<std::array<int, kAlgebraDim>, kAlgebraDim> index{};

  /// Builds the table from Euclidean Clifford blades over e1, e2, e3. Basis
  /// element k is blade kBlade[k] times kOrientation[k] (e31 = -e1 e3).
  static StructureTable from_generators() {
    constexpr std::array<unsigned, kAlgebraDim> kBlade = {0b000, 0b001, 0b010, 0b100,
                                                          0b011, 0b110, 0b101, 0b111};
    constexpr std::array<int, kAlgebraDim> kOrientation = {1, 1, 1, 1, 1, 1, -1, 1};
    auto position = [&](unsigned blade) {
      return static_cast<int>(std::find(kBlade.begin(), kBlade.end(), blade) - kBlade.begin());
    };
    StructureTable t;
    for (int i = 0; i < kAlgebraDim; ++i)
      for (int j = 0; j < kAlgebraDim; ++j) {
        const unsigned a = kBlade[i], b = kBlade[j];
        int swaps = 0;
        for (unsigned s = a >> 1; s; s >>= 1) swaps += std::popcount(s & b);
        const int k = position(a ^ b);
        t.index[i][j] = k;
        t.sign[i][j] = (swaps % 2 ? -1 : 1) * kOrientation[i] * kOrientation[j] * kOrientation[k];
      }
    return t;
  }

  static const StructureTable& standard() {
    static const StructureTable table = from_generators();
    return table;
  }
};

/// Element x0 1 + x1 e1 + ... + x7 e123 of C4 (x) Q(F_N).
class AlgElem {
 public:
  AlgElem() = default;
  explicit AlgElem(std::int64_t modulus) : n_(modulus) {}
  AlgElem(std::int64_t modulus, const std::array<std::int64_t, kAlgebraDim>& coeffs) : n_(modulus) {
    for (int i = 0; i < kAlgebraDim; ++i) c_[i] = reduce(coeffs[i], modulus);
  }

  static AlgElem zero(std::int64_t n) { return AlgElem(n); }
  static AlgElem scalar(std::int64_t n, std::int64_t v) { return basis(n, 0, v); }
  static AlgElem basis(std::int64_t n, int i, std::int64_t v = 1) {
    AlgElem x(n);
    x.c_[i] = reduce(v, n);
    return x;
  }

  std::int64_t modulus() const { return n_; }
  std::int64_t operator[](int i) const { return c_[i]; }
  Fp coeff(int i) const { return {c_[i], n_}; }
  void set(int i, std::int64_t v) { c_[i] = reduce(v, n_); }
  const std::array<std::int64_t, kAlgebraDim>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
  }
  /// Supported on span{1, e123}.
  bool is_central() const {
    for (int i = 1; i < 7; ++i)
      if (c_[i]) return false;
    return true;
  }

  AlgElem operator-() const {
    AlgElem r(n_);
    for (int i = 0; i < kAlgebraDim; ++i) r.c_[i] = reduce(-c_[i], n_);
    return r;
  }
  friend AlgElem operator+(const AlgElem& x, const AlgElem& y) {
    AlgElem r(x.n_);
    for (int i = 0; i < kAlgebraDim; ++i) r.c_[i] = reduce(x.c_[i] + y.c_[i], x.n_);
    return r;
  }
  friend AlgElem operator-(const AlgElem& x, const AlgElem& y) { return x + (-y); }
  friend AlgElem operator*(Fp a, const AlgElem& x) {
    AlgElem r(x.n_);
    for (int i = 0; i < kAlgebraDim; ++i) r.c_[i] = a.value() * x.c_[i] % x.n_;
    return r;
  }
  friend AlgElem operator*(const AlgElem& x, const AlgElem& y);

  friend bool operator==(const AlgElem& x, const AlgElem& y) { return x.n_ == y.n_ && x.c_ == y.c_; }
  friend auto operator<=>(const AlgElem& x, const AlgElem& y) { return x.c_ <=> y.c_; }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < kAlgebraDim; ++i) {
      if (!c_[i]) continue;
      if (!out.empty()) out += " + ";
      out += std::to_string(c_[i]);
      if (i) out += std::string(kBasisNames[i]);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::int64_t n_ = 0;
  std::array<std::int64_t, kAlgebraDim> c_{};
};

inline AlgElem mul(const AlgElem& x, const AlgElem& y, const StructureTable& table) {
  const std::int64_t n = x.modulus();
  std::array<std::int64_t, kAlgebraDim> acc{};
  for (int i = 0; i < kAlgebraDim; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < kAlgebraDim; ++j) {
      if (!y[j]) continue;
      acc[table.index[i][j]] += table.sign[i][j] * (x[i] * y[j] % n);
    }
  }
  return AlgElem(n, acc);
}
inline AlgElem mul(const AlgElem& x, const AlgElem& y) { return mul(x, y, StructureTable::standard()); }
inline AlgElem operator*(const AlgElem& x, const AlgElem& y) { return mul(x, y); }

inline AlgElem involution(const AlgElem& x, Involution kind) {
  const auto signs = involution_signs(kind);
  AlgElem r(x.modulus());
  for (int i = 0; i < kAlgebraDim; ++i) r.set(i, signs[i] * x[i]);
  return r;
}
inline AlgElem eta(const AlgElem& x) { return involution(x, Involution::eta); }
inline AlgElem xi(const AlgElem& x) { return involution(x, Involution::xi); }
inline AlgElem star(const AlgElem& x) { return involution(x, Involution::star); }

/// c0 1 + c7 e123: an element of the center.
struct CentralElem {
  Fp c0;
  Fp c7;

  static CentralElem zero(std::int64_t n) { return {Fp(0, n), Fp(0, n)}; }
  static CentralElem one(std::int64_t n) { return {Fp(1, n), Fp(0, n)}; }
  static CentralElem from(const AlgElem& x) {
    if (!x.is_central()) throw SubspaceMismatch("element " + x.to_string() + " is not central");
    return {x.coeff(0), x.coeff(7)};
  }
  std::int64_t modulus() const { return c0.modulus(); }
  AlgElem to_alg() const {
    AlgElem x(modulus());
    x.set(0, c0.value());
    x.set(7, c7.value());
    return x;
  }

  friend CentralElem operator+(CentralElem a, CentralElem b) { return {a.c0 + b.c0, a.c7 + b.c7}; }
  friend CentralElem operator-(CentralElem a, CentralElem b) { return {a.c0 - b.c0, a.c7 - b.c7}; }
  friend CentralElem operator*(Fp s, CentralElem a) { return {s * a.c0, s * a.c7}; }
  friend CentralElem operator*(CentralElem a, CentralElem b) {
    return {a.c0 * b.c0 - a.c7 * b.c7, a.c0 * b.c7 + a.c7 * b.c0};
  }
  friend bool operator==(const CentralElem&, const CentralElem&) = default;

  /// Solves u v = 1 as the 2x2 system [[c0, -c7], [c7, c0]] v = (1, 0).
  std::optional<CentralElem> try_inverse() const {
    const Fp det = c0 * c0 + c7 * c7;
    if (det.is_zero()) return std::nullopt;
    const Fp inv = det.inverse();
    return CentralElem{c0 * inv, -c7 * inv};
  }
};

/// tr(x) = x + x*.
inline CentralElem trace(const AlgElem& x) { return CentralElem::from(x + star(x)); }
/// Identity component of the trace, Tr(x) = 2 x0.
inline Fp trace_id(const AlgElem& x) { return Fp(2 * x[0], x.modulus()); }

/// n(x) = x x*.
inline CentralElem norm(const AlgElem& x) { return CentralElem::from(x * star(x)); }
inline CentralElem norm(const AlgElem& x, const StructureTable& table) {
  return CentralElem::from(mul(x, star(x), table));
}
/// Identity component N(x) = x0^2 - x1^2 - x2^2 - x3^2 + x4^2 + x5^2 + x6^2 - x7^2.
inline Fp norm_id(const AlgElem& x) {
  std::int64_t s = 0;
  for (int i = 0; i < kAlgebraDim; ++i) s += kNormSigns[i] * (x[i] * x[i] % x.modulus());
  return {s, x.modulus()};
}

/// x^{-1} = x* n(x)^{-1}.
inline AlgElem inverse(const AlgElem& x) {
  const auto n = norm(x).try_inverse();
  if (!n) throw NonInvertible("norm of " + x.to_string() + " is not a unit of the center");
  return star(x) * n->to_alg();
}

/// Identity component of x y*, computed directly from the coefficients.
inline std::int64_t pairing_star_id(const AlgElem& x, const AlgElem& y) {
  std::int64_t s = 0;
  for (int i = 0; i < kAlgebraDim; ++i) s += kNormSigns[i] * (x[i] * y[i] % x.modulus());
  return reduce(s, x.modulus());
}

/// Additive subspace of the algebra spanned by a subset of basis elements.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::uint8_t mask, std::string label, std::string catalog_name = {},
           std::optional<std::pair<int, int>> table_signature = std::nullopt)
      : mask_(mask), label_(std::move(label)), catalog_name_(std::move(catalog_name)),
        table_signature_(table_signature) {
    for (int i = 0; i < kAlgebraDim; ++i)
      if (mask_ >> i & 1) {
        axes_.push_back(i);
        (kNormSigns[i] > 0 ? p_plus_ : q_minus_)++;
      }
  }

  static Subspace full() { return Subspace(0xFF, "full"); }
  static Subspace from_axes(const std::vector<int>& axes, std::string label = {}) {
    std::uint8_t mask = 0;
    for (int a : axes) {
      if (a < 0 || a >= kAlgebraDim) throw ConfigError("basis index out of range: " + std::to_string(a));
      mask |= static_cast<std::uint8_t>(1u << a);
    }
    if (label.empty()) label = "mask:" + std::to_string(mask);
    return Subspace(mask, std::move(label));
  }

  std::uint8_t mask() const { return mask_; }
  const std::vector<int>& axes() const { return axes_; }
  int dim() const { return static_cast<int>(axes_.size()); }
  /// Signature (positive, negative) of N restricted to the subspace.
  std::pair<int, int> signature() const { return {p_plus_, q_minus_}; }
  int q_minus() const { return q_minus_; }
  const std::string& label() const { return label_; }
  const std::string& catalog_name() const { return catalog_name_; }
  /// Signature as printed in the catalog; complex signature for the e123-complex rows.
  std::pair<int, int> table_signature() const { return table_signature_.value_or(signature()); }
  bool is_complex_row() const { return table_signature_.has_value(); }

  bool contains(const AlgElem& x) const {
    for (int i = 0; i < kAlgebraDim; ++i)
      if (!(mask_ >> i & 1) && x[i]) return false;
    return true;
  }

  /// N^dim, or BudgetExceeded once it passes `cap`.
  std::int64_t cardinality(std::int64_t n, std::int64_t cap = INT64_MAX) const {
    std::int64_t v = 1;
    for (int i = 0; i < dim(); ++i) {
      if (v > cap / n) throw BudgetExceeded(label_ + ": N^dim exceeds budget " + std::to_string(cap));
      v *= n;
    }
    if (v > cap) throw BudgetExceeded(label_ + ": N^dim exceeds budget " + std::to_string(cap));
    return v;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.mask_ == b.mask_; }

 private:
  std::uint8_t mask_ = 0;
  std::vector<int> axes_;
  int p_plus_ = 0;
  int q_minus_ = 0;
  std::string label_;
  std::string catalog_name_;
  std::optional<std::pair<int, int>> table_signature_;
};

/// Every catalogued subspace: the one-dimensional `span1`, the complex rows
/// (e123 as imaginary unit) and the rows over F_N.
inline std::vector<Subspace> subspace_catalog() {
  auto mk = [](std::vector<int> axes, std::string label, std::string name,
               std::optional<std::pair<int, int>> complex_sig = std::nullopt) {
    std::uint8_t mask = 0;
    for (int a : axes) mask |= static_cast<std::uint8_t>(1u << a);
    return Subspace(mask, std::move(label), std::move(name), complex_sig);
  };
  return {
      mk({0}, "span1", "F_N"),
      // complex rows
      mk({0, 7}, "c4", "C4(F_N)", std::pair{1, 0}),
      mk({0, 3, 4, 7}, "c2c4", "C2 x C4(F_N)", std::pair{2, 0}),
      mk({1, 2, 3, 4, 5, 6}, "imag6", "x - x^(xi eta)", std::pair{3, 0}),
      mk({0, 1, 2, 3, 4, 5, 6, 7}, "full", "C4 x Q(F_N)", std::pair{4, 0}),
      // rows over F_N
      mk({0, 4}, "c4r", "C4(F_N)"),
      mk({0, 1}, "c2", "C2(F_N)"),
      mk({4, 5, 6}, "q3", "x - x^xi in Q(F_N)"),
      mk({0, 1, 2}, "d4plus", "x + x^xi in D4(F_N)"),
      mk({0, 4, 5, 6}, "q", "Q(F_N)"),
      mk({0, 1, 2, 4}, "d4", "D4(F_N)"),
      mk({0, 1, 2, 3}, "lorentz", "x + x^xi in C4 x Q(F_N)"),
  };
}

/// Looks up a catalog label, or parses an explicit basis list such as
/// "1,e1,e12" or "mask:0,1,4".
inline Subspace find_subspace(const std::string& spec) {
  for (auto& s : subspace_catalog())
    if (s.label() == spec) return s;
  const bool numeric = spec.rfind("mask:", 0) == 0;
  std::string body = numeric ? spec.substr(5) : spec;
  std::vector<int> axes;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto it = numeric ? kBasisNames.end() : std::find(kBasisNames.begin(), kBasisNames.end(), tok);
    if (it != kBasisNames.end()) {
      axes.push_back(static_cast<int>(it - kBasisNames.begin()));
    } else {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        axes.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("unknown subspace '" + spec + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (axes.empty()) throw ConfigError("empty subspace '" + spec + "'");
  return Subspace::from_axes(axes, spec);
}

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

/// Mixed-radix indexing of S: element `idx` has masked coefficients given by
/// the base-N digits of idx, first axis most significant.
class SubspaceIndexer {
 public:
  SubspaceIndexer(std::int64_t n, Subspace s, std::int64_t budget = kDefaultEnumerationBudget)
      : n_(n), s_(std::move(s)), size_(s_.cardinality(n, budget)) {}

  std::int64_t size() const { return size_; }
  std::int64_t modulus() const { return n_; }
  const Subspace& subspace() const { return s_; }

  AlgElem element(std::int64_t idx) const {
    AlgElem x(n_);
    const auto& axes = s_.axes();
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      x.set(axes[a], idx % n_);
      idx /= n_;
    }
    return x;
  }

  std::int64_t index(const AlgElem& x) const {
    if (!s_.contains(x)) throw SubspaceMismatch(x.to_string() + " is not in subspace " + s_.label());
    std::int64_t idx = 0;
    for (int a : s_.axes()) idx = idx * n_ + x[a];
    return idx;
  }

 private:
  std::int64_t n_;
  Subspace s_;
  std::int64_t size_;
};

/// All N^dim elements of S, lexicographic in the masked coefficients.
inline std::vector<AlgElem> enumerate(const Subspace& s, std::int64_t n,
                                      std::int64_t budget = kDefaultEnumerationBudget) {
  SubspaceIndexer ix(n, s, budget);
  std::vector<AlgElem> out;
  out.reserve(static_cast<std::size_t>(ix.size()));
  for (std::int64_t i = 0; i < ix.size(); ++i) out.push_back(ix.element(i));
  return out;
}

/// Every l in S with N(l) = 0, including l = 0.
inline std::vector<AlgElem> null_vectors(const Subspace& s, std::int64_t n,
                                         std::int64_t budget = kDefaultEnumerationBudget) {
  SubspaceIndexer ix(n, s, budget);
  std::vector<AlgElem> out;
  for (std::int64_t i = 0; i < ix.size(); ++i) {
    AlgElem x = ix.element(i);
    if (norm_id(x).is_zero()) out.push_back(x);
  }
  return out;
}

/// A_0^x restricted to the carrier: every x with x x* = 1.
inline std::vector<AlgElem> unit_norm_group(const Subspace& s, std::int64_t n,
                                            std::int64_t budget = kDefaultEnumerationBudget) {
  SubspaceIndexer ix(n, s, budget);
  const CentralElem one = CentralElem::one(n);
  std::vector<AlgElem> out;
  for (std::int64_t i = 0; i < ix.size(); ++i) {
    AlgElem x = ix.element(i);
    if (norm_id(x).value() != 1) continue;
    if (norm(x) == one) out.push_back(x);
  }
  return out;
}

inline bool is_unit_norm(const AlgElem& x) { return norm(x) == CentralElem::one(x.modulus()); }

inline AlgElem random_element(const Subspace& s, std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  AlgElem x(n);
  for (int a : s.axes()) x.set(a, d(rng));
  return x;
}

/// Unit-norm elements with at most three nonzero coefficients. They
/// generate A_0^x (checked against full enumeration in the tests), so random
/// products of them sample the group without enumerating it.
inline std::vector<AlgElem> unit_norm_generators(std::int64_t n) {
  std::vector<AlgElem> out;
  std::set<AlgElem> seen;
  for (int i = 0; i < kAlgebraDim; ++i)
    for (int j = i + 1; j < kAlgebraDim; ++j)
      for (int k = j + 1; k < kAlgebraDim; ++k)
        for (std::int64_t a = 0; a < n; ++a)
          for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t c = 0; c < n; ++c) {
              AlgElem x(n);
              x.set(i, a);
              x.set(j, b);
              x.set(k, c);
              if (is_unit_norm(x) && seen.insert(x).second) out.push_back(x);
            }
  return out;
}

inline AlgElem random_unit_norm(std::int64_t n, std::mt19937_64& rng, int factors = 12) {
  static thread_local std::vector<AlgElem> cache;
  static thread_local std::int64_t cached_n = 0;
  if (cached_n != n) {
    cache = unit_norm_generators(n);
    cached_n = n;
  }
  std::uniform_int_distribution<std::size_t> pick(0, cache.size() - 1);
  AlgElem x = AlgElem::scalar(n, 1);
  for (int i = 0; i < factors; ++i) x = x * cache[pick(rng)];
  return x;
}

/// r^eta p r*: the norm-preserving action on the (1,3) subspace.
inline AlgElem lorentz_action(const AlgElem& r, const AlgElem& p) { return eta(r) * p * star(r); }

}  // namespace heisenrep
