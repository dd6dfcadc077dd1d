#pragma once

/**
 * @file verify.hpp
 * @brief Seeded property suites (algebra, heis, weil, diag, pderiv, ideal)
 * producing per-property pass/fail records.
 *
 * Reports contain no timings, so the same configuration and seed always
 * serialize to the same bytes.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "heisenrep/cqalg.hpp"
#include "heisenrep/heis.hpp"
#include "heisenrep/ideal.hpp"
#include "heisenrep/pderiv.hpp"
#include "heisenrep/serialize.hpp"
#include "heisenrep/swrep.hpp"

namespace heisenrep {

struct VerifyOptions {
  std::uint64_t seed = 1;
  double tol = kDefaultTolerance;
  int random_pairs = 1000;        ///< algebra / group-law samples
  int covariance_samples = 200;   ///< (w, h) pairs for representation covariance
  int function_samples = 20;      ///< random wave functions per operator identity
  std::int64_t oracle_cap = 243;  ///< largest V for O(V^3) reference sums
  std::int64_t projector_cap = 729;
};

enum class Status { pass, fail, skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

struct PropertyResult {
  std::string suite;
  std::string property;
  std::string identity;  ///< which relation is being checked
  Status status = Status::pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::int64_t samples = 0;
  json details = json::object();
};

class Report {
 public:
  void add(PropertyResult r) { results_.push_back(std::move(r)); }
  void append(const Report& o) { results_.insert(results_.end(), o.results_.begin(), o.results_.end()); }
  const std::vector<PropertyResult>& results() const { return results_; }

  std::int64_t count(Status s) const {
    return std::count_if(results_.begin(), results_.end(), [s](const auto& r) { return r.status == s; });
  }
  bool ok() const { return count(Status::fail) == 0; }

  const PropertyResult* find(const std::string& suite, const std::string& property) const {
    for (const auto& r : results_)
      if (r.suite == suite && r.property == property) return &r;
    return nullptr;
  }

  json to_json(const json& config, const std::string& suite) const {
    json rows = json::array();
    for (const auto& r : results_) {
      json row{{"suite", r.suite},     {"property", r.property},   {"identity", r.identity},
               {"status", heisenrep::to_string(r.status)}, {"residual", r.residual}, {"tolerance", r.tolerance},
               {"samples", r.samples}};
      if (!r.details.empty()) row["details"] = r.details;
      rows.push_back(row);
    }
    return json{{"schema", kSchema},
                {"suite", suite},
                {"config", config},
                {"results", rows},
                {"summary",
                 {{"passed", count(Status::pass)},
                  {"failed", count(Status::fail)},
                  {"skipped", count(Status::skipped)},
                  {"ok", ok()}}}};
  }

 private:
  std::vector<PropertyResult> results_;
};

namespace detail {

inline PropertyResult make_result(const std::string& suite, const std::string& property, const std::string& identity,
                                  double residual, double tol, std::int64_t samples, json details = json::object()) {
  PropertyResult r{suite, property, identity, residual <= tol ? Status::pass : Status::fail, residual, tol, samples,
                   std::move(details)};
  return r;
}

inline PropertyResult skipped(const std::string& suite, const std::string& property, const std::string& identity,
                              const std::string& reason) {
  PropertyResult r{suite, property, identity, Status::skipped};
  r.details = json{{"reason", reason}};
  return r;
}

/// Counts failures of an exact predicate, remembering the first one.
struct ExactCounter {
  std::int64_t samples = 0;
  std::int64_t failures = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++samples;
    if (ok) return;
    if (failures++ == 0) first = describe();
  }
  PropertyResult result(const std::string& suite, const std::string& property, const std::string& identity) const {
    json d{{"failures", failures}};
    if (failures) d["first_failure"] = first;
    return make_result(suite, property, identity, static_cast<double>(failures), 0.0, samples, d);
  }
};

inline HeisElem random_heis(const Subspace& s, std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  return {random_element(s, n, rng), random_element(s, n, rng), CentralElem{Fp(d(rng), n), Fp(d(rng), n)}};
}

inline SL2Elem random_sl2(std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  while (true) {
    const Fp a(d(rng), n), b(d(rng), n), c(d(rng), n);
    if (!a.is_zero()) return {a, b, c, (Fp(1, n) + b * c) / a};
    if (!c.is_zero()) return {a, -c.inverse(), c, Fp(d(rng), n)};  // a = 0 forces b c = -1
  }
}

inline Ext random_circle(const FieldConfig& fc, std::mt19937_64& rng, bool nonzero_b) {
  const auto circle = circle_subgroup(fc);
  std::vector<Ext> pool;
  for (const auto& z : circle)
    if (!nonzero_b || !z.b.is_zero()) pool.push_back(z);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

/// A random generator of the given kind with a random valid parameter.
inline Gen random_gen(GenKind kind, const FieldConfig& fc, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> any(0, fc.N - 1), unit(1, fc.N - 1);
  switch (kind) {
    case GenKind::u: return Gen::u(fc.scalar(any(rng)));
    case GenKind::d: return Gen::d(fc.scalar(any(rng)));
    case GenKind::s: return Gen::s(fc.scalar(unit(rng)));
    case GenKind::j: return Gen::j(fc.N);
    case GenKind::r: {
      const Ext z = random_circle(fc, rng, false);
      return Gen::r(z.a, z.b);
    }
  }
  return Gen::j(fc.N);
}

inline const char* gen_name(GenKind k) {
  switch (k) {
    case GenKind::u: return "u";
    case GenKind::d: return "d";
    case GenKind::s: return "s";
    case GenKind::j: return "j";
    case GenKind::r: return "r";
  }
  return "?";
}

inline constexpr GenKind kAllGens[] = {GenKind::u, GenKind::d, GenKind::s, GenKind::j, GenKind::r};

inline double relative(double err, double scale) { return scale > 0 ? err / scale : err; }

}  // namespace detail

// algebra --------------------------------------------------------------------

inline Report verify_algebra(std::int64_t n, const VerifyOptions& opt,
                             const StructureTable& table = StructureTable::standard()) {
  using detail::ExactCounter;
  const std::string suite = "algebra";
  Report rep;
  std::mt19937_64 rng(opt.seed);
  const Subspace full = Subspace::full();
  auto m = [&](const AlgElem& x, const AlgElem& y) { return mul(x, y, table); };
  auto e = [&](int i) { return AlgElem::basis(n, i); };
  const AlgElem one = AlgElem::scalar(n, 1);

  {
    ExactCounter c;
    for (int i = 1; i <= 3; ++i) c.check(m(e(i), e(i)) == one, [&] { return std::string(kBasisNames[i]) + "^2 != 1"; });
    for (int i = 4; i <= 7; ++i) c.check(m(e(i), e(i)) == -one, [&] { return std::string(kBasisNames[i]) + "^2 != -1"; });
    c.check(m(e(1), e(2)) == e(4), [] { return std::string("e1 e2 != e12"); });
    c.check(m(e(2), e(3)) == e(5), [] { return std::string("e2 e3 != e23"); });
    c.check(m(e(3), e(1)) == e(6), [] { return std::string("e3 e1 != e31"); });
    c.check(m(e(4), e(3)) == e(7), [] { return std::string("e12 e3 != e123"); });
    for (int i = 0; i < kAlgebraDim; ++i)
      c.check(m(e(7), e(i)) == m(e(i), e(7)), [&] { return std::string("e123 does not commute with ") + std::string(kBasisNames[i]); });
    rep.add(c.result(suite, "basis-relations", "generator relations and centrality of e123"));
  }
  auto random = [&] { return random_element(full, n, rng); };
  {
    ExactCounter c;
    for (int i = 0; i < kAlgebraDim; ++i)
      for (int j = 0; j < kAlgebraDim; ++j)
        for (int k = 0; k < kAlgebraDim; ++k)
          c.check(m(m(e(i), e(j)), e(k)) == m(e(i), m(e(j), e(k))), [&] {
            return "(" + std::string(kBasisNames[i]) + " " + std::string(kBasisNames[j]) + ") " +
                   std::string(kBasisNames[k]) + " != " + std::string(kBasisNames[i]) + " (...)";
          });
    for (int t = 0; t < opt.random_pairs; ++t) {
      const AlgElem x = random(), y = random(), z = random();
      c.check(m(m(x, y), z) == m(x, m(y, z)), [&] { return "random triple " + x.to_string(); });
    }
    rep.add(c.result(suite, "associativity", "(xy)z = x(yz)"));
  }
  {
    ExactCounter star_c, eta_c, xi_c;
    auto run = [&](const AlgElem& x, const AlgElem& y) {
      star_c.check(star(m(x, y)) == m(star(y), star(x)) && star(star(x)) == x && star(x + y) == star(x) + star(y),
                   [&] { return "star on " + x.to_string() + ", " + y.to_string(); });
      eta_c.check(eta(m(x, y)) == m(eta(x), eta(y)) && eta(eta(x)) == x,
                  [&] { return "eta on " + x.to_string() + ", " + y.to_string(); });
      xi_c.check(xi(m(x, y)) == m(xi(y), xi(x)) && xi(xi(x)) == x,
                 [&] { return "xi on " + x.to_string() + ", " + y.to_string(); });
    };
    for (int i = 0; i < kAlgebraDim; ++i)
      for (int j = 0; j < kAlgebraDim; ++j) run(e(i), e(j));
    for (int t = 0; t < opt.random_pairs; ++t) run(random(), random());
    rep.add(star_c.result(suite, "involution-star", "x** = x, (xy)* = y* x*, (x+y)* = x* + y*"));
    rep.add(eta_c.result(suite, "involution-eta", "main automorphism: (xy)^eta = x^eta y^eta"));
    rep.add(xi_c.result(suite, "involution-xi", "reversion: (xy)^xi = y^xi x^xi"));
  }
  {
    ExactCounter tr_c, n_c;
    for (int t = 0; t < opt.random_pairs; ++t) {
      const AlgElem x = random(), y = random();
      bool tr_ok = false, n_ok = false;
      try {
        tr_ok = CentralElem::from(m(x, y) + star(m(x, y))) == CentralElem::from(m(y, x) + star(m(y, x)));
      } catch (const SubspaceMismatch&) {
      }
      try {
        n_ok = norm(m(x, y), table) == norm(x, table) * norm(y, table);
      } catch (const SubspaceMismatch&) {
      }
      tr_c.check(tr_ok, [&] { return "tr(xy) != tr(yx) for x=" + x.to_string() + ", y=" + y.to_string(); });
      n_c.check(n_ok, [&] { return "n(xy) != n(x)n(y) for x=" + x.to_string() + ", y=" + y.to_string(); });
    }
    rep.add(tr_c.result(suite, "trace-cyclic", "tr(xy) = tr(yx), tr(x) central"));
    rep.add(n_c.result(suite, "norm-multiplicative", "n(xy) = n(x) n(y), n(x) central"));
  }
  {
    ExactCounter c;
    const Subspace lor = find_subspace("lorentz");
    for (int t = 0; t < std::min(opt.random_pairs, 200); ++t) {
      const AlgElem r = random_unit_norm(n, rng), p = random_element(lor, n, rng);
      const AlgElem q = m(m(eta(r), p), star(r));
      c.check(lor.contains(q) && norm_id(q) == norm_id(p), [&] { return "lorentz action on " + p.to_string(); });
    }
    rep.add(c.result(suite, "lorentz-action", "r^eta p r* preserves the (1,3) subspace and its norm"));
  }
  return rep;
}

// heis -----------------------------------------------------------------------

inline Report verify_heis(const FieldConfig& fc, const Subspace& s, const VerifyOptions& opt) {
  using detail::ExactCounter;
  const std::string suite = "heis";
  const std::int64_t n = fc.N;
  Report rep;
  std::mt19937_64 rng(opt.seed + 1);
  auto rh = [&] { return detail::random_heis(s, n, rng); };

  {
    ExactCounter c;
    for (int t = 0; t < opt.random_pairs; ++t) {
      const HeisElem g = rh(), h = rh();
      c.check(matmul(matrix_form(g), matrix_form(h)) == matrix_form(heis_mul(g, h)), [&] { return "matrix product mismatch"; });
    }
    rep.add(c.result(suite, "matrix-form", "4x4 matrix product reproduces the group law"));
  }
  {
    ExactCounter c;
    for (int t = 0; t < opt.random_pairs; ++t) {
      const HeisElem g = rh(), h = rh(), k = rh();
      const HeisElem e = HeisElem::identity(n);
      c.check(heis_mul(heis_mul(g, h), k) == heis_mul(g, heis_mul(h, k)) && heis_mul(g, heis_inverse(g)) == e &&
                  heis_mul(e, g) == g,
              [] { return std::string("group law"); });
    }
    rep.add(c.result(suite, "group-law", "associativity, identity, inverse"));
  }
  {
    ExactCounter c;
    for (int t = 0; t < opt.random_pairs; ++t) {
      const AlgElem p = random_element(s, n, rng), q = random_element(s, n, rng);
      const HeisElem lhs = heis_mul(HeisElem::tx(p), HeisElem::ty(q));
      const HeisElem rhs = heis_mul(heis_mul(HeisElem::ty(q), HeisElem::tx(p)), HeisElem::tz(trace(q * star(p))));
      c.check(lhs == rhs, [&] { return "p=" + p.to_string() + " q=" + q.to_string(); });
    }
    rep.add(c.result(suite, "commutation", "t_x^p t_y^q = t_y^q t_x^p t_z^{tr(q p*)}"));
  }
  for (const GenKind k : detail::kAllGens) {
    ExactCounter c;
    for (int t = 0; t < opt.random_pairs / 5; ++t) {
      const Gen g = detail::random_gen(k, fc, rng);
      const HeisElem a = rh(), b = rh();
      const HeisElem lhs = sl2_conjugate(g, heis_mul(a, b), fc);
      const HeisElem rhs = heis_mul(sl2_conjugate(g, a, fc), sl2_conjugate(g, b, fc));
      const bool general = sl2_conjugate(gen_matrix(g, fc), a) == sl2_conjugate(g, a, fc);
      c.check(lhs == rhs && general && sl2_conjugate(g, HeisElem::identity(n), fc) == HeisElem::identity(n),
              [&] { return g.to_string() + " on " + a.p.to_string(); });
    }
    rep.add(c.result(suite, std::string("sl2-automorphism:") + detail::gen_name(k),
                     std::string("t_") + detail::gen_name(k) + " acts on H_*(S) as an automorphism"));
  }
  {
    ExactCounter c;
    for (int t = 0; t < 50; ++t) {
      const HeisElem h = rh();
      const Word j4(4, Gen::j(n));
      c.check(sl2_conjugate(j4, h, fc) == h, [] { return std::string("j^4 != 1"); });
    }
    rep.add(c.result(suite, "j-fourth-power", "j^4 acts trivially"));
  }
  {
    ExactCounter aut, nrm, com;
    const Subspace full = Subspace::full();
    for (int t = 0; t < opt.random_pairs / 5; ++t) {
      const DiagElem d{random_unit_norm(n, rng), random_unit_norm(n, rng)};
      const HeisElem a = detail::random_heis(full, n, rng), b = detail::random_heis(full, n, rng);
      aut.check(diag_conjugate(d, heis_mul(a, b)) == heis_mul(diag_conjugate(d, a), diag_conjugate(d, b)),
                [] { return std::string("diag automorphism"); });
      const HeisElem da = diag_conjugate(d, a);
      nrm.check(norm_id(da.p) == norm_id(a.p) && norm_id(da.q) == norm_id(a.q), [] { return std::string("norm"); });
      const Gen g = detail::random_gen(detail::kAllGens[t % 5], fc, rng);
      com.check(diag_conjugate(d, sl2_conjugate(g, a, fc)) == sl2_conjugate(g, diag_conjugate(d, a), fc),
                [&] { return "diag vs " + g.to_string(); });
    }
    rep.add(aut.result(suite, "diag-automorphism", "(s p r^-1, s q r^-1, z) is an automorphism"));
    rep.add(nrm.result(suite, "diag-norm", "diag action preserves N(p), N(q)"));
    rep.add(com.result(suite, "diag-commutes-sl2", "SL(2,F_N) commutes with D(A_0^x)"));
  }
  {
    ExactCounter c;
    for (int t = 0; t < opt.random_pairs / 5; ++t) {
      const SL2Elem g = detail::random_sl2(n, rng);
      bool ok = false;
      try {
        ok = word_matrix(sl2_word(g, fc), fc) == g;
      } catch (const Error&) {
      }
      c.check(ok, [&] { return "word for " + to_json(g).dump(); });
    }
    c.check(sl2_word(SL2Elem::identity(n), fc).empty(), [] { return std::string("identity word not empty"); });
    rep.add(c.result(suite, "sl2-word", "Bruhat word multiplies back to g"));
  }
  {
    ExactCounter c;
    for (const Ext& z : circle_subgroup(fc)) {
      const SL2Elem target = gen_matrix(Gen::r(z.a, z.b), fc);
      if (auto w = circle_word_scaling(z.a, z.b, fc))
        c.check(word_matrix(*w, fc) == target, [&] { return "scaling word at a=" + std::to_string(z.a.value()); });
      if (auto w = circle_word_shear(z.a, z.b, fc))
        c.check(word_matrix(*w, fc) == target, [&] { return "shear word at b=" + std::to_string(z.b.value()); });
      const HeisElem h = rh();
      c.check(sl2_conjugate(target, h) == sl2_conjugate(Gen::r(z.a, z.b), h, fc),
              [] { return std::string("circle action formula"); });
    }
    rep.add(c.result(suite, "circle-decompositions", "t_r factorisations and (pa - qb, qa - pb delta)"));
  }
  {
    ExactCounter c;
    for (int t = 0; t < 50; ++t) {
      const SL2Elem g = detail::random_sl2(n, rng);
      c.check(is_sl_star(AlgElem::scalar(n, g.a.value()), AlgElem::scalar(n, g.b.value()),
                         AlgElem::scalar(n, g.c.value()), AlgElem::scalar(n, g.d.value())),
              [] { return std::string("SL(2,F_N) element rejected"); });
    }
    c.check(!is_sl_star(AlgElem::scalar(n, 2), AlgElem(n), AlgElem(n), AlgElem::scalar(n, 1)),
            [] { return std::string("det 2 accepted"); });
    rep.add(c.result(suite, "sl-star-predicate", "1 = a d* - b c*, 0 = c d* - d c*, 0 = b a* - a b*"));
  }
  return rep;
}

// weil -----------------------------------------------------------------------

inline WaveFunction apply_heis_elem(const HeisElem& h, const WaveFunction& f, const SWRep& rep) {
  return act_heis(h, f, rep);
}

inline Report verify_weil(const SWRep& rep, const VerifyOptions& opt) {
  const std::string suite = "weil";
  const auto& cfg = rep.config();
  const auto& fc = cfg.field;
  const std::int64_t n = rep.N();
  const double tol = opt.tol;
  Report out;
  std::mt19937_64 rng(opt.seed + 2);
  auto rf = [&] { return WaveFunction::random(rep.size(), rng); };
  auto rh = [&] { return detail::random_heis(cfg.subspace, n, rng); };

  {
    double worst = 0.0;
    for (int t = 0; t < opt.function_samples; ++t) {
      const HeisElem g = rh(), h = rh();
      const WaveFunction f = rf();
      worst = std::max(worst, detail::relative(distance(act_heis(g, act_heis(h, f, rep), rep), act_heis(heis_mul(g, h), f, rep)), f.norm()));
    }
    out.add(detail::make_result(suite, "schrodinger-homomorphism", "rho(g) rho(h) = rho(gh)", worst, tol, opt.function_samples));
  }
  const int per_gen = std::max(1, opt.covariance_samples / 5);
  for (const GenKind k : detail::kAllGens) {
    double worst = 0.0;
    for (int t = 0; t < per_gen; ++t) {
      const Gen g = detail::random_gen(k, fc, rng);
      const HeisElem h = rh();
      const WaveFunction f = rf();
      const WaveFunction lhs = apply(g, act_heis(h, f, rep), rep);
      const WaveFunction rhs = act_heis(sl2_conjugate(g, h, fc), apply(g, f, rep), rep);
      worst = std::max(worst, detail::relative(distance(lhs, rhs), f.norm()));
    }
    out.add(detail::make_result(suite, std::string("covariance:") + detail::gen_name(k),
                                std::string("t_") + detail::gen_name(k) + " rho(h) t_" + detail::gen_name(k) +
                                    "^-1 = rho(sl2 action on h)",
                                worst, tol, per_gen));
  }
  {
    double worst = 0.0;
    for (int t = 0; t < per_gen; ++t) {
      const Word w = sl2_word(detail::random_sl2(n, rng), fc);
      const HeisElem h = rh();
      const WaveFunction f = rf();
      const WaveFunction lhs = apply(w, act_heis(h, f, rep), rep);
      const WaveFunction rhs = act_heis(sl2_conjugate(w, h, fc), apply(w, f, rep), rep);
      worst = std::max(worst, detail::relative(distance(lhs, rhs), f.norm()));
    }
    out.add(detail::make_result(suite, "covariance:word", "covariance for random SL(2,F_N) words", worst, tol, per_gen));
  }
  {
    double worst = 0.0, worst_abs = 0.0, worst_dev = 0.0;
    std::set<std::pair<long long, long long>> seen;
    json phases = json::array();
    for (int t = 0; t < opt.function_samples; ++t) {
      const SL2Elem g1 = detail::random_sl2(n, rng), g2 = detail::random_sl2(n, rng);
      const Word w1 = sl2_word(g1, fc), w2 = sl2_word(g2, fc), w3 = sl2_word(g1 * g2, fc);
      const WaveFunction f = rf();
      const PhaseFit fit = fit_phase(apply(w3, f, rep), apply(w1, apply(w2, f, rep), rep));
      worst = std::max(worst, detail::relative(fit.residual, f.norm()));
      worst_abs = std::max(worst_abs, std::abs(std::abs(fit.lambda) - 1.0));
      worst_dev = std::max(worst_dev, std::abs(fit.lambda - 1.0));
      const auto key = std::make_pair(std::llround(fit.lambda.real() * 1e6), std::llround(fit.lambda.imag() * 1e6));
      if (seen.insert(key).second && phases.size() < 8) phases.push_back(to_json(fit.lambda));
    }
    out.add(detail::make_result(suite, "weil-phase", "T(w1) T(w2) = lambda T(w1 w2), |lambda| = 1",
                                std::max(worst, worst_abs), tol, opt.function_samples,
                                json{{"max_abs_lambda_minus_1", worst_dev}, {"lambda_is_one", worst_dev <= tol},
                                     {"distinct_lambda", phases}}));
  }
  {
    double j2 = 0.0, j4 = 0.0, unit = 0.0, lam_dev = 0.0;
    cplx lam4 = 1.0;
    for (int t = 0; t < opt.function_samples; ++t) {
      const WaveFunction f = rf();
      const WaveFunction jf = act_j(f, rep), j2f = act_j(jf, rep);
      j2 = std::max(j2, detail::relative(distance(j2f, act_s(Fp(-1, n), f, rep)), f.norm()));
      const PhaseFit fit = fit_phase(f, act_j(act_j(j2f, rep), rep));
      j4 = std::max(j4, detail::relative(fit.residual, f.norm()));
      lam4 = fit.lambda;
      lam_dev = std::max(lam_dev, std::abs(fit.lambda - 1.0));
      unit = std::max(unit, std::abs(jf.norm() - f.norm()) / f.norm());
    }
    out.add(detail::make_result(suite, "j-square", "j^2 = t_s^{-1}", j2, tol, opt.function_samples));
    out.add(detail::make_result(suite, "j-fourth-power", "j^4 = lambda 1", j4, tol, opt.function_samples,
                                json{{"lambda", to_json(lam4)}, {"abs_lambda_minus_1", lam_dev}}));
    out.add(detail::make_result(suite, "j-unitary", "|j f| = |f|", unit, tol, opt.function_samples));
    const WaveFunction jd = act_j(WaveFunction::delta(rep.size(), 0), rep);
    double d = 0.0;
    for (const auto& x : jd) d = std::max(d, std::abs(x - rep.kappa()));
    out.add(detail::make_result(suite, "j-delta", "j delta_0 = kappa", d, tol, 1, json{{"kappa", to_json(rep.kappa())}}));
  }
  if (rep.V() <= cfg.dense_cap) {
    const cplx tr = character(GenSpec{GenSpec::Kind::j, AlgElem(n)}, rep);
    const double expected = j_character_expected(n, rep.dim());
    out.add(detail::make_result(suite, "j-character", "trace(j) = (-2/N)^dim", std::abs(tr - expected), 1e-8, 1,
                                json{{"trace", to_json(tr)}, {"expected", expected}}));
  } else {
    out.add(detail::skipped(suite, "j-character", "trace(j) = (-2/N)^dim", "V exceeds dense cap"));
  }
  if (rep.V() <= opt.oracle_cap) {
    // t_d^c f(l) = (1/V) sum_{h,k} e(w0 (-2c N(h) + 2 Tr(h* (k - l)))) f(k)
    double worst = 0.0;
    const std::int64_t v = rep.V(), w0 = rep.w0();
    for (int t = 0; t < 3; ++t) {
      const Fp c(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)), n);
      const WaveFunction f = rf();
      WaveFunction ref(f.size());
      for (std::int64_t l = 0; l < v; ++l) {
        cplx acc = 0.0;
        for (std::int64_t h = 0; h < v; ++h) {
          const auto hc = rep.coords(rep.indexer().element(h));
          const std::int64_t hl = rep.pairing(l, hc, true);
          for (std::int64_t k = 0; k < v; ++k)
            acc += rep.e()(w0 * (-2 * c.value() * rep.norm_id(h) + 4 * (rep.pairing(k, hc, true) - hl))) * f[k];
        }
        ref[l] = acc / static_cast<double>(v);
      }
      worst = std::max(worst, detail::relative(distance(ref, act_d(c, f, rep)), f.norm()));
    }
    out.add(detail::make_result(suite, "td-double-sum", "j t_u^{-c} j^-1 equals the double-sum form of t_d^c", worst, 1e-8, 3));
  } else {
    out.add(detail::skipped(suite, "td-double-sum", "j t_u^{-c} j^-1 equals the double-sum form of t_d^c",
                            "V exceeds oracle cap"));
  }
  {
    double shear = 0.0, scaling = 0.0, scaling_dev = 0.0;
    std::int64_t count = 0;
    for (const Ext& z : circle_subgroup(fc)) {
      const WaveFunction f = rf();
      const WaveFunction r = act_r(z.a, z.b, f, rep);
      if (auto w = circle_word_shear(z.a, z.b, fc)) {
        shear = std::max(shear, detail::relative(distance(r, apply(*w, f, rep)), f.norm()));
        ++count;
      }
      if (auto w = circle_word_scaling(z.a, z.b, fc)) {
        const PhaseFit fit = fit_phase(apply(*w, f, rep), r);
        scaling = std::max(scaling, detail::relative(fit.residual, f.norm()));
        scaling_dev = std::max(scaling_dev, std::abs(fit.lambda - 1.0));
      }
    }
    out.add(detail::make_result(suite, "tr-shear-word", "t_r = t_u^{(a-1)/b} t_d^b t_u^{(a-1)/b}", shear, 1e-8, count));
    out.add(detail::make_result(suite, "tr-scaling-word", "t_r = lambda t_d^{b/a} t_s^a t_u^{b delta/a}", scaling, 1e-8,
                                static_cast<std::int64_t>(circle_subgroup(fc).size()),
                                json{{"max_abs_lambda_minus_1", scaling_dev}}));
  }
  {
    // projector families
    const std::vector<std::pair<Subgroup, const char*>> groups = {
        {Subgroup::x, "x"}, {Subgroup::y, "y"}, {Subgroup::z, "z"}, {Subgroup::u, "u"},
        {Subgroup::d, "d"}, {Subgroup::s, "s"}, {Subgroup::r, "r"}};
    for (const auto& [g, name] : groups) {
      const std::int64_t order = subgroup_order(g, rep);
      const WaveFunction f = rf();
      double idem = 0.0, orth = 0.0, complete = 0.0;
      const bool all = order <= opt.projector_cap;
      WaveFunction sum(f.size());
      std::vector<std::int64_t> idx;
      if (all) {
        for (std::int64_t i = 0; i < order; ++i) idx.push_back(i);
      } else {
        std::uniform_int_distribution<std::int64_t> pick(0, order - 1);
        for (int i = 0; i < 4; ++i) idx.push_back(pick(rng));
      }
      WaveFunction prev;
      std::int64_t prev_index = -1;
      for (const auto i : idx) {
        const WaveFunction p = projector(f, g, i, rep);
        if (all) sum += p;
        idem = std::max(idem, detail::relative(distance(projector(p, g, i, rep), p), f.norm()));
        if (prev_index >= 0 && prev_index != i)
          orth = std::max(orth, detail::relative(projector(prev, g, i, rep).norm(), f.norm()));
        prev = p;
        prev_index = i;
      }
      if (all) complete = detail::relative(distance(sum, f), f.norm());
      json d{{"order", order}, {"completeness_checked", all}};
      out.add(detail::make_result(suite, std::string("projector:") + name,
                                  "idempotent, orthogonal and complete character projectors",
                                  std::max({idem, orth, complete}), tol, static_cast<std::int64_t>(idx.size()), d));
    }
  }
  return out;
}

// diag -----------------------------------------------------------------------

inline Report verify_diag(const SWRep& rep, const VerifyOptions& opt) {
  const std::string suite = "diag";
  const auto& cfg = rep.config();
  const auto& fc = cfg.field;
  const std::int64_t n = rep.N();
  Report out;
  std::mt19937_64 rng(opt.seed + 3);
  auto rf = [&] { return WaveFunction::random(rep.size(), rng); };

  const int samples = std::max(1, opt.covariance_samples / 5);
  double cov = 0.0, perm = 0.0;
  std::vector<double> comm(5, 0.0);
  std::int64_t trivial = 0;
  for (int t = 0; t < samples; ++t) {
    const DiagElem d = sample_stabilizer(cfg.subspace, n, rng);
    if (d.r == AlgElem::scalar(n, -1)) ++trivial;
    const HeisElem h = detail::random_heis(cfg.subspace, n, rng);
    const WaveFunction f = rf();
    const WaveFunction lhs = act_diag(d.r, d.s, act_heis(h, f, rep), rep);
    const WaveFunction rhs = act_heis(diag_conjugate(d, h), act_diag(d.r, d.s, f, rep), rep);
    cov = std::max(cov, detail::relative(distance(lhs, rhs), f.norm()));
    const WaveFunction df = act_diag(d.r, d.s, f, rep);
    perm = std::max(perm, std::abs(df.norm() - f.norm()) / f.norm());
    for (int k = 0; k < 5; ++k) {
      const Gen g = detail::random_gen(detail::kAllGens[k], fc, rng);
      comm[k] = std::max(comm[k], detail::relative(distance(act_diag(d.r, d.s, apply(g, f, rep), rep), apply(g, df, rep)), f.norm()));
    }
  }
  json sd{{"fallback_samples", trivial}};
  out.add(detail::make_result(suite, "covariance", "t_A rho(h) t_A^-1 = rho(s p r^-1, s q r^-1, z)", cov, opt.tol, samples, sd));
  out.add(detail::make_result(suite, "permutes-values", "f -> f(s^-1 k r) permutes values", perm, opt.tol, samples));
  for (int k = 0; k < 5; ++k)
    out.add(detail::make_result(suite, std::string("commutes:") + detail::gen_name(detail::kAllGens[k]),
                                std::string("t_A commutes with t_") + detail::gen_name(detail::kAllGens[k]), comm[k], opt.tol,
                                samples));

  const double full_size = std::pow(static_cast<double>(n), kAlgebraDim);
  if (full_size <= static_cast<double>(cfg.budget)) {
    const auto group = unit_norm_group(Subspace::full(), n, cfg.budget);
    const auto orb = orbit(AlgElem::scalar(n, 1));
    const bool equal = std::set<AlgElem>(group.begin(), group.end()) == std::set<AlgElem>(orb.begin(), orb.end());
    out.add(detail::make_result(suite, "orbit-of-one", "orbit(1) = A_0^x", equal ? 0.0 : 1.0, 0.0, 1,
                                json{{"orbit_size", orb.size()}, {"unit_group_size", group.size()}}));
  } else {
    out.add(detail::skipped(suite, "orbit-of-one", "orbit(1) = A_0^x", "full algebra exceeds enumeration budget"));
  }
  {
    const auto orb0 = orbit(AlgElem(n));
    const bool zero_ok = orb0.size() == 1 && orb0[0].is_zero();
    // orbit action on a random orbit
    const AlgElem tau = random_element(Subspace::full(), n, rng);
    OrbitFunction fa{orbit(tau), {}};
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < fa.points.size(); ++i) fa.values.push_back({g(rng), g(rng)});
    const AlgElem zero(n), one = AlgElem::scalar(n, 1);
    double id = 0.0;
    const OrbitFunction same = orbit_action(zero, one, one, fa);
    for (std::size_t i = 0; i < fa.values.size(); ++i) id = std::max(id, std::abs(same.values[i] - fa.values[i]));
    double comp = 0.0;
    bool support = true;
    for (int t = 0; t < 10; ++t) {
      const AlgElem h1 = random_element(Subspace::full(), n, rng), h2 = random_element(Subspace::full(), n, rng);
      const AlgElem r = random_unit_norm(n, rng), s = random_unit_norm(n, rng);
      try {
        const OrbitFunction a = orbit_action(h1, one, one, orbit_action(h2, one, one, fa));
        const OrbitFunction b = orbit_action(h1 + h2, one, one, fa);
        for (std::size_t i = 0; i < a.values.size(); ++i) comp = std::max(comp, std::abs(a.values[i] - b.values[i]));
        orbit_action(h1, r, s, fa);
      } catch (const SubspaceMismatch&) {
        support = false;
      }
    }
    out.add(detail::make_result(suite, "orbit-action", "(t_x^h t_A f_A)(sigma) = e(Tr h sigma) f_A(r^-1 sigma s)",
                                std::max({id, comp, zero_ok && support ? 0.0 : 1.0}), opt.tol, 10,
                                json{{"orbit_size", fa.points.size()}, {"orbit_of_zero_trivial", zero_ok}}));
  }
  return out;
}

// pderiv ---------------------------------------------------------------------

inline Report verify_pderiv(const SWRep& rep, const VerifyOptions& opt) {
  const std::string suite = "pderiv";
  const auto& cfg = rep.config();
  const std::int64_t n = rep.N(), v = rep.V();
  const double tol = opt.tol;
  Report out;
  std::mt19937_64 rng(opt.seed + 4);
  auto rf = [&] { return WaveFunction::random(rep.size(), rng); };
  auto rs = [&] { return random_element(cfg.subspace, n, rng); };

  {
    double round = 0.0, planch = 0.0;
    for (int t = 0; t < opt.function_samples; ++t) {
      const WaveFunction f = rf();
      const FourierTable ft = fourier(f, rep);
      round = std::max(round, detail::relative(distance(inverse_fourier(ft, rep), f), f.norm()));
      planch = std::max(planch, std::abs(f.norm() * f.norm() - ft.norm() * ft.norm() / static_cast<double>(v)) / (f.norm() * f.norm()));
    }
    out.add(detail::make_result(suite, "fourier-roundtrip", "inverse(fourier(f)) = f", round, tol, opt.function_samples));
    out.add(detail::make_result(suite, "plancherel", "sum |f|^2 = (1/V) sum |f~|^2", planch, tol, opt.function_samples));
  }
  {
    double worst = 0.0;
    const int samples = 100;
    for (int t = 0; t < samples; ++t) {
      const WaveFunction f = rf();
      const AlgElem h = rs();
      worst = std::max(worst, detail::relative(distance(taylor_shift(f, h, rep), act_tx(h, f, rep)), f.norm()));
    }
    out.add(detail::make_result(suite, "taylor-shift", "exp(2 pi i/N Tr(h grad)) f(l) = f(l - h) = t_x^h f", worst, tol, samples));
  }
  {
    // the truncated series on the fixed 1-d case N = 3
    const RepConfig small = RepConfig::make(FieldConfig::make(3), find_subspace("span1"), 1);
    const SWRep r1(small);
    std::mt19937_64 rng1(opt.seed);
    const WaveFunction f = WaveFunction::random(r1.size(), rng1);
    const AlgElem h = AlgElem::scalar(3, 1);
    const WaveFunction target = act_tx(h, f, r1);
    json errs = json::object();
    double prev = INFINITY, last = 0.0;
    bool monotone_tail = true;
    for (int m : {2, 4, 8, 16, 32}) {
      const double e = detail::relative(distance(taylor_partial_sum(f, h, m, r1), target), f.norm());
      errs[std::to_string(m)] = e;
      if (m >= 8 && e > prev) monotone_tail = false;
      prev = e;
      last = e;
    }
    out.add(detail::make_result(suite, "taylor-series", "partial sums of the Taylor series approach the shift",
                                monotone_tail ? last : 1.0, 1e-6, 5, json{{"errors_by_order", errs}}));
  }
  {
    double eig = 0.0;
    for (int t = 0; t < 5; ++t) {
      const AlgElem s0 = rs();
      const auto sc = rep.coords(s0);
      WaveFunction f(rep.size());
      for (std::int64_t k = 0; k < v; ++k) f[k] = rep.e()(-2 * rep.pairing(k, sc, false));
      const auto g = grad(f, rep);
      for (int a = 0; a < rep.dim(); ++a)
        eig = std::max(eig, detail::relative(distance(g[a], static_cast<double>(symmetric_lift(sc[a], n)) * f), f.norm()));
    }
    out.add(detail::make_result(suite, "grad-eigenstate", "(grad - sigma) f = 0 on x-eigenstates", eig, tol, 5));
  }
  if (v <= opt.oracle_cap) {
    // grad f(l) = (1/V) sum_{sigma,k} sigma e(Tr sigma (k - l)) f(k)
    const WaveFunction f = rf();
    const auto g = grad(f, rep);
    double worst = 0.0;
    for (std::int64_t l = 0; l < v; ++l) {
      std::vector<cplx> acc(static_cast<std::size_t>(rep.dim()), 0.0);
      for (std::int64_t s = 0; s < v; ++s) {
        const auto sc = rep.coords(rep.indexer().element(s));
        cplx inner = 0.0;
        const std::int64_t sl = rep.pairing(l, sc, false);
        for (std::int64_t k = 0; k < v; ++k) inner += rep.e()(2 * (rep.pairing(k, sc, false) - sl)) * f[k];
        for (int a = 0; a < rep.dim(); ++a) acc[a] += static_cast<double>(symmetric_lift(sc[a], n)) * inner;
      }
      for (int a = 0; a < rep.dim(); ++a) worst = std::max(worst, std::abs(acc[a] / static_cast<double>(v) - g[a][l]));
    }
    out.add(detail::make_result(suite, "grad-double-sum", "Fourier-multiplier grad equals the double sum",
                                detail::relative(worst, f.norm()), tol, 1));
  } else {
    out.add(detail::skipped(suite, "grad-double-sum", "Fourier-multiplier grad equals the double sum", "V exceeds oracle cap"));
  }
  {
    double worst = 0.0;
    for (std::int64_t c = 0; c < n; ++c) {
      const WaveFunction f = rf();
      worst = std::max(worst, detail::relative(distance(laplace_exp(Fp(c, n), f, rep), act_d(Fp(c, n), f, rep)), f.norm()));
    }
    out.add(detail::make_result(suite, "laplace-exp-td", "exp(-2 pi i/N c/(4 w0) Tr(grad grad*)) = t_d^c", worst, 1e-8, n));
  }
  {
    double kg = 0.0;
    bool shell_ok = true, disc_ok = true;
    const std::int64_t w0 = rep.w0();
    for (std::int64_t eta = 0; eta < n; ++eta) {
      const WaveFunction f = rf();
      const WaveFunction p = projector(f, Subgroup::d, eta, rep);
      kg = std::max(kg, detail::relative(kg_residual(p, Fp(eta, n), rep), f.norm()));
      const FourierTable ft = fourier(p, rep);
      for (std::int64_t s = 0; s < v; ++s) {
        const bool on_shell = reduce(2 * rep.norm_id(s) + 4 * w0 * eta, n) == 0;
        if (!on_shell && std::abs(ft[s]) > 1e-8 * f.norm() * std::sqrt(static_cast<double>(v))) shell_ok = false;
      }
      // an x-eigenstate off the shell must leave a residual
      for (std::int64_t s = 0; s < v; ++s)
        if (reduce(2 * rep.norm_id(s) + 4 * w0 * eta, n) != 0) {
          const WaveFunction x = projector(f, Subgroup::x, s, rep);
          if (x.norm() > 1e-8 && kg_residual(x, Fp(eta, n), rep) < 1e-6 * x.norm()) disc_ok = false;
          break;
        }
    }
    out.add(detail::make_result(suite, "klein-gordon", "(Tr(grad grad*) + 4 w0 eta) d_eta f = 0", kg, 1e-8, n,
                                json{{"fourier_support_on_shell", shell_ok}, {"off_shell_residual_positive", disc_ok}}));
    out.add(detail::make_result(suite, "d-shell-support", "d_eta f has Fourier support on 2 N(sigma) = -4 w0 eta",
                                shell_ok && disc_ok ? 0.0 : 1.0, 0.0, n));
  }
  {
    std::int64_t mismatches = 0;
    const std::int64_t w0 = rep.w0();
    for (std::int64_t tau = 0; tau < n; ++tau) {
      WaveFunction f = rf();
      for (auto& x : f.values()) x += 3.0;  // keep every value away from 0
      const WaveFunction p = projector(f, Subgroup::u, tau, rep);
      for (std::int64_t k = 0; k < v; ++k) {
        const bool on = reduce(2 * w0 * rep.norm_id(k) - tau, n) == 0;
        if ((p[k] != 0.0) != on) ++mismatches;
      }
    }
    out.add(detail::make_result(suite, "u-shell-support", "support of u_tau f is the shell 2 w0 N(k) = tau",
                                static_cast<double>(mismatches), 0.0, n));
  }
  {
    // Leibniz rule: exact for functions whose product does not alias
    if (n >= 5) {
      auto band_limited = [&] {
        FourierTable ft(rep.size());
        std::normal_distribution<double> g;
        for (std::int64_t s = 0; s < v; ++s) {
          bool low = true;
          for (int a = 0; a < rep.dim(); ++a) low = low && std::abs(symmetric_lift(rep.digit(s, a), n)) <= 1;
          if (low) ft[s] = {g(rng), g(rng)};
        }
        return inverse_fourier(ft, rep);
      };
      double worst = 0.0;
      for (int t = 0; t < 5; ++t) {
        const WaveFunction f = band_limited(), g = band_limited();
        worst = std::max(worst, detail::relative(leibniz_defect(f, g, rep), hadamard(f, g).norm()));
      }
      const WaveFunction f = rf(), g = rf();
      out.add(detail::make_result(suite, "leibniz", "grad(fg) = grad(f) g + f grad(g) for band-limited f, g", worst, tol, 5,
                                  json{{"generic_defect", detail::relative(leibniz_defect(f, g, rep), hadamard(f, g).norm())}}));
    } else {
      out.add(detail::skipped(suite, "leibniz", "grad(fg) = grad(f) g + f grad(g) for band-limited f, g",
                              "N = 3 has no non-aliasing band"));
    }
  }
  return out;
}

// ideal ----------------------------------------------------------------------

inline Report verify_ideal(const SWRep& rep, const VerifyOptions& opt) {
  const std::string suite = "ideal";
  Report out;
  const IdealConstants c = ideal_constants(rep);
  json cj = to_json(c);
  {
    double quad = 0.0;
    for (const auto& t : c.tau_roots)
      quad = std::max(quad, std::abs(t * t * (static_cast<double>(c.c0) - c.c1) - t * c.c1 - 1.0));
    const cplx g = gauss_sum_closed_form(rep.N());
    const cplx expect = std::pow(g, rep.dim()) *
                        std::pow(static_cast<double>(legendre(2 * rep.w0(), rep.N())), rep.dim()) *
                        std::pow(static_cast<double>(legendre(-1, rep.N())), rep.config().q_minus()) /
                        static_cast<double>(rep.V());
    out.add(detail::make_result(suite, "constants", "tau solves tau^2 (c0 - c1) - tau c1 - 1 = 0; kappa closed form",
                                std::max(quad, std::abs(expect - c.kappa)), 1e-12, 1, cj));
  }
  if (!c.isotropic) {
    out.add(detail::skipped(suite, "stability", "j span{t_x^k I} within span{t_x^k I}",
                            "NoNullVector: subspace is anisotropic; covered by the weil homomorphism checks"));
    return out;
  }
  try {
    const StabilityReport s = stability_check(rep, opt.seed);
    double best = INFINITY;
    for (const auto& r : s.roots) best = std::min(best, std::max({r.u_residual, r.j_residual, r.rank == rep.V() ? 0.0 : 1.0}));
    out.add(detail::make_result(suite, "stability", "j span{t_x^k I} within span{t_x^k I} with the kernel of act_j",
                                s.pass ? best : std::max(best, 1.0), 1e-8, s.probes, to_json(s)));
    out.add(detail::make_result(suite, "ident", "t_x^k y_sigma z = y_{sigma - 2 w0 k*} z t_x^k", s.ident_residual, 1e-12, 8));
  } catch (const BudgetExceeded& e) {
    out.add(detail::skipped(suite, "stability", "j span{t_x^k I} within span{t_x^k I}", std::string("BudgetExceeded: ") + e.what()));
  }
  return out;
}

// driver ---------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "heis", "weil", "diag", "pderiv", "ideal", "all"};
  return names;
}

inline Report run_suite(const std::string& suite, const RepConfig& cfg, const VerifyOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw ConfigError("unknown suite '" + suite + "'");
  Report out;
  const bool all = suite == "all";
  if (all || suite == "algebra") out.append(verify_algebra(cfg.N(), opt));
  if (all || suite == "heis") out.append(verify_heis(cfg.field, cfg.subspace, opt));
  if (all || suite == "weil" || suite == "diag" || suite == "pderiv" || suite == "ideal") {
    const SWRep rep(cfg);
    if (all || suite == "weil") out.append(verify_weil(rep, opt));
    if (all || suite == "diag") out.append(verify_diag(rep, opt));
    if (all || suite == "pderiv") out.append(verify_pderiv(rep, opt));
    if (all || suite == "ideal") out.append(verify_ideal(rep, opt));
  }
  return out;
}

inline json verify_config_json(const RepConfig& cfg, const VerifyOptions& opt) {
  json c = config_json(cfg);
  c["seed"] = opt.seed;
  c["tol"] = opt.tol;
  return c;
}

}  // namespace heisenrep
