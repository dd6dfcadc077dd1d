// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "heisenrep/heisenrep.hpp"

using namespace heisenrep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.pass && secs < limit_s;
  if (!ok) ++failures;
  std::printf("criterion %d: %s  %s  [%.2f s, limit %.0f s]  %s\n", id, ok ? "PASS" : "FAIL", title, secs, limit_s,
              o.detail.c_str());
  std::fflush(stdout);
}

RepConfig cfg_of(std::int64_t n, const Subspace& s, std::int64_t w0 = 1) {
  return RepConfig::make(FieldConfig::make(n), s, w0);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

const PropertyResult& need(const Report& r, const std::string& suite, const std::string& prop) {
  const PropertyResult* p = r.find(suite, prop);
  if (!p) throw std::runtime_error("missing property " + suite + "/" + prop);
  return *p;
}

HeisElem random_heis(const Subspace& s, std::int64_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  return {random_element(s, n, rng), random_element(s, n, rng), CentralElem{Fp(d(rng), n), Fp(d(rng), n)}};
}

}  // namespace

int main() {
  criterion(1, "algebra axioms, N in {3,5,7}, exact", 1.0, [] {
    VerifyOptions opt;
    opt.random_pairs = 1000;
    std::int64_t checks = 0, fails = 0;
    for (std::int64_t n : {3, 5, 7}) {
      const Report r = verify_algebra(n, opt);
      for (const auto& x : r.results()) {
        checks += x.samples;
        if (x.status != Status::pass) fails += 1;
      }
    }
    return Outcome{fails == 0, std::to_string(checks) + " checks, " + std::to_string(fails) + " failing properties"};
  });

  criterion(2, "Heisenberg matrix form agrees with the group law", 5.0, [] {
    std::mt19937_64 rng(2);
    std::int64_t pairs = 0, bad = 0;
    for (std::int64_t n : {3, 5, 7})
      for (const auto& s : subspace_catalog())
        for (int t = 0; t < 1000; ++t, ++pairs) {
          const HeisElem a = random_heis(s, n, rng), b = random_heis(s, n, rng);
          if (!(matmul(matrix_form(a), matrix_form(b)) == matrix_form(heis_mul(a, b)))) ++bad;
        }
    return Outcome{bad == 0, std::to_string(pairs) + " pairs over 3 primes x 12 subspaces, " + std::to_string(bad) + " mismatches"};
  });

  criterion(3, "automorphism covariance (u, d, s, j, r, diagonal) at N=3, V<=9", 10.0, [] {
    std::mt19937_64 rng(3);
    const auto fc = FieldConfig::make(3);
    double worst = 0.0;
    std::int64_t pairs = 0;
    for (const char* label : {"span1", "c4", "c4r", "c2"}) {
      const SWRep rep(cfg_of(3, find_subspace(label)));
      const Subspace& s = rep.config().subspace;
      std::uniform_int_distribution<std::int64_t> nz(1, 2), any(0, 2);
      const auto circle = circle_subgroup(fc);
      std::uniform_int_distribution<std::size_t> pc(1, circle.size() - 1);
      for (int kind = 0; kind < 6; ++kind)
        for (int t = 0; t < 200; ++t, ++pairs) {
          HeisElem h = random_heis(s, 3, rng);
          h.z.c7 = Fp(0, 3);
          const WaveFunction f = WaveFunction::random(rep.size(), rng);
          WaveFunction lhs, rhs;
          if (kind < 5) {
            Gen g = Gen::j(3);
            if (kind == 0) g = Gen::u(Fp(any(rng), 3));
            if (kind == 1) g = Gen::d(Fp(any(rng), 3));
            if (kind == 2) g = Gen::s(Fp(nz(rng), 3));
            if (kind == 4) {
              const Ext& z = circle[pc(rng)];
              g = Gen::r(z.a, z.b);
            }
            lhs = apply(g, act_heis(h, f, rep), rep);
            rhs = act_heis(sl2_conjugate(g, h, fc), apply(g, f, rep), rep);
          } else {
            const DiagElem d = sample_stabilizer(s, 3, rng);
            lhs = act_diag(d.r, d.s, act_heis(h, f, rep), rep);
            rhs = act_heis(diag_conjugate(d, h), act_diag(d.r, d.s, f, rep), rep);
          }
          worst = std::max(worst, distance(lhs, rhs) / f.norm());
        }
    }
    return Outcome{worst <= 1e-9, std::to_string(pairs) + " (w,h) pairs, worst relative residual " + sci(worst) + " (tol 1e-9)"};
  });

  criterion(4, "trace(j) = (-2/N)^dim and Gauss sums", 60.0, [] {
    double worst = 0.0;
    int cases = 0;
    std::ostringstream os;
    for (std::int64_t n : {3, 5})
      for (const auto& s : subspace_catalog()) {
        const RepConfig cfg = cfg_of(n, s);
        if (s.cardinality(n) > cfg.dense_cap) continue;
        const cplx tr = character(GenSpec{}, SWRep(cfg));
        worst = std::max(worst, std::abs(tr - j_character_expected(n, s.dim())));
        ++cases;
      }
    double gauss = 0.0;
    for (std::int64_t n = 3; n < 200; ++n)
      if (is_prime(n)) gauss = std::max(gauss, std::abs(gauss_sum(n) - gauss_sum_closed_form(n)));
    os << cases << " subspaces, worst trace error " << sci(worst) << " (tol 1e-8); Gauss sum error " << sci(gauss)
       << " over primes < 200 (tol 1e-12)";
    return Outcome{worst <= 1e-8 && gauss <= 1e-12, os.str()};
  });

  criterion(5, "ideal stability for isotropic subspaces", 120.0, [] {
    bool ok = true;
    std::ostringstream os;
    for (auto [n, label] : {std::pair<std::int64_t, const char*>{3, "c2"}, {5, "c2"}, {3, "d4"}, {3, "lorentz"}}) {
      const SWRep rep(cfg_of(n, find_subspace(label)));
      const StabilityReport r = stability_check(rep);
      const auto& c = r.constants;
      const RootReport& sel = r.roots.at(c.selected);
      ok = ok && r.pass && sel.j_residual <= 1e-8;
      os << label << "/N=" << n << ": c0=" << c.c0 << " c1=" << c.c1.real() << " tau=" << c.tau().real()
         << " alpha=(" << c.alpha_selected().real() << "," << c.alpha_selected().imag() << ") j_res=" << sci(sel.j_residual)
         << (r.pass ? "" : " FAIL") << "; ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(6, "operator identities: t_d double sum, t_r words, j^4, Weil phases", 120.0, [] {
    bool ok = true;
    std::ostringstream os;
    for (auto [n, label] : {std::pair<std::int64_t, const char*>{3, "span1"}, {3, "c2"}, {5, "c2"}, {3, "d4plus"},
                            {3, "lorentz"}, {5, "q3"}}) {
      const Report r = verify_weil(SWRep(cfg_of(n, find_subspace(label))), VerifyOptions{});
      const auto& td = need(r, "weil", "td-double-sum");
      const auto& sh = need(r, "weil", "tr-shear-word");
      const auto& j4 = need(r, "weil", "j-fourth-power");
      const auto& ph = need(r, "weil", "weil-phase");
      ok = ok && td.status == Status::pass && sh.status == Status::pass && j4.status == Status::pass &&
           ph.status == Status::pass && need(r, "weil", "tr-scaling-word").status == Status::pass;
      os << label << "/N=" << n << ": td " << sci(td.residual) << ", tr " << sci(sh.residual) << ", j^4 "
         << sci(j4.residual) << ", |lambda-1| " << sci(ph.details.value("max_abs_lambda_minus_1", -1.0)) << "; ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(7, "pseudo-derivative: Taylor shift, Klein-Gordon, shells, exp form of t_d", 60.0, [] {
    bool ok = true;
    std::ostringstream os;
    for (auto [n, label] : {std::pair<std::int64_t, const char*>{3, "c2"}, {5, "c2"}, {3, "lorentz"}, {5, "d4plus"}}) {
      const Report r = verify_pderiv(SWRep(cfg_of(n, find_subspace(label))), VerifyOptions{});
      const auto& ts = need(r, "pderiv", "taylor-shift");
      const auto& kg = need(r, "pderiv", "klein-gordon");
      const auto& us = need(r, "pderiv", "u-shell-support");
      const auto& ds = need(r, "pderiv", "d-shell-support");
      const auto& le = need(r, "pderiv", "laplace-exp-td");
      ok = ok && ts.status == Status::pass && ts.samples >= 100 && kg.status == Status::pass &&
           us.status == Status::pass && us.residual == 0.0 && ds.status == Status::pass && le.status == Status::pass;
      os << label << "/N=" << n << ": shift " << sci(ts.residual) << ", KG " << sci(kg.residual) << ", shell mismatches "
         << us.residual << ", exp " << sci(le.residual) << "; ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(8, "verify --suite all at N=3, full algebra, V=6561", 300.0, [] {
    const RepConfig cfg = cfg_of(3, Subspace::full());
    const Report r = run_suite("all", cfg, VerifyOptions{});
    const PropertyResult* jc = r.find("weil", "j-character");
    const bool dense_skipped = jc && jc->status == Status::skipped;
    std::ostringstream os;
    os << r.count(Status::pass) << " passed, " << r.count(Status::fail) << " failed, " << r.count(Status::skipped)
       << " skipped; dense checks " << (dense_skipped ? "skipped above cap" : "ran");
    return Outcome{r.ok() && dense_skipped, os.str()};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
