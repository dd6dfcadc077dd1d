// heisenrep: command-line front end.
//
//   heisenrep gauss --n 7
//   heisenrep algebra-check --n 5
//   heisenrep rep --n 3 --subspace span1 --omega 1 --gen j --character
//   heisenrep verify --suite weil --n 3 --subspace c2
//
// Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
// 3 budget exceeded.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "heisenrep/heisenrep.hpp"

namespace {

using namespace heisenrep;

struct Options {
  std::int64_t n = 3;
  std::optional<std::int64_t> delta;
  std::string subspace = "span1";
  std::int64_t omega = 1;
  std::string chi;
  std::string gen = "j";
  std::uint64_t seed = 1;
  double tol = kDefaultTolerance;
  std::int64_t dense_cap = 4096;
  std::int64_t budget = kDefaultEnumerationBudget;
  std::string format = "json";
  std::string out;
  std::string suite = "all";
  bool matrix = false;
  bool character = false;
  bool constants = false;
  std::vector<int> corrupt;  // algebra-check fault injection: i j
};

void add_common(CLI::App* sub, Options& o, bool rep_flags) {
  sub->add_option("--n", o.n, "odd prime modulus N");
  sub->add_option("--delta", o.delta, "quadratic non-residue (default: smallest)");
  sub->add_option("--seed", o.seed, "seed for randomized checks");
  sub->add_option("--tol", o.tol, "complex-layer tolerance");
  sub->add_option("--budget", o.budget, "enumeration budget");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "write output to this file instead of stdout");
  if (!rep_flags) return;
  sub->add_option("--subspace", o.subspace, "catalog label or explicit basis list (e.g. 1,e1)");
  sub->add_option("--omega", o.omega, "central character omega0 (nonzero)");
  sub->add_option("--chi", o.chi, "plus or minus (default: by parity of dim)")->check(CLI::IsMember({"plus", "minus"}));
  sub->add_option("--dense-cap", o.dense_cap, "largest V for dense matrices");
}

FieldConfig field_of(const Options& o) { return FieldConfig::make(o.n, o.delta); }

RepConfig rep_config(const Options& o) {
  std::optional<Chi> chi;
  if (o.chi == "plus") chi = Chi::plus;
  if (o.chi == "minus") chi = Chi::minus;
  RepConfig cfg = RepConfig::make(field_of(o), find_subspace(o.subspace), o.omega, chi);
  cfg.tol = o.tol;
  cfg.dense_cap = o.dense_cap;
  cfg.budget = o.budget;
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ConfigError("cannot open output file '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// "1,0,0,0,0,0,0,0" or a sum of basis names with optional coefficients, e.g. "1+2e1".
AlgElem parse_elem(const std::string& text, std::int64_t n) {
  if (text.find(',') != std::string::npos) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stoll(tok));
    if (v.size() != kAlgebraDim) throw ConfigError("element '" + text + "' needs 8 coefficients");
    AlgElem x(n);
    for (int i = 0; i < kAlgebraDim; ++i) x.set(i, v[i]);
    return x;
  }
  AlgElem x(n);
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, '+');) {
    std::size_t k = 0;
    while (k < tok.size() && (std::isdigit(static_cast<unsigned char>(tok[k])) || tok[k] == '-')) ++k;
    std::string coef = tok.substr(0, k), name = tok.substr(k);
    std::int64_t c = coef.empty() ? 1 : coef == "-" ? -1 : std::stoll(coef);
    int axis = 0;
    if (!name.empty()) {
      auto it = std::find(kBasisNames.begin(), kBasisNames.end(), name);
      if (it == kBasisNames.end()) throw ConfigError("unknown basis element '" + name + "'");
      axis = static_cast<int>(it - kBasisNames.begin());
    }
    x.set(axis, x[axis] + c);
  }
  return x;
}

GenSpec parse_gen(const std::string& text, std::int64_t n) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need = [&] {
    if (arg.empty()) throw ConfigError("generator '" + kind + "' needs a parameter, e.g. " + kind + ":1");
  };
  GenSpec g;
  g.elem = AlgElem(n);
  if (kind == "j") {
    g.kind = GenSpec::Kind::j;
  } else if (kind == "x" || kind == "y") {
    need();
    g.kind = kind == "x" ? GenSpec::Kind::x : GenSpec::Kind::y;
    g.elem = parse_elem(arg, n);
  } else if (kind == "z" || kind == "u" || kind == "d" || kind == "s") {
    need();
    g.kind = kind == "z" ? GenSpec::Kind::z : kind == "u" ? GenSpec::Kind::u : kind == "d" ? GenSpec::Kind::d : GenSpec::Kind::s;
    g.a = std::stoll(arg);
  } else if (kind == "r") {
    need();
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw ConfigError("generator r needs r:a,b");
    g.kind = GenSpec::Kind::r;
    g.a = std::stoll(arg.substr(0, comma));
    g.b = std::stoll(arg.substr(comma + 1));
  } else {
    throw ConfigError("unknown generator '" + text + "' (expected j, u:b, d:c, s:a, r:a,b, z:t, x:elem, y:elem)");
  }
  return g;
}

int cmd_gauss(const Options& o) {
  const FieldConfig fc = field_of(o);
  const cplx direct = gauss_sum(fc.N), closed = gauss_sum_closed_form(fc.N);
  if (o.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "N,re,im,closed_re,closed_im\n" << fc.N << ',' << direct.real() << ',' << direct.imag() << ',' << closed.real()
       << ',' << closed.imag() << '\n';
    emit(o, os.str());
  } else {
    emit(o, dump(json{{"schema", kSchema},
                      {"N", fc.N},
                      {"delta", fc.delta},
                      {"gauss_sum", to_json(direct)},
                      {"closed_form", to_json(closed)},
                      {"abs_difference", std::abs(direct - closed)},
                      {"ext_generator", json::array({ext_generator(fc).a.value(), ext_generator(fc).b.value()})}}));
  }
  return 0;
}

int cmd_algebra_check(const Options& o) {
  const FieldConfig fc = field_of(o);
  StructureTable table = StructureTable::standard();
  if (!o.corrupt.empty()) {
    if (o.corrupt.size() != 2 || o.corrupt[0] < 0 || o.corrupt[0] >= kAlgebraDim || o.corrupt[1] < 0 ||
        o.corrupt[1] >= kAlgebraDim)
      throw ConfigError("--corrupt-table needs two basis indices in [0,8)");
    table.sign[o.corrupt[0]][o.corrupt[1]] *= -1;
  }
  VerifyOptions opt;
  opt.seed = o.seed;
  opt.tol = o.tol;
  const Report r = verify_algebra(fc.N, opt, table);
  json config{{"N", fc.N}, {"delta", fc.delta}, {"seed", o.seed}};
  if (!o.corrupt.empty()) config["corrupted_entry"] = o.corrupt;
  json report = r.to_json(config, "algebra");
  json failures = json::array();
  for (const auto& x : r.results())
    if (x.status == Status::fail) failures.push_back(x.property);
  report["failures"] = failures;
  emit(o, dump(report));
  return r.ok() ? 0 : 1;
}

int cmd_rep(const Options& o) {
  const RepConfig cfg = rep_config(o);
  const int modes = int(o.matrix) + int(o.character) + int(o.constants);
  if (modes != 1) throw ConfigError("rep needs exactly one of --matrix, --character, --constants");
  const SWRep rep(cfg);
  if (o.constants) {
    IdealConstants c = ideal_constants(rep);
    json out{{"schema", kSchema}, {"config", config_json(cfg)}};
    if (c.isotropic) {
      try {
        const StabilityReport s = stability_check(rep, o.seed);
        c.selected = s.constants.selected;
        out["constants"] = to_json(c);
        out["stability"] = to_json(s);
      } catch (const BudgetExceeded& e) {
        out["constants"] = to_json(c);
        out["constants"]["selected_root"] = nullptr;
        out["stability"] = json{{"skipped", e.what()}};
      }
    } else {
      out["constants"] = to_json(c);
    }
    emit(o, dump(out));
    return 0;
  }
  const GenSpec g = parse_gen(o.gen, cfg.N());
  if (o.character) {
    const cplx v = character(g, rep);
    if (o.format == "csv") {
      emit(o, character_csv({{g.to_string(), v}}));
    } else {
      emit(o, dump(json{{"schema", kSchema}, {"config", config_json(cfg)}, {"generator", g.to_string()},
                        {"character", to_json(v)}}));
    }
    return 0;
  }
  const DenseMatrix m = operator_matrix(g, rep);
  if (o.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "row,col,re,im\n";
    for (std::int64_t i = 0; i < m.rows; ++i)
      for (std::int64_t k = 0; k < m.cols; ++k) os << i << ',' << k << ',' << m.at(i, k).real() << ',' << m.at(i, k).imag() << '\n';
    emit(o, os.str());
  } else {
    emit(o, dump(to_json(m, g.to_string(), cfg)));
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const RepConfig cfg = rep_config(o);
  VerifyOptions opt;
  opt.seed = o.seed;
  opt.tol = o.tol;
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = run_suite(o.suite, cfg, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(o, dump(r.to_json(verify_config_json(cfg, opt), o.suite)));
  std::cerr << "suite " << o.suite << ": " << r.count(Status::pass) << " passed, " << r.count(Status::fail) << " failed, "
            << r.count(Status::skipped) << " skipped in " << secs << " s\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg groups over C4 x Q(F_N) and their Schrodinger-Weil representations"};
  app.require_subcommand(1);
  Options o;

  auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum and its closed form");
  add_common(gauss, o, false);

  auto* alg = app.add_subcommand("algebra-check", "involution, associativity and norm checks");
  add_common(alg, o, false);
  alg->add_option("--corrupt-table", o.corrupt, "flip the sign of one structure constant (i j), for testing")
      ->expected(2);

  auto* rep = app.add_subcommand("rep", "operator matrices, characters and invariant-vector constants");
  add_common(rep, o, true);
  rep->add_option("--gen", o.gen, "j, u:b, d:c, s:a, r:a,b, z:t, x:elem, y:elem");
  rep->add_flag("--matrix", o.matrix, "dense operator matrix");
  rep->add_flag("--character", o.character, "trace of the operator");
  rep->add_flag("--constants", o.constants, "c0, c1, tau, alpha, kappa");

  auto* ver = app.add_subcommand("verify", "run a property suite");
  add_common(ver, o, true);
  ver->add_option("--suite", o.suite, "algebra, heis, weil, diag, pderiv, ideal or all")
      ->check(CLI::IsMember(suite_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (gauss->parsed()) return cmd_gauss(o);
    if (alg->parsed()) return cmd_algebra_check(o);
    if (rep->parsed()) return cmd_rep(o);
    if (ver->parsed()) return cmd_verify(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << json{{"schema", kSchema}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << json{{"schema", kSchema}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"schema", kSchema}, {"error", {{"kind", "Error"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  return 2;
}
