#pragma once

/**
 * @file serialize.hpp
 * @brief JSON and CSV encodings. Every top-level document carries
 * "schema": "heisenrep/1".
 */

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heisenrep/cqalg.hpp"
#include "heisenrep/heis.hpp"
#include "heisenrep/ideal.hpp"
#include "heisenrep/pderiv.hpp"
#include "heisenrep/swrep.hpp"
#include "json.hpp"

namespace heisenrep {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "heisenrep/1";

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json to_json(const AlgElem& x) {
  json a = json::array();
  for (int i = 0; i < kAlgebraDim; ++i) a.push_back(x[i]);
  return a;
}

inline AlgElem alg_from_json(const json& j, std::int64_t n) {
  if (!j.is_array() || j.size() != kAlgebraDim) throw ConfigError("algebra element must be an array of 8 residues");
  AlgElem x(n);
  for (int i = 0; i < kAlgebraDim; ++i) x.set(i, j.at(i).get<std::int64_t>());
  return x;
}

inline json to_json(const CentralElem& z) { return json::array({z.c0.value(), z.c7.value()}); }

inline json to_json(const Subspace& s) {
  const auto [pp, qm] = s.signature();
  return json{{"mask", s.axes()}, {"signature", json::array({pp, qm})}, {"label", s.label()}};
}

inline json to_json(const HeisElem& h) { return json{{"p", to_json(h.p)}, {"q", to_json(h.q)}, {"z", to_json(h.z)}}; }

inline HeisElem heis_from_json(const json& j, std::int64_t n) {
  const auto& z = j.at("z");
  return {alg_from_json(j.at("p"), n), alg_from_json(j.at("q"), n),
          CentralElem{Fp(z.at(0).get<std::int64_t>(), n), Fp(z.at(1).get<std::int64_t>(), n)}};
}

inline json to_json(const SL2Elem& g) {
  return json::array({g.a.value(), g.b.value(), g.c.value(), g.d.value()});
}

inline json config_json(const RepConfig& cfg) {
  return json{{"N", cfg.N()},
              {"delta", cfg.field.delta},
              {"subspace", to_json(cfg.subspace)},
              {"omega0", cfg.omega0.value()},
              {"chi", to_string(cfg.chi)}};
}

inline json to_json(const WaveFunction& f, const RepConfig& cfg) {
  json vals = json::array();
  for (const auto& v : f) vals.push_back(to_json(v));
  return json{{"schema", kSchema}, {"subspace", to_json(cfg.subspace)}, {"omega0", cfg.omega0.value()}, {"values", vals}};
}

inline WaveFunction wave_function_from_json(const json& j) {
  std::vector<cplx> v;
  for (const auto& x : j.at("values")) v.push_back(complex_from_json(x));
  return WaveFunction(std::move(v));
}

inline json to_json(const DenseMatrix& m, const std::string& generator, const RepConfig& cfg) {
  json data = json::array();
  for (const auto& z : m.data) data.push_back(to_json(z));
  json meta = config_json(cfg);
  meta["generator"] = generator;
  return json{{"schema", kSchema}, {"metadata", meta}, {"rows", m.rows}, {"cols", m.cols}, {"layout", "row-major"},
              {"data", data}};
}

inline json to_json(const GradValue& g) {
  json o = json::object();
  for (const auto& [i, v] : g.components) o[std::to_string(i)] = to_json(v);
  return o;
}

inline json to_json(const IdealConstants& c) {
  json o{{"c0", c.c0}, {"c1", to_json(c.c1)}, {"kappa", to_json(c.kappa)}};
  if (!c.isotropic) {
    o["tau"] = "unavailable";
    o["alpha"] = "unavailable";
    o["reason"] = "NoNullVector";
    return o;
  }
  o["null_vector"] = to_json(*c.null_vector);
  json taus = json::array(), alphas = json::array();
  for (const auto& t : c.tau_roots) taus.push_back(to_json(t));
  for (const auto& a : c.alpha) alphas.push_back(to_json(a));
  o["tau"] = taus;
  o["alpha"] = alphas;
  o["selected_root"] = c.selected;
  return o;
}

inline json to_json(const StabilityReport& r) {
  json roots = json::array();
  for (const auto& x : r.roots)
    roots.push_back(json{{"tau", to_json(x.tau)},
                         {"alpha", to_json(x.alpha)},
                         {"norm_I", x.norm_I},
                         {"u_residual", x.u_residual},
                         {"j_residual", x.j_residual},
                         {"rank", x.rank},
                         {"pass", x.pass}});
  return json{{"constants", to_json(r.constants)},
              {"roots", roots},
              {"ident_residual", r.ident_residual},
              {"probes", r.probes},
              {"pass", r.pass}};
}

/// CSV rows "generator,re,im" for a list of (generator, character value).
inline std::string character_csv(const std::vector<std::pair<std::string, cplx>>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "generator,re,im\n";
  for (const auto& [g, v] : rows) os << g << ',' << v.real() << ',' << v.imag() << '\n';
  return os.str();
}

}  // namespace heisenrep
