#include "bdyn/serialize.hpp"

#include <fstream>

#include "bdyn/elliptic.hpp"
#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

Json block_json(const std::vector<BlockSystem>& systems) {
  Json out = Json::array();
  for (const auto& sys : systems) {
    Json blocks = Json::array();
    for (const auto& b : sys.blocks) {
      Json block = Json::array();
      for (const int i : b) block.push_back(i + 1);
      blocks.push_back(block);
    }
    out.push_back(blocks);
  }
  return out;
}

GaussianRational exact_from_json(const Json& j) {
  if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
  if (j.is_number()) return GaussianRational::from_double(j.get<double>(), 0.0);
  const Complex z = complex_from_json(j);
  return GaussianRational::from_double(z.real(), z.imag());
}

}  // namespace

Json document(const std::string& kind, const Json& payload) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = kind;
  for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Point& p) {
  if (p.infinite) return "inf";
  return to_json(p.value);
}

Json to_json(const FBP& f) {
  Json zeros = Json::array();
  for (const Complex a : f.zero_list()) zeros.push_back(to_json(a));
  return Json{{"rho", to_json(f.rho())}, {"zeros", zeros}};
}

Json to_json(const ChebyBlaschke& c) {
  return Json{{"n", c.n},
              {"t", c.t},
              {"chi", c.chi},
              {"gamma_t", gamma_of_t(c.t)},
              {"construction_deviation", c.construction_deviation},
              {"fbp", to_json(c.product)}};
}

Json to_json(const Permutation& p) {
  return Json{{"cycles", p.to_cycle_string()}, {"cycle_type", p.cycle_type()}};
}

Json to_json(const MonodromyRep& rep) {
  Json cvs = Json::array(), fiber = Json::array(), loops = Json::array();
  for (const Complex v : rep.critical_values) cvs.push_back(to_json(v));
  for (const Complex z : rep.base_fiber) fiber.push_back(to_json(z));
  for (std::size_t i = 0; i < rep.loops.size(); ++i) {
    Json l = to_json(rep.loops[i]);
    l["critical_value"] = to_json(rep.critical_values[i]);
    loops.push_back(l);
  }
  return Json{{"degree", rep.degree},
              {"base_point", to_json(rep.base_point)},
              {"loop_radius", rep.loop_radius},
              {"critical_values", cvs},
              {"base_fiber", fiber},
              {"loops", loops},
              {"group_order", group_order(rep.loops, 1000000)},
              {"transitive", is_transitive(rep.loops)},
              {"riemann_hurwitz", riemann_hurwitz_holds(rep)},
              {"block_systems", block_json(block_systems(rep))}};
}

Json to_json(const Decomposition& d) {
  Json out{{"recognizer", d.recognizer}};
  if (d.factors) {
    out["outer"] = to_json(d.factors->first);
    out["inner"] = to_json(d.factors->second);
    out["deviation"] = d.deviation;
  } else {
    out["outer"] = nullptr;
    out["inner"] = nullptr;
  }
  out["block_sizes"] = d.block_sizes;
  if (d.symmetry_k > 0) {
    out["symmetry"] = Json{{"k", d.symmetry_k}, {"r", d.symmetry_r}, {"center", to_json(d.symmetry_center)}};
  }
  if (d.recognizer == "chebyshev") out["t"] = d.chebyshev_t;
  return out;
}

Json to_json(const RittMove& m) {
  return Json{{"lhs", to_json(m.lhs)}, {"rhs", to_json(m.rhs)}, {"deviation", m.deviation}, {"equal", m.equal}};
}

Json to_json(const BiluTichyPair& p) {
  return Json{{"case", p.case_id}, {"first", to_json(p.first)}, {"second", to_json(p.second)}};
}

Json to_json(const GaussianRational& x) { return x.to_string(); }

Json to_json(const Orbit& o) {
  Json pts = Json::array();
  for (const auto& p : o.points) pts.push_back(p.to_string());
  Json out{{"points", pts}};
  if (o.cycle_start) out["cycle"] = Json{{"start", *o.cycle_start}, {"length", o.cycle_length}};
  else out["cycle"] = nullptr;
  return out;
}

Json to_json(const HeightEstimate& h) {
  return Json{{"naive", h.naive},
              {"canonical_estimate", h.canonical_estimate},
              {"iterations_used", h.iterations_used},
              {"preperiodic", h.preperiodic},
              {"trace", h.trace},
              {"differences", h.differences}};
}

Json to_json(const IntersectionReport& r) {
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    Json e{{"i", h.i}, {"j", h.j}};
    e["point"] = h.point ? Json(h.point->to_string()) : Json(nullptr);
    e["confirmed"] = h.confirmed;
    hits.push_back(e);
  }
  Json primes = Json::array();
  for (const auto p : r.primes) primes.push_back(std::to_string(p));
  return Json{{"hits", hits}, {"exact_range", {r.exact_f, r.exact_g}}, {"fingerprint_primes", primes}};
}

Json to_json(const DegreeGrowthReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(Json{{"m", row.m}, {"h_f", row.h_f}, {"h_g", row.h_g}});
  return Json{{"rows", rows},
              {"rate_f", r.rate_f},
              {"rate_g", r.rate_g},
              {"final_ratio", r.final_ratio},
              {"required_ratio", r.required_ratio},
              {"separated", r.separated}};
}

Json to_json(const SuiteResult& s) {
  Json rows = Json::array();
  for (const auto& c : s.rows)
    rows.push_back(Json{{"check", c.label}, {"deviation", c.deviation}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return Json{{"suite", s.name}, {"passed", s.passed()}, {"max_deviation", s.max_deviation()}, {"checks", rows}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() || !j["im"].is_number())
    throw InputError("expected a complex number {\"re\": x, \"im\": y}, got " + j.dump());
  return {j["re"].get<double>(), j["im"].get<double>()};
}

FBP fbp_from_json(const Json& j) {
  if (j.is_object() && !j.contains("zeros")) {
    for (const char* key : {"fbp", "first"})
      if (j.contains(key)) return fbp_from_json(j[key]);
  }
  if (!j.is_object() || !j.contains("rho") || !j.contains("zeros") || !j["zeros"].is_array())
    throw InputError("expected an FBP object with \"rho\" and \"zeros\"");
  std::vector<Complex> zeros;
  for (const auto& z : j["zeros"]) zeros.push_back(complex_from_json(z));
  if (zeros.empty()) throw InputError("an FBP needs at least one zero");
  return FBP(complex_from_json(j["rho"]), Eigen::Map<const Eigen::VectorXcd>(zeros.data(), static_cast<Eigen::Index>(zeros.size())), 1e-9);
}

ExactBlaschke exact_blaschke_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("expected an exact map object");
  if (j.contains("power")) {
    if (!j["power"].is_number_integer()) throw InputError("\"power\" must be an integer");
    return exact_power_map(j["power"].get<int>());
  }
  if (j.contains("fbp") && !j.contains("zeros")) return exact_blaschke_from_json(j["fbp"]);
  if (!j.contains("rho") || !j.contains("zeros") || !j["zeros"].is_array())
    throw InputError("expected an exact map with \"rho\" and \"zeros\"");
  std::vector<GaussianRational> zeros;
  for (const auto& z : j["zeros"]) zeros.push_back(exact_from_json(z));
  return ExactBlaschke(exact_from_json(j["rho"]), std::move(zeros));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace bdyn
