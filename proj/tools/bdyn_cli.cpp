// bdyn: command-line front end.  JSON (or CSV where a table makes sense)
// goes to stdout or --out.  Exit status: 0 ok, 1 verification failure,
// 2 invalid input, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bdyn/errors.hpp"
#include "bdyn/serialize.hpp"

namespace {

using namespace bdyn;

struct Output {
  std::string path;
  std::string emit = "json";
  std::string text;

  void json(const std::string& kind, const Json& payload) { text = document(kind, payload).dump(2) + "\n"; }
  void csv(const std::string& body) { text = body; }
  bool wants_csv() const { return emit == "csv"; }
};

Complex parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(in >> re) || !(in >> comma) || comma != ',' || !(in >> im) || !(in >> std::ws).eof())
    throw InputError("expected RE,IM, got '" + s + "'");
  return {re, im};
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

ExactMap exact_map_from(const std::string& path, int power) {
  if (!path.empty()) return ExactMap(exact_blaschke_from_json(read_json_file(path)));
  return ExactMap(exact_power_map(power));
}

void no_csv(const Output& out, const std::string& cmd) {
  if (out.wants_csv()) throw InputError("--emit csv is not available for " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blaschke products, elliptic descents, factorization and exact dynamics"};
  app.require_subcommand(1);
  Output out;
  std::uint64_t seed = 20240601;
  double tol = 1e-8;
  app.add_option("--out", out.path, "Write output to this file instead of stdout");
  app.add_option("--emit", out.emit, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Seed for random draws (same seed, same output)");
  app.add_option("--tol", tol, "Identity tolerance for equality checks")->check(CLI::PositiveNumber);

  // cheby
  auto* cheby = app.add_subcommand("cheby", "Chebyshev-Blaschke product T_{n,t}. CSV columns: x,T(x) on [-gamma(t), gamma(t)]");
  int cheby_n = 2, cheby_samples = 101;
  double cheby_t = 0.5;
  cheby->add_option("--n", cheby_n, "Degree")->required()->check(CLI::PositiveNumber);
  cheby->add_option("--t", cheby_t, "Parameter t > 0")->required();
  cheby->add_option("--samples", cheby_samples, "CSV sample count")->check(CLI::Range(2, 100000));

  // ellrat
  auto* ellrat = app.add_subcommand("ellrat", "Elliptic rational function n_tau");
  int ell_n = 2;
  std::string ell_tau = "0,1";
  bool ell_fit = false, ell_crit = false;
  ellrat->add_option("--n", ell_n, "Degree n >= 2")->required();
  ellrat->add_option("--tau", ell_tau, "Period ratio RE,IM with IM > 0")->required();
  ellrat->add_flag("--fit", ell_fit, "Fit P/Q coefficients");
  ellrat->add_flag("--critvals", ell_crit, "Report critical values (and fitted ones with --fit)");

  // compose
  auto* comp = app.add_subcommand("compose", "Compose two FBPs: outer o inner");
  std::string comp_outer, comp_inner;
  comp->add_option("--outer", comp_outer, "Outer FBP JSON")->required();
  comp->add_option("--inner", comp_inner, "Inner FBP JSON")->required();

  // decompose / monodromy
  auto* decomp = app.add_subcommand("decompose", "Recognize a decomposition f = g o h");
  std::string decomp_input;
  decomp->add_option("--input", decomp_input, "FBP JSON")->required();
  auto* mono = app.add_subcommand("monodromy", "Numerical monodromy. CSV columns: loop,critical_re,critical_im,cycles");
  std::string mono_input;
  mono->add_option("--input", mono_input, "FBP JSON")->required();

  // ritt
  auto* ritt = app.add_subcommand("ritt", "Generalized Ritt move, both sides");
  std::string ritt_move = "power", ritt_g;
  int ritt_k = 2, ritt_r = 1, ritt_p = 2, ritt_q = 3;
  double ritt_t = 0.5;
  ritt->add_option("--move", ritt_move, "power or cheby")->check(CLI::IsMember({"power", "cheby"}));
  ritt->add_option("--k", ritt_k, "Power move: k");
  ritt->add_option("--r", ritt_r, "Power move: r, gcd(k, r) = 1");
  ritt->add_option("--g", ritt_g, "Power move: FBP JSON for g (default: zero at 1/4)");
  ritt->add_option("--p", ritt_p, "Chebyshev move: p");
  ritt->add_option("--q", ritt_q, "Chebyshev move: q");
  ritt->add_option("--t", ritt_t, "Chebyshev move: t");

  // pair
  auto* pair = app.add_subcommand("pair", "Bilu-Tichy pair families i..v");
  std::string pair_case, pair_a = "0.2,0", pair_b = "0.3,0", pair_p;
  BiluTichyParams bt;
  pair->add_option("--case", pair_case, "i, ii, iii, iv or v")->required();
  pair->add_option("--m", bt.m, "m");
  pair->add_option("--n", bt.n, "n");
  pair->add_option("--r", bt.r, "r");
  pair->add_option("--t", bt.t, "t");
  pair->add_option("--a", pair_a, "a as RE,IM");
  pair->add_option("--b", pair_b, "b as RE,IM");
  pair->add_option("--p", pair_p, "FBP JSON for p (cases i, ii; default: zero at 1/4)");

  // orbit / height / intersect
  auto* orb = app.add_subcommand("orbit", "Exact orbit over Q(i). CSV columns: index,point");
  std::string orb_map, orb_point;
  int orb_power = 2, orb_steps = 10;
  std::size_t bit_cap = kDefaultBitCap;
  orb->add_option("--map", orb_map, "Exact map JSON");
  orb->add_option("--power", orb_power, "Use z^power when --map is absent")->check(CLI::PositiveNumber);
  orb->add_option("--point", orb_point, "Point \"a/b+c/d*i\"")->required();
  orb->add_option("--steps", orb_steps, "N")->check(CLI::NonNegativeNumber);
  orb->add_option("--bit-cap", bit_cap, "Coordinate bit cap");

  auto* height = app.add_subcommand("height", "Naive and canonical height. CSV columns: m,estimate");
  std::string h_map, h_point;
  int h_power = 2, h_steps = 6;
  height->add_option("--map", h_map, "Exact map JSON");
  height->add_option("--power", h_power, "Use z^power when --map is absent")->check(CLI::Range(2, 1000));
  height->add_option("--point", h_point, "Point \"a/b+c/d*i\"")->required();
  height->add_option("--steps", h_steps, "N")->check(CLI::NonNegativeNumber);
  height->add_option("--bit-cap", bit_cap, "Coordinate bit cap");

  auto* inter = app.add_subcommand("intersect", "Orbit intersection. CSV columns: i,j,point,confirmed");
  std::string i_map_f, i_map_g, i_x, i_y;
  int i_power_f = 2, i_power_g = 3, i_steps = 20, i_prints = 3;
  bool i_growth = false;
  inter->add_option("--map-f", i_map_f, "Exact map JSON for f");
  inter->add_option("--map-g", i_map_g, "Exact map JSON for g");
  inter->add_option("--power-f", i_power_f, "Use z^power for f")->check(CLI::PositiveNumber);
  inter->add_option("--power-g", i_power_g, "Use z^power for g")->check(CLI::PositiveNumber);
  inter->add_option("--x", i_x, "Start point for f")->required();
  inter->add_option("--y", i_y, "Start point for g (default: x)");
  inter->add_option("--steps", i_steps, "N")->check(CLI::NonNegativeNumber);
  inter->add_option("--fingerprints", i_prints, "Primes used beyond the exact range")->check(CLI::Range(1, 16));
  inter->add_option("--bit-cap", bit_cap, "Coordinate bit cap");
  inter->add_flag("--growth", i_growth, "Also run the degree-growth experiment from x");

  // verify
  auto* ver = app.add_subcommand("verify", "Identity suites. CSV columns: suite,check,deviation,tolerance,passed");
  std::string suite = "all";
  std::vector<double> ts;
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  ver->add_option("--suite", suite, "Suite name or all")->check(CLI::IsMember(suite_choices));
  ver->add_option("--t", ts, "t values for the t-dependent suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  try {
    if (*cheby) {
      const auto c = cheby_blaschke(cheby_n, cheby_t);
      if (out.wants_csv()) {
        std::string body = "x,T\n";
        const double g = gamma_of_t(cheby_t);
        for (int k = 0; k < cheby_samples; ++k) {
          const double x = -g + 2 * g * k / (cheby_samples - 1);
          body += csv_number(x) + "," + csv_number(c.product(x).real()) + "\n";
        }
        out.csv(body);
      } else {
        out.json("cheby", to_json(c));
      }
    } else if (*ellrat) {
      no_csv(out, "ellrat");
      const EllipticRationalParams p(ell_n, Tau(parse_complex(ell_tau)));
      Json j{{"n", ell_n}, {"tau", to_json(p.tau.value())}};
      if (ell_crit || !ell_fit) {
        const auto cv = ell_rat_critical_values(p);
        Json vals = Json::array();
        for (const auto& v : cv.values) vals.push_back(to_json(v));
        j["critical_values"] = vals;
        j["half_period_form"] = cv.half_period_form;
      }
      if (ell_fit) {
        const auto fit = ell_rat_fit(p);
        Json num = Json::array(), den = Json::array();
        for (Eigen::Index k = 0; k < fit.numerator.size(); ++k) num.push_back(to_json(fit.numerator[k]));
        for (Eigen::Index k = 0; k < fit.denominator.size(); ++k) den.push_back(to_json(fit.denominator[k]));
        j["fit"] = Json{{"variable", "s = (x - center) / radius"},
                        {"center", to_json(fit.center)},
                        {"radius", fit.radius},
                        {"value_scale", fit.value_scale},
                        {"numerator", num},
                        {"denominator", den},
                        {"holdout_residual", fit.holdout_residual}};
        if (ell_crit) {
          Json vals = Json::array();
          for (const auto& v : fit.critical_values()) vals.push_back(to_json(v));
          j["fit"]["critical_values"] = vals;
        }
      }
      out.json("ellrat", j);
    } else if (*comp) {
      no_csv(out, "compose");
      const FBP f = fbp_from_json(read_json_file(comp_outer));
      const FBP g = fbp_from_json(read_json_file(comp_inner));
      out.json("fbp", to_json(compose(f, g)));
    } else if (*decomp) {
      no_csv(out, "decompose");
      const FBP f = fbp_from_json(read_json_file(decomp_input));
      const auto d = decompose_recognized(f);
      Json j{{"degree", f.degree()}};
      j["decomposition"] = d ? to_json(*d) : Json(nullptr);
      out.json("decomposition", j);
    } else if (*mono) {
      const auto rep = numerical_monodromy(fbp_from_json(read_json_file(mono_input)));
      if (out.wants_csv()) {
        std::string body = "loop,critical_re,critical_im,cycles\n";
        for (std::size_t i = 0; i < rep.loops.size(); ++i)
          body += std::to_string(i + 1) + "," + csv_number(rep.critical_values[i].real()) + "," +
                  csv_number(rep.critical_values[i].imag()) + ",\"" + rep.loops[i].to_cycle_string() + "\"\n";
        out.csv(body);
      } else {
        out.json("monodromy", to_json(rep));
      }
    } else if (*ritt) {
      no_csv(out, "ritt");
      RittMove m;
      if (ritt_move == "power") {
        const FBP g = ritt_g.empty() ? make_fbp(1, {Complex(0.25)}) : fbp_from_json(read_json_file(ritt_g));
        m = ritt_move_power(ritt_k, ritt_r, g);
      } else {
        m = ritt_move_cheby(ritt_p, ritt_q, ritt_t);
      }
      m.equal = m.deviation <= tol;
      Json j = to_json(m);
      j["move"] = ritt_move;
      out.json("ritt", j);
    } else if (*pair) {
      no_csv(out, "pair");
      bt.a = parse_complex(pair_a);
      bt.b = parse_complex(pair_b);
      bt.p = pair_p.empty() ? make_fbp(1, {Complex(0.25)}) : fbp_from_json(read_json_file(pair_p));
      out.json("pair", to_json(bilu_tichy_pair(pair_case, bt)));
    } else if (*orb) {
      const ExactMap f = exact_map_from(orb_map, orb_power);
      const auto o = orbit(f, GaussianRational::parse(orb_point), orb_steps, bit_cap);
      if (out.wants_csv()) {
        std::string body = "index,point\n";
        for (std::size_t k = 0; k < o.points.size(); ++k) body += std::to_string(k) + "," + o.points[k].to_string() + "\n";
        out.csv(body);
      } else {
        out.json("orbit", to_json(o));
      }
    } else if (*height) {
      const ExactMap f = exact_map_from(h_map, h_power);
      const GaussianRational x = GaussianRational::parse(h_point);
      const auto h = canonical_height_estimate(f, x, h_steps, bit_cap);
      if (out.wants_csv()) {
        std::string body = "m,estimate\n";
        for (std::size_t m = 0; m < h.trace.size(); ++m) body += std::to_string(m) + "," + csv_number(h.trace[m]) + "\n";
        out.csv(body);
      } else {
        Json j{{"point", x.to_string()}, {"degree", f.degree()}};
        const Json body = to_json(h);
        for (const auto& [k, v] : body.items()) j[k] = v;
        out.json("height", j);
      }
    } else if (*inter) {
      const ExactMap f = exact_map_from(i_map_f, i_power_f);
      const ExactMap g = exact_map_from(i_map_g, i_power_g);
      const GaussianRational x = GaussianRational::parse(i_x);
      const GaussianRational y = i_y.empty() ? x : GaussianRational::parse(i_y);
      const auto rep = orbit_intersection(f, x, g, y, i_steps, bit_cap, i_prints);
      if (out.wants_csv()) {
        std::string body = "i,j,point,confirmed\n";
        for (const auto& h : rep.hits)
          body += std::to_string(h.i) + "," + std::to_string(h.j) + "," + (h.point ? h.point->to_string() : "") + "," +
                  (h.confirmed ? "true" : "false") + "\n";
        out.csv(body);
      } else {
        Json j = to_json(rep);
        if (i_growth) j["growth"] = to_json(degree_growth_experiment(f, g, x, i_steps, bit_cap));
        out.json("intersection", j);
      }
    } else if (*ver) {
      VerifyOptions opt;
      opt.seed = seed;
      opt.identity_tol = tol;
      if (!ts.empty()) opt.t_values = ts;
      std::vector<SuiteResult> results;
      if (suite == "all") {
        for (const auto& name : suite_names()) results.push_back(run_suite(name, opt));
      } else {
        results.push_back(run_suite(suite, opt));
      }
      bool all = true;
      for (const auto& r : results) all = all && r.passed();
      if (out.wants_csv()) {
        std::string body = "suite,check,deviation,tolerance,passed\n";
        for (const auto& r : results)
          for (const auto& c : r.rows)
            body += r.name + ",\"" + c.label + "\"," + csv_number(c.deviation) + "," + csv_number(c.tolerance) + "," +
                    (c.passed ? "true" : "false") + "\n";
        out.csv(body);
      } else {
        Json suites = Json::array();
        for (const auto& r : results) suites.push_back(to_json(r));
        out.json("verify", Json{{"passed", all}, {"suites", suites}});
      }
      status = all ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "bdyn: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "bdyn: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "bdyn: numerical failure: " << e.what() << "\n";
    return 3;
  }

  if (out.path.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream file(out.path);
    if (!file || !(file << out.text)) {
      std::cerr << "bdyn: cannot write '" << out.path << "'\n";
      return 2;
    }
  }
  return status;
}
