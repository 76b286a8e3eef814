// degdyn: degree growth, Green functions and equilibrium measures for
// rational self-maps. JSON results on stdout; optional CSV/PGM artifacts.

#include <chrono>
#include <complex>
#include <iostream>
#include <random>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "degdyn/degrees.hpp"
#include "degdyn/henon.hpp"
#include "degdyn/map_parser.hpp"
#include "degdyn/onedim.hpp"
#include "degdyn/parallel.hpp"

using nlohmann::json;
using namespace degdyn;
using num::cdouble;

namespace {

constexpr const char* kSchema = "degdyn/1";
constexpr const char* kVersion = "0.1.0";

cdouble parse_complex(const std::string& s) {
  // "re" or "re,im"
  auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

json cplx(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json degree_report_json(const degrees::DegreeReport& r) {
  json j;
  j["model"] = r.model;
  if (!r.d.empty()) j["degrees"] = r.d;
  if (!r.B.empty()) {
    json bs = json::array();
    for (const auto& B : r.B)
      bs.push_back({{B[0][0], B[0][1]}, {B[1][0], B[1][1]}});
    j["bidegrees"] = bs;
  }
  j["lambda1"] = {{"value", r.lambda1}, {"err", r.lambda1_err}};
  j["stable"] = r.stable;
  j["lambdas"] = r.lambdas;
  j["entropy_bound"] = r.entropy_bound;
  if (r.dominant_l)
    j["dominant_l"] = *r.dominant_l;
  else
    j["dominant_l"] = nullptr;
  j["concavity_ok"] = r.concavity_ok;
  j["exact_n"] = r.exact_n;
  j["extended"] = r.extended;
  if (!r.recurrence.empty()) j["recurrence"] = r.recurrence;
  j["guard_hit"] = r.guard_hit;
  return j;
}

json indeterminacy_json(const henon::IndeterminacySet& s) {
  json j;
  j["dim"] = s.dim();
  json pts = json::array();
  for (const auto& p : s.points) {
    json coords = json::array();
    for (const auto& c : p) coords.push_back(mapalg::to_string(c));
    pts.push_back(coords);
  }
  j["points"] = pts;
  json comps = json::array();
  for (const auto& c : s.components) {
    json jc;
    jc["dim"] = c.dim;
    if (!c.vanishing.empty()) jc["vanishing_coords"] = c.vanishing;
    if (c.form) jc["equation"] = c.form->str();
    comps.push_back(jc);
  }
  j["curve_components"] = comps;
  return j;
}

json green_json(const onedim::GreenValue& g) {
  return json{{"value", g.value},
              {"error", g.error},
              {"iters", g.iters},
              {"bounded", g.bounded}};
}

struct Emitter {
  json config;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  int finish(const std::string& command, std::uint64_t seed, json result) {
    json out;
    out["schema"] = kSchema;
    out["version"] = kVersion;
    out["command"] = command;
    out["config"] = config;
    out["seed"] = seed;
    out["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out["result"] = std::move(result);
    std::cout << out.dump(2) << std::endl;
    return 0;
  }
};

std::uint64_t resolve_seed(std::uint64_t seed) {
  if (seed != 0) return seed;
  std::random_device rd;
  return ((std::uint64_t)rd() << 32) ^ rd() ^ 0x9e3779b97f4a7c15ull;
}

henon::HenonMap build_henon(const std::string& p_text, const std::string& a_text) {
  return henon::HenonMap::single(num::Poly1C::parse(p_text), parse_complex(a_text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computable invariants of rational dynamics: degree growth, "
               "Green functions, equilibrium measures"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file, overridden by flags");

  int threads = 1;
  app.add_option("--threads", threads, "worker thread bound")->capture_default_str();

  std::string map_text, model = "proj", phi = "re", psi = "re", grid_spec,
              start = "2.1,0.7", z_text, matrix_text, p_text = "z^2 + 1",
              a_text = "1", inverse_text, out_prefix = "degdyn_out";
  std::uint64_t seed = 0;
  int k = 2, N = 10, depth = 40, samples = 10000, iters = 2000, trials = 3,
      nmax = 10, period = 1, ref_samples = 60000;
  bool holomorphic = false, do_fixed = false, minus = false;

  auto* c_degrees = app.add_subcommand("degrees", "exact degree sequence and lambda_1");
  c_degrees->add_option("--map", map_text, "map text, e.g. \"(z*w+1, z+2)\"")->required();
  c_degrees->add_option("--model", model, "proj | biproj | both")->capture_default_str();
  c_degrees->add_option("--k", k, "ambient dimension")->capture_default_str();
  c_degrees->add_option("--n", N, "iterates")->capture_default_str();

  auto* c_topdeg = app.add_subcommand("topdeg", "topological degree by elimination");
  c_topdeg->add_option("--map", map_text)->required();
  c_topdeg->add_option("--trials", trials)->capture_default_str();
  c_topdeg->add_option("--seed", seed);

  auto* c_classify = app.add_subcommand("classify-quadratic",
                                        "degree pair of a quadratic plane map");
  c_classify->add_option("--map", map_text)->required();
  c_classify->add_option("--seed", seed);

  auto* c_monomial = app.add_subcommand("monomial", "monomial map degrees");
  c_monomial->add_option("--matrix", matrix_text, "e.g. \"1,1;1,0\"")->required();
  c_monomial->add_option("--n", N)->capture_default_str();

  auto* c_green = app.add_subcommand("green", "escape-rate Green function");
  c_green->add_option("--map", map_text, "one-variable polynomial")->required();
  c_green->add_option("--z", z_text, "evaluation point re[,im]");
  c_green->add_option("--grid", grid_spec, "x0:x1:y0:y1:n[:ny] heatmap grid");
  c_green->add_option("--iters", iters)->capture_default_str();
  c_green->add_option("--out", out_prefix)->capture_default_str();

  auto* c_measure = app.add_subcommand("measure", "equilibrium measure sampler");
  c_measure->add_option("--map", map_text)->required();
  c_measure->add_option("--depth", depth)->capture_default_str();
  c_measure->add_option("--samples", samples)->capture_default_str();
  c_measure->add_option("--start", start)->capture_default_str();
  c_measure->add_option("--seed", seed);
  c_measure->add_option("--out", out_prefix)->capture_default_str();
  bool measure_json = false;
  c_measure->add_flag("--json", measure_json, "also dump the points as JSON");

  auto* c_lyap = app.add_subcommand("lyapunov", "Birkhoff and critical-point routes");
  c_lyap->add_option("--map", map_text)->required();
  c_lyap->add_option("--samples", samples)->capture_default_str();
  c_lyap->add_option("--depth", depth)->capture_default_str();
  c_lyap->add_option("--seed", seed);

  auto* c_periodic = app.add_subcommand("periodic", "periodic points of order n");
  c_periodic->add_option("--map", map_text)->required();
  c_periodic->add_option("--n", period)->capture_default_str();
  c_periodic->add_option("--seed", seed);
  c_periodic->add_option("--ref-samples", ref_samples)->capture_default_str();

  auto* c_equidist = app.add_subcommand("equidist", "preimage equidistribution");
  c_equidist->add_option("--map", map_text)->required();
  c_equidist->add_option("--start", start)->capture_default_str();
  c_equidist->add_option("--n-max", nmax)->capture_default_str();
  c_equidist->add_option("--seed", seed);
  c_equidist->add_option("--ref-samples", ref_samples)->capture_default_str();

  auto* c_mixing = app.add_subcommand("mixing", "correlation decay experiment");
  c_mixing->add_option("--map", map_text)->required();
  c_mixing->add_option("--phi", phi)->capture_default_str();
  c_mixing->add_option("--psi", psi)->capture_default_str();
  c_mixing->add_option("--n-max", nmax)->capture_default_str();
  c_mixing->add_option("--samples", samples)->capture_default_str();
  c_mixing->add_option("--seed", seed);

  auto* c_sweep = app.add_subcommand("sweep", "chi(t) over the z^2 + t family");
  c_sweep->add_option("--grid", grid_spec)->required();
  c_sweep->add_option("--iters", iters)->capture_default_str();
  c_sweep->add_option("--out", out_prefix)->capture_default_str();

  auto* c_henon = app.add_subcommand("henon", "Henon Green functions and orbits");
  c_henon->add_option("--p", p_text, "polynomial p(z)")->capture_default_str();
  c_henon->add_option("--a", a_text, "constant a (re[,im])")->capture_default_str();
  c_henon->add_option("--point", z_text, "probe point \"re,im\" on the diagonal or re,im;re,im");
  c_henon->add_option("--grid", grid_spec, "diagonal-slice heatmap grid");
  c_henon->add_flag("--fixed-points", do_fixed, "report fixed points");
  c_henon->add_flag("--minus", minus, "use G- (inverse map)");
  c_henon->add_option("--iters", iters)->capture_default_str();
  c_henon->add_option("--out", out_prefix)->capture_default_str();

  auto* c_reg = app.add_subcommand("regularity", "indeterminacy sets and regularity");
  c_reg->add_option("--p", p_text, "Henon polynomial p(z)");
  c_reg->add_option("--a", a_text)->capture_default_str();
  c_reg->add_option("--map", map_text, "affine polynomial map text");
  c_reg->add_option("--inverse", inverse_text, "its inverse, affine text");
  c_reg->add_option("--k", k)->capture_default_str();

  auto* c_fix = app.add_subcommand("fixcount", "affine fixed points of f^n");
  c_fix->add_option("--map", map_text)->required();
  c_fix->add_option("--n", period)->capture_default_str();
  c_fix->add_option("--seed", seed);
  c_fix->add_flag("--holomorphic", holomorphic,
                  "map extends holomorphically: report the Lefschetz total");

  for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  // Flat config file: inject "key = value" pairs as options right after the
  // subcommand token, so explicit flags (parsed later) win.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") {
      std::ifstream cf(args[i + 1]);
      if (!cf) {
        std::cerr << "input error: cannot read config file " << args[i + 1] << "\n";
        return 2;
      }
      std::vector<std::string> injected;
      std::string line;
      while (std::getline(cf, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
          s.erase(0, s.find_first_not_of(" \t"));
          auto last = s.find_last_not_of(" \t");
          s.erase(last == std::string::npos ? 0 : last + 1);
          return s;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) continue;
        injected.push_back("--" + key);
        injected.push_back(val);
      }
      // subcommand is the first non-flag token
      std::size_t at = 0;
      while (at < args.size() && args[at].rfind("-", 0) == 0) at += 2;
      args.insert(args.begin() + (long)std::min(at + 1, args.size()),
                  injected.begin(), injected.end());
      break;
    }

  try {
    std::vector<const char*> cargs = {argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse((int)cargs.size(), cargs.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // flag/usage problems are input errors (exit 2); --help stays 0
    return code == 0 ? 0 : 2;
  }

  Emitter em;
  for (const auto* opt : app.get_options())
    if (opt->count() && opt->get_name() != "--config")
      em.config[opt->get_name()] = opt->results().front();
  CLI::App* sub = app.get_subcommands().front();
  for (const auto* opt : sub->get_options())
    if (opt->count()) em.config[opt->get_name()] = opt->results().front();
  em.config["threads"] = threads;

  try {
    seed = resolve_seed(seed);

    if (sub == c_degrees) {
      json res;
      if (model == "proj" || model == "both") {
        auto parsed = mapalg::parse_map(map_text, {mapalg::MapModel::Proj, k});
        res["proj"] =
            degree_report_json(degrees::degree_sequence(std::get<mapalg::ProjMap>(parsed), N));
      }
      if (model == "biproj" || model == "both") {
        auto parsed = mapalg::parse_map(map_text, {mapalg::MapModel::BiProj, k});
        res["biproj"] = degree_report_json(
            degrees::degree_sequence(std::get<mapalg::BiProjMap>(parsed), N));
      }
      if (res.empty()) throw InputError("unknown model '" + model + "'");
      return em.finish("degrees", seed, res);
    }

    if (sub == c_topdeg) {
      auto f = mapalg::parse_affine(map_text, 2);
      long d = degrees::topological_degree(f, trials, seed);
      return em.finish("topdeg", seed, json{{"topological_degree", d}, {"trials", trials}});
    }

    if (sub == c_classify) {
      auto f = mapalg::parse_affine(map_text, 2);
      auto c = degrees::classify_quadratic(f, seed);
      json res;
      res["lambda1"] = c.lambda1;
      res["lambda2"] = c.lambda2;
      res["matched_class"] = c.matched_class.empty() ? json(nullptr) : json(c.matched_class);
      if (!c.warning.empty()) res["warning"] = c.warning;
      res["p2"] = degree_report_json(c.on_p2);
      res["p1xp1"] = degree_report_json(c.on_biproj);
      return em.finish("classify-quadratic", seed, res);
    }

    if (sub == c_monomial) {
      std::vector<std::vector<long>> A;
      std::stringstream rows(matrix_text);
      std::string row;
      while (std::getline(rows, row, ';')) {
        std::vector<long> r;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) r.push_back(std::stol(cell));
        A.push_back(r);
      }
      auto rep = degrees::monomial_degrees(A, N);
      json res;
      res["k"] = rep.k;
      res["lambda1"] = rep.lambda1;
      res["lambda_k"] = rep.lambda_k;
      if (!rep.bidegrees.empty()) {
        json bs = json::array(), ps = json::array();
        for (const auto& B : rep.bidegrees)
          bs.push_back({{B[0][0], B[0][1]}, {B[1][0], B[1][1]}});
        for (const auto& B : rep.predicted)
          ps.push_back({{B[0][0], B[0][1]}, {B[1][0], B[1][1]}});
        res["bidegrees"] = bs;
        res["predicted_abs_An"] = ps;
        res["sequence_matches"] = rep.sequence_matches;
      }
      if (!rep.conjectural_lambdas.empty()) {
        res["conjectural_lambdas"] = rep.conjectural_lambdas;
        res["conjectural_note"] =
            "products of eigenvalue moduli; prediction only, not a verified output";
      }
      return em.finish("monomial", seed, res);
    }

    if (sub == c_green) {
      num::Poly1C f = num::Poly1C::parse(map_text);
      onedim::GreenParams gp;
      gp.max_iter = iters;
      json res;
      res["degree"] = f.degree();
      res["escape_radius"] = onedim::auto_escape_radius(f);
      if (!z_text.empty()) res["at"] = green_json(onedim::green(f, parse_complex(z_text), gp));
      if (!grid_spec.empty()) {
        auto grid = num::GridSpec::parse(grid_spec);
        std::vector<double> vals((std::size_t)grid.nx * grid.ny);
        num::parallel_for((std::size_t)grid.nx * grid.ny, threads, [&](std::size_t idx) {
          int i = (int)(idx % (std::size_t)grid.nx);
          int j = (int)(idx / (std::size_t)grid.nx);
          vals[idx] = onedim::green(f, grid.node(i, j), gp).value;
        });
        num::write_pgm16(out_prefix + ".pgm", grid, vals);
        std::vector<std::vector<double>> rows;
        for (int j = 0; j < grid.ny; ++j)
          for (int i = 0; i < grid.nx; ++i)
            rows.push_back({grid.node(i, j).real(), grid.node(i, j).imag(),
                            vals[(std::size_t)(j * grid.nx + i)]});
        num::write_csv(out_prefix + ".csv", {"re", "im", "green"}, rows);
        res["pgm"] = out_prefix + ".pgm";
        res["csv"] = out_prefix + ".csv";
      }
      if (res.find("at") == res.end() && grid_spec.empty())
        throw InputError("green: provide --z or --grid");
      return em.finish("green", seed, res);
    }

    if (sub == c_measure) {
      onedim::SamplerParams sp;
      sp.depth = depth;
      sp.count = samples;
      sp.start = parse_complex(start);
      sp.seed = seed;
      sp.threads = threads;
      auto m = onedim::sample_measure(num::Poly1C::parse(map_text), sp);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < m.points.size(); ++i)
        rows.push_back({m.points[i].real(), m.points[i].imag(), m.weight(i)});
      num::write_csv(out_prefix + ".csv", {"re", "im", "weight"}, rows);
      json res;
      res["samples"] = m.points.size();
      res["csv"] = out_prefix + ".csv";
      if (measure_json) {
        json pts = json::array();
        for (std::size_t i = 0; i < m.points.size(); ++i)
          pts.push_back({{"re", m.points[i].real()},
                         {"im", m.points[i].imag()},
                         {"weight", m.weight(i)}});
        std::ofstream jf(out_prefix + ".json");
        jf << json{{"points", pts}}.dump() << "\n";
        res["json"] = out_prefix + ".json";
      }
      res["provenance"] = {{"seed", m.provenance.seed},
                           {"depth", m.provenance.depth},
                           {"start", cplx(m.provenance.start)},
                           {"resampled_paths", m.provenance.resampled_paths},
                           {"perturbed_nodes", m.provenance.perturbed_nodes}};
      return em.finish("measure", seed, res);
    }

    if (sub == c_lyap) {
      onedim::SamplerParams sp;
      sp.depth = depth;
      sp.count = samples;
      sp.seed = seed;
      sp.threads = threads;
      auto rep = onedim::lyapunov_report(num::Poly1C::parse(map_text), sp);
      json res;
      res["chi_birkhoff"] = {{"value", rep.birkhoff.chi},
                             {"stderr", rep.birkhoff.stderr_},
                             {"samples_used", rep.birkhoff.used},
                             {"excluded_near_critical", rep.birkhoff.excluded},
                             {"warning", rep.birkhoff.warning}};
      res["chi_critical"] = rep.chi_critical;
      res["dimension"] = rep.dimension;
      return em.finish("lyapunov", seed, res);
    }

    if (sub == c_periodic) {
      num::Poly1C f = num::Poly1C::parse(map_text);
      onedim::SamplerParams sp;
      sp.count = ref_samples;
      sp.seed = seed ^ 0x4ef5;
      sp.threads = threads;
      auto ref = onedim::sample_measure(f, sp);
      auto rep = onedim::periodic_points(f, period, seed, &ref);
      json orbits = json::array();
      for (const auto& o : rep.orbits) {
        const char* type = o.type == onedim::PeriodicOrbit::Type::Repelling ? "repelling"
                           : o.type == onedim::PeriodicOrbit::Type::Attracting
                               ? "attracting"
                               : "indifferent";
        orbits.push_back({{"period", o.period},
                          {"representative", cplx(o.representative)},
                          {"multiplier", cplx(o.multiplier)},
                          {"type", type}});
      }
      json res;
      res["n"] = rep.n;
      res["root_count"] = rep.root_count;
      res["repelling_fraction"] = rep.repelling_fraction;
      res["max_residual"] = rep.max_residual;
      res["orbits"] = orbits;
      if (rep.distance_to_reference)
        res["distance_to_sampled_measure"] = *rep.distance_to_reference;
      return em.finish("periodic", seed, res);
    }

    if (sub == c_equidist) {
      num::Poly1C f = num::Poly1C::parse(map_text);
      onedim::SamplerParams sp;
      sp.count = ref_samples;
      sp.seed = seed;
      sp.threads = threads;
      auto ref = onedim::sample_measure(f, sp);
      std::vector<int> depths;
      for (int n = 1; n <= nmax; ++n) depths.push_back(n);
      auto rep = onedim::preimage_equidistribution(f, parse_complex(start), depths, ref);
      json res;
      res["depths"] = rep.depths;
      res["distances"] = rep.distances;
      res["decreasing_within_slack"] = rep.decreasing_within_slack;
      return em.finish("equidist", seed, res);
    }

    if (sub == c_mixing) {
      onedim::SamplerParams sp;
      sp.count = samples;
      sp.seed = seed;
      sp.threads = threads;
      auto rep = onedim::mixing_experiment(num::Poly1C::parse(map_text), phi, psi, nmax, sp);
      json res;
      res["correlations"] = rep.correlations;
      res["noise_floor"] = rep.noise_floor;
      res["fit_points"] = rep.fit_points;
      if (rep.fitted_exponent) res["fitted_exponent"] = *rep.fitted_exponent;
      return em.finish("mixing", seed, res);
    }

    if (sub == c_sweep) {
      auto grid = num::GridSpec::parse(grid_spec);
      auto sw = onedim::parameter_sweep(grid, iters, threads);
      std::vector<std::vector<double>> rows;
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          rows.push_back({grid.node(i, j).real(), grid.node(i, j).imag(),
                          sw.chi[(std::size_t)(j * grid.nx + i)]});
      num::write_csv(out_prefix + ".csv", {"t_re", "t_im", "chi"}, rows);
      num::write_pgm16(out_prefix + ".pgm", grid, sw.chi);
      json res;
      res["submean_fraction"] = sw.submean_fraction;
      res["csv"] = out_prefix + ".csv";
      res["pgm"] = out_prefix + ".pgm";
      return em.finish("sweep", seed, res);
    }

    if (sub == c_henon) {
      auto h = build_henon(p_text, a_text);
      onedim::GreenParams gp;
      gp.max_iter = iters;
      json res;
      res["degree"] = h.degree();
      res["jacobian"] = cplx(h.jacobian());
      res["escape_radius"] = henon::henon_escape_radius(h);
      if (!z_text.empty()) {
        henon::C2 x;
        auto semi = z_text.find(';');
        if (semi == std::string::npos) {
          x = {parse_complex(z_text), parse_complex(z_text)};
        } else {
          x = {parse_complex(z_text.substr(0, semi)),
               parse_complex(z_text.substr(semi + 1))};
        }
        auto cls = henon::classify_point(h, x, gp);
        res["point"] = {{"g_plus", green_json(cls.gplus)},
                        {"g_minus", green_json(cls.gminus)},
                        {"in_K_plus", cls.in_K_plus},
                        {"in_K_minus", cls.in_K_minus},
                        {"in_K", cls.in_K}};
      }
      if (do_fixed) {
        json fps = json::array();
        for (const auto& fp : henon::fixed_points(h)) {
          const char* type = fp.type == henon::HenonFixedPoint::Type::Saddle ? "saddle"
                             : fp.type == henon::HenonFixedPoint::Type::Attracting
                                 ? "attracting"
                                 : fp.type == henon::HenonFixedPoint::Type::Repelling
                                     ? "repelling"
                                     : "indifferent";
          fps.push_back({{"z", cplx(fp.point[0])},
                         {"w", cplx(fp.point[1])},
                         {"eigenvalues", {cplx(fp.eigenvalues[0]), cplx(fp.eigenvalues[1])}},
                         {"type", type}});
        }
        res["fixed_points"] = fps;
      }
      if (!grid_spec.empty()) {
        // diagonal slice w = z-bar style heatmap: (re, im) -> (z, z)
        auto grid = num::GridSpec::parse(grid_spec);
        std::vector<double> vals((std::size_t)grid.nx * grid.ny);
        num::parallel_for((std::size_t)grid.nx * grid.ny, threads, [&](std::size_t idx) {
          int i = (int)(idx % (std::size_t)grid.nx);
          int j = (int)(idx / (std::size_t)grid.nx);
          cdouble z = grid.node(i, j);
          henon::C2 x = {z, z};
          vals[idx] = minus ? henon::green_minus(h, x, gp).value
                            : henon::green_plus(h, x, gp).value;
        });
        num::write_pgm16(out_prefix + ".pgm", grid, vals);
        std::vector<std::vector<double>> rows;
        for (int j = 0; j < grid.ny; ++j)
          for (int i = 0; i < grid.nx; ++i)
            rows.push_back({grid.node(i, j).real(), grid.node(i, j).imag(),
                            vals[(std::size_t)(j * grid.nx + i)]});
        num::write_csv(out_prefix + ".csv", {"re", "im", "green"}, rows);
        res["pgm"] = out_prefix + ".pgm";
        res["csv"] = out_prefix + ".csv";
        res["slice"] = "w = z";
        res["side"] = minus ? "G-" : "G+";
      }
      return em.finish("henon", seed, res);
    }

    if (sub == c_reg) {
      henon::RegularityReport rep;
      if (!map_text.empty()) {
        if (inverse_text.empty())
          throw InputError("regularity: --map needs --inverse");
        rep = henon::regularity_check(mapalg::parse_affine(map_text, k),
                                      mapalg::parse_affine(inverse_text, k));
      } else {
        rep = henon::regularity_check(build_henon(p_text, a_text));
      }
      json res;
      res["regular"] = rep.regular;
      res["l"] = rep.l;
      res["lambda1"] = rep.lambda1;
      res["lambda_check"] = rep.lambda_check;
      res["I_f"] = indeterminacy_json(rep.i_f);
      res["I_f_inverse"] = indeterminacy_json(rep.i_finv);
      if (!rep.note.empty()) res["note"] = rep.note;
      return em.finish("regularity", seed, res);
    }

    if (sub == c_fix) {
      auto f = mapalg::parse_affine(map_text, 2);
      auto rep = degrees::fixed_point_count(f, period, seed, holomorphic);
      json res;
      res["period"] = rep.period;
      res["affine_count"] = rep.affine_count;
      if (rep.lefschetz_total) res["lefschetz_total"] = *rep.lefschetz_total;
      return em.finish("fixcount", seed, res);
    }

    throw InputError("unknown subcommand");
  } catch (const mapalg::ParseError& e) {
    std::cerr << "input error: " << e.what() << " (offset " << e.offset << ")\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
