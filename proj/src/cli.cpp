#include "freewave/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "freewave/compact_wave.hpp"
#include "freewave/errors.hpp"
#include "freewave/matching.hpp"
#include "freewave/pde_verify.hpp"
#include "freewave/phase_plane.hpp"

namespace freewave {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kCommands = {"speed", "two",        "three",  "semiwave",
                                            "compact", "dispersion", "verify"};

// Keys a config file may carry; flags use the same names.
const std::vector<std::string> kKeys = {"f",    "g",    "f1",   "f2", "f3", "alpha", "beta",
                                        "gamma", "sigma", "c",  "grid", "kind", "L",  "N",
                                        "T",    "out",  "plot", "far_tol"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---- resolved configuration ----

struct Resolved {
  std::string command;
  json cfg = json::object();

  bool has(const std::string& k) const { return cfg.contains(k); }

  double number(const std::string& k) const {
    if (!has(k)) throw SchemaError(command + ": missing required value '" + k + "'");
    if (!cfg[k].is_number()) throw SchemaError("config field '" + k + "' must be a number");
    return cfg[k].get<double>();
  }
  double number_or(const std::string& k, double dflt) const { return has(k) ? number(k) : dflt; }

  ReactionSpec reaction(const std::string& k) const {
    if (!has(k)) throw SchemaError(command + ": missing required reaction '" + k + "'");
    const auto& j = cfg[k];
    if (j.is_string()) return parse_reaction(j.get<std::string>());
    if (j.is_object()) return reaction_from_json(j);
    throw SchemaError("config field '" + k + "' must be a string or a reaction object");
  }
};

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw SchemaError("config file '" + path + "' must hold a JSON object");
  for (const auto& [k, _] : j.items()) {
    if (k == "command") continue;
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) {
      throw SchemaError("config file '" + path + "': unknown field '" + k + "'");
    }
  }
  return j;
}

std::vector<double> parse_grid(const json& j) {
  if (j.is_array()) {
    std::vector<double> g;
    for (const auto& x : j) {
      if (!x.is_number()) throw SchemaError("grid array must hold numbers");
      g.push_back(x.get<double>());
    }
    return g;
  }
  if (!j.is_string()) throw SchemaError("grid must be 'lo:hi:n' or an array of numbers");
  const auto text = j.get<std::string>();
  double lo, hi;
  int n;
  char tail;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &tail) != 3 || n < 1 ||
      (n > 1 && !(lo < hi))) {
    throw SchemaError("grid '" + text + "' is not of the form lo:hi:n with lo < hi, n >= 1");
  }
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

// ---- output ----

class Writer {
 public:
  Writer(const Resolved& r, std::ostream& out) : r_(r), out_(out) {
    if (r.has("out")) {
      dir_ = r.cfg["out"].get<std::string>();
      fs::create_directories(*dir_);
    }
    plot_ = r.has("plot") && r.cfg["plot"].get<bool>();
  }

  void value(const std::string& key, double v) { out_ << key << " = " << fmt(v) << '\n'; }
  void text(const std::string& key, const std::string& v) { out_ << key << " = " << v << '\n'; }

  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& cols) {
    if (!dir_) return;
    std::ofstream f(*dir_ / (name + ".csv"), std::ios::binary);
    f << "# config: " << r_.cfg.dump() << '\n';
    for (std::size_t k = 0; k < header.size(); ++k) f << (k ? "," : "") << header[k];
    f << '\n';
    for (std::size_t i = 0; i < cols[0].size(); ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) f << (k ? "," : "") << fmt(cols[k][i]);
      f << '\n';
    }
    if (plot_) svg(name, header, cols);
  }

  void profile(const std::string& name, const Profile& p) {
    csv(name, {"z", "value"}, {p.z, p.value});
  }

  void json_file(const std::string& name, json j) {
    if (!dir_) return;
    j["config"] = r_.cfg;
    std::ofstream f(*dir_ / (name + ".json"), std::ios::binary);
    f << j.dump(2) << '\n';
  }

 private:
  // One polyline per data column against the first column.
  void svg(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& cols) {
    const double W = 640, H = 400, M = 40;
    const auto& x = cols[0];
    if (x.empty()) return;
    double x0 = *std::min_element(x.begin(), x.end()), x1 = *std::max_element(x.begin(), x.end());
    double y0 = 1e300, y1 = -1e300;
    for (std::size_t k = 1; k < cols.size(); ++k) {
      y0 = std::min(y0, *std::min_element(cols[k].begin(), cols[k].end()));
      y1 = std::max(y1, *std::max_element(cols[k].begin(), cols[k].end()));
    }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c"};
    std::ofstream f(*dir_ / (name + ".svg"), std::ios::binary);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << M << "\" y=\"20\" font-size=\"12\">" << name << " (x: " << header[0]
      << " " << fmt(x0) << " .. " << fmt(x1) << ", y " << fmt(y0) << " .. " << fmt(y1)
      << ")</text>\n";
    for (std::size_t k = 1; k < cols.size(); ++k) {
      f << "<polyline fill=\"none\" stroke=\"" << colours[(k - 1) % 3] << "\" points=\"";
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double px = M + (W - 2 * M) * (x[i] - x0) / (x1 - x0);
        const double py = H - M - (H - 2 * M) * (cols[k][i] - y0) / (y1 - y0);
        f << fmt(px) << ',' << fmt(py) << ' ';
      }
      f << "\"/>\n";
    }
    f << "</svg>\n";
  }

  const Resolved& r_;
  std::ostream& out_;
  std::optional<fs::path> dir_;
  bool plot_ = false;
};

json window_json(const SpeedWindow& w) {
  return {{"c_star_l", w.c_star_l}, {"c_star_r", w.c_star_r}, {"L_sigma", w.L_sigma},
          {"R_sigma", w.R_sigma}};
}

// ---- commands ----

void cmd_speed(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f = r.reaction("f");
  const double cf = critical_speed_decreasing(f, sc);
  w.text("reaction", f.label());
  w.text("kind", to_string(f.kind()));
  w.value("c_star_f", cf);
  w.value("c_star_g", -cf);
  w.json_file("speed", {{"reaction", f.label()}, {"c_star_f", cf}, {"c_star_g", -cf}});
}

void cmd_semiwave(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f = r.reaction("f");
  const double c = r.number("c");
  const double tol = r.number_or("far_tol", 1e-8);
  const auto sw = semiwave_profile(f, c, tol, sc);
  w.value("slope0", sw.slope0);
  w.value("domain_length", sw.domain_length);
  json j{{"f", {{"slope0", sw.slope0}, {"domain_length", sw.domain_length}}}};
  w.profile("semiwave_f", sw.profile);
  if (r.has("g")) {
    const auto g = r.reaction("g");
    const auto inc = semiwave_profile_increasing(g, c, tol, sc);
    w.value("slope0_increasing", inc.slope0);
    w.value("domain_length_increasing", inc.domain_length);
    j["g"] = {{"slope0", inc.slope0}, {"domain_length", inc.domain_length}};
    w.profile("semiwave_g", inc.profile);
  }
  w.json_file("semiwave", j);
}

void cmd_compact(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f2 = r.reaction(r.has("f2") ? "f2" : "f");
  const double sigma = r.number("sigma");
  const auto win = speed_window(f2, sigma, sc);
  w.value("c_star_l", win.c_star_l);
  w.value("c_star_r", win.c_star_r);
  w.value("L_sigma", win.L_sigma);
  w.value("R_sigma", win.R_sigma);
  json j{{"window", window_json(win)}};
  if (r.has("c")) {
    const auto cw = compact_profile(f2, sigma, r.number("c"), sc);
    w.value("width", cw.width);
    w.value("apex", cw.apex);
    w.value("slope_left", cw.slope_left);
    w.value("slope_right", cw.slope_right);
    j["wave"] = {{"c", cw.c},
                 {"width", cw.width},
                 {"apex", cw.apex},
                 {"slope_left", cw.slope_left},
                 {"slope_right", cw.slope_right}};
    w.profile("compact", cw.profile);
  }
  w.json_file("compact", j);
}

void cmd_two(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f = r.reaction("f");
  const auto g = r.reaction("g");
  const auto wave = solve_two_species(f, g, r.number("alpha"), r.number("beta"), sc,
                                      r.number_or("far_tol", 1e-8));
  w.value("c", wave.c);
  w.value("tilde_beta", wave.tilde_beta);
  w.value("residual", wave.residual);
  w.text("sign_law", wave.sign_law_holds ? "holds" : "violated");
  w.profile("two_left", wave.left.profile);
  w.profile("two_right", wave.right.profile);
  w.json_file("two", {{"c", wave.c},
                      {"alpha", wave.alpha},
                      {"beta", wave.beta},
                      {"tilde_beta", wave.tilde_beta},
                      {"slope_left", wave.left.slope0},
                      {"slope_right", wave.right.slope0},
                      {"residual", wave.residual},
                      {"sign_law_holds", wave.sign_law_holds}});
}

void cmd_three(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f1 = r.reaction("f1");
  const auto f2 = r.reaction("f2");
  const auto f3 = r.reaction("f3");
  const auto wave =
      solve_three_species(f1, f2, f3, r.number("alpha"), r.number("gamma"), r.number("sigma"),
                          r.number("c"), sc, r.number_or("far_tol", 1e-8));
  w.value("c", wave.c);
  w.value("beta_l", wave.beta_l);
  w.value("beta_r", wave.beta_r);
  w.value("tilde_beta_l", wave.tilde_beta_l);
  w.value("tilde_beta_r", wave.tilde_beta_r);
  w.value("c_minus", wave.c_minus);
  w.value("c_plus", wave.c_plus);
  w.text("case", to_string(wave.case_tag.left_case) + "/" + to_string(wave.case_tag.right_case));
  w.value("width", wave.middle.width);
  w.text("sign_law", wave.sign_law_holds ? "holds" : "violated");
  w.profile("three_left", wave.left.profile);
  w.profile("three_middle", wave.middle.profile);
  w.profile("three_right", wave.right.profile);
  w.json_file("three", {{"c", wave.c},
                        {"beta_l", wave.beta_l},
                        {"beta_r", wave.beta_r},
                        {"tilde_beta_l", wave.tilde_beta_l},
                        {"tilde_beta_r", wave.tilde_beta_r},
                        {"c_minus", wave.c_minus},
                        {"c_plus", wave.c_plus},
                        {"left_case", to_string(wave.case_tag.left_case)},
                        {"right_case", to_string(wave.case_tag.right_case)},
                        {"width", wave.middle.width},
                        {"residual_l", wave.residual_l},
                        {"residual_r", wave.residual_r},
                        {"sign_law_holds", wave.sign_law_holds}});
}

void cmd_dispersion(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto kind = parse_dispersion_kind(r.has("kind") ? r.cfg["kind"].get<std::string>()
                                                        : std::string("two_beta"));
  DispersionParams p;
  if (kind == DispersionKind::three) {
    p.reactions = {r.reaction("f1"), r.reaction("f2"), r.reaction("f3")};
    p.alpha = r.number("alpha");
    p.gamma = r.number("gamma");
    p.sigma = r.number("sigma");
  } else {
    p.reactions = {r.reaction("f"), r.reaction("g")};
    if (kind == DispersionKind::two_beta) p.alpha = r.number("alpha");
    else p.beta = r.number("beta");
  }
  std::vector<double> grid;
  if (r.has("grid")) {
    grid = parse_grid(r.cfg["grid"]);
  } else {
    // 50 points inside the admissible interval, 1e-3 away from its ends.
    const auto bounds = dispersion_curve(kind, p, {}, sc);
    const double lo = bounds.lo + 1e-3, hi = bounds.hi - 1e-3;
    for (int i = 0; i < 50; ++i) grid.push_back(lo + (hi - lo) * i / 49);
  }
  const auto curve = dispersion_curve(kind, p, grid, sc);
  w.text("kind", to_string(kind));
  w.value("lo", curve.lo);
  w.value("hi", curve.hi);
  json mono = json::object();
  for (std::size_t k = 0; k < curve.columns.size(); ++k) {
    const int m = curve.monotonicity[k];
    const std::string s = m > 0 ? "increasing" : m < 0 ? "decreasing" : "not monotone";
    w.text(curve.columns[k], s);
    mono[curve.columns[k]] = s;
  }
  std::vector<std::string> header{"c"};
  std::vector<std::vector<double>> cols{curve.c};
  for (std::size_t k = 0; k < curve.columns.size(); ++k) {
    header.push_back(curve.columns[k]);
    cols.push_back(curve.values[k]);
  }
  w.csv("dispersion", header, cols);
  w.json_file("dispersion", {{"kind", to_string(kind)},
                             {"lo", curve.lo},
                             {"hi", curve.hi},
                             {"points", curve.c.size()},
                             {"monotonicity", mono}});
}

void cmd_verify(const Resolved& r, const ShootingConfig& sc, Writer& w) {
  const auto f = r.reaction("f");
  const auto g = r.reaction("g");
  const auto wave = solve_two_species(f, g, r.number("alpha"), r.number("beta"), sc);
  const double L = r.number_or("L", 40.0);
  const double Nd = r.number_or("N", 2000.0);
  if (!(Nd >= 3 && Nd == std::floor(Nd))) throw SchemaError("N must be an integer >= 3");
  const auto rep = run(wave, f, g, L, static_cast<int>(Nd), r.number_or("T", 20.0));
  w.value("c", wave.c);
  w.value("mean_speed", rep.mean_speed);
  if (wave.c != 0.0) w.value("relative_error", std::abs(rep.mean_speed - wave.c) / std::abs(wave.c));
  w.value("profile_drift", rep.profile_drift);
  std::vector<std::vector<double>> hist(3);
  for (const auto& s : rep.speed_history) {
    hist[0].push_back(s.t);
    hist[1].push_back(s.s);
    hist[2].push_back(s.speed);
  }
  w.csv("verify_speed", {"t", "s", "speed"}, hist);
  const auto& st = rep.final_state;
  const std::size_t n = st.u.size() - 1;
  Profile pu, pv;
  for (std::size_t i = 0; i <= n; ++i) {
    pu.z.push_back(-st.length() + static_cast<double>(i) * st.dx);
    pu.value.push_back(std::max(0.0, st.u[i]));
    pv.z.push_back(static_cast<double>(i) * st.dx);
    pv.value.push_back(std::max(0.0, st.v[i]));
  }
  w.profile("verify_final_u", pu);
  w.profile("verify_final_v", pv);
  w.json_file("verify", {{"c", wave.c},
                         {"mean_speed", rep.mean_speed},
                         {"profile_drift", rep.profile_drift},
                         {"min_value", rep.min_value},
                         {"dt", rep.dt},
                         {"steps", rep.steps}});
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& msg, int code) {
  err << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << std::endl;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling waves with free boundaries: speeds, semi-waves, compact waves, "
               "matching and PDE verification",
               "freewave"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::map<std::string, std::string> str_opts;
  std::map<std::string, double> num_opts;
  std::string config_path;
  bool plot = false;
  auto add_str = [&](const std::string& flags, const std::string& key, const std::string& desc) {
    return app.add_option(flags, str_opts[key], desc);
  };
  auto add_num = [&](const std::string& flags, const std::string& key, const std::string& desc) {
    return app.add_option(flags, num_opts[key], desc);
  };
  add_str("--f,--reaction", "f", "left reaction (logistic, cubic:θ, polynomial:a0,a1,...)");
  add_str("--g", "g", "right reaction");
  add_str("--f1", "f1", "three species: left reaction");
  add_str("--f2", "f2", "three species: middle reaction");
  add_str("--f3", "f3", "three species: right reaction");
  add_num("--alpha", "alpha", "left coefficient");
  add_num("--beta", "beta", "right coefficient (two species)");
  add_num("--gamma", "gamma", "right coefficient (three species)");
  add_num("--sigma", "sigma", "compact wave height");
  add_num("--c", "c", "wave speed");
  add_str("--grid", "grid", "speed grid lo:hi:n");
  add_str("--kind", "kind", "dispersion kind: two_beta, two_alpha, three");
  add_num("--L", "L", "verify: half-length of the domain");
  add_num("--N", "N", "verify: intervals per side");
  add_num("--T", "T", "verify: final time");
  add_num("--far-tol", "far_tol", "semi-wave truncation tolerance");
  add_str("--out", "out", "output directory for CSV/JSON/SVG");
  app.add_option("--config", config_path, "JSON config file; flags override it");
  app.add_flag("--plot", plot, "also write SVG plots");
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : kCommands) subs[c] = app.add_subcommand(c);
  subs["speed"]->description("critical front speeds of --f");
  subs["semiwave"]->description("semi-wave of --f (and --g) at speed --c");
  subs["compact"]->description("speed window and compact wave of --f2 at height --sigma");
  subs["two"]->description("two-species wave for --f --g --alpha --beta");
  subs["three"]->description("three-species wave for --f1 --f2 --f3 --alpha --gamma --sigma --c");
  subs["dispersion"]->description("coefficient curves over a speed grid");
  subs["verify"]->description("front-fixing simulation of an assembled two-species wave");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what(), 2);
    return 2;
  }

  try {
    Resolved r;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) r.command = name;
    }
    if (!config_path.empty()) r.cfg = load_config_file(config_path);
    r.cfg.erase("command");
    for (const auto& [k, v] : str_opts) {
      if (app.get_option(k == "f" ? "--f" : "--" + k)->count() > 0) r.cfg[k] = v;
    }
    for (const auto& [k, v] : num_opts) {
      const std::string flag = k == "far_tol" ? "--far-tol" : "--" + k;
      if (app.get_option(flag)->count() > 0) r.cfg[k] = v;
    }
    if (plot) r.cfg["plot"] = true;
    if (r.has("plot") && !r.cfg["plot"].is_boolean()) throw SchemaError("plot must be a boolean");
    if (r.has("out") && !r.cfg["out"].is_string()) throw SchemaError("out must be a string");
    if (r.has("kind") && !r.cfg["kind"].is_string()) throw SchemaError("kind must be a string");

    ShootingConfig sc;
    if (const char* tol = std::getenv("FREEWAVE_TOL"); tol && *tol) {
      char* end = nullptr;
      const double v = std::strtod(tol, &end);
      if (*end != '\0' || !(v > 0.0)) {
        throw SchemaError(std::string("FREEWAVE_TOL must be a positive number, got '") + tol + "'");
      }
      sc.root_tol = v;
    }
    json resolved = r.cfg;
    resolved["command"] = r.command;
    resolved["root_tol"] = sc.root_tol;
    r.cfg = resolved;

    Writer w(r, out);
    w.text("command", r.command);
    if (r.command == "speed") cmd_speed(r, sc, w);
    else if (r.command == "semiwave") cmd_semiwave(r, sc, w);
    else if (r.command == "compact") cmd_compact(r, sc, w);
    else if (r.command == "two") cmd_two(r, sc, w);
    else if (r.command == "three") cmd_three(r, sc, w);
    else if (r.command == "dispersion") cmd_dispersion(r, sc, w);
    else cmd_verify(r, sc, w);
    return 0;
  } catch (const SchemaError& e) {
    emit_error(err, "schema", e.what(), 3);
    return 3;
  } catch (const DomainError& e) {
    emit_error(err, "infeasible", e.what(), 4);
    return 4;
  } catch (const std::exception& e) {
    emit_error(err, "numerical", e.what(), 1);
    return 1;
  }
}

}  // namespace freewave
