#include "cattaneo/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cattaneo {
namespace {

nlohmann::json grid_json(const GridSpec& g) {
  return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}, {"log", g.log}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec g;
  g.lo = j.at("lo").get<double>();
  g.hi = j.at("hi").get<double>();
  g.points = j.at("points").get<std::size_t>();
  g.log = j.value("log", true);
  return g;
}

}  // namespace

void GridSpec::validate(std::string_view what) const {
  const std::string name(what);
  if (!(lo > 0.0) || !std::isfinite(lo)) throw InvalidParameters(name + " grid needs lo > 0");
  if (!(hi > lo) || !std::isfinite(hi)) throw InvalidParameters(name + " grid needs lo < hi");
  if (points < 2) throw InvalidParameters(name + " grid needs at least 2 points");
}

std::vector<double> GridSpec::values() const {
  validate("requested");
  if (log) return geometric_grid(lo, hi, points);
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = hi;
  return g;
}

void RunConfig::validate() const {
  cattaneo::validate(parameters);
  if (modes == 0) throw InvalidParameters("modes must be >= 1");
  if (s_grid) s_grid->validate("frequency");
  if (t_grid) t_grid->validate("time");
  if (fit_window && !(fit_window->lo > 0.0 && fit_window->hi > fit_window->lo)) {
    throw InvalidParameters("fit window needs 0 < lo < hi");
  }
  // Generates and checks the sequence itself.
  (void)cattaneo::spectrum(spectrum, modes);
}

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.parameters = {1.0, 0.0, 0.5, 1.0, 2.0, 1.0};
  if (name == "biharmonic-hinged-m1") {
    c.parameters.m = 1.0;
  } else if (name == "biharmonic-hinged-m0") {
    c.parameters.m = 0.0;
  } else {
    throw InvalidParameters("unknown preset '" + std::string(name) +
                            "' (expected biharmonic-hinged-m1 or biharmonic-hinged-m0)");
  }
  c.spectrum_text = "biharmonic1d";
  c.spectrum = SpectrumModel::biharmonic_1d();
  c.modes = 200;
  c.preset = std::string(name);
  return c;
}

SpectrumModel parse_spectrum(std::string_view text) {
  constexpr std::string_view list_prefix = "list:";
  if (text.substr(0, list_prefix.size()) == list_prefix) {
    const std::filesystem::path path(std::string(text.substr(list_prefix.size())));
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) {
      std::ifstream in(path);
      if (!in) throw InvalidParameters("cannot read spectrum file " + path.string());
      std::stringstream buffer;
      buffer << in.rdbuf();
      std::string content = buffer.str();
      for (char& ch : content) {
        if (ch == ',' || ch == ';') ch = ' ';
      }
      std::istringstream values(content);
      std::vector<double> mu;
      std::string token;
      while (values >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(token, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != token.size()) throw InvalidParameters("bad spectrum value '" + token + "' in " + path.string());
        mu.push_back(v);
      }
      return SpectrumModel::explicit_list(std::move(mu));
    }
  }
  return SpectrumModel::parse(text);
}

nlohmann::json to_json(const RunConfig& c) {
  const Parameters& p = c.parameters;
  nlohmann::json j;
  j["parameters"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
                     {"m", p.m},         {"sigma", p.sigma}, {"tau", p.tau}};
  j["spectrum"] = c.spectrum_text;
  j["modes"] = c.modes;
  j["s_grid"] = c.s_grid ? grid_json(*c.s_grid) : nlohmann::json(nullptr);
  j["t_grid"] = c.t_grid ? grid_json(*c.t_grid) : nlohmann::json(nullptr);
  j["fit_window"] =
      c.fit_window ? nlohmann::json{{"lo", c.fit_window->lo}, {"hi", c.fit_window->hi}} : nlohmann::json(nullptr);
  j["seed"] = c.seed;
  j["out"] = c.out.generic_string();
  j["preset"] = c.preset ? nlohmann::json(*c.preset) : nlohmann::json(nullptr);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    if (j.contains("preset") && !j["preset"].is_null()) c = preset_config(j["preset"].get<std::string>());
    if (j.contains("parameters")) {
      const auto& pj = j["parameters"];
      Parameters& p = c.parameters;
      p.alpha = pj.value("alpha", p.alpha);
      p.beta = pj.value("beta", p.beta);
      p.gamma = pj.value("gamma", p.gamma);
      p.m = pj.value("m", p.m);
      p.sigma = pj.value("sigma", p.sigma);
      p.tau = pj.value("tau", p.tau);
    }
    if (j.contains("spectrum")) {
      c.spectrum_text = j["spectrum"].get<std::string>();
      c.spectrum = parse_spectrum(c.spectrum_text);
    }
    c.modes = j.value("modes", c.modes);
    if (j.contains("s_grid") && !j["s_grid"].is_null()) c.s_grid = grid_from_json(j["s_grid"]);
    if (j.contains("t_grid") && !j["t_grid"].is_null()) c.t_grid = grid_from_json(j["t_grid"]);
    if (j.contains("fit_window") && !j["fit_window"].is_null()) {
      c.fit_window = FitWindow{j["fit_window"].at("lo").get<double>(), j["fit_window"].at("hi").get<double>()};
    }
    c.seed = j.value("seed", c.seed);
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    c.threads = j.value("threads", c.threads);
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace cattaneo
