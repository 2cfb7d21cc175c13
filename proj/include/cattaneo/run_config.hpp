#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cattaneo/analysis.hpp"
#include "cattaneo/core.hpp"
#include "cattaneo/version.hpp"

namespace cattaneo {

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
  bool log = true;

  // Throws InvalidParameters unless 0 < lo < hi and points >= 2.
  void validate(std::string_view what) const;
  [[nodiscard]] std::vector<double> values() const;
};

struct RunConfig {
  Parameters parameters;
  std::string spectrum_text = "biharmonic1d";  // as given, echoed in manifests
  SpectrumModel spectrum = SpectrumModel::biharmonic_1d();
  std::size_t modes = 200;
  std::optional<GridSpec> s_grid;  // unset: resonance peaks plus the low window
  std::optional<GridSpec> t_grid;  // unset: default_decay_window with 64 points
  std::optional<FitWindow> fit_window;  // unset: automatic dyadic window
  std::uint64_t seed = 20240601;
  std::filesystem::path out = "out";
  std::optional<std::string> preset;
  unsigned threads = 1;  // not part of the echo; results do not depend on it

  void validate() const;
};

// "biharmonic-hinged-m1" or "biharmonic-hinged-m0". Throws InvalidParameters.
RunConfig preset_config(std::string_view name);

// Like SpectrumModel::parse, but "list:PATH" naming an existing file reads
// whitespace- or comma-separated values from it.
SpectrumModel parse_spectrum(std::string_view text);

// The echo omits the thread count.
nlohmann::json to_json(const RunConfig& c);
// Missing keys keep their defaults; malformed values throw InvalidParameters.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace cattaneo
