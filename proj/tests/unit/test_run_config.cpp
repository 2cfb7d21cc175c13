#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cattaneo/errors.hpp"
#include "cattaneo/run_config.hpp"

using namespace cattaneo;

TEST(Presets, HardCodeTheHingedPlate) {
  for (const char* name : {"biharmonic-hinged-m1", "biharmonic-hinged-m0"}) {
    const RunConfig c = preset_config(name);
    EXPECT_EQ(c.parameters.alpha, 1.0);
    EXPECT_EQ(c.parameters.beta, 0.0);
    EXPECT_EQ(c.parameters.gamma, 0.5);
    EXPECT_EQ(c.parameters.sigma, 2.0);
    EXPECT_EQ(c.parameters.tau, 1.0);
    EXPECT_EQ(c.spectrum.kind, SpectrumKind::Biharmonic1D);
    EXPECT_EQ(c.preset, std::optional<std::string>(name));
  }
  EXPECT_EQ(preset_config("biharmonic-hinged-m1").parameters.m, 1.0);
  EXPECT_EQ(preset_config("biharmonic-hinged-m0").parameters.m, 0.0);
  EXPECT_THROW(preset_config("plate"), InvalidParameters);
}

TEST(GridSpec, Validation) {
  EXPECT_NO_THROW((GridSpec{1.0, 2.0, 2, true}.validate("s")));
  EXPECT_THROW((GridSpec{0.0, 2.0, 5, true}.validate("s")), InvalidParameters);
  EXPECT_THROW((GridSpec{2.0, 1.0, 5, true}.validate("s")), InvalidParameters);
  EXPECT_THROW((GridSpec{1.0, 2.0, 1, true}.validate("s")), InvalidParameters);
  const auto lin = GridSpec{1.0, 3.0, 3, false}.values();
  EXPECT_EQ(lin, (std::vector<double>{1.0, 2.0, 3.0}));
  const auto geo = GridSpec{1.0, 100.0, 3, true}.values();
  EXPECT_EQ(geo.front(), 1.0);
  EXPECT_NEAR(geo[1], 10.0, 1e-12);
  EXPECT_EQ(geo.back(), 100.0);
}

TEST(Json, RoundTripPreservesConfig) {
  RunConfig c = preset_config("biharmonic-hinged-m0");
  c.modes = 17;
  c.s_grid = GridSpec{1e-3, 1e3, 11, true};
  c.fit_window = FitWindow{2.0, 64.0};
  c.seed = 99;
  c.threads = 7;
  const nlohmann::json j = to_json(c);
  EXPECT_FALSE(j.contains("threads"));
  const RunConfig back = config_from_json(j);
  EXPECT_EQ(back.parameters, c.parameters);
  EXPECT_EQ(back.modes, 17u);
  ASSERT_TRUE(back.s_grid.has_value());
  EXPECT_EQ(back.s_grid->points, 11u);
  ASSERT_TRUE(back.fit_window.has_value());
  EXPECT_EQ(back.fit_window->hi, 64.0);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(to_json(back), j);
}

TEST(Json, InvalidInputRejected) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"parameters": {"tau": 0}})")), InvalidParameters);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"modes": "many"})")), InvalidParameters);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"modes": 0})")), InvalidParameters);
  EXPECT_THROW(load_config("/nonexistent/config.json"), InvalidParameters);
}

TEST(Json, PresetKeyStartsFromPreset) {
  const RunConfig c = config_from_json(nlohmann::json::parse(R"({"preset": "biharmonic-hinged-m0", "modes": 5})"));
  EXPECT_EQ(c.parameters.m, 0.0);
  EXPECT_EQ(c.modes, 5u);
}

TEST(ParseSpectrum, ReadsListFile) {
  const auto path = std::filesystem::temp_directory_path() / "cattaneo_spectrum_list.txt";
  {
    std::ofstream out(path);
    out << "1.5, 2\n4;8 16\n";
  }
  const SpectrumModel m = parse_spectrum("list:" + path.string());
  EXPECT_EQ(m.kind, SpectrumKind::ExplicitList);
  EXPECT_EQ(m.values, (std::vector<double>{1.5, 2, 4, 8, 16}));
  std::filesystem::remove(path);
  EXPECT_EQ(parse_spectrum("list:3,4").values, (std::vector<double>{3, 4}));
}
