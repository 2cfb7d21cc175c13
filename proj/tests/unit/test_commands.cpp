#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cattaneo/commands.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/report.hpp"

using namespace cattaneo;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("cattaneo_cmd_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

// Every data file listed in the manifest exists with the recorded checksum.
void expect_manifest_covers_files(const std::filesystem::path& dir) {
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  ASSERT_FALSE(m["files"].empty());
  for (const auto& f : m["files"]) {
    EXPECT_EQ(sha256_hex(slurp(dir / f["path"].get<std::string>())), f["sha256"].get<std::string>());
  }
}

RunConfig config_in(const std::string& name, const char* preset = "biharmonic-hinged-m1") {
  RunConfig c = preset_config(preset);
  c.out = fresh_dir(name);
  return c;
}

}  // namespace

TEST(Commands, RegionPrintsExponents) {
  std::ostringstream out, err;
  RunConfig c = config_in("region");
  EXPECT_EQ(cmd_region(c, false, out, err), 0);
  EXPECT_NE(out.str().find("region: InQ"), std::string::npos);
  EXPECT_NE(out.str().find("k: 2"), std::string::npos);
  EXPECT_NE(out.str().find("decay_exponent: 0.5"), std::string::npos);
  EXPECT_NE(out.str().find("sharp: Sharp"), std::string::npos);
}

TEST(Commands, RegionGridRasterisesUnitSquare) {
  std::ostringstream out, err;
  RunConfig c = config_in("region_grid");
  ASSERT_EQ(cmd_region(c, true, out, err), 0);
  const auto rows = lines(slurp(c.out / "region_grid.csv"));
  ASSERT_EQ(rows.size(), 101u * 101u + 1u);
  EXPECT_EQ(rows[0], "alpha,beta,gamma,m,region,margin");
  EXPECT_EQ(rows[1], "0,0,0.5,1,OutsideQ,-0.5");
  EXPECT_EQ(rows.back(), "1,1,0.5,1,OutsideQ,0");
  expect_manifest_covers_files(c.out);
}

TEST(Commands, RegionRejectsFourierCase) {
  std::ostringstream out, err;
  RunConfig c = config_in("region_tau");
  c.parameters.tau = 0.0;
  EXPECT_THROW(cmd_region(c, false, out, err), InvalidParameters);
}

TEST(Commands, SpectrumCsvLayout) {
  std::ostringstream out, err;
  RunConfig c = config_in("spectrum");
  c.modes = 3;
  ASSERT_EQ(cmd_spectrum(c, out, err), 0);
  const auto rows = lines(slurp(c.out / "spectrum.csv"));
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0], "mu,branch,re_lambda,im_lambda,pred_re,pred_im,rel_err_re,rel_err_im,residual,sharpness_product");
  EXPECT_EQ(rows[1].substr(0, rows[1].find(',', rows[1].find(',') + 1)), "97.40909103400242,1");
  expect_manifest_covers_files(c.out);
}

TEST(Commands, SpectrumWithoutNormalizationLeavesPredictionsEmpty) {
  std::ostringstream out, err;
  RunConfig c = config_in("spectrum_sigma");
  c.modes = 2;
  c.parameters.sigma = 3.0;
  ASSERT_EQ(cmd_spectrum(c, out, err), 0);
  EXPECT_NE(err.str().find("warning"), std::string::npos);
  const auto rows = lines(slurp(c.out / "spectrum.csv"));
  EXPECT_NE(rows[1].find(",,,,"), std::string::npos);
}

TEST(Commands, ResolventDefaultFitsBothEnds) {
  std::ostringstream out, err;
  RunConfig c = config_in("resolvent");
  ASSERT_EQ(cmd_resolvent(c, out, err), 0) << out.str() << err.str();
  const auto m = nlohmann::json::parse(slurp(c.out / "manifest.json"));
  ASSERT_EQ(m["fits"].size(), 2u);
  EXPECT_EQ(m["fits"][0]["kind"], "resolvent_zero");
  EXPECT_EQ(m["fits"][1]["kind"], "resolvent_infinity");
  EXPECT_EQ(lines(slurp(c.out / "resolvent.csv"))[0], "s,norm,argmax_mu");
  expect_manifest_covers_files(c.out);
}

TEST(Commands, ResolventFitRefusalIsAWarning) {
  std::ostringstream out, err;
  RunConfig c = config_in("resolvent_refused");
  c.modes = 5;
  c.s_grid = GridSpec{0.1, 1e6, 64, true};  // spans dips and peaks of five resonances
  EXPECT_EQ(cmd_resolvent(c, out, err), 0);
  EXPECT_TRUE(std::filesystem::exists(c.out / "resolvent.csv"));
}

TEST(Commands, DecayMatchesPredictedExponent) {
  std::ostringstream out, err;
  RunConfig c = config_in("decay", "biharmonic-hinged-m0");
  ASSERT_EQ(cmd_decay(c, out, err), 0) << out.str() << err.str();
  const auto m = nlohmann::json::parse(slurp(c.out / "manifest.json"));
  EXPECT_EQ(m["checks"][0]["name"], "decay_exponent_rel_err");
  EXPECT_TRUE(m["checks"][0]["pass"].get<bool>());
  EXPECT_EQ(lines(slurp(c.out / "decay.csv")).size(), 65u);
}

TEST(Commands, OutputsIndependentOfThreadCount) {
  std::ostringstream out, err;
  RunConfig a = config_in("threads_a");
  RunConfig b = a;
  b.out = fresh_dir("threads_b");
  b.threads = 3;
  ASSERT_EQ(cmd_resolvent(a, out, err), 0);
  ASSERT_EQ(cmd_resolvent(b, out, err), 0);
  EXPECT_EQ(slurp(a.out / "resolvent.csv"), slurp(b.out / "resolvent.csv"));
  ASSERT_EQ(cmd_decay(a, out, err), 0);
  ASSERT_EQ(cmd_decay(b, out, err), 0);
  EXPECT_EQ(slurp(a.out / "decay.csv"), slurp(b.out / "decay.csv"));
}

TEST(Commands, SweepDefaultGrid) {
  std::ostringstream out, err;
  RunConfig c = config_in("sweep");
  ASSERT_EQ(cmd_sweep(c, SweepRanges{}, out, err), 0) << out.str();
  const auto rows = lines(slurp(c.out / "sweep.csv"));
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], "alpha,beta,gamma,m,region,k,a,pred_exponent,fitted_exponent,sharp_flag");
  // α = 0.6, β = 0.2 lies on the boundary.
  EXPECT_EQ(rows[5], "0.6,0.2,0.5,1,OutsideQ,,,,,");
  expect_manifest_covers_files(c.out);
}

TEST(Commands, SweepWithoutInertiaIgnoresGamma) {
  std::ostringstream out, err;
  RunConfig c = config_in("sweep_m0", "biharmonic-hinged-m0");
  SweepRanges r;
  r.alpha = SweepAxis::parse("0.8:1:2");
  r.beta = SweepAxis::parse("0:0:1");
  r.gamma = SweepAxis::parse("0.5:1:3");
  ASSERT_EQ(cmd_sweep(c, r, out, err), 0);
  const auto rows = lines(slurp(c.out / "sweep.csv"));
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",0.5,0,InQStar,"), std::string::npos);
}

TEST(SweepAxis, Parsing) {
  const SweepAxis a = SweepAxis::parse("0.6:1:5");
  EXPECT_EQ(a.points, 5u);
  EXPECT_EQ(a.at(0), 0.6);
  EXPECT_EQ(a.at(4), 1.0);
  EXPECT_THROW(SweepAxis::parse("1:0:3"), InvalidParameters);
  EXPECT_THROW(SweepAxis::parse("0:1"), InvalidParameters);
  EXPECT_THROW(SweepAxis::parse("0:1:0"), InvalidParameters);
  EXPECT_THROW(SweepAxis::parse("0:x:2"), InvalidParameters);
  EXPECT_NO_THROW(SweepAxis::parse("0.5:0.5:1"));
}
