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

namespace cattaneo {

// Shortest decimal that round-trips to v; empty for NaN and infinities.
std::string format_number(double v);
std::string format_number(std::optional<double> v);

std::string sha256_hex(std::string_view data);

// CSV text with a header row, comma separators and '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Throws std::logic_error when the row width differs from the header.
  void add_row(std::vector<std::string> cells);
  [[nodiscard]] std::string render() const;
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct CheckRecord {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct FitRecord {
  std::string kind;
  double slope = 0.0;
  double r2 = 0.0;
  FitWindow window;
};

struct FileRecord {
  std::string path;  // relative to the run directory
  std::string sha256;
};

// Deterministic summary of a run: no timings, no host details.
struct RunManifest {
  nlohmann::json config;
  std::optional<DecayExponents> exponents;
  std::vector<FitRecord> fits;
  std::vector<CheckRecord> checks;
  std::vector<FileRecord> files;

  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string render() const;
  [[nodiscard]] bool all_pass() const;
};

// Writes files into a run directory and records their checksums.
class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path root);

  void write(const std::string& name, const std::string& content);
  [[nodiscard]] const std::vector<FileRecord>& files() const { return files_; }
  [[nodiscard]] const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::vector<FileRecord> files_;
};

}  // namespace cattaneo
