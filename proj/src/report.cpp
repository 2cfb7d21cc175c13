#include "cattaneo/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <system_error>

#include "cattaneo/errors.hpp"
#include "cattaneo/version.hpp"

namespace cattaneo {

std::string format_number(double v) {
  if (!std::isfinite(v)) return {};
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

std::string format_number(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CSV row width differs from header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out;
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["config"] = config;
  j["version"] = std::string(kVersion);
  if (exponents) {
    j["exponents"] = {{"l", exponents->l}, {"k", exponents->k}, {"a", exponents->a}, {"decay", exponents->decay_exponent}};
  } else {
    j["exponents"] = nullptr;
  }
  j["fits"] = nlohmann::json::array();
  for (const auto& f : fits) {
    j["fits"].push_back({{"kind", f.kind}, {"slope", f.slope}, {"r2", f.r2}, {"window", {f.window.lo, f.window.hi}}});
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  j["files"] = nlohmann::json::array();
  for (const auto& f : files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}});
  return j;
}

std::string RunManifest::render() const { return to_json().dump(2) + "\n"; }

bool RunManifest::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

RunDirectory::RunDirectory(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw InvalidParameters("cannot create output directory " + root_.string() + ": " + ec.message());
}

void RunDirectory::write(const std::string& name, const std::string& content) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidParameters("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw InvalidParameters("failed writing " + path.string());
  for (auto& f : files_) {
    if (f.path == name) {
      f.sha256 = sha256_hex(content);
      return;
    }
  }
  files_.push_back({name, sha256_hex(content)});
}

}  // namespace cattaneo
