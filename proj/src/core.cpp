#include "cattaneo/core.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cattaneo {
namespace {

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidParameters("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void validate(const Parameters& p) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.alpha) || !finite(p.beta) || !finite(p.gamma) || !finite(p.m) || !finite(p.sigma) ||
      !finite(p.tau)) {
    throw InvalidParameters("all parameters must be finite");
  }
  if (p.tau <= 0.0) throw InvalidParameters("tau must be > 0: Fourier case unsupported");
  if (p.sigma <= 0.0) throw InvalidParameters("sigma must be > 0");
  if (p.m < 0.0) throw InvalidParameters("m must be >= 0");
  if (p.alpha < 0.0 || p.alpha > 1.0) throw InvalidParameters("alpha must lie in [0, 1]");
  if (p.beta < 0.0 || p.beta > 1.0) throw InvalidParameters("beta must lie in [0, 1]");
  if (p.m > 0.0 && (p.gamma <= 0.0 || p.gamma > 1.0)) {
    throw InvalidParameters("gamma must lie in (0, 1] when m > 0");
  }
}

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::InQ:
      return "InQ";
    case RegionTag::OutsideQ:
      return "OutsideQ";
    case RegionTag::InQStar:
      return "InQStar";
    case RegionTag::OutsideQStar:
      return "OutsideQStar";
  }
  return "?";
}

std::string_view to_string(Sharpness s) { return s == Sharpness::Sharp ? "Sharp" : "Unknown"; }

Region classify_region(const Parameters& p) {
  validate(p);
  Region r;
  r.margin = p.alpha - (p.beta + 1.0) / 2.0;
  const bool inside = r.margin > 0.0;
  if (p.inertial()) {
    r.tag = inside ? RegionTag::InQ : RegionTag::OutsideQ;
  } else {
    r.tag = inside ? RegionTag::InQStar : RegionTag::OutsideQStar;
  }
  return r;
}

DecayExponents decay_exponents(const Parameters& p) {
  const Region region = classify_region(p);
  if (!region.inside()) {
    throw InvalidParameters(std::string("decay exponents are defined only inside ") +
                            (p.inertial() ? "Q" : "Q*") + " (alpha > (beta+1)/2)");
  }
  DecayExponents e;
  e.l = 1.0;
  const double a = p.alpha, b = p.beta;
  if (p.inertial()) {
    const double g = p.gamma;
    e.k = 2.0 * (2.0 * a - b - g) / (2.0 * a - g);
    e.a = std::max(1.0, e.k);
    e.decay_exponent = 1.0 / e.a;
    e.sharp = (a >= b + g / 2.0) ? Sharpness::Sharp : Sharpness::Unknown;
  } else {
    e.k = (2.0 * a - b) / a;
    e.a = e.k;
    e.decay_exponent = a / (2.0 * a - b);
    e.sharp = Sharpness::Sharp;
  }
  return e;
}

SpectrumModel SpectrumModel::explicit_list(std::vector<double> values) {
  SpectrumModel m;
  m.kind = SpectrumKind::ExplicitList;
  m.values = std::move(values);
  return m;
}

SpectrumModel SpectrumModel::power_law(double c, double p) {
  if (!(c > 0.0) || !(p > 0.0)) throw InvalidParameters("power law spectrum needs c > 0 and p > 0");
  SpectrumModel m;
  m.kind = SpectrumKind::PowerLaw;
  m.c = c;
  m.p = p;
  return m;
}

SpectrumModel SpectrumModel::biharmonic_1d() {
  SpectrumModel m;
  m.kind = SpectrumKind::Biharmonic1D;
  return m;
}

SpectrumModel SpectrumModel::laplace_1d() {
  SpectrumModel m;
  m.kind = SpectrumKind::Laplace1D;
  return m;
}

SpectrumModel SpectrumModel::geometric(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw InvalidParameters("geometric spectrum needs 0 < lo <= hi");
  }
  SpectrumModel m;
  m.kind = SpectrumKind::Geometric;
  m.c = lo;
  m.p = hi;
  return m;
}

SpectrumModel SpectrumModel::parse(std::string_view text) {
  if (text == "biharmonic1d") return biharmonic_1d();
  if (text == "laplace1d") return laplace_1d();
  const auto parts = split(text, ':');
  if (parts[0] == "powerlaw" && parts.size() == 3) {
    return power_law(parse_number(parts[1], "power-law c"), parse_number(parts[2], "power-law p"));
  }
  if (parts[0] == "geometric" && parts.size() == 3) {
    return geometric(parse_number(parts[1], "geometric lo"), parse_number(parts[2], "geometric hi"));
  }
  if (parts[0] == "list" && parts.size() == 2) {
    std::vector<double> values;
    for (auto v : split(parts[1], ',')) values.push_back(parse_number(v, "list entry"));
    return explicit_list(std::move(values));
  }
  throw InvalidParameters("unknown spectrum '" + std::string(text) +
                          "' (expected biharmonic1d|laplace1d|powerlaw:c:p|geometric:lo:hi|list:...)");
}

std::string SpectrumModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case SpectrumKind::Biharmonic1D:
      return "biharmonic1d";
    case SpectrumKind::Laplace1D:
      return "laplace1d";
    case SpectrumKind::PowerLaw:
      os << "powerlaw:" << c << ':' << p;
      return os.str();
    case SpectrumKind::Geometric:
      os << "geometric:" << c << ':' << p;
      return os.str();
    case SpectrumKind::ExplicitList:
      os << "list:";
      for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
      return os.str();
  }
  return "?";
}

std::vector<double> spectrum(const SpectrumModel& model, std::size_t n_modes) {
  if (n_modes == 0) throw InvalidParameters("n_modes must be >= 1");
  std::vector<double> mu(n_modes);
  constexpr double pi = std::numbers::pi;
  switch (model.kind) {
    case SpectrumKind::ExplicitList:
      if (model.values.size() < n_modes) {
        throw InvalidParameters("explicit spectrum has " + std::to_string(model.values.size()) +
                                " values, fewer than the " + std::to_string(n_modes) + " modes requested");
      }
      for (std::size_t i = 0; i < n_modes; ++i) mu[i] = model.values[i];
      break;
    case SpectrumKind::PowerLaw:
      for (std::size_t i = 0; i < n_modes; ++i) mu[i] = model.c * std::pow(static_cast<double>(i + 1), model.p);
      break;
    case SpectrumKind::Biharmonic1D:
      for (std::size_t i = 0; i < n_modes; ++i) mu[i] = std::pow((static_cast<double>(i + 1)) * pi, 4);
      break;
    case SpectrumKind::Laplace1D:
      for (std::size_t i = 0; i < n_modes; ++i) mu[i] = std::pow((static_cast<double>(i + 1)) * pi, 2);
      break;
    case SpectrumKind::Geometric: {
      const double lo = std::log(model.c), hi = std::log(model.p);
      for (std::size_t i = 0; i < n_modes; ++i) {
        const double f = n_modes == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n_modes - 1);
        mu[i] = std::exp(lo + f * (hi - lo));
      }
      mu.front() = model.c;
      if (n_modes > 1) mu.back() = model.p;
      break;
    }
  }
  for (std::size_t i = 0; i < n_modes; ++i) {
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i])) throw InvalidParameters("spectrum values must be positive and finite");
    if (i > 0 && mu[i] < mu[i - 1]) throw InvalidParameters("spectrum values must be non-decreasing");
  }
  return mu;
}

}  // namespace cattaneo
