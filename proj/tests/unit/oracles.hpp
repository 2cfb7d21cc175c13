#pragma once

// Helpers shared by the unit tests: Eigen conversions used as independent
// oracles and seeded samplers of valid parameter points.

#include <Eigen/Dense>

#include <random>

#include "cattaneo/core.hpp"
#include "cattaneo/linalg.hpp"

namespace oracle {

inline Eigen::Matrix4d to_eigen(const cattaneo::RealMatrix& m) {
  Eigen::Matrix4d r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m(i, j);
  return r;
}

inline Eigen::Matrix4cd to_eigen(const cattaneo::ComplexMatrix& m) {
  Eigen::Matrix4cd r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m(i, j);
  return r;
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

inline cattaneo::RealMatrix random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  cattaneo::RealMatrix m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = n(rng);
  return m;
}

// Uniform point of Q (m > 0) or Q* (m = 0).
inline cattaneo::Parameters random_parameters(std::mt19937_64& rng, bool inertial) {
  std::uniform_real_distribution<double> u;
  cattaneo::Parameters p;
  do {
    p.alpha = u(rng);
    p.beta = u(rng);
  } while (!(p.alpha > (p.beta + 1.0) / 2.0));
  p.gamma = 1.0 - u(rng);
  p.m = inertial ? 0.1 + 2.9 * u(rng) : 0.0;
  p.sigma = 0.5 + 3.5 * u(rng);
  p.tau = 0.1 + 3.9 * u(rng);
  return p;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::pow(10.0, std::uniform_real_distribution<double>(std::log10(lo), std::log10(hi))(rng));
}

}  // namespace oracle
