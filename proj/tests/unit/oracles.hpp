// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

// Straightforward per-sample filters that index the full input history
// directly. They share no code with the library.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace oracle {

struct Run {
  std::vector<double> y;
  std::vector<double> e;
  std::vector<double> w;
};

inline Eigen::VectorXd window(const std::vector<double>& x, std::size_t n, std::size_t taps) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(taps));
  for (std::size_t k = 0; k < taps && k <= n; ++k) u(static_cast<Eigen::Index>(k)) = x[n - k];
  return u;
}

inline Run lms(const std::vector<double>& x, const std::vector<double>& d, std::size_t taps, double mu) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(taps));
  Run r;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Eigen::VectorXd u = window(x, n, taps);
    const double y = w.dot(u);
    const double e = d[n] - y;
    w += mu * e * u;
    r.y.push_back(y);
    r.e.push_back(e);
  }
  r.w.assign(w.data(), w.data() + w.size());
  return r;
}

inline Run nlms(const std::vector<double>& x, const std::vector<double>& d, std::size_t taps, double mu,
                double eps) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(taps));
  Run r;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Eigen::VectorXd u = window(x, n, taps);
    const double y = w.dot(u);
    const double e = d[n] - y;
    const double denom = eps + u.squaredNorm();
    if (denom > 0.0) w += (mu / denom) * e * u;
    r.y.push_back(y);
    r.e.push_back(e);
  }
  r.w.assign(w.data(), w.data() + w.size());
  return r;
}

inline Run rls(const std::vector<double>& x, const std::vector<double>& d, std::size_t taps, double lambda,
               double delta) {
  const auto L = static_cast<Eigen::Index>(taps);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(L);
  Eigen::MatrixXd P = delta * Eigen::MatrixXd::Identity(L, L);
  Run r;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Eigen::VectorXd u = window(x, n, taps);
    const double y = w.dot(u);
    const double e = d[n] - y;
    const Eigen::VectorXd pu = P * u;
    const Eigen::VectorXd k = pu / (lambda + u.dot(pu));
    w += k * e;
    P = (P - k * (u.transpose() * P)) / lambda;
    P = 0.5 * (P + P.transpose()).eval();
    r.y.push_back(y);
    r.e.push_back(e);
  }
  r.w.assign(w.data(), w.data() + w.size());
  return r;
}

/// Growing-window least squares over the same zero-history windows.
inline std::vector<double> normal_equations(const std::vector<double>& x, const std::vector<double>& d,
                                            std::size_t taps) {
  const auto L = static_cast<Eigen::Index>(taps);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(L, L);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(L);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Eigen::VectorXd u = window(x, n, taps);
    R += u * u.transpose();
    p += d[n] * u;
  }
  const Eigen::VectorXd w = R.ldlt().solve(p);
  return {w.data(), w.data() + w.size()};
}

inline double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return a.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace oracle
