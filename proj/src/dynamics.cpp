#include "tln/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tln {

FloatNetwork::FloatNetwork(const Network& net) : n(net.n), W(static_cast<std::size_t>(net.n * net.n)), b(static_cast<std::size_t>(net.n)) {
  for (int i = 0; i < n; ++i) {
    b[static_cast<std::size_t>(i)] = to_double(net.input(i));
    for (int j = 0; j < n; ++j) W[static_cast<std::size_t>(i * n + j)] = to_double(net.w(i, j));
  }
}

std::vector<double> vector_field(const FloatNetwork& net, const std::vector<double>& x) {
  std::vector<double> dx(static_cast<std::size_t>(net.n));
  for (int i = 0; i < net.n; ++i) {
    double drive = net.b[static_cast<std::size_t>(i)];
    for (int j = 0; j < net.n; ++j) drive += net.W[static_cast<std::size_t>(i * net.n + j)] * x[static_cast<std::size_t>(j)];
    dx[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)] + std::max(drive, 0.0);
  }
  return dx;
}

double residual(const Network& net, const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(net.n)) throw DimensionError("state has the wrong length");
  double r = 0.0;
  for (double v : vector_field(FloatNetwork(net), x)) r = std::max(r, std::abs(v));
  return r;
}

Trajectory integrate(const Network& net, const std::vector<double>& x0, double t_end, double dt, std::size_t record_every) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("integrate needs dt > 0 and t_end > 0");
  if (x0.size() != static_cast<std::size_t>(net.n)) throw DimensionError("initial state has the wrong length");
  if (record_every == 0) record_every = 1;
  const FloatNetwork f(net);
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const std::size_t n = x0.size();

  Trajectory tr;
  std::vector<double> x = x0, tmp(n);
  tr.times.push_back(0.0);
  tr.states.push_back(x);
  auto axpy = [&](const std::vector<double>& k, double h) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k[i];
    return tmp;
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    const auto k1 = vector_field(f, x);
    const auto k2 = vector_field(f, axpy(k1, dt / 2));
    const auto k3 = vector_field(f, axpy(k2, dt / 2));
    const auto k4 = vector_field(f, axpy(k3, dt));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!std::isfinite(x[i]) || std::abs(x[i]) > 1e12) throw DivergenceError("trajectory diverged at t = " + std::to_string(s * dt));
    }
    if (s % record_every == 0 || s == steps) {
      tr.times.push_back(static_cast<double>(s) * dt);
      tr.states.push_back(x);
    }
  }
  return tr;
}

std::string Trajectory::csv() const {
  std::string out = "t";
  const std::size_t n = states.empty() ? 0 : states.front().size();
  for (std::size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
  out += '\n';
  char buf[32];
  for (std::size_t r = 0; r < times.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.6g", times[r]);
    out += buf;
    for (double v : states[r]) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

StabilityReport stability(const Network& net, Subset sigma) {
  const int n = net.n;
  Eigen::MatrixXd j = -Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < n; ++r)
    if (contains(sigma, r))
      for (int c = 0; c < n; ++c) j(r, c) += to_double(net.w(r, c));
  Eigen::EigenSolver<Eigen::MatrixXd> es(j, false);
  StabilityReport rep;
  rep.sigma = sigma;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rep.eigenvalues.push_back(es.eigenvalues()[i]);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](auto a, auto b) { return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag(); });
  rep.max_real = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front().real();
  if (std::abs(rep.max_real) <= kStabilityBand)
    rep.classification = StabilityReport::Class::Marginal;
  else
    rep.classification = rep.max_real < 0 ? StabilityReport::Class::Stable : StabilityReport::Class::Unstable;
  return rep;
}

std::string to_string(StabilityReport::Class c) {
  switch (c) {
    case StabilityReport::Class::Stable: return "stable";
    case StabilityReport::Class::Unstable: return "unstable";
    default: return "marginal";
  }
}

}  // namespace tln
