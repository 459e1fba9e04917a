#pragma once

// Floating-point simulation of dx/dt = -x + [Wx + b]_+. Everything here is
// binary64 and tolerance based.

#include <complex>
#include <string>
#include <vector>

#include "tln/network.hpp"

namespace tln {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;

  /// "t,x1,...,xn" header, one row per recorded state.
  std::string csv() const;
};

/// W and b rounded to doubles.
struct FloatNetwork {
  int n = 0;
  std::vector<double> W;  // row-major
  std::vector<double> b;
  explicit FloatNetwork(const Network& net);
};

std::vector<double> vector_field(const FloatNetwork& net, const std::vector<double>& x);

/// Max-norm of the vector field at x.
double residual(const Network& net, const std::vector<double>& x);

/// Fixed-step RK4 on the full nonlinear right-hand side. Records the state
/// every `record_every` steps plus the last one. Throws DivergenceError on
/// NaN or |x| > 1e12, std::invalid_argument for bad dt or t_end.
Trajectory integrate(const Network& net, const std::vector<double>& x0, double t_end, double dt = 1e-3, std::size_t record_every = 1);

struct StabilityReport {
  enum class Class { Stable, Unstable, Marginal };
  Subset sigma = 0;
  std::vector<std::complex<double>> eigenvalues;  // sorted by real part, descending
  double max_real = 0.0;
  Class classification = Class::Stable;
};

inline constexpr double kStabilityBand = 1e-9;

/// Eigenvalues of -I + D_sigma W, the linear system of region sigma.
/// |max Re| <= 1e-9 is reported as marginal.
StabilityReport stability(const Network& net, Subset sigma);

std::string to_string(StabilityReport::Class c);

}  // namespace tln
