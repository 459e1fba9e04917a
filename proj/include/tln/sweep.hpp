#pragma once

#include <string>
#include <vector>

#include "tln/fixed_points.hpp"
#include "tln/network.hpp"

namespace tln {

struct SweepEvent {
  /// The crossing lies in [lo, hi] (lo == hi when it was hit exactly).
  Rational lo, hi;
  SupportFamily before, after;
  /// Determinants that change sign inside the interval.
  std::vector<std::string> walls;

  std::string change() const;
};

struct SweepResult {
  Parameter param;
  Rational from, to;
  SupportFamily start, end;
  std::vector<SweepEvent> events;

  /// Header "lo,hi,before,after,change,walls"; values in exact decimals.
  std::string csv() const;
};

/// Walks path.steps + 1 grid values of the parameter. Between neighbors whose
/// s-determinant signs differ, every flipping determinant is bisected on its
/// exact sign until the bracket is at most `tol` wide. Reports the crossings
/// where FP changes, in path order. Throws DegenerateError if an endpoint has
/// a zero s-determinant.
SweepResult sweep(const ParamPath& path, const Rational& tol);

struct UnlockStep {
  Parameter param;
  Rational from, to;
};

struct UnlockPhase {
  std::string goal;
  std::vector<UnlockStep> steps;
  Network after;
};

struct UnlockPlan {
  int i = 0, j = 0, k = 0;
  std::vector<UnlockPhase> phases;
  Sign before = Sign::Zero;  // sign of s^{123}_i at the start
  Sign after = Sign::Zero;
  std::string to_string() const;
};

/// Index of the basis {e_i, h_1, h_2, h_3} (the determinant s^{123}_i), n = 3.
std::size_t full_support_basis(int i);

/// Moves along graph-preserving single-weight steps that flip s^{ijk}_i, the
/// target basis. With T = s^{ijk}_i, the relation
///   b_i T - Delta^{ij}_k Delta^{ik}_j + s^{ik}_i s^{ij}_i = 0
/// forces the sign of T when the two products have opposite signs. The search
/// first tries a move in one (W_ik, W_jk)-type slice alone; failing that, phase
/// one flips the other Delta in its own slice and phase two is retried from
/// there. Every step is verified exactly. Throws UnsupportedError when
/// bifurcation_allowed fails and runtime_error when no move is found.
UnlockPlan unlock_path(const Network& net, std::size_t target);

}  // namespace tln
