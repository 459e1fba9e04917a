#pragma once

// Exact arithmetic substrate: rationals, signs, small dense matrices and
// fraction-free determinants. Nothing in here touches floating point except
// the explicit to_double() rendering helpers.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tln/errors.hpp"

namespace tln {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : std::int8_t { Neg = -1, Zero = 0, Pos = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
constexpr Sign operator-(Sign a) { return static_cast<Sign>(-static_cast<int>(a)); }
constexpr int to_int(Sign s) { return static_cast<int>(s); }

template <typename T>
Sign sign_of(const T& v) {
  const int s = sgn(v);
  return s > 0 ? Sign::Pos : (s < 0 ? Sign::Neg : Sign::Zero);
}

char sign_char(Sign s);
std::ostream& operator<<(std::ostream& os, Sign s);

/// Parses "-0.97", "12", "3/4", "1.5e-3" (with an optional leading '+' or
/// '-', or a unicode minus) into an exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Shortest exact decimal if the denominator is 2^a 5^b, otherwise "p/q".
std::string to_exact_string(const Rational& q);

/// Fixed-point decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& q, int digits);

double to_double(const Rational& q);

/// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  /// Square (or rectangular) submatrix formed by the listed rows, in order.
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant by Bareiss fraction-free elimination. Rows are first
/// scaled to integers; the elimination itself runs on integers only.
Rational det(const Matrix& m);

/// Determinant of the matrix whose rows are the given row vectors.
Rational det_rows(std::span<const std::span<const Rational>> rows);

Sign sign_det(const Matrix& m);

/// Bareiss on an integer matrix (row-major, k*k entries). Every division is
/// exact. `trace` (optional) receives every intermediate pivot-step value.
Integer bareiss_det(std::vector<Integer> a, std::size_t k, std::vector<Integer>* trace = nullptr);

/// Same elimination on machine integers. The caller guarantees that the
/// Hadamard bound of the matrix is below 2^59 so no product overflows.
__int128 bareiss_det_small(std::vector<__int128>& a, std::size_t k);

/// log2 of the Hadamard bound (product of row norms, each at least 1).
double log2_hadamard(std::span<const std::int64_t> a, std::size_t k);

/// +1 for even, -1 for odd. Throws std::invalid_argument if `perm` is not a
/// permutation of 0..k-1.
Sign permutation_parity(std::span<const int> perm);

}  // namespace tln
