#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "hausdorff/error.hpp"

namespace hausdorff {

using Complex = std::complex<double>;

/// A scalar function on the points of a space.
template <class P>
using PointFunction = std::function<Complex(const P&)>;

/// A point of R^D.
template <std::size_t D>
using RealPoint = std::array<double, D>;

/// A point of C^N (torus, Reinhardt domains, products of half-planes).
template <std::size_t N>
using ComplexPoint = std::array<Complex, N>;

/// A point of the torus T^N given by its angles. Angles are kept as given;
/// wrap_angle maps them to (-pi, pi] where a canonical value is needed.
template <std::size_t N>
struct TorusPoint {
  std::array<double, N> angle{};

  ComplexPoint<N> unimodular() const {
    ComplexPoint<N> z;
    for (std::size_t j = 0; j < N; ++j) z[j] = std::polar(1.0, angle[j]);
    return z;
  }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

inline double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * std::numbers::pi);
  if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
  return t;
}

/// An element of the symmetric group S_n, stored as the image sequence
/// sigma(0), ..., sigma(n-1).
struct Permutation {
  std::vector<int> image;

  std::size_t size() const { return image.size(); }

  int sign() const {
    std::vector<bool> seen(image.size(), false);
    int parity = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (seen[i]) continue;
      std::size_t length = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(image[j])) {
        seen[j] = true;
        ++length;
      }
      parity += static_cast<int>(length - 1);
    }
    return parity % 2 == 0 ? 1 : -1;
  }
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// All n! permutations in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = static_cast<int>(i);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation{image});
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Dense n x n matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::size_t n, std::vector<T> row_major) : n_(n), data_(std::move(row_major)) {
    require(data_.size() == n_ * n_, ErrorCode::InvalidArgument, "matrix data must have n*n entries");
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  const std::vector<T>& data() const { return data_; }

  /// The matrix whose j-th column is column sigma(j) of this one.
  SquareMatrix permute_columns(const Permutation& sigma) const {
    SquareMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        out(r, c) = (*this)(r, static_cast<std::size_t>(sigma.image[c]));
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace hausdorff
