#ifndef JACOBILAB_NUMERIC_HPP
#define JACOBILAB_NUMERIC_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "jacobilab/errors.hpp"

namespace jacobilab {

using Complex = std::complex<double>;

// Pairwise (tree) summation. Deterministic for a fixed input order, and the
// order never depends on the parallel schedule, so reductions are
// reproducible bit-for-bit across runs and thread counts.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 16) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

// Static block partition over [0, n); fn(i) must only write state owned by
// index i. With threads <= 1 this is a plain loop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Ordinary least squares for y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double correlation = 0.0;  // Pearson r
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Quadratic least squares y = c0 + c1 x + c2 x^2; returns {c0, c1, c2}.
std::array<double, 3> fit_quadratic(std::span<const double> x, std::span<const double> y);

// Dense least squares min ||A c - b||_2 via Householder QR with column
// scaling. A is row-major m x n, m >= n. Throws IllConditionedError when the
// scaled R factor's diagonal ratio exceeds cond_limit. Returns the solution
// and (optionally) the residual norm.
struct LstsqResult {
  std::vector<Complex> coeffs;
  double residual_norm = 0.0;
  double condition = 0.0;
};
LstsqResult solve_lstsq(std::vector<Complex> a, std::size_t m, std::size_t n,
                        std::vector<Complex> b, double cond_limit = 1e12);

// 64-bit FNV-1a; used for config hashes embedded in every output file.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace jacobilab

#endif
