#include "jacobilab/numeric.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace jacobilab {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t nthreads = threads <= 1 ? 1 : std::min<std::size_t>(threads, hw);
  nthreads = std::min(nthreads, n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw Error("fit_line: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.correlation = (syy == 0.0) ? 1.0 : sxy / std::sqrt(sxx * syy);
  return fit;
}

std::array<double, 3> fit_quadratic(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw Error("fit_quadratic: need at least three points");
  std::vector<Complex> a(n * 3);
  std::vector<Complex> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * 3 + 0] = 1.0;
    a[i * 3 + 1] = x[i];
    a[i * 3 + 2] = x[i] * x[i];
    b[i] = y[i];
  }
  const LstsqResult r = solve_lstsq(std::move(a), n, 3, std::move(b));
  return {r.coeffs[0].real(), r.coeffs[1].real(), r.coeffs[2].real()};
}

LstsqResult solve_lstsq(std::vector<Complex> a, std::size_t m, std::size_t n,
                        std::vector<Complex> b, double cond_limit) {
  if (m < n || n == 0 || a.size() != m * n || b.size() != m)
    throw Error("solve_lstsq: bad dimensions");

  // Column scaling keeps the condition estimate meaningful for bases with
  // wildly different magnitudes (t^{2m}, lambda^{-m}, ...).
  std::vector<double> scale(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(a[i * n + j]);
    s = std::sqrt(s);
    if (s > 0) {
      scale[j] = s;
      for (std::size_t i = 0; i < m; ++i) a[i * n + j] /= s;
    }
  }

  // Householder QR; reflectors are applied to b as we go. The diagonal of R
  // (alpha_k) is kept separately because column k below the diagonal is
  // overwritten by the reflector.
  std::vector<Complex> rdiag(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0;
    for (std::size_t i = k; i < m; ++i) norm += std::norm(a[i * n + k]);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw IllConditionedError("solve_lstsq: rank-deficient column");
    const Complex akk = a[k * n + k];
    const double aabs = std::abs(akk);
    const Complex phase = (aabs == 0.0) ? Complex(1.0, 0.0) : akk / aabs;
    const Complex alpha = -phase * norm;
    a[k * n + k] -= alpha;  // v = x - alpha e_k, stored in place
    double vnorm2 = 0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += std::norm(a[i * n + k]);
    if (vnorm2 == 0.0) throw IllConditionedError("solve_lstsq: rank-deficient column");
    for (std::size_t j = k + 1; j < n; ++j) {
      Complex dot{};
      for (std::size_t i = k; i < m; ++i) dot += std::conj(a[i * n + k]) * a[i * n + j];
      const Complex f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) a[i * n + j] -= f * a[i * n + k];
    }
    {
      Complex dot{};
      for (std::size_t i = k; i < m; ++i) dot += std::conj(a[i * n + k]) * b[i];
      const Complex f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) b[i] -= f * a[i * n + k];
    }
    rdiag[k] = alpha;
  }

  double dmax = 0, dmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    dmax = std::max(dmax, std::abs(rdiag[k]));
    dmin = std::min(dmin, std::abs(rdiag[k]));
  }
  LstsqResult out;
  out.condition = (dmin == 0.0) ? std::numeric_limits<double>::infinity() : dmax / dmin;
  if (!(out.condition < cond_limit))
    throw IllConditionedError("solve_lstsq: condition estimate " + std::to_string(out.condition) +
                              " exceeds limit " + std::to_string(cond_limit));

  out.coeffs.assign(n, Complex{});
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * out.coeffs[j];
    out.coeffs[k] = s / rdiag[k];
  }
  double res2 = 0;
  for (std::size_t i = n; i < m; ++i) res2 += std::norm(b[i]);
  out.residual_norm = std::sqrt(res2);
  for (std::size_t j = 0; j < n; ++j) out.coeffs[j] /= scale[j];
  return out;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace jacobilab
