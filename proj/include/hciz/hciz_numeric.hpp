#pragma once

// Floating-point evaluation of the unitary orbital integral
//
//   I(a, b) = int_U exp(Tr(u A u^-1 B)) du
//
// by the closed-form determinant, by Monte Carlo over Haar measure, and by
// the character series.  Two argument conventions coexist:
//   hciz_*   : both spectra enter holomorphically, as in the determinant formula;
//   kernel_* : the second argument is conjugated, Q(x, y) = int exp(Tr(u^-1 x u y^*)).
// Hence kernel(x, y) == hciz(x, conj(y)).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <sstream>
#include <vector>

#include "hciz/errors.hpp"
#include "hciz/matrix_invariant.hpp"
#include "hciz/monte_carlo.hpp"
#include "hciz/partition.hpp"
#include "hciz/rng.hpp"
#include "hciz/symmetric.hpp"

namespace hciz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultGapTolerance = 1e-8;

class Spectrum {
 public:
  Spectrum(std::initializer_list<Complex> eigs) : Spectrum(std::vector<Complex>(eigs)) {}
  explicit Spectrum(std::vector<Complex> eigs) : eigs_(std::move(eigs)) {
    if (eigs_.empty()) throw DimensionError("Spectrum: need at least one eigenvalue");
    for (const auto& e : eigs_) {
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) throw std::invalid_argument("Spectrum: non-finite entry");
    }
    gap_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eigs_.size(); ++i) {
      for (std::size_t j = i + 1; j < eigs_.size(); ++j) gap_ = std::min(gap_, std::abs(eigs_[i] - eigs_[j]));
    }
  }
  static Spectrum real(const std::vector<double>& values) {
    return Spectrum(std::vector<Complex>(values.begin(), values.end()));
  }

  const std::vector<Complex>& eigs() const noexcept { return eigs_; }
  std::size_t size() const noexcept { return eigs_.size(); }
  // min_{i<j} |eig_i - eig_j|; +inf for a single eigenvalue.
  double gap() const noexcept { return gap_; }
  double max_abs() const {
    double m = 0.0;
    for (const auto& e : eigs_) m = std::max(m, std::abs(e));
    return m;
  }

  Spectrum conj() const {
    std::vector<Complex> c(eigs_.size());
    std::transform(eigs_.begin(), eigs_.end(), c.begin(), [](Complex z) { return std::conj(z); });
    return Spectrum(std::move(c));
  }

  ComplexMatrix diagonal() const {
    ComplexMatrix d = ComplexMatrix::Zero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = eigs_[i];
    return d;
  }

 private:
  std::vector<Complex> eigs_;
  double gap_ = 0.0;
};

// n x n matrix of i.i.d. standard complex Gaussians, density pi^-1 exp(-|z|^2).
inline ComplexMatrix sample_ginibre(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix z(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

// Haar-distributed unitaries: Ginibre matrix, Householder QR, then the
// columns of Q rotated by the phases of diag(R).  Reuses its workspace.
class HaarSampler {
 public:
  explicit HaarSampler(std::size_t n)
      : n_(static_cast<Eigen::Index>(n)), ginibre_(n_, n_), q_(n_, n_), qr_(n_, n_), normal_(0.0, std::sqrt(0.5)) {
    if (n == 0) throw DimensionError("HaarSampler: n must be >= 1");
  }

  const ComplexMatrix& operator()(Rng& rng) {
    for (;;) {
      for (Eigen::Index i = 0; i < n_; ++i) {
        for (Eigen::Index j = 0; j < n_; ++j) {
          const double re = normal_(rng);
          const double im = normal_(rng);
          ginibre_(i, j) = Complex(re, im);
        }
      }
      qr_.compute(ginibre_);
      q_ = qr_.householderQ();
      const auto& r = qr_.matrixQR();
      bool ok = true;
      for (Eigen::Index j = 0; j < n_; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag == 0.0) {
          ok = false;  // measure-zero breakdown, draw again
          break;
        }
        q_.col(j) *= r(j, j) / mag;
      }
      if (ok) return q_;
    }
  }

 private:
  Eigen::Index n_;
  ComplexMatrix ginibre_;
  ComplexMatrix q_;
  Eigen::HouseholderQR<ComplexMatrix> qr_;
  std::normal_distribution<double> normal_;
};

inline ComplexMatrix sample_haar_unitary(std::size_t n, Rng& rng) {
  HaarSampler sampler(n);
  return sampler(rng);
}

// max |(u^* u - I)_ij|
inline double unitarity_residual(const ComplexMatrix& u) {
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

// Closed form prod_{p<n} p! * det[exp(a_i b_j)] / (Delta(a) Delta(b)) with
// Delta(a) = prod_{i<j}(a_j - a_i).  Evaluated in extended precision since
// the determinant cancels down to Delta(a) Delta(b) times the result.
inline Complex hciz_determinant(const Spectrum& a, const Spectrum& b, double gap_tolerance = kDefaultGapTolerance) {
  if (a.size() != b.size()) throw DimensionError("hciz_determinant: spectra of different lengths");
  const std::size_t n = a.size();
  const double gap = std::min(a.gap(), b.gap());
  if (gap < gap_tolerance) {
    std::ostringstream msg;
    msg << "hciz_determinant: spectral gap " << gap << " below tolerance " << gap_tolerance
        << "; use the character series (kernel_series) instead";
    throw DegenerateSpectrumError(msg.str(), gap);
  }
  using LComplex = std::complex<long double>;
  using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
  const auto m = static_cast<Eigen::Index>(n);
  LMatrix e(m, m);
  std::vector<LComplex> la(n), lb(n);
  for (std::size_t i = 0; i < n; ++i) {
    la[i] = LComplex(a.eigs()[i].real(), a.eigs()[i].imag());
    lb[i] = LComplex(b.eigs()[i].real(), b.eigs()[i].imag());
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) e(i, j) = std::exp(la[static_cast<std::size_t>(i)] * lb[static_cast<std::size_t>(j)]);
  }
  LComplex value = n == 1 ? e(0, 0) : e.partialPivLu().determinant();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      value /= (la[j] - la[i]) * (lb[j] - lb[i]);
    }
  }
  value *= static_cast<long double>(hciz_prefactor(n).get_d());
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

// Mean of exp(Tr(u A u^-1 B)) = exp(sum_ij |u_ij|^2 a_j b_i) over Haar u.
inline MCEstimate hciz_mc(const Spectrum& a, const Spectrum& b, std::uint64_t n_samples, std::uint64_t seed,
                          unsigned threads = default_thread_count()) {
  if (a.size() != b.size()) throw DimensionError("hciz_mc: spectra of different lengths");
  const std::size_t n = a.size();
  const auto& ea = a.eigs();
  const auto& eb = b.eigs();
  return monte_carlo<1>(n_samples, seed, threads, [&] {
    return [&, haar = HaarSampler(n)](Rng& rng) mutable {
      const ComplexMatrix& u = haar(rng);
      Complex tr = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          tr += std::norm(u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) * ea[j] * eb[i];
        }
      }
      return std::array<Complex, 1>{std::exp(tr)};
    };
  })[0];
}

// Mean of exp(Tr(u^-1 x u y^*)) over Haar u.
inline MCEstimate kernel_q_mc(const ComplexMatrix& x, const ComplexMatrix& y, std::uint64_t n_samples,
                              std::uint64_t seed, unsigned threads = default_thread_count()) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() || x.rows() == 0) {
    throw DimensionError("kernel_q_mc: need square matrices of equal dimension");
  }
  const auto n = static_cast<std::size_t>(x.rows());
  const ComplexMatrix y_adj = y.adjoint();
  return monte_carlo<1>(n_samples, seed, threads, [&] {
    return [&, haar = HaarSampler(n), rotated = ComplexMatrix(x.rows(), x.cols())](Rng& rng) mutable {
      const ComplexMatrix& u = haar(rng);
      rotated.noalias() = u.adjoint() * x * u;
      // Tr(M y^*) = sum_ij M_ij (y^*)_ji
      const Complex tr = (rotated.cwiseProduct(y_adj.transpose())).sum();
      return std::array<Complex, 1>{std::exp(tr)};
    };
  })[0];
}

struct SeriesResult {
  Complex value{0.0, 0.0};
  std::uint32_t max_weight_used = 0;
  // sum of |terms| over the final weight shell
  double last_shell_magnitude = 0.0;
  // per-shell sums of |terms|, index = weight
  std::vector<double> shell_magnitudes;
};

namespace detail {

// delta! / (lambda+delta)! = prod_i 1 / ((delta_i+1) ... (delta_i+lambda_i))
inline double staircase_weight(const Partition& lambda, std::size_t n) {
  double w = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t d = static_cast<std::uint32_t>(n - 1 - i);
    for (std::uint32_t k = 1; k <= lambda[i]; ++k) w /= static_cast<double>(d + k);
  }
  return w;
}

inline std::pair<Complex, double> series_shell(const Spectrum& x, const Spectrum& y, std::uint32_t weight) {
  const std::size_t n = x.size();
  Complex sum = 0.0;
  double magnitude = 0.0;
  for (const auto& lambda : partitions_of_weight(weight, n)) {
    const Complex term = staircase_weight(lambda, n) * schur_numeric(lambda, x.eigs()) *
                         std::conj(schur_numeric(lambda, y.eigs()));
    sum += term;
    magnitude += std::abs(term);
  }
  return {sum, magnitude};
}

}  // namespace detail

// Q(x, y) = sum_lambda delta!/(lambda+delta)! s_lambda(x) conj(s_lambda(y)),
// truncated at |lambda| <= max_weight.
inline SeriesResult kernel_series(const Spectrum& x, const Spectrum& y, std::uint32_t max_weight) {
  if (x.size() != y.size()) throw DimensionError("kernel_series: spectra of different lengths");
  SeriesResult out;
  for (std::uint32_t w = 0; w <= max_weight; ++w) {
    const auto [sum, magnitude] = detail::series_shell(x, y, w);
    out.value += sum;
    out.shell_magnitudes.push_back(magnitude);
    out.last_shell_magnitude = magnitude;
    out.max_weight_used = w;
  }
  return out;
}

// Adds weight shells until two consecutive shells fall below
// 1e-3 * tolerance, or the cap is reached.
inline SeriesResult kernel_series_adaptive(const Spectrum& x, const Spectrum& y, double tolerance,
                                           std::uint32_t max_weight_cap = 24) {
  if (x.size() != y.size()) throw DimensionError("kernel_series: spectra of different lengths");
  const double stop = 1e-3 * tolerance;
  SeriesResult out;
  int quiet = 0;
  for (std::uint32_t w = 0; w <= max_weight_cap; ++w) {
    const auto [sum, magnitude] = detail::series_shell(x, y, w);
    out.value += sum;
    out.shell_magnitudes.push_back(magnitude);
    out.last_shell_magnitude = magnitude;
    out.max_weight_used = w;
    quiet = magnitude < stop ? quiet + 1 : 0;
    if (w > 0 && quiet >= 2) break;
  }
  return out;
}

struct MomentCheck {
  MCEstimate estimate;
  double expected = 0.0;
  bool within_4_sigma = false;
};

struct GinibreMomentReport {
  std::size_t n = 0;
  MomentCheck trace;        // E|Tr z|^2 = n
  MomentCheck determinant;  // E|det z|^2 = n!
  bool passed() const { return trace.within_4_sigma && determinant.within_4_sigma; }
};

inline bool within_sigmas(const MCEstimate& e, Complex expected, double sigmas = 4.0) {
  return std::abs(e.mean - expected) <= sigmas * e.std_error;
}

inline GinibreMomentReport ginibre_moment_suite(std::size_t n, std::uint64_t n_samples, std::uint64_t seed,
                                                unsigned threads = default_thread_count()) {
  if (n == 0 || n > 6) throw std::invalid_argument("ginibre_moment_suite: n must be in [1, 6]");
  auto est = monte_carlo<2>(n_samples, seed, threads, [n] {
    return [n](Rng& rng) {
      const ComplexMatrix z = sample_ginibre(n, rng);
      const Complex det = n == 1 ? z(0, 0) : z.partialPivLu().determinant();
      return std::array<Complex, 2>{Complex(std::norm(z.trace()), 0.0), Complex(std::norm(det), 0.0)};
    };
  });
  GinibreMomentReport r;
  r.n = n;
  r.trace = {est[0], static_cast<double>(n), false};
  r.determinant = {est[1], factorial(n).get_d(), false};
  // n = 1: both moments are |z_11|^2 with equal samples.
  r.trace.within_4_sigma = within_sigmas(r.trace.estimate, r.trace.expected);
  r.determinant.within_4_sigma = within_sigmas(r.determinant.estimate, r.determinant.expected);
  return r;
}

// Taylor coefficient of z^mu in the alternating coherent state
// R_a(z) = (1/n!) sum_sigma sgn(sigma) exp(sigma(z) . conj(a)), namely
// (1/(n! mu!)) sum_sigma sgn(sigma) prod_j conj(a_sigma(j))^mu_j.
inline Complex alternating_kernel_coefficient(const Spectrum& a, std::span<const std::uint32_t> mu) {
  const std::size_t n = a.size();
  Complex sum = 0.0;
  for (const auto& [perm, sign] : permutations_with_sign(n)) {
    Complex t = static_cast<double>(sign);
    for (std::size_t j = 0; j < n; ++j) t *= std::pow(std::conj(a.eigs()[perm[j]]), static_cast<int>(mu[j]));
    sum += t;
  }
  double denom = factorial(n).get_d();
  for (auto m : mu) denom *= factorial(m).get_d();
  return sum / denom;
}

// |<R_a truncated at max_weight, F> - F(a)| with the pairing taken term by
// term: <R_a, F> = sum_mu conj(r_mu) f_mu mu!.
inline double coherent_reproducing_check(const Spectrum& a, const AltPoly& f, std::uint32_t max_weight) {
  const std::size_t n = a.size();
  if (f.poly().n_vars() != n) throw DimensionError("coherent_reproducing_check: F has wrong variable count");
  Complex pairing = 0.0;
  for (const auto& [m, c] : f.poly().terms()) {
    if (m.degree() > max_weight) continue;
    const auto mu = m.dense(n);
    const Complex r = alternating_kernel_coefficient(a, mu);
    pairing += std::conj(r) * c.to_complex() * m.factorial().get_d();
  }
  return std::abs(pairing - f.poly().eval_complex(a.eigs()));
}

}  // namespace hciz
