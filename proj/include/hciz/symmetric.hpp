#pragma once

// Alternants, Vandermonde, Schur polynomials and the normalization constants
// of the alternating Segal-Bargmann basis.
//
// Sign convention: `vandermonde(n)` is prod_{i<j}(x_j - x_i) while
// `alternant(staircase(n), n)` is det[x_i^{n-j}] = prod_{i<j}(x_i - x_j).
// They differ by `vandermonde_sign(n)`.  Every Schur/basis identity here is
// written with the alternant.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "hciz/exact_poly.hpp"
#include "hciz/generator_poly.hpp"
#include "hciz/partition.hpp"

namespace hciz {

// delta = (n-1, n-2, ..., 0)
inline std::vector<std::uint32_t> staircase(std::size_t n) {
  std::vector<std::uint32_t> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::uint32_t>(n - 1 - i);
  return d;
}

// lambda + delta, strictly decreasing; requires length(lambda) <= n.
inline std::vector<std::uint32_t> shifted_exponents(const Partition& lambda, std::size_t n) {
  auto out = lambda.padded(n);
  const auto d = staircase(n);
  for (std::size_t i = 0; i < n; ++i) out[i] += d[i];
  return out;
}

// prod_i mu_i!
inline BigInt multi_factorial(std::span<const std::uint32_t> mu) {
  BigInt f = 1;
  for (auto m : mu) f *= factorial(m);
  return f;
}

// prod_{p=1}^{n} p!
inline BigInt superfactorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t p = 1; p <= n; ++p) f *= factorial(p);
  return f;
}

// Every permutation of {0..n-1} in lexicographic order, with its sign.
inline std::vector<std::pair<std::vector<VarId>, int>> permutations_with_sign(std::size_t n) {
  std::vector<std::pair<std::vector<VarId>, int>> out;
  std::vector<VarId> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    out.emplace_back(perm, (inversions % 2 == 0) ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// a_mu = det[x_i^{mu_j}] = sum_sigma sgn(sigma) prod_i x_i^{mu_sigma(i)}.
inline ExactPoly alternant(std::span<const std::uint32_t> mu, std::size_t n) {
  if (mu.size() != n) throw DimensionError("alternant: exponent vector length must equal n");
  std::vector<std::uint32_t> sorted(mu.begin(), mu.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DegenerateExponentError("alternant: repeated exponent");
  }
  ExactPoly out(n);
  std::vector<std::uint32_t> exps(n);
  for (const auto& [perm, sign] : permutations_with_sign(n)) {
    for (std::size_t i = 0; i < n; ++i) exps[i] = mu[perm[i]];
    out.add_term(MultiIndex::from_dense(exps), GaussianRational(sign));
  }
  return out;
}
inline ExactPoly alternant(std::initializer_list<std::uint32_t> mu, std::size_t n) {
  return alternant(std::span<const std::uint32_t>(mu.begin(), mu.size()), n);
}

// Delta = prod_{i<j} (x_j - x_i), expanded as a product.
inline ExactPoly vandermonde(std::size_t n) {
  ExactPoly out = ExactPoly::constant(n, 1);
  for (VarId i = 0; i < n; ++i) {
    for (VarId j = i + 1; j < n; ++j) {
      out *= ExactPoly::variable(n, j) - ExactPoly::variable(n, i);
    }
  }
  return out;
}

// vandermonde(n) == vandermonde_sign(n) * alternant(staircase(n), n)
inline int vandermonde_sign(std::size_t n) { return ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1; }

// a_delta(x) = prod_{i<j}(x_i - x_j)
inline ExactPoly alternant_delta(std::size_t n) { return alternant(staircase(n), n); }

inline bool is_symmetric(const ExactPoly& f) {
  const std::size_t n = f.n_vars();
  for (VarId i = 0; i + 1 < n; ++i) {
    std::vector<VarId> swap(n);
    std::iota(swap.begin(), swap.end(), 0U);
    std::swap(swap[i], swap[i + 1]);
    if (f.relabeled(swap, n) != f) return false;
  }
  return true;
}

inline bool is_alternating(const ExactPoly& f) {
  const std::size_t n = f.n_vars();
  for (VarId i = 0; i + 1 < n; ++i) {
    std::vector<VarId> swap(n);
    std::iota(swap.begin(), swap.end(), 0U);
    std::swap(swap[i], swap[i + 1]);
    if (f.relabeled(swap, n) != -f) return false;
  }
  return true;
}

// P F = (1/n!) sum_sigma sgn(sigma) F(z_{sigma^-1(1)}, ..., z_{sigma^-1(n)})
inline ExactPoly alternating_projection(const ExactPoly& f) {
  const std::size_t n = f.n_vars();
  ExactPoly out(n);
  for (const auto& [perm, sign] : permutations_with_sign(n)) {
    if (sign > 0) {
      out += f.relabeled(perm, n);
    } else {
      out -= f.relabeled(perm, n);
    }
  }
  return out * GaussianRational(make_rational(1, factorial(n)));
}

// s_lambda(x_1..x_n) = a_{lambda+delta} / a_delta, by exact division.
inline ExactPoly schur_exact(const Partition& lambda, std::size_t n) {
  if (lambda.length() > n) throw DimensionError("schur_exact: length(lambda) > n");
  auto [quotient, remainder] = divide(alternant(shifted_exponents(lambda, n), n), alternant_delta(n));
  if (!remainder.is_zero()) throw ConsistencyError("schur_exact: bialternant division left a remainder");
  return quotient;
}

namespace detail {

// Complete homogeneous h_0..h_top at the given point, via Newton's identities
// k h_k = sum_{i=1}^{k} p_i h_{k-i}.
inline std::vector<std::complex<double>> complete_homogeneous(std::span<const std::complex<double>> x,
                                                              std::size_t top) {
  std::vector<std::complex<double>> p(top + 1, 0.0);
  for (const auto& xi : x) {
    std::complex<double> pw = 1.0;
    for (std::size_t k = 1; k <= top; ++k) {
      pw *= xi;
      p[k] += pw;
    }
  }
  std::vector<std::complex<double>> h(top + 1, 0.0);
  h[0] = 1.0;
  for (std::size_t k = 1; k <= top; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) acc += p[i] * h[k - i];
    h[k] = acc / static_cast<double>(k);
  }
  return h;
}

}  // namespace detail

// s_lambda at a point from the Jacobi-Trudi determinant det[h_{lambda_i - i + j}].
inline std::complex<double> schur_numeric(const Partition& lambda, std::span<const std::complex<double>> eigs) {
  if (lambda.length() > eigs.size()) return 0.0;
  const std::size_t len = lambda.length();
  if (len == 0) return 1.0;
  const auto h = detail::complete_homogeneous(eigs, lambda[0] + len);
  Eigen::MatrixXcd jt(len, len);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      const long k = static_cast<long>(lambda[i]) - static_cast<long>(i) + static_cast<long>(j);
      jt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k < 0 ? 0.0 : h[static_cast<std::size_t>(k)];
    }
  }
  return jt.partialPivLu().determinant();
}

// Symmetric-group characters chi^lambda(rho) by the Murnaghan-Nakayama rule,
// with rim hooks removed on the beta-number abacus.
class CharacterTable {
 public:
  long character(const Partition& lambda, const Partition& rho) {
    if (lambda.weight() != rho.weight()) return 0;
    return chi(lambda.parts(), rho.parts(), 0);
  }

 private:
  long chi(const std::vector<std::uint32_t>& shape, const std::vector<std::uint32_t>& rho, std::size_t next) {
    if (next == rho.size()) return shape.empty() ? 1 : 0;
    auto key = std::make_pair(shape, std::vector<std::uint32_t>(rho.begin() + static_cast<long>(next), rho.end()));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::uint32_t k = rho[next];
    const std::size_t len = shape.size();
    std::vector<long> beta(len);
    for (std::size_t i = 0; i < len; ++i) beta[i] = static_cast<long>(shape[i]) + static_cast<long>(len - 1 - i);

    long total = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const long target = beta[i] - k;
      if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
      // Beads strictly between target and beta[i] give the hook's height.
      int between = 0;
      for (long b : beta) between += (b > target && b < beta[i]) ? 1 : 0;
      std::vector<long> moved = beta;
      moved[i] = target;
      std::sort(moved.begin(), moved.end(), std::greater<>());
      std::vector<std::uint32_t> smaller;
      for (std::size_t r = 0; r < len; ++r) {
        const long part = moved[r] - static_cast<long>(len - 1 - r);
        if (part > 0) smaller.push_back(static_cast<std::uint32_t>(part));
      }
      const long sub = chi(smaller, rho, next + 1);
      total += (between % 2 == 0) ? sub : -sub;
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  // (remaining shape, remaining strip sizes) -> character
  std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, long> memo_;
};

// Each thread keeps its own memo table.
inline long mn_character(const Partition& lambda, const Partition& rho) {
  thread_local CharacterTable table;
  return table.character(lambda, rho);
}

// z_rho = prod_i i^{m_i} m_i!
inline BigInt centralizer_order(const Partition& rho) {
  std::map<std::uint32_t, unsigned long> mult;
  for (auto p : rho.parts()) ++mult[p];
  BigInt z = 1;
  for (const auto& [part, m] : mult) {
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), part, m);
    z *= pw * factorial(m);
  }
  return z;
}

// s_lambda = sum_{rho |- |lambda|} chi^lambda(rho) p_rho / z_rho
inline PowerSumPoly schur_to_power_sums(const Partition& lambda) {
  thread_local std::map<Partition, PowerSumPoly> cache;
  if (auto it = cache.find(lambda); it != cache.end()) return it->second;
  PowerSumPoly out;
  for (const auto& rho : partitions_of_weight(lambda.weight(), lambda.weight() == 0 ? 1 : lambda.weight())) {
    const long chi = mn_character(lambda, rho);
    if (chi == 0) continue;
    out += PowerSumPoly::product(rho.parts(), GaussianRational(make_rational(chi, centralizer_order(rho))));
  }
  cache.emplace(lambda, out);
  return out;
}

// p_k -> x_1^k + ... + x_n^k
inline ExactPoly power_sum_in(std::size_t n, std::uint32_t k) {
  ExactPoly out(n);
  for (VarId i = 0; i < n; ++i) out.add_term(MultiIndex::unit(i, k), 1);
  return out;
}

inline ExactPoly evaluate_power_sums(const PowerSumPoly& f, std::size_t n) {
  return f.substitute([n](std::uint32_t k) { return power_sum_in(n, k); });
}

// A polynomial times an exact radical scalar: value = scale * poly.
struct ScaledPoly {
  RadicalScalar scale;
  ExactPoly poly;
};

// <sF, tG> = conj(s) t <F, G>
inline RadicalScalar scaled_inner(const ScaledPoly& f, const ScaledPoly& g) {
  return f.scale.conj() * g.scale * RadicalScalar(bargmann_inner(f.poly, g.poly));
}

// d_lambda = a_{lambda+delta} / sqrt(n! (lambda+delta)!)
inline ScaledPoly d_lambda(const Partition& lambda, std::size_t n) {
  const auto mu = shifted_exponents(lambda, n);
  const BigInt norm2 = factorial(n) * multi_factorial(mu);
  return {RadicalScalar::sqrt_of(make_rational(1, norm2)), alternant(mu, n)};
}

// c = (prod_{p=1}^n p!)^{-1/2}
inline RadicalScalar norm_const_c(std::size_t n) {
  if (n == 0) throw std::invalid_argument("norm_const_c: n must be >= 1");
  return RadicalScalar::sqrt_of(make_rational(1, superfactorial(n)));
}

// prod_{p=1}^{n-1} p!, the prefactor of the determinant formula; equals (1/c^2)/n!.
inline BigInt hciz_prefactor(std::size_t n) { return superfactorial(n == 0 ? 0 : n - 1); }

}  // namespace hciz
