#pragma once

// Conjugation-invariant polynomials on n x n matrices, written in the traces
// t_k = Tr(z^k), and the restriction map
//
//   psi(F) = c * a_delta * F|_D
//
// onto alternating polynomials in the diagonal entries.  Entry z_ij is
// variable i*n + j of an ExactPoly in n^2 variables.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hciz/exact_poly.hpp"
#include "hciz/generator_poly.hpp"
#include "hciz/partition.hpp"
#include "hciz/symmetric.hpp"

namespace hciz {

inline VarId entry_var(std::size_t n, std::size_t row, std::size_t col) { return static_cast<VarId>(row * n + col); }

// Symmetric polynomial in n variables; the tag is checked on construction.
class SymPoly {
 public:
  explicit SymPoly(ExactPoly poly) : poly_(std::move(poly)) {
    if (!is_symmetric(poly_)) throw TagError("SymPoly: polynomial is not symmetric");
  }
  const ExactPoly& poly() const noexcept { return poly_; }
  friend bool operator==(const SymPoly&, const SymPoly&) = default;

 private:
  ExactPoly poly_;
};

// Alternating polynomial in n variables; the tag is checked on construction.
class AltPoly {
 public:
  explicit AltPoly(ExactPoly poly) : poly_(std::move(poly)) {
    if (!is_alternating(poly_)) throw TagError("AltPoly: polynomial is not alternating");
  }
  const ExactPoly& poly() const noexcept { return poly_; }
  friend bool operator==(const AltPoly&, const AltPoly&) = default;

 private:
  ExactPoly poly_;
};

// value = scale * poly
struct ScaledTrace {
  RadicalScalar scale;
  TracePoly poly;
};

struct ScaledAlt {
  RadicalScalar scale;
  AltPoly poly;

  ScaledPoly as_scaled_poly() const { return {scale, poly.poly()}; }
};

// Tr(z^k) as a polynomial in the n^2 entries.  Cached per thread.
inline const ExactPoly& trace_power_entries(std::size_t n, std::uint32_t k) {
  thread_local std::map<std::pair<std::size_t, std::uint32_t>, ExactPoly> cache;
  const auto key = std::make_pair(n, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t nv = n * n;
  // Row-by-row powers of the generic matrix: power[i][j] = (z^k)_{ij}.
  std::vector<ExactPoly> power(nv, ExactPoly(nv));
  for (std::size_t i = 0; i < n; ++i) power[i * n + i] = ExactPoly::constant(nv, 1);
  for (std::uint32_t step = 0; step < k; ++step) {
    std::vector<ExactPoly> next(nv, ExactPoly(nv));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) {
          if (power[i * n + m].is_zero()) continue;
          next[i * n + j] += power[i * n + m] * ExactPoly::variable(nv, entry_var(n, m, j));
        }
      }
    }
    power = std::move(next);
  }
  ExactPoly trace(nv);
  for (std::size_t i = 0; i < n; ++i) trace += power[i * n + i];
  return cache.emplace(key, std::move(trace)).first->second;
}

// Substitute t_k -> Tr(z^k) over the n^2 entries.
inline ExactPoly expand_to_entries(const TracePoly& f, std::size_t n) {
  if (n == 0) throw DimensionError("expand_to_entries: n must be >= 1");
  return f.substitute([n](std::uint32_t k) { return trace_power_entries(n, k); });
}

// Substitute t_k -> x_1^k + ... + x_n^k.
inline SymPoly restrict_to_diagonal(const TracePoly& f, std::size_t n) {
  if (n == 0) throw DimensionError("restrict_to_diagonal: n must be >= 1");
  return SymPoly(f.substitute([n](std::uint32_t k) { return power_sum_in(n, k); }));
}

// Entry polynomial restricted to diagonal matrices: z_ii -> x_i, z_ij -> 0.
inline ExactPoly entries_on_diagonal(const ExactPoly& entries, std::size_t n) {
  if (entries.n_vars() != n * n) throw DimensionError("entries_on_diagonal: expected n^2 variables");
  std::vector<ExactPoly> images;
  images.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      images.push_back(i == j ? ExactPoly::variable(n, static_cast<VarId>(i)) : ExactPoly(n));
    }
  }
  return entries.substitute(images);
}

// psi(F) = c * a_delta * F|_D
inline ScaledAlt psi_map(const TracePoly& f, std::size_t n) {
  return {norm_const_c(n), AltPoly(alternant_delta(n) * restrict_to_diagonal(f, n).poly())};
}

inline ScaledAlt psi_map(const ScaledTrace& f, std::size_t n) {
  ScaledAlt out = psi_map(f.poly, n);
  out.scale = out.scale * f.scale;
  return out;
}

// chi_lambda = s_lambda written in traces (p_k -> t_k).
inline TracePoly chi_lambda(const Partition& lambda) {
  return schur_to_power_sums(lambda).retagged<TraceTag>();
}

// e_lambda = sqrt(delta! / (lambda+delta)!) * chi_lambda at dimension n.
inline ScaledTrace e_lambda(const Partition& lambda, std::size_t n) {
  const auto delta = staircase(n);
  const auto shifted = shifted_exponents(lambda, n);
  return {RadicalScalar::sqrt_of(make_rational(multi_factorial(delta), multi_factorial(shifted))), chi_lambda(lambda)};
}

// Coefficients f_lambda of sum_lambda f_lambda a_{lambda+delta} read off an
// alternating polynomial at the strictly decreasing exponents.
inline std::map<Partition, GaussianRational> alternant_coefficients(const ExactPoly& alt) {
  const std::size_t n = alt.n_vars();
  const auto delta = staircase(n);
  std::map<Partition, GaussianRational> out;
  for (const auto& [m, c] : alt.terms()) {
    const auto mu = m.dense(n);
    bool strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < n; ++i) strictly_decreasing = strictly_decreasing && mu[i] > mu[i + 1];
    if (!strictly_decreasing) continue;
    std::vector<std::uint32_t> parts(n);
    for (std::size_t i = 0; i < n; ++i) parts[i] = mu[i] - delta[i];
    out.emplace(Partition(std::move(parts)), c);
  }
  return out;
}

// sum_lambda f_lambda chi_lambda
inline TracePoly character_sum(const std::map<Partition, GaussianRational>& coeffs) {
  TracePoly out;
  for (const auto& [lambda, f] : coeffs) out += chi_lambda(lambda) * f;
  return out;
}

// Inverse of psi on polynomials: divide by a_delta, expand the symmetric
// quotient in characters, lift p_k -> t_k and divide the scalar by c.
inline ScaledTrace psi_inverse(const ScaledAlt& g, std::size_t n) {
  if (g.poly.poly().n_vars() != n) throw DimensionError("psi_inverse: expected n variables");
  auto [quotient, remainder] = divide(g.poly.poly(), alternant_delta(n));
  if (!remainder.is_zero()) throw NotInImageError("psi_inverse: a_delta does not divide the input");
  return {g.scale * norm_const_c(n).inverse(), character_sum(alternant_coefficients(g.poly.poly()))};
}

inline ScaledTrace psi_inverse(const AltPoly& g, std::size_t n) { return psi_inverse(ScaledAlt{RadicalScalar(), g}, n); }

// <F, G> on the n x n matrix Segal-Bargmann space.
inline GaussianRational invariant_inner(const TracePoly& f, const TracePoly& g, std::size_t n) {
  return bargmann_inner(expand_to_entries(f, n), expand_to_entries(g, n));
}

inline RadicalScalar invariant_inner(const ScaledTrace& f, const ScaledTrace& g, std::size_t n) {
  return f.scale.conj() * g.scale * RadicalScalar(invariant_inner(f.poly, g.poly, n));
}

template <class T>
struct IdentityCheck {
  bool holds;
  T lhs;
  T rhs;
};

// <F, G> == <psi F, psi G>, both sides exact.
inline IdentityCheck<GaussianRational> verify_unitarity(const TracePoly& f, const TracePoly& g, std::size_t n) {
  GaussianRational lhs = invariant_inner(f, g, n);
  const ExactPoly ad = alternant_delta(n);
  const GaussianRational c2(make_rational(1, superfactorial(n)));
  GaussianRational rhs = c2 * bargmann_inner(ad * restrict_to_diagonal(f, n).poly(), ad * restrict_to_diagonal(g, n).poly());
  const bool holds = lhs == rhs;
  return {holds, std::move(lhs), std::move(rhs)};
}

// a_delta * (F(d)G)|_D  ==  F|_D(d_1..d_n)(a_delta * G|_D), as polynomials in x.
inline IdentityCheck<ExactPoly> verify_diffop_identity(const TracePoly& f, const TracePoly& g, std::size_t n) {
  const ExactPoly ad = alternant_delta(n);
  const ExactPoly applied = apply_diff_operator(expand_to_entries(f, n), expand_to_entries(g, n));
  ExactPoly lhs = ad * entries_on_diagonal(applied, n);
  ExactPoly rhs = apply_diff_operator(restrict_to_diagonal(f, n).poly(), ad * restrict_to_diagonal(g, n).poly());
  const bool holds = lhs == rhs;
  return {holds, std::move(lhs), std::move(rhs)};
}

// f_lambda = coefficient of x^{lambda+delta} in a_delta * F|_D, for every
// lambda with |lambda| <= max_weight and at most n parts.
inline std::map<Partition, GaussianRational> fourier_coefficients(const TracePoly& f, std::size_t n,
                                                                  std::uint32_t max_weight) {
  if (f.weighted_degree() > static_cast<long>(max_weight)) {
    throw std::invalid_argument("fourier_coefficients: weighted degree exceeds max_weight");
  }
  const ExactPoly alt = alternant_delta(n) * restrict_to_diagonal(f, n).poly();
  std::map<Partition, GaussianRational> out;
  for (const auto& lambda : enumerate_partitions(max_weight, n)) {
    GaussianRational c = alt.coefficient(MultiIndex::from_dense(shifted_exponents(lambda, n)));
    if (!c.is_zero()) out.emplace(lambda, std::move(c));
  }
  return out;
}

// sum f_lambda chi_lambda == F as functions on n x n matrices.
inline bool fourier_reconstruction_holds(const TracePoly& f, const std::map<Partition, GaussianRational>& coeffs,
                                         std::size_t n) {
  return expand_to_entries(character_sum(coeffs), n) == expand_to_entries(f, n);
}

}  // namespace hciz
