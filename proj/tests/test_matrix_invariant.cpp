#include <gtest/gtest.h>

#include <random>

#include "hciz/matrix_invariant.hpp"
#include "test_support.hpp"

using namespace hciz;
using hciz::testing::random_trace_poly;
using hciz::testing::trace_monomials;

namespace {

TracePoly t(std::uint32_t k) { return TracePoly::generator(k); }
ExactPoly z(std::size_t n, std::size_t i, std::size_t j) { return ExactPoly::variable(n * n, entry_var(n, i, j)); }
ExactPoly x(std::size_t n, VarId v) { return ExactPoly::variable(n, v); }

// Tr(z^k) by explicit summation over closed index paths i1 -> i2 -> ... -> i1.
ExactPoly trace_by_paths(std::size_t n, std::uint32_t k) {
  ExactPoly out(n * n);
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    ExactPoly term = ExactPoly::constant(n * n, 1);
    for (std::uint32_t s = 0; s < k; ++s) term *= z(n, idx[s], idx[(s + 1) % k]);
    out += term;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

// z -> P z P^T for the permutation matrix of `perm`: z_ij -> z_{perm(i) perm(j)}.
std::vector<VarId> conjugation_relabel(std::size_t n, const std::vector<VarId>& perm) {
  std::vector<VarId> map(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) map[i * n + j] = entry_var(n, perm[i], perm[j]);
  }
  return map;
}

}  // namespace

TEST(TracePoly, Serialization) {
  const TracePoly f = t(1) * t(1) * t(3) * GaussianRational(make_rational(3, 2)) + t(2);
  EXPECT_EQ(f.to_string(), "(3/2, 0) t1^2 t3 + (1, 0) t2");
  EXPECT_EQ(f.weighted_degree(), 5);
  EXPECT_EQ(TracePoly::constant(1).weighted_degree(), 0);
}

TEST(ExpandToEntries, TraceAndTraceOfSquare) {
  EXPECT_EQ(expand_to_entries(t(1), 2), z(2, 0, 0) + z(2, 1, 1));
  const ExactPoly expected =
      z(2, 0, 0).pow(2) + z(2, 0, 1) * z(2, 1, 0) * GaussianRational(2) + z(2, 1, 1).pow(2);
  EXPECT_EQ(expand_to_entries(t(2), 2), expected);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint32_t k = 1; k <= 4; ++k) EXPECT_EQ(trace_power_entries(n, k), trace_by_paths(n, k));
  }
}

TEST(ExpandToEntries, RingHomomorphism) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const TracePoly f = random_trace_poly(rng, 3);
    const TracePoly g = random_trace_poly(rng, 3);
    for (std::size_t n = 2; n <= 3; ++n) {
      EXPECT_EQ(expand_to_entries(f * g, n), expand_to_entries(f, n) * expand_to_entries(g, n));
      EXPECT_EQ(expand_to_entries(f + g, n), expand_to_entries(f, n) + expand_to_entries(g, n));
    }
  }
}

TEST(ExpandToEntries, ConjugationInvariantUnderPermutations) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& mono : trace_monomials(4, 4)) {
      const ExactPoly e = expand_to_entries(mono, n);
      for (const auto& [perm, sign] : permutations_with_sign(n)) {
        EXPECT_EQ(e.relabeled(conjugation_relabel(n, perm), n * n), e);
      }
    }
  }
}

TEST(RestrictToDiagonal, PowerSumSubstitution) {
  EXPECT_EQ(restrict_to_diagonal(t(1), 3).poly(), x(3, 0) + x(3, 1) + x(3, 2));
  const ExactPoly expected = (x(2, 0).pow(2) + x(2, 1).pow(2)) * (x(2, 0) + x(2, 1));
  EXPECT_EQ(restrict_to_diagonal(t(2) * t(1), 2).poly(), expected);
}

TEST(RestrictToDiagonal, AgreesWithEntryExpansion) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const TracePoly f = random_trace_poly(rng, 5);
    for (std::size_t n = 1; n <= 3; ++n) {
      EXPECT_EQ(entries_on_diagonal(expand_to_entries(f, n), n), restrict_to_diagonal(f, n).poly());
    }
  }
}

TEST(TaggedPolys, RejectWrongSymmetry) {
  EXPECT_THROW(SymPoly(x(2, 0)), TagError);
  EXPECT_THROW(AltPoly(x(2, 0) + x(2, 1)), TagError);
  EXPECT_NO_THROW(AltPoly(x(2, 0) - x(2, 1)));
}

TEST(Psi, UnitAndTrace) {
  const ScaledAlt one = psi_map(TracePoly::constant(1), 2);
  EXPECT_EQ(one.scale, norm_const_c(2));
  EXPECT_EQ(one.poly.poly(), x(2, 0) - x(2, 1));
  const ScaledAlt tr = psi_map(t(1), 2);
  EXPECT_EQ(tr.poly.poly(), alternant({2, 0}, 2));
}

TEST(Psi, MapsCharacterBasisToAlternatingBasis) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& lambda : enumerate_partitions(4, n)) {
      const ScaledAlt image = psi_map(e_lambda(lambda, n), n);
      const ScaledPoly d = d_lambda(lambda, n);
      EXPECT_EQ(image.poly.poly(), d.poly) << lambda.to_string();
      EXPECT_EQ(image.scale, d.scale) << lambda.to_string();
    }
  }
}

TEST(Psi, InverseRoundTrip) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const TracePoly f = random_trace_poly(rng, 5);
    for (std::size_t n = 1; n <= 3; ++n) {
      const ScaledTrace back = psi_inverse(psi_map(f, n), n);
      ASSERT_TRUE(back.scale.is_rational());
      const TracePoly g = back.poly * back.scale.to_gaussian();
      EXPECT_EQ(expand_to_entries(g, n), expand_to_entries(f, n));
    }
  }
}

TEST(Psi, InverseOfSimpleImages) {
  const ScaledTrace one = psi_inverse(ScaledAlt{norm_const_c(2), AltPoly(alternant_delta(2))}, 2);
  EXPECT_EQ(one.scale, RadicalScalar(GaussianRational(1)));
  EXPECT_EQ(one.poly, TracePoly::constant(1));

  const Partition lambda{2, 1};
  const ScaledPoly d = d_lambda(lambda, 2);
  const ScaledTrace e = psi_inverse(ScaledAlt{d.scale, AltPoly(d.poly)}, 2);
  const ScaledTrace expected = e_lambda(lambda, 2);
  EXPECT_EQ(e.scale, expected.scale);
  EXPECT_EQ(expand_to_entries(e.poly, 2), expand_to_entries(expected.poly, 2));
}

TEST(Psi, RejectsPolynomialsOutsideImage) {
  EXPECT_THROW((void)psi_inverse(AltPoly(x(2, 0) - x(2, 1)), 3), DimensionError);
  EXPECT_THROW(AltPoly(x(2, 0) * x(2, 1)), TagError);
}

TEST(Psi, MultiplicationIntertwines) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const TracePoly f = random_trace_poly(rng, 3);
    const TracePoly g = random_trace_poly(rng, 3);
    for (std::size_t n = 1; n <= 3; ++n) {
      EXPECT_EQ(psi_map(f * g, n).poly.poly(), restrict_to_diagonal(f, n).poly() * psi_map(g, n).poly.poly());
    }
  }
}

TEST(Characters, PowerSumForms) {
  EXPECT_EQ(chi_lambda(Partition{1}), t(1));
  EXPECT_EQ(chi_lambda(Partition{2}), (t(1) * t(1) + t(2)) * GaussianRational(make_rational(1, 2)));
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& lambda : enumerate_partitions(5, n)) {
      EXPECT_EQ(restrict_to_diagonal(chi_lambda(lambda), n).poly(), schur_exact(lambda, n));
    }
  }
}

TEST(Characters, CharacterBasisScale) {
  const ScaledTrace e0 = e_lambda(Partition{}, 3);
  EXPECT_EQ(e0.scale, RadicalScalar(GaussianRational(1)));
  EXPECT_EQ(e0.poly, TracePoly::constant(1));
  EXPECT_EQ(e_lambda(Partition{1}, 2).scale.norm2(), make_rational(1, 2));
  const ScaledTrace e1 = e_lambda(Partition{1}, 2);
  EXPECT_EQ(invariant_inner(e1, e1, 2), RadicalScalar(GaussianRational(1)));
}

TEST(InvariantInner, GinibreMoments) {
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(invariant_inner(t(1), t(1), n), GaussianRational(static_cast<long>(n)));
    std::vector<std::uint32_t> ones(n, 1);
    const TracePoly det = chi_lambda(Partition(ones));
    // chi_{1^n} expands to the determinant
    if (n == 2) EXPECT_EQ(expand_to_entries(det, 2), z(2, 0, 0) * z(2, 1, 1) - z(2, 0, 1) * z(2, 1, 0));
    EXPECT_EQ(invariant_inner(det, det, n), GaussianRational(Rational(factorial(n))));
  }
  EXPECT_EQ(invariant_inner(TracePoly::constant(1), t(1), 3), GaussianRational(0));
}

TEST(Unitarity, Examples) {
  const auto one = verify_unitarity(TracePoly::constant(1), TracePoly::constant(1), 2);
  EXPECT_TRUE(one.holds);
  EXPECT_EQ(one.lhs, GaussianRational(1));
  const auto tr = verify_unitarity(t(1), t(1), 2);
  EXPECT_TRUE(tr.holds);
  EXPECT_EQ(tr.lhs, GaussianRational(2));
  EXPECT_EQ(tr.rhs, GaussianRational(2));
}

TEST(Unitarity, AllTraceMonomialsUpToWeightFour) {
  const auto monos = trace_monomials(4, 4);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& f : monos) {
      for (const auto& g : monos) {
        const auto r = verify_unitarity(f, g, n);
        EXPECT_TRUE(r.holds) << f.to_string() << " , " << g.to_string() << " n=" << n << ": " << r.lhs << " vs "
                             << r.rhs;
      }
    }
  }
}

TEST(DiffOperator, ZerothOrderAndTraceExamples) {
  const auto r0 = verify_diffop_identity(TracePoly::constant(1), t(2) * t(1), 3);
  EXPECT_TRUE(r0.holds);
  EXPECT_EQ(r0.lhs, alternant_delta(3) * restrict_to_diagonal(t(2) * t(1), 3).poly());

  // Tr(d) Tr(z) = 2 at n = 2; (d1 + d2)(x1^2 - x2^2) = 2 x1 - 2 x2.
  const auto r1 = verify_diffop_identity(t(1), t(1), 2);
  EXPECT_TRUE(r1.holds);
  EXPECT_EQ(r1.lhs, (x(2, 0) - x(2, 1)) * GaussianRational(2));
}

TEST(DiffOperator, ComplexCoefficients) {
  const TracePoly f = t(2) * GaussianRational(1, 2) + t(1);
  const TracePoly g = t(1) * t(2) * GaussianRational(make_rational(-1, 3), 1);
  for (std::size_t n = 2; n <= 3; ++n) EXPECT_TRUE(verify_diffop_identity(f, g, n).holds);
}

TEST(Fourier, BasisElementsAndProducts) {
  const auto coeffs = fourier_coefficients(chi_lambda(Partition({2, 1})), 3, 3);
  ASSERT_EQ(coeffs.size(), 1U);
  EXPECT_EQ(coeffs.at(Partition({2, 1})), GaussianRational(1));

  const auto sq = fourier_coefficients(t(1) * t(1), 2, 2);
  ASSERT_EQ(sq.size(), 2U);
  EXPECT_EQ(sq.at(Partition{2}), GaussianRational(1));
  EXPECT_EQ(sq.at(Partition({1, 1})), GaussianRational(1));

  const auto one = fourier_coefficients(TracePoly::constant(1), 3, 0);
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one.at(Partition{}), GaussianRational(1));

  EXPECT_THROW((void)fourier_coefficients(t(3), 2, 2), std::invalid_argument);
}

TEST(Fourier, CoefficientsAreInnerProductsWithBasis) {
  // <e_lambda, F> = f_lambda / scale(e_lambda)
  std::mt19937_64 rng(25);
  const TracePoly f = random_trace_poly(rng, 4);
  const auto coeffs = fourier_coefficients(f, 2, 4);
  for (const auto& lambda : enumerate_partitions(4, 2)) {
    const ScaledTrace e = e_lambda(lambda, 2);
    const RadicalScalar ip = invariant_inner(e, ScaledTrace{RadicalScalar(), f}, 2);
    const GaussianRational expected = coeffs.count(lambda) != 0 ? coeffs.at(lambda) : GaussianRational(0);
    EXPECT_EQ(ip, e.scale.inverse() * expected) << lambda.to_string();
  }
}

TEST(Fourier, Reconstruction) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const TracePoly f = random_trace_poly(rng, 5);
    for (std::size_t n = 1; n <= 3; ++n) {
      EXPECT_TRUE(fourier_reconstruction_holds(f, fourier_coefficients(f, n, 5), n));
    }
  }
}
