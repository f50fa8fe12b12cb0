#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "hciz/symmetric.hpp"
#include "test_support.hpp"

using namespace hciz;

namespace {

ExactPoly x(std::size_t n, VarId v) { return ExactPoly::variable(n, v); }

// Brute force: every vector in [0, max_weight]^max_parts, kept when weakly
// decreasing and within the weight bound.
std::set<std::vector<std::uint32_t>> brute_force_partitions(std::uint32_t max_weight, std::size_t max_parts) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(max_parts, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == max_parts) {
      std::uint32_t w = 0;
      for (auto p : v) w += p;
      if (w <= max_weight && std::is_sorted(v.begin(), v.end(), std::greater<>())) {
        auto trimmed = v;
        while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
        out.insert(trimmed);
      }
      return;
    }
    for (std::uint32_t p = 0; p <= max_weight; ++p) {
      v[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Number of semistandard Young tableaux of shape lambda with entries in 1..n.
long count_ssyt(const Partition& lambda, std::uint32_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < lambda.length(); ++r) {
    for (std::size_t c = 0; c < lambda[r]; ++c) cells.emplace_back(r, c);
  }
  std::vector<std::vector<std::uint32_t>> t(lambda.length(), std::vector<std::uint32_t>(lambda.empty() ? 0 : lambda[0], 0));
  std::function<long(std::size_t)> rec = [&](std::size_t k) -> long {
    if (k == cells.size()) return 1;
    const auto [r, c] = cells[k];
    long total = 0;
    for (std::uint32_t v = 1; v <= n; ++v) {
      if (c > 0 && t[r][c - 1] > v) continue;   // rows weakly increase
      if (r > 0 && t[r - 1][c] >= v) continue;  // columns strictly increase
      t[r][c] = v;
      total += rec(k + 1);
    }
    return total;
  };
  return rec(0);
}

// Frobenius: chi^lambda(rho) is the coefficient of x^{lambda+delta} in
// a_delta * p_rho, with n = max(len(lambda), 1) variables.
long frobenius_character(const Partition& lambda, const Partition& rho) {
  const std::size_t n = std::max<std::size_t>(lambda.length(), 1);
  ExactPoly prod = alternant_delta(n);
  for (auto k : rho.parts()) prod *= power_sum_in(n, k);
  const GaussianRational c = prod.coefficient(MultiIndex::from_dense(shifted_exponents(lambda, n)));
  return c.re().get_num().get_si();
}

std::vector<std::complex<double>> as_point(std::initializer_list<double> v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Partitions, EmptyWeight) {
  const auto parts = enumerate_partitions(0, 4);
  ASSERT_EQ(parts.size(), 1U);
  EXPECT_TRUE(parts[0].empty());
}

TEST(Partitions, SmallEnumerationOrder) {
  const auto parts = enumerate_partitions(3, 2);
  const std::vector<Partition> expected{Partition{}, Partition{1}, Partition{2}, Partition{1, 1}, Partition{3},
                                        Partition{2, 1}};
  EXPECT_EQ(parts, expected);
}

TEST(Partitions, MatchesBruteForce) {
  for (std::uint32_t w = 0; w <= 7; ++w) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto fast = enumerate_partitions(w, k);
      std::set<std::vector<std::uint32_t>> got;
      for (const auto& p : fast) got.insert(p.parts());
      EXPECT_EQ(got.size(), fast.size()) << "duplicates at " << w << "," << k;
      EXPECT_EQ(got, brute_force_partitions(w, k));
      EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
    }
  }
  EXPECT_EQ(partitions_of_weight(6, 6).size(), 11U);
}

TEST(Partitions, Serialization) {
  EXPECT_EQ(Partition({2, 1}).to_string(), "2,1");
  EXPECT_EQ(Partition{}.to_string(), "0");
  EXPECT_EQ(Partition::parse("0"), Partition{});
  EXPECT_EQ(Partition::parse("3,1,1"), Partition({3, 1, 1}));
  EXPECT_THROW((void)Partition::parse("1,2"), ParseError);
  EXPECT_THROW((void)Partition::parse("a"), ParseError);
  EXPECT_THROW((void)Partition::parse(""), ParseError);
  EXPECT_EQ(Partition({3, 1}).conjugate(), Partition({2, 1, 1}));
}

TEST(Alternant, TwoVariableCases) {
  EXPECT_EQ(alternant_delta(2), x(2, 0) - x(2, 1));
  EXPECT_EQ(alternant({2, 0}, 2), x(2, 0).pow(2) - x(2, 1).pow(2));
  EXPECT_THROW((void)alternant({1, 1}, 2), DegenerateExponentError);
}

TEST(Alternant, SwapAntisymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> part(0, 4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint32_t> lam{part(rng), part(rng), part(rng)};
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const ExactPoly a = alternant(shifted_exponents(Partition(lam), 3), 3);
    const std::vector<VarId> swap01{1, 0, 2};
    const std::vector<VarId> swap12{0, 2, 1};
    EXPECT_EQ(a.relabeled(swap01, 3), -a);
    EXPECT_EQ(a.relabeled(swap12, 3), -a);
    EXPECT_TRUE(is_alternating(a));
  }
}

TEST(Vandermonde, ProductConvention) {
  EXPECT_EQ(vandermonde(1), ExactPoly::constant(1, 1));
  EXPECT_EQ(vandermonde(2), x(2, 1) - x(2, 0));
  const ExactPoly v3 = vandermonde(3);
  EXPECT_EQ(v3.size(), 6U);
  EXPECT_EQ(v3.degree(), 3);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(vandermonde(n), alternant_delta(n) * GaussianRational(vandermonde_sign(n)));
    EXPECT_EQ(vandermonde(n).degree(), static_cast<long>(n * (n - 1) / 2));
  }
}

TEST(Vandermonde, DiffOperatorSelfPairingIsSuperfactorial) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactPoly d = vandermonde(n);
    EXPECT_EQ(apply_diff_operator(d, d).value_at_zero(), GaussianRational(Rational(superfactorial(n))));
  }
}

TEST(AlternatingProjection, StaircaseMonomial) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactPoly zd = ExactPoly::monomial(n, MultiIndex::from_dense(staircase(n)));
    EXPECT_EQ(alternating_projection(zd), alternant_delta(n) * GaussianRational(make_rational(1, factorial(n))));
  }
}

TEST(AlternatingProjection, KillsSymmetricAndIsIdempotent) {
  const ExactPoly sym = x(2, 0) * x(2, 1) + x(2, 0) + x(2, 1);
  EXPECT_TRUE(alternating_projection(sym).is_zero());
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const ExactPoly f = hciz::testing::random_poly(rng, 3, 5, 6);
    const ExactPoly pf = alternating_projection(f);
    EXPECT_EQ(alternating_projection(pf), pf);
    EXPECT_TRUE(is_alternating(pf));
  }
}

TEST(AlternatingProjection, AlternantIsNFactorialProjection) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& lambda : enumerate_partitions(4, n)) {
      const auto mu = shifted_exponents(lambda, n);
      EXPECT_EQ(alternant(mu, n), alternating_projection(ExactPoly::monomial(n, MultiIndex::from_dense(mu))) *
                                      GaussianRational(Rational(factorial(n))));
    }
  }
}

TEST(Schur, ExactSmallCases) {
  EXPECT_EQ(schur_exact(Partition{1}, 2), x(2, 0) + x(2, 1));
  EXPECT_EQ(schur_exact(Partition({2, 1}), 2), x(2, 0).pow(2) * x(2, 1) + x(2, 0) * x(2, 1).pow(2));
  EXPECT_THROW((void)schur_exact(Partition({1, 1, 1}), 2), DimensionError);
}

TEST(Schur, BialternantProductIdentity) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& lambda : enumerate_partitions(6, n)) {
      const ExactPoly s = schur_exact(lambda, n);
      EXPECT_TRUE(is_symmetric(s));
      EXPECT_EQ(s * alternant_delta(n), alternant(shifted_exponents(lambda, n), n));
    }
  }
}

TEST(Schur, PrincipalSpecializationCountsTableaux) {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (const auto& lambda : enumerate_partitions(4, n)) {
      const std::vector<std::complex<double>> ones(n, 1.0);
      const double value = schur_exact(lambda, n).eval_complex(ones).real();
      EXPECT_DOUBLE_EQ(value, static_cast<double>(count_ssyt(lambda, n))) << lambda.to_string() << " n=" << n;
    }
  }
}

TEST(Schur, NumericMatchesExact) {
  EXPECT_NEAR(std::abs(schur_numeric(Partition{1}, as_point({2, 3})) - 5.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(schur_numeric(Partition({2, 1}), as_point({1, 1})) - 2.0), 0.0, 1e-13);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::complex<double>> pt(n);
    for (auto& p : pt) p = {u(rng), u(rng)};
    for (const auto& lambda : enumerate_partitions(6, n)) {
      const auto exact = schur_exact(lambda, n).eval_complex(pt);
      EXPECT_NEAR(std::abs(schur_numeric(lambda, pt) - exact), 0.0, 1e-11 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST(Schur, NumericStableAtCoincidentPoints) {
  const double a = 0.37;
  for (const auto& lambda : enumerate_partitions(6, 2)) {
    const ExactPoly s = schur_exact(lambda, 2);
    // limit along (a, a + eps) of the exact polynomial; eps small enough
    // that the first-order drift stays far below the tolerance
    const auto limit = s.eval_complex(as_point({a, a + 1e-13}));
    EXPECT_NEAR(std::abs(schur_numeric(lambda, as_point({a, a})) - limit), 0.0, 1e-10);
  }
  const std::vector<std::complex<double>> triple(3, {0.2, -0.4});
  for (const auto& lambda : enumerate_partitions(5, 3)) {
    EXPECT_NEAR(std::abs(schur_numeric(lambda, triple) - schur_exact(lambda, 3).eval_complex(triple)), 0.0, 1e-12);
  }
}

TEST(MurnaghanNakayama, LowDegreeExpansions) {
  EXPECT_EQ(schur_to_power_sums(Partition{1}), PowerSumPoly::generator(1));
  const GaussianRational half(make_rational(1, 2));
  const PowerSumPoly p1 = PowerSumPoly::generator(1);
  const PowerSumPoly p2 = PowerSumPoly::generator(2);
  EXPECT_EQ(schur_to_power_sums(Partition{2}), (p1 * p1 + p2) * half);
  EXPECT_EQ(schur_to_power_sums(Partition({1, 1})), (p1 * p1 - p2) * half);
  EXPECT_EQ(schur_to_power_sums(Partition{}), PowerSumPoly::constant(1));
}

TEST(MurnaghanNakayama, MatchesFrobeniusFormula) {
  for (std::uint32_t w = 1; w <= 6; ++w) {
    for (const auto& lambda : partitions_of_weight(w, w)) {
      for (const auto& rho : partitions_of_weight(w, w)) {
        EXPECT_EQ(mn_character(lambda, rho), frobenius_character(lambda, rho))
            << lambda.to_string() << " at " << rho.to_string();
      }
    }
  }
}

TEST(MurnaghanNakayama, ColumnOrthogonality) {
  // sum_lambda chi^lambda(rho)^2 = z_rho
  for (std::uint32_t w = 1; w <= 8; ++w) {
    for (const auto& rho : partitions_of_weight(w, w)) {
      BigInt sum = 0;
      for (const auto& lambda : partitions_of_weight(w, w)) {
        const long chi = mn_character(lambda, rho);
        sum += chi * chi;
      }
      EXPECT_EQ(sum, centralizer_order(rho));
    }
  }
}

TEST(MurnaghanNakayama, SubstitutionRecoversSchur) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& lambda : enumerate_partitions(5, n)) {
      EXPECT_EQ(evaluate_power_sums(schur_to_power_sums(lambda), n), schur_exact(lambda, n))
          << lambda.to_string() << " n=" << n;
    }
  }
  // Shapes with more parts than variables vanish.
  EXPECT_TRUE(evaluate_power_sums(schur_to_power_sums(Partition({1, 1, 1})), 2).is_zero());
}

TEST(Basis, AlternatingBasisSmallCases) {
  const auto d1 = d_lambda(Partition{1}, 2);
  EXPECT_EQ(scaled_inner(d1, d1), RadicalScalar(GaussianRational(1)));
  EXPECT_TRUE(scaled_inner(d_lambda(Partition{2}, 2), d_lambda(Partition({1, 1}), 2)).is_zero());
}

TEST(Basis, AlternatingBasisOrthonormal) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto parts = enumerate_partitions(6, n);
    for (const auto& l : parts) {
      const auto dl = d_lambda(l, n);
      for (const auto& m : parts) {
        const RadicalScalar ip = scaled_inner(dl, d_lambda(m, n));
        EXPECT_EQ(ip, RadicalScalar(GaussianRational(l == m ? 1 : 0))) << l.to_string() << " vs " << m.to_string();
      }
    }
  }
}

TEST(Basis, NormalizationConstant) {
  EXPECT_EQ(norm_const_c(1).norm2(), 1);
  EXPECT_EQ(norm_const_c(2).norm2(), make_rational(1, 2));
  EXPECT_EQ(norm_const_c(3).norm2(), make_rational(1, 12));
  for (std::size_t n = 1; n <= 6; ++n) {
    // (1/c^2)/n! is the determinant-formula prefactor prod_{p<n} p!
    EXPECT_EQ(Rational(1 / norm_const_c(n).norm2() / Rational(factorial(n))), Rational(hciz_prefactor(n)));
    // <a_delta, a_delta> = 1/c^2
    EXPECT_EQ(bargmann_inner(alternant_delta(n), alternant_delta(n)), GaussianRational(1 / norm_const_c(n).norm2()));
  }
  EXPECT_EQ(hciz_prefactor(3), 2);
}
