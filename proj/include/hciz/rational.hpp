#pragma once

// Exact scalars: Gaussian rationals and Gaussian rationals times the square
// root of a positive integer.  Backed by GMP through gmpxx.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hciz {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt factorial(unsigned long k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

// Rational `p/q` always with an explicit denominator.
inline std::string rational_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  // |z|^2 as an exact rational.
  Rational norm2() const { return Rational(re_ * re_ + im_ * im_); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const Rational d = o.norm2();
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // `(p/q, r/s)` with explicit denominators.
  std::string to_pair_string() const {
    return "(" + rational_fraction_string(re_) + ", " + rational_fraction_string(im_) + ")";
  }

  // `p/q`, `r/s i` or `p/q+r/s i`; integers print without a denominator.
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + " i";
    const std::string sign = sgn(im_) < 0 ? "-" : "+";
    return re_.get_str() + sign + Rational(abs(im_)).get_str() + " i";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

// coeff * sqrt(radicand) with radicand a positive integer.  Square factors
// of small primes are moved into the coefficient on construction.
class RadicalScalar {
 public:
  RadicalScalar() : coeff_(1), radicand_(1) {}
  RadicalScalar(GaussianRational coeff) : coeff_(std::move(coeff)), radicand_(1) {}  // NOLINT
  RadicalScalar(GaussianRational coeff, BigInt radicand) : coeff_(std::move(coeff)), radicand_(std::move(radicand)) {
    normalize();
  }

  // The positive square root of a nonnegative rational.
  static RadicalScalar sqrt_of(const Rational& r) {
    if (sgn(r) < 0) throw std::domain_error("sqrt_of: negative rational");
    if (sgn(r) == 0) return RadicalScalar(GaussianRational(0));
    // sqrt(p/q) = sqrt(p*q) / q
    return {GaussianRational(make_rational(1, r.get_den())), BigInt(r.get_num() * r.get_den())};
  }

  const GaussianRational& coeff() const noexcept { return coeff_; }
  const BigInt& radicand() const noexcept { return radicand_; }
  bool is_zero() const { return coeff_.is_zero(); }
  bool is_rational() const { return radicand_ == 1 || coeff_.is_zero(); }

  // Exact value when the radical has cancelled; throws otherwise.
  GaussianRational to_gaussian() const {
    if (!is_rational()) throw std::domain_error("RadicalScalar: irrational value " + to_string());
    return coeff_;
  }

  RadicalScalar conj() const { return {coeff_.conj(), radicand_}; }
  RadicalScalar inverse() const {
    // 1/(c sqrt m) = sqrt(m) / (c m)
    return {GaussianRational(1) / (coeff_ * GaussianRational(Rational(radicand_))), radicand_};
  }

  // |value|^2, always rational.
  Rational norm2() const { return Rational(coeff_.norm2() * radicand_); }

  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    return {a.coeff_ * b.coeff_, BigInt(a.radicand_ * b.radicand_)};
  }
  friend RadicalScalar operator*(const RadicalScalar& a, const GaussianRational& b) {
    return {a.coeff_ * b, a.radicand_};
  }

  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    if (a.coeff_.is_zero() || b.coeff_.is_zero()) return a.coeff_.is_zero() && b.coeff_.is_zero();
    // a == b  iff  b.coeff / a.coeff is a positive real whose square is m_a / m_b.
    const GaussianRational ratio = b.coeff_ / a.coeff_;
    if (!ratio.is_real() || sgn(ratio.re()) <= 0) return false;
    return Rational(ratio.re() * ratio.re() * b.radicand_) == Rational(a.radicand_);
  }
  friend bool operator!=(const RadicalScalar& a, const RadicalScalar& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return coeff_.to_complex() * std::sqrt(radicand_.get_d());
  }

  std::string to_string() const {
    if (radicand_ == 1) return coeff_.to_string();
    return "(" + coeff_.to_string() + ")*sqrt(" + radicand_.get_str() + ")";
  }

 private:
  void normalize() {
    if (sgn(radicand_) <= 0) throw std::domain_error("RadicalScalar: radicand must be positive");
    if (coeff_.is_zero()) {
      radicand_ = 1;
      return;
    }
    BigInt outside = 1;
    for (unsigned long p = 2; p < 1000 && radicand_ > 1; ++p) {
      const BigInt sq = p * p;
      while (mpz_divisible_p(radicand_.get_mpz_t(), sq.get_mpz_t()) != 0) {
        radicand_ /= sq;
        outside *= p;
      }
    }
    if (mpz_perfect_square_p(radicand_.get_mpz_t()) != 0) {
      BigInt root;
      mpz_sqrt(root.get_mpz_t(), radicand_.get_mpz_t());
      outside *= root;
      radicand_ = 1;
    }
    if (outside != 1) coeff_ *= GaussianRational(Rational(outside));
  }

  GaussianRational coeff_;
  BigInt radicand_;
};

}  // namespace hciz
