#pragma once

// Polynomials in graded generators g_1, g_2, ... (power sums p_k or matrix
// traces t_k = Tr(z^k)), where generator g_k has weight k.  Generator g_k is
// stored as variable k-1 of an ExactPoly whose variable count grows on
// demand, so equality only looks at the terms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hciz/exact_poly.hpp"

namespace hciz {

template <class Tag>
class GeneratorPoly {
 public:
  GeneratorPoly() : poly_(1) {}
  explicit GeneratorPoly(ExactPoly poly) : poly_(std::move(poly)) {}

  static GeneratorPoly constant(const GaussianRational& c) { return GeneratorPoly(ExactPoly::constant(1, c)); }
  static GeneratorPoly generator(std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("generator index starts at 1");
    return GeneratorPoly(ExactPoly::variable(k, k - 1));
  }
  // prod_k g_k^{m_k} for a multiset of generator indices, e.g. the parts of a partition.
  static GeneratorPoly product(const std::vector<std::uint32_t>& indices, const GaussianRational& c = 1) {
    std::vector<MultiIndex::Entry> pairs;
    std::uint32_t top = 1;
    for (auto k : indices) {
      if (k == 0) throw std::invalid_argument("generator index starts at 1");
      pairs.emplace_back(k - 1, 1);
      top = std::max(top, k);
    }
    return GeneratorPoly(ExactPoly::monomial(top, MultiIndex::from_pairs(pairs), c));
  }

  const ExactPoly& poly() const noexcept { return poly_; }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  std::size_t max_generator() const noexcept { return poly_.n_vars(); }

  // Weighted degree with deg(g_k) = k; -1 for zero.
  static long weighted_degree_of(const MultiIndex& m) {
    long d = 0;
    for (const auto& [v, e] : m.entries()) d += static_cast<long>(v + 1) * e;
    return d;
  }
  long weighted_degree() const {
    long d = -1;
    for (const auto& [m, c] : poly_.terms()) d = std::max(d, weighted_degree_of(m));
    return d;
  }

  GeneratorPoly& operator+=(const GeneratorPoly& o) {
    align(o);
    poly_ += o.poly_.widened(poly_.n_vars());
    return *this;
  }
  GeneratorPoly& operator-=(const GeneratorPoly& o) {
    align(o);
    poly_ -= o.poly_.widened(poly_.n_vars());
    return *this;
  }
  GeneratorPoly& operator*=(const GeneratorPoly& o) {
    align(o);
    poly_ = poly_ * o.poly_.widened(poly_.n_vars());
    return *this;
  }
  GeneratorPoly& operator*=(const GaussianRational& s) {
    poly_ *= s;
    return *this;
  }
  friend GeneratorPoly operator+(GeneratorPoly a, const GeneratorPoly& b) { return a += b; }
  friend GeneratorPoly operator-(GeneratorPoly a, const GeneratorPoly& b) { return a -= b; }
  friend GeneratorPoly operator*(GeneratorPoly a, const GeneratorPoly& b) { return a *= b; }
  friend GeneratorPoly operator*(GeneratorPoly a, const GaussianRational& s) { return a *= s; }
  friend GeneratorPoly operator*(const GaussianRational& s, GeneratorPoly a) { return a *= s; }

  friend bool operator==(const GeneratorPoly& a, const GeneratorPoly& b) { return a.poly_.terms() == b.poly_.terms(); }
  friend bool operator!=(const GeneratorPoly& a, const GeneratorPoly& b) { return !(a == b); }

  // Replace each generator g_k by image(k); all images live in one ExactPoly space.
  ExactPoly substitute(const std::function<ExactPoly(std::uint32_t)>& image) const {
    std::vector<ExactPoly> images;
    images.reserve(poly_.n_vars());
    for (std::uint32_t k = 1; k <= poly_.n_vars(); ++k) images.push_back(image(k));
    return poly_.substitute(images);
  }

  // Relabel generators into another family (e.g. p_k -> t_k).
  template <class OtherTag>
  GeneratorPoly<OtherTag> retagged() const {
    return GeneratorPoly<OtherTag>(poly_);
  }

  // Terms like `(3/2, 0) t1^2 t3`, in descending graded-lex order of the
  // generator exponents.
  std::vector<std::string> serialize_terms() const {
    std::vector<std::string> out;
    for (const auto& [m, c] : poly_.terms()) {
      std::string s = "(" + c.re().get_str() + ", " + c.im().get_str() + ")";
      if (!m.empty()) {
        for (const auto& [v, e] : m.entries()) {
          s += " " + std::string(Tag::prefix) + std::to_string(v + 1);
          if (e != 1) s += "^" + std::to_string(e);
        }
      }
      out.push_back(std::move(s));
    }
    return out;
  }

  std::string to_string() const {
    if (poly_.is_zero()) return "0";
    std::string s;
    for (const auto& t : serialize_terms()) {
      if (!s.empty()) s += " + ";
      s += t;
    }
    return s;
  }

 private:
  void align(const GeneratorPoly& o) {
    if (o.poly_.n_vars() > poly_.n_vars()) poly_ = poly_.widened(o.poly_.n_vars());
  }

  ExactPoly poly_;
};

struct PowerSumTag {
  static constexpr const char* prefix = "p";
};
struct TraceTag {
  static constexpr const char* prefix = "t";
};

// Polynomial in power sums p_k = x_1^k + ... + x_n^k.
using PowerSumPoly = GeneratorPoly<PowerSumTag>;
// Conjugation-invariant polynomial on matrices in the traces t_k = Tr(z^k).
using TracePoly = GeneratorPoly<TraceTag>;

}  // namespace hciz
