#pragma once

// Sparse multivariate polynomials over the Gaussian rationals.
//
// Terms are kept in a std::map ordered by descending graded-lex order
// (higher total degree first; within a degree, the larger exponent of the
// lowest-numbered variable first), so iteration and serialization are
// deterministic and begin() is the leading term for division.
//
// The inner product is the Segal-Bargmann one, <z^a, z^b> = delta_ab * a!,
// conjugate-linear in the first argument.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hciz/errors.hpp"
#include "hciz/rational.hpp"

namespace hciz {

using VarId = std::uint32_t;

class MultiIndex {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  MultiIndex() = default;

  // From (variable, exponent) pairs in any order; zero exponents dropped,
  // repeated variables accumulate.
  static MultiIndex from_pairs(std::vector<Entry> pairs) {
    std::sort(pairs.begin(), pairs.end());
    MultiIndex m;
    for (const auto& [v, e] : pairs) {
      if (e == 0) continue;
      if (!m.entries_.empty() && m.entries_.back().first == v) {
        m.entries_.back().second += e;
      } else {
        m.entries_.emplace_back(v, e);
      }
    }
    return m;
  }

  static MultiIndex from_dense(std::span<const std::uint32_t> exps) {
    MultiIndex m;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] != 0) m.entries_.emplace_back(static_cast<VarId>(v), exps[v]);
    }
    return m;
  }
  static MultiIndex from_dense(std::initializer_list<std::uint32_t> exps) {
    return from_dense(std::span<const std::uint32_t>(exps.begin(), exps.size()));
  }

  static MultiIndex unit(VarId v, std::uint32_t e = 1) {
    MultiIndex m;
    if (e != 0) m.entries_.emplace_back(v, e);
    return m;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  std::uint32_t exponent(VarId v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != entries_.end() && it->first == v) ? it->second : 0;
  }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& e : entries_) d += e.second;
    return d;
  }

  // Highest variable id + 1, or 0 for the constant monomial.
  VarId span_vars() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

  std::vector<std::uint32_t> dense(std::size_t n_vars) const {
    std::vector<std::uint32_t> out(n_vars, 0);
    for (const auto& [v, e] : entries_) out.at(v) = e;
    return out;
  }

  // alpha! = prod_i alpha_i!
  BigInt factorial() const {
    BigInt f = 1;
    for (const auto& e : entries_) f *= hciz::factorial(e.second);
    return f;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    out.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
      if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
        out.entries_.push_back(*i++);
      } else if (i == a.entries_.end() || j->first < i->first) {
        out.entries_.push_back(*j++);
      } else {
        out.entries_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  // this >= other componentwise
  bool dominates(const MultiIndex& other) const {
    for (const auto& [v, e] : other.entries_) {
      if (exponent(v) < e) return false;
    }
    return true;
  }

  // Componentwise difference; requires dominates(other).
  MultiIndex minus(const MultiIndex& other) const {
    MultiIndex out;
    for (const auto& [v, e] : entries_) {
      const std::uint32_t r = e - other.exponent(v);
      if (r != 0) out.entries_.emplace_back(v, r);
    }
    return out;
  }

  // Relabel variables: variable v becomes map[v].
  MultiIndex relabeled(std::span<const VarId> map) const {
    std::vector<Entry> pairs;
    pairs.reserve(entries_.size());
    for (const auto& [v, e] : entries_) pairs.emplace_back(map[v], e);
    return from_pairs(std::move(pairs));
  }

  // `v0^2 v3^1`; the constant monomial prints as `1`.
  std::string to_string(const std::string& prefix = "v", bool omit_unit_exponent = false) const {
    if (entries_.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : entries_) {
      if (!s.empty()) s += ' ';
      s += prefix + std::to_string(v);
      if (!(omit_unit_exponent && e == 1)) s += "^" + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  // Lexicographic comparison of the dense exponent vectors.
  static int lex_compare(const MultiIndex& a, const MultiIndex& b) {
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() && j != b.entries_.end()) {
      if (i->first != j->first) return i->first < j->first ? 1 : -1;
      if (i->second != j->second) return i->second > j->second ? 1 : -1;
      ++i;
      ++j;
    }
    if (i != a.entries_.end()) return 1;
    if (j != b.entries_.end()) return -1;
    return 0;
  }

 private:
  std::vector<Entry> entries_;
};

// Strict "a comes before b": descending graded-lex.
struct GradedLexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da > db;
    return MultiIndex::lex_compare(a, b) > 0;
  }
};

class ExactPoly {
 public:
  using TermMap = std::map<MultiIndex, GaussianRational, GradedLexDescending>;

  explicit ExactPoly(std::size_t n_vars = 1) : n_vars_(n_vars) {
    if (n_vars_ == 0) throw DimensionError("ExactPoly: n_vars must be positive");
  }

  static ExactPoly constant(std::size_t n_vars, const GaussianRational& c) {
    ExactPoly p(n_vars);
    p.add_term(MultiIndex{}, c);
    return p;
  }
  static ExactPoly variable(std::size_t n_vars, VarId v) {
    return monomial(n_vars, MultiIndex::unit(v), GaussianRational(1));
  }
  static ExactPoly monomial(std::size_t n_vars, const MultiIndex& m, const GaussianRational& c = 1) {
    ExactPoly p(n_vars);
    p.add_term(m, c);
    return p;
  }
  static ExactPoly from_terms(std::size_t n_vars, const std::vector<std::pair<MultiIndex, GaussianRational>>& terms) {
    ExactPoly p(n_vars);
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
  }

  std::size_t n_vars() const noexcept { return n_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  long degree() const {
    return terms_.empty() ? -1 : static_cast<long>(terms_.begin()->first.degree());
  }

  // Accumulates c * z^m, pruning a cancelled term.
  void add_term(const MultiIndex& m, const GaussianRational& c) {
    if (m.span_vars() > n_vars_) throw DimensionError("ExactPoly: monomial uses variable beyond n_vars");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GaussianRational coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
  }

  const std::pair<const MultiIndex, GaussianRational>& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
    return *terms_.begin();
  }

  // Same polynomial viewed in more variables.
  ExactPoly widened(std::size_t n_vars) const {
    if (n_vars < n_vars_) throw DimensionError("widened: cannot shrink variable count");
    ExactPoly p(n_vars);
    p.terms_ = terms_;
    return p;
  }

  ExactPoly& operator+=(const ExactPoly& o) {
    check_same(o, "add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ExactPoly& operator-=(const ExactPoly& o) {
    check_same(o, "sub");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ExactPoly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(ExactPoly a, const GaussianRational& s) { return a *= s; }
  friend ExactPoly operator*(const GaussianRational& s, ExactPoly a) { return a *= s; }
  ExactPoly operator-() const { return *this * GaussianRational(-1); }

  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    a.check_same(b, "mul");
    ExactPoly out(a.n_vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        out.add_term(ma + mb, ca * cb);
      }
    }
    return out;
  }
  ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

  ExactPoly pow(unsigned k) const {
    ExactPoly out = constant(n_vars_, 1);
    ExactPoly base = *this;
    while (k != 0) {
      if ((k & 1U) != 0) out *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return out;
  }

  friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const ExactPoly& a, const ExactPoly& b) { return !(a == b); }

  // F* : every coefficient conjugated.
  ExactPoly conj_coeffs() const {
    ExactPoly out(n_vars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c.conj());
    return out;
  }

  ExactPoly diff(VarId var) const {
    if (var >= n_vars_) throw DimensionError("diff: variable out of range");
    ExactPoly out(n_vars_);
    for (const auto& [m, c] : terms_) {
      const std::uint32_t e = m.exponent(var);
      if (e == 0) continue;
      out.add_term(m.minus(MultiIndex::unit(var)), c * GaussianRational(static_cast<long>(e)));
    }
    return out;
  }

  // Relabel variables (variable v becomes map[v]) into a space of n_vars.
  ExactPoly relabeled(std::span<const VarId> map, std::size_t n_vars) const {
    if (map.size() < n_vars_) throw DimensionError("relabeled: map shorter than n_vars");
    ExactPoly out(n_vars);
    for (const auto& [m, c] : terms_) out.add_term(m.relabeled(map), c);
    return out;
  }

  // Substitute variable v by images[v]; all images share one variable count.
  ExactPoly substitute(std::span<const ExactPoly> images) const {
    if (images.size() != n_vars_) throw DimensionError("substitute: need one image per variable");
    const std::size_t target = images.front().n_vars();
    for (const auto& im : images) {
      if (im.n_vars() != target) throw DimensionError("substitute: images disagree on n_vars");
    }
    std::vector<std::vector<ExactPoly>> powers(n_vars_);
    auto power = [&](VarId v, std::uint32_t e) -> const ExactPoly& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      return cache[e];
    };
    ExactPoly out(target);
    for (const auto& [m, c] : terms_) {
      ExactPoly term = constant(target, c);
      for (const auto& [v, e] : m.entries()) term *= power(v, e);
      out += term;
    }
    return out;
  }

  // Constant term, i.e. the value at the origin.
  GaussianRational value_at_zero() const { return coefficient(MultiIndex{}); }

  // Coefficients rounded to doubles; direct term-by-term summation.
  std::complex<double> eval_complex(std::span<const std::complex<double>> point) const {
    if (point.size() != n_vars_) throw DimensionError("eval_complex: point length != n_vars");
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (const auto& [v, e] : m.entries()) {
        for (std::uint32_t k = 0; k < e; ++k) t *= point[v];
      }
      sum += t;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += '\n';
      s += c.to_pair_string() + " : " + m.to_string("v");
    }
    return s;
  }

  std::vector<std::string> serialize_terms() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(c.to_pair_string() + " : " + m.to_string("v"));
    return out;
  }

  void check_same(const ExactPoly& o, const char* op) const {
    if (n_vars_ != o.n_vars_) {
      throw DimensionError(std::string(op) + ": mismatched n_vars (" + std::to_string(n_vars_) + " vs " +
                           std::to_string(o.n_vars_) + ")");
    }
  }

 private:
  std::size_t n_vars_;
  TermMap terms_;
};

// F(d)G: each monomial z^a of F acts as the differential operator d^a.
inline ExactPoly apply_diff_operator(const ExactPoly& op, const ExactPoly& target) {
  op.check_same(target, "apply_diff_operator");
  ExactPoly out(target.n_vars());
  for (const auto& [a, fa] : op.terms()) {
    for (const auto& [b, gb] : target.terms()) {
      if (b.degree() < a.degree() || !b.dominates(a)) continue;
      const MultiIndex rest = b.minus(a);
      // d^a z^b = b!/(b-a)! z^(b-a)
      const Rational falling(b.factorial() / rest.factorial());
      out.add_term(rest, fa * gb * GaussianRational(falling));
    }
  }
  return out;
}

// <F, G> = sum_a conj(f_a) g_a a!
inline GaussianRational bargmann_inner(const ExactPoly& f, const ExactPoly& g) {
  f.check_same(g, "bargmann_inner");
  GaussianRational sum(0);
  const bool f_smaller = f.size() <= g.size();
  const ExactPoly& small = f_smaller ? f : g;
  const ExactPoly& large = f_smaller ? g : f;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    const GaussianRational& fc = f_smaller ? c : it->second;
    const GaussianRational& gc = f_smaller ? it->second : c;
    sum += fc.conj() * gc * GaussianRational(Rational(m.factorial()));
  }
  return sum;
}

struct DivisionResult {
  ExactPoly quotient;
  ExactPoly remainder;
};

// Multivariate division by a single divisor under the graded-lex order.
// For an exact divisor the remainder is zero.
inline DivisionResult divide(const ExactPoly& dividend, const ExactPoly& divisor) {
  dividend.check_same(divisor, "divide");
  if (divisor.is_zero()) throw std::domain_error("divide: zero divisor");
  const auto& [lead_m, lead_c] = divisor.leading_term();
  ExactPoly quotient(dividend.n_vars());
  ExactPoly remainder(dividend.n_vars());
  ExactPoly rest = dividend;
  while (!rest.is_zero()) {
    const auto [m, c] = rest.leading_term();
    if (m.dominates(lead_m)) {
      const MultiIndex qm = m.minus(lead_m);
      const GaussianRational qc = c / lead_c;
      quotient.add_term(qm, qc);
      rest -= ExactPoly::monomial(dividend.n_vars(), qm, qc) * divisor;
    } else {
      remainder.add_term(m, c);
      rest.add_term(m, -c);
    }
  }
  return {std::move(quotient), std::move(remainder)};
}

}  // namespace hciz
