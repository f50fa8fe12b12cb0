#pragma once

// Command-line front end: argument parsing, literal parsers and the JSON
// report for each subcommand.  Everything runs in-process so the tests can
// drive it without spawning the binary.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hciz/hciz.hpp"

namespace hciz::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

// ---------------------------------------------------------------------------
// literals

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string(what) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

// `a`, `bi`, `a+bi`, `a-bi`; exponent signs (1e-3) are not split points.
inline Complex parse_complex(std::string_view tok) {
  if (tok.empty()) throw ParseError("complex literal: empty");
  if (tok.back() != 'i') return {parse_double(tok, "complex literal"), 0.0};
  const std::string_view body = tok.substr(0, tok.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "complex literal");
  };
  if (split == std::string_view::npos) return {0.0, imag(body)};
  return {parse_double(body.substr(0, split), "complex literal"), imag(body.substr(split))};
}

inline std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(parse_complex(text.substr(pos, comma == text.npos ? text.npos : comma - pos)));
    if (comma == text.npos) break;
    pos = comma + 1;
  }
  return out;
}

// Trace polynomial literals such as `3/2*t1^2*t3 + t2 - 2` or `(t1 + i)^2`.
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (('*'|'/') power)*      division only by constants
//   power  := atom ['^' integer]
//   atom   := number ['i'] | 'i' | 't' integer | '(' expr ')'
// Numbers are integers or decimals and are kept exact.
class TraceParser {
 public:
  explicit TraceParser(std::string_view text) : s_(text) {}

  TracePoly parse() {
    TracePoly out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("trace polynomial: " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::uint32_t integer() {
    skip();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    std::string frac;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::size_t f = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac = std::string(s_.substr(f, pos_ - f));
    }
    if (digits.empty() && frac.empty()) fail("expected a number");
    Rational v(BigInt((digits.empty() ? "0" : digits) + frac, 10), BigInt("1" + std::string(frac.size(), '0'), 10));
    v.canonicalize();
    return v;
  }
  TracePoly expr() {
    TracePoly out;
    bool negative = false;
    skip();
    if (accept('-')) negative = true;
    else accept('+');
    TracePoly t = term();
    out = negative ? TracePoly() - t : t;
    for (;;) {
      if (accept('+')) out += term();
      else if (accept('-')) out -= term();
      else return out;
    }
  }
  TracePoly term() {
    TracePoly out = power();
    for (;;) {
      if (accept('*')) {
        out *= power();
      } else if (accept('/')) {
        const TracePoly d = power();
        if (d.weighted_degree() > 0) fail("division by a non-constant");
        const GaussianRational c = d.poly().value_at_zero();
        if (c.is_zero()) fail("division by zero");
        out *= GaussianRational(1) / c;
      } else {
        return out;
      }
    }
  }
  TracePoly power() {
    TracePoly base = atom();
    if (!accept('^')) return base;
    const std::uint32_t e = integer();
    if (e > 64) fail("exponent too large");
    TracePoly out = TracePoly::constant(1);
    for (std::uint32_t k = 0; k < e; ++k) out *= base;
    return out;
  }
  TracePoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TracePoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'i') {
      ++pos_;
      return TracePoly::constant(GaussianRational::i());
    }
    if (c == 't') {
      ++pos_;
      const std::uint32_t k = integer();
      if (k == 0 || k > 64) fail("generator index must be in 1..64");
      return TracePoly::generator(k);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      GaussianRational v(number());
      // `2i` is an imaginary literal
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        v *= GaussianRational::i();
      }
      return TracePoly::constant(v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

inline TracePoly parse_trace_poly(std::string_view text) { return TraceParser(text).parse(); }

// ---------------------------------------------------------------------------
// JSON helpers

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json estimate_json(const MCEstimate& e) {
  return Json{{"mean", complex_json(e.mean)},
              {"std_error", e.std_error},
              {"std_error_re", e.std_error_re},
              {"std_error_im", e.std_error_im},
              {"n_samples", e.n_samples},
              {"seed", e.seed}};
}

inline Json spectrum_json(const Spectrum& s) {
  Json out = Json::array();
  for (const auto& z : s.eigs()) out.push_back(complex_json(z));
  return out;
}

struct Options {
  std::string command;
  // shared
  std::optional<std::size_t> n;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint32_t> max_weight;
  unsigned threads = 1;
  bool quiet = false;
  std::string output;
  // eval
  std::string a, b;
  std::string methods = "det,mc,series";
  double tolerance = 1e-8;
  // verify
  std::string suite;
  std::optional<std::uint32_t> max_degree;
  // schur
  std::string lambda;
  std::string eigs;
  bool exact = false;
  bool power_sums = false;
  // fourier
  std::string f;
};

struct Outcome {
  int exit_code = kExitOk;
  Json report;
  std::string summary;
};

inline Json report_header(const Options& o, Json inputs) {
  Json r;
  r["schema"] = 1;
  r["command"] = o.command;
  r["version"] = kVersion;
  r["rng"] = kRngName;
  r["inputs"] = std::move(inputs);
  return r;
}

inline Outcome domain_failure(Json report, const std::string& type, const std::string& message) {
  report["error"] = Json{{"type", type}, {"message", message}};
  report["passed"] = false;
  return {kExitDomain, std::move(report), "error: " + message + "\n"};
}

// ---------------------------------------------------------------------------
// eval

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline Spectrum resolve_spectrum(const std::string& text, const Options& o, std::uint64_t stream) {
  if (text == "r") {
    if (!o.n) throw ParseError("random spectrum 'r' needs --n");
    // uniform on [-1, 1] with all gaps >= 0.1
    Rng rng = substream(o.seed, stream);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
      std::vector<double> v(*o.n);
      for (auto& x : v) x = u(rng);
      if (Spectrum::real(v).gap() >= 0.1) return Spectrum::real(v);
    }
  }
  Spectrum s(parse_complex_list(text));
  if (o.n && s.size() != *o.n) {
    throw ParseError("spectrum '" + text + "' has " + std::to_string(s.size()) + " entries, --n is " +
                     std::to_string(*o.n));
  }
  return s;
}

inline Outcome cmd_eval(const Options& o) {
  Json inputs{{"n", o.n ? Json(*o.n) : Json()}, {"a", o.a},           {"b", o.b},
              {"methods", o.methods},         {"seed", o.seed},       {"samples", o.samples.value_or(100000)},
              {"max_weight", o.max_weight.value_or(24)}, {"tolerance", o.tolerance}};
  Json report = report_header(o, inputs);
  const Spectrum a = resolve_spectrum(o.a, o, 0xA);
  const Spectrum b = resolve_spectrum(o.b, o, 0xB);
  if (a.size() != b.size()) throw ParseError("spectra have different lengths");
  report["spectra"] = Json{{"a", spectrum_json(a)}, {"b", spectrum_json(b)}, {"gap_a", a.gap()}, {"gap_b", b.gap()}};

  bool want_det = false, want_mc = false, want_series = false;
  for (const auto& m : split_csv(o.methods)) {
    if (m == "det") want_det = true;
    else if (m == "mc") want_mc = true;
    else if (m == "series") want_series = true;
    else throw ParseError("unknown method '" + m + "'");
  }
  if (!want_det && !want_mc && !want_series) throw ParseError("no methods selected");

  Json results = Json::object();
  std::ostringstream summary;
  std::optional<Complex> det;
  std::optional<MCEstimate> mc;
  std::optional<Complex> series;

  if (want_det) {
    try {
      det = hciz_determinant(a, b);
      results["det"] = Json{{"value", complex_json(*det)}};
      summary << "det    " << det->real() << " " << std::showpos << det->imag() << std::noshowpos << "i\n";
    } catch (const DegenerateSpectrumError& e) {
      if (!want_mc && !want_series) {
        Json err = report;
        err["results"] = Json{{"det", Json{{"error", e.what()}, {"gap", e.gap()}}}};
        return domain_failure(std::move(err), "degenerate_spectrum", e.what());
      }
      results["det"] = Json{{"error", e.what()}, {"gap", e.gap()}};
      summary << "det    unavailable (degenerate spectrum)\n";
    }
  }
  if (want_mc) {
    mc = hciz_mc(a, b, o.samples.value_or(100000), o.seed, o.threads);
    results["mc"] = estimate_json(*mc);
    summary << "mc     " << mc->mean.real() << " " << std::showpos << mc->mean.imag() << std::noshowpos
            << "i +- " << mc->std_error << "\n";
  }
  if (want_series) {
    // the kernel conjugates its second argument
    const SeriesResult r = kernel_series_adaptive(a, b.conj(), o.tolerance, o.max_weight.value_or(24));
    series = r.value;
    results["series"] = Json{{"value", complex_json(r.value)},
                             {"max_weight_used", r.max_weight_used},
                             {"last_shell_magnitude", r.last_shell_magnitude}};
    summary << "series " << r.value.real() << " " << std::showpos << r.value.imag() << std::noshowpos
            << "i (weight " << r.max_weight_used << ")\n";
  }
  report["results"] = results;

  Json checks = Json::array();
  bool all = true;
  auto add_check = [&](const std::string& name, Complex x, Complex y, double bound, const std::string& rule) {
    const double delta = std::abs(x - y);
    const bool pass = delta <= bound;
    all = all && pass;
    checks.push_back(Json{{"pair", name}, {"delta", delta}, {"bound", bound}, {"rule", rule}, {"pass", pass}});
    summary << name << ": |delta| = " << delta << " <= " << bound << " " << (pass ? "PASS" : "FAIL") << "\n";
  };
  if (det && mc) add_check("det-mc", *det, mc->mean, 4.0 * mc->std_error, "4 sigma");
  if (series && mc) add_check("series-mc", *series, mc->mean, 4.0 * mc->std_error, "4 sigma");
  if (det && series) add_check("det-series", *det, *series, o.tolerance, "absolute tolerance");
  report["checks"] = checks;
  report["passed"] = all;
  return {all ? kExitOk : kExitFailed, std::move(report), summary.str()};
}

// ---------------------------------------------------------------------------
// verify

struct SuiteTally {
  Json cases = Json::array();
  std::size_t total = 0;
  std::size_t failed = 0;
  void add(Json c, bool pass) {
    c["pass"] = pass;
    cases.push_back(std::move(c));
    ++total;
    if (!pass) ++failed;
  }
};

inline TracePoly random_trace_poly(Rng& rng, std::uint32_t max_weight) {
  std::vector<Partition> monomials;
  for (const auto& rho : enumerate_partitions(max_weight, max_weight == 0 ? 1 : max_weight)) monomials.push_back(rho);
  std::uniform_int_distribution<std::size_t> pick(0, monomials.size() - 1);
  std::uniform_int_distribution<int> terms(1, 4);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  TracePoly out;
  const int k = terms(rng);
  for (int t = 0; t < k; ++t) {
    const GaussianRational c(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
    out += TracePoly::product(monomials[pick(rng)].parts(), c);
  }
  return out;
}

inline std::vector<TracePoly> monomials_up_to(std::uint32_t max_weight, std::uint32_t max_generator) {
  std::vector<TracePoly> out;
  for (const auto& rho : enumerate_partitions(max_weight, max_weight == 0 ? 1 : max_weight)) {
    if (!rho.empty() && rho[0] > max_generator) continue;
    out.push_back(TracePoly::product(rho.parts()));
  }
  return out;
}

inline std::string trace_label(const TracePoly& f) { return f.to_string(); }

inline SuiteTally suite_alt_orthonormal(std::size_t n, std::uint32_t w) {
  SuiteTally t;
  const auto parts = enumerate_partitions(w, n);
  std::vector<ScaledPoly> d;
  for (const auto& l : parts) d.push_back(d_lambda(l, n));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const RadicalScalar v = scaled_inner(d[i], d[j]);
      const bool pass = v == RadicalScalar(GaussianRational(i == j ? 1 : 0));
      t.add(Json{{"lambda", parts[i].to_string()}, {"mu", parts[j].to_string()}, {"value", v.to_string()}}, pass);
    }
  }
  return t;
}

inline SuiteTally suite_inv_orthonormal(std::size_t n, std::uint32_t w) {
  SuiteTally t;
  const auto parts = enumerate_partitions(w, n);
  std::vector<ScaledTrace> e;
  for (const auto& l : parts) e.push_back(e_lambda(l, n));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const RadicalScalar v = invariant_inner(e[i], e[j], n);
      const bool pass = v == RadicalScalar(GaussianRational(i == j ? 1 : 0));
      t.add(Json{{"lambda", parts[i].to_string()}, {"mu", parts[j].to_string()}, {"value", v.to_string()}}, pass);
    }
  }
  return t;
}

inline SuiteTally suite_unitarity(std::size_t n, std::uint32_t max_degree) {
  SuiteTally t;
  const auto mons = monomials_up_to(max_degree, max_degree == 0 ? 1 : max_degree);
  for (const auto& f : mons) {
    for (const auto& g : mons) {
      const auto c = verify_unitarity(f, g, n);
      t.add(Json{{"f", trace_label(f)}, {"g", trace_label(g)}, {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}},
            c.holds);
    }
  }
  return t;
}

inline SuiteTally suite_diffop(std::size_t n, std::uint32_t max_degree) {
  SuiteTally t;
  const auto mons = monomials_up_to(max_degree, 3);
  for (const auto& f : mons) {
    for (const auto& g : mons) {
      const auto c = verify_diffop_identity(f, g, n);
      t.add(Json{{"f", trace_label(f)}, {"g", trace_label(g)}, {"terms", c.lhs.size()}}, c.holds);
    }
  }
  return t;
}

inline SuiteTally suite_fourier(std::size_t n, std::uint32_t w, std::uint64_t count, std::uint64_t seed) {
  SuiteTally t;
  Rng rng = substream(seed, 0xF0);
  for (std::uint64_t k = 0; k < count; ++k) {
    const TracePoly f = random_trace_poly(rng, w);
    const auto coeffs = fourier_coefficients(f, n, w);
    Json cj = Json::object();
    for (const auto& [l, c] : coeffs) cj[l.to_string()] = c.to_string();
    t.add(Json{{"f", trace_label(f)}, {"coefficients", cj}}, fourier_reconstruction_holds(f, coeffs, n));
  }
  return t;
}

inline SuiteTally suite_ginibre(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  SuiteTally t;
  const auto r = ginibre_moment_suite(n, samples, seed, threads);
  t.add(Json{{"moment", "E|Tr z|^2"}, {"expected", r.trace.expected}, {"estimate", estimate_json(r.trace.estimate)}},
        r.trace.within_4_sigma);
  t.add(Json{{"moment", "E|det z|^2"},
             {"expected", r.determinant.expected},
             {"estimate", estimate_json(r.determinant.estimate)}},
        r.determinant.within_4_sigma);
  // the same moments as exact invariant inner products
  const TracePoly t1 = TracePoly::generator(1);
  const GaussianRational tr = invariant_inner(t1, t1, n);
  t.add(Json{{"moment", "<t1, t1>"}, {"exact", tr.to_string()}}, tr == GaussianRational(static_cast<long>(n)));
  const TracePoly det = chi_lambda(Partition(std::vector<std::uint32_t>(n, 1)));
  const GaussianRational dd = invariant_inner(det, det, n);
  t.add(Json{{"moment", "<det, det>"}, {"exact", dd.to_string()}}, dd == GaussianRational(Rational(factorial(n))));
  return t;
}

inline SuiteTally suite_reproducing(std::size_t n, std::uint32_t w, std::uint64_t seed) {
  SuiteTally t;
  Rng rng = substream(seed, 0xE0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<std::uint32_t> deg(0, w);
  std::uniform_int_distribution<VarId> var(0, static_cast<VarId>(n - 1));
  for (int k = 0; k < 10; ++k) {
    ExactPoly p(n);
    for (int term = 0; term < 4; ++term) {
      std::vector<MultiIndex::Entry> pairs;
      const std::uint32_t d = deg(rng);
      for (std::uint32_t e = 0; e < d; ++e) pairs.emplace_back(var(rng), 1);
      p.add_term(MultiIndex::from_pairs(pairs), GaussianRational(make_rational(num(rng), 1), make_rational(num(rng), 1)));
    }
    const AltPoly f(alternating_projection(p));
    std::vector<Complex> pts(n);
    for (auto& z : pts) z = {u(rng), u(rng)};
    const Spectrum a(pts);
    const double residual = coherent_reproducing_check(a, f, w);
    const double scale = 1.0 + std::abs(f.poly().eval_complex(a.eigs()));
    t.add(Json{{"point", spectrum_json(a)}, {"terms", f.poly().size()}, {"residual", residual}},
          residual <= 1e-10 * scale);
  }
  return t;
}

inline Outcome cmd_verify(const Options& o) {
  const std::size_t n = o.n.value_or(o.suite == "ginibre" || o.suite == "fourier" ? 3 : 2);
  if (n == 0) throw ParseError("--n must be positive");
  Json inputs{{"suite", o.suite}, {"n", n}, {"seed", o.seed}};
  SuiteTally tally;
  if (o.suite == "alt-orthonormal") {
    inputs["max_weight"] = o.max_weight.value_or(6);
    tally = suite_alt_orthonormal(n, o.max_weight.value_or(6));
  } else if (o.suite == "inv-orthonormal") {
    inputs["max_weight"] = o.max_weight.value_or(4);
    tally = suite_inv_orthonormal(n, o.max_weight.value_or(4));
  } else if (o.suite == "unitarity") {
    inputs["max_degree"] = o.max_degree.value_or(4);
    tally = suite_unitarity(n, o.max_degree.value_or(4));
  } else if (o.suite == "diffop") {
    inputs["max_degree"] = o.max_degree.value_or(4);
    tally = suite_diffop(n, o.max_degree.value_or(4));
  } else if (o.suite == "fourier") {
    inputs["max_weight"] = o.max_weight.value_or(5);
    inputs["samples"] = o.samples.value_or(50);
    tally = suite_fourier(n, o.max_weight.value_or(5), o.samples.value_or(50), o.seed);
  } else if (o.suite == "ginibre") {
    if (n > 6) throw ParseError("ginibre suite supports n <= 6");
    inputs["samples"] = o.samples.value_or(100000);
    tally = suite_ginibre(n, o.samples.value_or(100000), o.seed, o.threads);
  } else if (o.suite == "reproducing") {
    inputs["max_weight"] = o.max_weight.value_or(8);
    tally = suite_reproducing(n, o.max_weight.value_or(8), o.seed);
  } else {
    throw ParseError("unknown suite '" + o.suite + "'");
  }
  Json report = report_header(o, inputs);
  report["cases"] = tally.cases;
  report["total"] = tally.total;
  report["failed"] = tally.failed;
  report["passed"] = tally.failed == 0;
  std::ostringstream summary;
  summary << o.suite << ": " << (tally.total - tally.failed) << "/" << tally.total << " cases pass\n";
  return {tally.failed == 0 ? kExitOk : kExitFailed, std::move(report), summary.str()};
}

// ---------------------------------------------------------------------------
// schur

inline Outcome cmd_schur(const Options& o) {
  const Partition lambda = Partition::parse(o.lambda);
  Json inputs{{"lambda", o.lambda}};
  if (o.n) inputs["n"] = *o.n;
  if (!o.eigs.empty()) inputs["eigs"] = o.eigs;
  inputs["exact"] = o.exact;
  inputs["power_sums"] = o.power_sums;
  Json report = report_header(o, inputs);
  Json results = Json::object();
  std::ostringstream summary;

  if (!o.eigs.empty()) {
    const auto eigs = parse_complex_list(o.eigs);
    if (o.n && *o.n != eigs.size()) throw ParseError("--eigs length differs from --n");
    if (lambda.length() > eigs.size()) {
      return domain_failure(std::move(report), "too_many_parts", "partition has more parts than eigenvalues");
    }
    const Complex v = schur_numeric(lambda, eigs);
    results["numeric"] = complex_json(v);
    summary << "s_" << lambda.to_string() << " = " << v.real() << " " << std::showpos << v.imag()
            << std::noshowpos << "i\n";
  }
  if (o.exact) {
    if (!o.n) throw ParseError("--exact needs --n");
    if (lambda.length() > *o.n) {
      return domain_failure(std::move(report), "too_many_parts", "partition has more parts than variables");
    }
    const ExactPoly s = schur_exact(lambda, *o.n);
    results["exact"] = Json{{"n_vars", *o.n}, {"terms", s.serialize_terms()}};
    summary << s.to_string();
  }
  if (o.power_sums) {
    const PowerSumPoly p = schur_to_power_sums(lambda);
    results["power_sums"] = Json{{"terms", p.serialize_terms()}, {"text", p.to_string()}};
    summary << "s_" << lambda.to_string() << " = " << p.to_string() << "\n";
  }
  if (results.empty()) throw ParseError("schur needs --eigs, --exact or --power-sums");
  report["results"] = results;
  report["passed"] = true;
  return {kExitOk, std::move(report), summary.str()};
}

// ---------------------------------------------------------------------------
// fourier

inline Outcome cmd_fourier(const Options& o) {
  const TracePoly f = parse_trace_poly(o.f);
  const std::size_t n = o.n.value_or(2);
  if (n == 0) throw ParseError("--n must be positive");
  const long deg = f.weighted_degree();
  const std::uint32_t w = o.max_weight.value_or(static_cast<std::uint32_t>(std::max(deg, 0L)));
  Json inputs{{"f", o.f}, {"n", n}, {"max_weight", w}};
  Json report = report_header(o, inputs);
  if (deg > static_cast<long>(w)) {
    return domain_failure(std::move(report), "weight_too_small", "weighted degree of F exceeds --max-weight");
  }
  const auto coeffs = fourier_coefficients(f, n, w);
  Json cj = Json::object();
  std::ostringstream summary;
  for (const auto& [l, c] : coeffs) {
    cj[l.to_string()] = c.to_string();
    summary << "f_(" << l.to_string() << ") = " << c.to_string() << "\n";
  }
  const bool ok = fourier_reconstruction_holds(f, coeffs, n);
  report["results"] = Json{{"parsed", f.to_string()}, {"coefficients", cj}, {"reconstruction_holds", ok}};
  report["passed"] = ok;
  summary << "reconstruction " << (ok ? "PASS" : "FAIL") << "\n";
  return {ok ? kExitOk : kExitFailed, std::move(report), summary.str()};
}

// ---------------------------------------------------------------------------
// driver

inline Outcome dispatch(const Options& o) {
  if (o.command == "eval") return cmd_eval(o);
  if (o.command == "verify") return cmd_verify(o);
  if (o.command == "schur") return cmd_schur(o);
  if (o.command == "fourier") return cmd_fourier(o);
  throw ParseError("unknown command '" + o.command + "'");
}

// Parses argv, runs the command and writes the report.  The JSON report goes
// to --output when given, otherwise to `out`; the human summary goes to `err`
// unless --quiet.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.threads = default_thread_count();
  CLI::App app{"HCIZ integral evaluator and identity checker", "hciz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Write the JSON report to this file");
    sub->add_flag("--quiet", o.quiet, "Suppress the human-readable summary");
    sub->add_option("--threads", o.threads, "Worker threads (default: HCIZ_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "RNG seed");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the integral by several methods");
  eval->add_option("--n", o.n, "Matrix dimension");
  eval->add_option("--a", o.a, "Spectrum of A: comma separated a+bi literals, or r for random")->required();
  eval->add_option("--b", o.b, "Spectrum of B")->required();
  eval->add_option("--methods", o.methods, "Subset of det,mc,series");
  eval->add_option("--samples", o.samples, "Monte Carlo samples");
  eval->add_option("--max-weight", o.max_weight, "Series weight cap");
  eval->add_option("--tolerance", o.tolerance, "Series tolerance and det-series bound");
  common(eval);

  CLI::App* verify = app.add_subcommand("verify", "Run an exact or statistical identity suite");
  verify->add_option("suite", o.suite,
                     "alt-orthonormal | inv-orthonormal | unitarity | diffop | fourier | ginibre | reproducing")
      ->required();
  verify->add_option("--n", o.n, "Matrix dimension");
  verify->add_option("--max-weight", o.max_weight, "Largest partition weight");
  verify->add_option("--max-degree", o.max_degree, "Largest weighted degree of trace monomials");
  verify->add_option("--samples", o.samples, "Monte Carlo samples, or polynomial count for fourier");
  common(verify);

  CLI::App* schur = app.add_subcommand("schur", "Schur polynomial values and expansions");
  schur->add_option("--lambda", o.lambda, "Partition, e.g. 2,1")->required();
  schur->add_option("--eigs", o.eigs, "Evaluate at these points");
  schur->add_option("--n", o.n, "Number of variables for --exact");
  schur->add_flag("--exact", o.exact, "Exact monomial expansion");
  schur->add_flag("--power-sums", o.power_sums, "Expansion in power sums");
  common(schur);

  CLI::App* fourier = app.add_subcommand("fourier", "Character expansion of a trace polynomial");
  fourier->add_option("--f", o.f, "Trace polynomial, e.g. 3/2*t1^2*t3 + t2 - 2")->required();
  fourier->add_option("--n", o.n, "Matrix dimension");
  fourier->add_option("--max-weight", o.max_weight, "Largest partition weight");
  common(fourier);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) o.command = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  try {
    result = dispatch(o);
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.report["timing"] = Json{{"wall_seconds", seconds}};

  const std::string text = result.report.dump(2) + "\n";
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) {
      err << "cannot write " << o.output << "\n";
      return kExitUsage;
    }
    file << text;
  } else {
    out << text;
  }
  if (!o.quiet) err << result.summary;
  return result.exit_code;
}

}  // namespace hciz::cli
