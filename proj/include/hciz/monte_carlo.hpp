#pragma once

// Blocked Monte Carlo mean estimation with per-block substreams.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hciz/rng.hpp"

namespace hciz {

struct MCEstimate {
  std::complex<double> mean{0.0, 0.0};
  // Standard error of the complex mean: hypot of the componentwise errors.
  double std_error = 0.0;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Running sums for one block; merged in block order.
struct Moments {
  std::uint64_t count = 0;
  double mean_re = 0.0, mean_im = 0.0;
  double m2_re = 0.0, m2_im = 0.0;

  void push(std::complex<double> v) {
    ++count;
    const double dr = v.real() - mean_re;
    const double di = v.imag() - mean_im;
    mean_re += dr / static_cast<double>(count);
    mean_im += di / static_cast<double>(count);
    m2_re += dr * (v.real() - mean_re);
    m2_im += di * (v.imag() - mean_im);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double dr = o.mean_re - mean_re;
    const double di = o.mean_im - mean_im;
    const double w = static_cast<double>(count) * static_cast<double>(o.count) / total;
    mean_re += dr * static_cast<double>(o.count) / total;
    mean_im += di * static_cast<double>(o.count) / total;
    m2_re += o.m2_re + dr * dr * w;
    m2_im += o.m2_im + di * di * w;
    count += o.count;
  }

  MCEstimate finish(std::uint64_t seed) const {
    MCEstimate e;
    e.mean = {mean_re, mean_im};
    e.n_samples = count;
    e.seed = seed;
    if (count > 1) {
      const double n = static_cast<double>(count);
      e.std_error_re = std::sqrt(m2_re / (n - 1.0) / n);
      e.std_error_im = std::sqrt(m2_im / (n - 1.0) / n);
    }
    e.std_error = std::hypot(e.std_error_re, e.std_error_im);
    return e;
  }
};

}  // namespace detail

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

// Estimates K means at once.  make_sampler() builds one per-block sampler
// object; sampler(rng) returns std::array<std::complex<double>, K>.
// Deterministic for fixed (n_samples, seed) regardless of `threads`.
template <std::size_t K, class MakeSampler>
std::array<MCEstimate, K> monte_carlo(std::uint64_t n_samples, std::uint64_t seed, unsigned threads,
                                      MakeSampler make_sampler) {
  if (n_samples < 2) throw std::invalid_argument("monte_carlo: need at least 2 samples");
  const std::uint64_t blocks = (n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::array<detail::Moments, K>> per_block(blocks);

  auto run_block = [&](std::uint64_t b, auto& sampler) {
    Rng rng = substream(seed, b);
    const std::uint64_t begin = b * kMonteCarloBlock;
    const std::uint64_t end = std::min(n_samples, begin + kMonteCarloBlock);
    auto& acc = per_block[b];
    for (std::uint64_t s = begin; s < end; ++s) {
      const auto values = sampler(rng);
      for (std::size_t k = 0; k < K; ++k) acc[k].push(values[k]);
    }
  };

  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  if (threads <= 1) {
    auto sampler = make_sampler();
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b, sampler);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        auto sampler = make_sampler();
        for (std::uint64_t b = w; b < blocks; b += threads) run_block(b, sampler);
      });
    }
    for (auto& t : workers) t.join();
  }

  std::array<MCEstimate, K> out;
  for (std::size_t k = 0; k < K; ++k) {
    detail::Moments total;
    for (const auto& blk : per_block) total.merge(blk[k]);
    out[k] = total.finish(seed);
  }
  return out;
}

}  // namespace hciz
