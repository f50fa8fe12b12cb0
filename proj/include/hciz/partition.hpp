#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hciz/errors.hpp"

namespace hciz {

// Weakly decreasing tuple of nonnegative integers with implicit trailing
// zeros.  Only the positive parts are stored.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<std::uint32_t> parts) : Partition(std::vector<std::uint32_t>(parts)) {}
  explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
    if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>())) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  const std::vector<std::uint32_t>& parts() const noexcept { return parts_; }
  std::uint32_t weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0U); }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  std::uint32_t operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  // Parts padded with zeros to n entries; requires length() <= n.
  std::vector<std::uint32_t> padded(std::size_t n) const {
    if (parts_.size() > n) throw DimensionError("Partition: more parts than dimension");
    std::vector<std::uint32_t> out(parts_);
    out.resize(n, 0);
    return out;
  }

  // Conjugate (transpose) partition.
  Partition conjugate() const {
    std::vector<std::uint32_t> out(parts_.empty() ? 0 : parts_.front(), 0);
    for (auto p : parts_) {
      for (std::uint32_t j = 0; j < p; ++j) ++out[j];
    }
    return Partition(std::move(out));
  }

  // `2,1`; the empty partition is `0`.
  std::string to_string() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (auto p : parts_) {
      if (!s.empty()) s += ',';
      s += std::to_string(p);
    }
    return s;
  }

  static Partition parse(std::string_view text) {
    std::vector<std::uint32_t> parts;
    std::size_t pos = 0;
    if (text.empty()) throw ParseError("partition: empty string");
    while (pos <= text.size()) {
      const std::size_t comma = text.find(',', pos);
      const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("partition: bad part '" + std::string(tok) + "'");
      }
      parts.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>())) {
      throw ParseError("partition: parts must be weakly decreasing");
    }
    return Partition(std::move(parts));
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() <=> b.weight();
    // lexicographically larger first within a weight
    return b.parts_ <=> a.parts_;
  }

 private:
  std::vector<std::uint32_t> parts_;
};

namespace detail {
inline void partitions_of(std::uint32_t remaining, std::uint32_t max_part, std::size_t max_parts,
                          std::vector<std::uint32_t>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (prefix.size() == max_parts) return;
  for (std::uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_of(remaining - p, p, max_parts, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

// Partitions of exactly `weight` with at most `max_parts` parts, lexicographically descending.
inline std::vector<Partition> partitions_of_weight(std::uint32_t weight, std::size_t max_parts) {
  std::vector<Partition> out;
  std::vector<std::uint32_t> prefix;
  detail::partitions_of(weight, weight, max_parts, prefix, out);
  return out;
}

// All partitions with |lambda| <= max_weight and at most max_parts parts,
// ordered by weight then lexicographically descending.
inline std::vector<Partition> enumerate_partitions(std::uint32_t max_weight, std::size_t max_parts) {
  if (max_parts == 0) throw std::invalid_argument("enumerate_partitions: max_parts must be >= 1");
  std::vector<Partition> out;
  for (std::uint32_t w = 0; w <= max_weight; ++w) {
    auto shell = partitions_of_weight(w, max_parts);
    out.insert(out.end(), shell.begin(), shell.end());
  }
  return out;
}

}  // namespace hciz
