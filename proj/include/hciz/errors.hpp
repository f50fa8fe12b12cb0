#pragma once

#include <stdexcept>
#include <string>

namespace hciz {

// Operand shapes disagree (variable counts, spectrum lengths, matrix sizes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An alternant was requested with a repeated exponent.
class DegenerateExponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Spectral gap below the determinant evaluator's tolerance.  The character
// series evaluator is the supported fallback for coincident eigenvalues.
class DegenerateSpectrumError : public std::domain_error {
 public:
  DegenerateSpectrumError(const std::string& what, double gap)
      : std::domain_error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

// An exact division that must be remainder-free was not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A polynomial is not in the image of the restriction map.
class NotInImageError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A polynomial failed its symmetric/alternating tag check.
class TagError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed textual input (partitions, spectra, trace-polynomial literals).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hciz
