#pragma once

#include <stdexcept>
#include <string>

namespace infolab {

// Bad input data or configuration. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not be carried out on otherwise valid input
// (degenerate spectra, singular factorizations). CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infolab
