#pragma once

#include <stdexcept>
#include <string>

namespace bivar {

// Refusal errors: the engines never silently approximate or truncate work.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_invertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct no_convergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unknown_name : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace bivar
