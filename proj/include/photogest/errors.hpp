#pragma once

#include <stdexcept>
#include <string>

namespace photogest {

/// Input violates a documented precondition (bad length, negative value, ...).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation is mathematically undefined for the given inputs.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Argument outside an allowed interval (e.g. time beyond gesture duration).
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Geometry the occlusion model does not cover (hand narrower than the cell).
struct UnsupportedConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input carries no information for the requested transform (zero variance).
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be read, written or parsed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace photogest
