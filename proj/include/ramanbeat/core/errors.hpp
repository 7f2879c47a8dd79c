#pragma once

#include <stdexcept>

namespace ramanbeat {

// Precondition violations that are specific to the simulation domain. Plain
// argument errors use std::invalid_argument / std::domain_error directly.

class WindowingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CombOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ramanbeat
