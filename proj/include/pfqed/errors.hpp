#pragma once

#include <stdexcept>
#include <string>

namespace pfqed {

// Malformed or out-of-domain input. The CLI maps this to exit status 3.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A desk-scale dimension guard was tripped. The CLI maps this to exit status 4.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace pfqed
