#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace houghton {

/// Input violates a documented invariant (bad file, bad ray index, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded (window or word-budget) computation could not decide.
/// This is never a disproof; `required_depth` is a hint when known (0 otherwise).
class Inconclusive : public std::runtime_error {
 public:
  explicit Inconclusive(const std::string& what, std::int64_t required_depth = 0)
      : std::runtime_error(what), required_depth_(required_depth) {}
  std::int64_t required_depth() const noexcept { return required_depth_; }

 private:
  std::int64_t required_depth_;
};

/// The operation is not defined for these parameters (e.g. level test for n = 2).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace houghton
