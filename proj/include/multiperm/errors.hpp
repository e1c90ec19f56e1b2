#ifndef MULTIPERM_ERRORS_HPP
#define MULTIPERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multiperm {

// Malformed text, mismatched dimensions, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : InvalidArgument("dimension mismatch: " + std::to_string(lhs) +
                        " vs " + std::to_string(rhs)) {}
};

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An input exceeds a configured computational bound.  `flag` names the
// command-line option that lifts the bound.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what, std::string flag)
      : std::length_error(what), flag_(std::move(flag)) {}

  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

// A mathematical statement that the library relies on turned out false for
// a concrete input.  Never thrown for engineering failures.
class InvariantFalsified : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_same_dim(std::size_t lhs, std::size_t rhs) {
  if (lhs != rhs) {
    throw DimensionMismatch(lhs, rhs);
  }
}

inline void require_cap(std::size_t value, std::size_t cap,
                        const std::string& what, const std::string& flag) {
  if (value > cap) {
    throw CapExceeded(what + " " + std::to_string(value) +
                          " exceeds the bound " + std::to_string(cap),
                      flag);
  }
}

}  // namespace multiperm

#endif  // MULTIPERM_ERRORS_HPP
