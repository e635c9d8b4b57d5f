#pragma once

#include <stdexcept>
#include <string>

namespace gfd {

/// Mismatched vector/operator sizes or qubit counts.
class SizeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-supplied value is outside its documented range.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The request exceeds a documented dense/brute-force cap.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition (e.g. Hermiticity) was violated.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace gfd
