#pragma once

#include <stdexcept>
#include <string>

namespace tropconn {

/// Malformed or inconsistent caller input (shape mismatch, bad document, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was asked to do something its preconditions forbid, or an
/// internal consistency check failed.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A bounded search (translate sampling, basis search, repair rounds) ran out
/// of attempts.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A slice of a connected complex came out disconnected through codimension 1.
class DisconnectedSlice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropconn
