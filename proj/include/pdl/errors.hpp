#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateElementError : public Error {
 public:
  using Error::Error;
};

class UnknownElementError : public Error {
 public:
  using Error::Error;
};

class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : Error(what + " (requested " + std::to_string(requested) + ", cap " + std::to_string(cap) + ")"),
        requested_(requested),
        cap_(cap) {}
  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::uint64_t budget)
      : Error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotALatticeError : public Error {
 public:
  using Error::Error;
};

class NotDistributiveError : public Error {
 public:
  using Error::Error;
};

class PseudocomplementError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed input files.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdl
