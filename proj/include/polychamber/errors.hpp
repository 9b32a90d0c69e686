#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polychamber {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The length vector lies on the wall H_J.
class NongenericError : public Error {
 public:
  NongenericError(std::uint64_t wall_bits, int m, const std::string& what)
      : Error(what), wall_bits_(wall_bits), m_(m) {}
  std::uint64_t wall_bits() const noexcept { return wall_bits_; }
  int m() const noexcept { return m_; }

 private:
  std::uint64_t wall_bits_;
  int m_;
};

class UnsortedError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyChamber : public Error {
 public:
  using Error::Error;
};

class UnknownDescription : public Error {
 public:
  using Error::Error;
};

}  // namespace polychamber
