#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarsecat {

// Base of every error raised by the library. `kind()` is a stable machine
// readable tag used in serialized reports.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

class CarrierMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "CarrierMismatch"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

// A bounded point whose coarse class reaches outside the bounded region.
struct IncompatibilityWitness {
  std::vector<std::string> coarse_class;
  std::string bounded_point;
  std::string escaping_point;
};

class IncompatibleStructures : public Error {
 public:
  IncompatibleStructures(const std::string& what, IncompatibilityWitness w)
      : Error(what), witness_(std::move(w)) {}
  const char* kind() const noexcept override { return "IncompatibleStructures"; }
  const IncompatibilityWitness& witness() const noexcept { return witness_; }

 private:
  IncompatibilityWitness witness_;
};

class NonInvariantGenerator : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonInvariantGenerator"; }
};

class NotAnEntourage : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NotAnEntourage"; }
};

class NotAMorphism : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NotAMorphism"; }
};

class NonClassicalInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonClassicalInput"; }
};

class UnsupportedCombination : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "UnsupportedCombination"; }
};

class UnsupportedDiagram : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "UnsupportedDiagram"; }
};

// An enumeration or search would exceed a configured size bound.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap, std::string flag)
      : Error(what), cap_(cap), flag_(std::move(flag)) {}
  const char* kind() const noexcept override { return "CapExceeded"; }
  std::size_t cap() const noexcept { return cap_; }
  // Name of the command line flag that raises the cap.
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::size_t cap_;
  std::string flag_;
};

}  // namespace coarsecat
