// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CIENET_ERRORS_H_
#define CIENET_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cienet {

// Root of every error the library throws. The CLI maps IoError to exit
// code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input lives in the wrong domain (e.g. compressed vs. uncompressed
// spectrogram, mismatched sample rates).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A scalar argument is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A signal is too short for the requested operation.
class LengthError : public Error {
 public:
  using Error::Error;
};

// Hyperparameters are inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A quantity is mathematically undefined at the given input.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized data. `offset` is the byte position at which the
// problem was detected.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace cienet

#endif  // CIENET_ERRORS_H_
