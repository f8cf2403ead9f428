#pragma once

#include <stdexcept>
#include <string>

namespace divkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent input data (missing fields, degenerate samples).
class InputError : public Error {
 public:
  using Error::Error;
};

// A file that does not follow its declared format. Messages carry the
// line or byte offset of the first problem.
class FormatError : public InputError {
 public:
  using InputError::InputError;
};

// Zero rank variance in one of the two sequences handed to a rank correlation.
class UndefinedCorrelation : public InputError {
 public:
  using InputError::InputError;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// The numbers themselves went wrong, e.g. a kernel matrix that is not PSD.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace divkit
