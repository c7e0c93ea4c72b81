#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// dimensions
class DimensionMismatch : public Error { using Error::Error; };
class DivideByZero : public Error { using Error::Error; };
class NonFinite : public Error { using Error::Error; };
class NegativeBase : public Error { using Error::Error; };
class KindMismatch : public Error { using Error::Error; };
class UnsupportedKind : public Error { using Error::Error; };

// unit_parser
class EmptyInput : public Error { using Error::Error; };

class UnknownUnit : public Error {
 public:
  UnknownUnit(std::string symbol, std::size_t position);
  const std::string& symbol() const noexcept { return symbol_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string symbol_;
  std::size_t position_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected);
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

// constants
class MissingConstant : public Error { using Error::Error; };
class UnitParseError : public Error { using Error::Error; };
class NonPositiveMass : public Error { using Error::Error; };

/// A data-file line that does not match the documented layout.
class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// vacuum_model
class FieldTooStrong : public Error { using Error::Error; };
class NotQuasiStatic : public Error { using Error::Error; };
class ConventionMismatch : public Error { using Error::Error; };
class InvalidParams : public Error { using Error::Error; };

// species
class DuplicateName : public Error { using Error::Error; };
class ZeroCharge : public Error { using Error::Error; };
class EmptyTable : public Error { using Error::Error; };

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qvac
