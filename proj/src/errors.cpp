#include "qvac/errors.hpp"

namespace qvac {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i != 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += '"' + expected[i] + '"';
  }
  return out;
}

}  // namespace

UnknownUnit::UnknownUnit(std::string symbol, std::size_t position)
    : Error("unknown unit '" + symbol + "' at position " + std::to_string(position)),
      symbol_(std::move(symbol)),
      position_(position) {}

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected)
    : Error("syntax error at position " + std::to_string(position) + ": expected " +
            join_expected(expected)),
      position_(position),
      expected_(std::move(expected)) {}

MalformedLine::MalformedLine(std::size_t line, const std::string& what)
    : Error("malformed line " + std::to_string(line) + ": " + what), line_(line) {}

MalformedRow::MalformedRow(std::size_t line, const std::string& what)
    : Error("malformed row at line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace qvac
