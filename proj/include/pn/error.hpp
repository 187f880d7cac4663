#pragma once

#include <stdexcept>
#include <string>

namespace pn {

/// Base class for every error this library throws on violated preconditions.
/// Mathematical failures (a check that comes out false) are never exceptions;
/// they are verdicts with witnesses.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two values over different coordinate charts were combined.
struct ChartMismatchError : Error {
  using Error::Error;
};

/// Coordinate or component index outside the chart dimension.
struct IndexError : Error {
  using Error::Error;
};

/// Expression or spec-file text that does not conform to the grammar.
/// `pos` is a 0-based byte offset into the parsed text.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos_) : Error(what), pos(pos_) {}
  std::size_t pos = 0;
};

/// Two groupoid elements fed to a multiplication map do not compose.
struct NonComposableError : Error {
  using Error::Error;
};

}  // namespace pn
