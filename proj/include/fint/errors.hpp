#pragma once

#include <stdexcept>
#include <string>

namespace fint {

// Base for every error raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- expression / parsing ---

struct SyntaxError : Error {
  // offset: byte offset into the expression text; line: 1-based problem-file
  // line, 0 when not applicable.
  std::size_t offset = 0;
  int line = 0;
  SyntaxError(const std::string& msg, std::size_t off, int ln = 0)
      : Error(msg), offset(off), line(ln) {}
};

struct UnknownVariable : Error {
  std::string name;
  explicit UnknownVariable(const std::string& n)
      : Error("unknown variable: " + n), name(n) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct MissingField : Error {
  explicit MissingField(const std::string& key)
      : Error("missing required field: " + key) {}
};

struct ValidationError : Error {
  using Error::Error;
};

// --- evaluation / sampling ---

struct DomainError : Error {
  using Error::Error;
};

struct InsufficientSamples : Error {
  using Error::Error;
};

// --- solver / theorem pipeline ---

struct NoSolution : Error {
  using Error::Error;
};

struct UnresolvedRank : Error {
  using Error::Error;
};

struct ZeroFactor : Error {
  using Error::Error;
};

struct HypothesisViolated : Error {
  using Error::Error;
};

// --- low-dimensional constructions ---

struct RankDeficient : Error {
  using Error::Error;
};

struct DivergenceFree : Error {
  using Error::Error;
};

struct PathThroughSingularity : Error {
  using Error::Error;
};

struct ImmediateDomainError : Error {
  using Error::Error;
};

// --- catalog ---

struct UnrepresentableExponent : Error {
  using Error::Error;
};

}  // namespace fint
