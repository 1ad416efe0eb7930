#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

// Process exit codes, one per error class. Documented in README.md.
enum class ExitCode : int {
  Ok = 0,
  Usage = 1,
  Parse = 2,
  InvalidMesh = 3,
  Degeneracy = 4,
  CapExceeded = 5,
  NotEquivalent = 6,
  Inconsistent = 7,
  NoConnector = 8,
  Io = 9,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ExitCode exit_code() const { return ExitCode::Usage; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::Io; }
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("parse error at line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }
  ExitCode exit_code() const override { return ExitCode::Parse; }

 private:
  std::size_t line_;
};

class InvalidMesh : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::InvalidMesh; }
};

class UnknownSimplex : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::InvalidMesh; }
};

class InvalidHandle : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::Inconsistent; }
};

// Any violation of the genericity assumption. Remedy: perturb with another
// seed or strength.
class Degeneracy : public Error {
 public:
  explicit Degeneracy(const std::string& what)
      : Error(what + " (input is not generic; rerun with --perturb <strength> or a different --seed)") {}
  ExitCode exit_code() const override { return ExitCode::Degeneracy; }
};

class DegenerateOrientation : public Degeneracy {
 public:
  using Degeneracy::Degeneracy;
};

class OverlapDegeneracy : public Degeneracy {
 public:
  using Degeneracy::Degeneracy;
};

class TripleIntersectionDegeneracy : public Degeneracy {
 public:
  using Degeneracy::Degeneracy;
};

class CoincidentVertexDegeneracy : public Degeneracy {
 public:
  using Degeneracy::Degeneracy;
};

class NoConnectorFound : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::NoConnector; }
};

// Internal consistency failure of the traversal; always a bug or a broken
// genericity assumption that slipped through.
class InconsistentState : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::Inconsistent; }
};

class LoopClosureViolation : public InconsistentState {
 public:
  using InconsistentState::InconsistentState;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::CapExceeded; }
};

// Raised when a computation runs past its deadline.
class Cancelled : public Error {
 public:
  using Error::Error;
};

}  // namespace reeb
