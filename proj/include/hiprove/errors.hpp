#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace hiprove {

/// Base of every error raised by the library. `category()` is a short
/// machine-readable tag used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& detail)
      : std::runtime_error(detail), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

/// Syntax error at a byte offset of the parsed text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& detail, std::size_t offset)
      : Error("syntax", detail), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A kernel primitive was applied outside its precondition.
class RuleError : public Error {
 public:
  explicit RuleError(const std::string& detail) : Error("rule", detail) {}
};

/// A tactic did not apply to its goal.
class TacticFailure : public Error {
 public:
  explicit TacticFailure(const std::string& detail) : Error("tactic", detail) {}
};

/// The goal tree was asked to do something inconsistent with its contents.
class RecordingError : public Error {
 public:
  explicit RecordingError(const std::string& detail)
      : Error("recording", detail) {}
};

/// Misuse of the interactive session (nothing to undo, no pending goal, ...).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error("usage", detail) {}
};

/// A script finished with goals still open.
class IncompleteProof : public Error {
 public:
  IncompleteProof(const std::string& detail, std::size_t pending)
      : Error("incomplete", detail), pending_(pending) {}

  std::size_t pending() const noexcept { return pending_; }

 private:
  std::size_t pending_;
};

/// A script expression could not be turned into a tactic.
class InterpretError : public Error {
 public:
  InterpretError(std::string category, const std::string& detail)
      : Error(std::move(category), detail) {}
};

/// Replay of a flat script failed at a given step; `line` is 1-based when
/// the step came from source text.
class ScriptError : public Error {
 public:
  ScriptError(const std::string& detail, std::optional<std::size_t> line)
      : Error("script", detail), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

}  // namespace hiprove
