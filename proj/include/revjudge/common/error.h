// Copyright 2026 The revjudge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVJUDGE_COMMON_ERROR_H_
#define REVJUDGE_COMMON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revjudge {

// Root of every error raised by the library. Callers that only need to
// report a failure can catch this; the subclasses exist so tests and the
// service layer can map specific failures to specific responses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed record that violates the record schema (e.g. wrong label count).
class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Record rejected by an ingestion invariant (e.g. s1 == s2).
class RejectedRecordError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnsupportedStructureError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UndefinedKappaError : public Error {
 public:
  using Error::Error;
};

// Not enough eligible items to satisfy a sampling request.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t eligible)
      : Error(what), eligible_(eligible) {}
  std::size_t eligible() const { return eligible_; }

 private:
  std::size_t eligible_;
};

// Missing resource file, version/fingerprint mismatch and the like.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class DegenerateTrainingError : public Error {
 public:
  using Error::Error;
};

class CannotOversampleError : public Error {
 public:
  using Error::Error;
};

// Experiment protocol violation: mismatched fold plans, id collisions,
// train/test leakage.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace revjudge

#endif  // REVJUDGE_COMMON_ERROR_H_
