// Copyright 2026 The hanpivot Authors
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

#ifndef HANPIVOT_ERRORS_HPP_
#define HANPIVOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hanpivot {

// Every failure surfaced by the library maps to one of these kinds; the
// CLI turns the kind into a process exit code (see exit_code()).
enum class ErrorKind {
  io,
  parse,            // lexicon / table / particle file defects
  corpus,           // LineCountMismatch, InsufficientPairs
  metric,           // EmptyConversion, LengthMismatch, EmptyCorpus, bad edges
  adapter_mismatch, // child produced the wrong number of lines
  adapter_timeout,
  adapter_exit,     // child exited nonzero
  usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::usage: return 2;
      case ErrorKind::io: return 3;
      case ErrorKind::parse: return 4;
      case ErrorKind::corpus: return 5;
      case ErrorKind::metric: return 6;
      case ErrorKind::adapter_mismatch: return 7;
      case ErrorKind::adapter_timeout: return 8;
      case ErrorKind::adapter_exit: return 9;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Dictionary / table file defect; message starts with the rule name
/// (MalformedRow, InvalidSurface, LengthMismatch, DuplicateSenseId, ...)
/// and carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& rule, std::size_t line, const std::string& detail)
      : Error(ErrorKind::parse,
              rule + " at line " + std::to_string(line) + ": " + detail),
        rule_(rule),
        line_(line) {}
  const std::string& rule() const { return rule_; }
  std::size_t line() const { return line_; }

 private:
  std::string rule_;
  std::size_t line_;
};

struct CorpusError : Error {
  explicit CorpusError(const std::string& what) : Error(ErrorKind::corpus, what) {}
};

struct MetricError : Error {
  explicit MetricError(const std::string& what) : Error(ErrorKind::metric, what) {}
};

struct AdapterError : Error {
  AdapterError(ErrorKind kind, const std::string& what) : Error(kind, what) {}
};

}  // namespace hanpivot

#endif  // HANPIVOT_ERRORS_HPP_
