// Copyright 2026 The qlll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qlll {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class MalformedProjector : public Error {
  public:
    using Error::Error;
};

/// Carries the 1-based line and the JSON path of the offending field.
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t line,
               std::string field)
        : Error(format(message, line, field)), line_(line),
          field_(std::move(field)) {}

    std::size_t line() const { return line_; }
    const std::string &field() const { return field_; }

  private:
    static std::string format(const std::string &message, std::size_t line,
                              const std::string &field) {
        std::string out = "parse error";
        if (line > 0) {
            out += " at line " + std::to_string(line);
        }
        if (!field.empty()) {
            out += " in field '" + field + "'";
        }
        return out + ": " + message;
    }

    std::size_t line_;
    std::string field_;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class InfeasibleLayout : public Error {
  public:
    using Error::Error;
};

/// Raised when k - log2(g e r) <= 0, i.e. the local lemma condition fails.
class ConditionViolated : public Error {
  public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
  public:
    using Error::Error;
};

class ZeroProbabilityBranch : public Error {
  public:
    using Error::Error;
};

class NotNormalized : public Error {
  public:
    using Error::Error;
};

class InsufficientTrials : public Error {
  public:
    using Error::Error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

} // namespace qlll
