//
// Copyright 2026 The Bodega Forge Authors
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
//

#ifndef BODEGA_ERRORS_H_
#define BODEGA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bodega {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message names the source and line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Well-formed input that violates a data invariant (duplicate ids, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad options, missing resources, or unusable hyperparameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The external semantic scorer died or spoke outside the protocol.
class ScorerError : public Error {
 public:
  using Error::Error;
};

}  // namespace bodega

#endif  // BODEGA_ERRORS_H_
