// Copyright 2026 The Hyra Authors
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

#ifndef HYRA_ERROR_HPP_
#define HYRA_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyra {

enum class ErrorKind {
  // input / model errors
  SyntaxError,
  NonlinearUnsupported,
  UnknownIdentifier,
  UnknownSymbol,
  XmlMalformed,
  UnsupportedFeature,
  UnknownKey,
  MissingKey,
  ValueError,
  SchemaError,
  InvalidModel,
  IoError,
  // engine errors
  DimensionMismatch,
  Overflow,
  InitOutsideInvariant,
  StepTooLarge,
  MaxEventsExceeded,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by the input files rather than the numerical engine.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const { return kind_; }
  // Zero-based character offset inside the expression or line being parsed.
  std::optional<std::size_t> position() const { return position_; }
  const std::string& detail() const { return detail_; }

  // Returns a copy whose message is prefixed with `context` ("location 'q1' flow: ...").
  Error with_context(const std::string& context) const;

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
  std::string detail_;
};

}  // namespace hyra

#endif  // HYRA_ERROR_HPP_
