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

#include "hyra/error.hpp"

namespace hyra {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonlinearUnsupported: return "NonlinearUnsupported";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::XmlMalformed: return "XmlMalformed";
    case ErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::ValueError: return "ValueError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InitOutsideInvariant: return "InitOutsideInvariant";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::MaxEventsExceeded: return "MaxEventsExceeded";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::Overflow:
    case ErrorKind::InitOutsideInvariant:
    case ErrorKind::StepTooLarge:
    case ErrorKind::MaxEventsExceeded:
      return false;
    default:
      return true;
  }
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    std::optional<std::size_t> position) {
  std::string out(to_string(kind));
  if (position) out += " at column " + std::to_string(*position + 1);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(compose(kind, message, position)),
      kind_(kind),
      position_(position),
      detail_(message) {}

Error Error::with_context(const std::string& context) const {
  return Error(kind_, context + ": " + detail_, position_);
}

}  // namespace hyra
