// Copyright 2026 The codedpir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIR_ERRORS_HPP_
#define PIR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pir {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument values (zero inversion, bad residues, out-of-range indices).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Incompatible shapes or fields between operands.
struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

/// An exhaustive-enumeration guard was exceeded.
struct GuardError : Error {
    explicit GuardError(const std::string& what) : Error(what) {}
};

/// Malformed external input (text formats, JSON, wire frames).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Transport-level failure (unreachable endpoint, broken stream).
struct TransportError : Error {
    explicit TransportError(const std::string& what) : Error(what) {}
};

}  // namespace pir

#endif  // PIR_ERRORS_HPP_
