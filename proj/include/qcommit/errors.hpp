// Copyright 2026 The qcommit authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file errors.hpp
 * Exception hierarchy shared by all qcommit modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qcommit {

/// Base class for all qcommit exceptions.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Wrong container length or dimension (qubit counts, vector sizes).
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Parameter slots could not be resolved against the supplied values.
class BindingError : public Error {
  public:
    using Error::Error;
};

/// A parameter slot is attached to a gate without a rotation generator.
class UnsupportedGateError : public Error {
  public:
    using Error::Error;
};

/// Case document violates the schema; message names the failing path.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Network topology cannot support the requested computation.
class TopologyError : public Error {
  public:
    using Error::Error;
};

/// Input is degenerate for the requested operation (e.g. all-zero vector).
class DegenerateInputError : public Error {
  public:
    using Error::Error;
};

/// Caller broke an API contract (acting on a terminal state, shape misuse).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// Problem size exceeds an enumeration guard.
class GuardError : public Error {
  public:
    using Error::Error;
};

} // namespace qcommit
