// Copyright 2026 The Squash Authors
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

#ifndef SQUASH_ERRORS_H
#define SQUASH_ERRORS_H

#include <stdexcept>
#include <string>

namespace squash {

/// Argument outside the mathematical domain of an operation (empty tally,
/// rate outside [0, 1], ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A value violates the invariants of the type it is used to construct.
class InvalidStateError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Requested size exceeds a memory or enumeration guard.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Configuration not supported by an operation (e.g. threshold events for m != 2).
class UnsupportedError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A closed-form result was requested outside its validity region.
class PreconditionError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// No feasible point exists for an optimization problem.
class InfeasibleError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace squash

#endif
