// Copyright 2026 The lposd Authors
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

namespace lposd {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// A requested column submatrix is not invertible over GF(2).
class SingularSubmatrix : public Error {
   public:
    using Error::Error;
};

/// A linear system over GF(2) has no solution (syndrome outside the column space).
class InconsistentSystem : public Error {
   public:
    using Error::Error;
};

class SamplingExhausted : public Error {
   public:
    using Error::Error;
};

class EnumerationTooLarge : public Error {
   public:
    using Error::Error;
};

/// A check has too many qubits for the subset enumeration of the LP relaxation.
class CheckWeightTooLarge : public Error {
   public:
    using Error::Error;
};

class Infeasible : public Error {
   public:
    using Error::Error;
};

class IterationLimit : public Error {
   public:
    using Error::Error;
};

class Unbounded : public Error {
   public:
    using Error::Error;
};

class PreconditionViolated : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace lposd
