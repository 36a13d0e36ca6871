// Copyright 2026 The CRGC Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace crgc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input: bad flags, out-of-range ordinals, mixed fields.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// Code or bound parameters that violate a structural constraint
// (k > n - r, field too small, too few surviving nodes, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class InsufficientNodes : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Storage per node below B/k: no choice of repair traffic can carry the file.
class Infeasible : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Corrupted or inconsistent stored data (bad CRC, header mismatch, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace crgc
