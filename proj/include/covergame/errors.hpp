// Copyright 2026 The Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace covergame {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad JSON, bad rational literal, float where a
// rational string is required).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally well-formed input that violates a model invariant
// (probabilities not summing to one, partition not covering, ...).
// Also covers degenerate analyses whose requested ratios are undefined.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Instance too large for exhaustive analysis under the configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or inconsistent parameters to a generator or command.
class BadParamsError : public Error {
 public:
  using Error::Error;
};

// A value-of-informing or price ratio whose denominator is zero.
class UndefinedRatioError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

}  // namespace covergame
