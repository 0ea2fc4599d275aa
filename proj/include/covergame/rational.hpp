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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace covergame {

// All model quantities are exact rationals. Equilibrium membership is decided
// by weak inequalities, so there is no tolerance anywhere in the library.
using Rational = mpq_class;
using BigInt = mpz_class;

// Canonicalized rational from an integer pair. Throws BadParamsError on a
// zero denominator.
Rational make_rational(long numerator, long denominator = 1);

BigInt factorial(unsigned n);

// Parses "p" or "p/q" with optional leading minus. Rejects anything else,
// including floating-point literals. Throws ParseError.
Rational parse_rational(std::string_view text);

// Always "p/q", canonical form, even for integers ("3/1", "0/1").
std::string fraction_string(const Rational& q);

// Decimal approximation, round-to-nearest, default 15 significant digits.
// Derived output only; the fraction string is authoritative.
std::string decimal_string(const Rational& q, int significant_digits = 15);

}  // namespace covergame
