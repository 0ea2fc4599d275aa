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

#include "covergame/rational.hpp"

#include <cctype>
#include <cstdio>

#include "covergame/errors.hpp"

namespace covergame {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw BadParamsError("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw ParseError("not a rational literal: \"" + std::string(text) +
                     "\" (expected \"p\" or \"p/q\")");
  }
  Rational q{BigInt(std::string(num)), BigInt(std::string(den))};
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  q.canonicalize();
  return q;
}

std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int significant_digits) {
  // 256 bits of mantissa is far beyond what 15 significant digits need.
  mpf_class f(q, 256);
  char buf[128];
  gmp_snprintf(buf, sizeof(buf), "%.*Fg", significant_digits, f.get_mpf_t());
  return buf;
}

}  // namespace covergame
