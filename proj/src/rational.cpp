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

#include "dfpb/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

bool IsIntegerToken(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational ParseRational(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::string num_text = text.substr(0, slash);
  if (!IsIntegerToken(num_text)) {
    throw ValidationError("invalid rational literal: '" + text + "'");
  }
  BigInt num(num_text);
  if (slash == std::string::npos) return Rational(num);
  const std::string den_text = text.substr(slash + 1);
  if (!IsIntegerToken(den_text)) {
    throw ValidationError("invalid rational literal: '" + text + "'");
  }
  BigInt den(den_text);
  if (den == 0) {
    throw ValidationError("zero denominator in rational literal: '" + text +
                          "'");
  }
  return Rational(num, den);
}

std::string FormatRational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational RationalFromDouble(double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("cannot convert non-finite double to rational");
  }
  if (value == 0.0) return Rational(0);
  int exp = 0;
  // mantissa in [0.5, 1); 53 shifts make it an exact integer.
  const double mantissa = std::frexp(value, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exp -= 53;
  Rational result(scaled);
  if (exp >= 0) {
    result *= Rational(BigInt(1) << exp);
  } else {
    result /= Rational(BigInt(1) << -exp);
  }
  return result;
}

double RationalToDouble(const Rational& value) {
  return value.convert_to<double>();
}

long long FloorToInt(const Rational& value) {
  BigInt floor_big = numerator(value) / denominator(value);
  // cpp_int division truncates toward zero; fix up negatives.
  if (floor_big * denominator(value) != numerator(value) && value < 0) {
    floor_big -= 1;
  }
  if (floor_big > std::numeric_limits<long long>::max() ||
      floor_big < std::numeric_limits<long long>::min()) {
    throw ValidationError("rational floor out of 64-bit range");
  }
  return floor_big.convert_to<long long>();
}

Rational Sum(const std::vector<Rational>& values) {
  Rational total(0);
  for (const Rational& v : values) total += v;
  return total;
}

}  // namespace dfpb
