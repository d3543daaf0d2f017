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

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace dfpb {

// All fairness arithmetic is exact: budget shares, residuals, coverage
// and lottery probabilities are arbitrary-precision rationals, never
// floats.  Doubles appear only in the multiplicative-weights inner loop
// (and are converted back exactly before any fairness check).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" (q > 0 after normalization).  Throws
// ValidationError on malformed input or a zero denominator.
Rational ParseRational(const std::string& text);

// Canonical "p/q" rendering in lowest terms; integers render as "p/1"
// so round-trips are unambiguous.
std::string FormatRational(const Rational& value);

// Exact conversion; every finite double is a dyadic rational.
// Throws ValidationError on NaN / infinity.
Rational RationalFromDouble(double value);

// Nearest-double conversion for display and for the MW weight loop.
double RationalToDouble(const Rational& value);

// Largest integer <= value, range-checked into long long.
long long FloorToInt(const Rational& value);

// Sum of an exact probability vector, used to assert lotteries are
// properly normalized.
Rational Sum(const std::vector<Rational>& values);

}  // namespace dfpb
