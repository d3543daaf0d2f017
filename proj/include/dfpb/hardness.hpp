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

#include <array>
#include <string>
#include <vector>

#include "dfpb/core.hpp"
#include "dfpb/rational.hpp"

namespace dfpb {

// An exact-3-cover question: can n of the given 3-element subsets of
// {0, ..., 3n-1} be chosen so their union is the whole universe?
struct X3cInput {
  int n = 0;
  std::vector<std::array<int, 3>> sets;
};

// Throws ValidationError unless n ≥ 1, every set holds 3 distinct
// in-range elements, and every universe element appears in some set
// (an uncovered element would make the reduced fairness demands
// degenerate and break the equivalence below).
void ValidateX3cInput(const X3cInput& input);

struct X3cReduction {
  Instance instance;
  long long welfare_target = 0;
  long long dummy_scale = 0;  // the "M" amplification factor, 3mn+1
};

// Unit-cost, unit-share instance whose fair welfare-maximization
// question encodes the cover question: one district per universe
// element, M dummy districts; one project per set, 2n+M dummy projects
// approved by every dummy district; budget 3n+M.  A fair outcome with
// welfare ≥ 3n + (2n+M)·M exists iff an exact cover exists.
X3cReduction ReduceX3c(const X3cInput& input);

struct GapParams {
  int k = 3;            // districts, last one a zero-share dummy
  Rational epsilon;     // in (0, 1)
  long long dummy_utility = 1;  // the "B" payoff of dummy projects
};

struct GapInstance {
  Instance instance;
  FractionalOutcome witness;
  long long scale = 1;  // utilities were multiplied by this to stay integral
};

// Family with unbounded integral/fractional optimum ratio: k-1
// circular districts each valuing its own project 1+ε and its cyclic
// successor 1, plus k-1 dummy projects worth B each to a dummy
// district with zero budget share; budget k-1, unit costs.  Utilities
// are scaled by the denominator of ε to stay integral.  The fractional
// witness funds every real project to (1+ε)/2 and every dummy to
// 1−(1+ε)/2, reaching welfare ≥ B(k−1)(1−(1+ε)/2)·scale while the only
// fair integral outcome takes exactly the real projects.
GapInstance BuildGapInstance(const GapParams& params);

// Writes the fractional relaxation in LP text format: objective
// Σ y_j · total welfare(j), one budget row, one fairness row per
// district, 0 ≤ y_j ≤ 1.  Deterministic ordering; errors are IoError.
void ExportFractionalLp(const Instance& instance,
                        const FairShareProfile& shares,
                        const std::string& path);
std::string FractionalLpText(const Instance& instance,
                             const FairShareProfile& shares);

struct FeasibilityReport {
  bool feasible = false;
  std::vector<std::string> violations;  // named rows that failed
};

// Exact rational check of the relaxation's constraints for a given
// fractional outcome.
FeasibilityReport CheckFractionalFeasible(const Instance& instance,
                                          const FairShareProfile& shares,
                                          const FractionalOutcome& outcome);

}  // namespace dfpb
