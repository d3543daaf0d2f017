# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the python bindings."""

import json
from fractions import Fraction

import pytest

import dfpb

RIVAL = {
    "schema_version": 1,
    "budget": 2,
    "projects": [
        {"label": "a", "cost": 1},
        {"label": "b", "cost": 1},
        {"label": "c", "cost": 2},
    ],
    "districts": [
        {"label": "d0", "budget_share": 1, "utilities": [2, 0, 6]},
        {"label": "d1", "budget_share": 1, "utilities": [0, 2, 0]},
    ],
}

UNANIMOUS = {
    "schema_version": 1,
    "budget": 2,
    "projects": [{"label": f"p{j}", "cost": 1} for j in range(4)],
    "districts": [
        {"label": "d0", "budget_share": 1, "utilities": [3, 3, 0, 0]},
        {"label": "d1", "budget_share": 1, "utilities": [0, 0, 2, 2]},
    ],
}


def rival():
    return dfpb.instance_from_json(json.dumps(RIVAL))


def test_instance_roundtrip():
    ins = rival()
    assert ins.budget == 2
    assert ins.num_projects() == 3
    assert ins.num_districts() == 2
    assert ins.projects[2].cost == 2
    assert ins.districts[0].label == "d0"
    assert Fraction(ins.districts[0].budget_share) == 1
    again = dfpb.instance_from_json(dfpb.instance_to_json(ins))
    assert again.num_projects() == 3


def test_validation_errors_are_typed():
    broken = dict(RIVAL)
    broken["budget"] = 3  # shares now sum to 2 != 3
    with pytest.raises(dfpb.ValidationError):
        dfpb.instance_from_json(json.dumps(broken))
    with pytest.raises(dfpb.IoError):
        dfpb.load_instance("/nonexistent/instance.json")


def test_fair_shares():
    assert dfpb.fair_shares(rival()) == [(2, [0]), (2, [1])]


def test_solve_exact():
    ins = rival()
    members = dfpb.solve_exact(ins)
    assert members == [0, 1]
    assert dfpb.is_fair(ins, members)
    assert dfpb.is_fair_up_to_one(ins, members)
    assert dfpb.cost(ins, members) == 2
    assert dfpb.welfare(ins, 0, members) == 2
    assert dfpb.total_welfare(ins, members) == 4
    with pytest.raises(dfpb.CapabilityError):
        dfpb.solve_exact(ins, district_limit=1)


def test_solve_lottery():
    ins = rival()
    entries = dfpb.solve_lottery(ins, "1", iterations=6)
    assert sum(Fraction(p) for p, _ in entries) == 1
    for _, members in entries:
        assert dfpb.cost(ins, members) <= ins.budget
        assert dfpb.total_welfare(ins, members) >= 4
    with pytest.raises(dfpb.ValidationError):
        dfpb.solve_lottery(ins, "0")


def test_solve_df1():
    result = dfpb.solve_df1(rival())
    assert result["members"] == [0, 1]
    assert result["welfare_floor"] == 4
    assert result["pre_completion"] == [0, 1]
    assert Fraction(result["pre_completion_cover"]) == 2
    assert result["amplify_tail_bound"] == 1.0

    scaled = dfpb.solve_df1(rival(), beta="1000/1647")
    assert dfpb.cost(rival(), scaled["members"]) <= 2


def test_solve_uga():
    with pytest.raises(dfpb.CapabilityError):
        dfpb.solve_uga(rival())  # project c does not cost 1
    ins = dfpb.instance_from_json(json.dumps(UNANIMOUS))
    assert dfpb.solve_uga(ins) == [0, 2]


def test_reduce_x3c():
    ins, target = dfpb.reduce_x3c(1, [[0, 1, 2]])
    assert target == 27
    assert ins.num_projects() == 7
    assert ins.num_districts() == 7
    members = dfpb.solve_exact(ins, district_limit=7)
    assert dfpb.total_welfare(ins, members) == 27


def test_build_gap():
    ins, fractions, scale = dfpb.build_gap(5, "1/10", 1000)
    assert scale == 10
    assert ins.num_projects() == 8
    assert fractions[0] == "11/20"
    assert fractions[4] == "9/20"


def test_lp_text():
    text = dfpb.lp_text(rival())
    assert text.startswith("\\ fractional relaxation")
    assert " budget: 1 y0 + 1 y1 + 2 y2 <= 2\n" in text
    assert " fair_1: 2 y1 >= 2\n" in text
