"""Tests for beam enumeration, the backtracking search and its oracle."""

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from src.puzzle import BeamPath, Direction, Firefly, GridPoint, PuzzleInstance, validate_solution
from src.solver import (
    BudgetExhausted,
    Occupancy,
    PointState,
    SearchConfig,
    brute_force_count,
    brute_force_decide,
    count_solutions,
    enumerate_beams,
    solve,
)
from tests.conftest import make_instance


def P(x, y):
    return GridPoint(x, y)


class TestOccupancy:
    def test_fireflies_marked(self, six_by_six):
        occ = Occupancy(six_by_six)
        assert occ.state(P(1, 4)) is PointState.FIREFLY_POINT
        assert occ.is_free(P(0, 0))

    def test_mark_and_release(self, six_by_six, six_by_six_solution):
        occ = Occupancy.from_solution(six_by_six, six_by_six_solution, [5])
        assert occ.state(P(0, 3)) is PointState.USED_BY_BEAM
        with pytest.raises(ValueError):
            occ.mark([P(0, 3)])
        with pytest.raises(ValueError):
            occ.mark([P(1, 4)])
        occ.release(six_by_six_solution.beams[5].interior())
        assert occ.is_free(P(0, 3))


class TestEnumerateBeams:
    def test_two_by_two_has_one_beam(self, two_by_two):
        beams = enumerate_beams(two_by_two, Occupancy(two_by_two), 1)
        assert [b.vertices for b in beams] == [(P(0, 0), P(1, 0), P(1, 1))]

    def test_straight_ray_into_the_border(self):
        inst = make_instance(3, 3, (0, 0, "E", 0), (2, 2, "S", None))
        assert enumerate_beams(inst, Occupancy(inst), 1) == []

    def test_six_by_six_one_bend_beam(self, six_by_six):
        beams = enumerate_beams(six_by_six, Occupancy(six_by_six), 3)
        assert BeamPath(3, (P(5, 1), P(5, 5), P(4, 5))) in beams
        assert all(len(b.vertices) == 3 for b in beams)

    def test_avoids_occupied_points(self, six_by_six, six_by_six_solution):
        occ = Occupancy.from_solution(six_by_six, six_by_six_solution, [5, 2])
        beams = enumerate_beams(six_by_six, occ, 3)
        assert BeamPath(3, (P(5, 1), P(5, 5), P(4, 5))) in beams
        used = set(six_by_six_solution.beams[5].interior()) | set(six_by_six_solution.beams[2].interior())
        assert all(not used.intersection(b.interior()) for b in beams)

    def test_never_arrives_on_a_dot_edge(self, three_in_a_row):
        occ = Occupancy(three_in_a_row)
        assert enumerate_beams(three_in_a_row, occ, 1) == []
        assert enumerate_beams(three_in_a_row, occ, 2) == []

    def test_sorted_and_deterministic(self, six_by_six):
        first = enumerate_beams(six_by_six, Occupancy(six_by_six), 1)
        assert first == sorted(first, key=lambda b: b.vertices)
        assert first == enumerate_beams(six_by_six, Occupancy(six_by_six), 1)


class TestSolve:
    def test_six_by_six(self, six_by_six):
        sol = solve(six_by_six)
        assert sol is not None
        assert validate_solution(six_by_six, sol) == []

    def test_three_in_a_row_is_unsolvable(self, three_in_a_row):
        assert solve(three_in_a_row) is None

    def test_two_by_two_unique(self, two_by_two, two_by_two_solution):
        sol = solve(two_by_two)
        assert sol.beams == two_by_two_solution.beams
        assert count_solutions(two_by_two) == 1

    def test_two_components_unsolvable(self, two_components):
        assert solve(two_components) is None

    def test_count(self, six_by_six, three_in_a_row):
        assert count_solutions(three_in_a_row) == 0
        assert 1 <= count_solutions(six_by_six, SearchConfig(solution_cap=2)) <= 2

    def test_propagation_off_agrees(self, six_by_six):
        sol = solve(six_by_six, SearchConfig(propagate=False))
        assert sol is not None
        assert validate_solution(six_by_six, sol) == []

    def test_deterministic(self, six_by_six):
        assert solve(six_by_six).beams == solve(six_by_six).beams

    def test_budget(self):
        inst = make_instance(4, 4, (0, 0, "E", None), (3, 3, "W", None))
        with pytest.raises(BudgetExhausted) as err:
            solve(inst, SearchConfig(node_budget=1))
        assert err.value.nodes == 1

    def test_config_caps(self):
        with pytest.raises(ValueError):
            SearchConfig(node_budget=0)
        with pytest.raises(ValueError):
            SearchConfig(solution_cap=0)


@st.composite
def small_instances(draw):
    width = draw(st.integers(min_value=1, max_value=4))
    height = draw(st.integers(min_value=1, max_value=12 // width))
    points = [P(x, y) for y in range(height) for x in range(width)]
    n = draw(st.integers(min_value=1, max_value=min(3, len(points))))
    chosen = draw(st.lists(st.sampled_from(points), min_size=n, max_size=n, unique=True))
    fireflies = []
    for fid, pos in enumerate(chosen, start=1):
        dot = draw(st.sampled_from(list(Direction)))
        bends = draw(st.one_of(st.none(), st.integers(min_value=0, max_value=3)))
        fireflies.append(Firefly(fid, pos, dot, bends))
    inst = PuzzleInstance(width, height, tuple(fireflies))
    assume(not inst.problems())
    return inst


class TestAgainstOracle:
    @settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(small_instances())
    def test_decision_and_count_match(self, inst):
        expected = brute_force_count(inst)
        sol = solve(inst)
        assert (sol is not None) == (expected > 0)
        if sol is not None:
            assert validate_solution(inst, sol) == []
        cap = expected + 1
        assert count_solutions(inst, SearchConfig(solution_cap=cap)) == expected
        assert count_solutions(inst, SearchConfig(solution_cap=cap, propagate=False)) == expected

    def test_oracle_on_fixtures(self, two_by_two, three_in_a_row):
        assert brute_force_decide(two_by_two)
        assert not brute_force_decide(three_in_a_row)
