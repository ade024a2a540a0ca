"""Zero-knowledge checks: what Vera sees from an honest prover matches the simulator."""

import itertools
from collections import Counter, defaultdict

import pytest
from scipy.stats import chisquare

from src.cards import EnumeratedTape, EventKind, SeededTape
from src.config import config
from src.solver import solve
from src.zkp import run_protocol, simulate
from tests.conftest import make_instance

POSITIONAL = (EventKind.PILE_PICKED, EventKind.PILES_SHIFTED, EventKind.TOPS_REVEALED)
SIGNIFICANCE = 1e-3


def shape(events):
    return [(e.kind, e.keys()) for e in events]


def positions(events):
    """(event index, pile count, position) of every position Vera is shown."""
    return [
        (index, int(e.get("of")), int(e.get("at")))
        for index, e in enumerate(events)
        if e.kind in POSITIONAL
    ]


def uniform_pvalue(values, k):
    counts = Counter(values)
    return chisquare([counts.get(v, 0) for v in range(k)]).pvalue


def window_traces(run, base, scope):
    """
    Every visible trace of one scope while its draws run over all values.

    Draws outside the scope keep the values they had in `base`.
    """
    draws = base.state.session.draws
    values = [d.value for d in draws]
    inside = [i for i, d in enumerate(draws) if d.scope == scope]
    traces = Counter()
    for combo in itertools.product(*(range(draws[i].k) for i in inside)):
        for i, v in zip(inside, combo):
            values[i] = v
        result = run(EnumeratedTape(values))
        traces[tuple(e.render() for e in result.state.session.log.in_scope(scope))] += 1
    return traces


def windows(result, limit):
    """First scope of every kind whose own draws can be enumerated within `limit` runs."""
    session = result.state.session
    sizes = defaultdict(int)
    product = defaultdict(lambda: 1)
    for d in session.draws:
        sizes[d.scope] += 1
        product[d.scope] *= d.k
    chosen = {}
    for scope, name in sorted(session.scope_names.items()):
        if name not in chosen and sizes[scope] and product[scope] <= limit:
            chosen[name] = scope
    return chosen


@pytest.fixture
def two_by_two_runs(two_by_two, two_by_two_solution):
    def honest(tape):
        return run_protocol(two_by_two, two_by_two_solution, tape)

    def simulated(tape):
        return simulate(two_by_two, tape)

    return honest, simulated


class TestTraceShape:
    def test_six_by_six_kinds_match_simulator(self, six_by_six, six_by_six_solution):
        real = run_protocol(six_by_six, six_by_six_solution, SeededTape(1)).transcript.events
        fake = simulate(six_by_six, SeededTape(2)).transcript.events
        assert shape(real) == shape(fake)

    def test_two_by_two_scopes_match_simulator(self, two_by_two_runs):
        honest, simulated = two_by_two_runs
        real, fake = honest(SeededTape(3)), simulated(SeededTape(4))
        assert real.state.session.scope_names == fake.state.session.scope_names
        assert [d.k for d in real.state.session.draws] == [d.k for d in fake.state.session.draws]
        assert shape(real.transcript.events) == shape(fake.transcript.events)


class TestExactWindows:
    def _compare(self, runs, limit):
        honest, simulated = runs
        base_real, base_fake = honest(SeededTape(7)), simulated(SeededTape(8))
        chosen = windows(base_real, limit)
        assert chosen
        for name, scope in chosen.items():
            real = window_traces(honest, base_real, scope)
            fake = window_traces(simulated, base_fake, scope)
            assert real == fake, name
        return set(chosen)

    def test_small_windows(self, two_by_two_runs):
        covered = self._compare(two_by_two_runs, 8)
        assert {"pile_choose", "or_replace", "discard_heart", "select_pile"} <= covered

    @pytest.mark.slow
    def test_every_primitive(self, two_by_two_runs):
        covered = self._compare(two_by_two_runs, 128)
        assert {"build_mask", "reversible_shuffle", "set_membership"} <= covered


class TestPositionsAreUniform:
    def _pooled(self, events):
        by_size = defaultdict(list)
        for _, k, at in positions(events):
            by_size[k].append(at)
        return by_size

    @pytest.mark.parametrize("prover", ["honest", "simulator"])
    def test_pooled_six_by_six(self, six_by_six, six_by_six_solution, prover):
        if prover == "honest":
            events = run_protocol(six_by_six, six_by_six_solution, SeededTape(21)).transcript.events
        else:
            events = simulate(six_by_six, SeededTape(21)).transcript.events
        pooled = self._pooled(events)
        assert 2 in pooled
        for k, values in pooled.items():
            if len(values) >= 5 * k:
                assert uniform_pvalue(values, k) > SIGNIFICANCE, k

    @pytest.mark.slow
    def test_every_position_two_by_two(self, two_by_two, two_by_two_solution):
        runs = config.get_zk_runs()
        seen = defaultdict(list)
        sizes = {}
        for seed in range(runs):
            events = run_protocol(two_by_two, two_by_two_solution, SeededTape(seed)).transcript.events
            for index, k, at in positions(events):
                seen[index].append(at)
                sizes[index] = k
        # Bonferroni over every position so the family-wide level stays at SIGNIFICANCE.
        level = SIGNIFICANCE / len(seen)
        for index, values in seen.items():
            assert len(values) == runs
            assert uniform_pvalue(values, sizes[index]) > level, index

    @pytest.mark.slow
    def test_every_position_six_by_six(self, six_by_six, six_by_six_solution):
        runs = config.get_zk_runs()
        seen = defaultdict(Counter)
        sizes = {}
        for seed in range(runs):
            events = run_protocol(six_by_six, six_by_six_solution, SeededTape(seed)).transcript.events
            for index, k, at in positions(events):
                seen[index][at] += 1
                sizes[index] = k
        level = SIGNIFICANCE / len(seen)
        for index, counts in seen.items():
            k = sizes[index]
            assert sum(counts.values()) == runs
            assert chisquare([counts.get(v, 0) for v in range(k)]).pvalue > level, index


class TestStraightBeam:
    def test_honest_and_simulated_declare_the_same_counts(self):
        inst = make_instance(3, 2, (0, 0, "E", None), (2, 0, "N", 0), (2, 1, "W", 0), (0, 1, "S", 0))
        real = run_protocol(inst, solve(inst), SeededTape(5))
        fake = simulate(inst, SeededTape(6))
        assert real.accepted and fake.accepted
        assert shape(real.transcript.events) == shape(fake.transcript.events)
        assert [d.k for d in real.state.session.draws] == [d.k for d in fake.state.session.draws]
