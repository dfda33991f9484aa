from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from beepmis import (
    Constant,
    Graph,
    GlobalSweep,
    InvalidParameter,
    LocalFeedback,
    NodeStatus,
    complete_graph,
    default_max_rounds,
    enumerate_mis,
    neighbourhood_weight,
    new_state,
    path_graph,
    run,
    step,
)

from conftest import BEEP, SILENT, StubRNG, replay_check, small_graphs


class TestStep:
    def test_isolated_node_joins(self):
        g = Graph(1)
        result = run(g, Constant(1.0), seed=0)
        assert result.terminated and result.rounds == 1
        assert result.mis == {0}
        assert result.beep_counts == (1,)

    def test_k2_both_beep(self):
        g = complete_graph(2)
        policy = LocalFeedback()
        state = new_state(g, policy)
        outcome = step(state, g, StubRNG([BEEP, BEEP]))
        assert outcome.beeped == {0, 1}
        assert outcome.joined_mis == frozenset()
        assert outcome.newly_inactive == frozenset()
        # both heard a beep: probabilities halve
        assert state.policy_state.exponents == [2, 2]
        assert state.beep_counts == [1, 1]

    def test_k2_one_beeps(self):
        g = complete_graph(2)
        state = new_state(g, LocalFeedback())
        outcome = step(state, g, StubRNG([BEEP, SILENT]))
        assert outcome.joined_mis == {0}
        assert outcome.newly_inactive == {0, 1}
        assert state.status == [NodeStatus.IN_MIS, NodeStatus.INACTIVE_NEIGHBOUR]
        assert not state.active
        # nodes deactivated this round receive no policy update: node 1 heard
        # a beep, but its exponent stays at 1
        assert state.policy_state.exponents == [1, 1]

    def test_k2_round1_enumeration(self):
        # all four beep patterns at p = (1/2, 1/2); join happens iff exactly
        # one node beeps, so the round-1 termination probability is 1/2
        join_probability = 0.0
        for bits in product((True, False), repeat=2):
            g = complete_graph(2)
            state = new_state(g, LocalFeedback())
            draws = [BEEP if b else SILENT for b in bits]
            outcome = step(state, g, StubRNG(draws))
            weight = 0.5 * 0.5
            expected_join = sum(bits) == 1
            assert bool(outcome.joined_mis) == expected_join
            if outcome.joined_mis:
                join_probability += weight
        assert join_probability == 0.5

    def test_multi_join_shared_neighbour(self):
        # both endpoints of a path join in one round; the middle node is
        # deactivated exactly once
        g = path_graph(3)
        state = new_state(g, LocalFeedback())
        outcome = step(state, g, StubRNG([BEEP, SILENT, BEEP]))
        assert outcome.joined_mis == {0, 2}
        assert outcome.newly_inactive == {0, 1, 2}
        assert state.status[1] is NodeStatus.INACTIVE_NEIGHBOUR

    def test_silent_round_doubles_probability(self):
        g = complete_graph(2)
        policy = LocalFeedback()
        state = new_state(g, policy)
        state.policy_state.exponents = [3, 3]
        step(state, g, StubRNG([SILENT, SILENT]))
        assert state.policy_state.exponents == [2, 2]


class TestRun:
    def test_empty_graph(self):
        result = run(Graph(0), GlobalSweep(), seed=5)
        assert result.terminated and result.rounds == 0 and result.mis == frozenset()

    def test_isolated_nodes_sweep_all_join_round_one(self):
        g = Graph(6)
        result = run(g, GlobalSweep(), seed=11)
        assert result.terminated and result.rounds == 1
        assert result.mis == set(range(6))

    def test_deterministic_including_trace(self):
        g = complete_graph(6)
        a = run(g, LocalFeedback(), seed=99, keep_trace=True)
        b = run(g, LocalFeedback(), seed=99, keep_trace=True)
        assert a == b

    def test_trace_off_by_default(self):
        assert run(complete_graph(3), GlobalSweep(), seed=0).trace is None

    def test_max_rounds_hit(self):
        # p = 1 on an edge: both nodes beep forever, no one ever joins
        result = run(complete_graph(2), Constant(1.0), seed=0, max_rounds=5)
        assert not result.terminated
        assert result.rounds == 5
        assert result.mis == frozenset()

    def test_rejects_bad_max_rounds(self):
        with pytest.raises(InvalidParameter):
            run(complete_graph(2), GlobalSweep(), seed=0, max_rounds=0)

    def test_default_max_rounds(self):
        assert default_max_rounds(0) == 128
        assert default_max_rounds(1024) == 64 * 11**2 + 64

    def test_small_graph_outputs_are_enumerated_mis(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        family = enumerate_mis(g)
        for seed in range(25):
            result = run(g, LocalFeedback(), seed=seed)
            assert result.terminated
            assert tuple(sorted(result.mis)) in family

    @settings(max_examples=60, deadline=None)
    @given(
        small_graphs(max_nodes=10),
        st.sampled_from(["feedback", "sweep", "const", "feedback_gen"]),
        st.integers(min_value=0, max_value=2**64 - 1),
    )
    def test_run_invariants(self, g, policy_kind, seed):
        policy = {
            "feedback": LocalFeedback(),
            "sweep": GlobalSweep(),
            "const": Constant(0.4),
            "feedback_gen": LocalFeedback(factor=1.7, initial=0.45, cap=0.5),
        }[policy_kind]
        result = run(g, policy, seed=seed, keep_trace=True)
        replay_check(g, result)


class TestNeighbourhoodWeight:
    def test_isolated(self):
        g = Graph(1)
        state = new_state(g, LocalFeedback())
        assert neighbourhood_weight(state, g, 0) == 0.0

    def test_k3_fresh(self):
        g = complete_graph(3)
        state = new_state(g, LocalFeedback())
        for v in range(3):
            assert neighbourhood_weight(state, g, v) == 1.0

    def test_k2_after_all_beep_round(self):
        g = complete_graph(2)
        state = new_state(g, LocalFeedback())
        step(state, g, StubRNG([BEEP, BEEP]))
        assert neighbourhood_weight(state, g, 0) == 0.25
        assert neighbourhood_weight(state, g, 1) == 0.25

    def test_inactive_neighbours_contribute_zero(self):
        g = path_graph(3)
        state = new_state(g, LocalFeedback())
        step(state, g, StubRNG([BEEP, SILENT, SILENT]))  # 0 joins, 1 deactivated
        assert neighbourhood_weight(state, g, 0) == 0.0  # sole neighbour now inactive
        assert neighbourhood_weight(state, g, 1) == 0.5  # node 2 still active at p=1/2

    def test_rejects_out_of_range(self):
        g = complete_graph(2)
        state = new_state(g, LocalFeedback())
        with pytest.raises(InvalidParameter):
            neighbourhood_weight(state, g, 2)
