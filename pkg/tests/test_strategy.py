import pytest

from pursuitwidth.arena import (COPS, ROBBERS, CopTurn, RobberTurn,
                                SearchConfig, solve_search, width)
from pursuitwidth.digraph import Digraph, reach_excluding
from pursuitwidth.errors import PreconditionError, StrategyHoleError
from pursuitwidth.families import cycle_digraph, enumerate_strongly_connected
from pursuitwidth.strategy import (COPS_WIN, NON_MONOTONE,
                                   ROBBERS_WIN, History, PositionalCopStrategy,
                                   cleanup_strategy, isolating_transform,
                                   is_isolating_position, is_prudent_move,
                                   playout, prudent_transform,
                                   validate_cop_strategy,
                                   validate_robber_strategy)

single = Digraph(1, [])


class FixedRobber:
    """Places at a vertex, stays while it may, and gives up when announced."""

    def __init__(self, v):
        self.v = v

    def initial_placement(self):
        return frozenset({self.v})

    def init_memory(self, pos):
        return None

    def respond(self, memory, pos):
        (v,) = pos.R
        if v not in pos.Uprime:
            return frozenset({v}), memory
        return frozenset(), memory


class TestHistory:
    def test_prefix_relation(self):
        a = History((CopTurn(frozenset(), {0}),))
        b = a.append(RobberTurn(frozenset(), {1}, {0}))
        assert a.is_strict_prefix_of(b)
        assert not b.is_strict_prefix_of(a)
        assert not a.is_strict_prefix_of(a)

    def test_last(self):
        a = History((CopTurn(frozenset(), {0}),))
        assert a.last() == CopTurn(frozenset(), {0})


class TestPlayout:
    def test_single_vertex_quick_capture(self):
        f = PositionalCopStrategy({(frozenset(), frozenset({0})): frozenset({0})})
        res = playout(single, SearchConfig(k=1), f, FixedRobber(0), 10)
        assert res.verdict == COPS_WIN
        assert res.steps <= 2

    def test_non_monotone_verdict(self):
        g = cycle_digraph(3)
        f = PositionalCopStrategy({
            (frozenset(), frozenset({0})): frozenset({1}),
            (frozenset({1}), frozenset({0})): frozenset({2}),
        })
        res = playout(g, SearchConfig(k=1), f, FixedRobber(0), 10)
        assert res.verdict == NON_MONOTONE

    def test_strategy_hole_is_reported(self):
        g = cycle_digraph(3)
        f = PositionalCopStrategy({(frozenset(), frozenset({0})): frozenset({1})})
        with pytest.raises(StrategyHoleError):
            playout(g, SearchConfig(k=1), f, FixedRobber(0), 10)

    def test_deterministic_trace(self):
        g = cycle_digraph(3)
        res = solve_search(g, SearchConfig(k=2))
        rob = solve_search(g, SearchConfig(k=1)).robber_strategy
        a = playout(g, SearchConfig(k=2), res.cop_strategy, rob, 100)
        b = playout(g, SearchConfig(k=2), res.cop_strategy, rob, 100)
        assert a.trace == b.trace and a.verdict == b.verdict == COPS_WIN

    def test_solver_robber_beats_every_single_cop_line(self):
        g = cycle_digraph(3)
        rob = solve_search(g, SearchConfig(k=1)).robber_strategy
        assert validate_robber_strategy(g, SearchConfig(k=1), rob).ok

    def test_sample_positional_cop_strategies_lose_on_cycle(self):
        g = cycle_digraph(3)
        rob = solve_search(g, SearchConfig(k=1)).robber_strategy
        stay = PositionalCopStrategy(
            {(frozenset(), frozenset({v})): frozenset({(v + 1) % 3}) for v in range(3)}
            | {(frozenset({u}), frozenset({v})): frozenset({u})
               for u in range(3) for v in range(3) if u != v})
        res = playout(g, SearchConfig(k=1), stay, rob, 200)
        assert res.verdict in (ROBBERS_WIN, NON_MONOTONE)


class TestTransforms:
    def test_single_robber_is_already_isolating(self):
        g = cycle_digraph(3)
        cfg = SearchConfig(k=1, r=1)
        rob = solve_search(g, cfg).robber_strategy
        iso = isolating_transform(g, cfg, rob)
        a = validate_robber_strategy(g, cfg, iso, require_isolating=True)
        assert a.ok

    def test_one_representative_per_component(self):
        g = cycle_digraph(3)
        cfg = SearchConfig(k=1, r=2)
        rob = solve_search(g, cfg).robber_strategy
        iso = isolating_transform(g, cfg, rob)
        R0 = iso.initial_placement()
        # the whole cycle is one component, so one robber suffices at the start
        assert len(R0) == 1
        assert is_isolating_position(g, frozenset(), R0)

    def test_transform_requires_winning_input(self):
        g = cycle_digraph(3)
        cfg = SearchConfig(k=2, r=1)  # cops win at two
        rob = solve_search(g, SearchConfig(k=1, r=1)).robber_strategy
        with pytest.raises(PreconditionError):
            isolating_transform(g, cfg, rob)

    def test_two_robbers_beat_one_cop_after_transforms(self):
        g = cycle_digraph(5)
        cfg = SearchConfig(k=1, r=2)
        res = solve_search(g, cfg)
        assert res.winner == ROBBERS
        iso = isolating_transform(g, cfg, res.robber_strategy)
        assert validate_robber_strategy(g, cfg, iso, require_isolating=True).ok
        pru = prudent_transform(g, cfg, res.robber_strategy)
        assert validate_robber_strategy(g, cfg, pru, require_isolating=True,
                                        require_prudent=True).ok

    def test_prudence_distinguishes_threatened_targets(self):
        g = cycle_digraph(3)
        assert is_prudent_move(g, frozenset(), {1}, {0}, {0})  # staying is prudent
        # vertex 1 stays reachable once the cop lands on 2, so going there is rash
        assert not is_prudent_move(g, frozenset(), {2}, {0}, {1})
        # vertex 2 is about to be cut off by the cop landing on 1
        assert is_prudent_move(g, frozenset(), {1}, {0}, {2})


class TestCleanup:
    def test_parked_cop_is_dropped(self):
        g = Digraph(2, [(0, 1)])
        f = PositionalCopStrategy({
            (frozenset(), frozenset({0})): frozenset({0, 1}),
            (frozenset(), frozenset({1})): frozenset({0, 1}),  # 0 is unreachable from 1
        })
        ft = cleanup_strategy(g, f)
        assert ft.lookup(frozenset(), {1}) == {1}
        assert ft.lookup(frozenset(), {0}) == {0, 1}

    def test_idempotent_on_solver_strategies(self):
        for n in (3, 4):
            for g in list(enumerate_strongly_connected(n))[:6]:
                k = width(g, "dw")
                f = solve_search(g, SearchConfig(k=k)).cop_strategy.as_positional()
                ft = cleanup_strategy(g, f)
                ft2 = cleanup_strategy(g, ft)
                assert ft2.mapping == ft.mapping

    def test_normal_form_contract(self):
        g = cycle_digraph(4)
        k = width(g, "dw")
        f = solve_search(g, SearchConfig(k=k)).cop_strategy.as_positional()
        ft = cleanup_strategy(g, f)
        for (U, R), up in ft.items():
            (v,) = R
            assert up - U, "every move must place a new cop"
            assert (up - U) <= reach_excluding(g, U, {v})
        assert validate_cop_strategy(g, SearchConfig(k=k), ft).ok

    def test_rejects_losing_input(self):
        g = cycle_digraph(3)
        f = PositionalCopStrategy({
            (frozenset(), frozenset({v})): frozenset({(v + 1) % 3}) for v in range(3)
        } | {(frozenset({u}), frozenset({v})): frozenset({u})
             for u in range(3) for v in range(3) if u != v})
        with pytest.raises(PreconditionError):
            cleanup_strategy(g, f)


class TestSerialization:
    def test_round_trip(self):
        g = cycle_digraph(3)
        f = solve_search(g, SearchConfig(k=2)).cop_strategy.as_positional()
        text = f.serialize()
        assert PositionalCopStrategy.parse(text).mapping == f.mapping
        assert "->" in text and ";" in text

    def test_empty_set_spelling(self):
        f = PositionalCopStrategy({(frozenset(), frozenset({0})): frozenset({0})})
        assert f.serialize().startswith("- ; 0 -> 0")
