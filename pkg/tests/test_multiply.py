import pytest

from pursuitwidth.arena import (CopTurn, RobberTurn, SearchConfig, solve_search,
                                width)
from pursuitwidth.digraph import Digraph
from pursuitwidth.errors import (AdversaryContractError, InvariantViolation,
                                 PreconditionError)
from pursuitwidth.families import cycle_digraph
from pursuitwidth.multiply import (CASE_II_2, HistoryEntry, MemoryZeta,
                                   check_invariants, cop_move_multiply,
                                   derived_sets, enumerate_prudent_isolating_moves,
                                   exhaust_prudent_isolating, init_memory,
                                   multiply_strategy, robber_update_multiply,
                                   traced_run)
from pursuitwidth.strategy import History, playout

# a six-vertex pursuit that drives the memory through every update case
ALL_CASES_EDGES = [(0, 2), (0, 3), (0, 5), (1, 0), (2, 0), (2, 1), (2, 5),
                   (3, 4), (4, 1), (4, 3), (5, 0)]


def base_strategy(g, k):
    res = solve_search(g, SearchConfig(k=k, r=1))
    return res.cop_strategy.as_positional()


class TestInitMemory:
    def test_singleton_start(self):
        g = cycle_digraph(3)
        zeta = init_memory(g, {0})
        assert zeta.s == 1
        assert zeta.rho_s.last() == CopTurn(frozenset(), {0})
        report = check_invariants(g, CopTurn(frozenset(), {0}), zeta)
        assert report.passed

    def test_split_start_rejected(self):
        with pytest.raises(PreconditionError):
            init_memory(cycle_digraph(3), {0, 2})

    def test_needs_strong_connectivity(self):
        with pytest.raises(PreconditionError):
            init_memory(Digraph(2, [(0, 1)]), {0})

    def test_fresh_state_passes_checker_everywhere(self):
        g = cycle_digraph(4)
        for v in range(4):
            zeta = init_memory(g, {v})
            assert check_invariants(g, CopTurn(frozenset(), {v}), zeta).passed


class TestCopMove:
    def test_first_move_follows_base_strategy(self):
        g = cycle_digraph(3)
        f = base_strategy(g, 2)
        zeta = init_memory(g, {0})
        up, zeta2, tag = cop_move_multiply(g, f, CopTurn(frozenset(), {0}), zeta)
        assert tag == CASE_II_2
        assert up == f.lookup(frozenset(), {0})

    def test_checker_names_broken_closure(self):
        g = cycle_digraph(3)
        rho1 = History((CopTurn(frozenset(), {0}),
                        RobberTurn(frozenset(), {2}, {0})))
        rho2 = History((CopTurn(frozenset(), {0}),
                        RobberTurn(frozenset(), {2}, {0}),
                        CopTurn({2}, {1})))
        # {0} is not closed once 2 is guarded: 0 still reaches 1
        zeta = MemoryZeta((HistoryEntry(rho1, frozenset({0}), frozenset({0})),), rho2)
        report = check_invariants(g, CopTurn({2}, {0, 1}), zeta)
        bad = report.first_violation()
        assert bad is not None and bad.name == "omit-closed"
        assert "1" in bad.witness

    def test_entry_invariants_enforced(self):
        g = cycle_digraph(3)
        f = base_strategy(g, 2)
        rho_bad = History((CopTurn(frozenset(), {0}),
                           RobberTurn(frozenset(), {2}, {0})))  # not an f move
        zeta = MemoryZeta((), rho_bad)
        with pytest.raises(InvariantViolation):
            cop_move_multiply(g, f, CopTurn(frozenset(), {0}), zeta)


class TestRobberUpdate:
    def test_stay_after_idle_announcement_keeps_memory(self):
        g = cycle_digraph(3)
        zeta = init_memory(g, {0})
        out = robber_update_multiply(g, CopTurn(frozenset(), {0}), {0}, zeta)
        assert out == zeta

    def test_illegal_move_rejected(self):
        g = cycle_digraph(3)
        f = base_strategy(g, 2)
        zeta = init_memory(g, {0})
        pos = CopTurn(frozenset(), {0})
        up, zmid, _ = cop_move_multiply(g, f, pos, zeta)
        bad = frozenset(range(3)) - up - {0}
        imprudent = next(iter(bad))
        with pytest.raises(AdversaryContractError):
            robber_update_multiply(g, pos, {0, imprudent}, zmid, snapshot=zeta)

    def test_derived_sets_cover_announcement(self):
        g = cycle_digraph(3)
        f = base_strategy(g, 2)
        zeta = init_memory(g, {0})
        pos = CopTurn(frozenset(), {0})
        up, zmid, _ = cop_move_multiply(g, f, pos, zeta)
        d = derived_sets(g, zmid, pos.R)
        assert frozenset().union(*d.teams) == up


class TestMultiplied:
    def test_single_team_replays_the_base_strategy(self):
        g = cycle_digraph(4)
        k = width(g, "dw")
        res = solve_search(g, SearchConfig(k=k, r=1))
        f = res.cop_strategy.as_positional()
        mult = multiply_strategy(g, f, r=1)
        rob = solve_search(g, SearchConfig(k=k - 1, r=1)).robber_strategy
        direct = playout(g, SearchConfig(k=k, r=1), f, rob, 200)
        lifted = playout(g, SearchConfig(k=k, r=1), mult, rob, 200)
        assert direct.trace == lifted.trace

    def test_cycle_two_teams(self):
        g = cycle_digraph(3)
        mult = multiply_strategy(g, base_strategy(g, 2), r=2)
        rep = exhaust_prudent_isolating(g, mult)
        assert rep.ok and rep.max_cops <= 4

    def test_every_memory_case_fires_and_passes(self):
        g = Digraph(6, ALL_CASES_EDGES)
        k = width(g, "dw")
        assert k == 2
        mult = multiply_strategy(g, base_strategy(g, k), r=3)
        rep = exhaust_prudent_isolating(g, mult)
        assert rep.ok, rep.witness
        assert rep.max_cops <= 3 * k
        assert set(rep.case_counts) == {"II.2", "II.1a", "II.1b", "II.1c",
                                        "I-empty", "I-nonempty"}

    def test_trace_records_and_rechecks(self):
        g = cycle_digraph(3)
        mult = multiply_strategy(g, base_strategy(g, 2), r=2)
        records = traced_run(g, mult)
        assert records[-1]["R"] == []  # the adversary ends up caught
        for rec in records:
            assert set(rec) == {"step", "mover", "U", "U'", "R", "case_tag",
                                "zeta", "invariant_report"}
            if rec["invariant_report"] is not None:
                assert rec["invariant_report"]["passed"]

    def test_five_vertex_trace_with_splits(self):
        g = Digraph(5, [(0, 4), (1, 3), (2, 0), (2, 1), (2, 3), (2, 4),
                        (3, 0), (3, 1), (4, 0), (4, 2)])
        k = width(g, "dw")
        assert k == 2
        mult = multiply_strategy(g, base_strategy(g, k), r=2)
        records = traced_run(g, mult)
        assert records[-1]["R"] == []
        # the splitting adversary does fork at some point, growing the memory
        assert any(len(rec["R"]) == 2 for rec in records)
        assert any(len(rec["zeta"]["entries"]) >= 1 for rec in records)
        for rec in records:
            if rec["invariant_report"] is not None:
                assert rec["invariant_report"]["passed"]

    def test_sampled_five_vertex_triples(self):
        import random
        from pursuitwidth.digraph import is_strongly_connected
        from pursuitwidth.families import random_digraph
        rng = random.Random(5150)
        done = 0
        while done < 4:
            g = random_digraph(5, 0.35, rng.randrange(10 ** 9))
            if not is_strongly_connected(g):
                continue
            k = width(g, "dw")
            mult = multiply_strategy(g, base_strategy(g, k), r=3)
            rep = exhaust_prudent_isolating(g, mult)
            assert rep.ok, rep.witness
            assert rep.max_cops <= 3 * k
            done += 1

    def test_adversary_moves_are_prudent_and_isolating(self):
        g = cycle_digraph(5)
        pos = RobberTurn(frozenset(), {0}, {2, 4})
        moves = enumerate_prudent_isolating_moves(g, pos, 2)
        from pursuitwidth.strategy import is_isolating_position, is_prudent_move
        assert moves
        for Rp in moves:
            assert is_prudent_move(g, pos.U, pos.Uprime, pos.R, Rp)
            assert is_isolating_position(g, pos.Uprime, Rp)
