"""Search-game arenas and exact solvers.

The visible game: k cops announce their next placement, r robbers relocate
along cop-free paths.  Cops win a play when it stays monotone (no announced
move abandons a vertex some robber can still reach through the cops that
remain) and the robbers run out of vertices.  The invisible variant replaces
the robber set by a contaminated set and is a one-player search.

The solver collapses robber sets to their reachability region: two positions
with the same cop set whose robber sets reach exactly the same vertices have
identical futures, which keeps arenas small enough for exhaustive fixpoints.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .digraph import (Digraph, bits, mask_from, reach_mask, region_table,
                      set_from, symmetric_closure)
from .errors import ConfigError, PreconditionError, ResourceError

DEFAULT_POSITION_BUDGET = 10_000_000


def effective_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("PURSUITWIDTH_BUDGET")
    return int(env) if env else DEFAULT_POSITION_BUDGET


# ---------------------------------------------------------------------------
# Positions

class Initial:
    """The dummy first position; robbers place themselves from here."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "<initial>"


INITIAL = Initial()


@dataclass(frozen=True)
class CopTurn:
    U: frozenset
    R: frozenset

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(self.U))
        object.__setattr__(self, "R", frozenset(self.R))
        if self.U & self.R:
            raise ConfigError(f"cop and robber sets overlap: {sorted(self.U & self.R)}")

    def __repr__(self):
        return f"CopTurn(U={sorted(self.U)}, R={sorted(self.R)})"


@dataclass(frozen=True)
class RobberTurn:
    U: frozenset
    Uprime: frozenset
    R: frozenset

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(self.U))
        object.__setattr__(self, "Uprime", frozenset(self.Uprime))
        object.__setattr__(self, "R", frozenset(self.R))
        if self.U & self.R:
            raise ConfigError(f"cop and robber sets overlap: {sorted(self.U & self.R)}")

    def __repr__(self):
        return (f"RobberTurn(U={sorted(self.U)}, U'={sorted(self.Uprime)}, "
                f"R={sorted(self.R)})")


@dataclass(frozen=True)
class SearchConfig:
    """Game parameters: cop count, robber count, visibility, SCC restriction."""
    k: int
    r: int = 1
    visible: bool = True
    restrict_to_scc: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ConfigError("k must be nonnegative")
        if self.r < 1:
            raise ConfigError("r must be at least 1")
        if self.restrict_to_scc and self.r != 1:
            raise ConfigError("the SCC-restricted game is defined for a single robber")


COPS = "cops"
ROBBERS = "robbers"


@dataclass
class SolveResult:
    winner: str
    cop_strategy: Optional[object]
    robber_strategy: Optional[object]
    arena_size: int


# ---------------------------------------------------------------------------
# Shared per-graph caches

class GraphCache:
    """Reach and region caches reused across solves on one graph."""

    def __init__(self, g: Digraph):
        self.g = g
        self.n = g.n
        self.out = g.out_masks
        self.full = g.full_mask
        self._reach = {}
        self._under = {}

    def reach(self, sources: int, blocked: int) -> int:
        key = (sources, blocked)
        got = self._reach.get(key)
        if got is None:
            got = reach_mask(self.out, sources, blocked)
            self._reach[key] = got
        return got

    def under(self, blocked: int):
        """(region, comp) vertex arrays for the subgraph avoiding `blocked`."""
        got = self._under.get(blocked)
        if got is None:
            got = region_table(self.out, self.n, blocked)
            self._under[blocked] = got
        return got


def _subsets_desc(bitlist, kmax):
    """Subsets of the given bits as masks, largest first; deterministic."""
    for t in range(min(kmax, len(bitlist)), -1, -1):
        for comb in itertools.combinations(bitlist, t):
            m = 0
            for b in comb:
                m |= 1 << b
            yield m


# ---------------------------------------------------------------------------
# Move relations (exhaustive; the solver uses a pruned equivalent internally)

def _scc_of_robber(g: Digraph, cache: GraphCache, U_mask: int, v: int) -> int:
    _, comp = cache.under(U_mask)
    return comp[v]


def cop_moves(g: Digraph, cfg: SearchConfig, pos: CopTurn):
    """All announcements from a cop position.

    Unrestricted: any set of at most k vertices.  SCC-restricted: standing
    cops may stay anywhere, but newly placed cops must land inside the
    robber's current strongly connected component of the cop-deleted graph.
    """
    if not isinstance(pos, CopTurn):
        raise PreconditionError("cop_moves needs a cop position")
    if cfg.restrict_to_scc and cfg.r != 1:
        raise ConfigError("the SCC-restricted game is defined for a single robber")
    U_mask = mask_from(pos.U)
    cache = GraphCache(g)
    moves = set()
    if cfg.restrict_to_scc:
        (v,) = pos.R
        allowed_new = _scc_of_robber(g, cache, U_mask, v)
        ubits = sorted(pos.U)
        for B in _subsets_desc(ubits, cfg.k):
            room = cfg.k - bin(B).count("1")
            for X in _subsets_desc(sorted(bits(allowed_new)), room):
                moves.add(RobberTurn(pos.U, set_from(B | X), pos.R))
    else:
        for Up in _subsets_desc(list(range(g.n)), cfg.k):
            moves.add(RobberTurn(pos.U, set_from(Up), pos.R))
    return moves


def robber_moves(g: Digraph, cfg: SearchConfig, pos):
    """All robber responses; from the initial position, all placements."""
    moves = set()
    if isinstance(pos, Initial):
        for Rm in _subsets_desc(list(range(g.n)), cfg.r):
            if Rm:
                moves.add(CopTurn(frozenset(), set_from(Rm)))
        return moves
    if not isinstance(pos, RobberTurn):
        raise PreconditionError("robber_moves needs a robber position or the initial one")
    U = mask_from(pos.U)
    Up = mask_from(pos.Uprime)
    R = mask_from(pos.R)
    escapes = reach_mask(g.out_masks, R, U & Up) & ~Up
    for Rm in _subsets_desc(sorted(bits(escapes)), cfg.r):
        moves.add(CopTurn(pos.Uprime, set_from(Rm)))
    return moves


def is_monotone_move(g: Digraph, pos: RobberTurn) -> bool:
    """No abandoned cop vertex is reachable by a robber through the kept cops."""
    U = mask_from(pos.U)
    Up = mask_from(pos.Uprime)
    R = mask_from(pos.R)
    return (U & ~Up) & reach_mask(g.out_masks, R, U & Up) == 0


# ---------------------------------------------------------------------------
# Visible-game solver

class _SearchSolver:
    """Least fixpoint of the cop-winnable predicate over collapsed classes.

    A class is (cop set, robber region).  Candidate announcements keep a
    subset B of standing cops (skipped when abandoning the rest would be
    non-monotone, since such announcements lose outright) and add new cops
    X inside the robbers' current cone; in monotone play regions never grow,
    so cops parked outside the cone never block anything and can be dropped
    from any winning announcement without weakening it.
    """

    def __init__(self, g: Digraph, cfg: SearchConfig, budget: int,
                 cache: Optional[GraphCache] = None):
        if not cfg.visible:
            raise PreconditionError("solve_search plays the visible game")
        self.g = g
        self.cfg = cfg
        self.k = cfg.k
        self.r = cfg.r
        self.restricted = cfg.restrict_to_scc
        self.cache = cache or GraphCache(g)
        self.budget = budget
        self._allowed_new = {}

    def _initial_classes(self):
        region, _ = self.cache.under(0)
        distinct = sorted({region[v] for v in range(self.g.n)})
        classes = set()
        for t in range(1, min(self.r, len(distinct)) + 1):
            for comb in itertools.combinations(distinct, t):
                u = 0
                for q in comb:
                    u |= q
                classes.add((0, u))
        return sorted(classes)

    def _allowed_new_mask(self, U: int, reg: int) -> int:
        if not self.restricted:
            return self.cache.full
        key = (U, reg)
        got = self._allowed_new.get(key)
        if got is None:
            region, _ = self.cache.under(U)
            got = 0
            for v in bits(reg):
                if region[v] == reg:
                    got |= 1 << v
            self._allowed_new[key] = got
        return got

    def _candidates(self, U: int, reg: int):
        """Yield (announcement, escape set) pairs, aggressive placements first."""
        cache = self.cache
        k = self.k
        ubits = sorted(bits(U))
        allowed = self._allowed_new_mask(U, reg)
        for B in _subsets_desc(ubits, k):
            rb = cache.reach(reg, B)
            if (U & ~B) & rb:
                continue  # abandoning a guard the robbers can still reach
            room = k - bin(B).count("1")
            xbits = sorted(bits(rb & allowed))
            for X in _subsets_desc(xbits, room):
                Up = B | X
                yield Up, rb & ~Up

    def _succ_regions(self, Up: int, escapes: int):
        region, _ = self.cache.under(Up)
        return sorted({region[v] for v in bits(escapes)})

    def _all_succ_classes_won(self, Up: int, escapes: int, won) -> bool:
        wset = won.get(Up)
        if wset is None:
            return False
        regs = self._succ_regions(Up, escapes)
        if self.r == 1:
            return all(q in wset for q in regs)
        for t in range(1, min(self.r, len(regs)) + 1):
            for comb in itertools.combinations(regs, t):
                u = 0
                for q in comb:
                    u |= q
                if u not in wset:
                    return False
        return True

    def _find_winning(self, U: int, reg: int, won):
        for Up, escapes in self._candidates(U, reg):
            if escapes == 0:
                return Up
            if self._all_succ_classes_won(Up, escapes, won):
                return Up
        return None

    def _build_domain(self, initial):
        from collections import deque
        domain = {}
        dq = deque()
        for key in initial:
            domain[key] = True
            dq.append(key)
        while dq:
            U, reg = dq.popleft()
            for Up, escapes in self._candidates(U, reg):
                if escapes == 0:
                    continue
                regs = self._succ_regions(Up, escapes)
                if self.r == 1:
                    succ = [(Up, q) for q in regs]
                else:
                    succ = []
                    seen = set()
                    for t in range(1, min(self.r, len(regs)) + 1):
                        for comb in itertools.combinations(regs, t):
                            u = 0
                            for q in comb:
                                u |= q
                            if u not in seen:
                                seen.add(u)
                                succ.append((Up, u))
                for key in succ:
                    if key not in domain:
                        if len(domain) >= self.budget:
                            raise ResourceError(
                                f"arena exceeded the position budget ({self.budget})",
                                budget=self.budget, context=f"k={self.k}, r={self.r}")
                        domain[key] = True
                        dq.append(key)
        return list(domain)

    def run(self):
        initial = self._initial_classes()
        domain = self._build_domain(initial)
        won = {}
        cert = {}
        init_set = set(initial)
        pending_init = set(initial)
        unresolved = list(reversed(domain))
        changed = True
        while changed and pending_init:
            changed = False
            still = []
            for key in unresolved:
                U, reg = key
                Up = self._find_winning(U, reg, won)
                if Up is not None:
                    won.setdefault(U, set()).add(reg)
                    cert[key] = Up
                    pending_init.discard(key)
                    changed = True
                else:
                    still.append(key)
            unresolved = still
        if pending_init:
            # run to stabilization so the robber side is exact
            changed = True
            while changed:
                changed = False
                still = []
                for key in unresolved:
                    U, reg = key
                    Up = self._find_winning(U, reg, won)
                    if Up is not None:
                        won.setdefault(U, set()).add(reg)
                        cert[key] = Up
                        changed = True
                    else:
                        still.append(key)
                unresolved = still
        cops_win = all(key in cert for key in init_set)
        return cops_win, won, cert, len(domain)


def solve_search(g: Digraph, cfg: SearchConfig, budget: Optional[int] = None,
                 cache: Optional[GraphCache] = None) -> SolveResult:
    """Solve the visible game exactly from the initial position."""
    if g.n == 0:
        raise PreconditionError("cannot play on the empty graph")
    solver = _SearchSolver(g, cfg, effective_budget(budget), cache)
    cops_win, won, cert, size = solver.run()
    from .strategy import SolverCopStrategy, SolverRobberStrategy
    if cops_win:
        return SolveResult(COPS, SolverCopStrategy(g, cfg, solver.cache, cert), None, size)
    return SolveResult(ROBBERS, None, SolverRobberStrategy(g, cfg, solver.cache, won), size)


# ---------------------------------------------------------------------------
# Invisible-robber game (directed path-width, cop-count convention)

@dataclass
class InvisibleResult:
    cops_win: bool
    schedule: Optional[list]
    states: int


def solve_invisible(g: Digraph, k: int, budget: Optional[int] = None,
                    cache: Optional[GraphCache] = None) -> InvisibleResult:
    """Can k cops monotonously clear the graph against an invisible robber?

    State is (cop set, contaminated set); a move spreads contamination along
    cop-free paths, recontamination loses.  One player, so plain search.
    """
    if g.n == 0:
        raise PreconditionError("cannot play on the empty graph")
    cache = cache or GraphCache(g)
    limit = effective_budget(budget)
    full = g.full_mask
    failed = set()
    states = 0

    def candidates(U, S):
        ubits = sorted(bits(U))
        out = []
        for B in _subsets_desc(ubits, k):
            rb = cache.reach(S, B)
            if (U & ~B) & rb:
                continue
            room = k - bin(B).count("1")
            for X in _subsets_desc(sorted(bits(rb)), room):
                Up = B | X
                if Up == U:
                    continue
                out.append((Up, rb & ~Up))
        out.sort(key=lambda t: (bin(t[1]).count("1"), t[0]))
        return out

    start = (0, full)
    frames = [(start, iter(candidates(0, full)), None)]
    on_path = {start}
    while frames:
        (U, S), it, _ = frames[-1]
        moved = False
        for Up, S2 in it:
            states += 1
            if states > limit:
                raise ResourceError(f"invisible search exceeded the state budget ({limit})",
                                    budget=limit, context=f"k={k}")
            if S2 == 0:
                schedule = [fr[2] for fr in frames[1:]] + [Up]
                return InvisibleResult(True, [set_from(m) for m in schedule], states)
            nxt = (Up, S2)
            if nxt in failed or nxt in on_path:
                continue
            frames.append((nxt, iter(candidates(Up, S2)), Up))
            on_path.add(nxt)
            moved = True
            break
        if not moved:
            st, _, _ = frames.pop()
            on_path.discard(st)
            failed.add(st)
    return InvisibleResult(False, None, states)


def validate_invisible_schedule(g: Digraph, k: int, schedule: Iterable) -> tuple:
    """Replay a placement schedule through the monotone-clearing rules.

    Returns (ok, detail).  The schedule clears iff the contaminated set hits
    empty with no recontamination and no placement exceeding k cops.
    """
    S = g.full_mask
    U = 0
    for step, placement in enumerate(schedule):
        Up = mask_from(placement)
        if bin(Up).count("1") > k:
            return False, f"step {step}: placement uses more than {k} cops"
        rb = reach_mask(g.out_masks, S, U & Up)
        if (U & ~Up) & rb:
            return False, f"step {step}: recontamination through an abandoned cop"
        S = rb & ~Up
        U = Up
        if S == 0:
            return True, f"cleared after {step + 1} placements"
    return (S == 0), ("cleared" if S == 0 else f"contamination left: {sorted(bits(S))}")


# ---------------------------------------------------------------------------
# Width measures

_MEASURES = ("dw", "dw_r", "tw", "tw_r", "dpw")


def width(g: Digraph, measure: str, r: int = 1, budget: Optional[int] = None) -> int:
    """Minimum cop count for the requested measure, by ascending search.

    dw / dw_r: visible game on g with 1 / r robbers.  tw / tw_r: the same on
    the symmetric closure, where tw is the classical tree-width tw_1 - 1.
    dpw: invisible game on g (cop count, i.e. classical value plus one).
    """
    if measure not in _MEASURES:
        raise ConfigError(f"unknown measure {measure!r}; pick one of {_MEASURES}")
    if g.n == 0:
        raise PreconditionError("width of the empty graph is undefined")
    if measure in ("tw", "tw_r"):
        base = width(symmetric_closure(g), "dw_r" if measure == "tw_r" else "dw",
                     r=r, budget=budget)
        return base - 1 if measure == "tw" else base
    if measure == "dw":
        r = 1
    cache = GraphCache(g)
    for k in range(1, g.n + 1):
        try:
            if measure == "dpw":
                if solve_invisible(g, k, budget=budget, cache=cache).cops_win:
                    return k
            else:
                cfg = SearchConfig(k=k, r=r)
                if solve_search(g, cfg, budget=budget, cache=cache).winner == COPS:
                    return k
        except ResourceError as e:
            raise ResourceError(f"{e} while testing k={k}", budget=e.budget,
                                context=f"k={k}") from None
    raise AssertionError("n cops always win; unreachable")
