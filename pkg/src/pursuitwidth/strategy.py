"""Strategies, plays, exhaustive validation, and the normal-form transforms.

Cop strategies answer cop positions with an announcement, optionally through
a memory structure.  Robber strategies choose the initial placement and
answer robber positions.  Validation is exhaustive: the fixed side plays its
strategy while the opponent branches over every legal move, so a green
validation is a proof at the instance's scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .arena import (COPS, INITIAL, CopTurn, GraphCache, Initial, RobberTurn,
                    SearchConfig, effective_budget, is_monotone_move)
from .digraph import Digraph, bits, mask_from, reach_mask, set_from
from .errors import (AdversaryContractError, InvariantViolation,
                     PreconditionError, ResourceError, StrategyHoleError)

COPS_WIN = "cops_win"
ROBBERS_WIN = "robbers_win"
NON_MONOTONE = "non_monotone"
BUDGET_EXCEEDED = "budget_exceeded"


# ---------------------------------------------------------------------------
# Histories

class History:
    """A legal position sequence starting at the initial dummy position."""

    __slots__ = ("positions", "_hash")

    def __init__(self, positions: Iterable):
        positions = tuple(positions)
        if not positions or not isinstance(positions[0], Initial):
            positions = (INITIAL,) + positions
        self.positions = positions
        self._hash = hash(positions)

    def last(self):
        return self.positions[-1]

    def append(self, pos) -> "History":
        return History(self.positions + (pos,))

    def is_strict_prefix_of(self, other: "History") -> bool:
        return (len(self.positions) < len(other.positions)
                and other.positions[:len(self.positions)] == self.positions)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, i):
        return self.positions[i]

    def __eq__(self, other):
        return isinstance(other, History) and self.positions == other.positions

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"History({len(self.positions)} positions, last={self.positions[-1]!r})"


# ---------------------------------------------------------------------------
# Strategy interfaces

class CopStrategy:
    def init_memory(self, pos: CopTurn):
        return None

    def announce(self, memory, pos: CopTurn) -> frozenset:
        raise NotImplementedError

    def update(self, memory, pos: CopTurn, announced: frozenset, newpos: CopTurn):
        return memory


class RobberStrategy:
    def initial_placement(self) -> frozenset:
        raise NotImplementedError

    def init_memory(self, pos: CopTurn):
        return None

    def respond(self, memory, pos: RobberTurn):
        """Return (new robber set, new memory)."""
        raise NotImplementedError


def _fmt_set(s) -> str:
    s = sorted(s)
    return ",".join(str(v) for v in s) if s else "-"


def _parse_set(text: str) -> frozenset:
    text = text.strip()
    if text == "-" or not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(","))


class PositionalCopStrategy(CopStrategy):
    """A finite map from cop positions to announcements."""

    def __init__(self, mapping):
        self.mapping = {(frozenset(u), frozenset(r)): frozenset(up)
                        for (u, r), up in dict(mapping).items()}

    def announce(self, memory, pos: CopTurn) -> frozenset:
        try:
            return self.mapping[(pos.U, pos.R)]
        except KeyError:
            raise StrategyHoleError(pos) from None

    def lookup(self, U, R) -> frozenset:
        return self.announce(None, CopTurn(frozenset(U), frozenset(R)))

    def cop_count(self) -> int:
        sizes = [len(up) for up in self.mapping.values()]
        sizes += [len(u) for (u, _) in self.mapping]
        return max(sizes) if sizes else 0

    def items(self):
        return self.mapping.items()

    def serialize(self) -> str:
        lines = []
        for (u, r), up in sorted(self.mapping.items(),
                                 key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1]))):
            lines.append(f"{_fmt_set(u)} ; {_fmt_set(r)} -> {_fmt_set(up)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "PositionalCopStrategy":
        mapping = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                left, up = line.split("->")
                u, r = left.split(";")
            except ValueError:
                raise PreconditionError(f"bad strategy line: {raw!r}") from None
            mapping[(_parse_set(u), _parse_set(r))] = _parse_set(up)
        return cls(mapping)


class SolverCopStrategy(CopStrategy):
    """Winning cop strategy backed by the solver's certificates (positional)."""

    def __init__(self, g: Digraph, cfg: SearchConfig, cache: GraphCache, cert):
        self.g = g
        self.cfg = cfg
        self.cache = cache
        self.cert = cert

    def announce(self, memory, pos: CopTurn) -> frozenset:
        U = mask_from(pos.U)
        reg = self.cache.reach(mask_from(pos.R), U)
        got = self.cert.get((U, reg))
        if got is None:
            raise StrategyHoleError(pos)
        return set_from(got)

    def as_positional(self, budget: Optional[int] = None) -> PositionalCopStrategy:
        """Materialize the map over every position reachable under the strategy."""
        limit = effective_budget(budget)
        g, cfg = self.g, self.cfg
        cache = self.cache
        mapping = {}
        seen = set()
        stack = []
        for t in range(1, cfg.r + 1):
            for comb in itertools.combinations(range(g.n), t):
                key = (0, mask_from(comb))
                if key not in seen:
                    seen.add(key)
                    stack.append(key)
        while stack:
            U, R = stack.pop()
            pos = CopTurn(set_from(U), set_from(R))
            ann = self.announce(None, pos)
            mapping[(pos.U, pos.R)] = ann
            up = mask_from(ann)
            escapes = cache.reach(R, U & up) & ~up
            ebits = sorted(bits(escapes))
            for t in range(1, min(cfg.r, len(ebits)) + 1):
                for comb in itertools.combinations(ebits, t):
                    key = (up, mask_from(comb))
                    if key not in seen:
                        if len(seen) >= limit:
                            raise ResourceError("strategy materialization exceeded budget",
                                                budget=limit)
                        seen.add(key)
                        stack.append(key)
        return PositionalCopStrategy(mapping)


class SolverRobberStrategy(RobberStrategy):
    """Winning robber strategy that stays inside the cop-unwinnable classes."""

    def __init__(self, g: Digraph, cfg: SearchConfig, cache: GraphCache, won):
        self.g = g
        self.cfg = cfg
        self.cache = cache
        self.won = won

    def _class_won(self, U: int, reg: int) -> bool:
        wset = self.won.get(U)
        return wset is not None and reg in wset

    def initial_placement(self) -> frozenset:
        for t in range(1, self.cfg.r + 1):
            for comb in itertools.combinations(range(self.g.n), t):
                R = mask_from(comb)
                if not self._class_won(0, self.cache.reach(R, 0)):
                    return set_from(R)
        raise StrategyHoleError(INITIAL)

    def respond(self, memory, pos: RobberTurn):
        U = mask_from(pos.U)
        up = mask_from(pos.Uprime)
        R = mask_from(pos.R)
        escapes = self.cache.reach(R, U & up) & ~up
        ebits = sorted(bits(escapes))
        fallback = None
        for t in range(1, min(self.cfg.r, len(ebits)) + 1):
            for comb in itertools.combinations(ebits, t):
                Rp = mask_from(comb)
                if fallback is None:
                    fallback = Rp
                if not self._class_won(up, self.cache.reach(Rp, up)):
                    return set_from(Rp), memory
        # cornered: every escape class is cop-won (or there is none at all)
        return set_from(fallback) if fallback is not None else frozenset(), memory


# ---------------------------------------------------------------------------
# Playouts

@dataclass
class PlayoutResult:
    verdict: str
    trace: tuple
    steps: int


def playout(g: Digraph, cfg: SearchConfig, cop_strategy: CopStrategy,
            robber_strategy: RobberStrategy, step_budget: Optional[int] = None
            ) -> PlayoutResult:
    """Drive the unique play of the two strategies; report its verdict."""
    limit = step_budget if step_budget is not None else effective_budget(None)
    trace = [INITIAL]
    R0 = frozenset(robber_strategy.initial_placement())
    if not R0 or len(R0) > cfg.r:
        raise PreconditionError(f"illegal initial placement {sorted(R0)}")
    pos = CopTurn(frozenset(), R0)
    trace.append(pos)
    cmem = cop_strategy.init_memory(pos)
    rmem = robber_strategy.init_memory(pos)
    seen = {(pos, cmem, rmem)}
    steps = 0
    while True:
        if not pos.R:
            return PlayoutResult(COPS_WIN, tuple(trace), steps)
        if steps >= limit:
            return PlayoutResult(BUDGET_EXCEEDED, tuple(trace), steps)
        ann = frozenset(cop_strategy.announce(cmem, pos))
        if len(ann) > cfg.k:
            raise PreconditionError(f"announcement {sorted(ann)} uses more than k={cfg.k} cops")
        rpos = RobberTurn(pos.U, ann, pos.R)
        trace.append(rpos)
        if not is_monotone_move(g, rpos):
            return PlayoutResult(NON_MONOTONE, tuple(trace), steps)
        Rp, rmem = robber_strategy.respond(rmem, rpos)
        Rp = frozenset(Rp)
        up_mask = mask_from(ann)
        escapes = reach_mask(g.out_masks, mask_from(pos.R), mask_from(pos.U) & up_mask) & ~up_mask
        if mask_from(Rp) & ~escapes or len(Rp) > cfg.r:
            raise AdversaryContractError(f"illegal robber move {sorted(Rp)} at {rpos!r}")
        newpos = CopTurn(ann, Rp)
        trace.append(newpos)
        cmem = cop_strategy.update(cmem, pos, ann, newpos)
        pos = newpos
        steps += 1
        state = (pos, cmem, rmem)
        if state in seen:
            return PlayoutResult(ROBBERS_WIN, tuple(trace), steps)
        seen.add(state)


# ---------------------------------------------------------------------------
# Exhaustive validation

@dataclass
class ValidationReport:
    ok: bool
    witness: Optional[tuple]
    states: int
    max_announced: int = 0

    def __bool__(self):
        return self.ok


def validate_cop_strategy(g: Digraph, cfg: SearchConfig, strat: CopStrategy,
                          budget: Optional[int] = None) -> ValidationReport:
    """Play the cop strategy against every robber line; require monotone wins."""
    limit = effective_budget(budget)
    cache = GraphCache(g)
    memo = {}
    counter = [0]
    max_ann = [0]

    def explore(cmem, U: int, R: int, path):
        key = (cmem, U, R)
        got = memo.get(key)
        if got is not None:
            return got if got is not True else True
        if key in path:
            return ("infinite play", key)
        if R == 0:
            memo[key] = True
            return True
        counter[0] += 1
        if counter[0] > limit:
            raise ResourceError("cop-strategy validation exceeded budget", budget=limit)
        pos = CopTurn(set_from(U), set_from(R))
        try:
            ann = frozenset(strat.announce(cmem, pos))
        except StrategyHoleError:
            return ("strategy hole", key)
        up = mask_from(ann)
        if len(ann) > cfg.k:
            return (f"announcement too large ({len(ann)} > {cfg.k})", key)
        max_ann[0] = max(max_ann[0], len(ann))
        rpos = RobberTurn(pos.U, ann, pos.R)
        if not is_monotone_move(g, rpos):
            return ("non-monotone announcement", key)
        escapes = cache.reach(R, U & up) & ~up
        path = path | {key}
        ebits = sorted(bits(escapes))
        for t in range(1, min(cfg.r, len(ebits)) + 1):
            for comb in itertools.combinations(ebits, t):
                Rp = mask_from(comb)
                newpos = CopTurn(ann, set_from(Rp))
                cmem2 = strat.update(cmem, pos, ann, newpos)
                got = explore(cmem2, up, Rp, path)
                if got is not True:
                    return got
        memo[key] = True
        return True

    for t in range(1, cfg.r + 1):
        for comb in itertools.combinations(range(g.n), t):
            R0 = mask_from(comb)
            pos0 = CopTurn(frozenset(), set_from(R0))
            got = explore(strat.init_memory(pos0), 0, R0, frozenset())
            if got is not True:
                return ValidationReport(False, got, counter[0], max_ann[0])
    return ValidationReport(True, None, counter[0], max_ann[0])


def _restricted_candidates(cache: GraphCache, k: int, U: int, v: int):
    """Announcements when new cops must land in the robber's component."""
    _, comp = cache.under(U)
    allowed = comp[v]
    ubits = sorted(bits(U))
    abits = sorted(bits(allowed))
    for t in range(len(ubits), -1, -1):
        for bc in itertools.combinations(ubits, t):
            B = mask_from(bc)
            room = k - t
            for t2 in range(min(room, len(abits)), -1, -1):
                for xc in itertools.combinations(abits, t2):
                    yield B | mask_from(xc)


def _free_candidates(n: int, k: int):
    for t in range(k, -1, -1):
        for comb in itertools.combinations(range(n), t):
            yield mask_from(comb)


def validate_robber_strategy(g: Digraph, cfg: SearchConfig, strat: RobberStrategy,
                             budget: Optional[int] = None,
                             require_isolating: bool = False,
                             require_prudent: bool = False) -> ValidationReport:
    """Play the robber strategy against every cop line; require survival.

    The optional flags additionally check the isolation condition at every
    reached cop position and the prudence condition at every robber move.
    """
    limit = effective_budget(budget)
    cache = GraphCache(g)
    memo = {}
    counter = [0]
    full_candidates = None
    if not cfg.restrict_to_scc:
        full_candidates = list(_free_candidates(g.n, cfg.k))

    def isolating_ok(up: int, R: int) -> bool:
        region, _ = cache.under(up)
        return not any(region[v] & (R & ~(1 << v)) for v in bits(R))

    def explore(rmem, U: int, R: int, path):
        key = (rmem, U, R)
        if memo.get(key):
            return True
        if key in path:
            return True  # a cycle is an infinite play, which robbers win
        if R == 0:
            return ("captured", key)
        counter[0] += 1
        if counter[0] > limit:
            raise ResourceError("robber-strategy validation exceeded budget", budget=limit)
        pos = CopTurn(set_from(U), set_from(R))
        path = path | {key}
        if cfg.restrict_to_scc:
            (v,) = pos.R
            cands = _restricted_candidates(cache, cfg.k, U, v)
        else:
            cands = full_candidates
        for up in cands:
            rb = cache.reach(R, U & up)
            if (U & ~up) & rb:
                continue  # non-monotone announcements lose outright
            rpos = RobberTurn(pos.U, set_from(up), pos.R)
            Rp, rmem2 = strat.respond(rmem, rpos)
            Rp_mask = mask_from(Rp)
            if Rp_mask == 0:
                return ("captured", (rmem, U, R, up))
            if Rp_mask & ~(rb & ~up) or len(Rp) > cfg.r:
                raise AdversaryContractError(
                    f"robber strategy made an illegal move at {rpos!r}: {sorted(Rp)}")
            if require_prudent and (Rp_mask & ~R) & cache.reach(R, up):
                return ("imprudent move", (rmem, U, R, up, sorted(Rp)))
            if require_isolating and not isolating_ok(up, Rp_mask):
                return ("not isolating", (rmem, U, R, up, sorted(Rp)))
            got = explore(rmem2, up, Rp_mask, path)
            if got is not True:
                return got
        memo[key] = True
        return True

    R0 = frozenset(strat.initial_placement())
    if require_isolating and not isolating_ok(0, mask_from(R0)):
        return ValidationReport(False, ("initial placement not isolating", sorted(R0)), 0)
    pos0 = CopTurn(frozenset(), R0)
    got = explore(strat.init_memory(pos0), 0, mask_from(R0), frozenset())
    if got is not True:
        return ValidationReport(False, got, counter[0])
    return ValidationReport(True, None, counter[0])


# ---------------------------------------------------------------------------
# Robber normal forms

def _member_components(cache: GraphCache, up: int, R: int):
    """Distinct SCCs of the robber vertices in the cop-deleted graph."""
    region, comp = cache.under(up)
    comps = {}
    for v in bits(R):
        comps.setdefault(comp[v], []).append(v)
    return region, comps


def antichain_reps(cache: GraphCache, up: int, R: int) -> int:
    """One smallest member per source component of R; pairwise unreachable.

    The chosen components are the ones no other member component reaches, so
    together they reach everything R reaches.
    """
    if R == 0:
        return 0
    region, comps = _member_components(cache, up, R)
    keys = sorted(comps)
    out = 0
    for cm in keys:
        reachable_from_other = any(cm & region[comps[other][0]]
                                   for other in keys if other != cm)
        if not reachable_from_other:
            out |= 1 << min(comps[cm])
    return out


def is_isolating_position(g: Digraph, U, R, cache: Optional[GraphCache] = None) -> bool:
    cache = cache or GraphCache(g)
    um = mask_from(U)
    rm = mask_from(R)
    region, _ = cache.under(um)
    for v in bits(rm):
        if region[v] & (rm & ~(1 << v)):
            return False
    return True


def is_prudent_move(g: Digraph, U, Uprime, R, Rprime,
                    cache: Optional[GraphCache] = None) -> bool:
    cache = cache or GraphCache(g)
    um, upm, rm, rpm = (mask_from(x) for x in (U, Uprime, R, Rprime))
    fresh = rpm & ~rm
    return fresh & cache.reach(rm, upm) == 0


class _MirrorRobberStrategy(RobberStrategy):
    """Shared plumbing for the normal-form transforms: the transformed robbers
    shadow a play of the original strategy and normalize each of its moves."""

    def __init__(self, g: Digraph, cfg: SearchConfig, inner: RobberStrategy):
        self.g = g
        self.cfg = cfg
        self.inner = inner
        self.cache = GraphCache(g)

    def initial_placement(self) -> frozenset:
        R0 = frozenset(self.inner.initial_placement())
        return set_from(antichain_reps(self.cache, 0, mask_from(R0)))

    def init_memory(self, pos: CopTurn):
        R0 = frozenset(self.inner.initial_placement())
        inner_mem = self.inner.init_memory(CopTurn(frozenset(), R0))
        return (inner_mem, R0)

    def _mirror_move(self, memory, pos: RobberTurn):
        inner_mem, Rm = memory
        mirror_pos = RobberTurn(pos.U, pos.Uprime, Rm)
        Rp, inner_mem2 = self.inner.respond(inner_mem, mirror_pos)
        return frozenset(Rp), inner_mem2


class IsolatingRobberStrategy(_MirrorRobberStrategy):
    """Keeps one robber per source component of the shadowed robber set."""

    def respond(self, memory, pos: RobberTurn):
        Rp, inner_mem2 = self._mirror_move(memory, pos)
        up = mask_from(pos.Uprime)
        picked = antichain_reps(self.cache, up, mask_from(Rp))
        return set_from(picked), (inner_mem2, Rp)


class PrudentRobberStrategy(_MirrorRobberStrategy):
    """Moves a robber only onto vertices the landing cops are about to cut off.

    Every source component of the shadowed target set must stay covered:
    by a robber that can simply stay put if one still reaches it, otherwise
    by a fresh representative, which is then provably unreachable from the
    standing robbers and hence a prudent move.  A final antichain reduction
    keeps the output isolating as well.
    """

    def respond(self, memory, pos: RobberTurn):
        Rp, inner_mem2 = self._mirror_move(memory, pos)
        cache = self.cache
        up = mask_from(pos.Uprime)
        cur = mask_from(pos.R)
        stay = cur & ~up
        region, _ = cache.under(up)
        target = mask_from(Rp)
        chosen = 0
        _, comps = _member_components(cache, up, target)
        keys = sorted(comps)
        for cm in keys:
            if any(cm & region[comps[o][0]] for o in keys if o != cm):
                continue  # a non-source component stays covered through its source
            coverer = next((s for s in sorted(bits(stay)) if region[s] & cm), None)
            if coverer is not None:
                chosen |= 1 << coverer
            else:
                chosen |= 1 << min(comps[cm])
        picked = antichain_reps(cache, up, chosen)
        fresh = picked & ~cur
        if fresh & cache.reach(cur, up):
            raise InvariantViolation("prudence", f"fresh robbers {sorted(bits(fresh))} "
                                                 f"still reachable at {pos!r}")
        return set_from(picked), (inner_mem2, Rp)


def isolating_transform(g: Digraph, cfg: SearchConfig, robber_strategy: RobberStrategy,
                        budget: Optional[int] = None, validate: bool = True
                        ) -> RobberStrategy:
    """Turn a winning robber strategy into an isolating winning one."""
    if validate:
        rep = validate_robber_strategy(g, cfg, robber_strategy, budget=budget)
        if not rep.ok:
            raise PreconditionError(f"input robber strategy is not winning: {rep.witness}")
    return IsolatingRobberStrategy(g, cfg, robber_strategy)


def prudent_transform(g: Digraph, cfg: SearchConfig, robber_strategy: RobberStrategy,
                      budget: Optional[int] = None, validate: bool = True
                      ) -> RobberStrategy:
    """Turn a winning robber strategy into a prudent (and isolating) one."""
    if validate:
        rep = validate_robber_strategy(g, cfg, robber_strategy, budget=budget)
        if not rep.ok:
            raise PreconditionError(f"input robber strategy is not winning: {rep.witness}")
    return PrudentRobberStrategy(g, cfg, robber_strategy)


# ---------------------------------------------------------------------------
# Cop-strategy cleanup

def _useful_subset(cache: GraphCache, standing: int, announced: int, v: int) -> int:
    """Drop newly placed cops outside the robber's cone; keep standing ones.

    In a monotone play the cone of paths avoiding the standing cops equals
    the cone during the move, so a new cop outside it can never block the
    robber and dropping it changes nothing the robber can see.
    """
    cone = cache.reach(1 << v, standing)
    return (announced & standing) | (announced & cone)


def cleanup_strategy(g: Digraph, f: PositionalCopStrategy, k: Optional[int] = None,
                     budget: Optional[int] = None, validate: bool = True
                     ) -> PositionalCopStrategy:
    """Normalize a positional monotone winning one-robber cop strategy.

    The output never announces a cop on a vertex the robber cannot reach and
    always places at least one new cop, with every new cop inside the
    robber's current cone.  Idle stretches of the input are compressed by
    following its own play with the robber parked.
    """
    if k is None:
        k = f.cop_count()
    cfg = SearchConfig(k=k, r=1)
    if validate:
        rep = validate_cop_strategy(g, cfg, f, budget=budget)
        if not rep.ok:
            raise PreconditionError(f"input cop strategy is not monotone winning: {rep.witness}")
    cache = GraphCache(g)

    # Pass 1: drop useless placements, carrying a witness position of f.
    fhat = {}
    witness = {}
    stack = []
    for v in range(g.n):
        key = (0, v)
        witness[key] = 0
        stack.append(key)
    while stack:
        U, v = stack.pop()
        if (U, v) in fhat:
            continue
        w = witness[(U, v)]
        ann = mask_from(f.lookup(set_from(w), {v}))
        A = _useful_subset(cache, U, ann, v)
        if cache.reach(1 << v, w) != cache.reach(1 << v, U):
            raise InvariantViolation(
                "cleanup-cone", f"robber cone differs from the uncleaned play at "
                                f"(U={sorted(bits(U))}, v={v})")
        fhat[(U, v)] = A
        escapes = cache.reach(1 << v, U & A) & ~A
        for v2 in bits(escapes):
            key = (A, v2)
            if key not in witness:
                witness[key] = ann
                stack.append(key)

    # Pass 2: compress stretches that add no cop outside the current set.
    ftilde = {}
    stack = [(0, v) for v in range(g.n)]
    explored = set(stack)
    while stack:
        U, v = stack.pop()
        sigma = U
        seen_sigma = {sigma}
        while True:
            a = fhat[(sigma, v)]
            if a & ~U:
                break
            sigma = a
            if sigma in seen_sigma:
                raise PreconditionError("input strategy idles forever against a "
                                        f"parked robber at (U={sorted(bits(U))}, v={v})")
            seen_sigma.add(sigma)
        new = a & ~U
        if new & ~cache.reach(1 << v, U):
            raise InvariantViolation(
                "cleanup-normal-form",
                f"new cops {sorted(bits(new & ~cache.reach(1 << v, U)))} are outside "
                f"the robber cone at (U={sorted(bits(U))}, v={v})")
        ftilde[(set_from(U), frozenset({v}))] = set_from(a)
        escapes = cache.reach(1 << v, U & a) & ~a
        for v2 in bits(escapes):
            key = (a, v2)
            if key not in explored:
                explored.add(key)
                stack.append(key)
    return PositionalCopStrategy(ftilde)
