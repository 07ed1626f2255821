"""The strategy multiplier: one-robber cop strategies lifted to r robbers.

A memory state tracks a chain of one-robber play histories, one per robber
team, together with the robbers attached to each history and the placements
that were deliberately omitted because an earlier team's robber could still
reach them.  Every documented invariant of the construction is re-checked at
runtime from fresh reachability computations; a violation raises with the
invariant's name and witness vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .arena import CopTurn, GraphCache, RobberTurn
from .digraph import Digraph, bits, is_strongly_connected, mask_from, set_from
from .errors import (AdversaryContractError, InvariantViolation,
                     PreconditionError, ResourceError, StrategyHoleError)
from .strategy import (CopStrategy, History, PositionalCopStrategy,
                       cleanup_strategy, is_isolating_position)

CASE_WON = "Won"
CASE_I_EMPTY = "I-empty"
CASE_I_NONEMPTY = "I-nonempty"
CASE_II_1A = "II.1a"
CASE_II_1B = "II.1b"
CASE_II_1C = "II.1c"
CASE_II_2 = "II.2"


@dataclass(frozen=True)
class HistoryEntry:
    """One non-final chain element: a history, its robbers, its omitted set."""
    rho: History
    Rset: frozenset
    Oset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "Rset", frozenset(self.Rset))
        object.__setattr__(self, "Oset", frozenset(self.Oset))


@dataclass(frozen=True)
class MemoryZeta:
    """The multiplier's memory: entries 1..s-1 plus the longest history."""
    entries: tuple
    rho_s: History

    @property
    def s(self) -> int:
        return len(self.entries) + 1

    def rho(self, i: int) -> History:
        """1-indexed history access."""
        if i == self.s:
            return self.rho_s
        return self.entries[i - 1].rho


def _last_robber_turn(rho: History):
    last = rho.last()
    if not isinstance(last, RobberTurn):
        raise InvariantViolation("shape", f"history must end in a robber position, got {last!r}")
    (b,) = last.R
    return mask_from(last.U), mask_from(last.Uprime), b


def _last_parts(rho: History):
    """(W, b, ends_in_cop_position, W_preceding_or_None) of a history's last position."""
    last = rho.last()
    if isinstance(last, CopTurn):
        (b,) = last.R
        return mask_from(last.U), b, True, None
    if isinstance(last, RobberTurn):
        (b,) = last.R
        return mask_from(last.Uprime), b, False, mask_from(last.U)
    raise InvariantViolation("shape", f"unexpected last position {last!r}")


class _Derivation:
    """Index-1 arrays of the per-history and cumulative sets, as masks."""

    def __init__(self, zeta: MemoryZeta):
        s = zeta.s
        self.s = s
        self.W = [0] * (s + 1)
        self.Wm1 = [0] * (s + 1)
        self.b = [0] * (s + 1)
        self.Rset = [0] * (s + 1)
        self.Oset = [0] * (s + 1)
        self.ends_cop = [False] * (s + 1)
        for i, entry in enumerate(zeta.entries, start=1):
            wm1, w, bv = _last_robber_turn(entry.rho)
            self.W[i], self.Wm1[i], self.b[i] = w, wm1, bv
            self.Rset[i] = mask_from(entry.Rset)
            self.Oset[i] = mask_from(entry.Oset)
        w, bv, ends_cop, wm1 = _last_parts(zeta.rho_s)
        self.W[s], self.b[s], self.ends_cop[s] = w, bv, ends_cop
        self.Wm1[s] = wm1 if wm1 is not None else 0
        self.Ocum = [0] * (s + 1)   # O^i over i <= s-1
        for i in range(1, s):
            self.Ocum[i] = self.Ocum[i - 1] | self.Oset[i]
        self.U_ = [0] * (s + 1)
        self.Ucum = [0] * (s + 1)
        self.Wcum = [0] * (s + 1)
        for i in range(1, s + 1):
            self.U_[i] = self.W[i] & ~self.Ocum[min(i - 1, s - 1)]
            self.Ucum[i] = self.Ucum[i - 1] | self.U_[i]
            self.Wcum[i] = self.Wcum[i - 1] | self.W[i]


@dataclass(frozen=True)
class DerivedSets:
    """Frozenset view of the derived per-index and cumulative sets."""
    W: tuple
    W_before: tuple
    pursued: tuple
    teams: tuple
    teams_cum: tuple
    omitted_cum: tuple
    top_robbers: frozenset


def derived_sets(g: Digraph, zeta: MemoryZeta, R) -> DerivedSets:
    d = _Derivation(zeta)
    Rm = mask_from(R)
    s = d.s
    top = frozenset({d.b[s]}) if (Rm >> d.b[s]) & 1 else frozenset()
    return DerivedSets(
        W=tuple(set_from(d.W[i]) for i in range(1, s + 1)),
        W_before=tuple(set_from(d.Wm1[i]) for i in range(1, s + 1)),
        pursued=tuple(d.b[i] for i in range(1, s + 1)),
        teams=tuple(set_from(d.U_[i]) for i in range(1, s + 1)),
        teams_cum=tuple(set_from(d.Ucum[i]) for i in range(1, s + 1)),
        omitted_cum=tuple(set_from(d.Ocum[i]) for i in range(1, s)),
        top_robbers=top,
    )


# ---------------------------------------------------------------------------
# Invariants

@dataclass
class CheckItem:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class InvariantReport:
    items: list

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    def first_violation(self):
        for it in self.items:
            if not it.passed:
                return it
        return None

    def as_json(self):
        return {"passed": self.passed,
                "items": [{"name": it.name, "passed": it.passed, "witness": it.witness}
                          for it in self.items]}


def _history_consistent(g: Digraph, cache: GraphCache, f: PositionalCopStrategy,
                        rho: History):
    """Is the history a legal play whose cop moves all follow f?"""
    positions = rho.positions
    if len(positions) < 2:
        return False, "history has no placement"
    if not isinstance(positions[1], CopTurn) or positions[1].U:
        return False, f"first placement must have no cops, got {positions[1]!r}"
    for a, b in zip(positions[1:], positions[2:]):
        if isinstance(a, CopTurn):
            if not isinstance(b, RobberTurn) or b.U != a.U or b.R != a.R:
                return False, f"{b!r} does not follow {a!r}"
            try:
                want = f.lookup(a.U, a.R)
            except StrategyHoleError:
                return False, f"base strategy undefined at {a!r}"
            if b.Uprime != want:
                return False, f"announcement {sorted(b.Uprime)} differs from base move {sorted(want)}"
        else:
            if not isinstance(b, CopTurn) or b.U != a.Uprime:
                return False, f"{b!r} does not follow {a!r}"
            (v0,) = a.R
            (v1,) = b.R
            legal = cache.reach(1 << v0, mask_from(a.U) & mask_from(a.Uprime)) & ~mask_from(a.Uprime)
            if not (legal >> v1) & 1:
                return False, f"robber move {v0}->{v1} illegal at {a!r}"
    return True, ""


def _vs(mask: int) -> str:
    return "{" + ",".join(str(v) for v in bits(mask)) + "}"


def check_invariants(g: Digraph, pos: CopTurn, zeta: MemoryZeta,
                     f: Optional[PositionalCopStrategy] = None,
                     cache: Optional[GraphCache] = None) -> InvariantReport:
    """Re-derive every invariant of the memory state from scratch.

    Evaluates the seven core invariants, the anchoring side condition on the
    longest history, and the derived diagnostics, all with fresh reachability
    computations so the checker shares nothing with the update code.
    """
    cache = cache or GraphCache(g)
    items = []
    d = _Derivation(zeta)
    s = d.s
    Rm = mask_from(pos.R)
    Um = mask_from(pos.U)
    R_s = (1 << d.b[s]) if (Rm >> d.b[s]) & 1 else 0

    # chain: the histories strictly extend one another
    ok, wit = True, ""
    for i in range(1, s):
        if not zeta.rho(i).is_strict_prefix_of(zeta.rho(i + 1)):
            ok, wit = False, f"history {i} is not a strict prefix of history {i + 1}"
            break
    items.append(CheckItem("chain", ok, wit))

    # partition: the attached robber sets split R
    union = R_s
    ok, wit = True, ""
    for i in range(1, s):
        if d.Rset[i] & union:
            ok, wit = False, f"robber sets overlap at {_vs(d.Rset[i] & union)}"
            break
        union |= d.Rset[i]
    if ok and union != Rm:
        ok, wit = False, f"attached robbers {_vs(union)} != position robbers {_vs(Rm)}"
    items.append(CheckItem("partition", ok, wit))

    # cover: cops on the graph are exactly the union of the teams
    cover = d.Ucum[s]
    items.append(CheckItem("cover", cover == Um,
                           "" if cover == Um else f"teams {_vs(cover)} != cops {_vs(Um)}"))

    # anchor: while the top robber is on the graph, its history awaits a move
    ok = not ((Rm >> d.b[s]) & 1) or d.ends_cop[s]
    items.append(CheckItem("anchor", ok,
                           "" if ok else "top history does not end in a cop position"))

    # omit-closed: omitted sets contain their robbers and absorb reachability
    ok, wit = True, ""
    for i in range(1, s):
        if d.Rset[i] & ~d.Oset[i]:
            ok, wit = False, f"robbers {_vs(d.Rset[i] & ~d.Oset[i])} outside omitted set {i}"
            break
        closed = cache.reach(d.Oset[i], d.W[i])
        if closed != d.Oset[i]:
            ok, wit = False, f"omitted set {i} not closed: reaches {_vs(closed & ~d.Oset[i])}"
            break
    items.append(CheckItem("omit-closed", ok, wit))

    # omit-bounded: omitted sets stay inside their robber's old cone
    ok, wit = True, ""
    for i in range(1, s):
        cone = cache.reach(1 << d.b[i], d.Wm1[i])
        if d.Oset[i] & ~cone:
            ok, wit = False, f"omitted set {i} leaves the cone at {_vs(d.Oset[i] & ~cone)}"
            break
    items.append(CheckItem("omit-bounded", ok, wit))

    # consistent: every stored history is a legal play of the base strategy
    ok, wit = True, ""
    if f is not None:
        for i in range(1, s + 1):
            good, why = _history_consistent(g, cache, f, zeta.rho(i))
            if not good:
                ok, wit = False, f"history {i}: {why}"
                break
    items.append(CheckItem("consistent", ok, wit))

    # progress: no later robber sits inside an earlier omitted set
    ok, wit = True, ""
    for i in range(2, s):
        if d.Rset[i] & d.Ocum[i - 1]:
            ok, wit = False, f"robbers {_vs(d.Rset[i] & d.Ocum[i - 1])} of history {i} " \
                             f"inside earlier omitted set"
            break
    if ok and R_s and (d.Ocum[s - 1] >> d.b[s]) & 1:
        ok, wit = False, f"top robber {d.b[s]} inside an omitted set"
    items.append(CheckItem("progress", ok, wit))

    # diagnostics implied by the invariants
    if f is not None:
        ok, wit = True, ""
        for i in range(1, s):
            for b in bits(d.Rset[i]):
                ext = zeta.rho(i).append(CopTurn(set_from(d.W[i]), frozenset({b})))
                good, why = _history_consistent(g, cache, f, ext)
                if not good:
                    ok, wit = False, f"robber {b} not consistent with history {i}: {why}"
                    break
            if not ok:
                break
        items.append(CheckItem("member-consistency", ok, wit))

    ok, wit = True, ""
    for i in range(1, s):
        for b in bits(d.Rset[i]):
            if cache.reach(1 << b, d.W[i]) != cache.reach(1 << b, d.Wcum[i]):
                ok, wit = False, f"robber {b}: cone under team {i} differs from cone " \
                                 f"under all earlier teams"
                break
        if not ok:
            break
    if ok and cache.reach(1 << d.b[s], d.W[s]) != cache.reach(1 << d.b[s], d.Wcum[s]):
        ok, wit = False, "top robber cone differs under cumulative placements"
    items.append(CheckItem("team-region", ok, wit))

    ok, wit = True, ""
    for i in range(1, s):
        spill = cache.reach(d.Rset[i], d.Ucum[i]) & ~d.Ocum[i]
        if spill:
            ok, wit = False, f"robbers of history {i} reach {_vs(spill)} outside omitted sets"
            break
    items.append(CheckItem("omitted-absorbs", ok, wit))

    ok, wit = True, ""
    for i in range(1, s):
        for b in bits(d.Rset[i]):
            if cache.reach(1 << b, Um) != cache.reach(1 << b, d.Ucum[i]):
                ok, wit = False, f"robber {b}: region shrinks under later teams"
                break
        if not ok:
            break
    items.append(CheckItem("region-unchanged", ok, wit))

    return InvariantReport(items)


def _raise_on_violation(report: InvariantReport, where: str):
    bad = report.first_violation()
    if bad is not None:
        raise InvariantViolation(bad.name, f"{where}: {bad.witness}")


# ---------------------------------------------------------------------------
# Memory initialization and updates

def init_memory(g: Digraph, first_robber_set) -> MemoryZeta:
    """Memory after the robbers' opening placement (a single vertex)."""
    R0 = frozenset(first_robber_set)
    if not is_strongly_connected(g):
        raise PreconditionError("the multiplier is defined on strongly connected graphs")
    if len(R0) != 1:
        raise PreconditionError(f"unsupported initial split: {sorted(R0)}")
    rho1 = History((CopTurn(frozenset(), R0),))
    return MemoryZeta((), rho1)


def cop_move_multiply(g: Digraph, f: PositionalCopStrategy, pos: CopTurn,
                      zeta: MemoryZeta, check: bool = True,
                      cache: Optional[GraphCache] = None):
    """One cop move: returns (announcement, new memory, case tag)."""
    cache = cache or GraphCache(g)
    if check:
        _raise_on_violation(check_invariants(g, pos, zeta, f=f, cache=cache),
                            "on entry to the cop move")
    d = _Derivation(zeta)
    s = d.s
    Rm = mask_from(pos.R)
    Um = mask_from(pos.U)

    if not (Rm >> d.b[s]) & 1:
        # the pursued top robber left the graph
        if s == 1:
            return pos.U, zeta, CASE_WON
        Uprime = d.Ucum[s - 1]
        top = zeta.entries[-1]
        if not top.Rset:
            rho_new = top.rho.append(CopTurn(set_from(d.W[s - 1]), frozenset({d.b[s]})))
            zeta2 = MemoryZeta(zeta.entries[:-1], rho_new)
            tag = CASE_I_EMPTY
        else:
            b = min(top.Rset)
            rest = mask_from(top.Rset) & ~(1 << b)
            O_t = cache.reach(rest, d.W[s - 1])
            entry = HistoryEntry(top.rho, set_from(rest), set_from(O_t))
            rho_new = top.rho.append(CopTurn(set_from(d.W[s - 1]), frozenset({b})))
            zeta2 = MemoryZeta(zeta.entries[:-1] + (entry,), rho_new)
            tag = CASE_I_NONEMPTY
    else:
        empties = [i for i in range(1, s) if d.Rset[i] == 0]
        if empties:
            i = min(empties)
            rho_i = zeta.rho(i)
            rho_next = zeta.rho(i + 1)
            step = rho_next[len(rho_i)]
            if not isinstance(step, CopTurn) or mask_from(step.U) != d.W[i]:
                raise InvariantViolation("chain", f"history {i + 1} does not continue "
                                                  f"history {i} with its announced cops")
            (b_t,) = step.R
            if len(rho_next) == len(rho_i) + 1:
                if i + 1 != s:
                    raise InvariantViolation("shape", "an intermediate history ends in a "
                                                      "cop position")
                zeta2 = MemoryZeta(zeta.entries[:i - 1] + zeta.entries[i:], zeta.rho_s)
                Uprime = Um
                tag = CASE_II_1A
            else:
                W_t = mask_from(f.lookup(set_from(d.W[i]), {b_t}))
                Uprime = (W_t & ~d.Ocum[i - 1])
                for j in range(1, s + 1):
                    if j != i:
                        Uprime |= d.U_[j]
                O_t = (d.Oset[i] & cache.reach(1 << b_t, d.W[i])) & ~W_t
                rho_t = rho_i.append(step).append(
                    RobberTurn(set_from(d.W[i]), set_from(W_t), frozenset({b_t})))
                if rho_t != rho_next:
                    entry = HistoryEntry(rho_t, zeta.entries[i - 1].Rset, set_from(O_t))
                    zeta2 = MemoryZeta(zeta.entries[:i - 1] + (entry,) + zeta.entries[i:],
                                       zeta.rho_s)
                    tag = CASE_II_1B
                else:
                    if i + 1 == s:
                        raise InvariantViolation("shape", "cannot merge into the top history")
                    nxt = zeta.entries[i]
                    merged = HistoryEntry(nxt.rho, nxt.Rset, nxt.Oset | set_from(O_t))
                    zeta2 = MemoryZeta(zeta.entries[:i - 1] + (merged,) + zeta.entries[i + 1:],
                                       zeta.rho_s)
                    tag = CASE_II_1C
        else:
            if not d.ends_cop[s]:
                raise InvariantViolation("anchor", "pursuing the top robber but its history "
                                                   "already holds an announcement")
            W_t = mask_from(f.lookup(set_from(d.W[s]), {d.b[s]}))
            Uprime = W_t & ~d.Ocum[s - 1]
            for j in range(1, s):
                Uprime |= d.U_[j]
            rho_new = zeta.rho_s.append(
                RobberTurn(set_from(d.W[s]), set_from(W_t), frozenset({d.b[s]})))
            zeta2 = MemoryZeta(zeta.entries, rho_new)
            tag = CASE_II_2

    if check:
        spoiled = (Um & ~Uprime) & cache.reach(Rm, Um & Uprime)
        if spoiled:
            raise InvariantViolation("monotone", f"move abandons {_vs(spoiled)} while "
                                                 f"robbers reach it")
        d2 = _Derivation(zeta2)
        if tag != CASE_WON and d2.Ucum[d2.s] != Uprime:
            raise InvariantViolation("cover", f"teams {_vs(d2.Ucum[d2.s])} != announced "
                                              f"{_vs(Uprime)} after the move")
    return set_from(Uprime), zeta2, tag


def robber_update_multiply(g: Digraph, pos_before: CopTurn, rprime,
                           zeta: MemoryZeta, snapshot: Optional[MemoryZeta] = None,
                           check: bool = True,
                           cache: Optional[GraphCache] = None) -> MemoryZeta:
    """Fold the robbers' move into the memory.

    `pos_before` is the cop position from which the last announcement was
    made; `zeta` is the memory right after the cop move; `snapshot`, when
    given, is the memory before the cop move and enables the reattachment
    bound check.
    """
    cache = cache or GraphCache(g)
    Rp = mask_from(rprime)
    R = mask_from(pos_before.R)
    d = _Derivation(zeta)
    s = d.s
    if Rp == R and d.ends_cop[s]:
        return zeta
    # when the robbers stand still right after a move on the top robber, the
    # pending announcement still has to be folded into the top history
    Uprime = d.Ucum[s]
    U_before = mask_from(pos_before.U)

    legal = cache.reach(R, U_before & Uprime) & ~Uprime
    if Rp & ~legal:
        raise AdversaryContractError(f"robbers moved to unreachable vertices "
                                     f"{_vs(Rp & ~legal)}")
    fresh = Rp & ~R
    if fresh & cache.reach(R, Uprime):
        raise AdversaryContractError(f"imprudent move: {_vs(fresh & cache.reach(R, Uprime))} "
                                     f"still reachable once the cops land")
    if not is_isolating_position(g, set_from(Uprime), set_from(Rp), cache=cache):
        raise AdversaryContractError(f"robber set {_vs(Rp)} is not isolating")

    if check and (Rp & ~R) and not (R >> d.b[s]) & 1:
        raise InvariantViolation("shape", "robbers took fresh vertices although the "
                                          "cops only removed guards")

    # attach every robber to the first omitted set that contains it
    assigned = [0] * (s + 1)
    for b in bits(Rp):
        i = next((j for j in range(1, s) if (d.Oset[j] >> b) & 1), s)
        assigned[i] |= 1 << b

    if check and snapshot is not None:
        sd = _Derivation(snapshot)
        if sd.b[sd.s] == d.b[s]:  # the cop move kept pursuing the same robber
            bound = cache.reach(1 << sd.b[sd.s], sd.W[sd.s])
            if assigned[s] & ~bound:
                raise InvariantViolation(
                    "reattachment", f"robbers {_vs(assigned[s] & ~bound)} attached to the "
                                    f"top history but outside the pursued robber's cone")
    if check and d.ends_cop[s] and assigned[s] & ~(1 << d.b[s]):
        raise InvariantViolation(
            "top-stability", f"top history rests at a cop position but gained robbers "
                             f"{_vs(assigned[s] & ~(1 << d.b[s]))}")

    new_entries = tuple(
        HistoryEntry(zeta.entries[i - 1].rho, set_from(assigned[i]),
                     zeta.entries[i - 1].Oset)
        for i in range(1, s))
    if not d.ends_cop[s] and assigned[s]:
        b = min(bits(assigned[s]))
        rest = assigned[s] & ~(1 << b)
        rho_new = zeta.rho_s.append(CopTurn(set_from(d.W[s]), frozenset({b})))
        if rest:
            O_t = cache.reach(rest, d.W[s])
            entry = HistoryEntry(zeta.rho_s, set_from(rest), set_from(O_t))
            zeta2 = MemoryZeta(new_entries + (entry,), rho_new)
        else:
            # nobody else stays attached to the old top history, so the
            # extension replaces it instead of leaving an empty stub behind
            zeta2 = MemoryZeta(new_entries, rho_new)
    else:
        zeta2 = MemoryZeta(new_entries, zeta.rho_s)

    if check:
        _raise_on_violation(check_invariants(g, CopTurn(set_from(Uprime), set_from(Rp)),
                                             zeta2, cache=cache),
                            "after the robbers' move")
    return zeta2


# ---------------------------------------------------------------------------
# The packaged memory strategy

class MultiplyStrategy(CopStrategy):
    """r*k-cop memory strategy that simulates k-cop play against each robber."""

    def __init__(self, g: Digraph, f: PositionalCopStrategy, r: int, k: int,
                 check: bool = True):
        self.g = g
        self.f = f
        self.r = r
        self.k = k
        self.check = check
        self.cache = GraphCache(g)
        self.last_tag = None

    def init_memory(self, pos: CopTurn):
        return init_memory(self.g, pos.R)

    def _chain_bound_ok(self, zeta: MemoryZeta):
        if zeta.s > self.r + 1:
            raise InvariantViolation("chain-bound", f"{zeta.s} histories for r={self.r}")
        if zeta.s == self.r + 1:
            d = _Derivation(zeta)
            if d.W[zeta.s] != d.W[zeta.s - 1]:
                raise InvariantViolation(
                    "chain-bound", "a full chain must repeat its last placement set")

    def announce(self, memory, pos: CopTurn) -> frozenset:
        up, zeta2, tag = cop_move_multiply(self.g, self.f, pos, memory,
                                           check=self.check, cache=self.cache)
        self.last_tag = tag
        if len(up) > self.r * self.k:
            raise InvariantViolation("cop-bound", f"{len(up)} cops announced, "
                                                  f"bound is {self.r * self.k}")
        if self.check:
            self._chain_bound_ok(zeta2)
        return up

    def update(self, memory, pos: CopTurn, announced: frozenset, newpos: CopTurn):
        up, zeta2, tag = cop_move_multiply(self.g, self.f, pos, memory,
                                           check=False, cache=self.cache)
        if up != announced:
            raise InvariantViolation("determinism", "recomputed announcement differs")
        out = robber_update_multiply(self.g, pos, newpos.R, zeta2, snapshot=memory,
                                     check=self.check, cache=self.cache)
        if self.check:
            self._chain_bound_ok(out)
        return out


def multiply_strategy(g: Digraph, f: PositionalCopStrategy, r: int,
                      k: Optional[int] = None, normalize: bool = True,
                      budget: Optional[int] = None, check: bool = True
                      ) -> MultiplyStrategy:
    """Package the multiplier for r robbers from a one-robber strategy.

    The base strategy is normalized first (every move places a new cop,
    only on robber-reachable vertices); the construction assumes exactly
    that shape.
    """
    if not is_strongly_connected(g):
        raise PreconditionError("the multiplier is defined on strongly connected graphs")
    if r < 1:
        raise PreconditionError("r must be at least 1")
    if normalize:
        f = cleanup_strategy(g, f, budget=budget)
    if k is None:
        k = f.cop_count()
    return MultiplyStrategy(g, f, r, k, check=check)


# ---------------------------------------------------------------------------
# Adversaries and exhaustive validation

def enumerate_prudent_isolating_moves(g: Digraph, pos: RobberTurn, r: int,
                                      cache: Optional[GraphCache] = None):
    """All legal prudent isolating robber responses, largest sets first."""
    cache = cache or GraphCache(g)
    U = mask_from(pos.U)
    up = mask_from(pos.Uprime)
    R = mask_from(pos.R)
    legal = cache.reach(R, U & up) & ~up
    blocked_fresh = cache.reach(R, up)
    region, _ = cache.under(up)
    ebits = sorted(bits(legal))
    out = []
    for t in range(min(r, len(ebits)), -1, -1):
        for comb in itertools.combinations(ebits, t):
            Rp = mask_from(comb)
            if (Rp & ~R) & blocked_fresh:
                continue
            if any(region[v] & (Rp & ~(1 << v)) for v in comb):
                continue
            out.append(set_from(Rp))
    return out


@dataclass
class AdversarialReport:
    ok: bool
    witness: Optional[object]
    states: int
    max_cops: int
    case_counts: dict


def exhaust_prudent_isolating(g: Digraph, strat: MultiplyStrategy,
                              budget: Optional[int] = None) -> AdversarialReport:
    """Play the multiplier against every prudent isolating robber line.

    Every branch must reach a monotone capture within the budget; any repeat
    of a (memory, position) state would be an infinite play and fails.
    """
    from .arena import effective_budget
    limit = effective_budget(budget)
    cache = strat.cache
    r = strat.r
    memo = {}
    counter = [0]
    max_cops = [0]
    cases = {}

    def explore(zeta, U: int, R: int, path):
        key = (zeta, U, R)
        if key in memo:
            return True
        if key in path:
            return ("play never ends", key)
        if R == 0:
            return True
        counter[0] += 1
        if counter[0] > limit:
            raise ResourceError("adversarial search exceeded budget", budget=limit)
        pos = CopTurn(set_from(U), set_from(R))
        ann = strat.announce(zeta, pos)
        cases[strat.last_tag] = cases.get(strat.last_tag, 0) + 1
        max_cops[0] = max(max_cops[0], len(ann))
        up = mask_from(ann)
        spoiled = (U & ~up) & cache.reach(R, U & up)
        if spoiled:
            return (f"non-monotone announcement abandoning {_vs(spoiled)}", key)
        rpos = RobberTurn(pos.U, ann, pos.R)
        path = path | {key}
        for Rp in enumerate_prudent_isolating_moves(g, rpos, r, cache=cache):
            newpos = CopTurn(ann, Rp)
            zeta2 = strat.update(zeta, pos, ann, newpos)
            got = explore(zeta2, up, mask_from(Rp), path)
            if got is not True:
                return got
        memo[key] = True
        return True

    for v in range(g.n):
        pos0 = CopTurn(frozenset(), frozenset({v}))
        zeta0 = strat.init_memory(pos0)
        got = explore(zeta0, 0, 1 << v, frozenset())
        if got is not True:
            return AdversarialReport(False, got, counter[0], max_cops[0], cases)
    return AdversarialReport(True, None, counter[0], max_cops[0], cases)


def _pos_json(pos):
    if isinstance(pos, CopTurn):
        return {"type": "cop", "U": sorted(pos.U), "R": sorted(pos.R)}
    if isinstance(pos, RobberTurn):
        return {"type": "robber", "U": sorted(pos.U), "U'": sorted(pos.Uprime),
                "R": sorted(pos.R)}
    return {"type": "initial"}


def zeta_json(zeta: MemoryZeta):
    return {
        "entries": [{"rho": [_pos_json(p) for p in e.rho],
                     "R": sorted(e.Rset), "O": sorted(e.Oset)} for e in zeta.entries],
        "rho_s": [_pos_json(p) for p in zeta.rho_s],
    }


def traced_run(g: Digraph, strat: MultiplyStrategy, step_budget: int = 10_000):
    """One full play against a splitting adversary, as JSON-able records.

    The adversary keeps as many robbers alive as it can; every half-move is
    recorded together with a fresh invariant report.
    """
    cache = strat.cache
    records = []
    v0 = 0
    pos = CopTurn(frozenset(), frozenset({v0}))
    zeta = strat.init_memory(pos)
    records.append({"step": 0, "mover": "robbers", "U": [], "U'": None,
                    "R": sorted(pos.R), "case_tag": None,
                    "zeta": zeta_json(zeta),
                    "invariant_report": check_invariants(g, pos, zeta, f=strat.f,
                                                         cache=cache).as_json()})
    step = 0
    while pos.R and step < step_budget:
        step += 1
        ann = strat.announce(zeta, pos)
        tag = strat.last_tag
        rpos = RobberTurn(pos.U, ann, pos.R)
        records.append({"step": step, "mover": "cops", "U": sorted(pos.U),
                        "U'": sorted(ann), "R": sorted(pos.R), "case_tag": tag,
                        "zeta": zeta_json(zeta), "invariant_report": None})
        moves = enumerate_prudent_isolating_moves(g, rpos, strat.r, cache=cache)
        Rp = moves[0] if moves else frozenset()
        newpos = CopTurn(ann, Rp)
        zeta = strat.update(zeta, pos, ann, newpos)
        pos = newpos
        step += 1
        records.append({"step": step, "mover": "robbers", "U": sorted(pos.U),
                        "U'": None, "R": sorted(pos.R), "case_tag": None,
                        "zeta": zeta_json(zeta),
                        "invariant_report": check_invariants(g, pos, zeta, f=strat.f,
                                                             cache=cache).as_json()})
    return records
