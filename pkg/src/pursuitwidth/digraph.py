"""Directed graphs on dense integer vertices.

Vertices are 0..n-1.  Edges form a set of ordered pairs (no duplicates,
self-loops allowed).  Vertex sets cross the public API as frozensets whose
canonical external form is the sorted tuple; internally everything runs on
integer bitmasks so that game positions hash and compare cheaply.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError

VertexSet = frozenset


def mask_from(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def set_from(mask: int) -> frozenset:
    return frozenset(bits(mask))


class Digraph:
    """Immutable digraph with precomputed successor masks."""

    __slots__ = ("n", "edges", "labels", "out_masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple], labels: Optional[Sequence[str]] = None):
        n = int(n)
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        es = set()
        out = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            es.add((u, v))
            out[u] |= 1 << v
        self.n = n
        self.edges = frozenset(es)
        self.out_masks = tuple(out)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError("labels must cover every vertex")
        self.labels = labels
        self._hash = hash((n, self.edges))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def successors(self, v: int) -> frozenset:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range")
        return set_from(self.out_masks[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def __eq__(self, other):
        return (isinstance(other, Digraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph(n={self.n}, m={len(self.edges)})"


def reach_mask(out_masks: Sequence[int], sources: int, blocked: int) -> int:
    """Vertices reachable from `sources` along paths avoiding `blocked`.

    Reflexive: every unblocked source is included; blocked sources are not.
    """
    seen = sources & ~blocked
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            nxt |= out_masks[b.bit_length() - 1]
            m ^= b
        frontier = nxt & ~blocked & ~seen
        seen |= frontier
    return seen


def _check_vertices(g: Digraph, vs, name: str) -> int:
    m = 0
    for v in vs:
        v = int(v)
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} in {name} out of range for n={g.n}")
        m |= 1 << v
    return m


def reach_excluding(g: Digraph, X, Y) -> frozenset:
    """All vertices reachable from some y in Y along a path disjoint from X."""
    xm = _check_vertices(g, X, "X")
    ym = _check_vertices(g, Y, "Y")
    return set_from(reach_mask(g.out_masks, ym, xm))


def scc_masks(out_masks: Sequence[int], n: int, blocked: int = 0):
    """Tarjan over the subgraph avoiding `blocked`.

    Returns (components, index) where components is a list of bitmasks in
    reverse topological order (sinks of the condensation first) and
    index[v] is the component position, or -1 for blocked vertices.
    """
    index = [-1] * n
    low = [0] * n
    num = [0] * n
    onstack = [False] * n
    visited = [False] * n
    comps = []
    stack = []
    counter = [0]
    for root in range(n):
        if visited[root] or (blocked >> root) & 1:
            continue
        work = [(root, iter(bits(out_masks[root] & ~blocked)))]
        visited[root] = True
        num[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    num[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, iter(bits(out_masks[w] & ~blocked))))
                    advanced = True
                    break
                elif onstack[w]:
                    if num[w] < low[v]:
                        low[v] = num[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == num[v]:
                cm = 0
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    cm |= 1 << w
                    index[w] = len(comps)
                    if w == v:
                        break
                comps.append(cm)
    return comps, index


@dataclass(frozen=True)
class SccPartition:
    """SCC partition with a vertex-to-block accessor.

    Blocks are listed in reverse topological order of the condensation:
    edges between distinct blocks always point to an earlier block.
    """
    blocks: tuple
    index: tuple

    def component_of(self, v: int) -> frozenset:
        return self.blocks[self.index[v]]

    def __len__(self):
        return len(self.blocks)


def sccs(g: Digraph) -> SccPartition:
    comps, index = scc_masks(g.out_masks, g.n)
    return SccPartition(tuple(set_from(c) for c in comps), tuple(index))


def region_table(out_masks: Sequence[int], n: int, blocked: int = 0):
    """Per-vertex reachability regions in the subgraph avoiding `blocked`.

    Returns (region, comp) lists: region[v] is the bitmask of everything v
    reaches (including itself), comp[v] its SCC bitmask; both 0 for blocked v.
    Computed once over the condensation instead of one BFS per vertex.
    """
    comps, index = scc_masks(out_masks, n, blocked)
    creach = [0] * len(comps)
    for ci, cm in enumerate(comps):  # reverse topo: successors already done
        acc = cm
        m = cm
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            for w in bits(out_masks[v] & ~blocked):
                if index[w] != ci:
                    acc |= creach[index[w]]
        creach[ci] = acc
    region = [0] * n
    comp = [0] * n
    for v in range(n):
        ci = index[v]
        if ci >= 0:
            region[v] = creach[ci]
            comp[v] = comps[ci]
    return region, comp


def symmetric_closure(g: Digraph) -> Digraph:
    es = set(g.edges)
    es.update((v, u) for (u, v) in g.edges)
    return Digraph(g.n, es, labels=g.labels)


def is_strongly_connected(g: Digraph) -> bool:
    if g.n <= 1:
        return True
    full = g.full_mask
    if reach_mask(g.out_masks, 1, 0) != full:
        return False
    rev = [0] * g.n
    for (u, v) in g.edges:
        rev[v] |= 1 << u
    return reach_mask(rev, 1, 0) == full


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format.

    First non-comment line is the vertex count; each following line is one
    edge "u v".  `#` starts a comment, blank lines are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise InputError(f"line {lineno}: expected vertex count, got {raw!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: vertex count is not an integer") from None
            if n < 0:
                raise InputError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected edge 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: edge endpoints must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: edge ({u}, {v}) out of range for n={n}")
        edges.append((u, v))
    if n is None:
        raise InputError("empty edge-list input")
    return Digraph(n, edges)


def emit_edge_list(g: Digraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for (u, v) in sorted(g.edges))
    return "\n".join(lines) + "\n"


def emit_dot(g: Digraph) -> str:
    out = ["digraph g {"]
    for v in range(g.n):
        out.append(f'  {v} [label="{g.label(v)}"];')
    for (u, v) in sorted(g.edges):
        out.append(f"  {u} -> {v};")
    out.append("}")
    return "\n".join(out) + "\n"
