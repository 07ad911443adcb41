"""Finite k-graphs presented by a colored skeleton plus factorization squares.

A k-graph is stored as its skeleton (vertices, edges of colors 1..k) and
one factorization square per composable bichromatic edge pair.  A square
``(a, b) = (c, d)`` asserts the morphism identity a.b = c.d where
color(a) = i < color(b) = j, color(c) = j, color(d) = i; uniqueness of
factorizations is exactly bijectivity of the induced pair maps, which
`validate` checks (together with the cube condition when k >= 3).

Paths are kept in a color-nondecreasing normal form, so path equality is
syntactic.  Edge sequences are read range-to-source left to right: in a
path [e1, e2] the source of e1 equals the range of e2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .degree import Degree
from .errors import EnumerationCapError, KGraphError, NotComposableError
from .matrix import IntMatrix

DEFAULT_ENUM_CAP = 8
ENUM_CAP_ENV = "KG_ENUM_CAP"


def enum_cap(explicit: int | None = None) -> int:
    """Per-coordinate degree cap for path enumeration (KG_ENUM_CAP overrides)."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}")
    return DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    source: str
    range: str


@dataclass(frozen=True)
class Square:
    """The identity first_ij = first_ji between the two color orders.

    first_ij is an (edge of color i, edge of color j) pair with i < j;
    first_ji the matching (color j, color i) pair.  Pairs are composable
    (source of the first edge = range of the second) and share outer
    endpoints.
    """

    first_ij: tuple[str, str]
    first_ji: tuple[str, str]


@dataclass(frozen=True)
class Path:
    """A morphism in color-nondecreasing normal form.

    ``edges`` is a tuple of edge ids; the degree-0 path at a vertex has no
    edges and equal source and range.
    """

    degree: Degree
    edges: tuple[str, ...]
    range: str
    source: str

    def is_identity(self) -> bool:
        return not self.edges


@dataclass
class ValidationReport:
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class StructuralReport:
    row_finite: bool
    no_sources: bool
    no_sinks: bool
    strongly_connected: bool
    finite: bool


class KGraph:
    """Immutable after construction; all derived indexes are precomputed.

    The constructor enforces referential integrity (unique ids, declared
    endpoints, colors in range).  Everything a k-graph additionally needs
    (square bijectivity, the cube condition) is reported by `validate`.
    """

    def __init__(
        self,
        rank: int,
        vertices: Iterable[str],
        edges: Iterable[Edge],
        squares: Iterable[Square],
    ):
        if rank < 1:
            raise ValueError(f"rank must be >= 1, got {rank}")
        self.rank = int(rank)

        vlist = list(vertices)
        if not vlist:
            raise ValueError("a k-graph needs at least one vertex")
        if len(set(vlist)) != len(vlist):
            raise ValueError("duplicate vertex ids")
        self.vertices: tuple[str, ...] = tuple(sorted(vlist))
        vset = set(self.vertices)

        elist = list(edges)
        if len({e.id for e in elist}) != len(elist):
            raise ValueError("duplicate edge ids")
        shared = vset & {e.id for e in elist}
        if shared:
            # One namespace for ids keeps dual naming injective at p = 0.
            raise ValueError(f"ids used for both a vertex and an edge: {sorted(shared)}")
        for e in elist:
            if not 1 <= e.color <= self.rank:
                raise ValueError(f"edge {e.id}: color {e.color} out of range 1..{self.rank}")
            if e.source not in vset or e.range not in vset:
                raise ValueError(f"edge {e.id}: undeclared endpoint")
        self.edges: dict[str, Edge] = {e.id: e for e in sorted(elist, key=lambda e: e.id)}

        sqlist = []
        for sq in squares:
            for eid in (*sq.first_ij, *sq.first_ji):
                if eid not in self.edges:
                    raise ValueError(f"square references unknown edge {eid!r}")
            sqlist.append(sq)
        self.squares: tuple[Square, ...] = tuple(sorted(sqlist, key=lambda s: s.first_ij))

        # flip maps each bichromatic adjacent pair to its other color order.
        self._flip: dict[tuple[str, str], tuple[str, str]] = {}
        for sq in self.squares:
            self._flip[sq.first_ij] = sq.first_ji
            self._flip[sq.first_ji] = sq.first_ij

        by_range: dict[tuple[str, int], list[str]] = {}
        by_source: dict[tuple[str, int], list[str]] = {}
        between: dict[tuple[str, str, int], list[str]] = {}
        for e in self.edges.values():
            by_range.setdefault((e.range, e.color), []).append(e.id)
            by_source.setdefault((e.source, e.color), []).append(e.id)
            between.setdefault((e.source, e.range, e.color), []).append(e.id)
        self._by_range = {k: tuple(sorted(v)) for k, v in by_range.items()}
        self._by_source = {k: tuple(sorted(v)) for k, v in by_source.items()}
        self._between = {k: tuple(sorted(v)) for k, v in between.items()}

    # -- lookups ------------------------------------------------------

    def edge(self, eid: str) -> Edge:
        return self.edges[eid]

    def edges_into(self, v: str, color: int) -> tuple[str, ...]:
        """Edge ids with range v and the given color."""
        return self._by_range.get((v, color), ())

    def edges_out_of(self, v: str, color: int) -> tuple[str, ...]:
        """Edge ids with source v and the given color."""
        return self._by_source.get((v, color), ())

    def edges_between(self, source: str, range_: str, color: int) -> tuple[str, ...]:
        return self._between.get((source, range_, color), ())

    def flip(self, first: str, second: str) -> tuple[str, str]:
        try:
            return self._flip[(first, second)]
        except KeyError:
            raise KGraphError(
                f"no factorization square for adjacent pair ({first},{second})"
            ) from None

    def zero(self) -> Degree:
        return Degree.zero(self.rank)

    def ones(self) -> Degree:
        return Degree.ones(self.rank)

    def unit(self, color: int) -> Degree:
        return Degree.unit(self.rank, color)

    def identity(self, v: str) -> Path:
        if v not in self.vertices:
            raise ValueError(f"unknown vertex {v!r}")
        return Path(degree=self.zero(), edges=(), range=v, source=v)

    def path(self, edge_ids: Sequence[str]) -> Path:
        """Normal-form path represented by a composable raw edge sequence."""
        return normalize(self, edge_ids)

    def _path_from_normal_ids(self, ids: Sequence[str], at: str | None = None) -> Path:
        if not ids:
            assert at is not None
            return Path(degree=self.zero(), edges=(), range=at, source=at)
        counts = [0] * self.rank
        for eid in ids:
            counts[self.edges[eid].color - 1] += 1
        return Path(
            degree=Degree(counts),
            edges=tuple(ids),
            range=self.edges[ids[0]].range,
            source=self.edges[ids[-1]].source,
        )


# -- validation ---------------------------------------------------------


def validate(g: KGraph) -> ValidationReport:
    """Report every violated k-graph invariant; empty report means valid."""
    problems: list[str] = []

    for e in g.edges.values():
        if e.source not in g.vertices:
            problems.append(f"edge {e.id} has dangling source {e.source}")
        if e.range not in g.vertices:
            problems.append(f"edge {e.id} has dangling range {e.range}")
        if not 1 <= e.color <= g.rank:
            problems.append(f"edge {e.id} has color {e.color} out of range 1..{g.rank}")

    for sq in g.squares:
        a, b = (g.edges.get(x) for x in sq.first_ij)
        c, d = (g.edges.get(x) for x in sq.first_ji)
        if None in (a, b, c, d):
            problems.append(f"square {sq.first_ij}={sq.first_ji} references unknown edges")
            continue
        if not (a.color < b.color and c.color == b.color and d.color == a.color):
            problems.append(
                f"square ({a.id},{b.id})=({c.id},{d.id}) has wrong color pattern"
            )
            continue
        if a.source != b.range:
            problems.append(f"square pair ({a.id},{b.id}) is not composable")
        if c.source != d.range:
            problems.append(f"square pair ({c.id},{d.id}) is not composable")
        if a.range != c.range or b.source != d.source:
            problems.append(
                f"square ({a.id},{b.id})=({c.id},{d.id}) has mismatched outer endpoints"
            )

    # Bijectivity: each composable i-then-j pair in exactly one square, and
    # each j-then-i pair hit exactly once.
    for i in range(1, g.rank + 1):
        for j in range(i + 1, g.rank + 1):
            ij_pairs = _composable_pairs(g, i, j)
            ji_pairs = _composable_pairs(g, j, i)
            seen_ij: dict[tuple[str, str], int] = {}
            seen_ji: dict[tuple[str, str], int] = {}
            for sq in g.squares:
                a = g.edges.get(sq.first_ij[0])
                if a is None or a.color != i:
                    continue
                b = g.edges.get(sq.first_ij[1])
                if b is None or b.color != j:
                    continue
                seen_ij[sq.first_ij] = seen_ij.get(sq.first_ij, 0) + 1
                seen_ji[sq.first_ji] = seen_ji.get(sq.first_ji, 0) + 1
            for pair in ij_pairs:
                count = seen_ij.get(pair, 0)
                if count == 0:
                    problems.append(f"composable pair ({pair[0]},{pair[1]}) has no square")
                elif count > 1:
                    problems.append(
                        f"composable pair ({pair[0]},{pair[1]}) appears in {count} squares"
                    )
            for pair in seen_ij:
                if pair not in ij_pairs:
                    problems.append(
                        f"square pair ({pair[0]},{pair[1]}) is not a composable pair"
                    )
            for pair in ji_pairs:
                count = seen_ji.get(pair, 0)
                if count == 0:
                    problems.append(
                        f"composable pair ({pair[0]},{pair[1]}) is not produced by any square"
                    )
                elif count > 1:
                    problems.append(
                        f"composable pair ({pair[0]},{pair[1]}) is produced by {count} squares"
                    )
            for pair in seen_ji:
                if pair not in ji_pairs:
                    problems.append(
                        f"square pair ({pair[0]},{pair[1]}) is not a composable pair"
                    )

    if g.rank >= 3 and not problems:
        problems.extend(_cube_problems(g))

    return ValidationReport(problems=problems)


def _composable_pairs(g: KGraph, c1: int, c2: int) -> set[tuple[str, str]]:
    pairs = set()
    for e in g.edges.values():
        if e.color != c1:
            continue
        for fid in g.edges_into(e.source, c2):
            pairs.add((e.id, fid))
    return pairs


def _cube_problems(g: KGraph) -> list[str]:
    """Associativity over degree e_i+e_j+e_l cubes: the two rewriting routes
    from a color-sorted triple to the reversed order must agree."""
    problems = []

    def flip_at(word: list[str], t: int) -> list[str]:
        out = list(word)
        out[t], out[t + 1] = g.flip(word[t], word[t + 1])
        return out

    for i in range(1, g.rank + 1):
        for j in range(i + 1, g.rank + 1):
            for l in range(j + 1, g.rank + 1):
                for x in g.edges.values():
                    if x.color != i:
                        continue
                    for yid in g.edges_into(x.source, j):
                        y = g.edges[yid]
                        for zid in g.edges_into(y.source, l):
                            word = [x.id, yid, zid]
                            try:
                                via_a = flip_at(flip_at(flip_at(word, 0), 1), 0)
                                via_b = flip_at(flip_at(flip_at(word, 1), 0), 1)
                            except KGraphError as exc:
                                problems.append(f"cube at ({x.id},{yid},{zid}): {exc}")
                                continue
                            if via_a != via_b:
                                problems.append(
                                    f"cube condition fails at ({x.id},{yid},{zid}): "
                                    f"{via_a} != {via_b}"
                                )
    return problems


# -- path algebra -------------------------------------------------------


def normalize(g: KGraph, raw: Sequence[str] | Sequence[Edge]) -> Path:
    """Color-sort a composable edge sequence using squares; idempotent."""
    ids = [e.id if isinstance(e, Edge) else e for e in raw]
    for eid in ids:
        if eid not in g.edges:
            raise ValueError(f"unknown edge {eid!r}")
    for prev, nxt in zip(ids, ids[1:]):
        if g.edges[prev].source != g.edges[nxt].range:
            raise NotComposableError(
                f"edges {prev} and {nxt} are not composable "
                f"(source {g.edges[prev].source} != range {g.edges[nxt].range})"
            )
    if not ids:
        raise ValueError("cannot normalize an empty sequence without a vertex; "
                         "use KGraph.identity")
    sorted_ids = _insertion_normalize(g, ids)
    return g._path_from_normal_ids(sorted_ids)


def _insertion_normalize(g: KGraph, ids: Sequence[str]) -> list[str]:
    color = lambda eid: g.edges[eid].color
    out: list[str] = []
    for eid in ids:
        out.append(eid)
        t = len(out) - 1
        while t > 0 and color(out[t - 1]) > color(out[t]):
            out[t - 1], out[t] = g.flip(out[t - 1], out[t])
            t -= 1
    return out


def compose(g: KGraph, lam: Path, mu: Path) -> Path:
    """lam.mu, defined when source(lam) = range(mu)."""
    if lam.source != mu.range:
        raise NotComposableError(
            f"cannot compose: source {lam.source} != range {mu.range}"
        )
    if lam.is_identity():
        return mu
    if mu.is_identity():
        return lam
    ids = _insertion_normalize(g, list(lam.edges) + list(mu.edges))
    return g._path_from_normal_ids(ids)


def _split_ids(g: KGraph, ids: Sequence[str], m: Degree) -> tuple[list[str], list[str]]:
    """Split a normal edge word as head.tail with the head of degree m.

    Works color by color: demanded edges of the smallest color are bubbled
    to the front with squares and popped.  Both halves come out normal.
    """
    work = list(ids)
    head: list[str] = []
    for color in range(1, g.rank + 1):
        for _ in range(m[color - 1]):
            t = next(
                (idx for idx, eid in enumerate(work) if g.edges[eid].color == color),
                None,
            )
            assert t is not None, "degree bookkeeping out of sync"
            while t > 0:
                work[t - 1], work[t] = g.flip(work[t - 1], work[t])
                t -= 1
            head.append(work.pop(0))
    return head, work


def segment(g: KGraph, lam: Path, m: Degree, n: Degree) -> Path:
    """The unique factor lam(m, n) of degree n - m."""
    m, n = Degree(m), Degree(n)
    if not (m.leq(n) and n.leq(lam.degree)):
        raise ValueError(
            f"segment bounds must satisfy 0 <= m <= n <= d(path); "
            f"got m={tuple(m)}, n={tuple(n)}, d={tuple(lam.degree)}"
        )
    prefix, _ = _split_ids(g, lam.edges, n)
    head, mid = _split_ids(g, prefix, m)
    if mid:
        return g._path_from_normal_ids(mid)
    at = g.edges[head[-1]].source if head else lam.range
    return g._path_from_normal_ids((), at=at)


def paths_from(
    g: KGraph, v: str, n: Degree, cap: int | None = None
) -> list[Path]:
    """All normal-form paths with range v and degree n (the set v.Lambda^n)."""
    n = Degree(n)
    if n.k != g.rank:
        raise ValueError(f"degree rank {n.k} does not match graph rank {g.rank}")
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    limit = enum_cap(cap)
    if any(c > limit for c in n):
        raise EnumerationCapError(
            f"degree {tuple(n)} exceeds enumeration cap {limit} "
            f"(set {ENUM_CAP_ENV} to raise it)"
        )
    out: list[Path] = []
    word: list[str] = []

    def extend(cur: str, color: int, remaining: int) -> None:
        if remaining == 0:
            if color == g.rank:
                out.append(g._path_from_normal_ids(tuple(word), at=v))
                return
            extend(cur, color + 1, n[color])
            return
        for eid in g.edges_into(cur, color):
            word.append(eid)
            extend(g.edges[eid].source, color, remaining - 1)
            word.pop()

    extend(v, 1, n[0])
    return out


def coordinate_matrix(g: KGraph, color: int) -> IntMatrix:
    """Edge counts by color: row v (source), column w (range) counts the
    color-i edges from v to w."""
    if not 1 <= color <= g.rank:
        raise ValueError(f"color {color} out of range 1..{g.rank}")
    verts = g.vertices
    return IntMatrix(
        [
            [len(g.edges_between(v, w, color)) for w in verts]
            for v in verts
        ]
    )


def count_paths(g: KGraph, n: Degree) -> IntMatrix:
    """Path counts of degree n: entry (v, w) = |w Lambda^n v| (source v, range w).

    Computed as the product M_1^{n_1} ... M_k^{n_k}; unique factorization
    makes the color order irrelevant.
    """
    n = Degree(n)
    if n.k != g.rank:
        raise ValueError(f"degree rank {n.k} does not match graph rank {g.rank}")
    out = IntMatrix.identity(len(g.vertices))
    for color in range(1, g.rank + 1):
        out = out @ coordinate_matrix(g, color).pow(n[color - 1])
    return out


def structural_report(g: KGraph) -> StructuralReport:
    no_sources = all(
        g.edges_into(v, c) for v in g.vertices for c in range(1, g.rank + 1)
    )
    no_sinks = all(
        g.edges_out_of(v, c) for v in g.vertices for c in range(1, g.rank + 1)
    )
    return StructuralReport(
        row_finite=True,
        no_sources=no_sources,
        no_sinks=no_sinks,
        strongly_connected=_strongly_connected(g),
        finite=True,
    )


def _strongly_connected(g: KGraph) -> bool:
    """v.Lambda.w nonempty for all v, w: every vertex reaches every other
    along source-to-range arcs (trivial paths allowed)."""
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges.values():
        adj[e.source].add(e.range)
    for start in g.vertices:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(g.vertices):
            return False
    return True


def relabeled(
    g: KGraph,
    vertex_map: dict[str, str] | None = None,
    edge_map: dict[str, str] | None = None,
) -> KGraph:
    """The same graph under injective renamings of vertices and/or edges."""
    vmap = vertex_map or {}
    emap = edge_map or {}
    rv = lambda v: vmap.get(v, v)
    re_ = lambda e: emap.get(e, e)
    return KGraph(
        rank=g.rank,
        vertices=[rv(v) for v in g.vertices],
        edges=[
            Edge(id=re_(e.id), color=e.color, source=rv(e.source), range=rv(e.range))
            for e in g.edges.values()
        ],
        squares=[
            Square(
                first_ij=(re_(sq.first_ij[0]), re_(sq.first_ij[1])),
                first_ji=(re_(sq.first_ji[0]), re_(sq.first_ji[1])),
            )
            for sq in g.squares
        ],
    )
