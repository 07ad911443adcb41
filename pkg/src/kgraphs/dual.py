"""Dual k-graphs: morphisms of degree >= p with clipped range and source.

The p-dual of a k-graph has vertex set Lambda^p; its color-i edges are the
paths of degree p + e_i, with range tau(0, p) and source
tau(d(tau) - p, d(tau)).  Squares come from paths tau of degree
p + e_i + e_j: the i-then-j dual factorization
(tau(0, p+e_i), tau(e_i, p+e_i+e_j)) is paired with the j-then-i one.

Dual vertices and edges are named by the canonical edge-id sequence of
their underlying path, so the composition law q(p-dual) = (q+p)-dual can
be checked as byte equality of serializations, with a constructed (not
searched) renaming.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Edge,
    KGraph,
    Path,
    Square,
    compose,
    coordinate_matrix,
    count_paths,
    paths_from,
    relabeled,
    segment,
)
from .degree import Degree
from .errors import DualSizeError
from .io import serialize_kgraph
from .matrix import IntMatrix

DEFAULT_MAX_DUAL_VERTICES = 20000


def name_of(path: Path) -> str:
    """Canonical name of a dual object: the vertex id for degree 0, the edge
    id for a single edge, otherwise the bracketed edge-id list."""
    if path.is_identity():
        return path.range
    if len(path.edges) == 1:
        return path.edges[0]
    return "[" + ",".join(path.edges) + "]"


@dataclass(frozen=True)
class DualGraph:
    """A dual k-graph together with the naming map back to the base graph."""

    graph: KGraph
    p: Degree
    underlying: dict[str, Path]


def _all_paths(g: KGraph, n: Degree, cap: int | None = None) -> list[Path]:
    out = []
    for v in g.vertices:
        out.extend(paths_from(g, v, n, cap=cap))
    return out


def build_dual(
    g: KGraph,
    p: Degree,
    max_vertices: int = DEFAULT_MAX_DUAL_VERTICES,
    cap: int | None = None,
) -> DualGraph:
    p = Degree(p)
    if p.k != g.rank:
        raise ValueError(f"dual degree rank {p.k} does not match graph rank {g.rank}")
    n_vertices = count_paths(g, p).total()
    if n_vertices > max_vertices:
        raise DualSizeError(
            f"p-dual would have {n_vertices} vertices (guard: {max_vertices})"
        )

    underlying: dict[str, Path] = {}
    vertices = []
    for path in _all_paths(g, p, cap=cap):
        name = name_of(path)
        vertices.append(name)
        underlying[name] = path

    edges = []
    for color in range(1, g.rank + 1):
        e_i = g.unit(color)
        for tau in _all_paths(g, p + e_i, cap=cap):
            name = name_of(tau)
            r_p = segment(g, tau, g.zero(), p)
            s_p = segment(g, tau, tau.degree - p, tau.degree)
            edges.append(
                Edge(id=name, color=color, source=name_of(s_p), range=name_of(r_p))
            )
            underlying[name] = tau

    squares = []
    for i in range(1, g.rank + 1):
        e_i = g.unit(i)
        for j in range(i + 1, g.rank + 1):
            e_j = g.unit(j)
            top = p + e_i + e_j
            for tau in _all_paths(g, top, cap=cap):
                a = segment(g, tau, g.zero(), p + e_i)
                b = segment(g, tau, e_i, top)
                c = segment(g, tau, g.zero(), p + e_j)
                d = segment(g, tau, e_j, top)
                squares.append(
                    Square(
                        first_ij=(name_of(a), name_of(b)),
                        first_ji=(name_of(c), name_of(d)),
                    )
                )

    graph = KGraph(rank=g.rank, vertices=vertices, edges=edges, squares=squares)
    return DualGraph(graph=graph, p=p, underlying=underlying)


def dual(g: KGraph, p: Degree, max_vertices: int = DEFAULT_MAX_DUAL_VERTICES) -> KGraph:
    """The p-dual as a plain KGraph (p = 0 reproduces g exactly)."""
    return build_dual(g, p, max_vertices=max_vertices).graph


def dual_matrix(g: KGraph, p: Degree, color: int) -> IntMatrix:
    """Coordinate matrix of the p-dual; {0,1}-valued whenever p >= (1,..,1)."""
    return coordinate_matrix(dual(g, p), color)


def underlying_in_base(g: KGraph, d1: DualGraph, path_in_dual: Path) -> Path:
    """Resolve a path of the p-dual to its underlying path in the base graph.

    Composition in the dual is lam o mu = lam . mu(p, d(mu)), so the
    underlying path folds the blocks with their first p clipped.
    """
    if path_in_dual.is_identity():
        return d1.underlying[path_in_dual.range]
    parts = [d1.underlying[eid] for eid in path_in_dual.edges]
    acc = parts[0]
    for nxt in parts[1:]:
        acc = compose(g, acc, segment(g, nxt, d1.p, nxt.degree))
    return acc


def iterated_dual_equal(
    g: KGraph,
    p: Degree,
    q: Degree,
    max_vertices: int = DEFAULT_MAX_DUAL_VERTICES,
) -> bool:
    """Whether q(p-dual) equals the (p+q)-dual on the nose.

    The q-dual over the p-dual is renamed by resolving every object to its
    underlying base path of degree p+q (+ e_i); equality is then byte
    equality of canonical serializations.
    """
    p, q = Degree(p), Degree(q)
    d1 = build_dual(g, p, max_vertices=max_vertices)
    d2 = build_dual(d1.graph, q, max_vertices=max_vertices)
    direct = dual(g, p + q, max_vertices=max_vertices)

    vmap: dict[str, str] = {}
    emap: dict[str, str] = {}
    for name, dual_path in d2.underlying.items():
        base_path = underlying_in_base(g, d1, dual_path)
        new_name = name_of(base_path)
        if name in d2.graph.edges:
            emap[name] = new_name
        else:
            vmap[name] = new_name
    renamed = relabeled(d2.graph, vertex_map=vmap, edge_map=emap)
    return serialize_kgraph(renamed) == serialize_kgraph(direct)
