"""Named example graphs and a random generator for valid 2-graphs.

The named fixtures:

  t1     one vertex, one loop of each color, the single commuting square.
  flip2  one vertex, two color-1 loops b1/b2 and one color-2 loop r1; the
         squares swap b1 and b2 across r1.
  tors   two vertices with three color-1 loops each and color-2 counts
         [[1,2],[2,1]]; its K-groups have torsion Z/2 + Z/2.

Random graphs are built from commuting coordinate matrices (polynomials in
a shared permutation matrix, or in each other), realized as a skeleton,
with factorization squares chosen per outer-endpoint class.  Any bijection
between the two color orders of a class is a valid choice for a 2-graph;
we shuffle with the caller's rng for structural variety.
"""

from __future__ import annotations

import random

from .core import Edge, KGraph, Square, count_paths, relabeled
from .degree import Degree
from .matrix import IntMatrix


def t1() -> KGraph:
    return KGraph(
        rank=2,
        vertices=["v"],
        edges=[
            Edge("b", 1, "v", "v"),
            Edge("r", 2, "v", "v"),
        ],
        squares=[Square(first_ij=("b", "r"), first_ji=("r", "b"))],
    )


def flip2() -> KGraph:
    return KGraph(
        rank=2,
        vertices=["v"],
        edges=[
            Edge("b1", 1, "v", "v"),
            Edge("b2", 1, "v", "v"),
            Edge("r1", 2, "v", "v"),
        ],
        squares=[
            Square(first_ij=("b1", "r1"), first_ji=("r1", "b2")),
            Square(first_ij=("b2", "r1"), first_ji=("r1", "b1")),
        ],
    )


def tors() -> KGraph:
    vertices = ["u", "v"]
    edges = [Edge(f"p{i}", 1, "u", "u") for i in (1, 2, 3)]
    edges += [Edge(f"q{i}", 1, "v", "v") for i in (1, 2, 3)]
    edges += [
        Edge("cuu", 2, "u", "u"),
        Edge("cuv1", 2, "u", "v"),
        Edge("cuv2", 2, "u", "v"),
        Edge("cvu1", 2, "v", "u"),
        Edge("cvu2", 2, "v", "u"),
        Edge("cvv", 2, "v", "v"),
    ]
    g = KGraph(rank=2, vertices=vertices, edges=edges, squares=[])
    return KGraph(
        rank=2,
        vertices=vertices,
        edges=edges,
        squares=pair_squares(g),
    )


def disjoint_union(a: KGraph, b: KGraph, suffixes: tuple[str, str] = ("_a", "_b")) -> KGraph:
    """Disjoint union with suffix-renamed ids; never strongly connected."""
    if a.rank != b.rank:
        raise ValueError("disjoint union requires equal ranks")
    sa, sb = suffixes
    ra = relabeled(
        a,
        vertex_map={v: v + sa for v in a.vertices},
        edge_map={e: e + sa for e in a.edges},
    )
    rb = relabeled(
        b,
        vertex_map={v: v + sb for v in b.vertices},
        edge_map={e: e + sb for e in b.edges},
    )
    return KGraph(
        rank=a.rank,
        vertices=list(ra.vertices) + list(rb.vertices),
        edges=list(ra.edges.values()) + list(rb.edges.values()),
        squares=list(ra.squares) + list(rb.squares),
    )


def pair_squares(g: KGraph, rng: random.Random | None = None) -> list[Square]:
    """Choose one square per composable bichromatic pair of a 2-graph.

    Pairs are grouped by outer endpoints; within a class the two color
    orders are matched sorted-to-sorted, or against a shuffled order when
    an rng is supplied.  Requires equal class sizes, i.e. commuting
    coordinate matrices.
    """
    if g.rank != 2:
        raise ValueError("square pairing implemented for 2-graphs only")
    ij: dict[tuple[str, str], list[tuple[str, str]]] = {}
    ji: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for e in g.edges.values():
        if e.color == 1:
            for fid in g.edges_into(e.source, 2):
                f = g.edges[fid]
                ij.setdefault((e.range, f.source), []).append((e.id, fid))
        else:
            for fid in g.edges_into(e.source, 1):
                f = g.edges[fid]
                ji.setdefault((e.range, f.source), []).append((e.id, fid))
    if set(ij) != set(ji) or any(len(ij[k]) != len(ji[k]) for k in ij):
        raise ValueError("coordinate matrices do not commute; no square pairing exists")
    squares = []
    for key in sorted(ij):
        left = sorted(ij[key])
        right = sorted(ji[key])
        if rng is not None:
            rng.shuffle(right)
        squares.extend(
            Square(first_ij=l, first_ji=r) for l, r in zip(left, right)
        )
    return squares


def graph_from_matrices(
    m1: IntMatrix,
    m2: IntMatrix,
    rng: random.Random | None = None,
    vertex_prefix: str = "v",
) -> KGraph:
    """Realize commuting counts (row = source, column = range) as a 2-graph."""
    n = m1.rows
    if m1 @ m2 != m2 @ m1:
        raise ValueError("matrices must commute")
    vertices = [f"{vertex_prefix}{i}" for i in range(n)]
    edges = []
    for color, m, prefix in ((1, m1, "a"), (2, m2, "b")):
        for i in range(n):
            for j in range(n):
                for t in range(m.data[i][j]):
                    edges.append(
                        Edge(f"{prefix}{i}{j}x{t}", color, vertices[i], vertices[j])
                    )
    skeleton = KGraph(rank=2, vertices=vertices, edges=edges, squares=[])
    return KGraph(
        rank=2,
        vertices=vertices,
        edges=edges,
        squares=pair_squares(skeleton, rng=rng),
    )


def _no_zero_lines(m: IntMatrix) -> bool:
    rows_ok = all(any(x for x in row) for row in m.data)
    cols_ok = all(any(row[j] for row in m.data) for j in range(m.cols))
    return rows_ok and cols_ok


def _permutation_matrix(perm: list[int]) -> IntMatrix:
    n = len(perm)
    return IntMatrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])


def random_2graph(
    rng: random.Random,
    max_vertices: int = 3,
    max_mult: int = 3,
    max_paths_33: int = 3000,
    max_paths_11: int = 80,
) -> KGraph:
    """A random valid finite 2-graph with no sources or sinks.

    Coordinate matrices commute by construction; size guards keep path
    enumeration up to degree (3,3) affordable in tests.
    """
    while True:
        nv = rng.choice([1, 1, 2, 2, 2, 3, 3])
        if nv == 1:
            m1 = IntMatrix([[rng.randint(1, max_mult)]])
            m2 = IntMatrix([[rng.randint(1, max_mult)]])
        elif rng.random() < 0.6:
            # polynomials in a shared permutation matrix
            perm = list(range(nv))
            rng.shuffle(perm)
            p = _permutation_matrix(perm)
            powers = [IntMatrix.identity(nv)]
            for _ in range(nv - 1):
                powers.append(powers[-1] @ p)

            def poly() -> IntMatrix:
                while True:
                    coeffs = [rng.randint(0, 1) for _ in powers]
                    if rng.random() < 0.4:
                        coeffs[rng.randrange(len(coeffs))] += rng.randint(0, 1)
                    if 1 <= sum(coeffs) <= max_mult:
                        break
                out = IntMatrix.zeros(nv, nv)
                for c, pw in zip(coeffs, powers):
                    if c:
                        out = out + IntMatrix([[c * x for x in row] for row in pw.data])
                return out

            m1, m2 = poly(), poly()
        else:
            # m2 a small polynomial in m1
            m1 = IntMatrix(
                [[rng.choice([0, 0, 0, 1, 1, 2]) for _ in range(nv)] for _ in range(nv)]
            )
            if not _no_zero_lines(m1):
                continue
            c0, c1 = rng.choice([(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
            ident = IntMatrix.identity(nv)
            m2 = IntMatrix(
                [
                    [c0 * ident.data[i][j] + c1 * m1.data[i][j] for j in range(nv)]
                    for i in range(nv)
                ]
            )
        if not (_no_zero_lines(m1) and _no_zero_lines(m2)):
            continue
        if max(max(m1.entries()), max(m2.entries())) > max_mult:
            continue
        if (m1 @ m2).total() > max_paths_11:
            continue
        if (m1.pow(3) @ m2.pow(3)).total() > max_paths_33:
            continue
        return graph_from_matrices(m1, m2, rng=rng)


def corpus(seed: int = 1729, size: int = 25) -> list[KGraph]:
    """The named fixtures plus `size` seeded random graphs."""
    rng = random.Random(seed)
    graphs = [t1(), flip2(), tors()]
    graphs.extend(random_2graph(rng) for _ in range(size))
    return graphs


def extended_corpus(seed: int = 1729, size: int = 25) -> list[KGraph]:
    """Corpus plus disconnected members (for strong-connectivity testing)."""
    graphs = corpus(seed=seed, size=size)
    rng = random.Random(seed + 1)
    graphs.append(disjoint_union(t1(), t1()))
    graphs.append(disjoint_union(random_2graph(rng), random_2graph(rng)))
    return graphs


def dual_size_hint(g: KGraph, p: Degree) -> int:
    """Number of vertices the p-dual would have (no enumeration)."""
    return count_paths(g, p).total()
