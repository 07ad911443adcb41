"""Acceptance gate: the ten end-to-end criteria, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print; the whole module finishes in well under a minute.
"""

import itertools
import random
from contextlib import contextmanager

from kgraphs import (
    Degree,
    check_rs,
    cokernel,
    count_paths,
    dual,
    dual_matrix,
    h2_iff_strongly_connected,
    iterated_dual_equal,
    k_groups,
    letters_at,
    mode_agreement,
    aperiodic_prefix,
    path_of_word,
    paths_from,
    smith_normal_form,
    snf_oracle_minor_gcd,
    word_of_path,
)
from kgraphs.degree import lattice_points
from kgraphs.intlinalg import det_int
from kgraphs.matrix import IntMatrix

ONES = Degree((1, 1))


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num:>2}  FAIL  {description}")
        raise
    print(f"ACCEPTANCE {num:>2}  PASS  {description}")


def test_criterion_1_dual_composition_law(corpus):
    ps = [Degree((0, 0)), Degree((1, 0)), Degree((0, 1)), ONES]
    with criterion(1, "dual composition law: q(p-dual) == (p+q)-dual, byte-identical"):
        failures = []
        for idx, g in enumerate(corpus):
            for p, q in itertools.product(ps, ps):
                if not iterated_dual_equal(g, p, q):
                    failures.append((idx, tuple(p), tuple(q)))
        assert not failures, f"composition law failed at {failures}"


def test_criterion_2_dual_matrices_01(corpus):
    with criterion(2, "dual coordinate matrices are {0,1} for p >= (1,1)"):
        for g in corpus:
            for p in (ONES, Degree((2, 1)), Degree((1, 2))):
                for color in (1, 2):
                    matrix = dual_matrix(g, p, color)
                    assert matrix.is_zero_one(), (tuple(p), color)


def test_criterion_3_overlap_bound(corpus):
    with criterion(3, "at most one dual path of degree n <= p between dual vertices"):
        for g in corpus:
            for p in (ONES, Degree((2, 1))):
                dg = dual(g, p)
                for n in lattice_points(p):
                    for v in dg.vertices:
                        per_source = {}
                        for path in paths_from(dg, v, n):
                            per_source[path.source] = per_source.get(path.source, 0) + 1
                        excess = {k: c for k, c in per_source.items() if c > 1}
                        assert not excess, (tuple(p), tuple(n), v, excess)


def test_criterion_4_h0_h1_h2(corpus, extended_corpus):
    with criterion(4, "(H0),(H1a),(H1b) on every (1,1)-dual; (H2) iff strongly connected"):
        for g in corpus:
            rep = check_rs(dual(g, ONES), h3_m_bound=0)
            assert rep.h0 and rep.h1a and rep.h1b
        for g in extended_corpus:
            assert h2_iff_strongly_connected(g)


def test_criterion_5_snf_contract():
    with criterion(5, "SNF on 200 random matrices: A = U S V, unimodular, chain, oracle"):
        rng = random.Random(65537)
        for _ in range(200):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 6)
            A = IntMatrix(
                [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
            )
            res = smith_normal_form(A)
            assert res.U @ res.S @ res.V == A
            assert abs(det_int(res.U.data)) == 1
            assert abs(det_int(res.V.data)) == 1
            for a, b in zip(res.diag, res.diag[1:]):
                assert (b == 0) if a == 0 else (b % a == 0)
            assert all(d >= 0 for d in res.diag)
            assert list(res.diag) == snf_oracle_minor_gcd(A)


def _quotient_is_two_two(A):
    """Brute-force oracle: columns generate exactly 2Z^2, whose quotient
    enumerated over representatives in [0,2)^2 is the 4-element group of
    exponent 2."""
    cols = [tuple(row[j] for row in A.data) for j in range(A.cols)]
    assert all(x % 2 == 0 for col in cols for x in col)
    reachable = set()
    for coeffs in itertools.product(range(-2, 3), repeat=len(cols)):
        x = sum(c * col[0] for c, col in zip(coeffs, cols))
        y = sum(c * col[1] for c, col in zip(coeffs, cols))
        reachable.add((x, y))
    assert (2, 0) in reachable and (0, 2) in reachable
    reps = [(x, y) for x in range(2) for y in range(2)]
    assert len(reps) == 4
    assert all(((x + x) % 2, (y + y) % 2) == (0, 0) for x, y in reps)


def test_criterion_6_k_theory_ground_truth(t1, flip2, tors):
    with criterion(6, "K-theory ground truth for T1, FLIP2, TORS (exact)"):
        r = k_groups(t1, mode="dual", check_aperiodicity=False)
        assert (r.k0_rank, r.k0_torsion, r.k1_rank, r.k1_torsion) == (2, (), 2, ())

        r = k_groups(flip2, mode="direct", check_aperiodicity=False)
        assert (r.k0_rank, r.k0_torsion, r.k1_rank, r.k1_torsion) == (0, (), 0, ())

        r = k_groups(tors, mode="direct", check_aperiodicity=False)
        assert (r.k0_rank, r.k0_torsion) == (0, (2, 2))
        assert (r.k1_rank, r.k1_torsion) == (0, (2, 2))
        # cross-check the torsion with the brute-force coset oracle
        ident = IntMatrix.identity(2)
        m1 = IntMatrix([[3, 0], [0, 3]])
        m2 = IntMatrix([[1, 2], [2, 1]])
        block0 = (ident - m1).hstack(ident - m2)
        block1 = (ident - m1.transpose()).hstack(ident - m2.transpose())
        for block in (block0, block1):
            _quotient_is_two_two(block)
            assert cokernel(block).torsion_factors == (2, 2)
            assert cokernel(block).free_rank == 0


def test_criterion_7_rank_equality(corpus):
    with criterion(7, "rank K0 = rank K1 on every corpus graph"):
        for g in corpus:
            r = k_groups(g, mode="dual", check_aperiodicity=False)
            assert r.k0_rank == r.k1_rank


def test_criterion_8_mode_agreement(corpus):
    with criterion(8, "dual-mode and direct-mode K-theory agree on the corpus"):
        disagreements = []
        for idx, g in enumerate(corpus):
            if not mode_agreement(g):
                a = k_groups(g, mode="dual", check_aperiodicity=False)
                b = k_groups(g, mode="direct", check_aperiodicity=False)
                disagreements.append(
                    f"graph #{idx}: dual K0={a.k0_rank},{a.k0_torsion} "
                    f"K1={a.k1_rank},{a.k1_torsion} vs direct "
                    f"K0={b.k0_rank},{b.k0_torsion} K1={b.k1_rank},{b.k1_torsion}"
                )
        assert not disagreements, "\n".join(disagreements)


def test_criterion_9_counting_and_words(corpus):
    with criterion(9, "matrix counts match enumeration (n <= (3,3)); word round trips"):
        # count_paths entry (v, w) counts paths with source v and range w,
        # i.e. the members of paths_from(g, w, n) whose source is v
        for g in corpus:
            for n in lattice_points(Degree((3, 3))):
                cm = count_paths(g, n)
                for wi, w in enumerate(g.vertices):
                    per_source = {}
                    for path in paths_from(g, w, n):
                        per_source[path.source] = per_source.get(path.source, 0) + 1
                    for vi, v in enumerate(g.vertices):
                        assert cm.data[vi][wi] == per_source.get(v, 0), (tuple(n), v, w)
        for g in corpus:
            dg = dual(g, ONES)
            for n in lattice_points(Degree((2, 2))):
                for v in dg.vertices:
                    for path in paths_from(dg, v, n):
                        assert path_of_word(dg, word_of_path(dg, path)) == path


def test_criterion_10_aperiodic_prefix(tors):
    with criterion(10, "aperiodic prefix separates all covered shifts (s,t), norm <= 2"):
        dg = dual(tors, ONES)
        rep = check_rs(dg, h3_m_bound=2)
        assert rep.h3_verdict == "pass-on-window", (
            "criterion needs a corpus graph passing (H3) on the window"
        )
        pre = aperiodic_prefix(dg, rep.h3_witnesses, count=len(rep.h3_witnesses))

        box = [Degree((a, b)) for a in range(3) for b in range(3)]
        checked = 0
        needed = {}
        for s, t in itertools.permutations(box, 2):
            hit = pre.separation_position(s, t)
            if hit is None:
                continue
            n_pos, index = hit
            needed[(s, t)] = (n_pos, index)
        positions = sorted({n + s for (s, t), (n, _) in needed.items()}
                           | {n + t for (s, t), (n, _) in needed.items()})
        letters = letters_at(dg, pre.path, positions)
        for (s, t), (n_pos, index) in needed.items():
            blk = pre.blocks[index - 1]
            m = (t[0] - s[0], t[1] - s[1])
            shifted = Degree((blk.witness_pos[0] + m[0], blk.witness_pos[1] + m[1]))
            expect = letters_at(dg, blk.witness, [blk.witness_pos, shifted])
            assert letters[n_pos + s] == expect[blk.witness_pos]
            assert letters[n_pos + t] == expect[shifted]
            assert letters[n_pos + s] != letters[n_pos + t], (tuple(s), tuple(t))
            checked += 1
        # with witnesses for the whole window, every pair with offset in the
        # window is covered
        assert checked == sum(
            1
            for s, t in itertools.permutations(box, 2)
            if (t[0] - s[0], t[1] - s[1]) in rep.h3_witnesses
        )
        assert checked >= 48
