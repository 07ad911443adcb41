import pytest

from kgraphs import (
    Degree,
    KGraph,
    Edge,
    coordinate_matrix,
    format_group,
    k_groups,
    mode_agreement,
    qualifies_rs,
    relabeled,
    validate,
)
from kgraphs.matrix import IntMatrix
from kgraphs import samples

ONES = Degree((1, 1))


def test_format_group():
    assert format_group(0, ()) == "0"
    assert format_group(1, ()) == "Z"
    assert format_group(2, ()) == "Z^2"
    assert format_group(0, (2, 2)) == "Z/2 (+) Z/2"
    assert format_group(1, (4,)) == "Z (+) Z/4"


def test_t1_k_groups(t1):
    # matrices [1],[1]; both blocks are [0 0]; each cokernel is free of rank 1
    result = k_groups(t1, mode="direct", check_aperiodicity=False)
    assert result.k0_rank == 2 and result.k1_rank == 2
    assert result.k0_torsion == () and result.k1_torsion == ()
    dual_result = k_groups(t1, mode="dual", check_aperiodicity=False)
    assert (dual_result.k0_rank, dual_result.k0_torsion) == (2, ())


def test_flip2_k_groups_direct(flip2):
    # blocks [-1 0]: both cokernels vanish
    result = k_groups(flip2, mode="direct", check_aperiodicity=False)
    assert result.k0_rank == 0 and result.k1_rank == 0
    assert result.k0_torsion == () and result.k1_torsion == ()


def test_tors_k_groups(tors):
    # I-M1 = diag(-2,-2), I-M2 = [[0,-2],[-2,0]]; torsion Z/2 + Z/2 on both sides
    assert coordinate_matrix(tors, 1) == IntMatrix([[3, 0], [0, 3]])
    assert coordinate_matrix(tors, 2) == IntMatrix([[1, 2], [2, 1]])
    for mode in ("direct", "dual"):
        result = k_groups(tors, mode=mode, check_aperiodicity=False)
        assert result.k0_rank == 0 and result.k1_rank == 0
        assert result.k0_torsion == (2, 2)
        assert result.k1_torsion == (2, 2)


def test_k_groups_requires_no_sinks_sources(t1):
    g = KGraph(
        rank=2,
        vertices=["v", "w"],
        edges=list(t1.edges.values()),
        squares=list(t1.squares),
    )
    with pytest.raises(ValueError):
        k_groups(g, check_aperiodicity=False)


def test_k_groups_rejects_other_ranks():
    g = KGraph(rank=1, vertices=["v"], edges=[Edge("e", 1, "v", "v")], squares=[])
    assert validate(g).ok
    with pytest.raises(ValueError):
        k_groups(g)


def test_rank_equality_on_corpus(corpus):
    for g in corpus:
        result = k_groups(g, mode="dual", check_aperiodicity=False)
        assert result.k0_rank == result.k1_rank


def test_mode_agreement_fixtures(t1, flip2, tors):
    assert mode_agreement(t1)
    assert mode_agreement(flip2)
    assert mode_agreement(tors)


def test_mode_agreement_on_corpus(corpus):
    disagreements = []
    for i, g in enumerate(corpus):
        if not mode_agreement(g):
            a = k_groups(g, mode="dual", check_aperiodicity=False)
            b = k_groups(g, mode="direct", check_aperiodicity=False)
            disagreements.append((i, a, b))
    assert not disagreements, f"dual/direct modes disagree: {disagreements}"


def test_mode_agreement_on_fifty_graphs():
    # a larger sample than the shared corpus; any counterexample would be
    # a genuine finding and must surface verbatim
    graphs = samples.corpus(seed=24855, size=50)
    for i, g in enumerate(graphs):
        assert mode_agreement(g), f"modes disagree on graph #{i}"


def test_dual_mode_invariant_under_p(corpus):
    for g in corpus[:12]:
        base = k_groups(g, mode="dual", p=ONES, check_aperiodicity=False)
        for p in (Degree((2, 1)), Degree((1, 2))):
            other = k_groups(g, mode="dual", p=p, check_aperiodicity=False)
            assert other.k0_rank == base.k0_rank
            assert other.k0_torsion == base.k0_torsion
            assert other.k1_torsion == base.k1_torsion


def test_torsion_invariant_under_relabeling(tors):
    g = relabeled(
        tors,
        vertex_map={"u": "x9", "v": "a0"},
        edge_map={e: f"w{idx}" for idx, e in enumerate(sorted(tors.edges))},
    )
    ours = k_groups(g, mode="direct", check_aperiodicity=False)
    theirs = k_groups(tors, mode="direct", check_aperiodicity=False)
    assert ours.k0_torsion == theirs.k0_torsion
    assert ours.k1_torsion == theirs.k1_torsion
    assert ours.k0_rank == theirs.k0_rank


def test_hypotheses_populated(tors):
    result = k_groups(tors, mode="dual", h3_bound=1)
    hyp = result.hypotheses
    assert hyp.finite and hyp.no_sources and hyp.no_sinks and hyp.strongly_connected
    assert hyp.aperiodic_on_window is True
    assert hyp.h3_window_bound == 1
    skipped = k_groups(tors, mode="dual", check_aperiodicity=False)
    assert skipped.hypotheses.aperiodic_on_window is None


def test_qualifies_rs_t1(t1):
    # fails aperiodicity on any window; K-formulas still computed
    report = qualifies_rs(t1, h3_bound=1)
    assert report.finite and report.strongly_connected
    assert report.rs.h3_verdict == "fail"
    assert not report.conclusion_applies_on_window
    assert "not asserted" in report.render()
    result = k_groups(t1, check_aperiodicity=False)
    assert result.k0_rank == 2


def test_qualifies_rs_disconnected(t1):
    g = samples.disjoint_union(t1, t1)
    report = qualifies_rs(g, h3_bound=0)
    assert not report.strongly_connected
    assert not report.conclusion_applies_on_window


def test_qualifies_rs_tors(tors):
    report = qualifies_rs(tors, h3_bound=2)
    assert report.finite and report.strongly_connected
    assert report.rs.h3_verdict == "pass-on-window"
    assert report.conclusion_applies_on_window
    text = report.render()
    assert "purely infinite, simple, unital and nuclear" in text
