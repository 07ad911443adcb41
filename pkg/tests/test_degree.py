import pytest

from kgraphs.degree import Degree, lattice_points, parse_degree


def test_construction_rejects_negative():
    with pytest.raises(ValueError):
        Degree((1, -1))


def test_vector_arithmetic():
    a = Degree((2, 1))
    b = Degree((1, 3))
    assert a + b == Degree((3, 4))
    assert Degree((3, 4)) - b == a
    with pytest.raises(ValueError):
        a - b  # (2,1) - (1,3) leaves N^2


def test_lattice_operations():
    a = Degree((2, 1))
    b = Degree((1, 3))
    assert a.join(b) == Degree((2, 3))
    assert a.meet(b) == Degree((1, 1))
    assert not a.leq(b) and not b.leq(a)


def test_order_determines_join_meet(rng):
    # m <= n forces meet(m,n) = m and join(m,n) = n
    for _ in range(200):
        m = Degree((rng.randint(0, 5), rng.randint(0, 5)))
        n = m + Degree((rng.randint(0, 5), rng.randint(0, 5)))
        assert m.leq(n)
        assert m.meet(n) == m
        assert m.join(n) == n


def test_rank_mismatch():
    with pytest.raises(ValueError):
        Degree((1, 2)) + Degree((1, 2, 3))


def test_units_and_constants():
    assert Degree.zero(3) == Degree((0, 0, 0))
    assert Degree.ones(2) == Degree((1, 1))
    assert Degree.unit(2, 1) == Degree((1, 0))
    assert Degree.unit(2, 2) == Degree((0, 1))
    with pytest.raises(ValueError):
        Degree.unit(2, 3)


def test_lattice_points_enumeration():
    pts = list(lattice_points(Degree((2, 1))))
    assert len(pts) == 6
    assert pts[0] == Degree((0, 0))
    assert pts[-1] == Degree((2, 1))
    assert len(set(pts)) == 6


def test_parse_degree():
    assert parse_degree("2,1") == Degree((2, 1))
    assert parse_degree("0,0,3", k=3) == Degree((0, 0, 3))
    with pytest.raises(ValueError):
        parse_degree("1,2", k=3)
    with pytest.raises(ValueError):
        parse_degree("a,b")
