import pytest
from hypothesis import given, strategies as st

from nichols.braiding import GDDiagram
from nichols.cartan import (
    CartanMatrix,
    InvalidCartan,
    NotIFinite,
    cartan_entry,
    cartan_matrix,
    type_a,
)
from nichols.cyclotomic import Ambient, q_integer_is_zero
from nichols.reflection import reflect_diagram

from _support import ROWS, chain, row_diagrams


def brute_entry(d: GDDiagram, i: int, j: int, bound: int = 200) -> int:
    """Scan m with the product condition written out literally."""
    q, b = d.vertex[i], d.edge[i][j]
    for m in range(bound):
        first = q_integer_is_zero(m + 1, q)
        second = (q**m * b).is_one()
        if first or second:
            return -m
    raise AssertionError("no m found")


def two(amb, qii, edge, qjj=None):
    return GDDiagram.from_labels([amb(qii), amb(qjj if qjj is not None else qii)], [(0, 1, amb(edge))])


def test_entry_cube_root_with_inverse_edge():
    amb = Ambient(3, 7)
    d = two(amb, 1, 2)
    assert cartan_entry(d, 0, 1) == brute_entry(d, 0, 1) == -1


def test_entry_without_edge():
    d = two(Ambient(6, 7), 2, 0)
    assert cartan_entry(d, 0, 1) == 0


def test_entry_trivial_vertex_in_char_three():
    amb = Ambient(4, 3)
    d = two(amb, 0, 1)
    assert cartan_entry(d, 0, 1) == brute_entry(d, 0, 1) == -2


def test_entry_minus_one_vertex():
    amb = Ambient(10, 7)
    for e in range(1, 10):
        d = two(amb, 5, e)
        assert cartan_entry(d, 0, 1) == -1


def test_not_i_finite_in_char_zero():
    d = two(Ambient(6, 0), 0, 1)
    with pytest.raises(NotIFinite) as info:
        cartan_entry(d, 0, 1, m_max=50)
    assert info.value.i == 0 and info.value.j == 1


def test_cartan_matrix_examples():
    amb = Ambient(6, 7)
    assert cartan_matrix(row_diagrams(11)[0]) == type_a(5)
    disc = GDDiagram.from_labels([amb(2)] * 4, [])
    assert cartan_matrix(disc).a == tuple(tuple(2 if i == j else 0 for j in range(4)) for i in range(4))
    assert cartan_matrix(two(Ambient(3, 7), 1, 2)).a == ((2, -1), (-1, 2))


def test_invalid_cartan_rejected():
    with pytest.raises(InvalidCartan):
        CartanMatrix(((2, -1), (0, 2)))
    with pytest.raises(InvalidCartan):
        CartanMatrix(((1, 0), (0, 2)))
    with pytest.raises(InvalidCartan):
        CartanMatrix(((2, 1), (1, 2)))


def test_relabel():
    a = CartanMatrix(((2, -1, 0), (-2, 2, -1), (0, -1, 2)))
    assert a.relabel((2, 1, 0)).a == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))


@st.composite
def diagrams(draw):
    N = draw(st.integers(1, 30))
    p = draw(st.sampled_from([p for p in (2, 3, 5, 7) if N % p]))
    amb = Ambient(N, p)
    theta = draw(st.integers(2, 5))
    vs = [draw(st.integers(0, N - 1)) for _ in range(theta)]
    es = [(i, j, amb(draw(st.integers(0, N - 1)))) for i in range(theta) for j in range(i + 1, theta)]
    return GDDiagram.from_labels([amb(v) for v in vs], es)


@given(diagrams())
def test_entries_match_brute_scan(d):
    for i in range(d.theta):
        for j in range(d.theta):
            if i != j:
                assert cartan_entry(d, i, j) == brute_entry(d, i, j)


@given(diagrams())
def test_raising_the_bound_changes_nothing(d):
    a = cartan_matrix(d, m_max=60)
    assert cartan_matrix(d, m_max=1000) == a


@pytest.mark.parametrize("row_id", sorted(ROWS))
def test_row_preserved_by_reflection_on_fixtures(row_id):
    for d in row_diagrams(row_id):
        a = cartan_matrix(d)
        for i in range(d.theta):
            assert cartan_matrix(reflect_diagram(d, i)).a[i] == a.a[i]
