from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quiverreps import linalg
from quiverreps.errors import DomainError
from quiverreps.rational import fmt, parse_rational, parse_rational_vector


def test_rank_and_nullspace():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert linalg.rank(m) == 2
    ns = linalg.nullspace(m)
    assert len(ns) == 1
    assert linalg.is_zero([linalg.matvec(m, ns[0])])


def test_inverse_roundtrip():
    m = [[F(2), F(1)], [F(1), F(1)]]
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(2)


def test_echelon_space():
    sp = linalg.EchelonSpace(3)
    assert sp.add({0: F(1), 1: F(1)})
    assert not sp.add({0: F(2), 1: F(2)})
    assert sp.add({2: F(1)})
    assert sp.dim == 2
    assert sp.contains({0: F(3), 1: F(3), 2: F(-1)})


small = st.integers(-4, 4).map(F)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_nullity(rows):
    assert linalg.rank(rows) + len(linalg.nullspace(rows)) == 3


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_of_transpose(rows):
    assert linalg.rank(rows) == linalg.rank(linalg.transpose(rows))


def test_parse_and_format():
    assert parse_rational("-3/6") == F(-1, 2)
    assert fmt(F(4, 2)) == "2"
    assert parse_rational_vector("1/2, -1") == (F(1, 2), F(-1))
    with pytest.raises(DomainError):
        parse_rational("0.5")
    with pytest.raises(DomainError):
        parse_rational("1/0")
