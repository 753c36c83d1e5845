import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quiverreps.errors import UnsupportedError
from quiverreps.quiver import Quiver, cyclic, d4, jordan, linear_a, loops, roots_bounded, single_vertex
from quiverreps.rational import dot, is_integral
from quiverreps.weights import (
    dominant_descent,
    freudenthal_mult,
    is_extremal,
    reflect_dim,
    reflect_dim_word,
    reflect_lambda_linear,
    reflect_param,
    rho_vector,
)

A2 = linear_a(2)
V1 = single_vertex()


def test_reflect_dim_examples():
    assert reflect_dim(0, (1,), (3,), V1) == (2,)
    assert reflect_dim(0, (1, 0), (1, 0), A2) == (0, 0)
    assert reflect_dim(1, reflect_dim(1, (2, 1), (1, 2), A2), (1, 2), A2) == (2, 1)
    with pytest.raises(UnsupportedError):
        reflect_dim(0, (1,), (1,), jordan())


def test_is_extremal_examples():
    assert is_extremal((0,), (2,), V1)
    assert not is_extremal((1,), (2,), V1)
    assert is_extremal((2,), (2,), V1)
    assert is_extremal((1, 1), (1, 0), cyclic(2)) is False
    assert is_extremal((1, 0), (1, 0), cyclic(2))
    with pytest.raises(UnsupportedError):
        is_extremal((1,), (1,), loops(2))


def test_rho_examples():
    assert rho_vector(V1, (3,), (5,)) == (F(5, 2),)
    for v1, v2 in itertools.product(range(4), repeat=2):
        assert rho_vector(A2, (v1, v2), (0, 0)) == (F(v2, 2), F(-v1, 2))
    # the displayed formula read literally gives +1/2 for Jordan with w = 1
    assert rho_vector(jordan(), (4,), (1,)) == (F(1, 2),)


@pytest.mark.parametrize("q", [A2, linear_a(3), cyclic(3), d4()])
def test_rho_orientation_change_is_integral(q):
    rq = q.reversed()
    for v in itertools.product(range(3), repeat=q.n):
        w = tuple(range(q.n))
        diff = [a - b for a, b in zip(rho_vector(q, v, w), rho_vector(rq, v, w))]
        assert all(x.denominator == 1 for x in diff)


def test_reflect_param_examples():
    assert reflect_param(0, (3,), (0,), (2,), V1) == (F(-1),)
    for lam in (F(1, 3), F(-5, 2), F(7)):
        assert reflect_param(0, (lam,), (1,), (2,), V1) == (2 - lam,)


QUIVERS = [V1, A2, linear_a(3), d4(), cyclic(2), cyclic(3)]
rat = st.builds(F, st.integers(-12, 12), st.integers(1, 6))


@st.composite
def instance(draw):
    q = draw(st.sampled_from(QUIVERS))
    v = tuple(draw(st.integers(0, 3)) for _ in range(q.n))
    w = tuple(draw(st.integers(0, 2)) for _ in range(q.n))
    lam = tuple(draw(rat) for _ in range(q.n))
    i = draw(st.integers(0, q.n - 1))
    return q, v, w, lam, i


@given(instance())
def test_reflect_param_identity_and_involution(data):
    q, v, w, lam, i = data
    sv = reflect_dim(i, v, w, q)
    slam = reflect_param(i, lam, v, w, q)
    # s.lambda - rho(s.v) = s(lambda - rho(v))
    lhs = [a - b for a, b in zip(slam, rho_vector(q, sv, w))]
    rhs = reflect_lambda_linear(i, [a - b for a, b in zip(lam, rho_vector(q, v, w))], q)
    assert tuple(lhs) == rhs
    assert reflect_param(i, slam, sv, w, q) == lam
    assert reflect_dim(i, sv, w, q) == v


@given(instance())
def test_reflect_param_integrality(data):
    q, v, w, lam, i = data
    slam = reflect_param(i, lam, v, w, q)
    lin = reflect_lambda_linear(i, lam, q)
    a = all(x.denominator == 1 for x in (s - l for s, l in zip(slam, lam)))
    b = all(x.denominator == 1 for x in (s - l for s, l in zip(lin, lam)))
    assert a == b


def _reflect_root(q, i, beta):
    c = sum(q.cartan[i][k] * b for k, b in enumerate(beta))
    return tuple(b - c * int(k == i) for k, b in enumerate(beta))


@given(instance())
def test_reflect_param_preserves_integral_roots(data):
    q, v, w, lam, i = data
    bound = (4,) * q.n
    slam = reflect_param(i, lam, v, w, q)
    for r in roots_bounded(q, bound):
        if not r.is_real or r.vector == tuple(int(k == i) for k in range(q.n)):
            continue
        s = _reflect_root(q, i, r.vector)
        assert is_integral(dot(lam, r.vector)) == is_integral(dot(slam, s))


def test_freudenthal_examples():
    for v in range(4):
        assert freudenthal_mult(V1, (3,), (v,)) == 1
    assert freudenthal_mult(V1, (3,), (4,)) == 0
    assert freudenthal_mult(A2, (1, 1), (1, 1)) == 2
    assert freudenthal_mult(cyclic(2), (1, 0), (1, 1)) == 1
    assert [freudenthal_mult(cyclic(2), (1, 0), (n, n)) for n in range(5)] == [1, 1, 2, 3, 5]
    assert [freudenthal_mult(cyclic(3), (1, 0, 0), (n, n, n)) for n in range(5)] == [1, 2, 5, 10, 20]
    with pytest.raises(UnsupportedError):
        freudenthal_mult(jordan(), (1,), (1,))
    with pytest.raises(UnsupportedError):
        freudenthal_mult(Quiver(2, ((0, 1), (0, 1), (0, 1))), (1, 0), (1, 1))


def test_freudenthal_sl3_adjoint_and_d4():
    # sl_3 adjoint: six roots of multiplicity one and a 2-dim zero weight
    dims = {v: freudenthal_mult(A2, (1, 1), v) for v in itertools.product(range(3), repeat=2)}
    assert sum(dims.values()) == 8
    # D4 adjoint w = fundamental at the center: zero weight has multiplicity 4
    w = (1, 0, 0, 0)
    assert freudenthal_mult(d4(), w, (2, 1, 1, 1)) == 4
    assert freudenthal_mult(d4(), w, (4, 2, 2, 2)) == 1
    assert sum(freudenthal_mult(d4(), w, v) for v in itertools.product(range(5), range(3), range(3), range(3))) == 28


@given(instance())
def test_freudenthal_dot_invariant(data):
    q, v, w, _, i = data
    sv = reflect_dim(i, v, w, q)
    if any(x < 0 for x in sv):
        assert freudenthal_mult(q, w, v) == 0
    else:
        assert freudenthal_mult(q, w, v) == freudenthal_mult(q, w, sv)
    if is_extremal(v, w, q):
        assert freudenthal_mult(q, w, v) == 1


def test_dominant_descent_word():
    v, w = (1, 1), (1, 1)
    res = dominant_descent(v, w, A2)
    vd, word = res
    assert reflect_dim_word(word, v, w, A2) == vd
