import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oracles import a2_half_integral_zero_weight_dim
from quiverreps.errors import DomainError
from quiverreps.hw import build_hw_module
from quiverreps.integral import (
    CONJECTURAL,
    KNOWN,
    NOT_COMPUTABLE,
    PROVEN_ETINGOF,
    PROVEN_FINITE,
    IntegralRootData,
    a_submodule_dim,
    a_submodule_dims,
    grassmannian_singular_count,
    integral_roots,
    predicted_count,
)
from quiverreps.partitions import partition_count
from quiverreps.quiver import Quiver, cyclic, d4, jordan, linear_a, loops, single_vertex
from quiverreps.weights import freudenthal_mult, is_extremal

A2 = linear_a(2)
V1 = single_vertex()


def test_integral_roots_examples():
    assert integral_roots(V1, (F(1, 2),), (2,)).empty
    assert integral_roots(V1, (2,), (2,)).positive_roots == ((1,),)
    data = integral_roots(cyclic(2), (F(1, 2), F(1, 2)), (3, 3))
    assert data.empty
    data = integral_roots(A2, (F(1, 2), F(1, 2)))
    assert data.positive_roots == ((1, 1),) and data.simple_system == ((1, 1),)
    data = integral_roots(linear_a(3), (0, 0, 0))
    assert data.simple_system == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


@given(st.lists(st.builds(F, st.integers(-9, 9), st.integers(1, 4)), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_integral_roots_shift_invariant(lam, chi):
    q = linear_a(3)
    shifted = [a + b for a, b in zip(lam, chi)]
    assert integral_roots(q, lam) == integral_roots(q, shifted)
    assert integral_roots(cyclic(3), lam, (2, 2, 2)) == integral_roots(cyclic(3), shifted, (2, 2, 2))


def test_a_submodule_boundary_cases():
    M = build_hw_module(A2, (1, 1))
    empty = integral_roots(A2, (F(1, 3), F(1, 5)))
    assert empty.empty
    full = integral_roots(A2, (0, 0))
    for v in itertools.product(range(3), repeat=2):
        assert a_submodule_dim(M, A2, (1, 1), v, empty) == int(M.dim(v) > 0 and is_extremal(v, (1, 1), A2))
        assert a_submodule_dim(M, A2, (1, 1), v, full) == freudenthal_mult(A2, (1, 1), v)


def test_a2_half_integral_benchmark():
    M = build_hw_module(A2, (1, 1))
    data = integral_roots(A2, (F(1, 2), F(1, 2)))
    assert a_submodule_dim(M, A2, (1, 1), (1, 1), data) == 1 == a2_half_integral_zero_weight_dim()
    res = predicted_count(A2, (1, 1), (1, 1), (F(1, 2), F(1, 2)))
    assert (res.count, res.status) == (1, PROVEN_FINITE)


def test_closure_monotone_and_order_free():
    q, w = linear_a(3), (1, 0, 1)
    M = build_hw_module(q, w)
    full = integral_roots(q, (0, 0, 0))
    simple = list(full.simple_system)
    rng = random.Random(7)
    base = a_submodule_dims(M, q, w, full)
    for _ in range(5):
        rng.shuffle(simple)
        assert a_submodule_dims(M, q, w, IntegralRootData(full.positive_roots, tuple(simple))) == base
    for k in range(len(simple) + 1):
        for sub in itertools.combinations(simple, k):
            small = a_submodule_dims(M, q, w, IntegralRootData(sub, sub))
            for u, d in small.items():
                assert d <= base.get(u, 0)


def test_predicted_count_examples():
    res = predicted_count(A2, (1, 1), (1, 1), (0, 0))
    assert (res.count, res.status) == (2, PROVEN_FINITE)
    q = Quiver(2, ((0, 0), (0, 1)))
    assert predicted_count(q, (1, 0), (1, 1), (0, 0)).count == 0
    assert predicted_count(loops(2), (3,), (1,), (F(1, 2),)).count == 0
    assert predicted_count(loops(2), (0,), (1,), (0,)).count == 1
    res = predicted_count(jordan(), (3,), (1,), (F(2, 3),))
    assert (res.count, res.status) == (1, KNOWN)
    # loop deletion leaves the A1 piece
    res = predicted_count(q, (0, 1), (0, 2), (0, 0))
    assert res.count == 1 and res.branch.startswith("loop-deletion/")


def test_sl2_sweep_table():
    # single vertex, w = 2: extremal v always 1, v = 1 counts iff lambda integral
    for lam in [F(k) for k in range(-3, 4)] + [F(1, 2)]:
        for v in (0, 2):
            assert predicted_count(V1, (v,), (2,), (lam,)).count == 1
        assert predicted_count(V1, (1,), (2,), (lam,)).count == int(lam.denominator == 1)


def test_affine_cyclic_counts():
    q = cyclic(2)
    for n in range(4):
        res = predicted_count(q, (n, n), (1, 0), (0, 0))
        assert res.count == partition_count(n)
        assert res.status == PROVEN_ETINGOF
    res = predicted_count(q, (1, 1), (1, 0), (F(1, 3), F(1, 7)))
    assert res.count == 0
    res = predicted_count(q, (1, 0), (1, 0), (F(1, 3), F(1, 7)))
    assert res.count == 1 and res.status == CONJECTURAL


def test_not_computable_and_errors():
    aff_d4 = Quiver(5, ((1, 0), (2, 0), (3, 0), (4, 0)))
    res = predicted_count(aff_d4, (1, 0, 0, 0, 0), (1, 0, 0, 0, 0), (0,) * 5)
    assert res.count is None and res.status == NOT_COMPUTABLE
    with pytest.raises(DomainError):
        predicted_count(A2, (1, 1), (-1, 1), (0, 0))
    assert predicted_count(A2, (-1, 0), (1, 1), (0, 0)).count == 0


rat = st.builds(F, st.integers(-8, 8), st.integers(1, 3))


@given(st.sampled_from([V1, A2]), st.data())
def test_count_bounded_by_multiplicity(q, data):
    v = tuple(data.draw(st.integers(0, 3)) for _ in range(q.n))
    w = tuple(data.draw(st.integers(0, 2)) for _ in range(q.n))
    lam = tuple(data.draw(rat) for _ in range(q.n))
    chi = tuple(data.draw(st.integers(-2, 2)) for _ in range(q.n))
    res = predicted_count(q, v, w, lam)
    assert 0 <= res.count <= freudenthal_mult(q, w, v)
    shifted = tuple(a + b for a, b in zip(lam, chi))
    assert predicted_count(q, v, w, shifted).count == res.count


def test_grassmannian_examples():
    assert grassmannian_singular_count(1, 2, -1) == 0
    assert grassmannian_singular_count(2, 2, -1) == 0
    for w in range(2, 5):
        for lam in range(1 - w, 0):
            assert grassmannian_singular_count(0, w, lam) == 1
    with pytest.raises(DomainError):
        grassmannian_singular_count(1, 2, 0)
    with pytest.raises(DomainError):
        grassmannian_singular_count(3, 2, -1)
    with pytest.raises(DomainError):
        grassmannian_singular_count(1, 3, F(-1, 2))
