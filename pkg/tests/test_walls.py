import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quiverreps import walls as W
from quiverreps.errors import DomainError, ResourceError, UnsupportedError
from quiverreps.quiver import Quiver, cyclic, d4, jordan, linear_a, loops, roots_bounded, single_vertex
from quiverreps.rational import dot
from quiverreps.weights import rho_vector

A2 = linear_a(2)
V1 = single_vertex()


def _set(hyps):
    return {(h.normal, h.offset) for h in hyps}


def test_hyperplane_normalization():
    h = W.Hyperplane.make((-2, 4), F(3), "lambda", "classical")
    assert h.normal == (1, -2) and h.offset == F(-3, 2)
    assert h.contains((F(-3, 2), 0))
    with pytest.raises(DomainError):
        W.Hyperplane.make((0, 0), 0, "theta", "classical")


def test_classical_examples():
    assert _set(W.classical_walls(V1, (1,))) == {((1,), 0)}
    assert _set(W.classical_walls(A2, (1, 0))) == {((1, 0), 0)}
    assert _set(W.classical_walls(cyclic(2), (1, 1), (1, 0))) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 0)}
    assert all(h.space == "theta" for h in W.classical_walls(A2, (2, 2)))


def test_chambers():
    hs = W.classical_walls(cyclic(2), (1, 1))
    ch = W.chambers(hs, 2)
    assert len(ch) == 6
    for c in ch:
        assert all(s * h.evaluate(c.point) > 0 for s, h in zip(c.signs, hs))
    hs = W.classical_walls(linear_a(3), (1, 1, 1))
    assert len(hs) == 6 and len(W.chambers(hs, 3)) == 24
    with pytest.raises(ResourceError):
        W.chambers(W.classical_walls(linear_a(5), (1,) * 5), 5)


def test_quantum_examples():
    assert W.quantum_walls(V1, (2,), (F(1, 2),)) == ()
    got = W.quantum_walls(cyclic(2), (2, 2), (F(1, 4), F(1, 4)))
    assert [r.vector for r in got] == [(2, 2)]
    assert {r.vector for r in W.quantum_walls(A2, (2, 2), (3, -1))} == {r.vector for r in roots_bounded(A2, (2, 2))}


@given(st.lists(st.builds(F, st.integers(-6, 6), st.integers(1, 4)), min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_quantum_shift_invariant(lam, chi):
    shifted = [a + b for a, b in zip(lam, chi)]
    for q in (A2, cyclic(2)):
        assert W.quantum_walls(q, (3, 3), lam) == W.quantum_walls(q, (3, 3), shifted)


def test_slice_examples():
    s = W.slice_data(V1, (2,), (2,), (0,), [((1,), 2)])
    assert (s.hat_quiver.n, s.hat_quiver.arrows, s.hat_v, s.hat_w) == (1, (), (2,), (2,))
    s = W.slice_data(cyclic(2), (2, 2), (1, 0), (0, 0), [((1, 1), 2)])
    assert s.hat_quiver.arrows == ((0, 0),) and s.hat_v == (2,) and s.hat_w == (1,)
    s = W.slice_data(A2, (1, 1), (1, 1), (1, 0), [((0, 1), 1)])
    assert s.hat_quiver.arrows == () and s.hat_v == (1,) and s.hat_w == (2,)


def test_slice_restriction_map():
    q, v, w = A2, (1, 1), (1, 1)
    s = W.slice_data(q, v, w, (0, 0), [((1, 0), 1), ((0, 1), 1)])
    assert s.hat_quiver.arrows == ((0, 1),)
    lam = (F(1, 3), F(2, 5))
    rho, rho_hat = rho_vector(q, v, w), rho_vector(s.hat_quiver, s.hat_v, s.hat_w)
    want = tuple(dot(b, [a - r for a, r in zip(lam, rho)]) + rh for b, rh in zip(s.summands, rho_hat))
    assert s.restrict(lam) == want


def test_slice_errors():
    with pytest.raises(DomainError):
        W.slice_data(V1, (2,), (2,), (1,), [((1,), 2)])
    with pytest.raises(DomainError):
        W.slice_data(V1, (2,), (2,), (0,), [((2,), 1)])
    with pytest.raises(DomainError):
        W.slice_data(A2, (2, 0), (1, 1), (0, 0), [((1, 0), 1), ((1, 0), 1)])


@pytest.mark.parametrize("q, pairs", [(A2, [((1, 0), (0, 1))]), (cyclic(2), [((1, 0), (1, 1)), ((1, 1), (0, 1))])])
def test_slice_symmetry(q, pairs):
    for a, b in pairs:
        v = tuple(x + y for x, y in zip(a, b))
        s = W.slice_data(q, v, (1,) * q.n, (0,) * q.n, [(a, 1), (b, 1)])
        arrows01 = sum(1 for t, h in s.hat_quiver.arrows if {t, h} == {0, 1})
        assert arrows01 == -W.tits_form(q, a, b)
        assert s.hat_quiver.loops_at(0) == W.p_value(q, a) >= 0


def test_singular_examples():
    res = W.singular_hyperplanes(jordan(), (2,), (1,))
    assert _set(res.hyperplanes) == {((1,), F(-1, 2))}
    res = W.singular_hyperplanes(V1, (1,), (2,))
    assert _set(res.hyperplanes) == {((1,), F(-1))}
    res = W.singular_hyperplanes(cyclic(2), (1, 1), (1, 0))
    by_root = {e.root: e for e in res.entries}
    e1 = by_root[(0, 1)]
    assert (e1.k, e1.loops, e1.hat_w) == (1, 0, 2)
    d = by_root[(1, 1)]
    assert (d.k, d.loops, d.hat_w, d.values) == (1, 1, 1, ())
    assert res.unknown == ()
    with pytest.raises(UnsupportedError):
        W.singular_hyperplanes(loops(2), (1,), (1,))


def test_singular_unknown_oracle(monkeypatch):
    monkeypatch.delitem(W.HAT_ORACLES, 0)
    res = W.singular_hyperplanes(V1, (1,), (2,))
    assert res.hyperplanes == () and len(res.unknown) == 1 and res.unknown[0].loops == 0


@pytest.mark.parametrize("q", [A2, linear_a(3), cyclic(2), cyclic(3)])
def test_singular_orientation_shift(q):
    rq = q.reversed()
    for v in itertools.product(range(3), repeat=q.n):
        w = tuple((i + 1) % 3 for i in range(q.n))
        a = W.singular_hyperplanes(q, v, w).hyperplanes
        b = W.singular_hyperplanes(rq, v, w).hyperplanes
        drho = [x - y for x, y in zip(rho_vector(q, v, w), rho_vector(rq, v, w))]
        assert all(x.denominator == 1 for x in drho)
        shifted = {(h.normal, h.offset - dot(h.normal, drho)) for h in a}
        assert shifted == _set(b)


def test_translation_examples():
    assert W.translation_bad_hyperplanes(V1, (1,), (2,), (1,), (1,)) == ()
    hs = W.translation_bad_hyperplanes(V1, (1,), (2,), (1,), (3,))
    rho = rho_vector(V1, (1,), (2,))[0]
    assert sorted(h.offset - rho for h in hs) == [-2, -1]
    assert all(h.provenance == "translation" for h in hs)
    assert W.translation_bad_hyperplanes(A2, (1, 1), (1, 1), (1, 0), (0, 5)) == ()
    hs = W.translation_bad_hyperplanes(cyclic(2), (2, 2), (1, 0), (1, 1), (1, 0))
    assert _set(hs) == {((1, 1), F(-1, 2))}
    with pytest.raises(DomainError):
        W.translation_bad_hyperplanes(V1, (1,), (2,), (2,), (1,))


def test_perverse_examples():
    p = W.perverse_profile(4, 2)
    assert p.q == 2 and p.d == (3, 2, 1, 0)
    p = W.perverse_profile(3, 2)
    assert p.q == 1 and p.d[1] == 1
    assert p.filtration_index(0) == p.q + 1
    with pytest.raises(DomainError):
        W.perverse_profile(3, 1)


def test_perverse_index_table():
    for n, m in itertools.product(range(1, 13), range(2, 7)):
        p = W.perverse_profile(n, m)
        assert p.index_table == tuple(p.q + 1 - i // (m - 1) for i in range(p.d[0] + 1))
        assert all(a - b == m - 1 for a, b in zip(p.d, p.d[1:]))
