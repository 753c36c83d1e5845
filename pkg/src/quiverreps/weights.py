"""Weight bookkeeping for framed dimension vectors.

A pair (w, v) stands for the weight nu = omega - sum v_i alpha_i with
omega = sum w_i omega_i. Reflections act on v through the dot action, and on
parameters lambda through the shifted action built from ``rho_vector``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError, UnsupportedError
from .quiver import Quiver, classify_quiver, pairing_with_simple, roots_bounded, tits_form


@dataclass(frozen=True)
class FramedWeight:
    w: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.w) != len(self.v):
            raise DimensionError("w and v must have the same length")

    def pairing(self, q: Quiver, k: int) -> int:
        """<nu, alpha_k^vee> = w_k - (v, e_k)."""
        return self.w[k] - pairing_with_simple(q, self.v, k)


def _check(q: Quiver, *vecs):
    for x in vecs:
        if len(x) != q.n:
            raise DimensionError(f"vector of length {len(x)} for a quiver with {q.n} vertices")


def _check_vertex(q: Quiver, k: int):
    if not 0 <= k < q.n:
        raise DomainError(f"vertex {k} out of range")
    if q.has_loop(k):
        raise UnsupportedError(f"no reflection at vertex {k}: it carries a loop")


def weight_pairing(q: Quiver, v: Sequence[int], w: Sequence[int], k: int) -> int:
    return w[k] - pairing_with_simple(q, v, k)


def reflect_dim(k: int, v: Sequence[int], w: Sequence[int], q: Quiver) -> tuple[int, ...]:
    """Dot action s_k . v on dimension vectors."""
    _check(q, v, w)
    _check_vertex(q, k)
    out = list(v)
    out[k] = v[k] + weight_pairing(q, v, w, k)
    return tuple(out)


def reflect_dim_word(word: Iterable[int], v, w, q: Quiver) -> tuple[int, ...]:
    """Apply s_{word[-1]} first, as for a product of reflections."""
    v = tuple(v)
    for k in reversed(list(word)):
        v = reflect_dim(k, v, w, q)
    return v


def _require_tame(q: Quiver):
    kind = classify_quiver(q).kind
    if kind == "indefinite":
        raise UnsupportedError("only finite and affine quivers are supported here")
    return kind


def dominant_descent(v, w, q: Quiver) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Least-index descent towards a dominant weight.

    Returns (v_dom, word) with v_dom = s_word . v, or None once an entry turns
    negative (then nu is not a weight of L_omega in the orbit of a dominant one
    below omega).
    """
    v = list(v)
    word = []
    loops = set(q.loop_vertices)
    while True:
        for k in range(q.n):
            if k in loops:
                continue
            c = weight_pairing(q, v, w, k)
            if c < 0:
                v[k] += c
                word.append(k)
                if v[k] < 0:
                    return None
                break
        else:
            return tuple(v), tuple(reversed(word))


def is_extremal(v: Sequence[int], w: Sequence[int], q: Quiver) -> bool:
    """True iff nu lies in the Weyl orbit of omega."""
    _check(q, v, w)
    _require_tame(q)
    if any(x < 0 for x in v):
        return False
    res = dominant_descent(v, w, q)
    return res is not None and not any(res[0])


def rho_vector(q: Quiver, v: Sequence[int], w: Sequence[int]) -> tuple[Fraction, ...]:
    """rho(v)_k = -1/2 (sum_{h(a)=k} v_t(a) - sum_{t(a)=k} v_h(a) - w_k).

    Evaluated literally for the stored orientation. For the Jordan quiver with
    w = 1 this gives +1/2.
    """
    _check(q, v, w)
    acc = [Fraction(-x) for x in w]
    for t, h in q.arrows:
        acc[h] += v[t]
        acc[t] -= v[h]
    return tuple(-x / 2 for x in acc)


def reflect_lambda_linear(i: int, lam: Sequence, q: Quiver) -> tuple[Fraction, ...]:
    """Linear reflection (s_i lambda)_k = lambda_k - C_ki lambda_i, so (s_i l).b = l.(s_i b)."""
    c = q.cartan
    li = Fraction(lam[i])
    return tuple(Fraction(lam[k]) - c[k][i] * li for k in range(q.n))


def reflect_param(i: int, lam: Sequence, v, w, q: Quiver) -> tuple[Fraction, ...]:
    """Shifted action s_i . lambda = s_i lambda + rho(s_i . v) - s_i rho(v)."""
    _check(q, lam, v, w)
    _check_vertex(q, i)
    sl = reflect_lambda_linear(i, lam, q)
    r_new = rho_vector(q, reflect_dim(i, v, w, q), w)
    r_old = reflect_lambda_linear(i, rho_vector(q, v, w), q)
    return tuple(a + b - c for a, b, c in zip(sl, r_new, r_old))


# --------------------------------------------------------------------------- #
# Freudenthal multiplicities


def _root_multiplicities(q: Quiver, bound) -> list[tuple[tuple[int, ...], int]]:
    n = q.n
    return [(r.vector, 1 if r.is_real else n - 1) for r in roots_bounded(q, bound)]


def freudenthal_mult(q: Quiver, w: Sequence[int], v: Sequence[int]) -> int:
    """dim L_omega[nu] by Freudenthal's recursion, written in v-coordinates.

    (2 w.v + 2 sum v - (v,v)) m(v) = 2 sum_{a>0} mult(a) sum_{k>=1} (w.a - (v,a) + k (a,a)) m(v - k a)
    """
    _check(q, v, w)
    if q.loop_vertices:
        raise UnsupportedError("Freudenthal multiplicities need a loop-free quiver")
    _require_tame(q)
    if any(x < 0 for x in v) or any(x < 0 for x in w):
        return 0
    return _freudenthal(q, tuple(w), tuple(v))


@lru_cache(maxsize=None)
def _freudenthal_table(q: Quiver, w: tuple[int, ...], v: tuple[int, ...]) -> dict:
    roots = _root_multiplicities(q, v)
    norms = {a: tits_form(q, a, a) for a, _ in roots}
    memo: dict[tuple[int, ...], int] = {}

    def m(u):
        if u in memo:
            return memo[u]
        if not any(u):
            memo[u] = 1
            return 1
        lhs = 2 * sum(a * b for a, b in zip(w, u)) + 2 * sum(u) - tits_form(q, u, u)
        if lhs <= 0:
            memo[u] = 0
            return 0
        rhs = 0
        for a, mult in roots:
            k = 1
            while True:
                rest = tuple(x - k * y for x, y in zip(u, a))
                if any(x < 0 for x in rest):
                    break
                mr = m(rest)
                if mr:
                    coef = sum(x * y for x, y in zip(w, a)) - tits_form(q, u, a) + k * norms[a]
                    rhs += mult * coef * mr
                k += 1
        val = Fraction(2 * rhs, lhs)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"Freudenthal recursion produced {val} at {u}")
        memo[u] = int(val)
        return memo[u]

    m(v)
    return memo


def _freudenthal(q, w, v) -> int:
    return _freudenthal_table(q, w, v)[v]
