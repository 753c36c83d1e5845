"""Walls in stability and parameter space, slice data, singular and translation hyperplanes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DimensionError, DomainError, ResourceError, UnsupportedError
from .quiver import Quiver, classify_quiver, is_primitive, p_value, root_kind, roots_bounded, tits_form
from .rational import dot, is_integral
from .weights import rho_vector


@dataclass(frozen=True, order=True)
class Hyperplane:
    """{x : normal . x = offset}, normal primitive integral with first nonzero entry positive."""

    normal: tuple[int, ...]
    offset: Fraction
    space: str = "lambda"  # theta | lambda
    provenance: str = field(default="classical", compare=False)
    source: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def make(cls, normal: Sequence, offset, space: str, provenance: str, source: dict | None = None):
        nrm = [Fraction(x) for x in normal]
        if not any(nrm):
            raise DomainError("hyperplane normal must be nonzero")
        lcm = math.lcm(*(x.denominator for x in nrm))
        ints = [int(x * lcm) for x in nrm]
        g = math.gcd(*ints)
        first = next(x for x in ints if x)
        scale = Fraction(lcm * (1 if first > 0 else -1), g)
        ints = [int(x * scale) for x in nrm]
        return cls(tuple(ints), Fraction(offset) * scale, space, provenance, source or {})

    def evaluate(self, x: Sequence) -> Fraction:
        return dot(self.normal, [Fraction(t) for t in x]) - self.offset

    def contains(self, x: Sequence) -> bool:
        return self.evaluate(x) == 0

    def to_dict(self) -> dict:
        from .rational import fmt

        d = {
            "normal": list(self.normal),
            "offset": fmt(self.offset),
            "space": self.space,
            "provenance": self.provenance,
        }
        if self.source:
            d["source"] = self.source
        return d


def _dedupe(hyps) -> tuple[Hyperplane, ...]:
    seen = {}
    for h in hyps:
        seen.setdefault((h.normal, h.offset, h.space), h)
    return tuple(sorted(seen.values()))


# --------------------------------------------------------------------------- #
# classical and quantum walls


def classical_walls(q: Quiver, v: Sequence[int], w: Sequence[int] | None = None) -> tuple[Hyperplane, ...]:
    """theta . v' = 0 for every root v' <= v, deduplicated after normalization."""
    if len(v) != q.n or (w is not None and len(w) != q.n):
        raise DimensionError("vector lengths must match the quiver")
    return _dedupe(
        Hyperplane.make(r.vector, 0, "theta", "classical", {"root": list(r.vector)})
        for r in roots_bounded(q, v)
    )


def quantum_walls(q: Quiver, v: Sequence[int], lam: Sequence) -> tuple:
    """Roots alpha <= v (real and imaginary) with lambda . alpha integral."""
    if len(v) != q.n or len(lam) != q.n:
        raise DimensionError("vector lengths must match the quiver")
    lam = [Fraction(x) for x in lam]
    return tuple(r for r in roots_bounded(q, v) if is_integral(dot(r.vector, lam)))


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    point: tuple[Fraction, ...]


def chambers(walls: Sequence[Hyperplane], dim: int) -> list[Chamber]:
    """Open chambers of a central arrangement as sign vectors over ``walls``.

    Feasibility of each sign pattern is decided by a linear program (maximize
    the common margin); every accepted pattern is confirmed by an exact check
    at a rational interior point.
    """
    from scipy.optimize import linprog

    if dim > 4:
        raise ResourceError("chamber enumeration is limited to rank <= 4")
    if any(h.offset for h in walls):
        raise DomainError("chamber enumeration expects central walls (offset 0)")
    normals = [h.normal for h in walls]

    def interior(signs):
        # maximize t subject to s_i n_i.x >= t, |x_j| <= 1, t <= 1
        used = normals[: len(signs)]
        a_ub = [[-s * c for c in n] + [1] for n, s in zip(used, signs)]
        res = linprog(
            c=[0] * dim + [-1],
            A_ub=a_ub,
            b_ub=[0] * len(a_ub),
            bounds=[(-1, 1)] * dim + [(None, 1)],
            method="highs",
        )
        if res.status != 0 or -res.fun <= 1e-9:
            return None
        pt = tuple(Fraction(x).limit_denominator(10**6) for x in res.x[:dim])
        if all(s * dot(n, pt) > 0 for n, s in zip(used, signs)):
            return pt
        raise ArithmeticError(f"could not certify chamber {signs} exactly")

    regions = [((), tuple(Fraction(0) for _ in range(dim)))]
    for _ in normals:
        nxt = []
        for signs, _pt in regions:
            for s in (1, -1):
                pt = interior(signs + (s,))
                if pt is not None:
                    nxt.append((signs + (s,), pt))
        regions = nxt
    return [Chamber(s, p) for s, p in regions]


# --------------------------------------------------------------------------- #
# slices


@dataclass(frozen=True)
class SliceData:
    hat_quiver: Quiver
    hat_v: tuple[int, ...]
    hat_w: tuple[int, ...]
    summands: tuple[tuple[int, ...], ...]
    linear: tuple[tuple[int, ...], ...]  # rows v^i: (r lambda)_i = lambda . v^i
    offset: tuple[Fraction, ...]  # r_hat(lambda) = r(lambda) + offset

    def restrict(self, lam: Sequence) -> tuple[Fraction, ...]:
        lam = [Fraction(x) for x in lam]
        return tuple(dot(row, lam) + c for row, c in zip(self.linear, self.offset))

    def to_dict(self) -> dict:
        from .rational import fmt

        return {
            "hat_quiver": self.hat_quiver.to_dict(),
            "hat_v": list(self.hat_v),
            "hat_w": list(self.hat_w),
            "summands": [list(s) for s in self.summands],
            "restriction": {"linear": [list(r) for r in self.linear], "offset": [fmt(c) for c in self.offset]},
        }


def slice_data(
    q: Quiver,
    v: Sequence[int],
    w: Sequence[int],
    v0: Sequence[int],
    summands: Sequence[tuple[Sequence[int], int]],
) -> SliceData:
    """Slice quiver data for v = v0 + sum n_i v^i with pairwise distinct roots v^i."""
    for x in (v, w, v0):
        if len(x) != q.n:
            raise DimensionError("vector lengths must match the quiver")
    vecs = [tuple(int(t) for t in s) for s, _ in summands]
    mults = [int(n) for _, n in summands]
    if any(len(s) != q.n for s in vecs):
        raise DimensionError("summand lengths must match the quiver")
    if any(n < 1 for n in mults):
        raise DomainError("multiplicities must be positive")
    if len(set(vecs)) != len(vecs):
        raise DomainError("the roots v^i must be pairwise distinct")
    for s in vecs:
        if root_kind(q, s) is None:
            raise DomainError(f"{s} is not a positive root")
    total = [v0[k] + sum(n * s[k] for s, n in zip(vecs, mults)) for k in range(q.n)]
    if tuple(total) != tuple(v):
        raise DomainError(f"v0 + sum n_i v^i = {tuple(total)} differs from v = {tuple(v)}")
    if any(x < 0 for x in v0):
        raise DomainError("v0 must be nonnegative")
    arrows = []
    m = len(vecs)
    for i in range(m):
        arrows.extend([(i, i)] * p_value(q, vecs[i]))
        for j in range(i + 1, m):
            c = -tits_form(q, vecs[i], vecs[j])
            if c < 0:
                raise DomainError(f"(v^{i}, v^{j}) > 0: no slice quiver for this decomposition")
            arrows.extend([(i, j)] * c)
    hat_w = tuple(dot(w, s) - tits_form(q, v0, s) for s in vecs)
    if any(x < 0 for x in hat_w):
        raise DomainError(f"negative slice framing {hat_w}")
    hq = Quiver(m, tuple(arrows), "slice")
    hat_v = tuple(mults)
    rho = rho_vector(q, v, w)
    rho_hat = rho_vector(hq, hat_v, hat_w)
    offset = tuple(-dot(s, rho) + rh for s, rh in zip(vecs, rho_hat))
    return SliceData(hq, hat_v, hat_w, tuple(vecs), tuple(vecs), offset)


# --------------------------------------------------------------------------- #
# singular hyperplanes


@dataclass(frozen=True)
class HatOracleEntry:
    root: tuple[int, ...]
    k: int
    loops: int
    hat_w: int
    values: tuple[Fraction, ...] | None  # None: no oracle for this hat shape


def _no_loop_oracle(hat_v: int, hat_w: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(s) for s in range(1 - hat_w, 0))


def _one_loop_oracle(hat_v: int, hat_w: int) -> tuple[Fraction, ...]:
    vals = set()
    for m in range(1, hat_v + 1):
        for r in range(-hat_w * m + 1, 0):
            vals.add(Fraction(r, m))
    return tuple(sorted(vals))


#: Singular sets of the one-vertex hat problems, keyed by loop count.
HAT_ORACLES: dict[int, Callable[[int, int], tuple[Fraction, ...]]] = {
    0: _no_loop_oracle,
    1: _one_loop_oracle,
}


@dataclass(frozen=True)
class SingularResult:
    hyperplanes: tuple[Hyperplane, ...]
    entries: tuple[HatOracleEntry, ...]

    @property
    def unknown(self) -> tuple[HatOracleEntry, ...]:
        return tuple(e for e in self.entries if e.values is None)


def singular_hyperplanes(q: Quiver, v: Sequence[int], w: Sequence[int]) -> SingularResult:
    """Conjectural singular hyperplanes in lambda-space.

    For each primitive root alpha <= v take the largest k with k alpha <= v and
    w.(v - k alpha) - (v - k alpha, v - k alpha)/2 >= 0; the hat problem is a
    single vertex with p(alpha) loops, v_hat = k and
    w_hat = w.alpha - (v, alpha) + k (alpha, alpha). Each singular value s of
    the hat problem gives alpha.(lambda - rho(v)) = s - rho_hat(v_hat).
    """
    if len(v) != q.n or len(w) != q.n:
        raise DimensionError("vector lengths must match the quiver")
    if classify_quiver(q).kind == "indefinite":
        raise UnsupportedError("singular hyperplanes are only generated for finite and affine quivers")
    rho = rho_vector(q, v, w)
    hyps = []
    entries = []
    for r in roots_bounded(q, v):
        alpha = r.vector
        if not is_primitive(alpha):
            continue
        kmax = min(v[i] // a for i, a in enumerate(alpha) if a)
        k = None
        for cand in range(kmax, 0, -1):
            u = [x - cand * a for x, a in zip(v, alpha)]
            if 2 * dot(w, u) - tits_form(q, u, u) >= 0:
                k = cand
                break
        if k is None:
            continue
        loops = p_value(q, alpha)
        hat_w = dot(w, alpha) - tits_form(q, v, alpha) + k * tits_form(q, alpha, alpha)
        oracle = HAT_ORACLES.get(loops)
        if oracle is None or hat_w < 0:
            entries.append(HatOracleEntry(alpha, k, loops, hat_w, None))
            continue
        values = oracle(k, hat_w)
        entries.append(HatOracleEntry(alpha, k, loops, hat_w, values))
        hat_q = Quiver(1, ((0, 0),) * loops)
        rho_hat = rho_vector(hat_q, (k,), (hat_w,))[0]
        base = dot(alpha, rho)
        for s in values:
            hyps.append(
                Hyperplane.make(
                    alpha,
                    base + s - rho_hat,
                    "lambda",
                    "singular-conjecture",
                    {"root": list(alpha), "k": k, "loops": loops, "hat_w": hat_w},
                )
            )
    return SingularResult(_dedupe(hyps), tuple(entries))


# --------------------------------------------------------------------------- #
# translation hyperplanes


def _k_translation(q: Quiver, v, w, alpha) -> int | None:
    b = Fraction(dot(w, alpha) - tits_form(q, v, alpha))
    disc = b * b / 4 - Fraction(tits_form(q, v, v), 2) + dot(w, v)
    if disc < 0:
        return None
    kmax = min(v[i] // a for i, a in enumerate(alpha) if a)
    for k in range(kmax, 0, -1):
        lhs = k + b / 2  # need lhs <= sqrt(disc)
        if lhs <= 0 or lhs * lhs <= disc:
            return k
    return None


def translation_bad_hyperplanes(
    q: Quiver, v: Sequence[int], w: Sequence[int], alpha: Sequence[int], chi: Sequence[int]
) -> tuple[Hyperplane, ...]:
    """Hyperplanes parallel to ker alpha where translation by chi may fail to be an equivalence."""
    for x in (v, w, alpha, chi):
        if len(x) != q.n:
            raise DimensionError("vector lengths must match the quiver")
    alpha = tuple(int(x) for x in alpha)
    if any(a > b for a, b in zip(alpha, v)):
        raise DomainError("ker alpha is not a classical wall: alpha is not <= v")
    kind = root_kind(q, alpha)
    c = dot(chi, alpha)
    qc = classify_quiver(q)
    if kind == "real":
        if c == 0:
            return ()
        k = _k_translation(q, v, w, alpha)
        if k is None:
            return ()
        w1 = dot(w, alpha) - tits_form(q, v, alpha) + 2 * k
        half = Fraction(w1, 2)
        base = dot(alpha, rho_vector(q, v, w))
        reach = abs(c) + abs(w1) + 1
        out = []
        for j in range(-reach, reach + 1):
            m = j + half
            a, b = m, m + c
            if (a >= half and b <= -half) or (b >= half and a <= -half):
                out.append(Hyperplane.make(alpha, m + base, "lambda", "translation", {"m": str(m), "k": k}))
        return _dedupe(out)
    if kind == "imaginary" and qc.kind == "affine" and alpha == qc.delta:
        n = v[0] // qc.delta[0]
        if tuple(v) != tuple(n * d for d in qc.delta) or tuple(w) != tuple(int(i == 0) for i in range(q.n)):
            raise UnsupportedError("the imaginary clause needs v = n delta and w = epsilon_0")
        if c == 0:
            return ()
        ms = range(-c + 1, 1) if c > 0 else range(1, -c + 1)
        out = []
        for m in ms:
            for qq in range(2, n + 1):
                for p in range(1 - qq, 0):
                    out.append(Hyperplane.make(alpha, m + Fraction(p, qq), "lambda", "translation", {"m": m}))
        return _dedupe(out)
    raise DomainError(f"{alpha} is neither a real root nor the affine delta")


# --------------------------------------------------------------------------- #
# perverse filtration constants


@dataclass(frozen=True)
class PerverseProfile:
    n: int
    m: int
    q: int
    d: tuple[int, ...]

    def filtration_index(self, i: int) -> int:
        if not 0 <= i <= self.d[0]:
            raise DomainError(f"index {i} outside 0..{self.d[0]}")
        return self.q + 1 - i // (self.m - 1)

    @property
    def index_table(self) -> tuple[int, ...]:
        return tuple(self.filtration_index(i) for i in range(self.d[0] + 1))

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "q": self.q, "d": list(self.d), "filtration_index": list(self.index_table)}


def perverse_profile(n: int, m: int) -> PerverseProfile:
    if m < 2:
        raise DomainError("m must be at least 2")
    if n < 1:
        raise DomainError("n must be positive")
    qq = n // m
    return PerverseProfile(n, m, qq, tuple((qq + 1 - i) * (m - 1) for i in range(qq + 2)))
