"""Quivers, the symmetrized Tits form, root enumeration and flatness tests."""

from __future__ import annotations

import itertools
import json
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from . import linalg
from .errors import DimensionError, DomainError, ResourceError, UnsupportedError
from .rational import dot

#: Upper bound on the number of lattice points scanned by root enumeration.
MAX_BOX_POINTS = int(os.environ.get("QUIVERREPS_MAX_BOX_POINTS", 200_000))
#: Default cap on sum(v) for the flatness test.
MAX_FLAT_TOTAL = int(os.environ.get("QUIVERREPS_MAX_FLAT_TOTAL", 12))


@dataclass(frozen=True)
class Quiver:
    """A finite quiver. Loops and parallel arrows are allowed."""

    vertex_count: int
    arrows: tuple[tuple[int, int], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise DomainError("a quiver needs at least one vertex")
        arrows = tuple((int(t), int(h)) for t, h in self.arrows)
        for t, h in arrows:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise DomainError(f"arrow {(t, h)} out of range")
        object.__setattr__(self, "arrows", arrows)

    @property
    def n(self) -> int:
        return self.vertex_count

    def loops_at(self, k: int) -> int:
        return sum(1 for t, h in self.arrows if t == h == k)

    def has_loop(self, k: int) -> bool:
        return self.loops_at(k) > 0

    @property
    def loop_vertices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.has_loop(k))

    def edge_count(self, i: int, j: int) -> int:
        """Number of arrows between distinct i and j, in either direction."""
        return sum(1 for t, h in self.arrows if {t, h} == {i, j} and t != h)

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return _cartan(self)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj = {k: set() for k in range(self.n)}
        for t, h in self.arrows:
            adj[t].add(h)
            adj[h].add(t)
        while stack:
            k = stack.pop()
            for j in adj[k] - seen:
                seen.add(j)
                stack.append(j)
        return len(seen) == self.n

    def reversed(self, which: Iterable[int] | None = None) -> "Quiver":
        """Reverse the arrows with the given indices (all arrows by default)."""
        idx = set(range(len(self.arrows)) if which is None else which)
        arrows = tuple((h, t) if a in idx else (t, h) for a, (t, h) in enumerate(self.arrows))
        return Quiver(self.n, arrows, self.name)

    def without_vertices(self, drop: Iterable[int]) -> tuple["Quiver", list[int]]:
        drop = set(drop)
        keep = [k for k in range(self.n) if k not in drop]
        index = {k: i for i, k in enumerate(keep)}
        arrows = tuple((index[t], index[h]) for t, h in self.arrows if t in index and h in index)
        return Quiver(len(keep), arrows), keep

    def to_dict(self) -> dict:
        d = {"vertices": self.n, "arrows": [list(a) for a in self.arrows]}
        if self.name:
            d["name"] = self.name
        return d

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Quiver{label} n={self.n} arrows={list(self.arrows)}>"


@lru_cache(maxsize=None)
def _cartan(q: Quiver) -> tuple[tuple[int, ...], ...]:
    c = [[2 * int(i == j) for j in range(q.n)] for i in range(q.n)]
    for t, h in q.arrows:
        c[t][h] -= 1
        c[h][t] -= 1
    return tuple(tuple(row) for row in c)


def _check_len(q: Quiver, *vecs: Sequence) -> None:
    for v in vecs:
        if len(v) != q.n:
            raise DimensionError(f"vector of length {len(v)} for a quiver with {q.n} vertices")


def tits_form(q: Quiver, x: Sequence[int], y: Sequence[int]):
    """Symmetrized Tits form 2 sum x_k y_k - sum_a (x_t y_h + x_h y_t)."""
    _check_len(q, x, y)
    total = 2 * sum(a * b for a, b in zip(x, y))
    for t, h in q.arrows:
        total -= x[t] * y[h] + x[h] * y[t]
    return total


def p_value(q: Quiver, v: Sequence[int]) -> int:
    """1 - (v, v)/2; a nonnegative value means v is a root (for v > 0)."""
    return 1 - tits_form(q, v, v) // 2


def pairing_with_simple(q: Quiver, x: Sequence, i: int):
    """(x, e_i) computed from the Cartan matrix."""
    return sum(c * a for c, a in zip(q.cartan[i], x))


# --------------------------------------------------------------------------- #
# classification


@dataclass(frozen=True)
class QuiverClass:
    kind: str  # finite | affine | indefinite
    delta: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.kind == "affine") != (self.delta is not None):
            raise ValueError("delta is present exactly for affine quivers")


@lru_cache(maxsize=None)
def classify_quiver(q: Quiver) -> QuiverClass:
    if not q.is_connected():
        raise UnsupportedError("disconnected quivers are not supported; pass components separately")
    c = linalg.as_matrix(q.cartan)
    null = linalg.nullspace(c)
    if len(null) == 1:
        u = null[0]
        if all(x > 0 for x in u) or all(x < 0 for x in u):
            lcm = math.lcm(*(x.denominator for x in u))
            ints = [abs(int(x * lcm)) for x in u]
            g = math.gcd(*ints)
            return QuiverClass("affine", tuple(x // g for x in ints))
        return QuiverClass("indefinite")
    if not null and linalg.leading_minors_positive(c):
        return QuiverClass("finite")
    return QuiverClass("indefinite")


# --------------------------------------------------------------------------- #
# roots


@dataclass(frozen=True, order=True)
class Root:
    vector: tuple[int, ...]
    kind: str = field(compare=False)  # real | imaginary

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def height(self) -> int:
        return sum(self.vector)

    def to_dict(self) -> dict:
        return {"vector": list(self.vector), "kind": self.kind}


def _support_connected(q: Quiver, a: Sequence[int]) -> bool:
    supp = {k for k, x in enumerate(a) if x}
    if not supp:
        return False
    start = next(iter(supp))
    seen = {start}
    stack = [start]
    while stack:
        k = stack.pop()
        for t, h in q.arrows:
            for x, y in ((t, h), (h, t)):
                if x == k and y in supp and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen == supp


@lru_cache(maxsize=200_000)
def root_kind(q: Quiver, alpha: tuple[int, ...]) -> str | None:
    """'real', 'imaginary', or None if ``alpha`` is not a positive root.

    Reflection descent: reflect at the least loop-free vertex with positive
    pairing until reaching a simple root or the fundamental region.
    """
    _check_len(q, alpha)
    a = list(alpha)
    if any(x < 0 for x in a) or not any(a):
        return None
    loops = set(q.loop_vertices)
    while True:
        nonzero = [k for k, x in enumerate(a) if x]
        if len(nonzero) == 1 and a[nonzero[0]] == 1 and nonzero[0] not in loops:
            return "real"
        if not _support_connected(q, a):
            return None
        for i in range(q.n):
            if i in loops:
                continue
            c = pairing_with_simple(q, a, i)
            if c > 0:
                a[i] -= c
                if a[i] < 0:
                    return None
                break
        else:
            return "imaginary" if p_value(q, a) >= 1 else None


def _box(bound: Sequence[int]):
    size = math.prod(b + 1 for b in bound)
    if size > MAX_BOX_POINTS:
        raise ResourceError(f"bound {tuple(bound)} spans {size} lattice points (cap {MAX_BOX_POINTS})")
    return itertools.product(*(range(b + 1) for b in bound))


@lru_cache(maxsize=4096)
def _roots_bounded(q: Quiver, bound: tuple[int, ...]) -> tuple[Root, ...]:
    out = []
    for alpha in _box(bound):
        kind = root_kind(q, alpha)
        if kind is not None:
            out.append(Root(alpha, kind))
    out.sort(key=lambda r: (r.height, r.vector))
    return tuple(out)


def roots_bounded(q: Quiver, bound: Sequence[int]) -> tuple[Root, ...]:
    """All positive roots 0 < alpha <= bound, sorted by (height, vector)."""
    _check_len(q, bound)
    if any(b < 0 for b in bound):
        return ()
    return _roots_bounded(q, tuple(bound))


def is_primitive(vec: Sequence[int]) -> bool:
    return math.gcd(*vec) == 1


# --------------------------------------------------------------------------- #
# flatness of the moment map


@dataclass(frozen=True)
class Decomposition:
    v0: tuple[int, ...]
    summands: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"v0": list(self.v0), "summands": [list(s) for s in self.summands]}


@dataclass(frozen=True)
class FlatnessResult:
    flat: bool
    margin: int  # minimum of the Crawley-Boevey expression over all decompositions
    witness: Decomposition | None = None

    def __bool__(self):
        return self.flat


def cb_margin(q: Quiver, v: Sequence[int], w: Sequence[int], dec: Decomposition) -> int:
    """p(v) + w.v - (w.v0 + p(v0) + sum p(v^i)) for one decomposition."""
    return (
        p_value(q, v)
        + dot(w, v)
        - dot(w, dec.v0)
        - p_value(q, dec.v0)
        - sum(p_value(q, s) for s in dec.summands)
    )


def cb_flat(
    q: Quiver,
    v: Sequence[int],
    w: Sequence[int],
    max_total: int | None = None,
) -> FlatnessResult:
    """Crawley-Boevey flatness test for the moment map of (Q, v, w).

    Maximizes w.v0 + p(v0) + sum p(v^i) over decompositions by dynamic
    programming over the box 0 <= u <= v, where M(u) is the best total of p over
    decompositions of u into roots. The witness is the decomposition with the
    smallest margin, ties broken by the lexicographically least v0.
    """
    _check_len(q, v, w)
    v = tuple(v)
    w = tuple(w)
    if any(x < 0 for x in v) or any(x < 0 for x in w):
        raise DomainError("dimension and framing vectors must be nonnegative")
    cap = MAX_FLAT_TOTAL if max_total is None else max_total
    if sum(v) > cap:
        raise ResourceError(f"sum(v) = {sum(v)} exceeds the flatness cap {cap}")
    roots = roots_bounded(q, v)
    rp = [(r.vector, p_value(q, r.vector)) for r in roots]

    best: dict[tuple[int, ...], int] = {}
    choice: dict[tuple[int, ...], tuple[int, ...] | None] = {}
    for u in _box(v):  # lexicographic order visits u - r before u
        if not any(u):
            best[u], choice[u] = 0, None
            continue
        top = None
        pick = None
        for r, pr in rp:
            if all(a <= b for a, b in zip(r, u)):
                rest = tuple(b - a for a, b in zip(r, u))
                val = pr + best[rest]
                if top is None or val > top:
                    top, pick = val, r
        best[u], choice[u] = top, pick

    def unwind(u):
        parts = []
        while any(u):
            r = choice[u]
            parts.append(r)
            u = tuple(b - a for a, b in zip(r, u))
        return tuple(sorted(parts, key=lambda x: (sum(x), x)))

    target = p_value(q, v) + dot(w, v)
    worst = None
    worst_v0 = None
    for v0 in _box(v):
        rest = tuple(a - b for a, b in zip(v, v0))
        val = dot(w, v0) + p_value(q, v0) + best[rest]
        margin = target - val
        if worst is None or margin < worst:
            worst, worst_v0 = margin, v0
    witness = None
    if worst < 0:
        rest = tuple(a - b for a, b in zip(v, worst_v0))
        witness = Decomposition(worst_v0, unwind(rest))
    return FlatnessResult(worst >= 0, worst, witness)


# --------------------------------------------------------------------------- #
# genericity


@dataclass(frozen=True)
class GenericityResult:
    generic: bool
    witness: Root | None = None

    def __bool__(self):
        return self.generic


def is_generic(
    q: Quiver,
    v: Sequence[int],
    w: Sequence[int],
    lam: Sequence,
    theta: Sequence,
) -> GenericityResult:
    """(lambda, theta) is generic iff no root v' <= v has v'.theta = v'.lambda = 0.

    Multiples k*delta of imaginary roots are tested too.
    """
    _check_len(q, v, w, lam, theta)
    lam = [Fraction(x) for x in lam]
    theta = [Fraction(x) for x in theta]
    for r in roots_bounded(q, v):
        if dot(r.vector, theta) == 0 and dot(r.vector, lam) == 0:
            return GenericityResult(False, r)
    return GenericityResult(True)


# --------------------------------------------------------------------------- #
# named quivers and quiver files


def linear_a(n: int) -> Quiver:
    return Quiver(n, tuple((k, k + 1) for k in range(n - 1)), f"a{n}")


def cyclic(ell: int) -> Quiver:
    if ell < 1:
        raise DomainError("cyclic quiver needs at least one vertex")
    return Quiver(ell, tuple((k, (k + 1) % ell) for k in range(ell)), f"cyclic:{ell}")


def jordan() -> Quiver:
    return Quiver(1, ((0, 0),), "jordan")


def single_vertex() -> Quiver:
    return Quiver(1, (), "vertex")


def d4() -> Quiver:
    return Quiver(4, ((1, 0), (2, 0), (3, 0)), "d4")


def loops(k: int) -> Quiver:
    return Quiver(1, tuple((0, 0) for _ in range(k)), f"loops:{k}")


_NAMED = re.compile(r"^(?:(vertex)|a(\d+)|(d4)|(jordan)|cyclic:(\d+)|loops:(\d+))$")


def named_quiver(name: str) -> Quiver:
    """Built-in quivers: vertex, a<n>, d4, jordan, cyclic:<l>, loops:<k>."""
    m = _NAMED.match(name.strip().lower())
    if not m:
        raise DomainError(f"unknown quiver name {name!r}")
    vertex, a, dd, jord, cyc, lp = m.groups()
    if vertex:
        return single_vertex()
    if a:
        if int(a) == 1:
            return Quiver(1, (), "a1")
        return linear_a(int(a))
    if dd:
        return d4()
    if jord:
        return jordan()
    if cyc:
        return cyclic(int(cyc))
    return loops(int(lp))


def quiver_from_dict(data: dict) -> Quiver:
    try:
        n = int(data["vertices"])
        arrows = tuple((int(t), int(h)) for t, h in data.get("arrows", []) or [])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed quiver description: {exc}") from exc
    return Quiver(n, arrows, data.get("name"))


def load_quiver(source: str) -> Quiver:
    """A built-in name, or a path to a YAML/JSON file with ``vertices`` and ``arrows``."""
    path = Path(source)
    if path.suffix.lower() in {".yaml", ".yml", ".json"} or path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise DomainError(f"cannot read quiver file {source!r}: {exc}") from exc
        try:
            data = json.loads(text) if path.suffix.lower() == ".json" else yaml.safe_load(text)
        except (json.JSONDecodeError, yaml.YAMLError) as exc:
            raise DomainError(f"cannot parse quiver file {source!r}: {exc}") from exc
        if not isinstance(data, dict):
            raise DomainError("quiver file must contain a mapping")
        return quiver_from_dict(data)
    return named_quiver(source)


@lru_cache(maxsize=None)
def finite_positive_roots(q: Quiver) -> tuple[Root, ...]:
    """All positive roots of a finite-type quiver, generated by simple reflections."""
    if classify_quiver(q).kind != "finite":
        raise UnsupportedError("finite_positive_roots needs a finite-type quiver")
    simples = [tuple(int(k == i) for k in range(q.n)) for i in range(q.n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(q.n):
                c = pairing_with_simple(q, beta, i)
                if c < 0:
                    gamma = tuple(b - c * int(k == i) for k, b in enumerate(beta))
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    out = sorted(seen, key=lambda r: (sum(r), r))
    return tuple(Root(r, "real") for r in out)
