"""Weight-graded modules and operators shared by the highest-weight and Fock models.

Weights are indexed by dimension vectors v (nu = omega - sum v_i alpha_i). An
operator of shift s sends the v-space to the (v + s)-space; lowering operators
f have shift +e_i and raising operators e have shift -e_i. Each block is a
dense Fraction matrix of shape (dim target, dim source).

Models may be windowed (only weights inside a downward-closed box are stored).
Blocks whose target leaves the window are simply absent, so composites are
exact wherever their target lies in the window.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import linalg
from .errors import DomainError, UnsupportedError
from .quiver import Quiver, pairing_with_simple, root_kind

Weight = tuple[int, ...]


def _shift(v: Weight, s: Weight, sign: int = 1) -> Weight:
    return tuple(a + sign * b for a, b in zip(v, s))


class GradedOperator:
    def __init__(self, module: "GradedModule", shift: Weight, blocks: Mapping[Weight, linalg.Matrix]):
        self.module = module
        self.shift = tuple(shift)
        self.blocks = dict(blocks)

    def block(self, src: Weight) -> linalg.Matrix:
        """Matrix on the src-space (zero matrix when absent)."""
        b = self.blocks.get(src)
        if b is not None:
            return b
        return linalg.zeros(self.module.dim(_shift(src, self.shift)), self.module.dim(src))

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        shift = _shift(self.shift, other.shift)
        out = {}
        for src, b in other.blocks.items():
            mid = _shift(src, other.shift)
            a = self.blocks.get(mid)
            if a is None or not self.module.contains(_shift(src, shift)):
                continue
            out[src] = linalg.matmul(a, b, inner=self.module.dim(mid))
        return GradedOperator(self.module, shift, out)

    def _combine(self, other, sign):
        if self.shift != other.shift:
            raise DomainError("cannot add operators of different shift")
        out = {}
        for src in set(self.blocks) | set(other.blocks):
            a = self.block(src)
            b = other.block(src)
            out[src] = linalg.add(a, linalg.scale(b, sign)) if sign != 1 else linalg.add(a, b)
        return GradedOperator(self.module, self.shift, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scaled(self, c) -> "GradedOperator":
        return GradedOperator(self.module, self.shift, {k: linalg.scale(b, c) for k, b in self.blocks.items()})

    def is_zero(self, sources: Sequence[Weight] | None = None) -> bool:
        keys = self.blocks if sources is None else [s for s in sources if s in self.blocks]
        return all(linalg.is_zero(self.blocks[k]) for k in keys)

    def apply(self, src: Weight, vec: Sequence[Fraction]) -> list[Fraction]:
        return linalg.matvec(self.block(src), vec)


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    ab = a @ b
    ba = b @ a
    # a and b may have different shifts; the sum has shift a.shift + b.shift either way
    return ab - ba


class GradedModule:
    """Base class: subclasses fill ``dims`` and ``_chevalley`` (keyed by (i, 'e'|'f'))."""

    quiver: Quiver
    w: tuple[int, ...]

    def __init__(self, quiver: Quiver, w: Sequence[int]):
        self.quiver = quiver
        self.w = tuple(w)
        self.dims: dict[Weight, int] = {}
        self._chevalley: dict[tuple[int, str], GradedOperator] = {}
        self._root_cache: dict[tuple[Weight, str], GradedOperator] = {}
        self.bound: Weight | None = None

    # -- weights ------------------------------------------------------------
    def contains(self, v: Weight) -> bool:
        if any(x < 0 for x in v):
            return True  # empty spaces are known exactly
        if self.bound is None:
            return True
        return all(a <= b for a, b in zip(v, self.bound))

    def dim(self, v: Sequence[int]) -> int:
        return self.dims.get(tuple(v), 0)

    def weight_space_dim(self, v: Sequence[int]) -> int:
        return self.dim(v)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def h_value(self, i: int, v: Weight) -> int:
        return self.w[i] - pairing_with_simple(self.quiver, v, i)

    # -- operators ----------------------------------------------------------
    def chevalley(self, i: int, kind: str) -> GradedOperator:
        if kind not in ("e", "f"):
            raise DomainError("kind must be 'e' or 'f'")
        return self._chevalley[(i, kind)]

    def root_vector_operator(self, beta: Sequence[int], sign: str) -> GradedOperator:
        """Root vector for a positive real root along the canonical word.

        raise: e_beta = (ad e_i)^c e_gamma with gamma = s_i beta and c = (beta, alpha_i),
        i the least vertex with c > 0. lower: the image of e_beta under the
        anti-involution e_i <-> f_i, namely [...[f_gamma, f_i], ..., f_i].
        """
        beta = tuple(beta)
        if sign not in ("raise", "lower"):
            raise DomainError("sign must be 'raise' or 'lower'")
        key = (beta, sign)
        if key in self._root_cache:
            return self._root_cache[key]
        kind = root_kind(self.quiver, beta)
        if kind is None:
            raise DomainError(f"{beta} is not a positive root")
        if kind != "real":
            raise UnsupportedError("root vectors are only provided for real roots")
        nz = [k for k, x in enumerate(beta) if x]
        if len(nz) == 1:
            op = self.chevalley(nz[0], "e" if sign == "raise" else "f")
        else:
            i, c = canonical_step(self.quiver, beta)
            gamma = tuple(b - c * int(k == i) for k, b in enumerate(beta))
            op = self.root_vector_operator(gamma, sign)
            if sign == "raise":
                gen = self.chevalley(i, "e")
                for _ in range(c):
                    op = commutator(gen, op)
            else:
                gen = self.chevalley(i, "f")
                for _ in range(c):
                    op = commutator(op, gen)
        self._root_cache[key] = op
        return op


def canonical_step(q: Quiver, beta: Weight) -> tuple[int, int]:
    """Least vertex i with c = (beta, alpha_i) > 0; beta = s_i(gamma) + ..."""
    for i in range(q.n):
        if q.has_loop(i):
            continue
        c = pairing_with_simple(q, beta, i)
        if c > 0:
            return i, c
    raise DomainError(f"{beta} admits no descent step")


def canonical_word(q: Quiver, beta: Sequence[int]) -> tuple[int, ...]:
    """Reflections taking a simple root to beta, listed from the simple root outwards."""
    beta = tuple(beta)
    steps = []
    while sum(beta) > 1:
        i, c = canonical_step(q, beta)
        steps.append(i)
        beta = tuple(b - c * int(k == i) for k, b in enumerate(beta))
    steps.append(beta.index(1))
    return tuple(reversed(steps))


def check_chevalley_relations(
    module: GradedModule,
    sources: Sequence[Weight],
    include_serre: bool = True,
) -> list[str]:
    """Return descriptions of every failing relation on the given source weights."""
    q = module.quiver
    fails = []
    for i in range(q.n):
        for j in range(q.n):
            br = commutator(module.chevalley(i, "e"), module.chevalley(j, "f"))
            for s in sources:
                m = br.block(s)
                want = module.h_value(i, s) if i == j else 0
                expected = linalg.scale(linalg.identity(module.dim(s)), want) if i == j else None
                if expected is not None:
                    ok = len(m) == len(expected) and linalg.is_zero(linalg.sub(m, expected))
                else:
                    ok = linalg.is_zero(m)
                if not ok:
                    fails.append(f"[e{i},f{j}] at {s}")
            if include_serre and i != j:
                aij = q.cartan[i][j]
                for kind in ("e", "f"):
                    op = module.chevalley(j, kind)
                    gen = module.chevalley(i, kind)
                    for _ in range(1 - aij):
                        op = commutator(gen, op)
                    if not op.is_zero([s for s in sources if s in op.blocks]):
                        fails.append(f"serre {kind}{i},{kind}{j}")
    return fails
