"""Exact linear algebra over Q on small dense matrices (lists of Fraction rows).

Everything here is plain Gaussian elimination; matrices in this package rarely
exceed a few hundred rows, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not m:
        return 0, (cols or 0)
    return len(m), len(m[0])


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """``a @ b``; ``inner`` resolves the shape when one factor has zero rows."""
    n = len(a)
    k = len(b) if b else (inner or 0)
    p = len(b[0]) if b else 0
    out = zeros(n, p)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(p):
                    y = bt[j]
                    if y:
                        oi[j] += x * y
    return out


def matvec(a: Matrix, x: Sequence[Fraction]) -> Vector:
    return [sum((r * y for r, y in zip(row, x) if r and y), Fraction(0)) for row in a]


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*m)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns. Does not modify ``m``."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}."""
    n = len(m[0]) if m else (cols or 0)
    red, pivots = rref(m) if m else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector:
    """One solution of ``a x = b``; raises ValueError if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    aug = [list(a[i]) + [Fraction(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * cols
    for row, p in zip(red, pivots):
        x[p] = row[cols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def leading_minors_positive(a: Matrix) -> bool:
    """Sylvester's criterion via an LDL^T sweep without pivoting."""
    m = [list(row) for row in a]
    n = len(m)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return True


class EchelonSpace:
    """Incrementally grown subspace of Q^n kept in reduced echelon form.

    Vectors are sparse dicts ``{index: value}``. ``add`` returns True iff the
    vector enlarged the span.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        # rows are mutually reduced, so one pass over the pivots present suffices
        hits = [(p, v[p]) for p in v if p in self.rows]
        for p, c in hits:
            for k, x in self.rows[p].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict[int, Fraction]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        # keep existing rows reduced with respect to the new pivot
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def contains(self, vec: dict[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]
