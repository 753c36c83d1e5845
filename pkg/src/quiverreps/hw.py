"""Exact model of the irreducible integrable module L_omega for finite-type quivers.

Each weight space L[u] is spanned by vectors f_i b with b running over the
chosen basis of L[u - e_i]. The contravariant form <f_i b, f_j b'> =
<b, e_i f_j b'> is computed from the lower layers through
e_i f_j = f_j e_i + delta_ij h_i, which also yields the e-matrices. The form is
positive definite on L_omega, so a maximal independent set of candidates is
read off from the pivot columns of their Gram matrix.
"""

from __future__ import annotations

import os
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DimensionError, ResourceError, UnsupportedError
from .graded import GradedModule, GradedOperator
from .quiver import Quiver, classify_quiver, finite_positive_roots

MAX_TOTAL_DIM = int(os.environ.get("QUIVERREPS_MAX_MODULE_DIM", 20000))


class HighestWeightModule(GradedModule):
    """Weight spaces, bases (as (i, index) candidate labels), Gram matrices and Chevalley blocks."""

    def __init__(self, quiver: Quiver, w: Sequence[int]):
        super().__init__(quiver, w)
        self.labels: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        self.gram: dict[tuple[int, ...], linalg.Matrix] = {}
        self.complete = True

    def __repr__(self):
        return f"<HighestWeightModule w={self.w} total_dim={self.total_dim}>"


def _unit(n, k):
    return [Fraction(int(i == k)) for i in range(n)]


def weyl_dimension(q: Quiver, w: Sequence[int]) -> int:
    """dim L_omega by the Weyl dimension formula (finite simply-laced type)."""
    num = den = 1
    for r in finite_positive_roots(q):
        num *= sum(c * (x + 1) for c, x in zip(r.vector, w))
        den *= sum(r.vector)
    return num // den


def build_hw_module(
    q: Quiver,
    w: Sequence[int],
    depth: int | None = None,
    bound: Sequence[int] | None = None,
    max_dim: int | None = None,
) -> HighestWeightModule:
    """Construct L_omega, optionally truncated at height ``depth`` or to weights v <= bound.

    Truncation is exact on the weights that are kept, since each layer only
    reads the layers below it.
    """
    if len(w) != q.n:
        raise DimensionError("framing length does not match the quiver")
    if any(x < 0 for x in w):
        raise DimensionError("framing must be nonnegative")
    if q.loop_vertices:
        raise UnsupportedError("the highest-weight model needs a loop-free quiver")
    if classify_quiver(q).kind != "finite":
        raise UnsupportedError("the highest-weight model is only built for finite type")
    cap = MAX_TOTAL_DIM if max_dim is None else max_dim
    if depth is None and bound is None and weyl_dimension(q, w) > cap:
        raise ResourceError(f"dim L_omega = {weyl_dimension(q, w)} exceeds the cap {cap}")
    n = q.n
    M = HighestWeightModule(q, w)
    if bound is not None:
        M.bound = tuple(bound)
    zero = (0,) * n
    M.dims[zero] = 1
    M.labels[zero] = []
    M.gram[zero] = [[Fraction(1)]]
    F = defaultdict(dict)  # F[j][src] : L[src] -> L[src + e_j]
    E = defaultdict(dict)  # E[i][src] : L[src] -> L[src - e_i]
    for i in range(n):
        E[i][zero] = []  # maps into the empty space
    layer = [zero]
    height = 0
    total = 1
    while layer:
        if depth is not None and height >= depth:
            M.complete = False
            break
        height += 1
        targets = sorted({tuple(u[k] + int(k == j) for k in range(n)) for u in layer for j in range(n)})
        if M.bound is not None:
            kept = [u for u in targets if all(a <= b for a, b in zip(u, M.bound))]
            if len(kept) < len(targets):
                M.complete = False
            targets = kept
        next_layer = []
        for u in targets:
            dim = _build_weight(M, u, F, E)
            if dim:
                next_layer.append(u)
                total += dim
                if total > cap:
                    raise ResourceError(f"module dimension exceeds the cap {cap}")
        layer = next_layer
    # zero blocks for maps between stored spaces that were never filled
    for j in range(n):
        for src, d in M.dims.items():
            tgt = tuple(src[k] + int(k == j) for k in range(n))
            if M.contains(tgt) and src not in F[j]:
                F[j][src] = linalg.zeros(M.dim(tgt), d)
            tgt = tuple(src[k] - int(k == j) for k in range(n))
            if src not in E[j]:
                E[j][src] = linalg.zeros(M.dim(tgt), d)
    for i in range(n):
        M._chevalley[(i, "f")] = GradedOperator(M, tuple(int(k == i) for k in range(n)), F[i])
        M._chevalley[(i, "e")] = GradedOperator(M, tuple(-int(k == i) for k in range(n)), E[i])
    return M


def _build_weight(M: HighestWeightModule, u, F, E) -> int:
    q = M.quiver
    n = q.n
    cands = []  # (j, b): the vector f_j b with b in L[u - e_j]
    for j in range(n):
        src = tuple(u[k] - int(k == j) for k in range(n))
        for b in range(M.dim(src)):
            cands.append((j, b))
    if not cands:
        return 0

    # e_i f_j b' expressed in L[u - e_i], for each i and candidate (j, b')
    def ef(i, j, bp):
        src_j = tuple(u[k] - int(k == j) for k in range(n))
        tgt = tuple(u[k] - int(k == i) for k in range(n))
        d_tgt = M.dim(tgt)
        out = [Fraction(0)] * d_tgt
        if d_tgt == 0:
            return out
        mid = tuple(src_j[k] - int(k == i) for k in range(n))
        if M.dim(mid):
            col = [row[bp] for row in E[i][src_j]]
            out = linalg.matvec(F[j][mid], col)
        if i == j:
            out[bp] += M.h_value(i, src_j)
        return out

    images = {(i, c): ef(i, c[0], c[1]) for i in range(n) for c in cands}
    N = len(cands)
    gram = linalg.zeros(N, N)
    for a, (i, b) in enumerate(cands):
        tgt = tuple(u[k] - int(k == i) for k in range(n))
        g = M.gram[tgt]
        gb = g[b]
        for c_idx, c in enumerate(cands):
            x = images[(i, c)]
            gram[a][c_idx] = sum((s * t for s, t in zip(gb, x) if s and t), Fraction(0))
    _, pivots = linalg.rref(gram)
    if not pivots:
        return 0
    basis = [cands[p] for p in pivots]
    d = len(basis)
    G = [[gram[r][c] for c in pivots] for r in pivots]
    Ginv = linalg.inverse(G)
    M.dims[u] = d
    M.labels[u] = basis
    M.gram[u] = G
    # f_j from L[u - e_j]: coordinates of candidate (j, b) in the chosen basis
    for j in range(n):
        src = tuple(u[k] - int(k == j) for k in range(n))
        ds = M.dim(src)
        if not ds:
            continue
        block = linalg.zeros(d, ds)
        for b in range(ds):
            col_idx = cands.index((j, b))
            rhs = [gram[p][col_idx] for p in pivots]
            x = linalg.matvec(Ginv, rhs)
            for r in range(d):
                block[r][b] = x[r]
        F[j][src] = block
    # e_i on L[u]: the basis vector f_j b maps to e_i f_j b
    for i in range(n):
        tgt = tuple(u[k] - int(k == i) for k in range(n))
        block = linalg.zeros(M.dim(tgt), d)
        for c_idx, c in enumerate(basis):
            x = images[(i, c)]
            for r in range(len(x)):
                block[r][c_idx] = x[r]
        E[i][u] = block
    return d


def weight_space_dim(M: GradedModule, v: Sequence[int]) -> int:
    return M.dim(v)
