"""Charged Fock spaces for cyclic quivers.

Basis vectors are multipartitions (one partition per entry of the multicharge).
A node (row a, column b) of component k has residue (b - a + charge_k) mod l.
f_i adds and e_i removes every residue-i node with coefficient 1. The colour-
blind Heisenberg operators b_{-k} add border strips of size k with sign
(-1)^(rows - 1), summed over components, and b_k is the transpose.

Weights are stored in quiver-vertex coordinates: v[vertex] counts nodes whose
residue is attached to that vertex (see ``cycle_order``).
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DomainError, ResourceError, UnsupportedError
from .graded import GradedModule, GradedOperator
from .partitions import (
    Partition,
    add_border_strips,
    addable_nodes,
    as_partition,
    partition_list,
    partitions,
    remove_border_strips,
    removable_nodes,
)
from .quiver import Quiver, cyclic, jordan, tits_form

MAX_FOCK_BASIS = int(os.environ.get("QUIVERREPS_MAX_FOCK_BASIS", 60000))

Multipartition = tuple[Partition, ...]


def cycle_order(q: Quiver) -> list[int] | None:
    """Vertices listed by residue when the underlying graph is an l-cycle (l >= 2).

    Vertex 0 gets residue 0 and its smaller-index neighbour residue 1. For l = 2
    both the 2-cycle and the Kronecker quiver qualify.
    """
    n = q.n
    if n < 2 or q.loop_vertices:
        return None
    if n == 2:
        return [0, 1] if q.edge_count(0, 1) == 2 and len(q.arrows) == 2 else None
    if len(q.arrows) != n:
        return None
    nbrs = {k: [] for k in range(n)}
    for t, h in q.arrows:
        nbrs[t].append(h)
        nbrs[h].append(t)
    if any(len(set(x)) != 2 or len(x) != 2 for x in nbrs.values()):
        return None
    order = [0, min(nbrs[0])]
    while len(order) < n:
        a, b = order[-2], order[-1]
        nxt = [x for x in nbrs[b] if x != a][0]
        if nxt in order:
            return None
        order.append(nxt)
    return order if order[0] in nbrs[order[-1]] else None


def residue(node: tuple[int, int], charge: int, level: int) -> int:
    r, c = node
    return (c - r + charge) % level


def multicharge_from_w(w: Sequence[int], order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Charges listing residue r (the residue of vertex order[r]) w[order[r]] times."""
    order = list(range(len(w))) if order is None else list(order)
    out = []
    for r, vert in enumerate(order):
        out.extend([r] * w[vert])
    return tuple(out)


def _residue_counts(p: Partition, charge: int, level: int) -> list[int]:
    counts = [0] * level
    for a, row in enumerate(p):
        for b in range(row):
            counts[(b - a + charge) % level] += 1
    return counts


class DegreeModule(GradedModule):
    """The same Fock basis graded by total size only; hosts Heisenberg operators."""

    def __init__(self, fock: "FockSpace"):
        super().__init__(fock.quiver, fock.w)
        self.fock = fock
        self.basis: dict[tuple[int], list[Multipartition]] = {}
        for n in range(fock.cap + 1):
            items = sorted(mp for v, mps in fock.basis.items() if sum(v) == n for mp in mps)
            self.basis[(n,)] = items
            self.dims[(n,)] = len(items)
        self.index = {mp: (d, k) for d, items in self.basis.items() for k, mp in enumerate(items)}

    def contains(self, v) -> bool:
        return v[0] < 0 or v[0] <= self.fock.cap


class FockSpace(GradedModule):
    """Weight spaces of the charged Fock space up to ``cap`` nodes, optionally boxed by ``bound``."""

    def __init__(
        self,
        level: int,
        multicharge: Sequence[int] = (0,),
        cap: int = 8,
        bound: Sequence[int] | None = None,
        quiver: Quiver | None = None,
    ):
        if level < 1:
            raise DomainError("level must be positive")
        if not multicharge:
            raise DomainError("multicharge must be nonempty")
        if quiver is None:
            quiver = jordan() if level == 1 else cyclic(level)
        order = [0] if level == 1 else cycle_order(quiver)
        if order is None or len(order) != level:
            raise UnsupportedError("the Fock model needs a cyclic quiver")
        w = [0] * level
        for c in multicharge:
            w[order[c % level]] += 1
        super().__init__(quiver, w)
        self.level = level
        self.multicharge = tuple(int(c) for c in multicharge)
        self.order = order
        self.cap = cap
        self.bound = None if bound is None else tuple(bound)
        self.basis: dict[tuple[int, ...], list[Multipartition]] = {}
        self._build_basis()
        self.index = {mp: (v, k) for v, mps in self.basis.items() for k, mp in enumerate(mps)}
        self._degree: DegreeModule | None = None
        self._heis: dict[int, GradedOperator] = {}
        if level >= 2:
            self._build_chevalley()

    def __repr__(self):
        return f"<FockSpace l={self.level} charge={self.multicharge} cap={self.cap} dim={self.total_dim}>"

    # -- basis ---------------------------------------------------------------
    def contains(self, v) -> bool:
        if any(x < 0 for x in v):
            return True
        if sum(v) > self.cap:
            return False
        return self.bound is None or all(a <= b for a, b in zip(v, self.bound))

    def weight_of(self, mp: Multipartition) -> tuple[int, ...]:
        counts = [0] * self.level
        for p, c in zip(mp, self.multicharge):
            for r, x in enumerate(_residue_counts(p, c, self.level)):
                counts[r] += x
        v = [0] * self.level
        for r, x in enumerate(counts):
            v[self.order[r]] += x
        return tuple(v)

    def _build_basis(self):
        per_component = []
        for c in self.multicharge:
            items = []
            for n in range(self.cap + 1):
                for p in partition_list(n):
                    wv = self.weight_of_component(p, c)
                    if self.bound is None or all(a <= b for a, b in zip(wv, self.bound)):
                        items.append((p, wv))
            per_component.append(items)
        stack = [((), (0,) * self.level, 0)]
        for comp in per_component:
            nxt = []
            for mp, v, s in stack:
                for p, wv in comp:
                    s2 = s + sum(p)
                    if s2 > self.cap:
                        continue
                    v2 = tuple(a + b for a, b in zip(v, wv))
                    if self.bound is not None and any(a > b for a, b in zip(v2, self.bound)):
                        continue
                    nxt.append((mp + (p,), v2, s2))
                    if len(nxt) > MAX_FOCK_BASIS:
                        raise ResourceError(f"Fock basis exceeds {MAX_FOCK_BASIS} vectors")
            stack = nxt
        for mp, v, _ in stack:
            self.basis.setdefault(v, []).append(mp)
        for v in self.basis:
            self.basis[v].sort()
            self.dims[v] = len(self.basis[v])

    def weight_of_component(self, p: Partition, charge: int) -> tuple[int, ...]:
        v = [0] * self.level
        for r, x in enumerate(_residue_counts(p, charge, self.level)):
            v[self.order[r]] += x
        return tuple(v)

    # -- Chevalley operators -------------------------------------------------
    def _build_chevalley(self):
        n = self.level
        for vert in range(n):
            res = self.order.index(vert)
            unit = tuple(int(k == vert) for k in range(n))
            for kind, sgn in (("f", 1), ("e", -1)):
                blocks = {}
                for src, mps in self.basis.items():
                    tgt = tuple(a + sgn * b for a, b in zip(src, unit))
                    if not self.contains(tgt):
                        continue
                    m = linalg.zeros(self.dim(tgt), len(mps))
                    for col, mp in enumerate(mps):
                        for new in self._box_moves(mp, res, kind):
                            _, row = self.index[new]
                            m[row][col] += 1
                    blocks[src] = m
                shift = tuple(sgn * x for x in unit)
                self._chevalley[(vert, kind)] = GradedOperator(self, shift, blocks)

    def _box_moves(self, mp: Multipartition, res: int, kind: str) -> Iterable[Multipartition]:
        for k, (p, c) in enumerate(zip(mp, self.multicharge)):
            nodes = addable_nodes(p) if kind == "f" else removable_nodes(p)
            for node in nodes:
                if residue(node, c, self.level) != res:
                    continue
                r = node[0]
                rows = list(p) + [0]
                rows[r] += 1 if kind == "f" else -1
                yield mp[:k] + (as_partition(rows),) + mp[k + 1:]

    def chevalley(self, i: int, kind: str) -> GradedOperator:
        if self.level == 1:
            raise UnsupportedError("the l = 1 Fock space carries no Chevalley generators")
        return super().chevalley(i, kind)

    # -- Heisenberg operators ------------------------------------------------
    @property
    def degree_module(self) -> DegreeModule:
        if self._degree is None:
            self._degree = DegreeModule(self)
        return self._degree

    def heisenberg(self, k: int) -> GradedOperator:
        if k == 0:
            raise DomainError("b_0 is not defined")
        if abs(k) > self.cap:
            raise DomainError(f"|k| = {abs(k)} exceeds the cap {self.cap}")
        if k in self._heis:
            return self._heis[k]
        D = self.degree_module
        blocks = {}
        for n in range(self.cap + 1):
            tgt = n - k
            if tgt < 0 or tgt > self.cap:
                continue
            src_basis = D.basis[(n,)]
            m = linalg.zeros(D.dims[(tgt,)], len(src_basis))
            for col, mp in enumerate(src_basis):
                for new, sign in strip_moves(mp, k):
                    if new in D.index:
                        m[D.index[new][1]][col] += sign
            blocks[(n,)] = m
        op = GradedOperator(D, (-k,), blocks)
        self._heis[k] = op
        return op


def strip_moves(mp: Multipartition, k: int) -> list[tuple[Multipartition, int]]:
    """b_k on one basis vector: k < 0 adds strips of size -k, k > 0 removes strips of size k."""
    out = []
    for c, p in enumerate(mp):
        moves = add_border_strips(p, -k) if k < 0 else remove_border_strips(p, k)
        for new, sign in moves:
            out.append((mp[:c] + (new,) + mp[c + 1:], sign))
    return out


def chevalley_matrix(F: FockSpace, i: int, kind: str) -> GradedOperator:
    return F.chevalley(i, kind)


def heisenberg_matrix(F: FockSpace, k: int) -> GradedOperator:
    return F.heisenberg(k)


def is_core(p: Sequence[int], level: int) -> bool:
    """No removable rim hook of size level."""
    return not remove_border_strips(as_partition(p), level)


# --------------------------------------------------------------------------- #
# crystal


def crystal_op(mu, i: int, kind: str, multicharge: Sequence[int], level: int):
    """Kashiwara operator via the i-signature.

    Addable (+) and removable (-) i-nodes are read component by component in
    increasing index, each component by decreasing content. Adjacent "+-" pairs
    cancel; f~ adds the leftmost surviving + and e~ removes the rightmost
    surviving -. A plain partition is accepted when the multicharge has one entry.
    """
    if kind not in ("e", "f"):
        raise DomainError("kind must be 'e' or 'f'")
    single = not mu or not isinstance(mu[0], tuple)
    mp = (as_partition(mu),) if single else tuple(as_partition(p) for p in mu)
    if len(mp) != len(multicharge):
        raise DomainError("multicharge length must match the number of components")
    word = []
    for k, (p, c) in enumerate(zip(mp, multicharge)):
        nodes = [(node, "+") for node in addable_nodes(p)] + [(node, "-") for node in removable_nodes(p)]
        nodes = [(nd, s) for nd, s in nodes if residue(nd, c, level) == i % level]
        nodes.sort(key=lambda x: -(x[0][1] - x[0][0]))
        word.extend((k, nd, s) for nd, s in nodes)
    stack: list = []
    for item in word:
        if item[2] == "-" and stack and stack[-1][2] == "+":
            stack.pop()
        else:
            stack.append(item)
    plus = [x for x in stack if x[2] == "+"]
    minus = [x for x in stack if x[2] == "-"]
    if kind == "f":
        if not plus:
            return None
        k, (r, _), _ = plus[0]
        rows = list(mp[k]) + [0]
        rows[r] += 1
    else:
        if not minus:
            return None
        k, (r, _), _ = minus[-1]
        rows = list(mp[k])
        rows[r] -= 1
    out = mp[:k] + (as_partition(rows),) + mp[k + 1:]
    return out[0] if single else out


def crystal_component(level: int, multicharge: Sequence[int], max_size: int) -> set:
    """Vertices reachable from the empty multipartition by f~ within max_size nodes."""
    start = tuple(() for _ in multicharge)
    seen = {start}
    frontier = [start]
    for _ in range(max_size):
        nxt = []
        for mp in frontier:
            for i in range(level):
                new = crystal_op(mp, i, "f", multicharge, level)
                if new is not None and new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return seen


# --------------------------------------------------------------------------- #
# Heisenberg filtrations


def multipartitions(n: int, r: int) -> list[Multipartition]:
    if r == 1:
        return [(p,) for p in partition_list(n)]
    out = []
    for k in range(n + 1):
        for p in partition_list(k):
            for rest in multipartitions(n - k, r - 1):
                out.append((p,) + rest)
    return out


def heis_filtration_dims(m: int, r: int, n: int, max_basis: int | None = None) -> list[int]:
    """dim F_j at degree n for j = 0, 1, ... up to and including the first zero.

    F_j is spanned by b_{-m rho_1} ... b_{-m rho_k} applied to all vectors of
    degree n - m|rho|, over partitions rho with (r m - 1)|rho| >= j; the
    Heisenberg operators act diagonally on the r tensor factors.
    """
    if m < 2:
        raise DomainError("m must be at least 2")
    if r < 1 or n < 0:
        raise DomainError("r must be positive and n nonnegative")
    cap = MAX_FOCK_BASIS if max_basis is None else max_basis
    basis = multipartitions(n, r)
    if len(basis) > cap:
        raise ResourceError(f"degree {n} has {len(basis)} basis vectors (cap {cap})")
    index = {mp: k for k, mp in enumerate(basis)}
    jmax = n // m
    # cumulative spans from the largest J downwards
    acc = linalg.EchelonSpace(len(basis))
    cumulative = {}
    for J in range(jmax, 0, -1):
        for x in multipartitions(n - m * J, r):
            for rho in partitions(J):
                vec = {x: 1}
                for part in reversed(rho):
                    new = {}
                    for mp, c in vec.items():
                        for mp2, sign in strip_moves(mp, -m * part):
                            new[mp2] = new.get(mp2, 0) + sign * c
                    vec = {k: c for k, c in new.items() if c}
                if vec:
                    acc.add({index[k]: Fraction(c) for k, c in vec.items()})
        cumulative[J] = acc.dim
    cumulative[0] = len(basis)
    step = r * m - 1
    dims = []
    j = 0
    while True:
        J = -(-j // step)
        d = cumulative.get(J, 0) if J <= jmax else 0
        dims.append(d)
        if d == 0:
            break
        j += 1
    return dims


def o_support_bound(q: Quiver, v: Sequence[int], w: Sequence[int], m: int, s: int) -> int:
    """w.v - (v,v)/2 - s(wbar m - 1) with wbar = sum w."""
    wv = sum(a * b for a, b in zip(w, v))
    return wv - tits_form(q, v, v) // 2 - s * (sum(w) * m - 1)
