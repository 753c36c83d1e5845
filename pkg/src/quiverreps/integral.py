"""The integral subalgebra a attached to a parameter lambda and the predicted count.

a is spanned by the Cartan subalgebra and the real root spaces g_beta with
lambda.beta integral. The predicted number of finite-dimensional irreducibles
at (v, w, lambda) is the nu-weight dimension of the a-submodule of L_omega
generated by the extremal weight spaces.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .errors import DimensionError, DomainError, ResourceError, UnsupportedError
from .fock import FockSpace, cycle_order, multicharge_from_w
from .graded import GradedModule
from .hw import build_hw_module
from .quiver import Quiver, classify_quiver, finite_positive_roots, roots_bounded, single_vertex
from .rational import dot, is_integral
from .weights import is_extremal

DEFAULT_SLACK = int(os.environ.get("QUIVERREPS_SLACK", 2))

PROVEN_FINITE = "proven-finite-type"
PROVEN_ETINGOF = "proven-etingof-case"
CONJECTURAL = "conjectural"
KNOWN = "known-answer"
NOT_COMPUTABLE = "not-computable"


@dataclass(frozen=True)
class IntegralRootData:
    positive_roots: tuple[tuple[int, ...], ...]
    simple_system: tuple[tuple[int, ...], ...]

    @property
    def empty(self) -> bool:
        return not self.positive_roots

    def to_dict(self) -> dict:
        return {
            "positive_roots": [list(r) for r in self.positive_roots],
            "simple_system": [list(r) for r in self.simple_system],
        }


@dataclass(frozen=True)
class CountResult:
    count: int | None
    status: str
    branch: str
    details: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"count": self.count, "status": self.status, "branch": self.branch, **self.details}


def _real_roots(q: Quiver, bound: Sequence[int] | None) -> list[tuple[int, ...]]:
    if bound is None:
        return [r.vector for r in finite_positive_roots(q)]
    return [r.vector for r in roots_bounded(q, bound) if r.is_real]


def simple_subsystem(roots: Sequence[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Members that are not the sum of two members, in lexicographic order."""
    pool = set(roots)
    simple = []
    for r in roots:
        split = any(
            tuple(a - b for a, b in zip(r, s)) in pool
            for s in pool
            if s != r and all(b <= a for a, b in zip(r, s))
        )
        if not split:
            simple.append(r)
    return tuple(sorted(simple))


def integral_roots(q: Quiver, lam: Sequence, bound: Sequence[int] | None = None) -> IntegralRootData:
    """Positive real roots beta <= bound with lambda.beta integral.

    With ``bound=None`` the quiver must be of finite type and all positive roots
    are used.
    """
    if len(lam) != q.n:
        raise DimensionError("lambda length does not match the quiver")
    lam = [Fraction(x) for x in lam]
    roots = [r for r in _real_roots(q, bound) if is_integral(dot(r, lam))]
    roots.sort(key=lambda r: (sum(r), r))
    return IntegralRootData(tuple(roots), simple_subsystem(roots))


def a_submodule_dims(model: GradedModule, q: Quiver, w: Sequence[int], data: IntegralRootData) -> dict:
    """Dimensions of L^a at every weight of the model's window.

    Starts from all extremal weight spaces inside the window and closes under
    the raising and lowering root vectors of the simple roots of a.
    """
    ops = []
    for beta in data.simple_system:
        ops.append(model.root_vector_operator(beta, "raise"))
        ops.append(model.root_vector_operator(beta, "lower"))
    spaces: dict[tuple[int, ...], linalg.EchelonSpace] = {}
    queue = []
    for u, d in model.dims.items():
        if d and model.contains(u) and is_extremal(u, w, q):
            sp = spaces.setdefault(u, linalg.EchelonSpace(d))
            for k in range(d):
                vec = {k: Fraction(1)}
                if sp.add(vec):
                    queue.append((u, vec))
    while queue:
        u, vec = queue.pop()
        dense = [vec.get(k, Fraction(0)) for k in range(model.dim(u))]
        for op in ops:
            tgt = tuple(a + b for a, b in zip(u, op.shift))
            if any(x < 0 for x in tgt) or not model.contains(tgt) or not model.dim(tgt):
                continue
            block = op.blocks.get(u)
            if block is None:
                continue
            image = linalg.matvec(block, dense)
            sparse = {k: x for k, x in enumerate(image) if x}
            if not sparse:
                continue
            sp = spaces.setdefault(tgt, linalg.EchelonSpace(model.dim(tgt)))
            reduced = sp.reduce(sparse)
            if reduced and sp.add(reduced):
                queue.append((tgt, reduced))
    return {u: sp.dim for u, sp in spaces.items()}


def a_submodule_dim(model: GradedModule, q: Quiver, w, v_target, data: IntegralRootData) -> int:
    return a_submodule_dims(model, q, w, data).get(tuple(v_target), 0)


@lru_cache(maxsize=64)
def _hw_model(q: Quiver, w: tuple[int, ...]):
    return build_hw_module(q, w)


def _fock_model(q: Quiver, w: tuple[int, ...], bound: tuple[int, ...]):
    order = cycle_order(q)
    return FockSpace(q.n, multicharge_from_w(w, order), cap=sum(bound), bound=bound, quiver=q)


def _affine_count(q: Quiver, v, w, lam, slack: int) -> tuple[int, dict]:
    results = []
    for s in (slack, slack + 1):
        bound = tuple(x + s for x in v)
        F = _fock_model(q, tuple(w), bound)
        data = integral_roots(q, lam, bound)
        results.append(a_submodule_dim(F, q, w, v, data))
    if results[0] != results[1]:
        raise ResourceError(
            f"closure did not stabilize between slack {slack} and {slack + 1} "
            f"({results[0]} vs {results[1]}); rerun with a larger slack"
        )
    return results[0], {"slack": slack}


def predicted_count(q: Quiver, v: Sequence[int], w: Sequence[int], lam: Sequence, slack: int | None = None) -> CountResult:
    """Predicted number of finite-dimensional irreducibles at (v, w, lambda)."""
    if not (len(v) == len(w) == len(lam) == q.n):
        raise DimensionError("v, w and lambda must have one entry per vertex")
    v = tuple(int(x) for x in v)
    w = tuple(int(x) for x in w)
    lam = tuple(Fraction(x) for x in lam)
    if any(x < 0 for x in w):
        raise DomainError("framing must be nonnegative")
    slack = DEFAULT_SLACK if slack is None else slack
    kind = classify_quiver(q).kind

    if any(x < 0 for x in v):
        status = PROVEN_FINITE if kind == "finite" else CONJECTURAL
        return CountResult(0, status, "not-a-weight")

    # Jordan quiver with one-dimensional framing: one finite-dimensional simple
    # exactly when the denominator of kappa equals n
    if q.n == 1 and q.loops_at(0) == 1 and w == (1,):
        n = v[0]
        kappa = lam[0]
        if n == 0:
            count = 1
        elif kappa.denominator == 1:
            count = 0
        else:
            count = int(kappa.denominator == n)
        return CountResult(count, KNOWN, "jordan-denominator-rule")

    loops = q.loop_vertices
    if any(v[k] > 0 for k in loops):
        return CountResult(0, KNOWN, "loop-vertex-vanishing")
    if loops:
        if len(loops) == q.n:
            # v = 0 everywhere: the highest weight itself
            return CountResult(1, KNOWN, "loop-vertex-vanishing")
        sub, keep = q.without_vertices(loops)
        if not sub.is_connected():
            return CountResult(None, NOT_COMPUTABLE, "loop-deletion-disconnects")
        res = predicted_count(sub, [v[k] for k in keep], [w[k] for k in keep], [lam[k] for k in keep], slack)
        return CountResult(res.count, res.status, "loop-deletion/" + res.branch, res.details)

    if kind == "finite":
        M = _hw_model(q, w)
        if not M.dim(v):
            return CountResult(0, PROVEN_FINITE, "hw-model")
        data = integral_roots(q, lam)
        if len(data.positive_roots) == len(finite_positive_roots(q)):
            return CountResult(M.dim(v), PROVEN_FINITE, "hw-model/integral")
        if data.empty:
            return CountResult(int(is_extremal(v, w, q)), PROVEN_FINITE, "hw-model/generic")
        return CountResult(a_submodule_dim(M, q, w, v, data), PROVEN_FINITE, "hw-model/closure")

    if kind == "affine" and cycle_order(q) is not None:
        delta = classify_quiver(q).delta
        n = v[0] // delta[0]
        etingof = v == tuple(n * d for d in delta) and w == tuple(int(k == 0) for k in range(q.n))
        count, details = _affine_count(q, v, w, lam, slack)
        return CountResult(count, PROVEN_ETINGOF if etingof else CONJECTURAL, "fock-model/closure", details)

    return CountResult(None, NOT_COMPUTABLE, f"no-model-for-{kind}-type")


def grassmannian_singular_count(v: int, w: int, lam: int) -> int:
    """Predicted count at a singular integral lambda for the one-vertex quiver.

    i = v + 1 - min(v, -lambda, w + lambda); the answer is dim L[v] minus the
    dimension of the image of f^i landing in L[v], inside the (w+1)-dimensional
    sl_2 module.
    """
    lam_f = Fraction(lam)
    if lam_f.denominator != 1 or not (1 - w <= lam_f <= -1):
        raise DomainError("lambda must be an integer in [1 - w, -1]; use predicted_count otherwise")
    if not 0 <= v <= w:
        raise DomainError("need 0 <= v <= w")
    lam = int(lam_f)
    i = v + 1 - min(v, -lam, w + lam)
    q = single_vertex()
    M = _hw_model(q, (w,))
    total = M.dim((v,))
    src = v - i
    if src < 0 or not M.dim((src,)):
        return total
    f = M.chevalley(0, "f")
    mat = linalg.identity(M.dim((src,)))
    u = src
    for _ in range(i):
        mat = linalg.matmul(f.block((u,)), mat, inner=M.dim((u,)))
        u += 1
    return total - linalg.rank(mat)
