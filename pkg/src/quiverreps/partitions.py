"""Partitions: basic combinatorics, the Mullineux involution and the wall-crossing map.

Partitions are tuples of positive integers in weakly decreasing order.
Boxes are (row, column) with 0-based indices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError

Partition = tuple[int, ...]


def as_partition(parts: Sequence[int]) -> Partition:
    p = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise DomainError(f"{tuple(parts)} is not a partition")
    return p


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partition_list(n: int) -> tuple[Partition, ...]:
    return tuple(partitions(n))


def partition_count(n: int) -> int:
    return len(partition_list(n)) if n >= 0 else 0


def transpose(p: Sequence[int]) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def size(p: Sequence[int]) -> int:
    return sum(p)


def is_regular(p: Sequence[int], e: int) -> bool:
    """No part is repeated e or more times."""
    run = 1
    for a, b in zip(p, p[1:]):
        run = run + 1 if a == b else 1
        if run >= e:
            return False
    return e > 1 or not p


def is_corestricted(p: Sequence[int], m: int) -> bool:
    """Every row difference (including the last row against 0) is below m."""
    rows = list(p) + [0]
    return all(rows[j] - rows[j + 1] < m for j in range(len(p)))


def regular_partitions(n: int, e: int) -> list[Partition]:
    return [p for p in partition_list(n) if is_regular(p, e)]


def addable_nodes(p: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for r in range(len(p) + 1):
        c = p[r] if r < len(p) else 0
        if r == 0 or p[r - 1] > c:
            out.append((r, c))
    return out


def removable_nodes(p: Sequence[int]) -> list[tuple[int, int]]:
    return [(r, p[r] - 1) for r in range(len(p)) if r == len(p) - 1 or p[r] > p[r + 1]]


def add_node(p: Sequence[int], r: int) -> Partition:
    q = list(p) + [0]
    q[r] += 1
    return as_partition(q)


def remove_node(p: Sequence[int], r: int) -> Partition:
    q = list(p)
    q[r] -= 1
    return as_partition(q)


def content(node: tuple[int, int]) -> int:
    r, c = node
    return c - r


# --------------------------------------------------------------------------- #
# border strips through beta-numbers


def _beta(p: Sequence[int], length: int) -> list[int]:
    parts = list(p) + [0] * (length - len(p))
    return [parts[i] + length - 1 - i for i in range(length)]


def _from_beta(beta: Sequence[int]) -> Partition:
    b = sorted(beta, reverse=True)
    L = len(b)
    return as_partition([b[i] - (L - 1 - i) for i in range(L)])


def add_border_strips(p: Sequence[int], k: int) -> list[tuple[Partition, int]]:
    """All (q, sign) with q/p a border strip of size k; sign = (-1)^(rows - 1)."""
    L = len(p) + k
    beta = _beta(p, L)
    occupied = set(beta)
    out = []
    for x in beta:
        y = x + k
        if y in occupied:
            continue
        leg = sum(1 for z in beta if x < z < y)
        new = [z for z in beta if z != x] + [y]
        out.append((_from_beta(new), -1 if leg % 2 else 1))
    return out


def remove_border_strips(p: Sequence[int], k: int) -> list[tuple[Partition, int]]:
    L = len(p) + k
    beta = _beta(p, L)
    occupied = set(beta)
    out = []
    for x in beta:
        y = x - k
        if y < 0 or y in occupied:
            continue
        leg = sum(1 for z in beta if y < z < x)
        new = [z for z in beta if z != x] + [y]
        out.append((_from_beta(new), -1 if leg % 2 else 1))
    return out


# --------------------------------------------------------------------------- #
# m-adic decomposition and wall-crossing


def m_adic_row_decompose(p: Sequence[int], m: int) -> tuple[Partition, Partition]:
    """Unique (p1, p2) with p = m*p1 + p2 rowwise and p2 m-corestricted."""
    if m < 2:
        raise DomainError("m must be at least 2")
    p = as_partition(p)
    rows = list(p) + [0]
    qs, rs = [], []
    for j in range(len(p)):
        q, r = divmod(rows[j] - rows[j + 1], m)
        qs.append(q)
        rs.append(r)
    # partial sums from the bottom row upwards
    p1 = [sum(qs[j:]) for j in range(len(p))]
    p2 = [sum(rs[j:]) for j in range(len(p))]
    return as_partition(p1), as_partition(p2)


# --------------------------------------------------------------------------- #
# Mullineux involution


def _rim(p: Partition) -> list[tuple[int, int]]:
    """Rim nodes from the top right to the bottom left."""
    out = []
    for i in range(len(p)):
        nxt = p[i + 1] if i + 1 < len(p) else 0
        for j in range(p[i] - 1, max(nxt - 1, 0) - 1, -1):
            out.append((i, j))
    return out


def e_rim(p: Sequence[int], e: int) -> list[tuple[int, int]]:
    """Union of e-segments: e consecutive rim nodes, each new segment starting in the row below."""
    p = as_partition(p)
    rim = _rim(p)
    if not rim:
        return []
    first_in_row = {}
    for idx, (i, _) in enumerate(rim):
        first_in_row.setdefault(i, idx)
    chosen = []
    start = 0
    while True:
        seg = rim[start:start + e]
        chosen.extend(seg)
        if len(seg) < e:
            break
        nxt_row = seg[-1][0] + 1
        if nxt_row not in first_in_row:
            break
        start = first_in_row[nxt_row]
    return chosen


def _strip(p: Partition, nodes) -> Partition:
    rows = list(p)
    for i, _ in nodes:
        rows[i] -= 1
    return as_partition(rows)


def mullineux_symbol(p: Sequence[int], e: int) -> list[tuple[int, int]]:
    """Columns (a_i, r_i): size of the successive e-rims and the number of rows at each stage."""
    p = as_partition(p)
    if not is_regular(p, e):
        raise DomainError(f"{p} is not {e}-regular")
    cols = []
    while p:
        rim = e_rim(p, e)
        cols.append((len(rim), len(p)))
        p = _strip(p, rim)
    return cols


def _with_rim(mu: Partition, a: int, rows: int, e: int) -> list[Partition]:
    """Partitions nu with `rows` rows, |nu| = |mu| + a, whose e-rim has size a and leaves mu."""
    out = []
    total = size(mu) + a
    for nu in partitions_with_length(total, rows):
        if len(nu) < len(mu) or any(x < y for x, y in zip(nu, mu)):
            continue
        if not is_regular(nu, e):
            continue
        rim = e_rim(nu, e)
        if len(rim) == a and _strip(nu, rim) == mu:
            out.append(nu)
    return out


def partitions_with_length(n: int, length: int, max_part: int | None = None) -> Iterator[Partition]:
    if length == 0:
        if n == 0:
            yield ()
        return
    if n < length:
        return
    top = n - (length - 1) if max_part is None else min(max_part, n - (length - 1))
    for first in range(top, 0, -1):
        if first * length < n:
            break
        for rest in partitions_with_length(n - first, length - 1, first):
            yield (first,) + rest


def partition_from_symbol(cols: Sequence[tuple[int, int]], e: int) -> Partition:
    mu: Partition = ()
    for a, r in reversed(list(cols)):
        found = _with_rim(mu, a, r, e)
        if len(found) != 1:
            raise ArithmeticError(f"symbol column {(a, r)} over {mu} has {len(found)} preimages")
        mu = found[0]
    return mu


@lru_cache(maxsize=None)
def _mullineux(p: Partition, e: int) -> Partition:
    sym = mullineux_symbol(p, e)
    image = [(a, a - r + (0 if a % e == 0 else 1)) for a, r in sym]
    return partition_from_symbol(image, e)


def mullineux(p: Sequence[int], e: int) -> Partition:
    """Mullineux involution on e-regular partitions via the e-rim symbol."""
    if e < 2:
        raise DomainError("e must be at least 2")
    return _mullineux(as_partition(p), e)


def conjugate_mullineux(p: Sequence[int], m: int) -> Partition:
    """M(p^t)^t, the Mullineux map transported to m-corestricted partitions."""
    return transpose(mullineux(transpose(p), m))


def wallcross_map(p: Sequence[int], m: int) -> Partition:
    """(m p1^t + M~(p2))^t where p = m p1 + p2 and M~ is Mullineux on corestricted partitions."""
    p1, p2 = m_adic_row_decompose(p, m)
    a = [m * x for x in transpose(p1)]
    b = list(conjugate_mullineux(p2, m))
    n = max(len(a), len(b))
    a += [0] * (n - len(a))
    b += [0] * (n - len(b))
    return transpose(as_partition([x + y for x, y in zip(a, b)]))
