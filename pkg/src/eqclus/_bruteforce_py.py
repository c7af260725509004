"""Pure-Python engine for exhaustive equal-partition optimization (p in {0, 1}).

Reference implementation for the compiled twin in _bruteforce.pyx; both must
enumerate canonical partitions in the same order and apply the same pruning
so they return bit-identical results.
"""

from __future__ import annotations


def _cluster_cost(coords, members, p: int) -> int:
    d = len(coords[0])
    total = 0
    if p == 0:
        for h in range(d):
            vals = sorted(coords[i][h] for i in members)
            best_run = run = 1
            for a, b in zip(vals, vals[1:]):
                run = run + 1 if a == b else 1
                if run > best_run:
                    best_run = run
            total += len(members) - best_run
    else:
        mid = (len(members) - 1) // 2
        for h in range(d):
            vals = sorted(coords[i][h] for i in members)
            med = vals[mid]
            total += sum(abs(v - med) for v in vals)
    return total


def best_equal_partition(coords, k: int, p: int):
    """Minimum-cost equal k-partition of n points given as integer tuples.

    Returns (cost, assignment) with assignment[i] the 0-based cluster of
    point position i. Clusters are enumerated canonically (each cluster
    anchored at its lowest unused position, members ascending), branches are
    cut once the running cost reaches the incumbent, and the first optimum in
    enumeration order wins.
    """
    n = len(coords)
    s = n // k
    used = [False] * n
    cur = [-1] * n
    best_cost: int | None = None
    best_assign: list[int] | None = None
    members: list[int] = []

    def complete(cluster_idx: int, total: int) -> None:
        nonlocal best_cost, best_assign
        if cluster_idx == k:
            if best_cost is None or total < best_cost:
                best_cost = total
                best_assign = cur.copy()
            return
        anchor = used.index(False)
        used[anchor] = True
        cur[anchor] = cluster_idx
        members.append(anchor)
        extend(anchor + 1, cluster_idx, total)
        members.pop()
        cur[anchor] = -1
        used[anchor] = False

    def extend(start: int, cluster_idx: int, total: int) -> None:
        nonlocal best_cost
        if len(members) % s == 0:
            new_total = total + _cluster_cost(coords, members[-s:], p)
            if best_cost is not None and new_total >= best_cost:
                return
            complete(cluster_idx + 1, new_total)
            return
        for pos in range(start, n):
            if used[pos]:
                continue
            used[pos] = True
            cur[pos] = cluster_idx
            members.append(pos)
            extend(pos + 1, cluster_idx, total)
            members.pop()
            cur[pos] = -1
            used[pos] = False

    complete(0, 0)
    assert best_cost is not None and best_assign is not None
    return best_cost, best_assign
