"""Backtracking search for structure-preserving bijections.

Shared by semigroup isomorphism and skeleton (category) isomorphism. Both
structures are encoded as a square table ``op[a, b]`` with ``-1`` marking
undefined products, so one engine handles total and partial operations.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def find_bijection(
    src_op: np.ndarray,
    tgt_op: np.ndarray,
    candidates: Sequence[Sequence[int]],
    order: Sequence[int],
) -> list[int] | None:
    """First bijection f (in search order) with f(ab) = f(a)f(b) and matching definedness.

    ``candidates[x]`` lists the admissible images of ``x`` in ascending order;
    ``order`` fixes which source element is branched on next. Every assignment
    is closed under products of already-assigned elements before branching
    again, so once a generating set is placed the rest is forced.
    """
    n = src_op.shape[0]
    if tgt_op.shape[0] != n:
        return None
    src = src_op.tolist()
    tgt = tgt_op.tolist()
    allowed = [set(c) for c in candidates]
    fwd = [-1] * n
    bwd = [-1] * n
    trail: list[int] = []

    def assign(x0: int, y0: int) -> bool:
        queue = [(x0, y0)]
        while queue:
            x, y = queue.pop()
            if fwd[x] != -1:
                if fwd[x] != y:
                    return False
                continue
            if bwd[y] != -1 or y not in allowed[x]:
                return False
            fwd[x] = y
            bwd[y] = x
            trail.append(x)
            row_x, col_y = src[x], tgt[y]
            for z in list(trail):
                fz = fwd[z]
                r, t = row_x[z], col_y[fz]
                if (r == -1) != (t == -1):
                    return False
                if r != -1:
                    queue.append((r, t))
                r, t = src[z][x], tgt[fz][y]
                if (r == -1) != (t == -1):
                    return False
                if r != -1:
                    queue.append((r, t))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            bwd[fwd[x]] = -1
            fwd[x] = -1

    def solve(pos: int) -> bool:
        while pos < len(order) and fwd[order[pos]] != -1:
            pos += 1
        if pos == len(order):
            return True
        x = order[pos]
        for y in candidates[x]:
            if bwd[y] != -1:
                continue
            mark = len(trail)
            if assign(x, y) and solve(pos + 1):
                return True
            undo(mark)
        return False

    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the source elements")
    return list(fwd) if solve(0) else None
