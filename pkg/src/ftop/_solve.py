"""Index-level backtracking searches shared by the lifting and universe code.

Maps are handled as tuples of codomain point indices aligned with the domain's
``points`` order; candidate sets are bitmasks over codomain indices.  All
enumeration orders are fixed, so every caller is deterministic.
"""
from __future__ import annotations

from typing import Iterator

from .space import Space

# hom-set cache keyed by object identity; values keep the spaces alive so ids
# stay valid for the lifetime of the cache
_HOM_CACHE: dict[tuple[int, int], tuple[Space, Space, tuple]] = {}


def enum_hom(X: Space, Y: Space, cand: list[int] | None = None) -> Iterator[tuple[int, ...]]:
    """All monotone assignments X -> Y within per-point candidate masks.

    Backtracks over ``X.points`` in order with ascending candidate values, so
    the stream is lexicographic on the emitted tuples.
    """
    nX = len(X.points)
    nY = len(Y.points)
    if nX == 0:
        yield ()
        return
    if nY == 0:
        return
    full = (1 << nY) - 1
    if cand is None:
        cand = [full] * nX
    upX, downX = X.up, X.down
    upY, downY = Y.up, Y.down
    t = [0] * nX
    # per point: earlier points it is related to, in each direction
    preds = [[j for j in range(i) if (downX[i] >> j) & 1] for i in range(nX)]
    succs = [[j for j in range(i) if (upX[i] >> j) & 1] for i in range(nX)]

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == nX:
            yield tuple(t)
            return
        mask = cand[i]
        for j in preds[i]:
            mask &= upY[t[j]]
            if not mask:
                return
        for j in succs[i]:
            mask &= downY[t[j]]
            if not mask:
                return
        while mask:
            low = mask & -mask
            t[i] = low.bit_length() - 1
            mask ^= low
            yield from rec(i + 1)

    yield from rec(0)


def hom(X: Space, Y: Space) -> tuple[tuple[int, ...], ...]:
    """All monotone assignments X -> Y, cached, in lexicographic order."""
    key = (id(X), id(Y))
    got = _HOM_CACHE.get(key)
    if got is not None:
        return got[2]
    result = tuple(enum_hom(X, Y))
    _HOM_CACHE[key] = (X, Y, result)
    return result


def solutions(X: Space, Y: Space, cand: list[int]) -> Iterator[tuple[int, ...]]:
    """Monotone assignments under candidate masks, found by forward checking.

    Points are processed in a linear extension of X's preorder and the least
    candidate is tried first; used where only a witness (or a complete but
    order-insensitive scan) is needed.
    """
    nX = len(X.points)
    nY = len(Y.points)
    if nX == 0:
        yield ()
        return
    if nY == 0 or any(c == 0 for c in cand):
        return
    ext = X.linear_extension()
    upX, downX = X.up, X.down
    upY, downY = Y.up, Y.down
    cand = list(cand)
    assigned = [-1] * nX

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        if k == nX:
            yield tuple(assigned)
            return
        i = ext[k]
        mask = cand[i]
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            mask ^= low
            saved = []
            dead = False
            for pos in range(k + 1, nX):
                j = ext[pos]
                nm = cand[j]
                if (upX[i] >> j) & 1:
                    nm &= upY[v]
                if (downX[i] >> j) & 1:
                    nm &= downY[v]
                if nm != cand[j]:
                    saved.append((j, cand[j]))
                    cand[j] = nm
                    if not nm:
                        dead = True
                        break
            if not dead:
                assigned[i] = v
                yield from rec(k + 1)
                assigned[i] = -1
            for j, old in saved:
                cand[j] = old

    yield from rec(0)


def first_solution(X: Space, Y: Space, cand: list[int]) -> tuple[int, ...] | None:
    return next(solutions(X, Y, cand), None)
