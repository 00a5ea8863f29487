"""The lifting-property decision procedure and bounded orthogonal classes.

A lifting problem for i: A -> X against g: Y -> B is a commutative square
(f: A -> Y, phi: X -> B); "i lifts against g" means every such square admits a
monotone diagonal h: X -> Y with h∘i = f and g∘h = phi.  Squares are
enumerated in a fixed canonical order (phi lexicographic, then f), so failing
certificates always report the least counterexample.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ._solve import enum_hom, first_solution, hom, solutions
from .errors import CapacityError, MapError
from .space import CMap, Space, compose, identity, map_to_json

MATRIX_MAX_N = 3  # largest bound for the pairwise lifting matrix (multi-letter words)


def monotone_maps(x: Space, y: Space) -> list[CMap]:
    """All continuous maps x -> y, in a deterministic canonical order."""
    yp = y.points
    return [
        CMap(x, y, {p: yp[t[k]] for k, p in enumerate(x.points)})
        for t in hom(x, y)
    ]


def _fibers(g: CMap) -> list[int]:
    fib = [0] * len(g.dst.points)
    for yk, bk in enumerate(g.as_tuple()):
        fib[bk] |= 1 << yk
    return fib


@dataclass(frozen=True)
class Square:
    """A commutative lifting problem from i: A -> X to g: Y -> B."""

    i: CMap
    g: CMap
    f: CMap
    phi: CMap

    def __post_init__(self):
        if self.f.src != self.i.src or self.f.dst != self.g.src:
            raise MapError("square: f must run from dom(i) to dom(g)")
        if self.phi.src != self.i.dst or self.phi.dst != self.g.dst:
            raise MapError("square: phi must run from cod(i) to cod(g)")
        if compose(self.f, self.g) != compose(self.i, self.phi):
            raise MapError("square does not commute: g∘f != phi∘i")

    def to_json(self) -> dict:
        return {"f": map_to_json(self.f), "phi": map_to_json(self.phi)}


def _square_streams(i: CMap, g: CMap) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(phi, f) index-tuple pairs of all commutative squares, canonical order."""
    A, X = i.src, i.dst
    Y, B = g.src, g.dst
    it = i.as_tuple()
    fib = _fibers(g)
    nA = len(A.points)
    for phi in hom(X, B):
        cand = [fib[phi[it[a]]] for a in range(nA)]
        if 0 in cand:
            continue
        for f in enum_hom(A, Y, cand):
            yield phi, f


def squares(i: CMap, g: CMap) -> list[Square]:
    """All commutative squares from i to g."""
    A, X = i.src, i.dst
    Y, B = g.src, g.dst
    out = []
    for phi_t, f_t in _square_streams(i, g):
        phi = CMap(X, B, {p: B.points[phi_t[k]] for k, p in enumerate(X.points)})
        f = CMap(A, Y, {p: Y.points[f_t[k]] for k, p in enumerate(A.points)})
        out.append(Square(i, g, f, phi))
    return out


def _fill_tuple(i: CMap, g: CMap, phi_t, f_t) -> tuple[int, ...] | None:
    X, Y = i.dst, g.src
    it = i.as_tuple()
    fib = _fibers(g)
    cand = [fib[b] for b in (phi_t[x] for x in range(len(X.points)))]
    for a, fa in enumerate(f_t):
        xa = it[a]
        cand[xa] &= 1 << fa
    return first_solution(X, Y, cand)


def fill(sq: Square) -> Optional[CMap]:
    """A diagonal filler for the square, or None if none exists."""
    X, Y = sq.i.dst, sq.g.src
    t = _fill_tuple(sq.i, sq.g, sq.phi.as_tuple(), sq.f.as_tuple())
    if t is None:
        return None
    return CMap(X, Y, {p: Y.points[t[k]] for k, p in enumerate(X.points)})


def lifts_bool(i: CMap, g: CMap) -> bool:
    """Decide i ⧄ g, short-circuiting on the first unfillable square."""
    for phi_t, f_t in _square_streams(i, g):
        if _fill_tuple(i, g, phi_t, f_t) is None:
            return False
    return True


@dataclass(frozen=True)
class LiftCertificate:
    """Verdict of a lifting query with re-checkable evidence.

    When the property holds, ``fillers`` lists one diagonal per square in the
    canonical enumeration order.  When it fails, ``counterexample`` is the
    canonically least unfillable square and the search for its filler was
    exhaustive over all monotone candidates.
    """

    i: CMap
    g: CMap
    holds: bool
    squares: int
    fillers: tuple[CMap, ...] = ()
    counterexample: Optional[Square] = None

    def recheck(self) -> bool:
        """Re-verify the certificate content by direct composition checks."""
        if self.holds:
            sqs = squares(self.i, self.g)
            if len(sqs) != self.squares or len(self.fillers) != self.squares:
                return False
            for sq, h in zip(sqs, self.fillers):
                if compose(sq.i, h) != sq.f or compose(h, sq.g) != sq.phi:
                    return False
            return True
        sq = self.counterexample
        if sq is None:
            return False
        return fill(sq) is None

    def to_json(self) -> dict:
        fillers: dict | str
        if not self.holds:
            fillers = {}
        else:
            blobs = [sorted(h.assign.items()) for h in self.fillers]
            if self.squares <= 64:
                fillers = {str(k): dict(b) for k, b in enumerate(blobs)}
            else:
                digest = hashlib.sha256(
                    json.dumps(blobs, sort_keys=True).encode()
                ).hexdigest()
                fillers = digest
        return {
            "holds": self.holds,
            "squares": self.squares,
            "counterexample": None
            if self.counterexample is None
            else self.counterexample.to_json(),
            "fillers": fillers,
        }


def lifts(i: CMap, g: CMap) -> LiftCertificate:
    """Decide i ⧄ g with a full certificate (fillers or one counterexample)."""
    A, X = i.src, i.dst
    Y, B = g.src, g.dst
    fillers = []
    count = 0
    for phi_t, f_t in _square_streams(i, g):
        count += 1
        h = _fill_tuple(i, g, phi_t, f_t)
        if h is None:
            phi = CMap(X, B, {p: B.points[phi_t[k]] for k, p in enumerate(X.points)})
            f = CMap(A, Y, {p: Y.points[f_t[k]] for k, p in enumerate(A.points)})
            return LiftCertificate(
                i, g, False, count, (), Square(i, g, f, phi)
            )
        fillers.append(
            CMap(X, Y, {p: Y.points[h[k]] for k, p in enumerate(X.points)})
        )
    return LiftCertificate(i, g, True, count, tuple(fillers), None)


# -- bounded orthogonal classes ----------------------------------------------


@dataclass(frozen=True)
class BoundedClass:
    """A relative (bounded-universe) orthogonal class.

    ``exact`` is True only for single-letter words computed against an
    explicit base, where the lifting predicate is decided outright.  Longer
    words over-approximate the true orthogonal intersected with the universe;
    ``caveat`` spells this out and downstream reports must carry it.
    """

    base: tuple[CMap, ...]
    word: str
    n: int
    indices: tuple[int, ...]
    exact: bool

    @property
    def caveat(self) -> str:
        if self.exact:
            return ""
        return (
            f"bounded universe (n={self.n}): each step after the first "
            "over-approximates the true orthogonal within the universe"
        )

    def maps(self) -> list[CMap]:
        from .universe import get_universe

        u = get_universe(self.n)
        return [u.map_at(k) for k in self.indices]

    def __contains__(self, f: CMap) -> bool:
        from .universe import get_universe

        idx = get_universe(self.n).index_of_map(f)
        return idx is not None and idx in set(self.indices)


_MATRIX_MEMO: dict[int, list[int]] = {}


def lifting_matrix(n: int, jobs: int = 1) -> list[int]:
    """Pairwise lifting table over the n-universe: row i, bit j = m_i ⧄ m_j."""
    from .universe import _load_cache, _save_cache, get_universe
    from ._parallel import pmap

    if n > MATRIX_MAX_N:
        raise CapacityError(f"pairwise lifting matrix at n={n} (max {MATRIX_MAX_N})")
    got = _MATRIX_MEMO.get(n)
    if got is not None:
        return got
    u = get_universe(n)
    cached = _load_cache(f"matrix_n{n}")
    if cached is not None and len(cached.get("rows", ())) == len(u):
        rows = [int(h, 16) for h in cached["rows"]]
    else:
        maps = [u.map_at(k) for k in range(len(u))]

        def _row(i: int) -> int:
            acc = 0
            mi = maps[i]
            for j, mj in enumerate(maps):
                if lifts_bool(mi, mj):
                    acc |= 1 << j
            return acc

        rows = pmap(_row, range(len(maps)), jobs)
        _save_cache(f"matrix_n{n}", {"n": n, "rows": [hex(r) for r in rows]})
    _MATRIX_MEMO[n] = rows
    return rows


def relative_orthogonal(base: Sequence[CMap], word: str, n: int, jobs: int = 1) -> BoundedClass:
    """Iterate left/right orthogonals of ``base`` inside the n-point universe.

    The word is read left to right; at each letter the new class is the set of
    universe maps with the required lifting against every member of the
    current set.  Words of length >= 2 need the precomputed pairwise lifting
    matrix and are capped at n <= 3.
    """
    from .universe import get_universe
    from ._parallel import pmap

    if not word or set(word) - {"l", "r"}:
        raise ValueError("word must be a nonempty string over {l, r}")
    if n > 4:
        raise CapacityError(f"map universe sweep at n={n}")
    if len(word) > 1 and n > MATRIX_MAX_N:
        raise CapacityError(
            f"multi-letter orthogonal words need the lifting matrix (n <= {MATRIX_MAX_N})"
        )
    u = get_universe(n)
    total = len(u)
    first = word[0]
    base = tuple(base)

    def _first_step(k: int) -> bool:
        m = u.map_at(k)
        if first == "r":
            return all(lifts_bool(b, m) for b in base)
        return all(lifts_bool(m, b) for b in base)

    flags = pmap(_first_step, range(total), jobs)
    cur = 0
    for k, ok in enumerate(flags):
        if ok:
            cur |= 1 << k
    for letter in word[1:]:
        rows = lifting_matrix(n, jobs=jobs)
        src = rows if letter == "r" else _transpose_bits(rows, total)
        acc = (1 << total) - 1
        m = cur
        while m and acc:
            low = m & -m
            acc &= src[low.bit_length() - 1]
            m ^= low
        cur = acc
    indices = tuple(k for k in range(total) if (cur >> k) & 1)
    return BoundedClass(base, word, n, indices, exact=(len(word) == 1))


def _transpose_bits(rows: Sequence[int], total: int) -> list[int]:
    cols = [0] * total
    for i, row in enumerate(rows):
        m = row
        while m:
            low = m & -m
            cols[low.bit_length() - 1] |= 1 << i
            m ^= low
    return cols


# -- retracts in the arrow category -------------------------------------------


@dataclass(frozen=True)
class RetractWitness:
    """Maps exhibiting f as a retract of g in the arrow category."""

    section_dom: CMap
    section_cod: CMap
    retraction_dom: CMap
    retraction_cod: CMap

    def check(self, f: CMap, g: CMap) -> bool:
        s, s2, r, r2 = (
            self.section_dom,
            self.section_cod,
            self.retraction_dom,
            self.retraction_cod,
        )
        return (
            compose(s, r) == identity(f.src)
            and compose(s2, r2) == identity(f.dst)
            and compose(s, g) == compose(f, s2)
            and compose(r, f) == compose(g, r2)
        )


def is_retract_of(f: CMap, g: CMap) -> Optional[RetractWitness]:
    """Search for section/retraction pairs exhibiting f as a retract of g."""
    A, B = f.src, f.dst
    C, D = g.src, g.dst
    ft, gt = f.as_tuple(), g.as_tuple()
    fib_g = _fibers(g)
    fib_f = _fibers(f)
    nA, nB, nC, nD = (len(s.points) for s in (A, B, C, D))
    full_A = (1 << nA) - 1 if nA else 0
    full_B = (1 << nB) - 1 if nB else 0
    for s_cod in hom(B, D):
        cand_s = [fib_g[s_cod[ft[a]]] for a in range(nA)]
        if 0 in cand_s:
            continue
        for s_dom in enum_hom(A, C, cand_s):
            # retraction on domains: pinned by r∘s = id
            cand_r = [full_A] * nC
            ok = True
            for a in range(nA):
                c = s_dom[a]
                cand_r[c] &= 1 << a
                if not cand_r[c]:
                    ok = False
                    break
            if not ok:
                continue
            for r_dom in solutions(C, A, cand_r):
                # retraction on codomains: pinned by r'∘s' = id and f∘r = r'∘g
                cand_r2 = [full_B] * nD
                good = True
                for b in range(nB):
                    d = s_cod[b]
                    cand_r2[d] &= 1 << b
                    if not cand_r2[d]:
                        good = False
                        break
                if good:
                    for c in range(nC):
                        d = gt[c]
                        cand_r2[d] &= 1 << ft[r_dom[c]]
                        if not cand_r2[d]:
                            good = False
                            break
                if not good:
                    continue
                r_cod = first_solution(D, B, cand_r2)
                if r_cod is None:
                    continue
                w = RetractWitness(
                    _mk(A, C, s_dom),
                    _mk(B, D, s_cod),
                    _mk(C, A, r_dom),
                    _mk(D, B, r_cod),
                )
                return w
    return None


def _mk(src: Space, dst: Space, t) -> CMap:
    return CMap(src, dst, {p: dst.points[t[k]] for k, p in enumerate(src.points)})


# -- factorization probes ------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """A bounded factorization f = p∘i with class-membership evidence."""

    i: CMap
    p: CMap
    left_class: BoundedClass
    right_class: BoundedClass


def factor_search(
    f: CMap, base: Sequence[CMap], word: str, n: int, jobs: int = 1
) -> Optional[Factorization]:
    """Best-effort search for f = p∘i with i in base^(word+l), p in base^(word+lr).

    An exploration tool over middle objects of the bounded universe: a None
    answer only means no factorization exists within the bound.
    """
    if set(word) - {"l", "r"}:
        raise ValueError("word must be a string over {l, r}")
    left = relative_orthogonal(base, word + "l", n, jobs=jobs)
    right = relative_orthogonal(base, word + "lr", n, jobs=jobs)
    pair = bounded_factor(f, left, right)
    if pair is None:
        return None
    return Factorization(pair[0], pair[1], left, right)


def bounded_factor(
    f: CMap, left: BoundedClass, right: BoundedClass
) -> Optional[tuple[CMap, CMap]]:
    """Search middles of the bounded universe for f = p∘i with i/p in the
    given classes; classes are computed once by the caller."""
    from .universe import get_universe

    n = left.n
    u = get_universe(n)
    if len(f.src.points) > n or len(f.dst.points) > n:
        raise CapacityError(f"factor search: map endpoints exceed n={n}")
    left_set = set(left.indices)
    right_set = set(right.indices)
    A, B = f.src, f.dst
    ft = f.as_tuple()
    for z in u.spaces:
        nZ = len(z.points)
        for i_t in hom(A, z):
            # p is pinned on the image of i by p∘i = f
            cand = [(1 << len(B.points)) - 1] * nZ
            ok = True
            for a in range(len(A.points)):
                za = i_t[a]
                cand[za] &= 1 << ft[a]
                if not cand[za]:
                    ok = False
                    break
            if not ok:
                continue
            i_map = None
            for p_t in enum_hom(z, B, cand):
                if i_map is None:
                    i_map = _mk(A, z, i_t)
                    ik = u.index_of_map(i_map)
                    if ik is None or ik not in left_set:
                        break
                p_map = _mk(z, B, p_t)
                pk = u.index_of_map(p_map)
                if pk is None or pk not in right_set:
                    continue
                return i_map, p_map
    return None
