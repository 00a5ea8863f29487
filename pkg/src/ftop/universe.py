"""Exhaustive catalogs of finite spaces and monotone maps up to isomorphism.

Spaces are enumerated as (poset of indiscernibility classes) x (class sizes)
and canonicalized by the minimal adjacency encoding over all permutations;
maps between catalog spaces are reduced modulo independent domain/codomain
automorphisms.  Catalogs are cached on disk keyed by bound and code version.
"""
from __future__ import annotations

import itertools
import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional, Sequence

from ._solve import hom
from .errors import CapacityError
from .space import CMap, Space

SPACES_MAX_N = 6
MAPS_MAX_N = 5
CACHE_SCHEMA = 1

_SPACES_MEMO: dict[int, tuple[Space, ...]] = {}
_UNIVERSE_MEMO: dict[int, "Universe"] = {}


def cache_dir() -> Path:
    root = os.environ.get("FTOP_CACHE_DIR")
    if root:
        return Path(root)
    return Path.home() / ".cache" / "ftop"


def _cache_file(stem: str) -> Path:
    from . import __version__

    return cache_dir() / f"{stem}_v{__version__}_s{CACHE_SCHEMA}.json"


def _load_cache(stem: str) -> Optional[dict]:
    path = _cache_file(stem)
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def _save_cache(stem: str, payload: dict) -> None:
    path = _cache_file(stem)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        tmp.replace(path)
    except OSError:
        pass  # caching is best-effort


# -- canonical forms ----------------------------------------------------------


def _enc_bits(n: int, up: Sequence[int], perm: Sequence[int]) -> int:
    bits = 0
    for k in range(n):
        row = up[perm[k]]
        base = k * n
        for l in range(n):
            if l != k and (row >> perm[l]) & 1:
                bits |= 1 << (base + l)
    return bits


def _canon(space: Space) -> tuple[tuple[int, int], tuple[tuple[int, ...], ...]]:
    """Canonical key (n, bits) and all permutations achieving it (cached)."""
    got = space._lazy.get("canon")
    if got is not None:
        return got
    n = len(space.points)
    best = None
    args: list[tuple[int, ...]] = []
    for perm in itertools.permutations(range(n)):
        b = _enc_bits(n, space.up, perm)
        if best is None or b < best:
            best, args = b, [perm]
        elif b == best:
            args.append(perm)
    got = ((n, best or 0), tuple(args))
    space._lazy["canon"] = got
    return got


def space_key(space: Space) -> tuple[int, int]:
    return _canon(space)[0]


def _space_from_enc(n: int, bits: int) -> Space:
    pts = [f"p{k}" for k in range(n)]
    rel = [
        (pts[k], pts[l])
        for k in range(n)
        for l in range(n)
        if k != l and (bits >> (k * n + l)) & 1
    ]
    return Space(pts, rel)


def canonical_space(space: Space) -> Space:
    (n, bits), _ = _canon(space)
    return _space_from_enc(n, bits)


def automorphisms(space: Space) -> tuple[tuple[int, ...], ...]:
    """All relation-preserving permutations of the point indices."""
    n = len(space.points)
    up = space.up
    out = []
    for perm in itertools.permutations(range(n)):
        if all(
            ((up[perm[i]] >> perm[j]) & 1) == ((up[i] >> j) & 1)
            for i in range(n)
            for j in range(n)
        ):
            out.append(perm)
    return tuple(out)


def map_key(f: CMap) -> tuple[int, int, int, int, tuple[int, ...]]:
    """Canonical key of a map under independent endpoint relabeling."""
    (nA, encA), perms_a = _canon(f.src)
    (nB, encB), perms_b = _canon(f.dst)
    t = f.as_tuple()
    best = None
    for pb in perms_b:
        inv_b = [0] * nB
        for pos, orig in enumerate(pb):
            inv_b[orig] = pos
        for pa in perms_a:
            cand = tuple(inv_b[t[pa[k]]] for k in range(nA))
            if best is None or cand < best:
                best = cand
    return (nA, encA, nB, encB, best if best is not None else ())


# -- space enumeration ---------------------------------------------------------


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], ...]:
    """Posets on k labeled points, one canonical labeling per iso class,
    paired with their automorphism groups."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for mask in range(1 << len(pairs)):
        rows = [1 << i for i in range(k)]
        for bit, (i, j) in enumerate(pairs):
            if (mask >> bit) & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(k):
            need = 0
            m = rows[i]
            while m:
                low = m & -m
                need |= rows[low.bit_length() - 1]
                m ^= low
            if need & ~rows[i]:
                ok = False
                break
        if not ok:
            continue
        best = None
        for perm in itertools.permutations(range(k)):
            cand = tuple(
                sum(
                    1 << l
                    for l in range(k)
                    if (rows[perm[pos]] >> perm[l]) & 1
                )
                for pos in range(k)
            )
            if best is None or cand < best:
                best = cand
        found.setdefault(best, best)
    out = []
    for rows in sorted(found):
        auts = tuple(
            perm
            for perm in itertools.permutations(range(k))
            if all(
                ((rows[perm[i]] >> perm[j]) & 1) == ((rows[i] >> j) & 1)
                for i in range(k)
                for j in range(k)
            )
        )
        out.append((rows, auts))
    return tuple(out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _expand(rows: Sequence[int], sizes: Sequence[int]) -> Space:
    names = []
    cls = []
    for i, s in enumerate(sizes):
        for _ in range(s):
            names.append(f"q{len(names)}")
            cls.append(i)
    rel = [
        (names[x], names[y])
        for x in range(len(names))
        for y in range(len(names))
        if (rows[cls[x]] >> cls[y]) & 1
    ]
    return Space(names, rel)


def _spaces_of_size(m: int) -> list[Space]:
    if m == 0:
        return [Space.empty()]
    results: dict[tuple[int, int], Space] = {}
    for k in range(1, m + 1):
        for rows, auts in _posets(k):
            reps = {
                min(tuple(sizes[a[i]] for i in range(k)) for a in auts)
                for sizes in _compositions(m, k)
            }
            for sizes in reps:
                sp = _expand(rows, sizes)
                key, perms = _canon(sp)
                if key not in results:
                    results[key] = _space_from_enc(*key)
    return [results[key] for key in sorted(results)]


def enumerate_spaces(n: int) -> tuple[Space, ...]:
    """One space per homeomorphism class, all sizes 0..n, canonically named."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > SPACES_MAX_N:
        raise CapacityError(f"space catalog at n={n} (max {SPACES_MAX_N})")
    got = _SPACES_MEMO.get(n)
    if got is not None:
        return got
    cached = _load_cache(f"spaces_n{n}")
    if cached is not None:
        spaces = tuple(
            Space(item["points"], [tuple(p) for p in item["rel"]])
            for item in cached["spaces"]
        )
    else:
        out: list[Space] = []
        for m in range(n + 1):
            out.extend(_spaces_of_size(m))
        spaces = tuple(out)
        _save_cache(
            f"spaces_n{n}",
            {
                "n": n,
                "spaces": [
                    {"points": list(s.points), "rel": sorted(map(list, s.rel))}
                    for s in spaces
                ],
            },
        )
    _SPACES_MEMO[n] = spaces
    return spaces


# -- map universe ---------------------------------------------------------------


class _MapSeq(Sequence[CMap]):
    def __init__(self, universe: "Universe"):
        self._u = universe

    def __len__(self) -> int:
        return len(self._u)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self._u.map_at(i) for i in range(*k.indices(len(self._u)))]
        return self._u.map_at(k)


class Universe:
    """Canonical catalog of spaces and maps bounded by point count."""

    def __init__(self, n: int, spaces: Sequence[Space], triples: Sequence[tuple]):
        self.n = n
        self.spaces = tuple(spaces)
        self.triples = tuple(triples)
        self._space_index = {space_key(s): k for k, s in enumerate(self.spaces)}
        self._map_index = {trip: k for k, trip in enumerate(self.triples)}
        self._cmaps: list[Optional[CMap]] = [None] * len(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    @property
    def maps(self) -> Sequence[CMap]:
        return _MapSeq(self)

    def map_at(self, k: int) -> CMap:
        got = self._cmaps[k]
        if got is None:
            si, di, t = self.triples[k]
            src, dst = self.spaces[si], self.spaces[di]
            got = CMap(src, dst, {p: dst.points[t[a]] for a, p in enumerate(src.points)})
            self._cmaps[k] = got
        return got

    def index_of_space(self, sp: Space) -> Optional[int]:
        return self._space_index.get(space_key(sp))

    def index_of_map(self, f: CMap) -> Optional[int]:
        nA, encA, nB, encB, t = map_key(f)
        si = self._space_index.get((nA, encA))
        di = self._space_index.get((nB, encB))
        if si is None or di is None:
            return None
        return self._map_index.get((si, di, t))


def _map_triples(spaces: Sequence[Space]) -> list[tuple]:
    auts = [automorphisms(s) for s in spaces]
    inv_auts = []
    for group in auts:
        invs = []
        for pb in group:
            inv = [0] * len(pb)
            for pos, orig in enumerate(pb):
                inv[orig] = pos
            invs.append(tuple(inv))
        inv_auts.append(tuple(invs))
    triples: list[tuple] = []
    for si, X in enumerate(spaces):
        auts_x = auts[si]
        nX = len(X.points)
        for di, Y in enumerate(spaces):
            invs_y = inv_auts[di]
            reps = set()
            seen = set()
            for t in hom(X, Y):
                if t in seen:
                    continue
                orbit = {
                    tuple(inv_b[t[pa[k]]] for k in range(nX))
                    for pa in auts_x
                    for inv_b in invs_y
                }
                seen |= orbit
                reps.add(min(orbit))
            triples.extend((si, di, t) for t in sorted(reps))
    return triples


def get_universe(n: int) -> Universe:
    """The bounded universe of spaces and map representatives (cached)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAPS_MAX_N:
        raise CapacityError(f"map universe at n={n} (max {MAPS_MAX_N})")
    got = _UNIVERSE_MEMO.get(n)
    if got is not None:
        return got
    spaces = enumerate_spaces(n)
    cached = _load_cache(f"maps_n{n}")
    if cached is not None:
        triples = [(si, di, tuple(t)) for si, di, t in cached["maps"]]
    else:
        triples = _map_triples(spaces)
        _save_cache(
            f"maps_n{n}",
            {"n": n, "maps": [[si, di, list(t)] for si, di, t in triples]},
        )
    uni = Universe(n, spaces, triples)
    _UNIVERSE_MEMO[n] = uni
    return uni


def enumerate_maps(n: int) -> Sequence[CMap]:
    """Canonical representatives of all maps in the n-point universe."""
    return get_universe(n).maps
