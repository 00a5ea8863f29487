"""Finite topological spaces as preorders, and continuous (monotone) maps.

A space is a reflexive-transitive relation ``rel`` on named points, with
``(x, y) in rel`` meaning "y lies in the closure of x".  Open sets are the
down-closed sets of that relation; continuity of a map between finite spaces
is exactly monotonicity.  Everything here is immutable and safe to share.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import CapacityError, MapError, SpaceError

_NAME_RE = re.compile(r"[A-Za-z0-9_']+\Z")

_OPENS_LIMIT = 16  # 2**16 subsets is the largest family we will materialize


def _close(n: int, up: list[int]) -> list[int]:
    """Reflexive-transitive closure of per-point successor bitmasks, in place."""
    for i in range(n):
        up[i] |= 1 << i
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    return up


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Space:
    """A finite topological space presented by its specialization preorder.

    The constructor accepts a relation that is already transitive (missing
    transitive pairs are rejected, pointing at one offender); reflexive pairs
    are implied and added if absent.  Use :meth:`from_arrows` to close an
    arbitrary arrow set.
    """

    __slots__ = ("points", "rel", "_pset", "_index", "up", "down", "_hash", "_lazy")

    def __init__(self, points: Iterable[str], rel: Iterable[tuple[str, str]]):
        pts = tuple(points)
        seen = set()
        for p in pts:
            if not isinstance(p, str) or not _NAME_RE.match(p):
                raise SpaceError(f"invalid point identifier {p!r}")
            if p in seen:
                raise SpaceError(f"duplicate point {p!r}")
            seen.add(p)
        pairs = frozenset((str(a), str(b)) for a, b in rel)
        for a, b in pairs:
            if a not in seen or b not in seen:
                stray = a if a not in seen else b
                raise SpaceError(f"relation mentions unknown point {stray!r}")
        index = {p: k for k, p in enumerate(pts)}
        n = len(pts)
        up = [0] * n
        for a, b in pairs:
            up[index[a]] |= 1 << index[b]
        closed = _close(n, list(up))
        for i in range(n):
            up[i] |= 1 << i
        if closed != up:
            for i in range(n):
                extra = closed[i] & ~up[i]
                if extra:
                    j = next(_bits(extra))
                    raise SpaceError(
                        f"relation is not transitive: ({pts[i]!r}, {pts[j]!r}) is "
                        "implied but missing"
                    )
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        full = frozenset(
            (pts[i], pts[j]) for i in range(n) for j in _bits(up[i])
        )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rel", full)
        object.__setattr__(self, "_pset", frozenset(pts))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "_hash", hash((self._pset, full)))
        object.__setattr__(self, "_lazy", {})

    def __setattr__(self, name, value):  # immutability by construction
        raise AttributeError("Space is immutable")

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Space):
            return NotImplemented
        return self._pset == other._pset and self.rel == other.rel

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Space({list(self.points)!r}, {sorted(self.rel)!r})"

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self._pset

    def __getstate__(self):
        return (self.points, tuple(sorted(self.rel)))

    def __setstate__(self, state):
        self.__init__(state[0], state[1])

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_arrows(cls, points: Iterable[str], arrows: Iterable[tuple[str, str]]) -> "Space":
        """Build a space from generating arrows; the closure is taken here."""
        pts = tuple(points)
        index = {p: k for k, p in enumerate(pts)}
        n = len(pts)
        up = [0] * n
        for a, b in arrows:
            if a not in index or b not in index:
                stray = a if a not in index else b
                raise SpaceError(f"arrow mentions unknown point {stray!r}")
            up[index[a]] |= 1 << index[b]
        _close(n, up)
        rel = [(pts[i], pts[j]) for i in range(n) for j in _bits(up[i])]
        return cls(pts, rel)

    @classmethod
    def empty(cls) -> "Space":
        return cls((), ())

    # -- subset plumbing ---------------------------------------------------

    def _mask_of(self, subset: Iterable[str]) -> int:
        mask = 0
        for p in subset:
            k = self._index.get(p)
            if k is None:
                raise SpaceError(f"{p!r} is not a point of this space")
            mask |= 1 << k
        return mask

    def _set_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in _bits(mask))

    def closure_mask(self, mask: int) -> int:
        acc = 0
        for i in _bits(mask):
            acc |= self.up[i]
        return acc

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        """Smallest closed superset of ``subset``."""
        return self._set_of(self.closure_mask(self._mask_of(subset)))

    def min_nbhd(self, p: str) -> frozenset[str]:
        """Smallest open set containing the point ``p``."""
        k = self._index.get(p)
        if k is None:
            raise SpaceError(f"{p!r} is not a point of this space")
        return self._set_of(self.down[k])

    def is_closed(self, subset: Iterable[str]) -> bool:
        mask = self._mask_of(subset)
        return self.closure_mask(mask) == mask

    def is_open(self, subset: Iterable[str]) -> bool:
        mask = self._mask_of(subset)
        comp = ((1 << len(self.points)) - 1) & ~mask
        return self.closure_mask(comp) == comp

    def open_masks(self) -> tuple[int, ...]:
        """All open sets as bitmasks over point indices (cached)."""
        got = self._lazy.get("opens")
        if got is None:
            n = len(self.points)
            if n > _OPENS_LIMIT:
                raise CapacityError(f"open-set family of a {n}-point space")
            down = self.down
            got = tuple(
                m for m in range(1 << n)
                if all(down[i] & ~m == 0 for i in _bits(m))
            )
            self._lazy["opens"] = got
        return got

    def open_sets(self) -> tuple[frozenset[str], ...]:
        return tuple(self._set_of(m) for m in self.open_masks())

    def closed_sets(self) -> tuple[frozenset[str], ...]:
        full = (1 << len(self.points)) - 1
        return tuple(self._set_of(full & ~m) for m in self.open_masks())

    def subspace(self, subset: Iterable[str]) -> "Space":
        """Induced topology on ``subset``: the relation restricted."""
        mask = self._mask_of(subset)
        keep = [p for p in self.points if (mask >> self._index[p]) & 1]
        kset = set(keep)
        return Space(keep, [(a, b) for a, b in self.rel if a in kset and b in kset])

    def components(self) -> tuple[frozenset[str], ...]:
        """Connected components (zigzag components of the relation)."""
        n = len(self.points)
        adj = [self.up[i] | self.down[i] for i in range(n)]
        seen = 0
        comps = []
        for i in range(n):
            if (seen >> i) & 1:
                continue
            comp = 1 << i
            frontier = comp
            while frontier:
                nxt = 0
                for j in _bits(frontier):
                    nxt |= adj[j]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(self._set_of(comp))
        return tuple(comps)

    def linear_extension(self) -> tuple[int, ...]:
        """Point indices ordered so rel-predecessors come first (cached)."""
        got = self._lazy.get("ext")
        if got is None:
            order = sorted(
                range(len(self.points)),
                key=lambda i: (-bin(self.up[i]).count("1"), i),
            )
            got = tuple(order)
            self._lazy["ext"] = got
        return got


# -- module-level operation aliases (the operation names of the engine) ----


def closure(space: Space, subset: Iterable[str]) -> frozenset[str]:
    return space.closure(subset)


def min_nbhd(space: Space, p: str) -> frozenset[str]:
    return space.min_nbhd(p)


def is_open(space: Space, subset: Iterable[str]) -> bool:
    return space.is_open(subset)


def is_closed(space: Space, subset: Iterable[str]) -> bool:
    return space.is_closed(subset)


class CMap:
    """A continuous map of finite spaces: a monotone total assignment."""

    __slots__ = ("src", "dst", "assign", "_hash", "_lazy")

    def __init__(self, src: Space, dst: Space, assign: Mapping[str, str]):
        missing = [p for p in src.points if p not in assign]
        if missing:
            raise MapError(f"assignment misses domain point {missing[0]!r}")
        extra = [p for p in assign if p not in src]
        if extra:
            raise MapError(f"assignment mentions non-domain point {extra[0]!r}")
        for p, q in assign.items():
            if q not in dst:
                raise MapError(f"assignment sends {p!r} to unknown point {q!r}")
        frozen = {p: assign[p] for p in src.points}
        di = dst._index
        si = src._index
        t = tuple(di[frozen[p]] for p in src.points)
        for i, p in enumerate(src.points):
            for j in _bits(src.up[i]):
                if not (dst.up[t[i]] >> t[j]) & 1:
                    raise MapError(
                        f"not monotone: {p!r}->{src.points[j]!r} in the domain but "
                        f"{frozen[p]!r}->{frozen[src.points[j]]!r} fails in the codomain"
                    )
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "assign", frozen)
        object.__setattr__(
            self, "_hash", hash((src, dst, frozenset(frozen.items())))
        )
        object.__setattr__(self, "_lazy", {"tuple": t})

    def __setattr__(self, name, value):
        raise AttributeError("CMap is immutable")

    def __call__(self, p: str) -> str:
        q = self.assign.get(p)
        if q is None:
            raise MapError(f"{p!r} is not a point of the domain")
        return q

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMap):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.assign == other.assign
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CMap({self.src!r}, {self.dst!r}, {self.assign!r})"

    def __getstate__(self):
        return (self.src, self.dst, tuple(sorted(self.assign.items())))

    def __setstate__(self, state):
        self.__init__(state[0], state[1], dict(state[2]))

    def as_tuple(self) -> tuple[int, ...]:
        """Codomain point indices aligned with ``src.points`` order."""
        return self._lazy["tuple"]

    def image(self) -> frozenset[str]:
        return frozenset(self.assign.values())


def identity(x: Space) -> CMap:
    return CMap(x, x, {p: p for p in x.points})


def compose(f: CMap, g: CMap) -> CMap:
    """The composite "f then g" (requires f.dst == g.src)."""
    if f.dst != g.src:
        raise MapError("compose: endpoints do not match")
    return CMap(f.src, g.dst, {p: g.assign[q] for p, q in f.assign.items()})


def is_isomorphism(f: CMap) -> bool:
    if len(f.src.points) != len(f.dst.points):
        return False
    if len(set(f.assign.values())) != len(f.dst.points):
        return False
    # inverse monotone: every codomain pair must pull back into rel
    back = {q: p for p, q in f.assign.items()}
    return all((back[a], back[b]) in f.src.rel for a, b in f.dst.rel)


# -- constructions ----------------------------------------------------------


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def product(x: Space, y: Space) -> Space:
    """Product space; the relation is componentwise."""
    taken: set[str] = set()
    names = []
    pairs = []
    for a in x.points:
        for b in y.points:
            nm = _fresh(f"{a}_{b}", taken)
            taken.add(nm)
            names.append(nm)
            pairs.append((a, b))
    rel = []
    for i, (a1, b1) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            if (a1, a2) in x.rel and (b1, b2) in y.rel:
                rel.append((names[i], names[j]))
    sp = Space(names, rel)
    sp._lazy["pairs"] = tuple(pairs)
    return sp


def product_projections(p: Space, x: Space, y: Space) -> tuple[CMap, CMap]:
    pairs = p._lazy.get("pairs")
    if pairs is None or len(pairs) != len(p.points):
        raise SpaceError("not a product space built by product()")
    fst = CMap(p, x, {nm: a for nm, (a, b) in zip(p.points, pairs)})
    snd = CMap(p, y, {nm: b for nm, (a, b) in zip(p.points, pairs)})
    return fst, snd


def product_map(f: CMap, g: CMap) -> CMap:
    """The map f x g between the product spaces."""
    src = product(f.src, g.src)
    dst = product(f.dst, g.dst)
    spairs = src._lazy["pairs"]
    dindex = {pair: nm for nm, pair in zip(dst.points, dst._lazy["pairs"])}
    assign = {
        nm: dindex[(f.assign[a], g.assign[b])]
        for nm, (a, b) in zip(src.points, spairs)
    }
    return CMap(src, dst, assign)


def coproduct(x: Space, y: Space) -> Space:
    """Disjoint union; y-points are primed on name collision."""
    taken = set(x.points)
    ren = {}
    for b in y.points:
        nm = _fresh(b, taken)
        taken.add(nm)
        ren[b] = nm
    points = list(x.points) + [ren[b] for b in y.points]
    rel = list(x.rel) + [(ren[a], ren[b]) for a, b in y.rel]
    return Space(points, rel)


def quotient(x: Space, classes: Iterable[Iterable[str]]) -> tuple[Space, CMap]:
    """Quotient space for a partition of the points, with its projection.

    The relation is the reflexive-transitive closure of the projected
    relation; for spaces of up to 5 points this is checked on the fly against
    the saturated-open-set definition of the quotient topology.
    """
    blocks = [tuple(dict.fromkeys(c)) for c in classes]
    flat = [p for c in blocks for p in c]
    if len(flat) != len(set(flat)) or set(flat) != set(x.points) or any(
        not c for c in blocks
    ):
        raise SpaceError("classes do not partition the points of the space")
    blocks.sort(key=lambda c: min(x._index[p] for p in c))
    rep = {}
    name_of = {}
    for c in blocks:
        first = min(c, key=lambda p: x._index[p])
        name_of[c] = first
        for p in c:
            rep[p] = first
    arrows = [(rep[a], rep[b]) for a, b in x.rel]
    q = Space.from_arrows([name_of[c] for c in blocks], arrows)
    if len(x.points) <= 5:
        assert q.rel == _quotient_rel_by_opens(x, blocks, name_of), (
            "projected-relation shortcut disagrees with the saturated-open "
            "quotient topology"
        )
    proj = CMap(x, q, {p: rep[p] for p in x.points})
    return q, proj


def _quotient_rel_by_opens(x: Space, blocks, name_of) -> frozenset[tuple[str, str]]:
    # opens of the quotient = families of blocks whose union is open in x
    masks = [x._mask_of(c) for c in blocks]
    k = len(blocks)
    opens = []
    for m in range(1 << k):
        union = 0
        for i in _bits(m):
            union |= masks[i]
        comp = ((1 << len(x.points)) - 1) & ~union
        if x.closure_mask(comp) == comp:
            opens.append(m)
    rel = set()
    for a in range(k):
        for b in range(k):
            if all(not (o >> b) & 1 or (o >> a) & 1 for o in opens):
                rel.add((name_of[blocks[a]], name_of[blocks[b]]))
    return frozenset(rel)


def sierpinski() -> Space:
    return Space.from_arrows(("o", "c"), (("o", "c"),))


def cylinder(p: CMap) -> tuple[Space, CMap]:
    """Non-Hausdorff mapping cylinder of p: Y -> B, with its map to B.

    The space is Y together with a copy of B glued below it: opens are
    exactly the sets U + p^-1(V) + V with U open in Y and V open in B.
    """
    y, b = p.src, p.dst
    taken = set(y.points)
    ren = {}
    for q in b.points:
        nm = _fresh(q, taken)
        taken.add(nm)
        ren[q] = nm
    points = list(y.points) + [ren[q] for q in b.points]
    rel = list(y.rel)
    rel += [(ren[a], ren[c]) for a, c in b.rel]
    rel += [
        (yp, ren[q])
        for yp in y.points
        for q in b.points
        if (p.assign[yp], q) in b.rel
    ]
    cyl = Space(points, rel)
    proj = {yp: p.assign[yp] for yp in y.points}
    proj.update({ren[q]: q for q in b.points})
    return cyl, CMap(cyl, b, proj)


def cylinder_by_quotient(p: CMap) -> tuple[Space, CMap]:
    """The same cylinder computed as a quotient of (Y x S) + B."""
    y, b = p.src, p.dst
    prod = product(y, sierpinski())
    pairs = prod._lazy["pairs"]
    total = coproduct(prod, b)
    # coproduct may have primed the b-part names; recover them positionally
    bnames = total.points[len(prod.points):]
    bname = dict(zip(b.points, bnames))
    open_slice = {}
    glue = {q: [bname[q]] for q in b.points}
    for nm, (yp, s) in zip(prod.points, pairs):
        if s == "o":
            open_slice[yp] = nm
        else:
            glue[p.assign[yp]].append(nm)
    classes = [[open_slice[yp]] for yp in y.points] + [glue[q] for q in b.points]
    q_space, q_proj = quotient(total, classes)
    proj = {}
    for yp in y.points:
        proj[q_proj.assign[open_slice[yp]]] = p.assign[yp]
    for q in b.points:
        proj[q_proj.assign[bname[q]]] = q
    return q_space, CMap(q_space, b, proj)


def lam(k: int) -> Space:
    """Zigzag model of the interval: k+1 closed endpoints, k open cells."""
    if k < 1:
        raise SpaceError("lam(k) needs k >= 1")
    points = []
    arrows = []
    for i in range(k):
        points.append(f"t{i}")
        cell = f"t{i}_{i + 1}"
        points.append(cell)
        arrows.append((cell, f"t{i}"))
        arrows.append((cell, f"t{i + 1}"))
    points.append(f"t{k}")
    return Space.from_arrows(points, arrows)


def sub(k: int) -> CMap:
    """Subdivision map lam(2k) -> lam(k): each open cell splits in two."""
    if k < 1:
        raise SpaceError("sub(k) needs k >= 1")
    fine, coarse = lam(2 * k), lam(k)
    assign = {}
    for i in range(2 * k + 1):
        assign[f"t{i}"] = f"t{i // 2}" if i % 2 == 0 else f"t{i // 2}_{i // 2 + 1}"
    for j in range(2 * k):
        assign[f"t{j}_{j + 1}"] = f"t{j // 2}_{j // 2 + 1}"
    return CMap(fine, coarse, assign)


# -- JSON encoding -----------------------------------------------------------


def space_to_json(x: Space) -> dict:
    return {"points": list(x.points), "rel": sorted([a, b] for a, b in x.rel)}


def space_from_json(data: dict) -> Space:
    try:
        points = data["points"]
        rel = [(a, b) for a, b in data["rel"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpaceError(f"malformed space JSON: {exc}") from exc
    return Space(points, rel)


def map_to_json(f: CMap) -> dict:
    return {
        "src": space_to_json(f.src),
        "dst": space_to_json(f.dst),
        "assign": dict(f.assign),
    }


def map_from_json(data: dict) -> CMap:
    try:
        src = space_from_json(data["src"])
        dst = space_from_json(data["dst"])
        assign = dict(data["assign"])
    except (KeyError, TypeError) as exc:
        raise MapError(f"malformed map JSON: {exc}") from exc
    return CMap(src, dst, assign)
