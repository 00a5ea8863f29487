"""Direct (non-lifting) checkers for the classical properties of maps and
spaces, used as independent oracles against the lifting-based definitions."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from ._solve import first_solution
from .space import CMap, Space, _bits


def surjective(f: CMap) -> bool:
    return len(set(f.assign.values())) == len(f.dst.points)


def injective(f: CMap) -> bool:
    return len(set(f.assign.values())) == len(f.src.points)


def _image_mask(f: CMap, src_mask: int) -> int:
    t = f.as_tuple()
    acc = 0
    for i in _bits(src_mask):
        acc |= 1 << t[i]
    return acc


def closed_map(f: CMap) -> bool:
    """Image of every closed set is closed (pointwise closure criterion)."""
    src, dst, t = f.src, f.dst, f.as_tuple()
    return all(
        dst.up[t[i]] & ~_image_mask(f, src.up[i]) == 0
        for i in range(len(src.points))
    )


def open_map(f: CMap) -> bool:
    """Image of every open set is open (pointwise minimal-nbhd criterion)."""
    src, dst, t = f.src, f.dst, f.as_tuple()
    return all(
        dst.down[t[i]] & ~_image_mask(f, src.down[i]) == 0
        for i in range(len(src.points))
    )


def dense_image(f: CMap) -> bool:
    full = (1 << len(f.dst.points)) - 1
    return f.dst.closure_mask(_image_mask(f, (1 << len(f.src.points)) - 1)) == full


def induced_topology(f: CMap) -> bool:
    """The domain relation is exactly the pullback of the codomain relation."""
    src, dst, t = f.src, f.dst, f.as_tuple()
    n = len(src.points)
    return all(
        ((src.up[i] >> j) & 1) == ((dst.up[t[i]] >> t[j]) & 1)
        for i in range(n)
        for j in range(n)
    )


def subset_inclusion(f: CMap) -> bool:
    return injective(f) and induced_topology(f)


def quotient_map(f: CMap) -> bool:
    """Surjective with the final topology: codomain relation equals the
    transitive closure of the projected relation."""
    if not surjective(f):
        return False
    proj = Space.from_arrows(
        f.dst.points, [(f.assign[a], f.assign[b]) for a, b in f.src.rel]
    )
    return proj.rel == f.dst.rel


def admits_section(f: CMap) -> bool:
    fib = [0] * len(f.dst.points)
    for yk, bk in enumerate(f.as_tuple()):
        fib[bk] |= 1 << yk
    if 0 in fib:
        return False
    return first_solution(f.dst, f.src, fib) is not None


def reflects_rel(f: CMap) -> bool:
    """Specialization downstairs pulls back upstairs on every pair."""
    src, dst, t = f.src, f.dst, f.as_tuple()
    n = len(src.points)
    return all(
        not ((dst.up[t[i]] >> t[j]) & 1) or ((src.up[i] >> j) & 1)
        for i in range(n)
        for j in range(n)
    )


def pi0_surjective(f: CMap) -> bool:
    """Every connected component of the codomain meets the image."""
    img = _image_mask(f, (1 << len(f.src.points)) - 1)
    idx = f.dst._index
    return all(
        any((img >> idx[p]) & 1 for p in comp) for comp in f.dst.components()
    )


def summand_inclusion(f: CMap, discrete_complement: bool) -> bool:
    """f embeds its domain as a clopen summand; the complement is a disjoint
    summand (discrete if requested)."""
    if not (injective(f) and induced_topology(f)):
        return False
    dst, t = f.dst, f.as_tuple()
    img = 0
    for k in t:
        img |= 1 << k
    n = len(dst.points)
    comp = ((1 << n) - 1) & ~img
    for i in _bits(comp):
        if (dst.up[i] | dst.down[i]) & img:
            return False
        if discrete_complement and (dst.up[i] & comp) != 1 << i:
            return False
    return True


def closed_pair_extension(f: CMap) -> bool:
    """Every disjoint closed pair upstairs extends along f: the closures of
    the two images are disjoint downstairs and pull back exactly."""
    src, dst, t = f.src, f.dst, f.as_tuple()
    closed = _closed_masks(src)
    n = len(src.points)
    for a in range(len(closed)):
        for b in range(len(closed)):
            c1, c2 = closed[a], closed[b]
            if c1 & c2:
                continue
            d1 = dst.closure_mask(_image_mask(f, c1))
            d2 = dst.closure_mask(_image_mask(f, c2))
            if d1 & d2:
                return False
            pre1 = sum(1 << i for i in range(n) if (d1 >> t[i]) & 1)
            pre2 = sum(1 << i for i in range(n) if (d2 >> t[i]) & 1)
            if pre1 != c1 or pre2 != c2:
                return False
    return True


# -- space predicates ----------------------------------------------------------


def _closed_masks(x: Space) -> list[int]:
    full = (1 << len(x.points)) - 1
    return [full & ~m for m in x.open_masks()]


def _min_open(x: Space, mask: int) -> int:
    acc = 0
    for i in _bits(mask):
        acc |= x.down[i]
    return acc


def normal(x: Space) -> bool:
    """Disjoint closed sets have disjoint open neighborhoods."""
    closed = _closed_masks(x)
    opens = [_min_open(x, c) for c in closed]
    for a in range(len(closed)):
        for b in range(a + 1, len(closed)):
            if closed[a] & closed[b] == 0 and opens[a] & opens[b]:
                return False
    return True


def hereditarily_normal(x: Space) -> bool:
    """Every subspace is normal."""
    n = len(x.points)
    pts = x.points
    return all(
        normal(x.subspace([pts[i] for i in _bits(m)])) for m in range(1 << n)
    )


def hereditarily_normal_by_separation(x: Space) -> bool:
    """Pairs of mutually closure-disjoint sets have disjoint neighborhoods."""
    n = len(x.points)
    for a in range(1 << n):
        cl_a = x.closure_mask(a)
        for b in range(1 << n):
            if a & b:
                continue
            if cl_a & b or x.closure_mask(b) & a:
                continue
            if _min_open(x, a) & _min_open(x, b):
                return False
    return True


def t0(x: Space) -> bool:
    return all(
        x.up[i] & x.down[i] == 1 << i for i in range(len(x.points))
    )


def discrete(x: Space) -> bool:
    return all(x.up[i] == 1 << i for i in range(len(x.points)))


def t1(x: Space) -> bool:
    # finite T1 collapses to discreteness
    return discrete(x)


def connected(x: Space) -> bool:
    """No proper nonempty clopen subset (the empty space passes vacuously)."""
    return len(x.components()) <= 1


# -- aggregate record -----------------------------------------------------------


@dataclass(frozen=True)
class SpaceRecord:
    t0: bool
    t1: bool
    normal: bool
    hereditarily_normal: bool
    connected: bool
    discrete: bool


@dataclass(frozen=True)
class PropertyRecord:
    surjective: bool
    injective: bool
    closed_map: bool
    open_map: bool
    dense_image: bool
    induced_topology: bool
    subset_inclusion: bool
    quotient_map: bool
    admits_section: bool
    src: SpaceRecord
    dst: SpaceRecord

    def to_json(self) -> dict:
        return asdict(self)


def _space_record(x: Space) -> SpaceRecord:
    return SpaceRecord(
        t0=t0(x),
        t1=t1(x),
        normal=normal(x),
        hereditarily_normal=hereditarily_normal(x),
        connected=connected(x),
        discrete=discrete(x),
    )


def classify(f: CMap) -> PropertyRecord:
    """Evaluate every property flag of a map and its two spaces."""
    return PropertyRecord(
        surjective=surjective(f),
        injective=injective(f),
        closed_map=closed_map(f),
        open_map=open_map(f),
        dense_image=dense_image(f),
        induced_topology=induced_topology(f),
        subset_inclusion=subset_inclusion(f),
        quotient_map=quotient_map(f),
        admits_section=admits_section(f),
        src=_space_record(f.src),
        dst=_space_record(f.dst),
    )
