"""Acceptance criteria: exhaustive bounded-universe equivalences and the
property suites, each printed as one pass line with its runtime.

Every criterion is exact (zero counterexamples at the stated bound); run with
``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.
"""
import itertools
import random
import time

import pytest

from ftop.lifting import is_retract_of, lifts, lifts_bool, squares
from ftop.parser import parse_map, parse_space, render
from ftop.properties import (
    closed_map,
    dense_image,
    induced_topology,
    injective,
    normal,
    subset_inclusion,
    surjective,
)
from ftop.registry import (
    DENSE_ARCHETYPE,
    DISJOINT_CLOSURES_ARCHETYPE,
    EMPTY,
    EMPTY_TO_POINT,
    INJECTIVE_ARCHETYPE,
    LAMBDA_TO_POINT,
    M_TO_LAMBDA,
    OPEN_POINT_INCL,
    PULLBACK_ARCHETYPE,
    SUBSET_ARCHETYPE_BWD,
    SUBSET_ARCHETYPE_FWD,
    registry,
)
from ftop.space import CMap, Space, compose, identity, lam, product_map, sub
from ftop.universe import enumerate_spaces, get_universe


@pytest.fixture(scope="module")
def universe4():
    u = get_universe(4)
    return [u.map_at(k) for k in range(len(u))]


def report(num, text, start):
    print(f"[PASS] criterion {num:2d}: {text} ({time.perf_counter() - start:.1f}s)")


def test_criterion_01_surjections(universe4):
    start = time.perf_counter()
    bad = [
        f for f in universe4
        if lifts_bool(EMPTY_TO_POINT, f) != surjective(f)
    ]
    assert bad == [], [render(f) for f in bad[:5]]
    report(1, f"empty-to-point lifting = surjectivity on {len(universe4)} maps", start)


def test_criterion_02_closed_equals_proper(universe4):
    start = time.perf_counter()
    bad = [
        f for f in universe4
        if lifts_bool(OPEN_POINT_INCL, f) != closed_map(f)
    ]
    assert bad == [], [render(f) for f in bad[:5]]
    report(2, f"open-point lifting = closedness on {len(universe4)} maps", start)


def test_criterion_03_archetypes_closed():
    start = time.perf_counter()
    archetypes = (
        DISJOINT_CLOSURES_ARCHETYPE,
        INJECTIVE_ARCHETYPE,
        PULLBACK_ARCHETYPE,
        DENSE_ARCHETYPE,
    )
    for arch in archetypes:
        assert closed_map(arch), render(arch)
    report(3, "all four archetype maps are closed", start)


def test_criterion_04_normality():
    start = time.perf_counter()
    spaces = enumerate_spaces(5)
    bad = [
        x for x in spaces
        if lifts_bool(CMap(EMPTY, x, {}), M_TO_LAMBDA) != normal(x)
    ]
    assert bad == [], [render(x) for x in bad[:5]]
    report(4, f"lifting = normality on all {len(spaces)} spaces up to 5 points", start)


def test_criterion_05_subsets(universe4):
    start = time.perf_counter()
    for arch in (SUBSET_ARCHETYPE_FWD, SUBSET_ARCHETYPE_BWD):
        bad = [
            f for f in universe4
            if lifts_bool(f, arch) != subset_inclusion(f)
        ]
        assert bad == [], [render(f) for f in bad[:5]]
    report(5, "both 3-to-1 collapses carve out exactly the subset inclusions", start)


def test_criterion_06_figure2_equivalences(universe4):
    start = time.perf_counter()
    items = (
        (DENSE_ARCHETYPE, dense_image),
        (INJECTIVE_ARCHETYPE, injective),
        (PULLBACK_ARCHETYPE, induced_topology),
    )
    for arch, pred in items:
        bad = [f for f in universe4 if lifts_bool(f, arch) != pred(f)]
        assert bad == [], [render(f) for f in bad[:5]]
    report(6, "dense/injective/induced lifting equivalences are exact", start)


def test_criterion_07_subdivision_shadow(universe4):
    start = time.perf_counter()
    left = [f for f in universe4 if lifts_bool(f, M_TO_LAMBDA)]
    s1, s2 = sub(1), sub(2)
    bad = [f for f in left if not (lifts_bool(f, s1) and lifts_bool(f, s2))]
    assert bad == [], "counterexamples (verbatim): " + "; ".join(
        render(f) for f in bad
    )
    report(
        7,
        f"all {len(left)} left-class maps lift against both subdivisions",
        start,
    )


def test_criterion_08_retract_of_subdivision():
    start = time.perf_counter()
    displayed = sub(2)                    # 4-cell zigzag onto 2-cell zigzag
    text = compose(sub(8), sub(4))        # 16-cell zigzag onto 4-cell zigzag
    results = {}
    for tag, g in (("displayed", displayed), ("text", text)):
        w = is_retract_of(LAMBDA_TO_POINT, g)
        if w is not None:
            assert compose(w.section_dom, w.retraction_dom) == identity(
                LAMBDA_TO_POINT.src
            )
            assert compose(w.section_cod, w.retraction_cod) == identity(
                LAMBDA_TO_POINT.dst
            )
            assert compose(w.section_dom, g) == compose(
                LAMBDA_TO_POINT, w.section_cod
            )
            assert compose(w.retraction_dom, LAMBDA_TO_POINT) == compose(
                g, w.retraction_cod
            )
        results[tag] = w is not None
    assert any(results.values()), results
    report(8, f"retract witness per reading: {results}", start)


def test_criterion_09_enumeration_counts():
    start = time.perf_counter()

    def oracle(n):
        # independent path: enumerate every reflexive-transitive relation on
        # n labeled points and bucket by minimal relabeling
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        classes = set()
        for mask in range(1 << len(pairs)):
            rel = {(i, i) for i in range(n)}
            for bit, p in enumerate(pairs):
                if (mask >> bit) & 1:
                    rel.add(p)
            if any(
                (a, d) not in rel for a, b in rel for c, d in rel if b == c
            ):
                continue
            classes.add(
                min(
                    tuple(sorted((perm[a], perm[b]) for a, b in rel))
                    for perm in itertools.permutations(range(n))
                )
            )
        return len(classes)

    per_size = {}
    for x in enumerate_spaces(4):
        per_size[len(x.points)] = per_size.get(len(x.points), 0) + 1
    expected = {n: oracle(n) for n in range(5)}
    assert per_size == expected
    assert [expected[n] for n in range(5)] == [1, 1, 3, 9, 33]
    report(9, f"homeomorphism class counts 0..4 = {[expected[n] for n in range(5)]}", start)


def naive_square_unfillable(sq):
    """Independent scan over all |Y|^|X| assignments, monotone or not."""
    X, Y = sq.i.dst, sq.g.src
    if not X.points:
        h = {}
        ok = all(
            sq.g.assign.get(h.get(x)) == sq.phi.assign[x] for x in X.points
        )
        return not ok or any(
            h.get(sq.i.assign[a]) != sq.f.assign[a] for a in sq.i.src.points
        )
    for values in itertools.product(Y.points, repeat=len(X.points)):
        h = dict(zip(X.points, values))
        if any((h[a], h[b]) not in Y.rel for a, b in X.rel):
            continue
        if any(h[sq.i.assign[a]] != sq.f.assign[a] for a in sq.i.src.points):
            continue
        if any(sq.g.assign[h[x]] != sq.phi.assign[x] for x in X.points):
            continue
        return False
    return True


def test_criterion_10_certificate_soundness(universe4):
    start = time.perf_counter()
    rng = random.Random(20260808)
    holds_seen = fails_seen = 0
    for _ in range(1000):
        i = universe4[rng.randrange(len(universe4))]
        g = universe4[rng.randrange(len(universe4))]
        cert = lifts(i, g)
        if cert.holds:
            holds_seen += 1
            sqs = squares(i, g)
            assert len(sqs) == cert.squares == len(cert.fillers)
            for sq, h in zip(sqs, cert.fillers):
                assert compose(sq.i, h) == sq.f
                assert compose(h, sq.g) == sq.phi
        else:
            fails_seen += 1
            assert naive_square_unfillable(cert.counterexample)
    assert holds_seen and fails_seen
    report(
        10,
        f"1000 certificates sound ({holds_seen} hold, {fails_seen} fail)",
        start,
    )


def test_criterion_11_closure_laws():
    start = time.perf_counter()
    u = get_universe(3)
    maps3 = [u.map_at(k) for k in range(len(u))]
    rng = random.Random(1787)
    comp = prod = retr = 0
    while comp < 200:
        i, g1, g2 = (maps3[rng.randrange(len(maps3))] for _ in range(3))
        if g1.dst != g2.src:
            continue
        if not (lifts_bool(i, g1) and lifts_bool(i, g2)):
            continue
        comp += 1
        assert lifts_bool(i, compose(g1, g2)), (render(i), render(g1), render(g2))
    while prod < 150:
        i, g1, g2 = (maps3[rng.randrange(len(maps3))] for _ in range(3))
        if not (lifts_bool(i, g1) and lifts_bool(i, g2)):
            continue
        prod += 1
        assert lifts_bool(i, product_map(g1, g2))
    small = [m for m in maps3 if len(m.src.points) + len(m.dst.points) <= 5]
    while retr < 150:
        i = maps3[rng.randrange(len(maps3))]
        g = maps3[rng.randrange(len(maps3))]
        g2 = small[rng.randrange(len(small))]
        if not lifts_bool(i, g):
            continue
        if is_retract_of(g2, g) is None:
            continue
        retr += 1
        assert lifts_bool(i, g2)
    report(11, "500 sampled composition/product/retract stability checks", start)


def test_criterion_12_parser_round_trip():
    start = time.perf_counter()
    reg = registry()
    count = 0
    for x in reg.spaces.values():
        assert parse_space(render(x)) == x
        count += 1
    for f in reg.maps.values():
        assert parse_map(render(f)) == f
        count += 1
    for k in range(1, 5):
        assert parse_space(render(lam(k))) == lam(k)
        count += 1
    rng = random.Random(0xACCE)
    names = ["a", "b", "c", "d", "e", "f'", "g0", "h_1"]
    for _ in range(1000):
        n = rng.randint(0, 5)
        pts = rng.sample(names, n)
        arrows = [
            (x, y)
            for x in pts
            for y in pts
            if x != y and rng.random() < 0.35
        ]
        sp = Space.from_arrows(pts, arrows)
        assert parse_space(render(sp)) == sp
        count += 1
    report(12, f"parse-render identity on {count} objects", start)
