"""Named, reproducible verification suites over the bounded universes.

Each suite runs a list of claims and reports per-claim status:

* ``pass``   - checked exhaustively at the stated bound, zero counterexamples;
* ``fail``   - a claim expected to hold produced counterexamples (surfaced
  verbatim as DSL);
* ``caveat`` - a bounded-universe over-approximation finding or an explicitly
  directional probe; never fails the run.

For claims about orthogonal classes beyond one decidable step the report is
two-sided: "characterized class inside bounded class" must hold, while the
reverse containment may legitimately fail and is reported as a caveat with
witnesses.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from ._parallel import pmap
from .lifting import (
    bounded_factor,
    is_retract_of,
    lifts_bool,
    relative_orthogonal,
)
from .parser import render
from .properties import (
    admits_section,
    closed_map,
    closed_pair_extension,
    dense_image,
    discrete,
    hereditarily_normal,
    hereditarily_normal_by_separation,
    induced_topology,
    injective,
    normal,
    pi0_surjective,
    quotient_map,
    reflects_rel,
    subset_inclusion,
    summand_inclusion,
    surjective,
    t0,
)
from .registry import (
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
)
from .space import CMap, compose, is_isomorphism, sub
from .universe import enumerate_spaces, get_universe

MAX_LISTED = 20  # counterexamples listed per claim; totals go in the detail


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    anchor: str
    status: str
    detail: str
    counterexamples: tuple[str, ...]
    runtime: float

    def to_json(self) -> dict:
        return {
            "claim": self.claim_id,
            "anchor": self.anchor,
            "status": self.status,
            "detail": self.detail,
            "counterexamples": list(self.counterexamples),
            "runtime": self.runtime,
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    n: int
    jobs: int
    claims: tuple[ClaimResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.claims)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "jobs": self.jobs,
            "ok": self.ok,
            "claims": [c.to_json() for c in self.claims],
        }

    def render_text(self) -> str:
        lines = [f"suite {self.suite} (n={self.n}, jobs={self.jobs})"]
        for c in self.claims:
            mark = {"pass": "PASS", "fail": "FAIL", "caveat": "CAVEAT"}[c.status]
            lines.append(f"  [{mark}] {c.claim_id}: {c.anchor} ({c.runtime:.2f}s)")
            if c.detail:
                lines.append(f"         {c.detail}")
            label = "counterexample" if c.status == "fail" else "finding"
            for ce in c.counterexamples:
                lines.append(f"         {label}: {ce}")
        verdict = "OK" if self.ok else "FAILED"
        lines.append(f"suite {self.suite}: {verdict}")
        return "\n".join(lines)


def _claim(claim_id, anchor, fn) -> ClaimResult:
    start = time.perf_counter()
    status, detail, cxs = fn()
    return ClaimResult(
        claim_id, anchor, status, detail, tuple(cxs[:MAX_LISTED]),
        time.perf_counter() - start,
    )


def _verdict(bad: list, total: int, subject: str, caveat: bool = False):
    if not bad:
        return "pass", f"0 counterexamples over {total} {subject}", []
    status = "caveat" if caveat else "fail"
    return status, f"{len(bad)} counterexamples over {total} {subject}", bad


# -- orthogonal ladders ---------------------------------------------------------


def _nonempty_or_empty_pair(f: CMap) -> bool:
    return len(f.src.points) > 0 or len(f.dst.points) == 0


def _empty_dom_or_iso(f: CMap) -> bool:
    return len(f.src.points) == 0 or is_isomorphism(f)


def _summand_discrete(f: CMap) -> bool:
    return summand_inclusion(f, discrete_complement=True)


def _summand_any(f: CMap) -> bool:
    return summand_inclusion(f, discrete_complement=False)


def _automatic_sections(f: CMap) -> bool:
    # refinement of "every set-theoretic section is continuous": the lifting
    # class is exactly the surjections reflecting specialization
    return surjective(f) and reflects_rel(f)


_LADDER_FIRST = (
    ("r", surjective, "right class of the empty-to-point map = surjections"),
    ("rl", _summand_discrete,
     "rl class = clopen summand inclusions with discrete complement"),
    ("rll", pi0_surjective,
     "rll class = maps hitting every component of the codomain"),
    ("rllr", _summand_any, "rllr class = clopen summand inclusions"),
    ("rr", subset_inclusion,
     "rr class = subset inclusions (injective, induced topology)"),
    ("lrrrl", quotient_map, "lrrrl class = quotient maps"),
)

_LADDER_FULL = (
    ("r", surjective, "right class = surjections"),
    ("l", _nonempty_or_empty_pair,
     "left class = maps with nonempty domain, plus the empty identity"),
    ("rr", subset_inclusion, "rr class = subset inclusions"),
    ("lr", _empty_dom_or_iso,
     "lr class = maps out of the empty space and isomorphisms"),
    ("lrr", admits_section, "lrr class = maps admitting a continuous section"),
    ("rl", _summand_discrete,
     "rl class = clopen summand inclusions with discrete complement"),
    ("rll", pi0_surjective,
     "rll class = maps hitting every component of the codomain"),
    ("rllr", _summand_any, "rllr class = clopen summand inclusions"),
    ("lrrr", injective, "lrrr class = injective maps"),
    ("lrrrr", _automatic_sections,
     "lrrrr class = surjections reflecting specialization "
     "(refines 'every set-theoretic section is continuous')"),
    ("lrrrl", quotient_map, "lrrrl class = quotient maps"),
)


def _ladder_claim(prefix, word, pred, anchor, n, jobs) -> ClaimResult:
    def run():
        u = get_universe(n)
        cls = relative_orthogonal([EMPTY_TO_POINT], word, n, jobs=jobs)
        in_class = set(cls.indices)
        missing = []
        extra = []
        for k in range(len(u)):
            m = u.map_at(k)
            p = pred(m)
            if p and k not in in_class:
                missing.append(render(m))
            elif not p and k in in_class:
                extra.append(render(m))
        if missing:
            return (
                "fail",
                f"{len(missing)} characterized maps missing from the bounded "
                f"class (plus {len(extra)} extra members) over {len(u)} maps",
                missing + extra,
            )
        if extra:
            status = "caveat" if not cls.exact else "fail"
            note = cls.caveat or "single-step class is exact"
            return (
                status,
                f"bounded class has {len(extra)} members beyond the "
                f"characterization over {len(u)} maps; {note}",
                extra,
            )
        return "pass", f"exact match over {len(u)} maps", []

    return _claim(f"{prefix}.{word}", anchor, run)


def suite_lemma21(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 3 if n is None else n
    return n, [
        _ladder_claim("ladder", word, pred, anchor, n, jobs)
        for word, pred, anchor in _LADDER_FIRST
    ]


def suite_appendix32(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 3 if n is None else n
    claims = [
        _ladder_claim("ladder", word, pred, anchor, n, jobs)
        for word, pred, anchor in _LADDER_FULL
    ]

    def collapse_claim(arch, tag):
        def run():
            u = get_universe(n)
            cls = relative_orthogonal([arch], "l", n, jobs=jobs)
            in_class = set(cls.indices)
            bad = [
                render(u.map_at(k))
                for k in range(len(u))
                if (k in in_class) != subset_inclusion(u.map_at(k))
            ]
            return _verdict(bad, len(u), "maps")

        return _claim(
            f"subsets.via_{tag}_collapse",
            "left lifting against the 3-to-1 collapse decides subset inclusions",
            run,
        )

    claims.append(collapse_claim(SUBSET_ARCHETYPE_FWD, "fwd"))
    claims.append(collapse_claim(SUBSET_ARCHETYPE_BWD, "bwd"))
    return n, claims


# -- single-step equivalence sweeps ---------------------------------------------


def _equivalence_sweep(u, map_on_left, arch, pred, jobs):
    """Indices where lifting against ``arch`` disagrees with ``pred``."""

    def check(k: int) -> bool:
        m = u.map_at(k)
        if map_on_left:
            return lifts_bool(m, arch) == pred(m)
        return lifts_bool(arch, m) == pred(m)

    flags = pmap(check, range(len(u)), jobs)
    return [k for k, ok in enumerate(flags) if not ok]


def suite_closed_proper(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 4 if n is None else n

    def run():
        u = get_universe(n)
        bad = _equivalence_sweep(u, False, OPEN_POINT_INCL, closed_map, jobs)
        return _verdict([render(u.map_at(k)) for k in bad], len(u), "maps")

    return n, [
        _claim(
            "closed_iff_open_point_lifting",
            "a map of finite spaces is closed (= proper) iff the open-point "
            "inclusion lifts against it",
            run,
        )
    ]


def suite_archetypes(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    archetypes = (
        ("disjoint_closures", DISJOINT_CLOSURES_ARCHETYPE),
        ("injective", INJECTIVE_ARCHETYPE),
        ("pullback_topology", PULLBACK_ARCHETYPE),
        ("dense_image", DENSE_ARCHETYPE),
    )
    claims = []
    for tag, arch in archetypes:
        def run(arch=arch):
            ok = closed_map(arch)
            return (
                "pass" if ok else "fail",
                render(arch),
                [] if ok else [render(arch)],
            )

        claims.append(
            _claim(f"archetype_closed.{tag}", "the archetype map is closed", run)
        )
    return 0, claims


def suite_normality(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 5 if n is None else n

    def run_equiv():
        spaces = enumerate_spaces(n)

        def check(k: int) -> bool:
            x = spaces[k]
            return lifts_bool(CMap(EMPTY, x, {}), M_TO_LAMBDA) == normal(x)

        flags = pmap(check, range(len(spaces)), jobs)
        bad = [render(spaces[k]) for k, ok in enumerate(flags) if not ok]
        return _verdict(bad, len(spaces), "spaces")

    def run_hn():
        spaces = enumerate_spaces(n)
        bad = [
            render(x)
            for x in spaces
            if hereditarily_normal(x) != hereditarily_normal_by_separation(x)
        ]
        return _verdict(bad, len(spaces), "spaces")

    return n, [
        _claim(
            "normal_iff_empty_lifting",
            "a space is normal iff the map from the empty space lifts against "
            "the five-to-three zigzag collapse",
            run_equiv,
        ),
        _claim(
            "hereditarily_normal_two_routes",
            "hereditary normality via subspaces agrees with the "
            "separated-pairs characterization",
            run_hn,
        ),
    ]


def suite_mlambda(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 4 if n is None else n
    u = get_universe(n)

    def member(k: int) -> bool:
        return lifts_bool(u.map_at(k), M_TO_LAMBDA)

    flags = pmap(member, range(len(u)), jobs)
    left = [k for k, ok in enumerate(flags) if ok]

    def run_sub(g):
        def run():
            def check(k: int) -> bool:
                return lifts_bool(u.map_at(k), g)

            sub_flags = pmap(check, left, jobs)
            bad = [render(u.map_at(k)) for k, ok in zip(left, sub_flags) if not ok]
            return _verdict(bad, len(left), "left-class maps")

        return run

    disc = [k for k in left if discrete(u.map_at(k).src)]

    def run_dir(pred, restrict, subject):
        def run():
            eligible = [k for k in disc if restrict(u.map_at(k).dst)]
            bad = [render(u.map_at(k)) for k in eligible if not pred(u.map_at(k))]
            return _verdict(bad, len(eligible), subject)

        return run

    def run_closed_hn():
        eligible = [k for k in disc if hereditarily_normal(u.map_at(k).dst)]
        bad = [render(u.map_at(k)) for k in eligible if not closed_map(u.map_at(k))]
        if not bad:
            return "pass", f"0 counterexamples over {len(eligible)} maps", []
        return (
            "caveat",
            f"{len(bad)} non-closed members over {len(eligible)} maps: the "
            "closed-subset reading needs a T0 codomain at finite scale "
            "(finite Hausdorff degenerates to discrete); see the T0 claim",
            bad,
        )

    claims = [
        _claim(
            "left_class_lifts_one_step_subdivision",
            "every member of the bounded left class of the zigzag collapse "
            "lifts against the one-step subdivision",
            run_sub(sub(1)),
        ),
        _claim(
            "left_class_lifts_two_step_subdivision",
            "every member of the bounded left class lifts against the "
            "subdivision of the doubled zigzag",
            run_sub(sub(2)),
        ),
        _claim(
            "discrete_domain_members_are_injective",
            "left-class members with discrete domain are injective",
            run_dir(injective, lambda x: True, "discrete-domain maps"),
        ),
        _claim(
            "discrete_domain_members_have_induced_topology",
            "left-class members with discrete domain carry the induced topology",
            run_dir(induced_topology, lambda x: True, "discrete-domain maps"),
        ),
        _claim(
            "discrete_domain_members_into_t0_are_closed",
            "left-class members with discrete domain and T0 codomain are closed",
            run_dir(closed_map, t0, "discrete-domain maps into T0"),
        ),
        _claim(
            "discrete_domain_members_into_hn_are_closed",
            "directional probe: with only hereditary normality downstairs "
            "the closed-subset reading can fail off T0",
            run_closed_hn,
        ),
    ]
    return n, claims


def suite_figure2(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 4 if n is None else n
    items = (
        ("dense_image", DENSE_ARCHETYPE, dense_image,
         "left lifting against the closed-point inclusion = dense image"),
        ("injective", INJECTIVE_ARCHETYPE, injective,
         "left lifting against the indiscrete collapse = injectivity"),
        ("induced_topology", PULLBACK_ARCHETYPE, induced_topology,
         "left lifting against the Sierpinski collapse = induced topology"),
        ("disjoint_closures", DISJOINT_CLOSURES_ARCHETYPE, closed_pair_extension,
         "left lifting against the zigzag collapse-to-point = disjoint closed "
         "pairs extend with exact preimages"),
    )
    claims = []
    for tag, arch, pred, anchor in items:
        def run(arch=arch, pred=pred):
            u = get_universe(n)
            bad = _equivalence_sweep(u, True, arch, pred, jobs)
            return _verdict([render(u.map_at(k)) for k in bad], len(u), "maps")

        claims.append(_claim(tag, anchor, run))
    return n, claims


def suite_subdivision(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    def run():
        bad = []
        for k in range(1, 5):
            s = sub(k)  # construction already enforces monotonicity
            if not surjective(s) or not quotient_map(s):
                bad.append(render(s))
        return _verdict(bad, 4, "subdivision maps")

    return 0, [
        _claim(
            "subdivisions_are_surjective_quotients",
            "each subdivision map is a surjective quotient",
            run,
        )
    ]


def suite_retract(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    def run():
        readings = (
            ("displayed (fine zigzag of 4 cells onto 2)", sub(2)),
            ("text (fine zigzag of 16 cells onto 4)", compose(sub(8), sub(4))),
        )
        outcome = []
        witnesses = 0
        for tag, g in readings:
            w = is_retract_of(LAMBDA_TO_POINT, g)
            if w is not None and w.check(LAMBDA_TO_POINT, g):
                witnesses += 1
                outcome.append(f"{tag}: witness found and verified")
            else:
                outcome.append(f"{tag}: no witness")
        status = "pass" if witnesses else "fail"
        return status, "; ".join(outcome), []

    return 0, [
        _claim(
            "zigzag_to_point_retract_of_subdivision",
            "the zigzag collapse to a point is a retract of an iterated "
            "subdivision under at least one indexing reading",
            run,
        )
    ]


def suite_factorization(n: Optional[int], jobs: int) -> tuple[int, list[ClaimResult]]:
    n = 3 if n is None else n

    def run():
        u = get_universe(n)
        left = relative_orthogonal([M_TO_LAMBDA], "l", n, jobs=jobs)
        right = relative_orthogonal([M_TO_LAMBDA], "lr", n, jobs=jobs)

        def check(k: int) -> bool:
            f = u.map_at(k)
            pair = bounded_factor(f, left, right)
            if pair is None:
                return False
            i, p = pair
            return compose(i, p) == f

        flags = pmap(check, range(len(u)), jobs)
        found = sum(flags)
        missing = [render(u.map_at(k)) for k, ok in enumerate(flags) if not ok]
        return (
            "caveat",
            f"bounded factorization found for {found}/{len(u)} maps "
            "(exploration only: classes are bounded over-approximations and "
            "middle objects are capped)",
            missing,
        )

    return n, [
        _claim(
            "bounded_factorization_coverage",
            "every map factors as (left-class map, then right-orthogonal map) "
            "within the bounded universe - coverage probe",
            run,
        )
    ]


_SUITES: dict[str, Callable] = {
    "lemma21": suite_lemma21,
    "appendix32": suite_appendix32,
    "closed_proper": suite_closed_proper,
    "archetypes": suite_archetypes,
    "normality": suite_normality,
    "mlambda": suite_mlambda,
    "figure2": suite_figure2,
    "subdivision": suite_subdivision,
    "retract": suite_retract,
    "factorization": suite_factorization,
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def run_suite(name: str, n: Optional[int] = None, jobs: int = 1) -> SuiteReport:
    """Run a named verification suite and return its report."""
    if name == "all":
        claims = []
        bound = 0
        for sub_name, fn in _SUITES.items():
            used_n, sub_claims = fn(n, jobs)
            bound = max(bound, used_n)
            claims.extend(
                ClaimResult(
                    f"{sub_name}.{c.claim_id}",
                    c.anchor,
                    c.status,
                    c.detail,
                    c.counterexamples,
                    c.runtime,
                )
                for c in sub_claims
            )
        return SuiteReport("all", bound, jobs, tuple(claims))
    fn = _SUITES.get(name)
    if fn is None:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    used_n, claims = fn(n, jobs)
    return SuiteReport(name, used_n, jobs, tuple(claims))
