"""DSL grammar, error positions, and render round-trips."""
import random

import pytest

from ftop.errors import MapError, ParseError
from ftop.parser import parse_map, parse_space, render
from ftop.registry import INDISCRETE2, LAMBDA, M, SIERPINSKI, registry
from ftop.space import Space, lam, sub


class TestParseSpace:
    def test_sierpinski(self):
        s = parse_space("{o->c}")
        assert s == SIERPINSKI
        assert s.is_open({"o"}) and s.is_closed({"c"})

    def test_m_from_zigzag(self):
        assert parse_space("{a<-u->x<-v->b}") == M

    def test_empty(self):
        assert parse_space("{}") == Space.empty()

    def test_whitespace_insignificant(self):
        assert parse_space(" { a <- u -> x <- v -> b } ") == M

    def test_unicode_arrows(self):
        assert parse_space("{o→c}") == SIERPINSKI
        assert parse_space("{a↔b}") == INDISCRETE2
        assert parse_space("{c←o}") == SIERPINSKI

    def test_indiscrete_not_collapsed(self):
        x = parse_space("{a<->b}")
        assert len(x.points) == 2
        assert x == INDISCRETE2

    def test_aliases_in_plain_space(self):
        x = parse_space("{a=b->c}")
        assert len(x.points) == 2
        assert ("a", "c") in x.rel

    def test_comma_chains(self):
        x = parse_space("{a->b,c->b,d}")
        assert set(x.points) == {"a", "b", "c", "d"}
        assert ("a", "b") in x.rel and ("c", "b") in x.rel

    def test_repeated_mention_is_same_point(self):
        x = parse_space("{a->b,a->c}")
        assert len(x.points) == 3


class TestParseErrors:
    @pytest.mark.parametrize(
        "text",
        ["", "{", "{a", "{a->}", "a}", "{a -> -> b}", "{a;b}", "{a=}", "{a b}"],
    )
    def test_syntax_errors_carry_positions(self, text):
        with pytest.raises(ParseError) as err:
            parse_space(text)
        assert err.value.position >= 0

    def test_name_in_two_classes(self):
        with pytest.raises(ParseError):
            parse_space("{a=b->c,a=d}")

    def test_overlapping_multiclasses_in_codomain(self):
        with pytest.raises(ParseError):
            parse_map("{x}-->{x=y->y=z}")

    def test_map_needs_arrow(self):
        with pytest.raises(ParseError):
            parse_map("{a} {b}")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_space("{a}x")


class TestParseMap:
    def test_m_to_lambda(self):
        f = parse_map("{a<-u->x<-v->b}-->{a<-u=x=v->b}")
        assert f.src == M
        assert f.assign["u"] == f.assign["x"] == f.assign["v"]
        assert f.assign["a"] == "a" and f.assign["b"] == "b"

    def test_sierpinski_to_point(self):
        f = parse_map("{o->c}-->{o=c}")
        assert len(f.dst.points) == 1
        assert f.assign == {"o": "o", "c": "o"}

    def test_closed_point_inclusion_is_not_dense(self):
        from ftop.properties import dense_image

        f = parse_map("{c}-->{o->c}")
        assert f.assign == {"c": "c"}
        assert not dense_image(f)

    def test_codomain_only_names_allowed(self):
        f = parse_map("{o}-->{o->c}")
        assert f.assign == {"o": "o"}

    def test_domain_name_missing(self):
        with pytest.raises(MapError):
            parse_map("{q}-->{o->c}")

    def test_domain_class_split(self):
        with pytest.raises(MapError):
            parse_map("{a=b}-->{a,b}")

    def test_non_monotone_assignment_names_points(self):
        with pytest.raises(MapError) as err:
            parse_map("{o->c}-->{c->o}")
        # the o->c pair fails downstairs, and the message says which
        assert "monotone" in str(err.value)
        assert "'o'" in str(err.value) and "'c'" in str(err.value)

    def test_empty_domain(self):
        f = parse_map("{}-->{o}")
        assert f.src == Space.empty()
        assert len(f.dst.points) == 1


class TestRender:
    def test_spec_round_trips(self):
        assert render(parse_space("{o->c}")) == "{o->c}"
        assert render(LAMBDA) == "{a<-w->b}"
        assert render(Space.empty()) == "{}"
        assert render(M) == "{a<-u->x<-v->b}"

    def test_registry_round_trips(self):
        reg = registry()
        for name, x in reg.spaces.items():
            assert parse_space(render(x)) == x, name
        for name, f in reg.maps.items():
            assert parse_map(render(f)) == f, name
        for k in range(1, 5):
            assert parse_space(render(lam(k))) == lam(k)

    def test_sub_renders_with_renaming(self):
        # sub(k) moves points whose names also appear in the codomain; the
        # renderer primes the domain and the printed string re-parses to an
        # isomorphic map with identical codomain
        from ftop.universe import map_key

        for k in (1, 2):
            f = sub(k)
            g = parse_map(render(f))
            assert g.dst == f.dst
            assert map_key(g) == map_key(f)

    def test_random_spaces_round_trip(self):
        rng = random.Random(0xF70)
        names = ["a", "b", "c", "d", "e", "a'", "q0", "x_1"]
        for _ in range(1000):
            n = rng.randint(0, 5)
            pts = rng.sample(names, n)
            arrows = [
                (x, y)
                for x in pts
                for y in pts
                if x != y and rng.random() < 0.35
            ]
            x = Space.from_arrows(pts, arrows)
            assert parse_space(render(x)) == x

    def test_random_maps_round_trip(self):
        # maps built from fresh disjoint names are always DSL-expressible
        rng = random.Random(0xF71)
        from ftop.lifting import monotone_maps

        for _ in range(200):
            n = rng.randint(0, 4)
            m = rng.randint(1, 4)
            src_pts = [f"s{i}" for i in range(n)]
            dst_pts = [f"d{i}" for i in range(m)]
            src = Space.from_arrows(
                src_pts,
                [
                    (x, y)
                    for x in src_pts
                    for y in src_pts
                    if x != y and rng.random() < 0.3
                ],
            )
            dst = Space.from_arrows(
                dst_pts,
                [
                    (x, y)
                    for x in dst_pts
                    for y in dst_pts
                    if x != y and rng.random() < 0.3
                ],
            )
            homs = monotone_maps(src, dst)
            if not homs:
                continue
            f = homs[rng.randrange(len(homs))]
            assert parse_map(render(f)) == f
