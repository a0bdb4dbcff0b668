import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fcmt.core import Bounds, Frame, Hor, Path, check_fc_laws
from fcmt.errors import MalformedPath, MalformedUniverse, NotMonic, UnknownCell
from fcmt.instances.span import SpanUniverse, parbjn_check_and_restrict, path_limit, span_fc, universe_u1

from oracles import brute_limit, brute_span_cells, random_universe, span_paths


def _frames(V, max_arity):
    objs = V.objects()
    hors = [m for x in objs for y in objs for m in V.horizontals(x, y)]
    for x in objs:
        yield from _frames_from(V, x, hors, max_arity)


def _frames_from(V, x, hors, max_arity):
    paths = [Path.empty(x)]
    layer = [Path.empty(x)]
    for _ in range(max_arity):
        layer = [p + Path.of(m) for p in layer for m in hors if m.src == p.end]
        paths.extend(layer)
    for p in paths:
        for m in hors:
            for f in V.verticals(p.start, m.src):
                for g in V.verticals(p.end, m.dst):
                    yield Frame(p, f, g, m)


def _as_tables(V, cells):
    out = set()
    for c in cells:
        keys = [(r[0],) if c.arity == 0 else r[1::2] for r in V.rows(c.source)]
        out.add(frozenset(zip(keys, c.id)))
    return out


def test_u1_cells_match_enumerate_and_filter():
    u = universe_u1()
    V = span_fc(u)
    seen = 0
    for fr in _frames(V, 2):
        got = _as_tables(V, V.cells(fr))
        want = brute_span_cells(u, [m.name for m in fr.source.cells], fr.source.anchor,
                                V.function(fr.left).table, V.function(fr.right).table, fr.target.name)
        assert got == want, fr
        seen += 1
    # only identity verticals, so the frames are (A) => A and (B) => B
    assert seen == 2


@given(st.integers(0, 10_000))
def test_random_universe_cells_match_enumerate_and_filter(seed):
    u = random_universe(random.Random(seed), max_size=2, max_spans=3, max_apex=3)
    V = span_fc(u)
    for fr in _frames(V, 2):
        if V.count_cells(fr) > 500:
            continue
        want = brute_span_cells(u, [m.name for m in fr.source.cells], fr.source.anchor,
                                V.function(fr.left).table, V.function(fr.right).table, fr.target.name)
        assert _as_tables(V, V.cells(fr)) == want


def test_identity_frame_has_only_the_identity():
    u = SpanUniverse.build({"X": [0, 1]}, {}, {"I": ("X", "X", [0, 1], [0, 1], [0, 1])})
    V = span_fc(u)
    i = V.id_vert("X")
    [cell] = V.cells(Frame(Path.empty("X"), i, i, Hor("I", "X", "X")))
    assert cell.id == (0, 1)


def test_empty_target_apex_has_no_cells():
    u = SpanUniverse.build({"X": [0]}, {}, {"E": ("X", "X", [], [], []), "F": ("X", "X", ["f"], [0], [0])})
    V = span_fc(u)
    i = V.id_vert("X")
    assert V.cells(Frame(Path.of(Hor("F", "X", "X")), i, i, Hor("E", "X", "X"))) == []
    # and out of an empty limit there is exactly one cell
    assert len(V.cells(Frame(Path.of(Hor("E", "X", "X")), i, i, Hor("F", "X", "X")))) == 1


def test_path_limit_small_cases():
    u = universe_u1()
    ident = path_limit(u, "X")
    assert ident.apex.elements == ("x1", "x2")
    assert ident.leg_l.values == ident.leg_r.values == ("x1", "x2")
    assert path_limit(u, ["A"]) is u.spans["A"]
    ab = path_limit(u, ["A", "B"])
    assert set(ab.apex.elements) == {(a, b) for a in ("a2", "a3") for b in ("b1", "b2")}
    assert {(e, ab.leg_l(e), ab.leg_r(e)) for e in ab.apex.elements} == brute_limit(u, ["A", "B"])


def test_path_limit_errors():
    u = universe_u1()
    with pytest.raises(MalformedPath):
        path_limit(u, ["B", "A"])
    with pytest.raises(MalformedPath):
        path_limit(u, ["Q"])
    with pytest.raises(MalformedPath):
        path_limit(u, [])


@given(st.integers(0, 10_000))
def test_path_limit_is_associative_up_to_flattening(seed):
    u = random_universe(random.Random(seed), max_spans=4)
    for p in span_paths(u, 3):
        for k in range(1, len(p)):
            left, right = path_limit(u, list(p[:k])), path_limit(u, list(p[k:]))
            flat = lambda e, n: e if n > 1 else (e,)
            nested = {(flat(a, k) + flat(b, len(p) - k), left.leg_l(a), right.leg_r(b))
                      for a in left.apex.elements for b in right.apex.elements
                      if left.leg_r(a) == right.leg_l(b)}
            assert nested == brute_limit(u, list(p))


def test_universe_validation():
    with pytest.raises(MalformedUniverse):
        SpanUniverse.build({"X": [0]}, {}, {"A": ("X", "Y", [], [], [])})
    with pytest.raises(MalformedUniverse):
        SpanUniverse.build({"X": [0, 1]}, {"f": ("X", "X", [1, 0]), "g": ("X", "X", [1, 0])}, {})
    with pytest.raises(MalformedUniverse):
        SpanUniverse.build({"X": [0]}, {"f": ("X", "X", [0])}, {"f": ("X", "X", [], [], [])})
    with pytest.raises(MalformedUniverse):
        SpanUniverse.build({"X": [0]}, {"f": ("X", "X", [1])}, {})


def test_declared_composites_are_checked_against_tables():
    good = SpanUniverse.build({"X": [0, 1]}, {"swap": ("X", "X", [1, 0])}, {})
    assert good.check_laws().passed
    bad = SpanUniverse.build({"X": [0, 1]}, {"swap": ("X", "X", [1, 0])}, {}, composites={("swap", "swap"): "swap"})
    r = bad.check_laws()
    assert not r.passed and r.violations[0].law == "composite-table"


def test_closure_under_vertical_composition():
    u = SpanUniverse.build({"X": [0, 1, 2]}, {"s": ("X", "X", [1, 2, 0])}, {})
    V = span_fc(u)
    assert len(V.verticals("X", "X")) == 3
    assert check_fc_laws(V, Bounds(0, 0)).passed


def test_tabulate_rejects_non_commuting_values():
    V = span_fc(universe_u1())
    A = Hor("A", "X", "Y")
    fr = Frame(Path.of(A), V.id_vert("X"), V.id_vert("Y"), A)
    with pytest.raises(UnknownCell):
        V.tabulate(fr, lambda r: "a1")


def test_cell_encoding_round_trips():
    V = span_fc(universe_u1())
    A, B = Hor("A", "X", "Y"), Hor("B", "Y", "Z")
    for fr in [Frame(Path.of(A), V.id_vert("X"), V.id_vert("Y"), A),
               Frame(Path.of(B), V.id_vert("Y"), V.id_vert("Z"), B)]:
        for c in V.cells(fr):
            assert V.decode_cell(fr, V.encode_cell(c)) == c


# -- partial bijections --


def test_parbjn_rejects_non_injective_leg():
    u = SpanUniverse.build({"X": ["x1", "x2"]}, {}, {"M": ("X", "X", ["a1", "a2"], ["x1", "x1"], ["x1", "x2"])})
    with pytest.raises(NotMonic, match="left"):
        parbjn_check_and_restrict(u)


def test_parbjn_accepts_intersection_spans():
    C1, C2 = [1, 2], [2, 3]
    u = SpanUniverse.build({"C1": C1, "C2": C2}, {}, {
        "h12": ("C1", "C2", [2], [2], [2]), "h11": ("C1", "C1", C1, C1, C1), "h22": ("C2", "C2", C2, C2, C2)})
    V = parbjn_check_and_restrict(u)
    assert V.universe.restrict_to_partial_bijections


def test_parbjn_is_a_sub_fc_multicategory():
    u = SpanUniverse.build({"X": [0, 1]}, {"swap": ("X", "X", [1, 0])},
                           {"I": ("X", "X", [0, 1], [0, 1], [0, 1]), "P": ("X", "X", ["p"], [0], [1])})
    full, restricted = span_fc(u), parbjn_check_and_restrict(u)
    for fr in _frames(full, 2):
        assert restricted.cells(fr) == full.cells(fr)


@given(st.integers(0, 10_000))
def test_parbjn_pair_composites_stay_injective(seed):
    rng = random.Random(seed)
    X, Y, Z = (list(range(rng.randint(0, 4))) for _ in range(3))

    def pb(A, B, tag):
        k = rng.randint(0, min(len(A), len(B)))
        dom, img = rng.sample(A, k), rng.sample(B, k)
        return (tag[0], tag[1], list(range(k)), dom, img)

    u = SpanUniverse.build({"X": X, "Y": Y, "Z": Z}, {}, {"P": pb(X, Y, "XY"), "Q": pb(Y, Z, "YZ")})
    assert path_limit(u, ["P", "Q"]).is_partial_bijection()


def test_limit_rows_interleave_ends_and_apex():
    # rows interleave ends and apex elements: (x0, a1, x1, a2, x2)
    V = span_fc(universe_u1())
    rows = V.rows(Path.of(Hor("A", "X", "Y"), Hor("B", "Y", "Z")))
    assert all(len(r) == 5 and r[2] == "y2" for r in rows)
    assert len(rows) == len(list(itertools.product(["a2", "a3"], ["b1", "b2"])))
