import dataclasses

import pytest

from fcmt.bim import (BimTwoCell, FinCategory, FinFunctor, Monad, Profunctor, bim_oracle, cat_to_monad,
                      category_universe, check_bim_cell, check_bimodule, check_monad, check_monad_map,
                      functor_to_monad_map, monad_to_cat, profunctor_to_bimodule)
from fcmt.core import Bounds, Frame, Hor, Path, TwoCell, check_fc_laws, id_cell
from fcmt.errors import NotACategory, NotAFunctor, NotAMonad, NotAProfunctor
from fcmt.instances.monoidal import CartesianSkeleton, discrete_monoid_presentation, monoidal_fc, v2_presentation
from fcmt.instances.span import SpanUniverse, span_fc
from fcmt.instances.terminal import TerminalFc

from oracles import brute_categories, brute_monoids, brute_natural_families

ARROW = FinCategory.preorder("arrow", [0, 1], lambda a, b: a <= b)
Z2 = FinCategory.monoid("Z2", ["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}, "e")


def _identity_functor(C):
    return FinFunctor(f"id({C.name})", C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms})


# -- monads and categories --


@pytest.mark.parametrize("C", [ARROW, Z2, FinCategory.discrete("d", [0, 1])])
def test_categories_round_trip_through_monads(C):
    V = span_fc(category_universe([C]))
    T = cat_to_monad(C, V)
    assert check_monad(V, T).passed
    back = monad_to_cat(T, V, C.name)
    assert (back.morphisms, back.identities, back.composition) == (C.morphisms, C.identities, C.composition)


def test_broken_category_is_refused():
    comp = dict(Z2.composition)
    # e is the identity, so s o e must be s
    comp[("s", "e")] = "e"
    with pytest.raises(NotACategory):
        cat_to_monad(dataclasses.replace(Z2, composition=comp))


def test_broken_monad_is_refused():
    V = span_fc(category_universe([Z2]))
    T = cat_to_monad(Z2, V)
    bad = Monad(T.x, T.t, T.mult, TwoCell(("s",), T.unit.frame))
    r = check_monad(V, bad)
    assert not r.passed and {v.law for v in r.violations} >= {"monad-left-unit"}
    with pytest.raises(NotAMonad):
        monad_to_cat(bad, V)


def test_monads_on_a_graph_are_its_category_structures():
    mors = {"i0": (0, 0), "i1": (1, 1), "e": (0, 0), "a": (0, 1)}
    u = SpanUniverse.build({"X": [0, 1]}, {}, {"G": ("X", "X", list(mors), [0, 1, 0, 0], [0, 1, 0, 1])})
    B = bim_oracle(span_fc(u))
    assert len(B.objects()) == len(brute_categories([0, 1], mors)) > 0


# -- monad maps and functors --


def test_functor_gives_a_monad_map():
    F = FinFunctor("F", ARROW, Z2, {0: "*", 1: "*"}, {"1_0": "e", "1_1": "e", "0<1": "s"})
    V = span_fc(category_universe([ARROW, Z2], functors=[F]))
    m = functor_to_monad_map(F, V)
    assert check_monad_map(V, m, cat_to_monad(ARROW, V), cat_to_monad(Z2, V)).passed


def test_non_functor_is_refused():
    F = FinFunctor("F", Z2, Z2, {"*": "*"}, {"e": "s", "s": "s"})
    with pytest.raises(NotAFunctor):
        functor_to_monad_map(F)


# -- bimodules and profunctors --


@pytest.mark.parametrize("C", [ARROW, Z2])
def test_hom_profunctor_gives_a_bimodule(C):
    P = Profunctor.hom(C)
    V = span_fc(category_universe([C], [P]))
    assert check_bimodule(V, profunctor_to_bimodule(P, V)).passed


def test_non_profunctor_is_refused():
    P = Profunctor.hom(Z2)
    act = dict(P.act_src)
    act[("s", "s")] = "s"
    with pytest.raises(NotAProfunctor):
        profunctor_to_bimodule(dataclasses.replace(P, act_src=act))


# -- Bim 2-cells --


def _hom_setup(C):
    P = Profunctor.hom(C)
    V = span_fc(category_universe([C], [P]))
    S = cat_to_monad(C, V)
    M = profunctor_to_bimodule(P, V, S, S)
    B = bim_oracle(V, [S.t])
    return P, V, S, Hor(M, S, S), B


@pytest.mark.parametrize("C", [ARROW, Z2])
def test_bim_cells_are_natural_families(C):
    P, V, S, h, B = _hom_setup(C)
    i = B.id_vert(S)
    F = _identity_functor(C)
    for path in (Path.empty(S), Path.of(h), Path.of(h, h)):
        got = len(B.cells(Frame(path, i, i, h)))
        want = brute_natural_families([P] * path.arity, P, F, F, anchor=C)
        assert got == want, path


def test_bim_cell_checker_on_central_and_constant_families():
    P, V, S, h, B = _hom_setup(Z2)
    i = B.id_vert(S).name
    one = id_cell(V, h.name.m)
    assert check_bim_cell(V, BimTwoCell(one, (h.name,), h.name, i, i)).passed
    # swapping e and s is multiplication by the central s, still natural
    swapped = TwoCell(tuple({"e": "s", "s": "e"}[v] for v in one.id), one.frame)
    assert check_bim_cell(V, BimTwoCell(swapped, (h.name,), h.name, i, i)).passed
    constant = TwoCell(("e",) * len(one.id), one.frame)
    r = check_bim_cell(V, BimTwoCell(constant, (h.name,), h.name, i, i))
    assert not r.passed and r.violations[0].witness


def test_terminal_bim_is_terminal():
    B = bim_oracle(TerminalFc())
    [T] = B.objects()
    assert len(B.verticals(T, T)) == 1 and len(B.horizontals(T, T)) == 1
    assert check_fc_laws(B, Bounds(2, 2)).passed


def test_bim_of_small_span_passes_the_laws():
    _, _, _, _, B = _hom_setup(ARROW)
    r = check_fc_laws(B, Bounds(2, 2))
    assert r.passed, r.summary()


def test_bim_of_v2_passes_the_laws():
    B = bim_oracle(monoidal_fc(v2_presentation()))
    assert [T.t.name for T in B.objects()] == [1]
    r = check_fc_laws(B, Bounds(2, 2))
    assert r.passed, r.summary()


def test_monoidal_monads_are_monoid_objects():
    V = monoidal_fc(CartesianSkeleton(2), validate=False)
    B = bim_oracle(V)
    for n in range(3):
        got = {(T.mult.id[2], T.unit.id[2][0]) for T in B.objects() if T.t.name == n}
        assert got == brute_monoids(n)


def test_discrete_monoid_has_only_the_unit_monad():
    Zt = {(a, b): (a + b) % 2 for a in range(2) for b in range(2)}
    B = bim_oracle(monoidal_fc(discrete_monoid_presentation([0, 1], Zt, 0)))
    assert [T.t.name for T in B.objects()] == [0]
