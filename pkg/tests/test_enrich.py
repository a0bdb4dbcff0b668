import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fcmt.bim import bim_oracle
from fcmt.core import TwoCell
from fcmt.enrich import (EnrichedCategory, check_enriched, classical_enriched_adapter, comp_frame, enrich_to_bim,
                         enumerate_enriched, ids_frame, parbjn_from_subsets, transferred_structures_report)
from fcmt.errors import MalformedData, NotASubset, SourceInvalid
from fcmt.instances.monoidal import CartesianSkeleton, monoidal_fc, v2_presentation

V2 = monoidal_fc(v2_presentation())


def _v2_preorder(objects, leq):
    h = {(a, b): int(leq(a, b)) for a in objects for b in objects}
    comp = {(a, b, c): f"{min(h[(a, b)], h[(b, c)])}<={h[(a, c)]}" for a, b, c in itertools.product(objects, repeat=3)}
    ids = {a: f"1<={h[(a, a)]}" for a in objects}
    return classical_enriched_adapter(V2, objects, h, comp, ids)


def _monoid_category(table, unit, n):
    """One-object category enriched in finite sets, from a table on ``range(n)``."""
    V = monoidal_fc(CartesianSkeleton(3), validate=False)
    # the source of composition is hom (x) hom with g first
    vals = tuple(table[(g, f)] for g in range(n) for f in range(n))
    return V, classical_enriched_adapter(V, ["*"], {("*", "*"): n}, {("*", "*", "*"): (n * n, n, vals)},
                                         {"*": (1, n, (unit,))})


# -- over V2 --


def test_chain_is_a_v2_category():
    C = _v2_preorder([0, 1, 2], lambda a, b: a <= b)
    assert check_enriched(V2, C).passed


def test_v2_without_reflexivity_has_no_identities():
    with pytest.raises(MalformedData):
        _v2_preorder([0, 1], lambda a, b: a < b)
    homs = {(a, b): V2.hor(int(a < b)) for a in (0, 1) for b in (0, 1)}
    assert list(enumerate_enriched(V2, [0, 1], {0: "*", 1: "*"}, homs)) == []


def test_adapter_matches_direct_construction():
    C = _v2_preorder([0, 1], lambda a, b: a <= b)
    h = {k: V2.hor(v) for k, v in {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1}.items()}
    D = EnrichedCategory((0, 1), {0: "*", 1: "*"}, h, {}, {})
    for a, b, c in itertools.product((0, 1), repeat=3):
        lo = min(h[(a, b)].name, h[(b, c)].name)
        D.comp[(a, b, c)] = TwoCell(f"{lo}<={h[(a, c)].name}", comp_frame(V2, D, a, b, c))
    for a in (0, 1):
        D.ids[a] = TwoCell("1<=1", ids_frame(V2, D, a))
    assert C == D


def test_empty_category_is_enriched():
    C = EnrichedCategory((), {}, {}, {}, {})
    assert check_enriched(V2, C).passed
    assert len(list(enumerate_enriched(V2, [], {}, {}))) == 1


# -- monoids --


def test_monoid_is_a_one_object_category_and_mutation_is_caught():
    z3 = {(a, b): (a + b) % 3 for a in range(3) for b in range(3)}
    V, C = _monoid_category(z3, 0, 3)
    assert check_enriched(V, C).passed
    bad = dict(z3)
    bad[(1, 1)] = 0
    V, C = _monoid_category(bad, 0, 3)
    r = check_enriched(V, C)
    assert not r.passed and r.violations[0].law == "enriched-associativity" and r.violations[0].witness


def test_adapter_rejects_ill_typed_data():
    V = monoidal_fc(CartesianSkeleton(3), validate=False)
    with pytest.raises(MalformedData):
        classical_enriched_adapter(V, ["*"], {("*", "*"): 2}, {("*", "*", "*"): (4, 2, (0,))}, {"*": (1, 2, (0,))})
    with pytest.raises(MalformedData):
        classical_enriched_adapter(V, ["*"], {("*", "*"): 2}, {}, {"*": (1, 2, (0,))})


# -- partial bijections --


def test_parbjn_overlapping_pair():
    V, C = parbjn_from_subsets([1, 2, 3], {1: [1, 2], 2: [2, 3]})
    assert V.span(C.homs[(1, 2)]).apex.elements == (2,)
    assert C.comp[(1, 2, 1)].frame.target == C.homs[(1, 1)]
    assert V.span(C.homs[(1, 1)]).apex.elements == (1, 2)
    assert check_enriched(V, C).passed


def test_parbjn_disjoint_family_has_empty_cross_homs():
    V, C = parbjn_from_subsets([1, 2], {"a": [1], "b": [2]})
    assert V.span(C.homs[("a", "b")]).apex.elements == ()
    assert check_enriched(V, C).passed


def test_parbjn_rejects_non_subsets():
    with pytest.raises(NotASubset):
        parbjn_from_subsets([1, 2], {"a": [1, 3]})


@given(st.integers(0, 10_000))
def test_parbjn_families_are_enriched(seed):
    rng = random.Random(seed)
    S = list(range(rng.randint(0, 4)))
    fam = {i: [x for x in S if rng.random() < 0.5] for i in range(rng.randint(0, 3))}
    V, C = parbjn_from_subsets(S, fam)
    assert check_enriched(V, C).passed


# -- transfer into Bim --


@pytest.mark.parametrize("make", [
    lambda: (V2, _v2_preorder([0, 1, 2], lambda a, b: a <= b)),
    lambda: parbjn_from_subsets([1, 2, 3], {1: [1, 2], 2: [2, 3], 3: []}),
    lambda: _monoid_category({(a, b): a * b % 2 for a in range(2) for b in range(2)}, 1, 2),
])
def test_transfer_into_bim(make):
    V, C = make()
    D = enrich_to_bim(V, C)
    assert transferred_structures_report(V, D).passed
    assert check_enriched(bim_oracle(V), D).passed


def test_transfer_refuses_invalid_input():
    C = _v2_preorder([0, 1], lambda a, b: a <= b)
    del C.comp[(0, 0, 0)]
    with pytest.raises(SourceInvalid):
        enrich_to_bim(V2, C)
    z = {(a, b): 0 for a in range(2) for b in range(2)}
    V, C = _monoid_category(z, 1, 2)
    with pytest.raises(SourceInvalid):
        enrich_to_bim(V, C)
