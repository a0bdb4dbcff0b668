"""Categories enriched in an fc-multicategory.

An enriched category assigns to each object ``a`` an end-object ``ends[a]``
of ``V``, to each pair a horizontal 1-cell ``homs[(a, b)]: ends[a] -> ends[b]``,
and supplies composition cells ``comp[(a, b, c)]: (hom(a,b), hom(b,c)) => hom(a,c)``
and identity cells ``ids[a]: () => hom(a,a)``, all framed by identity verticals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .bim import BimFc, Bimodule, Monad, bim_oracle, check_bimodule, check_monad
from .core import FcOracle, Frame, Hor, LawReport, Path, TwoCell, compose_flat
from .errors import FrameError, MalformedData, NotASubset, SourceInvalid, UnknownCell
from .instances.monoidal import MonoidalFc
from .instances.span import SpanFc, SpanUniverse, parbjn_check_and_restrict


@dataclass
class EnrichedCategory:
    objects: tuple
    ends: dict
    homs: dict
    comp: dict
    ids: dict

    def __post_init__(self):
        self.objects = tuple(self.objects)


def comp_frame(V: FcOracle, C: EnrichedCategory, a, b, c) -> Frame:
    H = C.homs
    return Frame(Path.of(H[(a, b)], H[(b, c)]), V.id_vert(C.ends[a]), V.id_vert(C.ends[c]), H[(a, c)])


def ids_frame(V: FcOracle, C: EnrichedCategory, a) -> Frame:
    x = C.ends[a]
    return Frame(Path.empty(x), V.id_vert(x), V.id_vert(x), C.homs[(a, a)])


def _check_structure(V: FcOracle, C: EnrichedCategory) -> None:
    obs = C.objects
    for a in obs:
        if a not in C.ends or not V.has_object(C.ends[a]):
            raise FrameError(f"object {a!r} has no end-object in V")
    for a in obs:
        for b in obs:
            h = C.homs.get((a, b))
            if h is None or (h.src, h.dst) != (C.ends[a], C.ends[b]):
                raise FrameError(f"hom({a!r}, {b!r}) is missing or runs between the wrong ends")
            if not V.has_horizontal(h):
                raise UnknownCell(f"hom({a!r}, {b!r}) = {h} is not a horizontal 1-cell of V")
    for a, b, c in itertools.product(obs, repeat=3):
        cell = C.comp.get((a, b, c))
        if cell is None or cell.frame != comp_frame(V, C, a, b, c):
            raise FrameError(f"composition cell at ({a!r}, {b!r}, {c!r}) is missing or has the wrong frame")
        if not V.contains(cell):
            raise UnknownCell(f"composition cell at ({a!r}, {b!r}, {c!r}) is not a cell of V")
    for a in obs:
        cell = C.ids.get(a)
        if cell is None or cell.frame != ids_frame(V, C, a):
            raise FrameError(f"identity cell at {a!r} is missing or has the wrong frame")
        if not V.contains(cell):
            raise UnknownCell(f"identity cell at {a!r} is not a cell of V")


def check_enriched(V: FcOracle, C: EnrichedCategory, fail_fast: bool = False) -> LawReport:
    """Unit and associativity laws; malformed frames raise :class:`FrameError`.

    With ``fail_fast`` the report stops at the first violation.
    """
    _check_structure(V, C)
    obs, H = C.objects, C.homs
    one = {k: V.id_cell(h) for k, h in H.items()}
    r = LawReport()
    for a, b in itertools.product(obs, repeat=2):
        lhs = compose_flat(V, C.comp[(a, a, b)], [C.ids[a], one[(a, b)]])
        if not r.check("enriched-left-unit", lhs == one[(a, b)], lambda: {"objects": (a, b)}) and fail_fast:
            return r
        rhs = compose_flat(V, C.comp[(a, b, b)], [one[(a, b)], C.ids[b]])
        if not r.check("enriched-right-unit", rhs == one[(a, b)], lambda: {"objects": (a, b)}) and fail_fast:
            return r
    for a, b, c, d in itertools.product(obs, repeat=4):
        lhs = compose_flat(V, C.comp[(a, c, d)], [C.comp[(a, b, c)], one[(c, d)]])
        rhs = compose_flat(V, C.comp[(a, b, d)], [one[(a, b)], C.comp[(b, c, d)]])
        if not r.check("enriched-associativity", lhs == rhs, lambda: {"objects": (a, b, c, d)}) and fail_fast:
            return r
    return r


def enumerate_enriched(V: FcOracle, objects: Sequence, ends: Mapping,
                       homs: Mapping) -> Iterator[EnrichedCategory]:
    """Every choice of composition and identity cells satisfying the laws.

    Candidates are enumerated in ``V``'s cell order, so the output is
    deterministic.
    """
    objects = tuple(objects)
    skel = EnrichedCategory(objects, dict(ends), dict(homs), {}, {})
    triples = list(itertools.product(objects, repeat=3))
    comp_choices = [V.cells(comp_frame(V, skel, *t)) for t in triples]
    id_choices = [V.cells(ids_frame(V, skel, a)) for a in objects]
    for ids in itertools.product(*id_choices):
        for comps in itertools.product(*comp_choices):
            C = EnrichedCategory(objects, skel.ends, skel.homs, dict(zip(triples, comps)), dict(zip(objects, ids)))
            if check_enriched(V, C, fail_fast=True).passed:
                yield C


# ---------------------------------------------------------------------------
# Partial bijections from a family of subsets


def parbjn_from_subsets(S: Iterable, family: Mapping[Hashable, Iterable]) -> tuple[SpanFc, EnrichedCategory]:
    """The category enriched in partial bijections with one object per subset.

    ``hom(i, j)`` is the partial bijection ``C_i <- C_i & C_j -> C_j`` given by
    the two inclusions; composition and identities are inclusions too.
    """
    S = list(S)
    base = set(S)
    subsets = {}
    for i, c in family.items():
        c = set(c)
        if not c <= base:
            raise NotASubset(f"family member {i!r} has elements outside the base set: {sorted(map(repr, c - base))}")
        subsets[i] = [x for x in S if x in c]
    name = {i: f"C[{i}]" for i in subsets}
    sets = {name[i]: subsets[i] for i in subsets}
    spans = {}
    for i in subsets:
        for j in subsets:
            meet = [x for x in subsets[i] if x in set(subsets[j])]
            spans[f"hom({i},{j})"] = (name[i], name[j], meet, meet, meet)
    V = parbjn_check_and_restrict(SpanUniverse.build(sets, {}, spans, restrict_to_partial_bijections=True))
    obs = tuple(subsets)
    homs = {(i, j): Hor(f"hom({i},{j})", name[i], name[j]) for i in obs for j in obs}
    C = EnrichedCategory(obs, {i: name[i] for i in obs}, homs, {}, {})
    for t in itertools.product(obs, repeat=3):
        C.comp[t] = V.tabulate(comp_frame(V, C, *t), lambda r: r[1])
    for i in obs:
        C.ids[i] = V.tabulate(ids_frame(V, C, i), lambda r: r[0])
    return V, C


# ---------------------------------------------------------------------------
# Classical enrichment in a monoidal category


def classical_enriched_adapter(V: MonoidalFc, objects: Sequence, homs: Mapping,
                               comp: Mapping, ids: Mapping) -> EnrichedCategory:
    """Wrap ordinary enriched-category data over a monoidal presentation.

    ``homs[(a, b)]`` is an object of the monoidal category,
    ``comp[(a, b, c)]`` a morphism ``hom(b,c) (x) hom(a,b) -> hom(a,c)`` and
    ``ids[a]`` a morphism ``I -> hom(a,a)``.
    """
    objects = tuple(objects)
    star = V.objects()[0]
    H = {}
    for a, b in itertools.product(objects, repeat=2):
        if (a, b) not in homs or not V.has_horizontal(V.hor(homs[(a, b)])):
            raise MalformedData(f"hom({a!r}, {b!r}) is missing or not an object")
        H[(a, b)] = V.hor(homs[(a, b)])
    C = EnrichedCategory(objects, {a: star for a in objects}, H, {}, {})
    for t in itertools.product(objects, repeat=3):
        if t not in comp:
            raise MalformedData(f"composition at {t!r} is missing")
        cell = TwoCell(comp[t], comp_frame(V, C, *t))
        if not V.contains(cell):
            raise MalformedData(f"composition at {t!r} is not a morphism of the right type")
        C.comp[t] = cell
    for a in objects:
        if a not in ids:
            raise MalformedData(f"identity at {a!r} is missing")
        cell = TwoCell(ids[a], ids_frame(V, C, a))
        if not V.contains(cell):
            raise MalformedData(f"identity at {a!r} is not a morphism of the right type")
        C.ids[a] = cell
    return C


# ---------------------------------------------------------------------------
# Transfer into Bim


def enrich_to_bim(V: FcOracle, C: EnrichedCategory, bim: BimFc | None = None) -> EnrichedCategory:
    """Re-read a category enriched in ``V`` as one enriched in ``Bim(V)``.

    Each object becomes the monad ``hom(a,a)``; each hom becomes a bimodule
    acted on by composition; composition and identity cells are reused.
    The result is enriched in ``bim`` (default: a fresh ``bim_oracle(V)``;
    membership there is decided by law checks, so any Bim oracle over ``V``
    accepts it).
    """
    try:
        report = check_enriched(V, C)
    except (FrameError, UnknownCell) as e:
        raise SourceInvalid(f"input is malformed: {e}") from None
    if not report.passed:
        raise SourceInvalid("input fails the enriched-category laws", report)
    B = bim or bim_oracle(V)
    mon = {a: Monad(C.ends[a], C.homs[(a, a)], C.comp[(a, a, a)], C.ids[a]) for a in C.objects}
    homs = {}
    for a, b in itertools.product(C.objects, repeat=2):
        M = Bimodule(C.homs[(a, b)], mon[a], mon[b], C.comp[(a, a, b)], C.comp[(a, b, b)])
        homs[(a, b)] = Hor(M, mon[a], mon[b])
    D = EnrichedCategory(C.objects, mon, homs, {}, {})
    for t in itertools.product(C.objects, repeat=3):
        D.comp[t] = TwoCell(C.comp[t].id, comp_frame(B, D, *t))
    for a in C.objects:
        D.ids[a] = TwoCell(C.ids[a].id, ids_frame(B, D, a))
    return D


def transferred_structures_report(V: FcOracle, D: EnrichedCategory) -> LawReport:
    """Monad and bimodule laws of everything :func:`enrich_to_bim` produced."""
    r = LawReport()
    for a in D.objects:
        r.extend(check_monad(V, D.ends[a]), f"monad {a!r}: ")
    for k, h in D.homs.items():
        r.extend(check_bimodule(V, h.name), f"bimodule {k!r}: ")
    return r
