"""Named example structure files shipped with the command line."""

from __future__ import annotations

from typing import Callable

from .bim import FinCategory, Profunctor, cat_to_monad, category_universe, profunctor_to_bimodule
from .enrich import classical_enriched_adapter
from .errors import UnknownDemo
from .instances.double import commuting_squares
from .instances.monoidal import v2_presentation
from .instances.multicat import terminal_multicat
from .instances.span import SpanFc, SpanUniverse, universe_u1
from .io import Based, Document, SubsetFamily, dumps, oracle_for


def arrow_category() -> FinCategory:
    """The category ``0 -> 1``."""
    return FinCategory.preorder("arrow", [0, 1], lambda a, b: a <= b)


def chain3() -> FinCategory:
    return FinCategory.preorder("chain3", [0, 1, 2], lambda a, b: a <= b)


def _u1_mutated() -> Document:
    u = universe_u1()
    extra = SpanUniverse.build(
        sets={n: s.elements for n, s in u.sets.items()},
        functions={"swap": ("X", "X", ["x2", "x1"])},
        spans={n: (s.src.name, s.dst.name, s.apex.elements, s.leg_l.values, s.leg_r.values)
               for n, s in u.spans.items()},
        # swap after swap is the identity; the table claims it is swap again
        composites={("swap", "swap"): "swap"},
    )
    return Document("span-universe", extra)


def _arrow_universe() -> SpanUniverse:
    A = arrow_category()
    return category_universe([A], [Profunctor.hom(A)])


def _arrow() -> Document:
    u = _arrow_universe()
    return Document("monad", Based("span-universe", u, cat_to_monad(arrow_category(), SpanFc(u))))


def _arrow_hom() -> Document:
    u = _arrow_universe()
    V = SpanFc(u)
    T = cat_to_monad(arrow_category(), V)
    return Document("bimodule", Based("span-universe", u, profunctor_to_bimodule(Profunctor.hom(arrow_category()), V, T, T)))


def _v2_preorder() -> Document:
    """The preorder ``p <= q`` on two objects, enriched in V2."""
    p = v2_presentation()
    V = oracle_for("monoidal", p)
    homs = {("p", "p"): 1, ("p", "q"): 1, ("q", "p"): 0, ("q", "q"): 1}
    leq = lambda a, b: f"{a}<={b}"
    comp = {}
    for a in "pq":
        for b in "pq":
            for c in "pq":
                src = min(homs[(b, c)], homs[(a, b)])
                comp[(a, b, c)] = leq(src, homs[(a, c)])
    ids = {a: leq(1, 1) for a in "pq"}
    C = classical_enriched_adapter(V, ["p", "q"], homs, comp, ids)
    return Document("enriched", Based("monoidal", p, C, V))


def _cats() -> Document:
    A, P = arrow_category(), chain3()
    return Document("span-universe", category_universe([A, P], [Profunctor.hom(A), Profunctor.hom(P)]))


def _malformed() -> str:
    return '{"kind": "span-universe", "format_version": 1, "body": {"sets": {"X": ["x"]}, "spans": {"A": {"src": "X", "dst": "Y", "apex": [], "left": [], "right": []}}}}\n'


DEMOS: dict[str, Callable[[], Document]] = {
    "u1": lambda: Document("span-universe", universe_u1()),
    "u1-mutated": _u1_mutated,
    "v2": lambda: Document("monoidal", v2_presentation()),
    "arrow": _arrow,
    "arrow-hom": _arrow_hom,
    "v2-preorder": _v2_preorder,
    "subsets": lambda: Document("subset-family", SubsetFamily((1, 2, 3), {1: (1, 2), 2: (2, 3)})),
    "empty-family": lambda: Document("subset-family", SubsetFamily((1, 2, 3), {})),
    "cats": _cats,
    "terminal": lambda: Document("multicat", terminal_multicat(3)),
    "squares": lambda: Document("double", commuting_squares(arrow_category())),
}

RAW_DEMOS: dict[str, Callable[[], str]] = {"malformed": _malformed}


def demo_names() -> list[str]:
    return sorted(set(DEMOS) | set(RAW_DEMOS))


def demo_text(name: str) -> str:
    if name in DEMOS:
        return dumps(DEMOS[name]())
    if name in RAW_DEMOS:
        return RAW_DEMOS[name]()
    raise UnknownDemo(f"unknown demo {name!r}; known: {', '.join(demo_names())}")
