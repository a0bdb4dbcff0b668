"""Finite categories, functors and profunctors, and their images in Span.

A small category ``C`` becomes a monad in Span on the set of its objects: the
carrier is the span ``ob <- mor -> ob`` (domain, codomain), multiplication is
composition and the unit picks identities.  Functors become monad maps and
profunctors become bimodules.  Throughout, a row of the limit of
``(C.mor, C.mor)`` is ``(a, u, b, v, c)`` with ``u: a -> b`` and ``v: b -> c``,
so multiplication sends it to ``v o u``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..core import Frame, Hor, LawReport, Path
from ..errors import FcError, NotACategory, NotAFunctor, NotAMonad, NotAProfunctor, UnknownCell
from ..instances.span import SpanFc, SpanUniverse, span_fc
from .structures import Bimodule, Monad, MonadMap, check_monad


@dataclass
class FinCategory:
    """``composition[(g, f)]`` is ``g o f`` for ``f: a -> b``, ``g: b -> c``."""

    name: str
    objects: tuple
    morphisms: dict  # name -> (dom, cod)
    identities: dict
    composition: dict

    def __post_init__(self):
        self.objects = tuple(self.objects)

    def hom(self, a, b) -> list:
        return [f for f, ends in self.morphisms.items() if ends == (a, b)]

    def composable(self):
        return [(f, g) for f, (_, b) in self.morphisms.items() for g, (b2, _) in self.morphisms.items() if b == b2]

    def check(self) -> LawReport:
        r = LawReport()
        obs, M = set(self.objects), self.morphisms
        for f, (a, b) in M.items():
            r.check("ends-are-objects", a in obs and b in obs, {"morphism": f})
        for a in self.objects:
            r.check("identity-typed", M.get(self.identities.get(a)) == (a, a), {"object": a})
        if not r.passed:
            return r
        for f, g in self.composable():
            gf = self.composition.get((g, f))
            r.check("composite-typed", M.get(gf) == (M[f][0], M[g][1]), {"g": g, "f": f})
        if not r.passed:
            return r
        C = self.composition
        for f, (a, b) in M.items():
            r.check("left-unit", C[(self.identities[b], f)] == f, {"morphism": f})
            r.check("right-unit", C[(f, self.identities[a])] == f, {"morphism": f})
        for f, g in self.composable():
            for h, (c, _) in M.items():
                if c == M[g][1]:
                    r.check("associativity", C[(h, C[(g, f)])] == C[(C[(h, g)], f)], {"f": f, "g": g, "h": h})
        return r

    # -- small builders --

    @classmethod
    def discrete(cls, name: str, objects: Sequence) -> "FinCategory":
        ids = {a: f"1_{a}" for a in objects}
        return cls(name, tuple(objects), {ids[a]: (a, a) for a in objects}, ids,
                   {(ids[a], ids[a]): ids[a] for a in objects})

    @classmethod
    def preorder(cls, name: str, objects: Sequence, leq) -> "FinCategory":
        """The thin category with an arrow ``a -> b`` iff ``leq(a, b)`` (must be a preorder)."""
        nm = lambda a, b: f"{a}<{b}" if a != b else f"1_{a}"
        mors = {nm(a, b): (a, b) for a in objects for b in objects if leq(a, b)}
        comp = {(g, f): nm(mors[f][0], mors[g][1])
                for f in mors for g in mors if mors[f][1] == mors[g][0]}
        return cls(name, tuple(objects), mors, {a: nm(a, a) for a in objects}, comp)

    @classmethod
    def monoid(cls, name: str, elements: Sequence, product: dict, unit) -> "FinCategory":
        """One object ``*``; ``product[(g, f)]`` is ``g o f``."""
        return cls(name, ("*",), {e: ("*", "*") for e in elements}, {"*": unit}, dict(product))


@dataclass
class FinFunctor:
    name: str
    src: FinCategory
    tgt: FinCategory
    on_objects: dict
    on_morphisms: dict

    def check(self) -> LawReport:
        r = LawReport()
        C, D = self.src, self.tgt
        for f, (a, b) in C.morphisms.items():
            Ff = self.on_morphisms.get(f)
            r.check("functor-typed", D.morphisms.get(Ff) == (self.on_objects.get(a), self.on_objects.get(b)),
                    {"morphism": f})
        if not r.passed:
            return r
        for a in C.objects:
            r.check("functor-identities", self.on_morphisms[C.identities[a]] == D.identities[self.on_objects[a]],
                    {"object": a})
        for f, g in C.composable():
            r.check("functor-composition",
                    self.on_morphisms[C.composition[(g, f)]]
                    == D.composition[(self.on_morphisms[g], self.on_morphisms[f])], {"f": f, "g": g})
        return r


@dataclass
class Profunctor:
    """Elements ``e`` over ``(c, d)`` with ``c`` in ``src`` and ``d`` in ``tgt``.

    ``act_src[(u, e)]`` for ``u: c0 -> c`` lies over ``(c0, d)``;
    ``act_tgt[(e, v)]`` for ``v: d -> d1`` lies over ``(c, d1)``.
    """

    name: str
    src: FinCategory
    tgt: FinCategory
    elements: dict  # name -> (c, d)
    act_src: dict
    act_tgt: dict

    def check(self) -> LawReport:
        r = LawReport()
        C, D, E = self.src, self.tgt, self.elements
        for e, (c, d) in E.items():
            for u, (c0, c1) in C.morphisms.items():
                if c1 == c:
                    r.check("action-typed", E.get(self.act_src.get((u, e))) == (c0, d), {"u": u, "e": e})
            for v, (d0, d1) in D.morphisms.items():
                if d0 == d:
                    r.check("action-typed", E.get(self.act_tgt.get((e, v))) == (c, d1), {"e": e, "v": v})
        if not r.passed:
            return r
        As, At = self.act_src, self.act_tgt
        for e, (c, d) in E.items():
            r.check("src-unit", As[(C.identities[c], e)] == e, {"e": e})
            r.check("tgt-unit", At[(e, D.identities[d])] == e, {"e": e})
            for u, (_, c1) in C.morphisms.items():
                if c1 != c:
                    continue
                for w, (_, c2) in C.morphisms.items():
                    if c2 == C.morphisms[u][0]:
                        r.check("src-associativity", As[(C.composition[(u, w)], e)] == As[(w, As[(u, e)])],
                                {"w": w, "u": u, "e": e})
                for v, (d0, _) in D.morphisms.items():
                    if d0 == d:
                        r.check("actions-commute", At[(As[(u, e)], v)] == As[(u, At[(e, v)])],
                                {"u": u, "e": e, "v": v})
            for v, (d0, d1) in D.morphisms.items():
                if d0 != d:
                    continue
                for w, (d2, _) in D.morphisms.items():
                    if d2 == d1:
                        r.check("tgt-associativity", At[(e, D.composition[(w, v)])] == At[(At[(e, v)], w)],
                                {"e": e, "v": v, "w": w})
        return r

    @classmethod
    def hom(cls, C: FinCategory) -> "Profunctor":
        """``C(-, -)``: elements are morphisms, acting by pre- and post-composition."""
        M = C.morphisms
        As = {(u, e): C.composition[(e, u)] for e in M for u in M if M[u][1] == M[e][0]}
        At = {(e, v): C.composition[(v, e)] for e in M for v in M if M[e][1] == M[v][0]}
        return cls(f"hom({C.name})", C, C, dict(M), As, At)


# ---------------------------------------------------------------------------
# Span encodings


def ob_set(C: FinCategory) -> str:
    return f"{C.name}.ob"


def mor_span(C: FinCategory) -> str:
    return f"{C.name}.mor"


def category_universe(cats: Sequence[FinCategory], profunctors: Sequence[Profunctor] = (),
                      functors: Sequence[FinFunctor] = (), all_object_maps: bool = False) -> SpanUniverse:
    """A universe holding each category's object set and morphism span.

    Functors contribute their object maps as functions; with
    ``all_object_maps`` every function between object sets is included,
    which is what counting monad maps needs.
    """
    sets = {ob_set(C): C.objects for C in cats}
    spans = {}
    for C in cats:
        spans[mor_span(C)] = (ob_set(C), ob_set(C), list(C.morphisms),
                              [a for a, _ in C.morphisms.values()], [b for _, b in C.morphisms.values()])
    for P in profunctors:
        spans[P.name] = (ob_set(P.src), ob_set(P.tgt), list(P.elements),
                         [c for c, _ in P.elements.values()], [d for _, d in P.elements.values()])
    functions: dict = {}
    seen = set()
    for F in functors:
        key = (ob_set(F.src), ob_set(F.tgt), tuple(F.on_objects[a] for a in F.src.objects))
        if key not in seen:
            seen.add(key)
            functions[f"{F.name}.ob"] = (key[0], key[1], list(key[2]))
    if all_object_maps:
        for C in cats:
            for D in cats:
                for vals in itertools.product(D.objects, repeat=len(C.objects)):
                    key = (ob_set(C), ob_set(D), tuple(vals))
                    if key in seen or (C is D and vals == C.objects):
                        continue
                    seen.add(key)
                    functions[f"{C.name}->{D.name}:{','.join(map(str, vals))}"] = (key[0], key[1], list(vals))
    return SpanUniverse.build(sets, functions, spans)


def _span_for(V: SpanFc | None, cats, profs=(), functors=()) -> SpanFc:
    return V if V is not None else span_fc(category_universe(cats, profs, functors))


def cat_to_monad(C: FinCategory, V: SpanFc | None = None) -> Monad:
    report = C.check()
    if not report.passed:
        raise NotACategory(f"{C.name} fails the category laws", report)
    V = _span_for(V, [C])
    x = ob_set(C)
    t = Hor(mor_span(C), x, x)
    i = V.id_vert(x)
    try:
        mult = V.tabulate(Frame(Path.of(t, t), i, i, t), lambda r: C.composition[(r[3], r[1])])
        unit = V.tabulate(Frame(Path.empty(x), i, i, t), lambda r: C.identities[r[0]])
    except (UnknownCell, KeyError) as e:
        raise NotACategory(f"{C.name} does not match its span encoding: {e}") from None
    return Monad(x, t, mult, unit)


def monad_to_cat(T: Monad, V: SpanFc, name: str | None = None) -> FinCategory:
    try:
        report = check_monad(V, T)
    except FcError as e:
        raise NotAMonad(str(e)) from None
    if not report.passed:
        raise NotAMonad(f"{T} fails the monad laws", report)
    span = V.span(T.t)
    mors = {e: (span.leg_l(e), span.leg_r(e)) for e in span.apex}
    comp = {(r[3], r[1]): v for r, v in zip(V.rows(T.mult.source), T.mult.id)}
    ids = {r[0]: v for r, v in zip(V.rows(T.unit.source), T.unit.id)}
    return FinCategory(name or T.t.name, V.universe.sets[T.x].elements, mors, ids, comp)


def _object_map(V: SpanFc, F: FinFunctor):
    vals = tuple(F.on_objects[a] for a in F.src.objects)
    for f in V.verticals(ob_set(F.src), ob_set(F.tgt)):
        if V.function(f).values == vals:
            return f
    raise NotAFunctor(f"object map of {F.name} is not a function of the universe")


def functor_to_monad_map(F: FinFunctor, V: SpanFc | None = None) -> MonadMap:
    report = F.check()
    if not report.passed:
        raise NotAFunctor(f"{F.name} fails the functor laws", report)
    V = _span_for(V, [F.src, F.tgt], functors=[F])
    f = _object_map(V, F)
    S, T = Hor(mor_span(F.src), f.dom, f.dom), Hor(mor_span(F.tgt), f.cod, f.cod)
    phi = V.tabulate(Frame(Path.of(S), f, f, T), lambda r: F.on_morphisms[r[1]])
    return MonadMap(f, phi)


def profunctor_to_bimodule(P: Profunctor, V: SpanFc | None = None,
                           src: Monad | None = None, tgt: Monad | None = None) -> Bimodule:
    report = P.check()
    if not report.passed:
        raise NotAProfunctor(f"{P.name} fails the profunctor laws", report)
    V = _span_for(V, [P.src, P.tgt], [P])
    S = src or cat_to_monad(P.src, V)
    T = tgt or cat_to_monad(P.tgt, V)
    m = Hor(P.name, S.x, T.x)
    i, j = V.id_vert(S.x), V.id_vert(T.x)
    rho = V.tabulate(Frame(Path.of(S.t, m), i, j, m), lambda r: P.act_src[(r[1], r[3])])
    lam = V.tabulate(Frame(Path.of(m, T.t), i, j, m), lambda r: P.act_tgt[(r[1], r[3])])
    return Bimodule(m, S, T, rho, lam)
