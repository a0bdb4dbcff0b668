"""fc-multicategories coming from strict monoidal categories.

There is one object ``*`` and one vertical 1-cell; the horizontal 1-cells are
the objects of the monoidal category, and a 2-cell
``(M_1, ..., M_n) => M`` is a morphism ``M_n (x) ... (x) M_1 -> M``.  Note the
reversed order, used consistently everywhere in this package:
``theta o <theta_1, ..., theta_n> = theta . (theta_n (x) ... (x) theta_1)``.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, Sequence

from ..core import FcOracle, Frame, Hor, LawReport, Path, TwoCell, Vert
from ..errors import MalformedPresentation, UnknownCell

STAR = "*"
ONE = Vert("1", STAR, STAR)


class MonoidalPresentation(ABC):
    """A finite (or lazily computed) strict monoidal category."""

    unit: Hashable

    @abstractmethod
    def objects(self) -> list:
        """Objects offered as horizontal 1-cells."""

    @abstractmethod
    def tensor(self, a, b): ...

    @abstractmethod
    def hom(self, a, b) -> Iterable: ...

    @abstractmethod
    def hom_size(self, a, b) -> int: ...

    @abstractmethod
    def is_morphism(self, f, a, b) -> bool: ...

    @abstractmethod
    def compose(self, g, f):
        """``g`` after ``f``."""

    @abstractmethod
    def identity(self, a): ...

    @abstractmethod
    def tensor_mor(self, f, g): ...

    @abstractmethod
    def dom(self, f): ...

    @abstractmethod
    def cod(self, f): ...

    def tensor_all(self, objs: Sequence) -> Any:
        t = self.unit
        for a in objs:
            t = self.tensor(t, a)
        return t

    def tensor_all_mor(self, fs: Sequence) -> Any:
        t = self.identity(self.unit)
        for f in fs:
            t = self.tensor_mor(t, f)
        return t

    def check_laws(self, objects: Sequence | None = None) -> LawReport:
        """Strict monoidal category laws over ``objects`` (default: all listed)."""
        obs = list(self.objects() if objects is None else objects)
        r = LawReport()
        I = self.unit
        for a in obs:
            r.check("tensor-unit-objects", self.tensor(I, a) == a and self.tensor(a, I) == a,
                    lambda: {"object": a})
            for b in obs:
                for c in obs:
                    lhs, rhs = self.tensor(self.tensor(a, b), c), self.tensor(a, self.tensor(b, c))
                    r.check("tensor-assoc-objects", lhs == rhs, lambda: {"a": a, "b": b, "c": c})
        homs = {(a, b): list(self.hom(a, b)) for a in obs for b in obs}
        mors = [(f, a, b) for (a, b), fs in homs.items() for f in fs]
        for a in obs:
            i = self.identity(a)
            r.check("identity-typed", self.is_morphism(i, a, a), lambda: {"object": a, "identity": i})
        for f, a, b in mors:
            r.check("category-left-unit", self.compose(self.identity(b), f) == f, lambda: {"f": f})
            r.check("category-right-unit", self.compose(f, self.identity(a)) == f, lambda: {"f": f})
        for f, a, b in mors:
            for c in obs:
                for g in homs[(b, c)]:
                    gf = self.compose(g, f)
                    if not r.check("composite-typed", self.is_morphism(gf, a, c),
                                   lambda: {"g": g, "f": f, "g o f": gf}):
                        continue
                    for d in obs:
                        for h in homs[(c, d)]:
                            r.check("category-assoc",
                                    self.compose(h, gf) == self.compose(self.compose(h, g), f),
                                    lambda: {"h": h, "g": g, "f": f})
        for f, a, b in mors:
            for g, c, d in mors:
                fg = self.tensor_mor(f, g)
                r.check("tensor-typed", self.is_morphism(fg, self.tensor(a, c), self.tensor(b, d)),
                        lambda: {"f": f, "g": g, "f (x) g": fg})
        for a in obs:
            for b in obs:
                r.check("tensor-identities",
                        self.tensor_mor(self.identity(a), self.identity(b)) == self.identity(self.tensor(a, b)),
                        lambda: {"a": a, "b": b})
        iI = self.identity(I)
        for f, a, b in mors:
            r.check("tensor-unit-morphisms",
                    self.tensor_mor(iI, f) == f and self.tensor_mor(f, iI) == f, lambda: {"f": f})
        pairs = [(f, g, a, c) for f, a, b in mors for c in obs for g in homs[(b, c)]]
        for f, g, a, c in pairs:
            for f2, g2, a2, c2 in pairs:
                lhs = self.tensor_mor(self.compose(g, f), self.compose(g2, f2))
                rhs = self.compose(self.tensor_mor(g, g2), self.tensor_mor(f, f2))
                r.check("tensor-functorial", lhs == rhs,
                        lambda: {"(g o f) (x) (g' o f')": lhs, "(g (x) g') o (f (x) f')": rhs})
        for f, *_ in mors:
            for g, *_ in mors:
                for h, *_ in mors:
                    r.check("tensor-assoc-morphisms",
                            self.tensor_mor(self.tensor_mor(f, g), h) == self.tensor_mor(f, self.tensor_mor(g, h)),
                            lambda: {"f": f, "g": g, "h": h})
        return r


@dataclass
class TableMonoidal(MonoidalPresentation):
    """A strict monoidal category given entirely by tables.

    ``composition[(g, f)]`` is ``g o f``; ``tensor_morphisms[(f, g)]`` is
    ``f (x) g``.  Construction validates references and totality only; the
    category and monoidal laws are checked by :meth:`check_laws`.
    """

    objects_: list
    unit: Hashable
    tensor_table: dict
    morphisms: dict  # name -> (dom, cod)
    identities: dict
    composition: dict
    tensor_morphisms: dict

    def __post_init__(self):
        obs = set(self.objects_)
        if len(obs) != len(self.objects_):
            raise MalformedPresentation("repeated objects")
        if self.unit not in obs:
            raise MalformedPresentation(f"unit {self.unit!r} is not an object")
        for a in self.objects_:
            for b in self.objects_:
                if self.tensor_table.get((a, b)) not in obs:
                    raise MalformedPresentation(f"tensor of {a!r} and {b!r} is missing or not an object")
        for f, (a, b) in self.morphisms.items():
            if a not in obs or b not in obs:
                raise MalformedPresentation(f"morphism {f!r} has an unknown end")
        for a in self.objects_:
            if self.identities.get(a) not in self.morphisms:
                raise MalformedPresentation(f"identity of {a!r} is missing or unknown")
        self._hom: dict[tuple, list] = {}
        for f, (a, b) in self.morphisms.items():
            self._hom.setdefault((a, b), []).append(f)
        for f, (a, b) in self.morphisms.items():
            for g in self._hom_from(b):
                if self.composition.get((g, f)) not in self.morphisms:
                    raise MalformedPresentation(f"composite {g!r} o {f!r} is missing or unknown")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tensor_morphisms.get((f, g)) not in self.morphisms:
                    raise MalformedPresentation(f"tensor {f!r} (x) {g!r} is missing or unknown")

    def _hom_from(self, a) -> list:
        return [g for g, (x, _) in self.morphisms.items() if x == a]

    def objects(self):
        return list(self.objects_)

    def tensor(self, a, b):
        return self.tensor_table[(a, b)]

    def hom(self, a, b):
        return list(self._hom.get((a, b), ()))

    def hom_size(self, a, b):
        return len(self._hom.get((a, b), ()))

    def is_morphism(self, f, a, b):
        return self.morphisms.get(f) == (a, b)

    def compose(self, g, f):
        return self.composition[(g, f)]

    def identity(self, a):
        return self.identities[a]

    def tensor_mor(self, f, g):
        return self.tensor_morphisms[(f, g)]

    def dom(self, f):
        return self.morphisms[f][0]

    def cod(self, f):
        return self.morphisms[f][1]


class CartesianSkeleton(MonoidalPresentation):
    """Finite sets ``{0..n-1}`` under cartesian product, made strict.

    The object ``n`` is the set of size ``n`` and ``a (x) b = a*b`` with pairs
    ``(i, j)`` encoded as ``i*b + j``; this encoding is strictly associative.
    A morphism ``a -> b`` is ``(a, b, values)``.  Monoid objects here are
    exactly monoids on the carriers ``{0..n-1}``.
    """

    unit = 1

    def __init__(self, max_size: int = 3):
        self.max_size = max_size

    def objects(self):
        return list(range(self.max_size + 1))

    def tensor(self, a, b):
        return a * b

    def hom(self, a, b) -> Iterator:
        for vals in itertools.product(range(b), repeat=a):
            yield (a, b, vals)

    def hom_size(self, a, b):
        return b ** a

    def is_morphism(self, f, a, b):
        return (isinstance(f, tuple) and len(f) == 3 and f[0] == a and f[1] == b
                and len(f[2]) == a and all(0 <= v < b for v in f[2]))

    def compose(self, g, f):
        return (f[0], g[1], tuple(g[2][v] for v in f[2]))

    def identity(self, a):
        return (a, a, tuple(range(a)))

    def tensor_mor(self, f, g):
        a, b, fv = f
        c, d, gv = g
        return (a * c, b * d, tuple(fv[i] * d + gv[j] for i in range(a) for j in range(c)))

    def dom(self, f):
        return f[0]

    def cod(self, f):
        return f[1]

    def check_laws(self, objects=None):
        # full tables are astronomically large; check over the small objects
        return super().check_laws(objects if objects is not None else [0, 1, 2])


class MonoidalFc(FcOracle):
    def __init__(self, m: MonoidalPresentation):
        self.presentation = m
        self._hors = [Hor(a, STAR, STAR) for a in m.objects()]
        self._hor_set = set(self._hors)

    def objects(self):
        return [STAR]

    def verticals(self, x, y):
        return [ONE] if (x, y) == (STAR, STAR) else []

    def horizontals(self, x, y):
        return list(self._hors) if (x, y) == (STAR, STAR) else []

    def has_object(self, x):
        return x == STAR

    def has_vertical(self, f):
        return f == ONE

    def has_horizontal(self, m):
        return m in self._hor_set

    def id_vert(self, x):
        if x != STAR:
            raise UnknownCell(f"unknown object {x!r}")
        return ONE

    def compose_vert(self, g, f):
        if f != ONE or g != ONE:
            raise UnknownCell("only the identity vertical exists")
        return ONE

    def source_object(self, path: Path):
        """``M_n (x) ... (x) M_1`` for a path ``(M_1, ..., M_n)``."""
        return self.presentation.tensor_all([m.name for m in reversed(path.cells)])

    def _check_frame(self, frame: Frame) -> None:
        if not (self.has_horizontal(frame.target) and all(self.has_horizontal(m) for m in frame.source.cells)):
            raise UnknownCell(f"frame {frame} mentions unknown objects")

    def cells(self, frame):
        self._check_frame(frame)
        m = self.presentation
        return [TwoCell(f, frame) for f in m.hom(self.source_object(frame.source), frame.target.name)]

    def count_cells(self, frame):
        self._check_frame(frame)
        return self.presentation.hom_size(self.source_object(frame.source), frame.target.name)

    def contains(self, cell):
        fr = cell.frame
        if not (self.has_horizontal(fr.target) and all(self.has_horizontal(m) for m in fr.source.cells)
                and fr.left == ONE and fr.right == ONE):
            return False
        return self.presentation.is_morphism(cell.id, self.source_object(fr.source), fr.target.name)

    def _compose(self, theta, children, boundary, frame):
        m = self.presentation
        if not children:
            return TwoCell(theta.id, frame)
        below = m.tensor_all_mor([c.id for c in reversed(children)])
        return TwoCell(m.compose(theta.id, below), frame)

    def _identity(self, h):
        return TwoCell(self.presentation.identity(h.name), Frame(Path.of(h), ONE, ONE, h))

    def hor(self, a) -> Hor:
        return Hor(a, STAR, STAR)

    def frame(self, sources: Sequence, target) -> Frame:
        """The frame ``(sources) => target``; an empty list gives the nullary frame."""
        return Frame(Path(tuple(self.hor(a) for a in sources), STAR), ONE, ONE, self.hor(target))

    def decode_cell(self, frame, data):
        cell = TwoCell(data, frame)
        if not self.contains(cell):
            raise UnknownCell(f"{data!r} is not a morphism in frame {frame}")
        return cell


def monoidal_fc(m: MonoidalPresentation, validate: bool = True) -> MonoidalFc:
    if validate:
        report = m.check_laws()
        if not report.passed:
            raise MalformedPresentation("monoidal presentation fails its laws", report)
    return MonoidalFc(m)


def _poset_presentation(elements: Sequence, leq, meet, top) -> TableMonoidal:
    mors = {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                mors[f"{a}<={b}"] = (a, b)
    name = lambda a, b: f"{a}<={b}"
    comp = {(g, f): name(mors[f][0], mors[g][1])
            for f in mors for g in mors if mors[f][1] == mors[g][0]}
    tens = {(f, g): name(meet(mors[f][0], mors[g][0]), meet(mors[f][1], mors[g][1]))
            for f in mors for g in mors}
    return TableMonoidal(
        objects_=list(elements), unit=top,
        tensor_table={(a, b): meet(a, b) for a in elements for b in elements},
        morphisms=mors, identities={a: name(a, a) for a in elements},
        composition=comp, tensor_morphisms=tens,
    )


def v2_presentation() -> TableMonoidal:
    """The two-element monoidal poset ``0 <= 1`` with tensor ``min`` and unit ``1``."""
    return _poset_presentation([0, 1], lambda a, b: a <= b, min, 1)


def discrete_monoid_presentation(elements: Sequence, product: dict, unit) -> TableMonoidal:
    """A monoid viewed as a discrete strict monoidal category (only identities)."""
    mors = {f"id_{a}": (a, a) for a in elements}
    return TableMonoidal(
        objects_=list(elements), unit=unit,
        tensor_table=dict(product), morphisms=mors,
        identities={a: f"id_{a}" for a in elements},
        composition={(f"id_{a}", f"id_{a}"): f"id_{a}" for a in elements},
        tensor_morphisms={(f"id_{a}", f"id_{b}"): f"id_{product[(a, b)]}" for a in elements for b in elements},
    )


def left_zero_presentation() -> TableMonoidal:
    """Discrete presentation on ``{e, a, b}`` with ``x (x) y = x`` for ``x != e``.

    Non-commutative: ``a (x) b = a`` but ``b (x) a = b``.
    """
    els = ["e", "a", "b"]
    prod = {(x, y): (y if x == "e" else x) for x in els for y in els}
    return discrete_monoid_presentation(els, prod, "e")
