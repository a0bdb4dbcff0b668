"""fc-multicategories from ordinary multicategories (arity-bounded tables)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterator, Sequence

from ..core import FcOracle, Frame, Hor, LawReport, Path, TwoCell
from ..errors import ArityBoundExceeded, MalformedPresentation, UnknownCell
from .monoidal import ONE, STAR


@dataclass
class MulticatPresentation:
    """Operations ``O(M_1..M_n; M)`` tabulated up to ``arity_bound``.

    ``operations[name] = (inputs, output)``; ``composition[(op, children)]``
    is the composite of ``op`` with the tuple of operations ``children``.
    """

    objects: list
    operations: dict
    identities: dict
    composition: dict
    arity_bound: int

    def __post_init__(self):
        obs = set(self.objects)
        self.operations = {k: (tuple(ins), out) for k, (ins, out) in self.operations.items()}
        self._ops: dict[tuple, list] = {}
        for name, (ins, out) in self.operations.items():
            if len(ins) > self.arity_bound:
                raise MalformedPresentation(f"operation {name!r} exceeds the arity bound")
            if out not in obs or any(i not in obs for i in ins):
                raise MalformedPresentation(f"operation {name!r} mentions an unknown object")
            self._ops.setdefault((ins, out), []).append(name)
        for a in self.objects:
            if self.operations.get(self.identities.get(a)) != ((a,), a):
                raise MalformedPresentation(f"identity of {a!r} is missing or ill-typed")
        for op, children in self.composable():
            if self.composition.get((op, children)) not in self.operations:
                raise MalformedPresentation(f"composite of {op!r} with {children!r} is missing or unknown")

    def ops(self, inputs: Sequence, output) -> list:
        return list(self._ops.get((tuple(inputs), output), ()))

    def ops_into(self, output) -> list:
        return [n for n, (_, out) in self.operations.items() if out == output]

    def composable(self) -> Iterator[tuple]:
        """Every (op, children) whose composite stays within the arity bound."""
        for op, (ins, _) in self.operations.items():
            for children in itertools.product(*(self.ops_into(i) for i in ins)):
                if sum(len(self.operations[c][0]) for c in children) <= self.arity_bound:
                    yield op, tuple(children)

    def check_laws(self) -> LawReport:
        r = LawReport()
        O = self.operations
        for op, children in self.composable():
            res = self.composition[(op, children)]
            want = (tuple(i for c in children for i in O[c][0]), O[op][1])
            r.check("composite-typed", O[res] == want, lambda: {"op": op, "children": children, "result": res})
        for op, (ins, out) in O.items():
            lhs = self.composition[(op, tuple(self.identities[i] for i in ins))]
            r.check("right-unit", lhs == op, lambda: {"op": op, "op o ids": lhs})
            rhs = self.composition[(self.identities[out], (op,))]
            r.check("left-unit", rhs == op, lambda: {"op": op, "id o op": rhs})
        for op, children in self.composable():
            mid = self.composition[(op, children)]
            for grand in itertools.product(*(self.ops_into(i) for c in children for i in O[c][0])):
                if sum(len(O[g][0]) for g in grand) > self.arity_bound:
                    continue
                lhs = self.composition[(mid, grand)]
                inner, k = [], 0
                for c in children:
                    a = len(O[c][0])
                    inner.append(self.composition[(c, grand[k:k + a])])
                    k += a
                rhs = self.composition[(op, tuple(inner))]
                r.check("associativity", lhs == rhs,
                        lambda: {"op": op, "children": children, "grandchildren": grand})
        return r


class MulticatFc(FcOracle):
    """One object, one vertical 1-cell, horizontals = objects of the multicategory."""

    def __init__(self, p: MulticatPresentation):
        self.presentation = p
        self._hors = [Hor(a, STAR, STAR) for a in p.objects]
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

    def _bound(self, frame: Frame) -> None:
        if frame.source.arity > self.presentation.arity_bound:
            raise ArityBoundExceeded(
                f"frame of arity {frame.source.arity} is above the tabulated bound "
                f"{self.presentation.arity_bound}")

    def cells(self, frame):
        self._bound(frame)
        ins = [m.name for m in frame.source.cells]
        return [TwoCell(op, frame) for op in self.presentation.ops(ins, frame.target.name)]

    def contains(self, cell):
        fr = cell.frame
        if fr.source.arity > self.presentation.arity_bound or fr.left != ONE or fr.right != ONE:
            return False
        ins = tuple(m.name for m in fr.source.cells)
        return self.presentation.operations.get(cell.id) == (ins, fr.target.name)

    def _compose(self, theta, children, boundary, frame):
        self._bound(frame)
        p = self.presentation
        return TwoCell(p.composition[(theta.id, tuple(c.id for c in children))], frame)

    def _identity(self, m):
        return TwoCell(self.presentation.identities[m.name], Frame(Path.of(m), ONE, ONE, m))

    def frame(self, inputs: Sequence, output) -> Frame:
        return Frame(Path(tuple(Hor(a, STAR, STAR) for a in inputs), STAR), ONE, ONE, Hor(output, STAR, STAR))

    def decode_cell(self, frame, data):
        cell = TwoCell(data, frame)
        if not self.contains(cell):
            raise UnknownCell(f"{data!r} is not an operation in frame {frame}")
        return cell


def multicat_fc(p: MulticatPresentation, validate: bool = True) -> MulticatFc:
    if validate:
        report = p.check_laws()
        if not report.passed:
            raise MalformedPresentation("multicategory presentation fails its laws", report)
    return MulticatFc(p)


def terminal_multicat(bound: int = 3, obj: Hashable = "M") -> MulticatPresentation:
    """Exactly one ``n``-ary operation for each ``n <= bound``."""
    ops = {f"t{n}": ((obj,) * n, obj) for n in range(bound + 1)}
    comp = {}
    for n in range(bound + 1):
        for rs in itertools.product(range(bound + 1), repeat=n):
            if sum(rs) <= bound:
                comp[(f"t{n}", tuple(f"t{r}" for r in rs))] = f"t{sum(rs)}"
    return MulticatPresentation([obj], ops, {obj: "t1"}, comp, bound)


def monoid_multicat(elements: Sequence, product: dict, unit, bound: int = 3,
                    obj: Hashable = "M") -> MulticatPresentation:
    """One object; the ``n``-ary operations are the monoid elements ``a@n``.

    Composition multiplies: ``a@n o <b_1@r_1, ..., b_n@r_n> = (a b_1 ... b_n)@(r_1+...+r_n)``.
    """
    ops = {f"{a}@{n}": ((obj,) * n, obj) for n in range(bound + 1) for a in elements}
    comp = {}
    for n in range(bound + 1):
        for rs in itertools.product(range(bound + 1), repeat=n):
            if sum(rs) > bound:
                continue
            for a in elements:
                for bs in itertools.product(elements, repeat=n):
                    v = a
                    for b in bs:
                        v = product[(v, b)]
                    key = (f"{a}@{n}", tuple(f"{b}@{r}" for b, r in zip(bs, rs)))
                    comp[key] = f"{v}@{sum(rs)}"
    return MulticatPresentation([obj], ops, {obj: f"{unit}@1"}, comp, bound)
