"""The fc-multicategory of spans of finite sets.

Objects are named finite sets, vertical 1-cells are functions and horizontal
1-cells are spans ``X <- M -> Y``.  A 2-cell is a function from the limit of
its source row into the apex of its target span that commutes with the legs.

Limits are held internally as *rows*: interleaved tuples
``(x0, a1, x1, a2, ..., an, xn)`` listing both the apex elements and the set
elements between them.  A nullary path at ``X`` has rows ``(x,)``.  Rows are
ordered lexicographically by apex order, and a cell's id is the tuple of its
values in that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Sequence

from ..core import FcOracle, Frame, Hor, LawReport, Path, TwoCell, Vert
from ..errors import FrameError, MalformedPath, MalformedUniverse, NotMonic, UnknownCell


@dataclass(frozen=True)
class FinSet:
    name: str
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise MalformedUniverse(f"set {self.name!r} has repeated elements")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}


@dataclass(frozen=True)
class FinFunction:
    """A total function given by its values, listed in domain order."""

    name: str
    dom: FinSet
    cod: FinSet
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.dom):
            raise MalformedUniverse(
                f"function {self.name!r} has {len(self.values)} values for a domain of size {len(self.dom)}")
        for x, v in zip(self.dom.elements, self.values):
            if v not in self.cod:
                raise MalformedUniverse(f"function {self.name!r} sends {x!r} to {v!r}, outside {self.cod.name!r}")

    @classmethod
    def from_mapping(cls, name: str, dom: FinSet, cod: FinSet, mapping: Mapping) -> "FinFunction":
        try:
            return cls(name, dom, cod, tuple(mapping[x] for x in dom.elements))
        except KeyError as e:
            raise MalformedUniverse(f"function {name!r} is undefined at {e.args[0]!r}") from None

    @cached_property
    def table(self) -> dict:
        return dict(zip(self.dom.elements, self.values))

    def __call__(self, x):
        return self.table[x]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)


@dataclass(frozen=True)
class Span:
    name: str
    src: FinSet
    dst: FinSet
    apex: FinSet
    leg_l: FinFunction
    leg_r: FinFunction

    def __post_init__(self):
        if self.leg_l.dom != self.apex or self.leg_r.dom != self.apex:
            raise MalformedUniverse(f"span {self.name!r}: legs must start at the apex")
        if self.leg_l.cod != self.src or self.leg_r.cod != self.dst:
            raise MalformedUniverse(f"span {self.name!r}: legs must end at its source and target")

    @classmethod
    def build(cls, name: str, src: FinSet, dst: FinSet, apex: Iterable,
              left: Sequence | Mapping, right: Sequence | Mapping) -> "Span":
        a = FinSet(f"{name}.apex", tuple(apex))
        mk = lambda tag, cod, v: (FinFunction.from_mapping(f"{name}.{tag}", a, cod, v)
                                  if isinstance(v, Mapping) else FinFunction(f"{name}.{tag}", a, cod, tuple(v)))
        return cls(name, src, dst, a, mk("l", src, left), mk("r", dst, right))

    def is_partial_bijection(self) -> bool:
        return self.leg_l.is_injective() and self.leg_r.is_injective()


@dataclass
class SpanUniverse:
    """Named finite sets, functions between them, and spans.

    ``composites`` optionally overrides vertical composition: an entry
    ``(g, f) -> h`` says the composite "g after f" is the declared function
    ``h``.  Without an entry composites are computed from the tables.
    """

    sets: dict[str, FinSet] = field(default_factory=dict)
    functions: dict[str, FinFunction] = field(default_factory=dict)
    spans: dict[str, Span] = field(default_factory=dict)
    composites: dict[tuple[str, str], str] = field(default_factory=dict)
    restrict_to_partial_bijections: bool = False

    @classmethod
    def build(cls, sets: Mapping[str, Iterable], functions: Mapping[str, tuple] | None = None,
              spans: Mapping[str, tuple] | None = None, composites: Mapping | None = None,
              restrict_to_partial_bijections: bool = False) -> "SpanUniverse":
        """Convenience constructor from plain data.

        ``functions[name] = (dom, cod, values)`` and
        ``spans[name] = (src, dst, apex_elements, left, right)``, where the
        values/legs are sequences in domain order or mappings.
        """
        S = {n: FinSet(n, tuple(e)) for n, e in sets.items()}

        def get(n):
            if n not in S:
                raise MalformedUniverse(f"unknown set {n!r}")
            return S[n]

        F = {}
        for n, (d, c, v) in (functions or {}).items():
            F[n] = (FinFunction.from_mapping(n, get(d), get(c), v) if isinstance(v, Mapping)
                    else FinFunction(n, get(d), get(c), tuple(v)))
        P = {n: Span.build(n, get(s), get(t), apex, l, r) for n, (s, t, apex, l, r) in (spans or {}).items()}
        u = cls(S, F, P, dict(composites or {}), restrict_to_partial_bijections)
        u.validate()
        return u

    def validate(self) -> None:
        for n, s in self.sets.items():
            if s.name != n:
                raise MalformedUniverse(f"set registered as {n!r} is named {s.name!r}")
        for n, f in self.functions.items():
            if f.name != n:
                raise MalformedUniverse(f"function registered as {n!r} is named {f.name!r}")
            for end in (f.dom, f.cod):
                if self.sets.get(end.name) != end:
                    raise MalformedUniverse(f"function {n!r} refers to unknown set {end.name!r}")
        if set(self.functions) & set(self.spans):
            raise MalformedUniverse("functions and spans must have distinct names")
        for n, s in self.spans.items():
            if s.name != n:
                raise MalformedUniverse(f"span registered as {n!r} is named {s.name!r}")
            for end in (s.src, s.dst):
                if self.sets.get(end.name) != end:
                    raise MalformedUniverse(f"span {n!r} refers to unknown set {end.name!r}")
            if self.restrict_to_partial_bijections:
                _require_monic(s)
        seen: dict[tuple, str] = {}
        for n, f in self.functions.items():
            key = (f.dom.name, f.cod.name, f.values)
            if key in seen:
                raise MalformedUniverse(f"functions {seen[key]!r} and {n!r} have the same table")
            seen[key] = n
        for (g, f), h in self.composites.items():
            for name in (g, f, h):
                if name not in self.functions:
                    raise MalformedUniverse(f"composite entry refers to unknown function {name!r}")
            G, Fn, H = self.functions[g], self.functions[f], self.functions[h]
            if Fn.cod != G.dom:
                raise MalformedUniverse(f"composite entry {g!r} o {f!r} is not composable")
            if H.dom != Fn.dom or H.cod != G.cod:
                raise MalformedUniverse(f"composite entry {g!r} o {f!r} = {h!r} has the wrong type")

    def check_laws(self) -> LawReport:
        """Declared composites must agree with the composed tables."""
        r = LawReport()
        for (g, f), h in sorted(self.composites.items()):
            G, Fn, H = self.functions[g], self.functions[f], self.functions[h]
            actual = tuple(G(Fn(x)) for x in Fn.dom.elements)
            r.check("composite-table", actual == H.values,
                    lambda: {"g": g, "f": f, "declared": h, "actual values": actual})
        return r

    def restricted(self) -> "SpanUniverse":
        return replace(self, restrict_to_partial_bijections=True)


def _require_monic(s: Span) -> None:
    for leg_name, leg in (("left", s.leg_l), ("right", s.leg_r)):
        if not leg.is_injective():
            raise NotMonic(f"span {s.name!r}: {leg_name} leg is not injective")


class SpanFc(FcOracle):
    """Oracle for the sub-fc-multicategory of Span presented by a universe."""

    def __init__(self, u: SpanUniverse):
        u.validate()
        self.universe = u
        self._sets = dict(u.sets)
        self._fns: dict[str, FinFunction] = {}
        self._ident: dict[str, str] = {}
        self._by_table: dict[tuple, str] = {}
        for n, f in u.functions.items():
            self._add_fn(f)
        for n, s in u.sets.items():
            key = (n, n, s.elements)
            if key not in self._by_table:
                self._add_fn(FinFunction(f"id_{n}", s, s, s.elements))
            self._ident[n] = self._by_table[key]
        self._close_under_composition()
        self._verts: dict[tuple, list[Vert]] = {}
        for n, f in self._fns.items():
            self._verts.setdefault((f.dom.name, f.cod.name), []).append(Vert(n, f.dom.name, f.cod.name))
        self._spans = dict(u.spans)
        self._hors: dict[tuple, list[Hor]] = {}
        for n, s in u.spans.items():
            self._hors.setdefault((s.src.name, s.dst.name), []).append(Hor(n, s.src.name, s.dst.name))
        self._rows: dict[Path, tuple[list, dict]] = {}
        self._cands: dict[tuple, list] = {}
        self._vcomp: dict[tuple, Vert] = {}

    # -- construction helpers --

    def _add_fn(self, f: FinFunction) -> None:
        if f.name in self._fns or f.name in self.universe.spans:
            raise MalformedUniverse(f"name clash on function {f.name!r}")
        self._fns[f.name] = f
        self._by_table[(f.dom.name, f.cod.name, f.values)] = f.name

    def _table_composite(self, g: FinFunction, f: FinFunction) -> tuple:
        return tuple(g.table[v] for v in f.values)

    def _close_under_composition(self) -> None:
        changed = True
        while changed:
            changed = False
            for f in list(self._fns.values()):
                for g in list(self._fns.values()):
                    if f.cod != g.dom:
                        continue
                    vals = self._table_composite(g, f)
                    if (f.dom.name, g.cod.name, vals) not in self._by_table:
                        self._add_fn(FinFunction(f"{g.name}∘{f.name}", f.dom, g.cod, vals))
                        changed = True

    # -- FcOracle capabilities --

    def objects(self):
        return list(self._sets)

    def verticals(self, x, y):
        return list(self._verts.get((x, y), ()))

    def horizontals(self, x, y):
        return list(self._hors.get((x, y), ()))

    def has_object(self, x):
        return x in self._sets

    def has_vertical(self, f):
        fn = self._fns.get(f.name)
        return fn is not None and fn.dom.name == f.dom and fn.cod.name == f.cod

    def has_horizontal(self, m):
        s = self._spans.get(m.name)
        return s is not None and s.src.name == m.src and s.dst.name == m.dst

    def id_vert(self, x):
        if x not in self._sets:
            raise UnknownCell(f"unknown set {x!r}")
        return Vert(self._ident[x], x, x)

    def compose_vert(self, g, f):
        got = self._vcomp.get((g, f))
        if got is not None:
            return got
        if f.cod != g.dom:
            raise FrameError(f"cannot compose {g} after {f}")
        h = self.universe.composites.get((g.name, f.name))
        if h is None:
            h = self._by_table[(f.dom, g.cod, self._table_composite(self._fns[g.name], self._fns[f.name]))]
        got = self._vcomp[(g, f)] = Vert(h, f.dom, g.cod)
        return got

    def function(self, f: Vert | str) -> FinFunction:
        return self._fns[f.name if isinstance(f, Vert) else f]

    def span(self, m: Hor | str) -> Span:
        return self._spans[m.name if isinstance(m, Hor) else m]

    def rows(self, path: Path) -> list[tuple]:
        return self._limit(path)[0]

    def _limit(self, path: Path) -> tuple[list, dict]:
        got = self._rows.get(path)
        if got is None:
            for m in path.cells:
                if not self.has_horizontal(m):
                    raise UnknownCell(f"unknown span {m}")
            if not path.cells and path.anchor not in self._sets:
                raise UnknownCell(f"unknown set {path.anchor!r}")
            rows = limit_rows(self._sets[path.anchor] if not path.cells else None,
                              [self._spans[m.name] for m in path.cells])
            got = (rows, {r: i for i, r in enumerate(rows)})
            self._rows[path] = got
        return got

    def _candidates(self, frame: Frame) -> list[list]:
        """For each source row, the apex elements a legal cell may send it to."""
        key = (frame.source, frame.left.name, frame.right.name, frame.target.name)
        got = self._cands.get(key)
        if got is None:
            if not (self.has_vertical(frame.left) and self.has_vertical(frame.right)
                    and self.has_horizontal(frame.target)):
                raise UnknownCell(f"frame {frame} refers to cells outside this universe")
            tgt = self._spans[frame.target.name]
            by_legs: dict[tuple, list] = {}
            for a in tgt.apex.elements:
                by_legs.setdefault((tgt.leg_l(a), tgt.leg_r(a)), []).append(a)
            f, g = self._fns[frame.left.name], self._fns[frame.right.name]
            got = [by_legs.get((f(r[0]), g(r[-1])), []) for r in self.rows(frame.source)]
            self._cands[key] = got
        return got

    def count_cells(self, frame):
        n = 1
        for c in self._candidates(frame):
            n *= len(c)
        return n

    def cells(self, frame):
        return [TwoCell(vals, frame) for vals in itertools.product(*self._candidates(frame))]

    def contains(self, cell):
        try:
            cands = self._candidates(cell.frame)
        except UnknownCell:
            return False
        vals = cell.id
        return (isinstance(vals, tuple) and len(vals) == len(cands)
                and all(v in c for v, c in zip(vals, cands)))

    def apply(self, cell: TwoCell, row: tuple):
        """Value of ``cell`` at a row of its source limit."""
        return cell.id[self._limit(cell.frame.source)[1][row]]

    def _compose(self, theta, children, boundary, frame):
        leaf_rows = self.rows(frame.source)
        t_index = self._limit(theta.frame.source)[1]
        tvals = theta.id
        fns = [self._fns[f.name].table for f in boundary]
        n = len(children)
        # object positions of the child boundaries inside a leaf row
        pos = [0]
        for c in children:
            pos.append(pos[-1] + c.frame.source.arity)
        cidx = [self._limit(c.frame.source)[1] for c in children]
        out = []
        for r in leaf_rows:
            mid = [fns[0][r[0]]]
            for i in range(n):
                block = r[2 * pos[i]: 2 * pos[i + 1] + 1]
                mid.append(children[i].id[cidx[i][block]])
                mid.append(fns[i + 1][r[2 * pos[i + 1]]])
            j = t_index.get(tuple(mid))
            if j is None:
                raise FrameError(f"middle row {tuple(mid)!r} is not in the limit of {theta.frame.source}")
            out.append(tvals[j])
        return TwoCell(tuple(out), frame)

    def _identity(self, m):
        frame = Frame(Path.of(m), self.id_vert(m.src), self.id_vert(m.dst), m)
        return TwoCell(tuple(r[1] for r in self.rows(frame.source)), frame)

    # -- helpers for building cells from element-level data --

    def tabulate(self, frame: Frame, fn: Callable[[tuple], Any]) -> TwoCell:
        """The cell sending each source row ``r`` to ``fn(r)``.

        Raises :class:`UnknownCell` if the result does not commute with the legs.
        """
        cands = self._candidates(frame)
        vals = []
        for r, c in zip(self.rows(frame.source), cands):
            v = fn(r)
            if v not in c:
                raise UnknownCell(f"value {v!r} at row {r!r} does not fit frame {frame}")
            vals.append(v)
        return TwoCell(tuple(vals), frame)

    def encode_cell(self, cell):
        n = cell.frame.source.arity
        out = []
        for r, v in zip(self.rows(cell.frame.source), cell.id):
            key = [r[0]] if n == 0 else list(r[1::2])
            out.append([key, v])
        return out

    def decode_cell(self, frame, data):
        n = frame.source.arity
        table = {}
        try:
            for key, v in data:
                table[tuple(key)] = v
        except (TypeError, ValueError):
            raise UnknownCell(f"malformed cell table {data!r}") from None
        rows = self.rows(frame.source)
        keys = [(r[0],) if n == 0 else r[1::2] for r in rows]
        if set(table) != set(keys):
            raise UnknownCell(f"cell table does not cover the limit of {frame.source} exactly")
        return self.tabulate(frame, lambda r: table[(r[0],) if n == 0 else r[1::2]])

    def path_limit(self, path: Path) -> Span:
        return _limit_span(self._sets, [self._spans[m.name] for m in path.cells], path.anchor)


def limit_rows(anchor: FinSet | None, spans: Sequence[Span]) -> list[tuple]:
    """Rows of the limit of a composable string of spans (see module docstring)."""
    if not spans:
        return [(x,) for x in anchor.elements]
    first = spans[0]
    rows = [(first.leg_l(a), a, first.leg_r(a)) for a in first.apex.elements]
    for s in spans[1:]:
        by_left: dict = {}
        for a in s.apex.elements:
            by_left.setdefault(s.leg_l(a), []).append(a)
        rows = [r + (a, s.leg_r(a)) for r in rows for a in by_left.get(r[-1], ())]
    return rows


def _limit_span(sets: Mapping[str, FinSet], spans: Sequence[Span], anchor) -> Span:
    if not spans:
        X = sets[anchor]
        return Span.build(f"id({anchor})", X, X, X.elements, X.elements, X.elements)
    if len(spans) == 1:
        return spans[0]
    for a, b in zip(spans, spans[1:]):
        if a.dst != b.src:
            raise MalformedPath(f"spans {a.name!r} and {b.name!r} are not composable")
    rows = limit_rows(None, spans)
    name = "∘".join(s.name for s in reversed(spans))
    return Span.build(name, spans[0].src, spans[-1].dst, [r[1::2] for r in rows],
                      [r[0] for r in rows], [r[-1] for r in rows])


def path_limit(u: SpanUniverse, p: Path | Sequence[str] | str) -> Span:
    """The composite span of a path (its apex is the limit of the row).

    ``p`` may be a :class:`Path`, a list of span names, or a set name (the
    empty path at that set).  Apex elements of composites of two or more spans
    are tuples ``(a_1, ..., a_n)``; a single span comes back unchanged and the
    empty path gives the identity span.
    """
    if isinstance(p, str):
        if p not in u.sets:
            raise MalformedPath(f"unknown set {p!r}")
        return _limit_span(u.sets, [], p)
    if isinstance(p, Path):
        names = [m.name for m in p.cells]
        if not names:
            if p.anchor not in u.sets:
                raise MalformedPath(f"unknown set {p.anchor!r}")
            return _limit_span(u.sets, [], p.anchor)
    else:
        names = list(p)
        if not names:
            raise MalformedPath("an empty list of spans has no anchor; pass a set name")
    spans = []
    for n in names:
        if n not in u.spans:
            raise MalformedPath(f"unknown span {n!r}")
        spans.append(u.spans[n])
    if isinstance(p, Path):
        for m, s in zip(p.cells, spans):
            if (m.src, m.dst) != (s.src.name, s.dst.name):
                raise MalformedPath(f"horizontal {m} does not match span {s.name!r}")
    return _limit_span(u.sets, spans, None)


def span_fc(u: SpanUniverse) -> SpanFc:
    return SpanFc(u)


def parbjn_check_and_restrict(u: SpanUniverse) -> SpanFc:
    """Span restricted to partial bijections; rejects any span with a non-injective leg."""
    for s in u.spans.values():
        _require_monic(s)
    return SpanFc(u.restricted())


def universe_u1() -> SpanUniverse:
    """The three-set example universe with spans ``A: X -> Y`` and ``B: Y -> Z``."""
    return SpanUniverse.build(
        sets={"X": ["x1", "x2"], "Y": ["y1", "y2"], "Z": ["z1"]},
        spans={
            "A": ("X", "Y", ["a1", "a2", "a3"],
                  {"a1": "x1", "a2": "x1", "a3": "x2"}, {"a1": "y1", "a2": "y2", "a3": "y2"}),
            "B": ("Y", "Z", ["b1", "b2"], {"b1": "y2", "b2": "y2"}, {"b1": "z1", "b2": "z1"}),
        },
    )
