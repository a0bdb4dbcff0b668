"""Shapes, the fc-multicategory interface, pasting composition and the law checker.

An fc-multicategory is handed around as an :class:`FcOracle`: an object that
can enumerate objects, vertical and horizontal 1-cells and the 2-cells inside
any frame, and that knows how to compose.  Everything here is finite and
bounded; the checker in :func:`check_fc_laws` walks every configuration up to
the bounds it is given.

Conventions:

* ``compose_vert(g, f)`` is "g after f": ``dom(result) = dom(f)``.
* A 2-cell is identified by its ``id`` *within its frame*; two cells are equal
  iff they have equal ids and equal frames.  Instances intern their cells so
  that semantically equal cells get equal ids.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterator, Sequence

from .errors import BoundaryMismatch, BudgetExceeded, FcError, FrameError, UnknownCell

Obj = Hashable


class _CachedHash:
    """Mixin for frozen dataclasses that are hashed over and over."""

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=True)
class Vert(_CachedHash):
    """A vertical 1-cell ``dom -> cod``."""

    name: Hashable
    dom: Obj
    cod: Obj

    __hash__ = _CachedHash.__hash__

    def __str__(self) -> str:
        return f"{_show(self.name)}:{_show(self.dom)}->{_show(self.cod)}"


@dataclass(frozen=True, eq=True)
class Hor(_CachedHash):
    """A horizontal 1-cell ``src -|-> dst``."""

    name: Hashable
    src: Obj
    dst: Obj

    __hash__ = _CachedHash.__hash__

    def __str__(self) -> str:
        return f"{_show(self.name)}:{_show(self.src)}~>{_show(self.dst)}"


@dataclass(frozen=True, eq=True)
class Path(_CachedHash):
    """A string of horizontal 1-cells.

    When the string is empty, ``anchor`` says which object it sits at; for a
    nonempty string the anchor is normalised to the start object.
    """

    cells: tuple[Hor, ...] = ()
    anchor: Obj = None

    __hash__ = _CachedHash.__hash__

    def __post_init__(self):
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if cells:
            for i in range(len(cells) - 1):
                if cells[i].dst != cells[i + 1].src:
                    raise FrameError(
                        f"path not composable at position {i}: "
                        f"{cells[i]} then {cells[i + 1]}"
                    )
            object.__setattr__(self, "anchor", cells[0].src)
        elif self.anchor is None:
            raise FrameError("an empty path needs an anchor object")

    @classmethod
    def of(cls, *cells: Hor) -> "Path":
        return cls(tuple(cells))

    @classmethod
    def empty(cls, x: Obj) -> "Path":
        return cls((), x)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def arity(self) -> int:
        return len(self.cells)

    @property
    def start(self) -> Obj:
        return self.anchor

    @property
    def end(self) -> Obj:
        return self.cells[-1].dst if self.cells else self.anchor

    def objects(self) -> tuple:
        """The objects ``x_0, ..., x_n`` visited by the path."""
        if not self.cells:
            return (self.anchor,)
        return (self.cells[0].src,) + tuple(m.dst for m in self.cells)

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise FrameError(f"cannot concatenate paths ending at {self.end!r} and starting at {other.start!r}")
        if not self.cells:
            return other
        return Path(self.cells + other.cells)

    def __str__(self) -> str:
        if not self.cells:
            return f"()@{_show(self.anchor)}"
        return "(" + ", ".join(_show(m.name) for m in self.cells) + ")"


@dataclass(frozen=True, eq=True)
class Frame(_CachedHash):
    """Boundary of a 2-cell: a source path, two verticals and a target."""

    source: Path
    left: Vert
    right: Vert
    target: Hor

    __hash__ = _CachedHash.__hash__

    def __post_init__(self):
        if self.left.dom != self.source.start:
            raise FrameError(f"left vertical {self.left} does not start at source start {self.source.start!r}")
        if self.right.dom != self.source.end:
            raise FrameError(f"right vertical {self.right} does not start at source end {self.source.end!r}")
        if self.left.cod != self.target.src:
            raise FrameError(f"left vertical {self.left} does not end at target source {self.target.src!r}")
        if self.right.cod != self.target.dst:
            raise FrameError(f"right vertical {self.right} does not end at target end {self.target.dst!r}")

    @property
    def arity(self) -> int:
        return self.source.arity

    def __str__(self) -> str:
        return f"{self.source} =[{_show(self.left.name)}|{_show(self.right.name)}]=> {_show(self.target.name)}"


@dataclass(frozen=True, eq=True)
class TwoCell(_CachedHash):
    id: Hashable
    frame: Frame

    __hash__ = _CachedHash.__hash__

    @property
    def source(self) -> Path:
        return self.frame.source

    @property
    def left(self) -> Vert:
        return self.frame.left

    @property
    def right(self) -> Vert:
        return self.frame.right

    @property
    def target(self) -> Hor:
        return self.frame.target

    @property
    def arity(self) -> int:
        return self.frame.source.arity

    def __str__(self) -> str:
        return f"{_show(self.id)} in {self.frame}"


def _show(x: Any) -> str:
    if isinstance(x, (Vert, Hor, Path, Frame, TwoCell)):
        return str(x)
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(_show(v) for v in x) + ")"
    label = getattr(x, "label", None)
    if callable(label):
        return label()
    return repr(x)


def describe(x: Any) -> str:
    """Human-readable rendering used in law-report witnesses."""
    if isinstance(x, (list, tuple)) and not isinstance(x, (Path,)):
        return "[" + "; ".join(describe(v) for v in x) + "]"
    return _show(x)


# ---------------------------------------------------------------------------
# The oracle interface


class FcOracle(ABC):
    """An fc-multicategory presented by enumeration and composition.

    Subclasses implement the abstract capabilities; :meth:`compose_cells` and
    :meth:`id_cell` are the validated public entry points and should not be
    overridden.  All enumerations must be deterministic.
    """

    #: whether the law checker may read this oracle from several threads
    concurrent_safe: bool = True

    @abstractmethod
    def objects(self) -> list: ...

    @abstractmethod
    def verticals(self, x: Obj, y: Obj) -> list[Vert]: ...

    @abstractmethod
    def horizontals(self, x: Obj, y: Obj) -> list[Hor]: ...

    @abstractmethod
    def cells(self, frame: Frame) -> list[TwoCell]: ...

    @abstractmethod
    def compose_vert(self, g: Vert, f: Vert) -> Vert: ...

    @abstractmethod
    def id_vert(self, x: Obj) -> Vert: ...

    @abstractmethod
    def _compose(self, theta: TwoCell, children: Sequence[TwoCell],
                 boundary: Sequence[Vert], frame: Frame) -> TwoCell:
        """Compose already-validated inputs; ``frame`` is the result frame."""

    @abstractmethod
    def _identity(self, m: Hor) -> TwoCell: ...

    # -- membership; instances override these with cheaper direct tests --

    def has_object(self, x: Obj) -> bool:
        return x in self.objects()

    def has_vertical(self, f: Vert) -> bool:
        return f in self.verticals(f.dom, f.cod)

    def has_horizontal(self, m: Hor) -> bool:
        return m in self.horizontals(m.src, m.dst)

    def contains(self, cell: TwoCell) -> bool:
        return cell in self.cells(cell.frame)

    def count_cells(self, frame: Frame) -> int:
        return len(self.cells(frame))

    def carrier_candidates(self) -> list[Hor]:
        """Horizontal endo-1-cells that may carry monads (all of them by default)."""
        return [m for x in self.objects() for m in self.horizontals(x, x)]

    # -- validated composition --

    def composite_frame(self, theta: TwoCell, children: Sequence[TwoCell],
                        boundary: Sequence[Vert]) -> Frame:
        """Check the pasting preconditions and return the frame of the result."""
        src = theta.frame.source
        n = src.arity
        if len(children) != n:
            raise BoundaryMismatch(f"expected {n} children, got {len(children)}")
        if len(boundary) != n + 1:
            raise BoundaryMismatch(f"expected {n + 1} boundary verticals, got {len(boundary)}")
        if n == 0:
            if boundary[0].cod != src.anchor:
                raise BoundaryMismatch(
                    f"whiskering vertical {boundary[0]} does not land at the anchor {src.anchor!r}", 0)
            source = Path.empty(boundary[0].dom)
        else:
            cells: list[Hor] = []
            for i, child in enumerate(children):
                cf = child.frame
                if cf.target != src.cells[i]:
                    raise BoundaryMismatch(
                        f"child target {cf.target} is not theta's source cell {src.cells[i]}", i)
                if cf.left != boundary[i]:
                    raise BoundaryMismatch(f"child left vertical {cf.left} is not boundary {boundary[i]}", i)
                if cf.right != boundary[i + 1]:
                    raise BoundaryMismatch(f"child right vertical {cf.right} is not boundary {boundary[i + 1]}", i)
                cells.extend(cf.source.cells)
            source = Path(tuple(cells), boundary[0].dom)
        left = self.compose_vert(theta.frame.left, boundary[0])
        right = self.compose_vert(theta.frame.right, boundary[n])
        return Frame(source, left, right, theta.frame.target)

    def compose_cells(self, theta: TwoCell, children: Sequence[TwoCell],
                      boundary: Sequence[Vert], *, trusted: bool = False) -> TwoCell:
        """Paste ``children`` (with verticals ``boundary``) on top of ``theta``.

        ``trusted`` skips the ownership test on the inputs; the law checker
        uses it for cells it obtained from :meth:`cells` itself.
        """
        children = tuple(children)
        boundary = tuple(boundary)
        frame = self.composite_frame(theta, children, boundary)
        if not trusted:
            for c in (theta,) + children:
                if not self.contains(c):
                    raise UnknownCell(f"cell {c} is not a cell of this oracle")
        result = self._compose(theta, children, boundary, frame)
        if result.frame != frame:
            raise FrameError(f"composite has frame {result.frame}, expected {frame}")
        return result

    def id_cell(self, m: Hor) -> TwoCell:
        if not self.has_horizontal(m):
            raise UnknownCell(f"horizontal 1-cell {m} is not in this oracle")
        cell = self._identity(m)
        expected = Frame(Path.of(m), self.id_vert(m.src), self.id_vert(m.dst), m)
        if cell.frame != expected:
            raise FrameError(f"identity on {m} has frame {cell.frame}")
        return cell

    # -- cell (de)serialisation hooks used by the command line --

    def encode_cell(self, cell: TwoCell) -> Any:
        return cell.id

    def decode_cell(self, frame: Frame, data: Any) -> TwoCell:
        for c in self.cells(frame):
            if c.id == data:
                return c
        raise UnknownCell(f"no cell {data!r} in frame {frame}")


def compose_cells(V: FcOracle, theta: TwoCell, children: Sequence[TwoCell],
                  boundary: Sequence[Vert]) -> TwoCell:
    """Validated 2-cell composition ``theta o <children>`` in ``V``.

    For a nullary ``theta`` the single boundary vertical whiskers it from below.
    """
    return V.compose_cells(theta, children, boundary)


def id_cell(V: FcOracle, m: Hor) -> TwoCell:
    return V.id_cell(m)


def identity_boundary(V: FcOracle, path: Path) -> tuple[Vert, ...]:
    return tuple(V.id_vert(x) for x in path.objects())


def compose_flat(V: FcOracle, theta: TwoCell, children: Sequence[TwoCell]) -> TwoCell:
    """Composition where every boundary vertical is an identity.

    The boundary objects are read off ``theta``'s source path.
    """
    return V.compose_cells(theta, children, identity_boundary(V, theta.frame.source))


# ---------------------------------------------------------------------------
# Graphs and free paths


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    edges: tuple  # of (name, src, dst)

    def out_edges(self, x: Obj) -> list[tuple]:
        return [e for e in self.edges if e[1] == x]


@dataclass(frozen=True)
class FreePath:
    anchor: Obj
    edges: tuple = ()

    @property
    def end(self) -> Obj:
        return self.edges[-1][2] if self.edges else self.anchor

    def __len__(self) -> int:
        return len(self.edges)


def free_paths(g: Graph, max_len: int) -> list[FreePath]:
    """All edge paths of length ``0..max_len`` in ``g``, shortest first."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    layer = [FreePath(x) for x in g.nodes]
    out = list(layer)
    outgoing = {x: g.out_edges(x) for x in g.nodes}
    for _ in range(max_len):
        layer = [FreePath(p.anchor, p.edges + (e,)) for p in layer for e in outgoing[p.end]]
        out.extend(layer)
    return out


def horizontal_graph(V: FcOracle) -> Graph:
    objs = tuple(V.objects())
    edges = tuple((m, m.src, m.dst) for x in objs for y in objs for m in V.horizontals(x, y))
    return Graph(objs, edges)


# ---------------------------------------------------------------------------
# Law reports


@dataclass
class Violation:
    law: str
    witness: dict

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": {k: describe(v) for k, v in self.witness.items()}}


@dataclass
class LawReport:
    violations: list[Violation] = field(default_factory=list)
    checked: Counter = field(default_factory=Counter)
    bounds: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def check(self, law: str, ok: bool, witness: Callable[[], dict] | dict | None = None) -> bool:
        self.checked[law] += 1
        if not ok:
            w = witness() if callable(witness) else (witness or {})
            self.violations.append(Violation(law, w))
        return ok

    def fail(self, law: str, witness: dict) -> None:
        self.checked[law] += 1
        self.violations.append(Violation(law, witness))

    def extend(self, other: "LawReport", prefix: str = "") -> "LawReport":
        for law, n in other.checked.items():
            self.checked[prefix + law] += n
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness))
        return self

    def laws_failed(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "checked": dict(sorted(self.checked.items())),
            "bounds": dict(sorted(self.bounds.items())),
            "violations": [v.to_dict() for v in self.violations],
        }

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}: "
                 f"{sum(self.checked.values())} checks, {len(self.violations)} violations"]
        for law, n in sorted(self.checked.items()):
            bad = sum(1 for v in self.violations if v.law == law)
            lines.append(f"  {law}: {n} checked, {bad} failed")
        for v in self.violations:
            wit = ", ".join(f"{k}={describe(x)}" for k, x in v.witness.items())
            lines.append(f"  violation [{v.law}] {wit}")
        return "\n".join(lines)


def cells_equal(a: TwoCell, b: TwoCell) -> bool:
    return a.id == b.id and a.frame == b.frame


# ---------------------------------------------------------------------------
# Bounded exhaustive law checking


@dataclass(frozen=True)
class Bounds:
    max_arity: int = 3
    max_nesting: int = 2
    max_cells_per_frame: int = 10000

    def __post_init__(self):
        if min(self.max_arity, self.max_nesting, self.max_cells_per_frame) < 0:
            raise ValueError("bounds must be non-negative")

    def as_dict(self) -> dict:
        return {"max_arity": self.max_arity, "max_nesting": self.max_nesting,
                "max_cells_per_frame": self.max_cells_per_frame}


class _LawChecker:
    def __init__(self, V: FcOracle, bounds: Bounds):
        self.V = V
        self.bounds = bounds
        self.objs = list(V.objects())
        self.verts = {(x, y): list(V.verticals(x, y)) for x in self.objs for y in self.objs}
        self.verts_into = {y: [f for x in self.objs for f in self.verts[(x, y)]] for y in self.objs}
        self.hors = {(x, y): list(V.horizontals(x, y)) for x in self.objs for y in self.objs}
        self.all_hors = [m for x in self.objs for y in self.objs for m in self.hors[(x, y)]]
        self.paths: dict[tuple, list[Path]] = {}
        if bounds.max_nesting >= 1:
            for fp in free_paths(horizontal_graph(V), bounds.max_arity):
                p = Path(tuple(e[0] for e in fp.edges), fp.anchor)
                self.paths.setdefault((p.start, p.end), []).append(p)
        self._cells: dict[Frame, list[TwoCell]] = {}
        self._composites: dict[tuple, TwoCell] = {}
        self._over: dict[tuple, list] = {}

    # -- enumeration helpers --

    def cells(self, frame: Frame) -> list[TwoCell]:
        got = self._cells.get(frame)
        if got is None:
            n = self.V.count_cells(frame)
            if n > self.bounds.max_cells_per_frame:
                raise BudgetExceeded(
                    f"frame {frame} has {n} cells, above max_cells_per_frame="
                    f"{self.bounds.max_cells_per_frame}")
            got = self._cells[frame] = list(self.V.cells(frame))
        return got

    def frames(self) -> Iterator[Frame]:
        for x in self.objs:
            for y in self.objs:
                for p in self.paths.get((x, y), ()):
                    for m in self.all_hors:
                        for f in self.verts[(x, m.src)]:
                            for g in self.verts[(y, m.dst)]:
                                yield Frame(p, f, g, m)

    def inhabited_over(self, target: Hor, left: Vert, right: Vert, budget: int) -> list[tuple]:
        """(frame, cells) pairs with the given target and verticals, non-empty only."""
        key = (target, left, right)
        got = self._over.get(key)
        if got is None:
            got = []
            for p in self.paths.get((left.dom, right.dom), ()):
                fr = Frame(p, left, right, target)
                cs = self.cells(fr)
                if cs:
                    got.append((fr, cs))
            self._over[key] = got
        # paths are listed shortest first
        return [fc for fc in got if fc[0].source.arity <= budget]

    def frame_tuples(self, targets: Sequence[Hor], boundary: Sequence[Vert], budget: int) -> Iterator[tuple]:
        """Tuples of inhabited (frame, cells) over consecutive targets, total arity at most ``budget``."""
        if not targets:
            yield ()
            return
        for fc in self.inhabited_over(targets[0], boundary[0], boundary[1], budget):
            for rest in self.frame_tuples(targets[1:], boundary[1:], budget - fc[0].source.arity):
                yield (fc,) + rest

    def compose(self, theta, children, boundary, report: LawReport) -> TwoCell:
        key = (theta, children, boundary)
        got = self._composites.get(key)
        if got is None:
            got = self.V.compose_cells(theta, children, boundary, trusted=True)
            report.check("composite-closure", self.V.contains(got),
                         lambda: {"theta": theta, "children": children, "boundary": boundary, "composite": got})
            self._composites[key] = got
        return got

    # -- the laws --

    def vertical_laws(self, report: LawReport) -> None:
        V = self.V
        all_verts = [f for x in self.objs for y in self.objs for f in self.verts[(x, y)]]
        for x in self.objs:
            i = V.id_vert(x)
            report.check("vertical-identity-typed", i.dom == x and i.cod == x and V.has_vertical(i),
                         lambda: {"object": x, "identity": i})
        for f in all_verts:
            li = V.compose_vert(V.id_vert(f.cod), f)
            report.check("vertical-left-unit", li == f, lambda: {"f": f, "id o f": li})
            ri = V.compose_vert(f, V.id_vert(f.dom))
            report.check("vertical-right-unit", ri == f, lambda: {"f": f, "f o id": ri})
        for f in all_verts:
            for g in self.verts_from(f.cod):
                gf = V.compose_vert(g, f)
                report.check("vertical-composite-typed",
                             gf.dom == f.dom and gf.cod == g.cod and V.has_vertical(gf),
                             lambda: {"g": g, "f": f, "g o f": gf})
                for h in self.verts_from(g.cod):
                    lhs = V.compose_vert(h, gf)
                    rhs = V.compose_vert(V.compose_vert(h, g), f)
                    report.check("vertical-associativity", lhs == rhs,
                                 lambda: {"h": h, "g": g, "f": f, "h o (g o f)": lhs, "(h o g) o f": rhs})

    def verts_from(self, x: Obj) -> list[Vert]:
        return [f for y in self.objs for f in self.verts[(x, y)]]

    def identity_laws(self, frame: Frame, report: LawReport) -> None:
        V = self.V
        src = frame.source
        ids_below = tuple(V.id_cell(m) for m in src.cells)
        id_boundary = identity_boundary(V, src)
        id_top = V.id_cell(frame.target)
        for theta in self.cells(frame):
            r = self.compose(theta, ids_below, id_boundary, report)
            report.check("cell-right-unit", cells_equal(r, theta),
                         lambda: {"theta": theta, "theta o <ids>": r})
            l = self.compose(id_top, (theta,), (frame.left, frame.right), report)
            report.check("cell-left-unit", cells_equal(l, theta),
                         lambda: {"theta": theta, "id o <theta>": l})

    def associativity(self, frame: Frame, report: LawReport) -> None:
        V = self.V
        A = self.bounds.max_arity
        thetas = self.cells(frame)
        if not thetas:
            return
        src = frame.source
        xs = src.objects()
        for fs in itertools.product(*(self.verts_into[x] for x in xs)):
            for ctuple in self.frame_tuples(src.cells, fs, A):
                cframes = [fc[0] for fc in ctuple]
                ccells = [fc[1] for fc in ctuple]
                if cframes:
                    leaf = Path(tuple(m for cf in cframes for m in cf.source.cells), fs[0].dom)
                else:
                    leaf = Path.empty(fs[0].dom)
                # boundary position (in the leaf row) under each child boundary
                pos = [0]
                for cf in cframes:
                    pos.append(pos[-1] + cf.arity)
                for gs in itertools.product(*(self.verts_into[y] for y in leaf.objects())):
                    outer = tuple(V.compose_vert(fs[i], gs[pos[i]]) for i in range(len(fs)))
                    for gtuple in self.frame_tuples(leaf.cells, gs, A):
                        gcells = [fc[1] for fc in gtuple]
                        for theta in thetas:
                            for children in itertools.product(*ccells):
                                mid = self.compose(theta, children, fs, report)
                                for grand in itertools.product(*gcells):
                                    lhs = self.compose(mid, grand, gs, report)
                                    inner = tuple(
                                        self.compose(children[i], grand[pos[i]:pos[i + 1]],
                                                     gs[pos[i]:pos[i + 1] + 1], report)
                                        for i in range(len(children)))
                                    rhs = self.compose(theta, inner, outer, report)
                                    report.check(
                                        "cell-associativity", cells_equal(lhs, rhs),
                                        lambda: {"theta": theta, "children": children, "boundary": fs,
                                                 "grandchildren": grand, "inner boundary": gs,
                                                 "(theta o children) o grand": lhs,
                                                 "theta o (children o grand)": rhs})

    def check_frame(self, frame: Frame) -> LawReport:
        # composites are memoized per frame so check counts do not depend on
        # how frames are shared out between workers
        self._composites = {}
        report = LawReport()
        self.cells(frame)
        if self.bounds.max_nesting >= 1:
            self.identity_laws(frame, report)
        if self.bounds.max_nesting >= 2:
            self.associativity(frame, report)
        return report


def check_fc_laws(V: FcOracle, bounds: Bounds | dict | None = None, *,
                  parallel: bool = False, workers: int | None = None) -> LawReport:
    """Exhaustively check the fc-multicategory laws of ``V`` within ``bounds``.

    Checked: the vertical category laws; both 2-cell unit laws for every cell
    of arity at most ``max_arity``; and, when ``max_nesting >= 2``,
    two-level associativity for every nesting whose cells, intermediate
    composite and final composite all have arity at most ``max_arity``
    (nullary cells included, which covers repeated whiskering).  Every
    composite produced along the way must itself be a cell of ``V``.

    Raises :class:`BudgetExceeded` if a visited frame holds more than
    ``max_cells_per_frame`` cells.
    """
    if bounds is None:
        bounds = Bounds()
    elif isinstance(bounds, dict):
        bounds = Bounds(**bounds)
    checker = _LawChecker(V, bounds)
    report = LawReport(bounds=bounds.as_dict())
    checker.vertical_laws(report)
    if bounds.max_nesting < 1:
        return report
    frames = list(checker.frames())
    if parallel and V.concurrent_safe and len(frames) > 1:
        # each worker gets its own caches; results merge in frame order
        def run(chunk: list[Frame]) -> list[LawReport]:
            local = _LawChecker(V, bounds)
            return [local.check_frame(fr) for fr in chunk]

        n = workers or 4
        chunks = [frames[i::n] for i in range(n)]
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(run, chunks))
        by_frame: list[LawReport | None] = [None] * len(frames)
        for k, res in enumerate(results):
            for j, r in enumerate(res):
                by_frame[k + j * n] = r
        for r in by_frame:
            report.extend(r)
    else:
        for fr in frames:
            report.extend(checker.check_frame(fr))
    return report


# ---------------------------------------------------------------------------
# Restriction to identity verticals


class IdentityVerticals(FcOracle):
    """``V`` with every non-identity vertical 1-cell discarded."""

    def __init__(self, V: FcOracle):
        self.base = V
        self.concurrent_safe = V.concurrent_safe

    def objects(self):
        return self.base.objects()

    def verticals(self, x, y):
        return [self.base.id_vert(x)] if x == y else []

    def horizontals(self, x, y):
        return self.base.horizontals(x, y)

    def _frame_ok(self, frame: Frame) -> bool:
        return (frame.left == self.base.id_vert(frame.left.dom)
                and frame.right == self.base.id_vert(frame.right.dom))

    def cells(self, frame):
        return self.base.cells(frame) if self._frame_ok(frame) else []

    def count_cells(self, frame):
        return self.base.count_cells(frame) if self._frame_ok(frame) else 0

    def contains(self, cell):
        return self._frame_ok(cell.frame) and self.base.contains(cell)

    def has_object(self, x):
        return self.base.has_object(x)

    def has_vertical(self, f):
        return f.dom == f.cod and f == self.base.id_vert(f.dom)

    def has_horizontal(self, m):
        return self.base.has_horizontal(m)

    def compose_vert(self, g, f):
        return self.base.compose_vert(g, f)

    def id_vert(self, x):
        return self.base.id_vert(x)

    def _compose(self, theta, children, boundary, frame):
        return self.base._compose(theta, children, boundary, frame)

    def _identity(self, m):
        return self.base._identity(m)

    def carrier_candidates(self):
        return self.base.carrier_candidates()

    def encode_cell(self, cell):
        return self.base.encode_cell(cell)

    def decode_cell(self, frame, data):
        if not self._frame_ok(frame):
            raise UnknownCell(f"frame {frame} has non-identity verticals")
        return self.base.decode_cell(frame, data)


def restrict_verticals_to_identities(V: FcOracle) -> FcOracle:
    return IdentityVerticals(V)


__all__ = [
    "Bounds", "FcError", "FcOracle", "Frame", "FreePath", "Graph", "Hor", "IdentityVerticals",
    "LawReport", "Path", "TwoCell", "Vert", "Violation", "cells_equal", "check_fc_laws",
    "compose_cells", "compose_flat", "describe", "free_paths", "horizontal_graph", "id_cell",
    "identity_boundary", "restrict_verticals_to_identities",
]
