"""Monads, monad maps, bimodules and their 2-cells inside an fc-multicategory.

Conventions (all composites taken with :meth:`FcOracle.compose_cells`):

* a monad on ``x`` is a horizontal ``t: x -> x`` with a multiplication
  ``mult: (t, t) => t`` and unit ``unit: () => t``, both framed by identities;
* a monad map ``(f, phi): T -> T'`` has ``phi: (t) => t'`` framed by ``f`` on
  both sides;
* a bimodule ``M: T -> T'`` is a horizontal ``m: x -> x'`` with a left-end
  action ``act_src: (t, m) => m`` and right-end action ``act_tgt: (m, t') => m``;
* a cell of Bim is a cell ``theta`` of the underlying oracle whose frame lies
  over bimodules and monad maps, equivariant at every inner joint and
  compatible with the actions at both outer ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core import FcOracle, Frame, Hor, LawReport, Path, TwoCell, Vert, _CachedHash
from ..errors import FrameError, UnknownCell


@dataclass(frozen=True, eq=True)
class Monad(_CachedHash):
    __hash__ = _CachedHash.__hash__

    x: object
    t: Hor
    mult: TwoCell
    unit: TwoCell

    def label(self) -> str:
        return f"Monad({self.t.name})"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True, eq=True)
class MonadMap(_CachedHash):
    __hash__ = _CachedHash.__hash__

    f: Vert
    phi: TwoCell

    def label(self) -> str:
        return f"MonadMap({self.f.name})"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True, eq=True)
class Bimodule(_CachedHash):
    __hash__ = _CachedHash.__hash__

    m: Hor
    src: Monad
    tgt: Monad
    act_src: TwoCell
    act_tgt: TwoCell

    def label(self) -> str:
        return f"Bimodule({self.m.name})"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True, eq=True)
class BimTwoCell:
    """A candidate Bim 2-cell.

    ``left`` runs from the first monad of the source path (``anchor`` when the
    path is empty) to ``target.src``; ``right`` from the last to ``target.tgt``.
    """

    underlying: TwoCell
    sources: tuple
    target: Bimodule
    left: MonadMap
    right: MonadMap
    anchor: Monad | None = None

    @property
    def monads(self) -> list[Monad]:
        if not self.sources:
            return [self.anchor]
        return [self.sources[0].src] + [b.tgt for b in self.sources]


def _require(V: FcOracle, cells: Sequence[TwoCell]) -> None:
    for c in cells:
        if not V.contains(c):
            raise UnknownCell(f"cell {c} is not a cell of the underlying oracle")


def _expect_frame(cell: TwoCell, frame: Frame, what: str) -> None:
    if cell.frame != frame:
        raise FrameError(f"{what} has frame {cell.frame}, expected {frame}")


def check_monad(V: FcOracle, T: Monad) -> LawReport:
    """Associativity and both unit laws; raises FrameError on malformed frames."""
    x, t = T.x, T.t
    if t.src != x or t.dst != x:
        raise FrameError(f"carrier {t} is not an endo-1-cell on {x!r}")
    i = V.id_vert(x)
    _expect_frame(T.mult, Frame(Path.of(t, t), i, i, t), "multiplication")
    _expect_frame(T.unit, Frame(Path.empty(x), i, i, t), "unit")
    _require(V, (T.mult, T.unit))
    one = V.id_cell(t)
    c = lambda th, ch: V.compose_cells(th, ch, [i] * (th.arity + 1), trusted=True)
    r = LawReport()
    r.check("monad-associativity", c(T.mult, [T.mult, one]) == c(T.mult, [one, T.mult]), {"monad": T})
    r.check("monad-left-unit", c(T.mult, [T.unit, one]) == one, {"monad": T})
    r.check("monad-right-unit", c(T.mult, [one, T.unit]) == one, {"monad": T})
    return r


def check_monad_map(V: FcOracle, F: MonadMap, S: Monad, T: Monad) -> LawReport:
    f = F.f
    if f.dom != S.x or f.cod != T.x:
        raise FrameError(f"vertical {f} does not run from {S.x!r} to {T.x!r}")
    _expect_frame(F.phi, Frame(Path.of(S.t), f, f, T.t), "monad map cell")
    _require(V, (F.phi,))
    i = V.id_vert(S.x)
    r = LawReport()
    lhs = V.compose_cells(F.phi, [S.mult], [i, i], trusted=True)
    rhs = V.compose_cells(T.mult, [F.phi, F.phi], [f, f, f], trusted=True)
    r.check("monad-map-multiplication", lhs == rhs, {"map": F})
    lhs = V.compose_cells(F.phi, [S.unit], [i, i], trusted=True)
    rhs = V.compose_cells(T.unit, [], [f], trusted=True)
    r.check("monad-map-unit", lhs == rhs, {"map": F})
    return r


def check_bimodule(V: FcOracle, M: Bimodule) -> LawReport:
    S, T, m = M.src, M.tgt, M.m
    if m.src != S.x or m.dst != T.x:
        raise FrameError(f"{m} does not run from {S.x!r} to {T.x!r}")
    i, j = V.id_vert(S.x), V.id_vert(T.x)
    _expect_frame(M.act_src, Frame(Path.of(S.t, m), i, j, m), "left-end action")
    _expect_frame(M.act_tgt, Frame(Path.of(m, T.t), i, j, m), "right-end action")
    _require(V, (M.act_src, M.act_tgt))
    one_m, one_s, one_t = V.id_cell(m), V.id_cell(S.t), V.id_cell(T.t)
    c = lambda th, ch, b: V.compose_cells(th, ch, b, trusted=True)
    rho, lam = M.act_src, M.act_tgt
    r = LawReport()
    w = {"bimodule": M}
    r.check("bimodule-src-associativity",
            c(rho, [S.mult, one_m], [i, i, j]) == c(rho, [one_s, rho], [i, i, j]), w)
    r.check("bimodule-tgt-associativity",
            c(lam, [one_m, T.mult], [i, j, j]) == c(lam, [lam, one_t], [i, j, j]), w)
    r.check("bimodule-actions-commute",
            c(lam, [rho, one_t], [i, j, j]) == c(rho, [one_s, lam], [i, i, j]), w)
    r.check("bimodule-src-unit", c(rho, [S.unit, one_m], [i, i, j]) == one_m, w)
    r.check("bimodule-tgt-unit", c(lam, [one_m, T.unit], [i, j, j]) == one_m, w)
    return r


def bim_cell_frame(V: FcOracle, c: BimTwoCell) -> Frame:
    """The frame the underlying cell must have; raises FrameError if the data disagree."""
    mons = c.monads
    if mons[0] is None:
        raise FrameError("an empty source path needs an anchor monad")
    for a, b in zip(c.sources, c.sources[1:]):
        if a.tgt != b.src:
            raise FrameError(f"bimodules {a} and {b} do not share a monad")
    if c.left.f.dom != mons[0].x or c.left.f.cod != c.target.src.x:
        raise FrameError(f"left map {c.left} does not run from {mons[0]} to {c.target.src}")
    if c.right.f.dom != mons[-1].x or c.right.f.cod != c.target.tgt.x:
        raise FrameError(f"right map {c.right} does not run from {mons[-1]} to {c.target.tgt}")
    _expect_frame(c.left.phi, Frame(Path.of(mons[0].t), c.left.f, c.left.f, c.target.src.t), "left map cell")
    _expect_frame(c.right.phi, Frame(Path.of(mons[-1].t), c.right.f, c.right.f, c.target.tgt.t), "right map cell")
    src = Path(tuple(b.m for b in c.sources), mons[0].x)
    return Frame(src, c.left.f, c.right.f, c.target.m)


def check_bim_cell(V: FcOracle, c: BimTwoCell) -> LawReport:
    """Equivariance at inner joints and compatibility at both outer ends.

    With an empty source path the two outer conditions collapse into one:
    acting with the left map on one side equals acting with the right map on
    the other.
    """
    theta = c.underlying
    _expect_frame(theta, bim_cell_frame(V, c), "underlying cell")
    _require(V, (theta,))
    B, n = c.sources, len(c.sources)
    f, g = c.left.f, c.right.f
    tgt = c.target
    ids = [V.id_cell(b.m) for b in B]
    flat = lambda th, ch: V.compose_cells(th, ch, [V.id_vert(x) for x in th.frame.source.objects()], trusted=True)
    r = LawReport()
    for k in range(n - 1):
        lhs = flat(theta, ids[:k] + [B[k].act_tgt] + ids[k + 1:])
        rhs = flat(theta, ids[:k + 1] + [B[k + 1].act_src] + ids[k + 2:])
        r.check("bim-inner-equivariance", lhs == rhs, {"cell": theta, "joint": k + 1})
    if n == 0:
        lhs = V.compose_cells(tgt.act_src, [c.left.phi, theta], [f, f, g], trusted=True)
        rhs = V.compose_cells(tgt.act_tgt, [theta, c.right.phi], [f, g, g], trusted=True)
        r.check("bim-nullary-compatibility", lhs == rhs, {"cell": theta})
        return r
    lhs = V.compose_cells(tgt.act_src, [c.left.phi, theta], [f, f, g], trusted=True)
    rhs = flat(theta, [B[0].act_src] + ids[1:])
    r.check("bim-src-compatibility", lhs == rhs, {"cell": theta})
    lhs = V.compose_cells(tgt.act_tgt, [theta, c.right.phi], [f, g, g], trusted=True)
    rhs = flat(theta, ids[:-1] + [B[-1].act_tgt])
    r.check("bim-tgt-compatibility", lhs == rhs, {"cell": theta})
    return r
