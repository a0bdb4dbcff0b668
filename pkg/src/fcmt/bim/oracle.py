"""Lazy oracle for the fc-multicategory of monads and bimodules in ``V``.

Objects are :class:`Monad` values, vertical 1-cells are ``Vert(MonadMap,
Monad, Monad)``, horizontal 1-cells are ``Hor(Bimodule, Monad, Monad)``, and a
2-cell keeps the id of its underlying cell of ``V``.  Everything is computed
on demand and memoised.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from ..core import FcOracle, Frame, Hor, Path, TwoCell, Vert
from ..errors import ClosureViolation, FcError, UnknownCell
from .structures import (BimTwoCell, Bimodule, Monad, MonadMap, check_bim_cell, check_bimodule,
                         check_monad, check_monad_map)


class BimFc(FcOracle):
    """Monads, monad maps, bimodules and Bim 2-cells of ``V``.

    ``carriers`` restricts which horizontal endo-1-cells may carry monads
    (default: ``V.carrier_candidates()``).
    """

    def __init__(self, V: FcOracle, carriers: Iterable[Hor] | None = None):
        self.base = V
        self.concurrent_safe = False
        self._carriers = list(V.carrier_candidates() if carriers is None else carriers)
        self._monads: list[Monad] | None = None
        self._maps: dict[tuple, list[Vert]] = {}
        self._bimods: dict[tuple, list[Hor]] = {}
        self._cells: dict[Frame, list[TwoCell]] = {}
        self._ok: dict = {}
        self._vcomp: dict = {}
        self._ids: dict = {}

    # -- membership by law checking --

    def _passes(self, key, check) -> bool:
        got = self._ok.get(key)
        if got is None:
            try:
                got = check().passed
            except FcError:
                got = False
            self._ok[key] = got
        return got

    def has_object(self, T) -> bool:
        return isinstance(T, Monad) and self._passes(("monad", T), lambda: check_monad(self.base, T))

    def has_vertical(self, v) -> bool:
        F = v.name
        return (isinstance(F, MonadMap) and self.has_object(v.dom) and self.has_object(v.cod)
                and self._passes(("map", v), lambda: check_monad_map(self.base, F, v.dom, v.cod)))

    def has_horizontal(self, h) -> bool:
        M = h.name
        return (isinstance(M, Bimodule) and M.src == h.src and M.tgt == h.dst
                and self.has_object(h.src) and self.has_object(h.dst)
                and self._passes(("bimodule", M), lambda: check_bimodule(self.base, M)))

    # -- enumeration --

    def objects(self) -> list[Monad]:
        if self._monads is None:
            V, out = self.base, []
            for t in self._carriers:
                x = t.src
                i = V.id_vert(x)
                mults = V.cells(Frame(Path.of(t, t), i, i, t))
                units = V.cells(Frame(Path.empty(x), i, i, t))
                for mu, eta in itertools.product(mults, units):
                    T = Monad(x, t, mu, eta)
                    if self.has_object(T):
                        out.append(T)
            self._monads = out
        return list(self._monads)

    def verticals(self, S, T) -> list[Vert]:
        key = (S, T)
        if key not in self._maps:
            V, out = self.base, []
            for f in V.verticals(S.x, T.x):
                for phi in V.cells(Frame(Path.of(S.t), f, f, T.t)):
                    v = Vert(MonadMap(f, phi), S, T)
                    if self.has_vertical(v):
                        out.append(v)
            self._maps[key] = out
        return list(self._maps[key])

    def horizontals(self, S, T) -> list[Hor]:
        key = (S, T)
        if key not in self._bimods:
            V, out = self.base, []
            i, j = V.id_vert(S.x), V.id_vert(T.x)
            for m in V.horizontals(S.x, T.x):
                rhos = V.cells(Frame(Path.of(S.t, m), i, j, m))
                lams = V.cells(Frame(Path.of(m, T.t), i, j, m))
                for rho, lam in itertools.product(rhos, lams):
                    h = Hor(Bimodule(m, S, T, rho, lam), S, T)
                    if self.has_horizontal(h):
                        out.append(h)
            self._bimods[key] = out
        return list(self._bimods[key])

    def carrier_candidates(self):
        return [m for T in self.objects() for m in self.horizontals(T, T)]

    # -- frames and cells --

    def underlying_frame(self, frame: Frame) -> Frame:
        src = Path(tuple(h.name.m for h in frame.source.cells), frame.source.start.x)
        return Frame(src, frame.left.name.f, frame.right.name.f, frame.target.name.m)

    def as_bim_cell(self, cell_id, frame: Frame) -> BimTwoCell:
        return BimTwoCell(TwoCell(cell_id, self.underlying_frame(frame)),
                          tuple(h.name for h in frame.source.cells), frame.target.name,
                          frame.left.name, frame.right.name,
                          frame.source.anchor if frame.source.arity == 0 else None)

    def _frame_known(self, frame: Frame) -> bool:
        return (all(self.has_horizontal(h) for h in frame.source.cells) and self.has_horizontal(frame.target)
                and self.has_vertical(frame.left) and self.has_vertical(frame.right)
                and self.has_object(frame.source.anchor))

    def _is_cell(self, cell_id, frame: Frame) -> bool:
        return self._passes(("cell", cell_id, frame),
                            lambda: check_bim_cell(self.base, self.as_bim_cell(cell_id, frame)))

    def cells(self, frame):
        got = self._cells.get(frame)
        if got is None:
            if not self._frame_known(frame):
                raise UnknownCell(f"frame {frame} is not a frame of Bim")
            got = [TwoCell(c.id, frame) for c in self.base.cells(self.underlying_frame(frame))
                   if self._is_cell(c.id, frame)]
            self._cells[frame] = got
        return list(got)

    def contains(self, cell):
        return self._frame_known(cell.frame) and self._is_cell(cell.id, cell.frame)

    # -- composition --

    def id_vert(self, T):
        got = self._ids.get(T)
        if got is None:
            V = self.base
            got = self._ids[T] = Vert(MonadMap(V.id_vert(T.x), V.id_cell(T.t)), T, T)
        return got

    def compose_vert(self, g, f):
        key = (g, f)
        got = self._vcomp.get(key)
        if got is None:
            got = self._vcomp[key] = self._compose_maps(g, f)
        return got

    def _compose_maps(self, g, f):
        V = self.base
        F, G = f.name, g.name
        h = V.compose_vert(G.f, F.f)
        psi = V.compose_cells(G.phi, [F.phi], [F.f, F.f], trusted=True)
        v = Vert(MonadMap(h, psi), f.dom, g.cod)
        if not self.has_vertical(v):
            raise ClosureViolation(f"composite of monad maps {g} and {f} is not a monad map")
        return v

    def _compose(self, theta, children, boundary, frame):
        V = self.base
        under = V.compose_cells(
            TwoCell(theta.id, self.underlying_frame(theta.frame)),
            [TwoCell(c.id, self.underlying_frame(c.frame)) for c in children],
            [b.name.f for b in boundary], trusted=True)
        if not self._is_cell(under.id, frame):
            raise ClosureViolation(f"composite {under} is not a cell of Bim")
        return TwoCell(under.id, frame)

    def _identity(self, h):
        cell = self.base.id_cell(h.name.m)
        return TwoCell(cell.id, Frame(Path.of(h), self.id_vert(h.src), self.id_vert(h.dst), h))

    def encode_cell(self, cell):
        return self.base.encode_cell(TwoCell(cell.id, self.underlying_frame(cell.frame)))

    def decode_cell(self, frame, data):
        under = self.base.decode_cell(self.underlying_frame(frame), data)
        cell = TwoCell(under.id, frame)
        if not self.contains(cell):
            raise UnknownCell(f"{data!r} is not a cell of Bim in frame {frame}")
        return cell


def bim_oracle(V: FcOracle, carriers: Iterable[Hor] | None = None) -> BimFc:
    return BimFc(V, carriers)
