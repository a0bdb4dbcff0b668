"""fc-multicategories from strict double categories (and bicategories).

A square ``s`` has ``top: a -> b`` and ``bottom: c -> d`` (horizontal) and
``left: a -> c``, ``right: b -> d`` (vertical).  A 2-cell with source path
``m_1..m_n`` is a square whose top is the horizontal composite
``m_n o ... o m_1`` (the horizontal identity when ``n = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core import FcOracle, Frame, Hor, LawReport, Path, TwoCell, Vert
from ..errors import MalformedPresentation, UnknownCell


@dataclass
class StrictDoublePresentation:
    """Tables for a strict double category.

    ``v_composition[(g, f)]`` / ``h_composition[(n, m)]`` are ``g o f`` /
    ``n o m``.  ``square_hcomp[(s, t)]`` places ``t`` to the right of ``s``;
    ``square_vcomp[(s, t)]`` places ``t`` below ``s``.  ``h_id_squares[f]`` is
    the identity for horizontal pasting on the vertical ``f``;
    ``v_id_squares[m]`` the identity for vertical pasting on ``m``.
    """

    objects: list
    v_arrows: dict
    v_identities: dict
    v_composition: dict
    h_arrows: dict
    h_identities: dict
    h_composition: dict
    squares: dict  # name -> (top, bottom, left, right)
    square_hcomp: dict
    square_vcomp: dict
    h_id_squares: dict
    v_id_squares: dict

    def __post_init__(self):
        obs = set(self.objects)
        for kind, arrows, ids, comp in (("vertical", self.v_arrows, self.v_identities, self.v_composition),
                                        ("horizontal", self.h_arrows, self.h_identities, self.h_composition)):
            for f, (a, b) in arrows.items():
                if a not in obs or b not in obs:
                    raise MalformedPresentation(f"{kind} arrow {f!r} has an unknown end")
            for a in self.objects:
                if ids.get(a) not in arrows:
                    raise MalformedPresentation(f"{kind} identity of {a!r} is missing")
            for f, (_, b) in arrows.items():
                for g, (c, _) in arrows.items():
                    if b == c and comp.get((g, f)) not in arrows:
                        raise MalformedPresentation(f"{kind} composite {g!r} o {f!r} is missing")
        for s, (top, bottom, left, right) in self.squares.items():
            if top not in self.h_arrows or bottom not in self.h_arrows:
                raise MalformedPresentation(f"square {s!r} has an unknown horizontal side")
            if left not in self.v_arrows or right not in self.v_arrows:
                raise MalformedPresentation(f"square {s!r} has an unknown vertical side")
            (a, b), (c, d) = self.h_arrows[top], self.h_arrows[bottom]
            if self.v_arrows[left] != (a, c) or self.v_arrows[right] != (b, d):
                raise MalformedPresentation(f"square {s!r} has mismatched corners")
        for s, t in self.h_pairs():
            if self.square_hcomp.get((s, t)) not in self.squares:
                raise MalformedPresentation(f"horizontal paste of {s!r} and {t!r} is missing")
        for s, t in self.v_pairs():
            if self.square_vcomp.get((s, t)) not in self.squares:
                raise MalformedPresentation(f"vertical paste of {s!r} and {t!r} is missing")
        for f in self.v_arrows:
            if self.h_id_squares.get(f) not in self.squares:
                raise MalformedPresentation(f"horizontal identity square on {f!r} is missing")
        for m in self.h_arrows:
            if self.v_id_squares.get(m) not in self.squares:
                raise MalformedPresentation(f"vertical identity square on {m!r} is missing")
        self._by_boundary: dict[tuple, list] = {}
        for s, b in self.squares.items():
            self._by_boundary.setdefault(tuple(b), []).append(s)

    def h_pairs(self):
        return [(s, t) for s, a in self.squares.items() for t, b in self.squares.items() if a[3] == b[2]]

    def v_pairs(self):
        return [(s, t) for s, a in self.squares.items() for t, b in self.squares.items() if a[1] == b[0]]

    def squares_with(self, top, bottom, left, right) -> list:
        return list(self._by_boundary.get((top, bottom, left, right), ()))

    def check_laws(self) -> LawReport:
        r = LawReport()
        S = self.squares
        for kind, arrows, ids, comp in (("vertical", self.v_arrows, self.v_identities, self.v_composition),
                                        ("horizontal", self.h_arrows, self.h_identities, self.h_composition)):
            for f, (a, b) in arrows.items():
                r.check(f"{kind}-unit", comp[(ids[b], f)] == f and comp[(f, ids[a])] == f, lambda: {"arrow": f})
                for g, (b2, c) in arrows.items():
                    if b2 != b:
                        continue
                    gf = comp[(g, f)]
                    if not r.check(f"{kind}-composite-typed", arrows[gf] == (a, c), lambda: {"g": g, "f": f}):
                        continue
                    for h, (c2, _) in arrows.items():
                        if c2 == c:
                            r.check(f"{kind}-associativity", comp[(h, gf)] == comp[(comp[(h, g)], f)],
                                    lambda: {"h": h, "g": g, "f": f})
        hc, vc = self.square_hcomp, self.square_vcomp
        for s, t in self.h_pairs():
            u = hc[(s, t)]
            want = (self.h_composition[(S[t][0], S[s][0])], self.h_composition[(S[t][1], S[s][1])], S[s][2], S[t][3])
            r.check("hpaste-typed", S[u] == want, lambda: {"left": s, "right": t, "result": u})
        for s, t in self.v_pairs():
            u = vc[(s, t)]
            want = (S[s][0], S[t][1], self.v_composition[(S[t][2], S[s][2])], self.v_composition[(S[t][3], S[s][3])])
            r.check("vpaste-typed", S[u] == want, lambda: {"upper": s, "lower": t, "result": u})
        if not r.passed:
            return r
        for f, (a, b) in self.v_arrows.items():
            i = self.h_id_squares[f]
            r.check("hid-square-typed", S[i] == (self.h_identities[a], self.h_identities[b], f, f), lambda: {"vertical": f})
        for m, (a, b) in self.h_arrows.items():
            i = self.v_id_squares[m]
            r.check("vid-square-typed", S[i] == (m, m, self.v_identities[a], self.v_identities[b]), lambda: {"horizontal": m})
        if not r.passed:
            return r
        for s, (_, _, left, right) in S.items():
            r.check("hpaste-unit", hc[(self.h_id_squares[left], s)] == s and hc[(s, self.h_id_squares[right])] == s,
                    lambda: {"square": s})
            r.check("vpaste-unit", vc[(self.v_id_squares[S[s][0]], s)] == s and vc[(s, self.v_id_squares[S[s][1]])] == s,
                    lambda: {"square": s})
        for s, t in self.h_pairs():
            st = hc[(s, t)]
            for u, bu in S.items():
                if bu[2] == S[t][3]:
                    r.check("hpaste-associativity", hc[(st, u)] == hc[(s, hc[(t, u)])], lambda: {"squares": (s, t, u)})
        for s, t in self.v_pairs():
            st = vc[(s, t)]
            for u, bu in S.items():
                if bu[0] == S[t][1]:
                    r.check("vpaste-associativity", vc[(st, u)] == vc[(s, vc[(t, u)])], lambda: {"squares": (s, t, u)})
        for s, t in self.h_pairs():
            for s2, t2 in self.h_pairs():
                if S[s][1] == S[s2][0] and S[t][1] == S[t2][0]:
                    lhs = vc[(hc[(s, t)], hc[(s2, t2)])]
                    rhs = hc[(vc[(s, s2)], vc[(t, t2)])]
                    r.check("interchange", lhs == rhs, lambda: {"top": (s, t), "bottom": (s2, t2)})
        for f, (_, b) in self.v_arrows.items():
            for g, (b2, _) in self.v_arrows.items():
                if b == b2:
                    r.check("hid-squares-compose",
                            vc[(self.h_id_squares[f], self.h_id_squares[g])] == self.h_id_squares[self.v_composition[(g, f)]],
                            lambda: {"f": f, "g": g})
        for m, (_, b) in self.h_arrows.items():
            for n, (b2, _) in self.h_arrows.items():
                if b == b2:
                    r.check("vid-squares-compose",
                            hc[(self.v_id_squares[m], self.v_id_squares[n])] == self.v_id_squares[self.h_composition[(n, m)]],
                            lambda: {"m": m, "n": n})
        for a in self.objects:
            r.check("identity-squares-agree",
                    self.v_id_squares[self.h_identities[a]] == self.h_id_squares[self.v_identities[a]],
                    lambda: {"object": a})
        return r


class DoubleFc(FcOracle):
    def __init__(self, d: StrictDoublePresentation):
        self.presentation = d
        self._verts: dict[tuple, list] = {}
        for f, (a, b) in d.v_arrows.items():
            self._verts.setdefault((a, b), []).append(Vert(f, a, b))
        self._hors: dict[tuple, list] = {}
        for m, (a, b) in d.h_arrows.items():
            self._hors.setdefault((a, b), []).append(Hor(m, a, b))

    def objects(self):
        return list(self.presentation.objects)

    def verticals(self, x, y):
        return list(self._verts.get((x, y), ()))

    def horizontals(self, x, y):
        return list(self._hors.get((x, y), ()))

    def id_vert(self, x):
        d = self.presentation
        if x not in d.v_identities:
            raise UnknownCell(f"unknown object {x!r}")
        return Vert(d.v_identities[x], x, x)

    def compose_vert(self, g, f):
        if not (self.has_vertical(f) and self.has_vertical(g)) or f.cod != g.dom:
            raise UnknownCell(f"cannot compose verticals {g!r} o {f!r}")
        return Vert(self.presentation.v_composition[(g.name, f.name)], f.dom, g.cod)

    def top(self, path: Path):
        """Horizontal composite of a path (identity on the anchor when empty)."""
        d = self.presentation
        if path.arity == 0:
            return d.h_identities[path.anchor]
        t = path.cells[0].name
        for m in path.cells[1:]:
            t = d.h_composition[(m.name, t)]
        return t

    def _known(self, frame: Frame) -> bool:
        return (all(self.has_horizontal(m) for m in frame.source.cells) and self.has_horizontal(frame.target)
                and self.has_vertical(frame.left) and self.has_vertical(frame.right)
                and (frame.source.arity > 0 or self.has_object(frame.source.anchor)))

    def cells(self, frame):
        if not self._known(frame):
            raise UnknownCell(f"frame {frame} mentions unknown 1-cells")
        d = self.presentation
        names = d.squares_with(self.top(frame.source), frame.target.name, frame.left.name, frame.right.name)
        return [TwoCell(s, frame) for s in names]

    def contains(self, cell):
        if not self._known(cell.frame):
            return False
        fr = cell.frame
        return self.presentation.squares.get(cell.id) == (self.top(fr.source), fr.target.name, fr.left.name, fr.right.name)

    def _compose(self, theta, children, boundary, frame):
        d = self.presentation
        if not children:
            row = d.h_id_squares[boundary[0].name]
        else:
            row = children[0].id
            for c in children[1:]:
                row = d.square_hcomp[(row, c.id)]
        return TwoCell(d.square_vcomp[(row, theta.id)], frame)

    def _identity(self, m):
        d = self.presentation
        fr = Frame(Path.of(m), self.id_vert(m.src), self.id_vert(m.dst), m)
        return TwoCell(d.v_id_squares[m.name], fr)

    def decode_cell(self, frame, data):
        cell = TwoCell(data, frame)
        if not self.contains(cell):
            raise UnknownCell(f"{data!r} is not a square in frame {frame}")
        return cell


def double_fc(d: StrictDoublePresentation, validate: bool = True) -> DoubleFc:
    if validate:
        report = d.check_laws()
        if not report.passed:
            raise MalformedPresentation("double category presentation fails its laws", report)
    return DoubleFc(d)


def commuting_squares(category) -> StrictDoublePresentation:
    """The double category whose squares are the commuting squares of a finite category.

    Both the vertical and the horizontal arrows are the morphisms of
    ``category`` (any object with ``objects``, ``morphisms``,
    ``identities`` and ``composition`` tables, such as ``FinCategory``).  A
    square is named ``[top|bottom;left|right]`` after its boundary.
    """
    C = category
    mors, comp = dict(C.morphisms), dict(C.composition)
    name = lambda top, bottom, left, right: f"[{top}|{bottom};{left}|{right}]"
    squares = {}
    for top, (a, b) in mors.items():
        for bottom, (c, d) in mors.items():
            for left, lt in mors.items():
                if lt != (a, c):
                    continue
                for right, rt in mors.items():
                    if rt == (b, d) and comp[(bottom, left)] == comp[(right, top)]:
                        squares[name(top, bottom, left, right)] = (top, bottom, left, right)
    S = squares
    hc, vc = {}, {}
    for s in S:
        for t in S:
            if S[s][3] == S[t][2]:
                hc[(s, t)] = name(comp[(S[t][0], S[s][0])], comp[(S[t][1], S[s][1])], S[s][2], S[t][3])
            if S[s][1] == S[t][0]:
                vc[(s, t)] = name(S[s][0], S[t][1], comp[(S[t][2], S[s][2])], comp[(S[t][3], S[s][3])])
    ids = dict(C.identities)
    hid = {f: name(ids[a], ids[b], f, f) for f, (a, b) in mors.items()}
    vid = {m: name(m, m, ids[a], ids[b]) for m, (a, b) in mors.items()}
    return StrictDoublePresentation(
        objects=list(C.objects), v_arrows=mors, v_identities=ids, v_composition=comp,
        h_arrows=dict(mors), h_identities=dict(ids), h_composition=dict(comp),
        squares=squares, square_hcomp=hc, square_vcomp=vc, h_id_squares=hid, v_id_squares=vid,
    )


def bicategory_presentation(objects: Sequence, h_arrows: dict, h_identities: dict, h_composition: dict,
                            two_cells: dict, hcomp: dict, vcomp: dict, identities: dict) -> StrictDoublePresentation:
    """A strict 2-category as a double category with only identity verticals.

    ``two_cells[name] = (source, target)`` between parallel 1-cells;
    ``hcomp``/``vcomp`` paste 2-cells horizontally/vertically and
    ``identities[m]`` is the identity 2-cell on ``m``.
    """
    vids = {a: f"1_{a}" for a in objects}
    v_arrows = {vids[a]: (a, a) for a in objects}
    v_comp = {(vids[a], vids[a]): vids[a] for a in objects}
    squares = {}
    for c, (s, t) in two_cells.items():
        a, b = h_arrows[s]
        squares[c] = (s, t, vids[a], vids[b])
    hid = {vids[a]: identities[h_identities[a]] for a in objects}
    return StrictDoublePresentation(
        objects=list(objects), v_arrows=v_arrows, v_identities=vids, v_composition=v_comp,
        h_arrows=dict(h_arrows), h_identities=dict(h_identities), h_composition=dict(h_composition),
        squares=squares, square_hcomp=dict(hcomp), square_vcomp=dict(vcomp),
        h_id_squares=hid, v_id_squares=dict(identities),
    )
