"""Command line: law checking, Bim inventories, transfer, demos, span composition.

Exit codes: 0 success / laws hold, 1 a law fails (or a derived construction
is refused because its input fails), 2 the input cannot be read or evaluated.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Any

from .bim import bim_oracle, check_bimodule, check_monad
from .core import Bounds, Frame, LawReport, Path, check_fc_laws, free_paths, horizontal_graph
from .demos import demo_names, demo_text
from .enrich import EnrichedCategory, check_enriched, enrich_to_bim, parbjn_from_subsets, \
    transferred_structures_report
from .errors import FcError, NotMonic, SourceInvalid
from .io import BASE_KINDS, Document, load, oracle_for
from .instances.span import path_limit


@dataclass(frozen=True)
class CheckConfig:
    max_arity: int = 3
    max_nesting: int = 2
    max_cells_per_frame: int = 10000
    seed: int = 0
    parallel: bool = False
    format: str = "human"

    def __post_init__(self):
        if min(self.max_arity, self.max_nesting, self.max_cells_per_frame) < 0:
            raise ValueError("bounds must be non-negative")

    def bounds(self, max_arity: int | None = None) -> Bounds:
        return Bounds(self.max_arity if max_arity is None else max_arity, self.max_nesting, self.max_cells_per_frame)


class InputError(Exception):
    """Raised for anything that makes the input unusable (exit status 2)."""


def read_document(path: str) -> Document:
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return load(text)
    except FcError as e:
        raise InputError(f"{path}: {e}") from None


def _emit(cfg: CheckConfig, machine: dict, human: str) -> None:
    if cfg.format == "machine":
        sys.stdout.write(json.dumps(machine, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


def _oracle_arity(kind: str, value, cfg: CheckConfig) -> int:
    # multicategories are only tabulated up to their own bound
    if kind == "multicat":
        return min(cfg.max_arity, value.arity_bound)
    return cfg.max_arity


# ---------------------------------------------------------------------------
# check


def check_document(doc: Document, cfg: CheckConfig) -> LawReport:
    kind, x = doc.kind, doc.value
    if kind in BASE_KINDS:
        report = LawReport().extend(x.check_laws(), "presentation:")
        if not report.passed:
            return report
        V = oracle_for(kind, x)
        if kind == "span-universe" and x.restrict_to_partial_bijections:
            for s in x.spans.values():
                if not s.is_partial_bijection():
                    raise NotMonic(f"span {s.name!r} is not a partial bijection")
        bounds = cfg.bounds(_oracle_arity(kind, x, cfg))
        fc = check_fc_laws(V, bounds, parallel=cfg.parallel)
        report.bounds = fc.bounds
        return report.extend(fc)
    if kind == "monad":
        return check_monad(x.oracle, x.value)
    if kind == "bimodule":
        V, M = x.oracle, x.value
        report = LawReport()
        report.extend(check_monad(V, M.src), "src-monad:")
        report.extend(check_monad(V, M.tgt), "tgt-monad:")
        return report.extend(check_bimodule(V, M))
    if kind == "enriched":
        return check_enriched(x.oracle, x.value)
    if kind == "subset-family":
        V, C = parbjn_from_subsets(x.base_set, x.family)
        return check_enriched(V, C)
    raise InputError(f"cannot check kind {kind!r}")


def cmd_check(args, cfg: CheckConfig) -> int:
    doc = read_document(args.file)
    try:
        report = check_document(doc, cfg)
    except FcError as e:
        raise InputError(f"{args.file}: {e}") from None
    machine = {"command": "check", "kind": doc.kind, "seed": cfg.seed, **report.to_dict()}
    _emit(cfg, machine, f"{doc.kind}: {report.summary()}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# bim


def bim_frames(B, max_arity: int):
    """Every Bim frame with source arity at most ``max_arity`` (deterministic order)."""
    objs = B.objects()
    for fp in free_paths(horizontal_graph(B), max_arity):
        src = Path(tuple(e[0] for e in fp.edges), fp.anchor)
        for x2 in objs:
            for f in B.verticals(src.start, x2):
                for y2 in objs:
                    for g in B.verticals(src.end, y2):
                        for h in B.horizontals(x2, y2):
                            yield Frame(src, f, g, h)


def bim_inventory(V, max_arity: int) -> dict:
    B = bim_oracle(V)
    monads = B.objects()
    tag = {T: f"T{i}" for i, T in enumerate(monads)}
    enc_monad = lambda T: {"id": tag[T], "carrier": T.x, "t": T.t.name,
                           "mult": V.encode_cell(T.mult), "unit": V.encode_cell(T.unit)}
    maps, bimods = [], []
    for S, T in itertools.product(monads, repeat=2):
        for v in B.verticals(S, T):
            maps.append({"src": tag[S], "tgt": tag[T], "vertical": v.name.f.name, "phi": V.encode_cell(v.name.phi)})
        for h in B.horizontals(S, T):
            M = h.name
            bimods.append({"src": tag[S], "tgt": tag[T], "m": M.m.name,
                           "act_src": V.encode_cell(M.act_src), "act_tgt": V.encode_cell(M.act_tgt)})
    by_arity = {n: {"arity": n, "frames": 0, "cells": 0} for n in range(max_arity + 1)}
    for fr in bim_frames(B, max_arity):
        row = by_arity[fr.arity]
        row["frames"] += 1
        row["cells"] += len(B.cells(fr))
    return {"monads": [enc_monad(T) for T in monads], "monad_maps": maps, "bimodules": bimods,
            "cells_by_arity": list(by_arity.values())}


def cmd_bim(args, cfg: CheckConfig) -> int:
    doc = read_document(args.file)
    if doc.kind not in BASE_KINDS:
        raise InputError(f"bim needs a base structure, got {doc.kind!r}")
    V = oracle_for(doc.kind, doc.value)
    try:
        inv = bim_inventory(V, _oracle_arity(doc.kind, doc.value, cfg))
    except FcError as e:
        raise InputError(f"{args.file}: {e}") from None
    lines = [f"monads: {len(inv['monads'])}", f"monad maps: {len(inv['monad_maps'])}",
             f"bimodules: {len(inv['bimodules'])}"]
    for T in inv["monads"]:
        lines.append(f"  {T['id']}: carrier {T['t']} on {T['carrier']}")
    for row in inv["cells_by_arity"]:
        lines.append(f"arity {row['arity']}: {row['cells']} cells in {row['frames']} frames")
    _emit(cfg, {"command": "bim", "kind": doc.kind, **inv}, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# derive-bim


def cmd_derive_bim(args, cfg: CheckConfig) -> int:
    doc = read_document(args.file)
    try:
        if doc.kind == "subset-family":
            V, C = parbjn_from_subsets(doc.value.base_set, doc.value.family)
        elif doc.kind == "enriched":
            V, C = doc.value.oracle, doc.value.value
        else:
            raise InputError(f"derive-bim needs an enriched category or subset family, got {doc.kind!r}")
        B = bim_oracle(V)
        D = enrich_to_bim(V, C, B)
        report = check_enriched(B, D)
        report.extend(transferred_structures_report(V, D), "transferred ")
    except SourceInvalid as e:
        detail = e.report.summary() if e.report is not None else ""
        _emit(cfg, {"command": "derive-bim", "kind": doc.kind, "error": str(e),
                    "source_report": e.report.to_dict() if e.report is not None else None},
              f"source invalid: {e}\n{detail}")
        return 1
    except FcError as e:
        raise InputError(f"{args.file}: {e}") from None
    out = _derived_json(V, D)
    _emit(cfg, {"command": "derive-bim", "kind": doc.kind, **out, **report.to_dict()},
          f"objects: {len(D.objects)}\n" + "\n".join(
              f"  {a!r}: monad on {D.ends[a].t.name}" for a in D.objects) + "\n" + report.summary())
    return 0 if report.passed else 1


def _derived_json(V, D: EnrichedCategory) -> dict:
    return {
        "objects": list(D.objects),
        "monads": [{"object": a, "carrier": T.x, "t": T.t.name, "mult": V.encode_cell(T.mult),
                    "unit": V.encode_cell(T.unit)} for a, T in D.ends.items()],
        "bimodules": [{"from": a, "to": b, "m": h.name.m.name, "act_src": V.encode_cell(h.name.act_src),
                       "act_tgt": V.encode_cell(h.name.act_tgt)} for (a, b), h in D.homs.items()],
    }


# ---------------------------------------------------------------------------
# demo / compose-span


def cmd_demo(args, cfg: CheckConfig) -> int:
    if args.list:
        sys.stdout.write("\n".join(demo_names()) + "\n")
        return 0
    if not args.name:
        raise InputError("demo needs a name (or --list)")
    text = demo_text(args.name)
    out_dir = os.environ.get("FCMT_DEMO_DIR")
    if out_dir:
        target = FsPath(out_dir) / f"{args.name}.json"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        sys.stdout.write(f"{target}\n")
    else:
        sys.stdout.write(text)
    return 0


def _plain(x: Any) -> Any:
    return list(map(_plain, x)) if isinstance(x, tuple) else x


def cmd_compose_span(args, cfg: CheckConfig) -> int:
    doc = read_document(args.file)
    if doc.kind != "span-universe":
        raise InputError(f"compose-span needs a span universe, got {doc.kind!r}")
    try:
        s = path_limit(doc.value, args.spans if args.spans else args.anchor or [])
    except FcError as e:
        raise InputError(str(e)) from None
    machine = {"command": "compose-span", "name": s.name, "src": s.src.name, "dst": s.dst.name,
               "apex": _plain(s.apex.elements), "left": _plain(s.leg_l.values), "right": _plain(s.leg_r.values)}
    rows = [f"  {_plain(a)}: {l} -> {r}" for a, l, r in zip(s.apex.elements, s.leg_l.values, s.leg_r.values)]
    _emit(cfg, machine, f"{s.name}: {s.src.name} <- {len(s.apex)} -> {s.dst.name}\n" + "\n".join(rows))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-arity", type=int, default=3)
    common.add_argument("--max-nesting", type=int, default=2)
    common.add_argument("--max-cells-per-frame", type=int, default=10000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", action="store_true", help="check frames on several threads")
    common.add_argument("--format", choices=["human", "machine"], default="human")

    p = argparse.ArgumentParser(prog="fcmt", description="Finite fc-multicategories: law checks and constructions.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="check the laws of a structure file")
    c.add_argument("file")
    c.set_defaults(run=cmd_check)
    b = sub.add_parser("bim", parents=[common], help="list monads, monad maps, bimodules and Bim cell counts")
    b.add_argument("file")
    b.set_defaults(run=cmd_bim)
    d = sub.add_parser("derive-bim", parents=[common], help="transfer an enriched category into Bim")
    d.add_argument("file")
    d.set_defaults(run=cmd_derive_bim)
    m = sub.add_parser("demo", parents=[common], help="write a shipped example file")
    m.add_argument("name", nargs="?")
    m.add_argument("--list", action="store_true")
    m.set_defaults(run=cmd_demo)
    s = sub.add_parser("compose-span", parents=[common], help="composite span of a path")
    s.add_argument("file")
    s.add_argument("spans", nargs="*")
    s.add_argument("--anchor", help="set name for the empty path")
    s.set_defaults(run=cmd_compose_span)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CheckConfig(args.max_arity, args.max_nesting, args.max_cells_per_frame,
                          args.seed, args.parallel, args.format)
    except ValueError as e:
        print(f"fcmt: {e}", file=sys.stderr)
        return 2
    try:
        return args.run(args, cfg)
    except (InputError, FcError) as e:
        print(f"fcmt: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
