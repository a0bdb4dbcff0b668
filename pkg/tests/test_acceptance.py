"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import dataclasses
import functools
import hashlib
import itertools
import os
import random
import subprocess
import sys
import time

import pytest

from fcmt.bim import (FinCategory, FinFunctor, Profunctor, bim_oracle, cat_to_monad, category_universe,
                      check_bimodule, check_monad, functor_to_monad_map, monad_to_cat, profunctor_to_bimodule)
from fcmt.core import Bounds, Frame, Hor, Path, TwoCell, Vert, check_fc_laws
from fcmt.demos import demo_names
from fcmt.enrich import (check_enriched, classical_enriched_adapter, enrich_to_bim, enumerate_enriched,
                         parbjn_from_subsets, transferred_structures_report)
from fcmt.errors import ClosureViolation
from fcmt.instances.monoidal import CartesianSkeleton, monoidal_fc, v2_presentation
from fcmt.instances.span import SpanUniverse, path_limit, span_fc, universe_u1

from oracles import (brute_categories, brute_functors, brute_limit, brute_monoids, brute_natural_families,
                     brute_profunctors, is_category, is_monoid, is_preorder, is_profunctor, partial_bijections,
                     random_universe, span_paths)

pytestmark = pytest.mark.acceptance

SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] acceptance {n}: {detail}")
        assert ok, detail
    return emit


# ---------------------------------------------------------------------------
# 1. law-checker soundness on span universes


def relation_universes():
    """One set of size 1 or 2 with one or two distinct relations of at most two pairs."""
    out = []
    for n in (1, 2):
        xs = list(range(n))
        pairs = list(itertools.product(xs, repeat=2))
        rels = [r for k in range(3) for r in itertools.combinations(pairs, k)]
        for count in (1, 2):
            for chosen in itertools.combinations(rels, count):
                spans = {f"R{i}": ("X", "X", [f"r{i}_{j}" for j in range(len(r))], [a for a, _ in r], [b for _, b in r])
                         for i, r in enumerate(chosen)}
                out.append(SpanUniverse.build({"X": xs}, {}, spans))
    return out


def test_law_checker_soundness(report):
    start = time.perf_counter()
    universes = relation_universes()
    failed = [i for i, u in enumerate(universes) if not check_fc_laws(span_fc(u), Bounds(3, 2)).passed]
    elapsed = time.perf_counter() - start
    ok = not failed and len(universes) >= 50 and elapsed < 60
    report(1, ok, f"{len(universes)} universes at max_arity 3, max_nesting 2; {len(failed)} failed; {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 2. mutation kill rate

Z3_TABLE = {(a, b): str((int(a) + int(b)) % 3) for a in "012" for b in "012"}
Z3 = FinCategory.monoid("Z3", ["0", "1", "2"], Z3_TABLE, "0")
Z2 = FinCategory.monoid("Z2", ["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}, "e")
ARROW = FinCategory.preorder("arrow", [0, 1], lambda a, b: a <= b)


def _single_entry_mutations(cell: TwoCell, choices):
    """Every cell differing from ``cell`` in exactly one entry; ``choices(k)`` lists legal values."""
    for k, old in enumerate(cell.id):
        for v in choices(k):
            if v != old:
                yield k, TwoCell(cell.id[:k] + (v,) + cell.id[k + 1:], cell.frame)


def _monad_mutations():
    """Multiplication tables of category monads (independent oracle: is_category)."""
    for C in (Z3, ARROW, Z2):
        V = span_fc(category_universe([C]))
        T = cat_to_monad(C, V)
        rows = V.rows(T.mult.source)
        over = lambda k: [f for f, e in C.morphisms.items() if e == (rows[k][0], rows[k][4])]
        for _, mult in _single_entry_mutations(T.mult, over):
            comp = {(r[3], r[1]): v for r, v in zip(rows, mult.id)}
            valid = is_category(C.objects, C.morphisms, C.identities, comp)
            yield f"mult {C.name}", valid, lambda V=V, T=dataclasses.replace(T, mult=mult): check_monad(V, T)


def _bimodule_mutations():
    """Action tables of hom bimodules (independent oracle: is_profunctor)."""
    for C in (Z2, ARROW):
        P = Profunctor.hom(C)
        V = span_fc(category_universe([C], [P]))
        S = cat_to_monad(C, V)
        M = profunctor_to_bimodule(P, V, S, S)
        for side in ("act_src", "act_tgt"):
            cell = getattr(M, side)
            rows = V.rows(cell.source)
            over = lambda k: [e for e, ends in P.elements.items() if ends == (rows[k][0], rows[k][4])]
            for _, act in _single_entry_mutations(cell, over):
                table = {(r[1], r[3]): v for r, v in zip(rows, act.id)}
                acts = {"act_src": P.act_src, "act_tgt": P.act_tgt, side: table}
                valid = is_profunctor(C, C, P.elements, acts["act_src"], acts["act_tgt"])
                bad = dataclasses.replace(M, **{side: act})
                yield f"{side} {C.name}", valid, lambda V=V, bad=bad: check_bimodule(V, bad)


def _enriched_mutations():
    """Composition cells of one-object categories enriched in finite sets (oracle: is_monoid)."""
    V = monoidal_fc(CartesianSkeleton(3), validate=False)
    for n, table, unit in ((3, {(a, b): (a + b) % 3 for a in range(3) for b in range(3)}, 0),
                           (2, {(a, b): a * b for a in range(2) for b in range(2)}, 1)):
        vals = tuple(table[(g, f)] for g in range(n) for f in range(n))
        C = classical_enriched_adapter(V, ["*"], {("*", "*"): n}, {("*", "*", "*"): (n * n, n, vals)},
                                       {"*": (1, n, (unit,))})
        cell = C.comp[("*", "*", "*")]
        for k in range(len(vals)):
            for v in range(n):
                if v == vals[k]:
                    continue
                new = vals[:k] + (v,) + vals[k + 1:]
                keys = [(g, f) for g in range(n) for f in range(n)]
                valid = is_monoid(n, dict(zip(keys, new)), unit)
                mutated = TwoCell((n * n, n, new), cell.frame)
                D = dataclasses.replace(C, comp={("*", "*", "*"): mutated})
                yield f"comp cell n={n}", valid, lambda V=V, D=D: check_enriched(V, D)


def test_mutation_kill_rate(report):
    fixtures = [m for gen in (_monad_mutations, _bimodule_mutations, _enriched_mutations)
                for m in gen() if not m[1]]
    missed = []
    for label, _, run in fixtures:
        r = run()
        if r.passed or not all(v.witness for v in r.violations):
            missed.append(label)
    kinds = sorted({label.split()[0] for label, _, _ in fixtures})
    ok = len(fixtures) >= 20 and not missed
    report(2, ok, f"{len(fixtures) - len(missed)}/{len(fixtures)} invalid single-entry mutations detected "
                  f"with witnesses ({', '.join(kinds)})")


# ---------------------------------------------------------------------------
# 3. composite spans against enumerate-and-filter


def _canonical(u, names):
    s = path_limit(u, list(names))
    wrap = (lambda e: (e,)) if len(names) == 1 else (lambda e: e)
    return {(wrap(e), s.leg_l(e), s.leg_r(e)) for e in s.apex.elements}


def test_span_composite_oracle(report):
    rng = random.Random(SEED)
    universes = [universe_u1()] + [random_universe(rng) for _ in range(20)]
    paths = mismatched = 0
    for u in universes:
        for x, X in u.sets.items():
            paths += 1
            s = path_limit(u, x)
            got = {((e,), s.leg_l(e), s.leg_r(e)) for e in s.apex.elements}
            mismatched += got != {((e,), e, e) for e in X.elements}
        for p in span_paths(u, 3):
            paths += 1
            mismatched += _canonical(u, p) != brute_limit(u, list(p))
    report(3, mismatched == 0, f"{paths} paths of length <= 3 over U1 and 20 random universes; "
                               f"{mismatched} disagreements")


# ---------------------------------------------------------------------------
# 4. Bim(Span) against categories, functors, profunctors, natural families

GRAPHS = [
    ("one loop", [0], {"i": (0, 0)}),
    ("two loops", [0], {"i": (0, 0), "a": (0, 0)}),
    ("arrow", [0, 1], {"i0": (0, 0), "i1": (1, 1), "a": (0, 1)}),
    ("arrow with loop", [0, 1], {"i0": (0, 0), "i1": (1, 1), "e": (0, 0), "a": (0, 1)}),
    ("parallel pair", [0, 1], {"i0": (0, 0), "i1": (1, 1), "a": (0, 1), "b": (0, 1)}),
    ("chain", [0, 1, 2], {"i0": (0, 0), "i1": (1, 1), "i2": (2, 2), "a": (0, 1), "b": (1, 2), "c": (0, 2)}),
    ("two-way", [0, 1, 2], {"i0": (0, 0), "i1": (1, 1), "i2": (2, 2), "a": (0, 1), "b": (1, 0), "c": (1, 2)}),
]

IDEMPOTENT = FinCategory.monoid("idem", ["1", "p"], {("1", "1"): "1", ("1", "p"): "p", ("p", "1"): "p",
                                                     ("p", "p"): "p"}, "1")
PARALLEL = FinCategory("par", (0, 1), {"1_0": (0, 0), "1_1": (1, 1), "a": (0, 1), "b": (0, 1)},
                       {0: "1_0", 1: "1_1"},
                       {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1", ("a", "1_0"): "a", ("b", "1_0"): "b",
                        ("1_1", "a"): "a", ("1_1", "b"): "b"})
CHAIN3 = FinCategory.preorder("chain3", [0, 1, 2], lambda a, b: a <= b)
CATS = [FinCategory.discrete("disc", [0, 1]), ARROW, Z2, IDEMPOTENT, PARALLEL, CHAIN3]


def _monads_vs_categories():
    rows = []
    for label, obs, mors in GRAPHS:
        names = list(mors)
        u = SpanUniverse.build({"X": obs}, {}, {"G": ("X", "X", names, [mors[f][0] for f in names],
                                                        [mors[f][1] for f in names])})
        V = span_fc(u)
        got = {_freeze(monad_to_cat(T, V)) for T in bim_oracle(V).objects()}
        want = {(tuple(sorted(ids.items())), tuple(sorted(comp.items()))) for ids, comp in brute_categories(obs, mors)}
        rows.append((f"monads on {label}", len(got), len(want), got == want))
    return rows


def _freeze(C):
    return tuple(sorted(C.identities.items())), tuple(sorted(C.composition.items()))


def _pair_oracle(C, D, profunctors=()):
    cats = [C] if C is D else [C, D]
    V = span_fc(category_universe(cats, profunctors, all_object_maps=True))
    S, T = cat_to_monad(C, V), cat_to_monad(D, V)
    return V, S, T, bim_oracle(V, [S.t, T.t])


def _maps_vs_functors():
    rows = []
    for C, D in [(ARROW, ARROW), (ARROW, Z2), (Z2, ARROW), (Z2, Z2), (PARALLEL, ARROW), (ARROW, PARALLEL),
                 (CHAIN3, ARROW), (ARROW, CHAIN3), (IDEMPOTENT, Z2), (Z2, IDEMPOTENT)]:
        V, S, T, B = _pair_oracle(C, D)
        got = len(B.verticals(S, T))
        want = len(brute_functors(C, D))
        rows.append((f"maps {C.name}->{D.name}", got, want, got == want))
    return rows


def _elements_over(C, D, per_pair):
    return {f"e{c}{d}{k}": (c, d) for c in C.objects for d in D.objects for k in range(per_pair)}


def _bimodules_vs_profunctors():
    rows = []
    for C, D, per in [(ARROW, ARROW, 1), (ARROW, Z2, 1), (Z2, Z2, 2), (IDEMPOTENT, IDEMPOTENT, 2),
                      (FinCategory.discrete("disc", [0, 1]), ARROW, 1), (Z2, ARROW, 1)]:
        P = Profunctor("P", C, D, _elements_over(C, D, per), {}, {})
        V, S, T, B = _pair_oracle(C, D, [P])
        got = sum(1 for h in B.horizontals(S, T) if h.name.m.name == "P")
        want = len(brute_profunctors(C, D, P.elements))
        rows.append((f"bimodules {C.name}->{D.name} on {len(P.elements)} elements", got, want, got == want))
    return rows


def _cells_vs_natural_families():
    rows = []
    for C in (ARROW, Z2, IDEMPOTENT, CHAIN3):
        P = Profunctor.hom(C)
        V = span_fc(category_universe([C], [P], all_object_maps=True))
        S = cat_to_monad(C, V)
        M = profunctor_to_bimodule(P, V, S, S)
        h = Hor(M, S, S)
        B = bim_oracle(V, [S.t])
        functors = [FinFunctor(f"F{i}", C, C, ob, mor) for i, (ob, mor) in enumerate(brute_functors(C, C))]
        maps = {F.name: Vert(functor_to_monad_map(F, V), S, S) for F in functors}
        got = want = 0
        for F, G in itertools.product(functors, repeat=2):
            for n in range(3):
                path = Path((h,) * n, S)
                got += len(B.cells(Frame(path, maps[F.name], maps[G.name], h)))
                want += brute_natural_families([P] * n, P, F, G, anchor=C)
        rows.append((f"cells over hom({C.name}), {len(functors)}^2 functor pairs", got, want, got == want))
    return rows


def test_bim_span_correspondence(report):
    rows = _monads_vs_categories() + _maps_vs_functors() + _bimodules_vs_profunctors() + _cells_vs_natural_families()
    bad = [r for r in rows if not r[3]]
    with_counts = "; ".join(f"{label} {got}={want}" for label, got, want, _ in rows[:3])
    report(4, not bad, f"{len(rows)} comparisons, {len(bad)} mismatched ({with_counts}; ...)"
                       + (f" first mismatch: {bad[0]}" if bad else ""))


# ---------------------------------------------------------------------------
# 5. partial bijections


def _relational(p, q):
    return {(x, z) for x, y in p for y2, z in q if y == y2}


def test_parbjn_closure_and_totality(report):
    pairs = bad = 0
    for nx, ny, nz in itertools.product(range(5), repeat=3):
        X, Y, Z = list(range(nx)), list(range(ny)), list(range(nz))
        ps, qs = partial_bijections(X, Y), partial_bijections(Y, Z)
        spans = {}
        for i, p in enumerate(ps):
            spans[f"p{i}"] = ("X", "Y", list(range(len(p))), [a for a, _ in p], [b for _, b in p])
        for j, q in enumerate(qs):
            spans[f"q{j}"] = ("Y", "Z", list(range(len(q))), [a for a, _ in q], [b for _, b in q])
        u = SpanUniverse.build({"X": X, "Y": Y, "Z": Z}, {}, spans)
        for (i, p), (j, q) in itertools.product(enumerate(ps), enumerate(qs)):
            s = path_limit(u, [f"p{i}", f"q{j}"])
            pairs += 1
            graph = {(s.leg_l(e), s.leg_r(e)) for e in s.apex.elements}
            bad += not s.is_partial_bijection() or graph != _relational(p, q) or len(graph) != len(s.apex)
    families = parbjn_suite()
    failed = sum(not check_enriched(V, C).passed for V, C in families)
    ok = bad == 0 and failed == 0 and len(families) == 200
    report(5, ok, f"{pairs} composable pairs over sets of size <= 4, {bad} not partial bijections; "
                  f"{len(families)} seeded subset families, {failed} failed check_enriched")


@functools.cache
def parbjn_suite():
    rng = random.Random(SEED)
    out = []
    for _ in range(200):
        S = list(range(rng.randint(0, 6)))
        fam = {f"C{i}": [x for x in S if rng.random() < 0.5] for i in range(rng.randint(0, 4))}
        out.append(parbjn_from_subsets(S, fam))
    return tuple(out)


# ---------------------------------------------------------------------------
# 6. enrichment characterizations

V2 = monoidal_fc(v2_presentation())
SETS = monoidal_fc(CartesianSkeleton(3), validate=False)


@functools.cache
def v2_suite():
    """(objects, relation, enriched categories found) for every relation on at most 3 objects."""
    out = []
    for k in range(4):
        obs = list(range(k))
        pairs = list(itertools.product(obs, repeat=2))
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            rel = {p for p, b in zip(pairs, bits) if b}
            homs = {p: V2.hor(int(p in rel)) for p in pairs}
            found = list(enumerate_enriched(V2, obs, {a: V2.objects()[0] for a in obs}, homs))
            out.append((obs, frozenset(rel), tuple(found)))
    return tuple(out)


@functools.cache
def monoid_suite():
    """n -> one-object categories enriched in finite sets on the carrier of size n."""
    return {n: tuple(enumerate_enriched(SETS, ["*"], {"*": SETS.objects()[0]}, {("*", "*"): SETS.hor(n)}))
            for n in range(4)}


def test_enrichment_characterizations(report):
    relations = v2_suite()
    wrong = [(obs, sorted(rel)) for obs, rel, found in relations if len(found) != int(is_preorder(obs, rel))]
    preorders = sum(1 for _, _, f in relations if f)
    monoid_ok = True
    counts = []
    for n, found in monoid_suite().items():
        got = {(C.comp[("*", "*", "*")].id[2], C.ids["*"].id[2][0]) for C in found}
        want = brute_monoids(n)
        monoid_ok &= got == want and len(found) == len(want)
        counts.append(f"{len(found)}/{len(want)}")
    ok = not wrong and monoid_ok and len(relations) == 512 + 16 + 2 + 1
    report(6, ok, f"{len(relations)} relations on <= 3 objects, {preorders} enriched (= preorders), "
                  f"{len(wrong)} mismatches; monoids by carrier size 0..3: {' '.join(counts)}")


# ---------------------------------------------------------------------------
# 7. transfer into Bim


def test_transfer_soundness(report):
    suites = [(V, C) for V, C in parbjn_suite()]
    suites += [(V2, C) for _, _, found in v2_suite() for C in found]
    suites += [(SETS, C) for found in monoid_suite().values() for C in found]
    closure = failed = 0
    bims = {}
    for V, C in suites:
        # membership in Bim is decided by law checks, so no carriers need listing
        B = bims.setdefault(id(V), bim_oracle(V, []))
        try:
            D = enrich_to_bim(V, C, B)
            ok = check_enriched(B, D).passed and transferred_structures_report(V, D).passed
        except ClosureViolation:
            closure += 1
            ok = False
        failed += not ok
    report(7, failed == 0 and closure == 0,
           f"{len(suites)} enriched categories transferred; {failed} failed; {closure} ClosureViolation events")


# ---------------------------------------------------------------------------
# 8. determinism of machine reports


def _commands(path, name):
    if name in ("subsets", "empty-family", "v2-preorder"):
        return [["derive-bim", path], ["check", path]]
    if name in ("terminal", "v2", "cats"):
        return [["check", path], ["bim", path, "--max-arity", "1"]]
    return [["check", path]]


def _suite_digest(tmp_path, hashseed, parallel):
    env = {**os.environ, "FCMT_DEMO_DIR": str(tmp_path), "PYTHONHASHSEED": str(hashseed)}
    fcmt = [sys.executable, "-m", "fcmt.cli"]
    out = hashlib.sha256()
    for name in demo_names():
        path = subprocess.run(fcmt + ["demo", name], env=env, capture_output=True, text=True).stdout.strip()
        for cmd in _commands(path, name):
            args = fcmt + cmd + ["--format", "machine", "--seed", str(SEED), "--max-arity", "2"]
            if parallel:
                args.append("--parallel")
            res = subprocess.run(args, env=env, capture_output=True)
            out.update(f"{name} {' '.join(cmd[:1])} {res.returncode}\n".encode())
            out.update(res.stdout)
    return out.hexdigest()


def test_determinism(report, tmp_path):
    a = _suite_digest(tmp_path, 1, False)
    b = _suite_digest(tmp_path, 2, False)
    c = _suite_digest(tmp_path, 3, True)
    report(8, a == b == c, f"machine reports of {len(demo_names())} demos: run1 {a[:12]} run2 {b[:12]} "
                           f"parallel {c[:12]}")
