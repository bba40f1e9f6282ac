"""Command-line entry point: ``motivic-a2 {may,ext,mmf,render} ...``.

The exit code is 0 exactly when every requested verification passes.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from . import charts, mmf
from .may import MonomialIndex, builtin_page, check_well_defined, compare_presentation, page_homology, slice_basis

# page name -> (page whose homology is taken, presentation it must match)
_MAY_STEPS = {"e2": ("gr-dga", "E2"), "e4": ("E2", "E4"), "einf": ("E4", "Einf")}


def _report(name: str, ok: bool, detail: str = "") -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}{': ' + detail if detail else ''}")
    return ok


def cmd_may(args: argparse.Namespace) -> int:
    source, target = _MAY_STEPS[args.page]
    alg, _ = builtin_page(target)
    if not args.verify:
        index = MonomialIndex(alg, args.max_m, args.max_stem)
        for key in sorted(index.groups, key=lambda k: (k[1], k[2], k[0])):
            dec = slice_basis(alg, *key, index=index).decomposition
            if not dec.is_zero:
                print(f"(m,s,f)={key}: {dec}")
        return 0
    prev, d = builtin_page(source)
    ok = True
    if d is not None and source != "gr-dga":
        rep = check_well_defined(prev, d)
        ok &= _report(f"d on {source} respects the relations", rep.ok, f"{len(rep.failures)} failures")
    t0 = time.perf_counter()
    pages = page_homology(prev, d, args.max_stem, args.max_m)
    rep = compare_presentation(pages, alg, args.max_stem, args.max_m)
    detail = f"{rep.slices} slices, {len(rep.mismatches)} mismatches, {time.perf_counter() - t0:.1f}s"
    ok &= _report(f"homology of {source} matches {target} (s <= {args.max_stem}, m <= {args.max_m})",
                  rep.ok, detail)
    for m in rep.mismatches[:10]:
        print(f"  mismatch at {m.degree} weight {m.weight}: computed {m.computed}, expected {m.expected}")
    return 0 if ok else 1


def cmd_ext(args: argparse.Namespace) -> int:
    from .ring import HIDDEN_EXTENSIONS, MASSEY_DEFINITIONS, MASSEY_PRODUCTS, MULTIPLICATION_TABLE, RELATIONS, ExtRing

    ring = ExtRing.compute(args.max_stem + args.max_filt + 1, args.max_filt)
    ext = ring.ext
    for s in range(args.max_stem + 1):
        for f in range(args.max_filt + 1):
            if ext.in_range(s, f):
                m = ext.module(s, f)
                if not m.is_zero:
                    print(f"({s},{f}): {m}")
    if args.chart:
        Path(args.chart).write_text(charts.serialize(charts.from_ext(ext, args.max_stem, args.max_filt)))
    ok = True
    if args.verify_relations:
        checks = [r for group in RELATIONS.values() for r in group]
        checks += [f"{a} {b} = {v}" for a, b, v in MULTIPLICATION_TABLE]
        fails = skipped = 0
        for rel in checks:
            if not ring.fits(rel):
                skipped += 1
                continue
            if not ring.verify_relation(rel):
                fails += 1
                print(f"  relation fails: {rel}")
        ok &= _report("relations and products", fails == 0, f"{len(checks) - skipped} checked, {skipped} out of range")
        fails = checked = 0
        for label, rel, expected in HIDDEN_EXTENSIONS:
            if ring.fits(rel):
                checked += 1
                if bool(ring.verify_relation(rel)) != expected:
                    fails += 1
                    print(f"  hidden extension ({label}) wrong: {rel} expected {expected}")
        ok &= _report("hidden extensions", fails == 0, f"{checked} checked")
    if args.massey:
        fails = checked = 0
        for a, b, c, want in MASSEY_PRODUCTS:
            try:
                chk = ring.check_massey(a, b, c, want)
            except Exception as e:  # out of range or undefined bracket
                print(f"  <{a}, {b}, {c}> skipped: {e}")
                continue
            checked += 1
            if not (chk.holds and chk.indeterminacy_dim == 0):
                fails += 1
                print(f"  <{a}, {b}, {c}> = {want} fails (indeterminacy {chk.indeterminacy_dim})")
        for name, (a, b, c) in MASSEY_DEFINITIONS.items():
            try:
                chk = ring.check_massey(a, b, c, name)
            except Exception as e:
                print(f"  <{a}, {b}, {c}> skipped: {e}")
                continue
            checked += 1
            if not (chk.holds and chk.indeterminacy_dim == 0):
                fails += 1
                print(f"  {name} = <{a}, {b}, {c}> fails")
        ok &= _report("Massey products", fails == 0 and checked > 0, f"{checked} checked")
    return 0 if ok else 1


def _load_chart(path: str | None) -> charts.ChartDocument:
    if path is None:
        return mmf.bundled_einf()
    return charts.parse(Path(path).read_text(encoding="utf-8"))


def cmd_mmf(args: argparse.Namespace) -> int:
    doc = _load_chart(args.input)
    doc.validate()
    if doc.diffs:
        doc = mmf.apply_differentials(doc)
    for c in doc.classes:
        mmf.AnssClass.from_chart(c)
    mmf.extensions(doc, styles=("solid", "dashed", "exotic"))
    stems = args.stem or sorted({c.s for c in doc.classes})
    for s in stems:
        print(mmf.classical_pi(doc, s) if args.classical else mmf.assemble_pi(doc, s))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    doc = _load_chart(args.input)
    window = None
    if args.stems or args.filts:
        window = charts.Window.around(doc, _range(args.stems), _range(args.filts))
    out = charts.render(doc, args.format, window, args.suppress, args.family)
    if args.out in (None, "-"):
        sys.stdout.write(out)
    else:
        Path(args.out).write_text(out, encoding="utf-8")
    return 0


def _range(text: str | None) -> tuple[int, int] | None:
    if not text:
        return None
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motivic-a2", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    may = sub.add_parser("may", help="May spectral sequence pages")
    may.add_argument("--page", choices=sorted(_MAY_STEPS), required=True)
    may.add_argument("--max-stem", type=int, default=40)
    may.add_argument("--max-m", type=int, default=40, help="largest May filtration")
    may.add_argument("--verify", action="store_true", help="recompute the page and compare")
    may.set_defaults(run=cmd_may)

    ext = sub.add_parser("ext", help="Ext over A(2) from a minimal resolution")
    ext.add_argument("--max-stem", type=int, default=40)
    ext.add_argument("--max-filt", type=int, default=10)
    ext.add_argument("--verify-relations", action="store_true")
    ext.add_argument("--massey", action="store_true")
    ext.add_argument("--chart", help="write the chart in text format to this file")
    ext.set_defaults(run=cmd_ext)

    m = sub.add_parser("mmf", help="homotopy of mmf from chart data")
    m.add_argument("--input", help="chart file (default: the bundled E-infinity transcription)")
    m.add_argument("--stem", type=int, action="append", help="stem to assemble (repeatable)")
    m.add_argument("--classical", action="store_true", help="invert tau first")
    m.set_defaults(run=cmd_mmf)

    r = sub.add_parser("render", help="render a chart file")
    r.add_argument("--input", help="chart file (default: the bundled mmf chart)")
    r.add_argument("--format", choices=("svg", "ascii"), default="svg")
    r.add_argument("--out", help="output file (default: stdout)")
    r.add_argument("--family", choices=charts.FAMILIES, default="ext")
    r.add_argument("--suppress", action="append", default=[], help="hide classes with this tag")
    r.add_argument("--stems", help="stem range lo:hi")
    r.add_argument("--filts", help="filtration range lo:hi")
    r.set_defaults(run=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    run: Callable[[argparse.Namespace], int] = args.run
    try:
        return run(args)
    except (ValueError, LookupError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
