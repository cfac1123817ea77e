"""Command-line front end.

Exit codes: 0 success, 2 usage errors (argparse's own convention), 3 size-cap
violations, 4 internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis
from .buchstaber import DEFAULT_SEARCH_BUDGET, buchstaber_report
from .census import SCHEMA_VERSION, run_census, write_jsonl
from .errors import InvariantViolation, MuraiError, SizeCapError
from .multicomplex import DEFAULT_GRID_CAP, CompositionVector, Multicomplex
from .simplicial import DEFAULT_ISO_CAP, facets_text
from .spheres import facet_set, sr_ideal

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SIZE_CAP = 3
EXIT_INVARIANT = 4


def _add_common(p: argparse.ArgumentParser, gens: bool = True):
    p.add_argument("--c", required=True, metavar="C",
                   help="composition vector, e.g. \"2,1\"")
    if gens:
        p.add_argument("--gens", required=True, metavar="G",
                       help="generators, semicolon-separated exponent tuples, e.g. \"2 0; 1 1\"")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-grid", type=int, default=DEFAULT_GRID_CAP,
                   help="cap on grid cells (default %(default)s)")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_ISO_CAP,
                   help="cap on real vertices for search operations (default %(default)s)")
    p.add_argument("--search-budget", type=int, default=DEFAULT_SEARCH_BUDGET,
                   help="node budget for characteristic-map searches (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="murai",
        description="Generalized Bier spheres from multicomplexes: "
                    "constructions, invariants, censuses.")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("dual", help="Alexander dual generators"))
    _add_common(sub.add_parser("facets", help="facets of the sphere"))
    _add_common(sub.add_parser("srideal", help="minimal non-faces via the polarized ideal"))
    p = sub.add_parser("check", help="sphere certificate and invariant report")
    _add_common(p)
    p.add_argument("--all", action="store_true",
                   help="include the Buchstaber report (search-based fields)")
    _add_common(sub.add_parser("buchstaber", help="Buchstaber number report"))
    p = sub.add_parser("cyclic-compare", help="compare against a cyclic polytope boundary")
    _add_common(p)
    p.add_argument("--p", type=int, required=True, help="cyclic polytope vertex count")
    p.add_argument("--q", type=int, required=True, help="cyclic polytope dimension")
    p = sub.add_parser("census", help="enumerate every proper multicomplex and classify")
    _add_common(p, gens=False)
    p.add_argument("--out", metavar="PATH", help="write one JSON record per line here")
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("MURAI_JOBS", "1")),
                   help="worker processes (default: MURAI_JOBS or 1)")
    p.add_argument("--invariants", choices=("full", "basic"), default="full",
                   help="'basic' skips the characteristic-map searches")
    return ap


def _load(args) -> Multicomplex:
    c = CompositionVector.parse(args.c)
    if c.cells > args.max_grid:
        raise SizeCapError(f"grid has {c.cells} cells, cap is {args.max_grid}")
    return Multicomplex.parse(c, args.gens)


def cmd_dual(args, out) -> int:
    M = _load(args)
    dual = M.alexander_dual()
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, "c": list(M.c.entries),
                          "gens": M.generators_text(),
                          "dual_gens": dual.generators_text()},
                         separators=(",", ":")), file=out)
    else:
        print(dual.generators_text(), file=out)
    return EXIT_OK


def cmd_facets(args, out) -> int:
    M = _load(args)
    K = facet_set(M)
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, "c": list(M.c.entries),
                          "gens": M.generators_text(),
                          "facets": facets_text(K),
                          "f_vector": list(K.f_vector)},
                         separators=(",", ":")), file=out)
    else:
        print(f"{len(K.facet_masks)} facets, f-vector {K.f_vector}", file=out)
        print(facets_text(K), file=out)
    return EXIT_OK


def cmd_srideal(args, out) -> int:
    M = _load(args)
    gens = sr_ideal(M)
    text = "|".join(",".join(str(v) for v in g) for g in gens)
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, "c": list(M.c.entries),
                          "gens": M.generators_text(),
                          "minimal_non_faces": text}, separators=(",", ":")),
              file=out)
    else:
        print(text, file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    from .census import compute_record
    M = _load(args)
    rec = compute_record(M, "full" if args.all else "basic", args.search_budget)
    if args.json:
        print(rec.to_json(), file=out)
        return EXIT_OK
    mark = lambda b: "ok" if b else "FAIL"
    print(f"sphere: {mark(rec.sphere_ok)} ({rec.sphere_check} check), "
          f"f-vector {rec.f_vector}, euler {rec.euler}", file=out)
    print(f"pseudomanifold: {mark(rec.pseudomanifold)}", file=out)
    chord = "chordal" if rec.chordal else f"not chordal (witness {rec.chordless_witness})"
    print(chord, file=out)
    if rec.stacked:
        print(f"stacked: yes, k={rec.truncation_cuts} vertex cuts of Delta^{rec.base_dim}",
              file=out)
    else:
        print("stacked: no", file=out)
    print(f"neighborly: {rec.neighborly}; flag: {rec.flag}; "
          f"chromatic: {rec.chromatic}", file=out)
    if rec.sphere_check == "partial":
        # optional extra certificate above dimension 2
        from .analysis import shellability_witness
        from .errors import TooLargeError
        try:
            order = shellability_witness(facet_set(M))
            extra = "witness found" if order is not None else "no witness found"
        except TooLargeError:
            extra = "unchecked (facet cap)"
        print(f"shellability: {extra}", file=out)
    if args.all and rec.buchstaber:
        print("buchstaber: " + json.dumps(rec.buchstaber), file=out)
    return EXIT_OK


def cmd_buchstaber(args, out) -> int:
    M = _load(args)
    K = facet_set(M)
    rep = buchstaber_report(K, M.c, budget=args.search_budget)
    if args.json:
        print(json.dumps({"v": SCHEMA_VERSION, "c": list(M.c.entries),
                          "gens": M.generators_text(),
                          "buchstaber": rep.to_json_dict()}, separators=(",", ":")),
              file=out)
    else:
        d = rep.to_json_dict()
        print(f"f0={d['f0']} n={d['n']} chromatic={d['chromatic']}", file=out)
        print(f"bounds: chromatic {d['chromatic_lower']} <= canonical "
              f"{d['canonical_lower']} <= s <= {d['s_upper']}", file=out)
        print(f"s2={d['s2']} ({d['s2_status']}); s={d['s']} ({d['s_status']})", file=out)
    return EXIT_OK


def cmd_cyclic_compare(args, out) -> int:
    M = _load(args)
    K = facet_set(M)
    spec = analysis.CyclicSpec(args.p, args.q)
    mapping = analysis.cyclic_compare(K, spec)
    if args.json:
        doc = {"v": SCHEMA_VERSION, "c": list(M.c.entries), "gens": M.generators_text(),
               "p": args.p, "q": args.q,
               "isomorphic": mapping is not None,
               "map": ({str(k): v for k, v in mapping.items()} if mapping else None)}
        print(json.dumps(doc, separators=(",", ":")), file=out)
    else:
        if mapping is None:
            print(f"not isomorphic to Delta({args.p},{args.q})", file=out)
        else:
            pairs = " ".join(f"{k}->t{v}" for k, v in sorted(mapping.items()))
            print(f"isomorphic to Delta({args.p},{args.q}): {pairs}", file=out)
    return EXIT_OK


def cmd_census(args, out) -> int:
    c = CompositionVector.parse(args.c)
    if c.cells > args.max_grid:
        raise SizeCapError(f"grid has {c.cells} cells, cap is {args.max_grid}")
    summary = run_census(c, invariants=args.invariants, jobs=max(1, args.jobs),
                         max_grid=args.max_grid, search_budget=args.search_budget,
                         iso_cap=args.max_vertices)
    if args.out:
        write_jsonl(summary.records, args.out)
    if args.json:
        doc = {"v": SCHEMA_VERSION, "c": list(summary.c),
               "count": len(summary.records),
               "classes": [{"id": i, "name": summary.class_names[i],
                            "count": summary.class_counts[i],
                            "rep_gens": summary.records[summary.class_reps[i]].gens}
                           for i in range(len(summary.class_reps))]}
        print(json.dumps(doc, separators=(",", ":")), file=out)
    else:
        for line in summary.lines():
            print(line, file=out)
    return EXIT_OK


_COMMANDS = {
    "dual": cmd_dual,
    "facets": cmd_facets,
    "srideal": cmd_srideal,
    "check": cmd_check,
    "buchstaber": cmd_buchstaber,
    "cyclic-compare": cmd_cyclic_compare,
    "census": cmd_census,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except MuraiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
