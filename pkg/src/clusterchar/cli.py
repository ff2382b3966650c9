"""Command-line front door.

Subcommands: mutate, enumerate, fpoly, qchar, grass, levels, verify, serve.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 computation
limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import os

from .cluster import LimitExceeded, build_c1_seed, enumerate_atlas, label_by_denominator
from .qchar import CapExceeded, frenkel_mukhin, parse_ymono, truncated_char_c1
from .roots import DynkinData


def parse_limits(text: str) -> dict:
    """Parse ``seeds=...,terms=...`` (also the CLUSTERCHAR_LIMITS variable)."""
    out = {}
    for chunk in (text or "").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, val = chunk.partition("=")
        if key not in ("seeds", "terms") or not val.isdigit():
            raise SystemExit(2)
        out[key] = int(val)
    return out


def effective_limits(args) -> dict:
    limits = {"seeds": 10 ** 5, "terms": 10 ** 6}
    limits.update(parse_limits(os.environ.get("CLUSTERCHAR_LIMITS", "")))
    limits.update(parse_limits(getattr(args, "limits", "") or ""))
    if getattr(args, "max_seeds", None) is not None:
        limits["seeds"] = args.max_seeds
    if getattr(args, "max_terms", None) is not None:
        limits["terms"] = args.max_terms
    return limits


def _dynkin(args) -> DynkinData:
    I0 = None
    if getattr(args, "I0", None):
        I0 = {int(x) for x in args.I0.split(",")}
    return DynkinData.make(args.type, I0=I0)


def _root(text):
    return tuple(int(x) for x in text.split(","))


def cmd_mutate(args) -> int:
    d = _dynkin(args)
    seed = build_c1_seed(d)
    applied = []
    for k in (int(x) for x in args.sequence.split(",") if x):
        seed, event = seed.mutate(k)
        applied.append({"k": k, "new_variable": event[1].text()})
    out = {"type": d.name(), "applied": applied,
           "seed": seed.to_json() if args.json else None,
           "variables": [p.text() for p in seed.variables]}
    print(json.dumps(out, indent=None if args.json else 2, sort_keys=True))
    return 0


def cmd_enumerate(args) -> int:
    d = _dynkin(args)
    if args.ell == 1:
        seed = build_c1_seed(d)
    else:
        from .levels import build_gamma_ell_seed

        seed, _ = build_gamma_ell_seed(d, args.ell)
    limits = effective_limits(args)
    atlas = enumerate_atlas(seed, max_seeds=limits["seeds"],
                            max_terms=limits["terms"])
    report = {"type": d.name(), "ell": args.ell,
              "clusters": atlas.n_clusters(),
              "variables": atlas.n_variables(),
              "frozen": len(atlas.frozen)}
    if args.ell == 1:
        label_by_denominator(atlas, d)
        report["labels"] = sorted(list(l) for l in atlas.by_label)
    if args.dump:
        with open(args.dump, "w") as fh:
            report["dumped_seeds"] = atlas.dump_jsonl(fh)
    print(json.dumps(report) if args.json else json.dumps(report, indent=2))
    return 0


def cmd_fpoly(args) -> int:
    from .fpoly import f_poly_combinatorial, f_poly_principal
    from .grass import geometric_fpoly

    d = _dynkin(args)
    alpha = _root(args.root)
    routes = {}
    if args.route in ("principal", "both", "all"):
        routes["principal"] = f_poly_principal(alpha, d)
    if args.route in ("combinatorial", "both", "all"):
        routes["combinatorial"] = f_poly_combinatorial(alpha, d)
    if args.route == "all":
        routes["geometric"] = geometric_fpoly(alpha, d)
    texts = {}
    for name, fp in routes.items():
        terms = []
        for e, c in sorted(fp.items()):
            mono = "*".join(f"v{i + 1}^{x}" if x > 1 else f"v{i + 1}"
                            for i, x in enumerate(e) if x)
            terms.append((f"{c}*{mono}" if c != 1 else mono) if mono else str(c))
        texts[name] = " + ".join(terms)
    match = len({json.dumps(sorted((list(k), v) for k, v in fp.items()))
                 for fp in routes.values()}) == 1
    out = {"type": d.name(), "root": list(alpha), "routes": texts,
           "match": match, "terms": len(next(iter(routes.values())))}
    print(json.dumps(out) if args.json else json.dumps(out, indent=2))
    return 0 if match else 1


def cmd_qchar(args) -> int:
    d = _dynkin(args)
    m = parse_ymono(args.mono)
    if args.action == "drinfeld":
        from .qchar import drinfeld_polynomials

        roots = drinfeld_polynomials(m)
        out = {"mono": args.mono,
               "drinfeld": {str(i): [f"q^{r}" for r in rs]
                            for i, rs in sorted(roots.items())}}
        print(json.dumps(out) if args.json else json.dumps(out, indent=2))
        return 0
    if args.action == "fm":
        char = frenkel_mukhin(m, d, cap=args.cap)
    else:
        char = truncated_char_c1(m, d)
    if args.truncate == 2:
        char = char.truncate("le2")
    out = {"type": d.name(), "mono": args.mono,
           "dimension": char.dimension(),
           "monomials": len(char.terms),
           "character": char.to_json() if args.json else None,
           "polynomial": char.flatten().text()}
    print(json.dumps(out) if args.json else json.dumps(out, indent=2))
    return 0


def cmd_grass(args) -> int:
    from .grass import euler_characteristic, indecomposable_rep

    d = _dynkin(args)
    alpha = _root(args.root)
    builder = lambda p: indecomposable_rep(alpha, d, p)
    probe = builder(2)
    import itertools as it

    table = []
    for gamma in it.product(*[range(x + 1) for x in probe.dims]):
        gc = euler_characteristic(builder, gamma)
        if gc.euler:
            table.append({"gamma": list(gamma), "chi": gc.euler,
                          "counts": list(gc.counts)})
    out = {"type": d.name(), "root": list(alpha), "nonempty": len(table),
           "table": table}
    print(json.dumps(out) if args.json else json.dumps(out, indent=2))
    return 0


def cmd_levels(args) -> int:
    from .levels import (
        build_gamma_ell_seed,
        grassmannian_check,
        level_atlas,
        level_dimension_multiset,
        verify_initial_tsystem,
    )

    if args.action == "grass36":
        report = grassmannian_check()
        print(json.dumps(report) if args.json else json.dumps(report, indent=2))
        return 0 if report["ok"] else 1
    d = _dynkin(args)
    if args.action == "seed":
        seed, labels = build_gamma_ell_seed(d, args.ell)
        out = {"type": d.name(), "ell": args.ell,
               "matrix": [list(r) for r in seed.matrix],
               "labels": {f"{i},{k}": list(v)
                          for (i, k), v in sorted(labels.items())}}
    elif args.action == "tsystem":
        ok = verify_initial_tsystem(d, args.ell)
        out = {"type": d.name(), "ell": args.ell, "tsystem": ok}
        print(json.dumps(out))
        return 0 if ok else 1
    elif args.action == "dims":
        atlas = level_atlas(d, args.ell)
        dims, frozen = level_dimension_multiset(d, args.ell, atlas)
        out = {"type": d.name(), "ell": args.ell,
               "clusters": atlas.n_clusters(),
               "variables": atlas.n_variables(),
               "dimensions": dims, "frozen_dimensions": frozen}
    else:
        raise SystemExit(2)
    print(json.dumps(out) if args.json else json.dumps(out, indent=2))
    return 0


def cmd_verify(args) -> int:
    from .verify import (
        etype_multfree_identities,
        periodic_tsystem_verify,
        two_restricted_check,
        verify_conjecture_c1,
    )

    d = _dynkin(args)
    reports = []
    if args.what in ("all", "c1"):
        if d.letter == "E":
            reports.append(etype_multfree_identities(d))
        else:
            reports.append(verify_conjecture_c1(d))
    if args.what in ("all", "tsystem") and d.letter != "E":
        reports.append(periodic_tsystem_verify(d))
    if args.what == "two-restricted":
        from .roots import positive_roots

        for gamma in positive_roots(d):
            reports.append(two_restricted_check(gamma, d))
    payload = [r.to_json() for r in reports]
    if args.json:
        print(json.dumps(payload))
    else:
        for r in payload:
            print(f"{r['check']}: {r['status']}"
                  + (f"  ({r['witness']})" if r["witness"] else ""))
    return 0 if all(r["status"] in ("pass", "skipped") for r in payload) else 1


def cmd_serve(args) -> int:
    from .server import serve

    server = serve(port=args.port, static_dir=args.static)
    print(f"serving on http://127.0.0.1:{args.port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="clusterchar",
        description="Exact cluster-algebra / q-character engine")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, ell=False):
        p.add_argument("--type", default="A3")
        p.add_argument("--I0", default=None,
                       help="comma-separated bipartition part, e.g. 1,3")
        p.add_argument("--json", action="store_true")
        if ell:
            p.add_argument("--ell", type=int, default=1)

    p = sub.add_parser("mutate", help="apply a mutation sequence")
    common(p)
    p.add_argument("--sequence", default="", help="e.g. 1,2,1")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("enumerate", help="finite-type atlas")
    common(p, ell=True)
    p.add_argument("--max-seeds", type=int, default=None)
    p.add_argument("--max-terms", type=int, default=None)
    p.add_argument("--limits", default=None,
                   help="seeds=...,terms=... (or CLUSTERCHAR_LIMITS env)")
    p.add_argument("--dump", default=None,
                   help="write the atlas as JSON lines to this file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fpoly", help="F-polynomials by several routes")
    common(p)
    p.add_argument("--root", required=True, help="e.g. 1,2,1,1")
    p.add_argument("--route", default="both",
                   choices=["principal", "combinatorial", "both", "all"])
    p.set_defaults(func=cmd_fpoly)

    p = sub.add_parser("qchar", help="q-character computations")
    common(p)
    p.add_argument("action", choices=["fm", "truncated", "drinfeld"])
    p.add_argument("--mono", required=True, help='e.g. "Y[1,0]^2 Y[2,3]"')
    p.add_argument("--truncate", type=int, default=None, choices=[2])
    p.add_argument("--cap", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_qchar)

    p = sub.add_parser("grass", help="quiver grassmannian Euler table")
    common(p)
    p.add_argument("action", choices=["euler"])
    p.add_argument("--root", required=True)
    p.set_defaults(func=cmd_grass)

    p = sub.add_parser("levels", help="general-level machinery")
    common(p, ell=True)
    p.add_argument("action", choices=["seed", "tsystem", "dims", "grass36"])
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("verify", help="verification pipelines")
    common(p)
    p.add_argument("what", choices=["all", "c1", "tsystem", "two-restricted"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="JSON API server")
    p.add_argument("--port", type=int, default=8630)
    p.add_argument("--static", default=None,
                   help="directory with the web UI bundle")
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (LimitExceeded, CapExceeded) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
