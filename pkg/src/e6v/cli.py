"""Command line front end: ``e6v verify|twist|form|sw|graph|group|export``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

log = logging.getLogger("e6v")

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _int_list(s: str, name: str) -> list[int]:
    try:
        vals = [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated integers, got {s!r}")
    if not vals:
        raise UsageError(f"{name}: empty list")
    return vals


# --- verify -------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    from . import checks

    names = list(args.check or [])
    for n in args.names:
        if n == "all":
            names += checks.check_names()
        else:
            names.append(n)
    if not names:
        names = checks.check_names()
    unknown = [n for n in names if n not in checks.REGISTRY]
    if unknown:
        raise UsageError(
            f"unknown check(s): {', '.join(unknown)}\nvalid checks: {', '.join(checks.check_names())}"
        )
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    names = list(dict.fromkeys(names))
    ctx = checks.Context(trials=args.trials, seed=args.rng_seed)
    results = []
    for n in names:
        log.info("running %s", n)
        results.append(checks.run_check(n, ctx))
    ok = all(r.passed for r in results)

    if args.json:
        doc = {
            "schema": "e6v.verify/1",
            "trials": args.trials,
            "seed": args.rng_seed,
            "passed": ok,
            "results": [r.record() for r in results],
        }
        if not args.no_timing:
            doc["timing"] = {r.check: round(r.duration, 4) for r in results}
        sys.stdout.write(_dump(doc))
    else:
        width = max(len(n) for n in names)
        for r in results:
            status = _color("PASS", "32", sys.stdout) if r.passed else _color("FAIL", "31", sys.stdout)
            timing = "" if args.no_timing else f"  {r.duration:7.2f}s"
            print(f"{r.check:<{width}}  {status}{timing}")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


# --- twist --------------------------------------------------------------------------------

TWIST_FORMS = ("q4", "q5", "q6", "q7", "q27", "q45")


def _form_record(f):
    from .qforms import witt_invariants

    return {"entries": list(f.entries), "invariants": witt_invariants(f).as_dict()}


def cmd_twist(args) -> int:
    from . import qforms, twisting

    classes = _int_list(args.classes, "--classes")
    if len(classes) != 4 or 0 in classes:
        raise UsageError("--classes needs four nonzero integers")
    t = twisting.TwistSpec(tuple(classes))
    fam = twisting.build_twisted_family(t)
    form = getattr(fam, args.form)
    doc = {"schema": "e6v.twist/1", "classes": list(t.classes), "form": args.form, "value": _form_record(form)}
    ok = True
    if args.compare:
        if args.form == "q4":
            other = qforms.diag(*t.classes)
            rep = twisting.VerificationReport("Q4_FIXED_SPACE", form, other, qforms.is_isometric(form, other), t)
        else:
            rep = twisting.verify_identity(twisting.COMPARISONS[args.form], t, fam)
        doc["comparison"] = rep.as_dict()
        ok = rep.verdict
    if args.json:
        sys.stdout.write(_dump(doc))
    else:
        print(f"{args.form} twisted by {t.classes}: {form}")
        print(f"  invariants: {qforms.witt_invariants(form)}")
        if args.compare:
            c = doc["comparison"]
            print(f"  identity {c['identity']}")
            print(f"  left : <{','.join(map(str, c['left']))}>")
            if c["right"] is not None:
                print(f"  right: <{','.join(map(str, c['right']))}>")
            print(f"  left invariants : {c['left_invariants']}")
            print(f"  right invariants: {c['right_invariants']}")
            print("  verdict:", _color("isometric", "32", sys.stdout) if ok else _color("NOT isometric", "31", sys.stdout))
    return 0 if ok else 1


# --- form ---------------------------------------------------------------------------------

def cmd_form(args) -> int:
    from . import qforms

    entries = _int_list(args.diag, "--diag")
    if 0 in entries:
        raise UsageError("--diag entries must be nonzero")
    f = qforms.DiagonalForm(tuple(entries))
    inv = qforms.witt_invariants(f)
    iso = qforms.is_isotropic(f)
    if args.json:
        doc = {"schema": "e6v.form/1", "entries": list(f.entries), "invariants": inv.as_dict(), "isotropic": iso}
        sys.stdout.write(_dump(doc))
    else:
        print(f"form       {f}")
        print(f"rank       {inv.rank}")
        print(f"disc       {inv.disc}")
        print(f"signature  {inv.signature}")
        for p, h in sorted(inv.hasse.items(), key=lambda kv: (kv[0] != qforms.INF, str(kv[0]))):
            print(f"hasse[{p}]  {h:+d}")
        print(f"isotropic  {iso}")
    return 0


# --- sw -----------------------------------------------------------------------------------

def cmd_sw(args) -> int:
    from . import sw

    if (args.m is None) == (args.gset is None):
        raise UsageError("give exactly one of --m or --gset")
    if args.kahn and args.gset is None:
        raise UsageError("--kahn needs --gset")
    if args.m is not None:
        m = _int_list(args.m, "--m")
        if len(m) != 4 or min(m) < 0:
            raise UsageError("--m needs four nonnegative integers")
        mv = sw.MVector(tuple(m))
    else:
        mv = sw.m_values(sw.GSETS[args.gset]())
    try:
        ps = sw.solve_p(mv)
    except sw.DivisibilityError as exc:
        print(f"not divisible: {exc} (congruences hold: {mv.congruences_hold()})", file=sys.stderr)
        return 1
    w = sw.inv_from_polys(ps)
    pieces = w.graded_pieces()
    doc = {
        "schema": "e6v.sw/1",
        "m": list(mv.m),
        "congruences": mv.congruences_hold(),
        "p": [p.coefficients() for p in ps],
        "total": str(w),
        "graded": [{"degree": n, "class": str(p)} for n, p in pieces.items()],
    }
    if args.kahn:
        k = sw.kahn_trace_class(sw.GSETS[args.gset]())
        doc["trace_form"] = {
            "total": str(k),
            "graded": [{"degree": n, "class": str(p)} for n, p in k.graded_pieces().items()],
        }
    if args.json:
        sys.stdout.write(_dump(doc))
    else:
        print(f"m = {mv.m}")
        for i, p in enumerate(ps, 1):
            print(f"p{i} = {p}   {p.coefficients()}")
        print("graded pieces:")
        for n, p in pieces.items():
            print(f"  w_{n} = {p}")
        if args.kahn:
            print("trace form (with (2) = t, t e = 0):")
            for piece in doc["trace_form"]["graded"]:
                print(f"  w_{piece['degree']} = {piece['class']}")
    return 0


# --- graph / group / export -----------------------------------------------------------------

def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc.strerror}") from exc
    log.info("wrote %s", path)


def export_text(kind: str, fmt: str) -> str:
    from . import lattice, schlafli, weyl

    if kind == "graph":
        return schlafli.graph_dot() if fmt == "dot" else schlafli.graph_json()
    if fmt != "json":
        raise UsageError(f"format {fmt} is only available for graph")
    if kind == "lattice":
        return lattice.lattice_json()
    if kind == "group":
        return weyl.group_json()
    raise UsageError(f"unknown kind {kind}")


def cmd_graph(args) -> int:
    _write(export_text("graph", args.format), args.out)
    return 0


def cmd_export(args) -> int:
    _write(export_text(args.kind, args.format), args.out)
    return 0


def cmd_group(args) -> int:
    from . import weyl

    if args.what == "involutions":
        c = weyl.involution_census()
        if args.json:
            sys.stdout.write(_dump({"schema": "e6v.involutions/1", **c.as_dict()}))
        else:
            print("degree  count  conjugate  fixed lines")
            for d in range(5):
                fixed = sorted(c.fixed_vertices_by_degree.get(d, ()))
                print(f"{d:6d}  {c.counts[d]:5d}  {str(c.conjugate_by_degree.get(d)):9s}  {','.join(map(str, fixed))}")
            if not args.summary:
                print(f"degree-2 involutions are products of commuting reflections: {c.degree2_are_commuting_products}")
        return 0
    cubes = weyl.enumerate_maximal_cubes()
    if args.json:
        sys.stdout.write(_dump({
            "schema": "e6v.cubes/1",
            "reflections": [list(r) for r in weyl.reflection_roots()],
            "cubes": [list(c.reflection_ids) for c in cubes],
        }))
    else:
        if not args.summary:
            for k, c in enumerate(cubes):
                print(f"{k:3d}  {' '.join(f'{r:2d}' for r in c.reflection_ids)}")
        profiles = {c.degree_profile() for c in cubes}
        print(f"{len(cubes)} maximal cubes, degree profiles {sorted(profiles)}")
    return 0


# --- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="e6v", description="Exact checks for W(E6), its lattices and forms.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered checks")
    v.add_argument("names", nargs="*", help="check names or 'all'")
    v.add_argument("--check", action="append", help="check to run (repeatable)")
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--rng-seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.add_argument("--no-timing", action="store_true", help="omit durations (byte-stable output)")
    v.add_argument("--list", action="store_true", help="list check names and exit")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("twist", help="twist a form by a cube-valued homomorphism")
    t.add_argument("--classes", required=True, help="a1,a2,a3,a4")
    t.add_argument("--form", choices=TWIST_FORMS, default="q27")
    t.add_argument("--compare", action="store_true")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_twist)

    f = sub.add_parser("form", help="quadratic form invariants")
    fs = f.add_subparsers(dest="what", required=True)
    fi = fs.add_parser("invariants")
    fi.add_argument("--diag", required=True, help="comma-separated nonzero integers")
    fi.add_argument("--json", action="store_true")
    fi.set_defaults(func=cmd_form)

    s = sub.add_parser("sw", help="Stiefel-Whitney classes from m-values")
    s.add_argument("--m", help="m1,m2,m3,m4")
    s.add_argument("--gset", choices=("lines", "triangles"))
    s.add_argument("--kahn", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sw)

    g = sub.add_parser("graph", help="the graph of 27 lines")
    gs = g.add_subparsers(dest="what", required=True)
    ge = gs.add_parser("export")
    ge.add_argument("--format", choices=("dot", "json"), default="dot")
    ge.add_argument("--out", default=None)
    ge.set_defaults(func=cmd_graph)

    gr = sub.add_parser("group", help="involutions and cubes")
    gr.add_argument("what", choices=("involutions", "cubes"))
    gr.add_argument("--summary", action="store_true")
    gr.add_argument("--json", action="store_true")
    gr.set_defaults(func=cmd_group)

    e = sub.add_parser("export", help="write graph/lattice/group data")
    e.add_argument("--kind", choices=("graph", "lattice", "group"), required=True)
    e.add_argument("--format", choices=("dot", "json"), default="json")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_export)
    return p


LIST_OPTIONS = ("--classes", "--diag", "--m")


def _join_negative_lists(argv: list[str]) -> list[str]:
    """Let ``--classes -1,2,3,5`` through: argparse would read -1,2,3,5 as a flag."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in LIST_OPTIONS and i + 1 < len(argv) and argv[i + 1][:2].lstrip("-")[:1].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_lists(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and USAGE_ERROR
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
    )
    if getattr(args, "list", False):
        from .checks import check_names

        print("\n".join(check_names()))
        return 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"e6v: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except IOError as exc:
        print(f"e6v: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
