"""Command-line driver.

Exit codes: 0 all checks passed, 1 a check or assertion failed, 2 parse or
usage error.  Reports are printed as human-readable lines and written as
one JSON record per check when --out is given.  The flags --cap, --prime,
--seed, --budget, --out can also be set via FRAMECAT_CAP, FRAMECAT_PRIME,
FRAMECAT_SEED, FRAMECAT_BUDGET, FRAMECAT_OUT.
"""

import argparse
import json
import os
import sys

from . import chaincof as cc
from . import dsub, fincat, frames, hocat, io, proptest, rand, sset
from .suites import SuiteConfig, run_suite


def _env_default(name, cast, fallback):
    raw = os.environ.get(f"FRAMECAT_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(2)


def _add_common(sp):
    sp.add_argument("--cap", type=int,
                    default=_env_default("CAP", int, 3))
    sp.add_argument("--prime", type=int,
                    default=_env_default("PRIME", int, 2))
    sp.add_argument("--seed", type=int,
                    default=_env_default("SEED", int, 0))
    sp.add_argument("--budget", type=int,
                    default=_env_default("BUDGET", int, 6))
    sp.add_argument("--out", default=_env_default("OUT", str, None))


def build_parser():
    ap = argparse.ArgumentParser(prog="framecat")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate any document file")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("nerve", help="nerve of a category file")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("hocat", help="homotopy category of an sset file")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("dsub", help="thick subdivision commands")
    dsp = p.add_subparsers(dest="dsub_command", required=True)
    b = dsp.add_parser("build")
    b.add_argument("path")
    _add_common(b)

    p = sub.add_parser("weq-closure", help="2-out-of-6 closure of the weq "
                                           "class in a category file")
    p.add_argument("path")
    p.add_argument("--mode", choices=["two-of-three", "two-of-six"],
                   default="two-of-six")
    _add_common(p)

    p = sub.add_parser("reedy", help="Reedy checks over a diagram file")
    rsp = p.add_subparsers(dest="reedy_command", required=True)
    for name in ("check", "colim", "replace"):
        q = rsp.add_parser(name)
        q.add_argument("path")
        _add_common(q)

    p = sub.add_parser("sset", help="simplicial set commands")
    ssp = p.add_subparsers(dest="sset_command", required=True)
    v = ssp.add_parser("verify-filtration")
    v.add_argument("--k", required=True,
                   help="corpus name (delta1/spine2/spine3/wedge/parallel) "
                        "or an sset file path")
    _add_common(v)

    p = sub.add_parser("frames", help="frame commands")
    fsp = p.add_subparsers(dest="frames_command", required=True)
    q = fsp.add_parser("vertex")
    q.add_argument("path", help="complex file")
    _add_common(q)
    q = fsp.add_parser("edge")
    q.add_argument("path", help="chain map file")
    _add_common(q)
    q = fsp.add_parser("triangle")
    q.add_argument("first", help="chain map file")
    q.add_argument("second", help="chain map file (post-composed)")
    _add_common(q)
    q = fsp.add_parser("theta")
    q.add_argument("path", help="chain map file")
    _add_common(q)
    q = fsp.add_parser("verify-triangles")
    q.add_argument("--count", type=int, default=5)
    _add_common(q)
    q = fsp.add_parser("lift")
    _add_common(q)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name")
    p.add_argument("--k", default=None)
    _add_common(p)

    p = sub.add_parser("proptest", help="seeded property tests")
    p.add_argument("--count", type=int, default=100)
    _add_common(p)
    return ap


def emit(records, out):
    """records: list of dicts with at least check/passed."""
    for r in records:
        status = "PASS" if r["passed"] else "FAIL"
        detail = f"  {r['details']}" if r.get("details") else ""
        print(f"[{status}] {r['check']}{detail}")
    if out:
        with open(out, "w") as fh:
            for r in records:
                fh.write(json.dumps(r, sort_keys=True) + "\n")
    return 0 if all(r["passed"] for r in records) else 1


def _rec(check, passed, details=""):
    return {"check": check, "passed": bool(passed), "details": details}


def cmd_validate(args):
    kind, obj = io.load_any(args.path)
    if kind == "category":
        cat, weq = obj
        rep = fincat.validate_category(cat)
        records = [_rec("category-laws", rep.passed,
                        "; ".join(rep.violations[:5]))]
        if weq is not None:
            wrep = weq.validate()
            records.append(_rec("weq-class", wrep.passed,
                                "; ".join(wrep.violations[:5])))
    elif kind == "sset":
        rep = sset.validate_sset(obj)
        records = [_rec("simplicial-identities", rep.passed,
                        "; ".join(rep.violations[:5]))]
    elif kind == "complex":
        records = [_rec("d-squared-zero", True,
                        f"dims={dict(sorted(obj.dims.items()))}")]
    elif kind == "chain_map":
        records = [_rec("chain-map-laws", True, "commutes with d")]
    else:
        records = [_rec("diagram-laws", True, "functorial")]
    return emit(records, args.out)


def cmd_nerve(args):
    kind, obj = io.load_any(args.path)
    if kind != "category":
        print("nerve expects a category file", file=sys.stderr)
        return 2
    cat, _ = obj
    rep = fincat.validate_category(cat)
    if not rep.passed:
        print(f"invalid category: {rep.violations[0]}", file=sys.stderr)
        return 2
    n = sset.nerve(cat, args.cap)
    doc = io.sset_doc(n)
    if args.out:
        io.save(args.out, doc)
    counts = n.counts()
    return emit([_rec("nerve-built", True, f"cells per dim: {counts}")],
                None)


def cmd_hocat(args):
    kind, obj = io.load_any(args.path)
    if kind != "sset":
        print("hocat expects an sset file", file=sys.stderr)
        return 2
    res = hocat.homotopy_category(obj, budget=args.budget)
    if res.status != "ok":
        return emit([_rec("hocat-stabilized", False,
                          "saturation inconclusive at this budget")],
                    args.out)
    records = [_rec("hocat-stabilized", True,
                    f"{len(res.category.objects)} objects, "
                    f"{len(res.category.morphisms)} morphisms")]
    if args.out:
        io.save(args.out, io.category_doc(res.category))
    return emit(records, None)


def cmd_dsub_build(args):
    kind, obj = io.load_any(args.path)
    if kind == "category":
        base, _ = obj
    elif kind == "sset":
        base = obj
    else:
        print("dsub build expects a category or sset file", file=sys.stderr)
        return 2
    dcat = dsub.d_subdivision(base, args.cap)
    report = {
        "kind": "dcat_report",
        "objects": sorted(dcat.cat.objects),
        "morphisms": sorted(m.mid for m in dcat.cat.morphisms),
        "weq": sorted(dcat.weq.members),
        "degree": {o: dcat.degree.degree[o] for o in sorted(dcat.cat.objects)},
    }
    if args.out:
        io.save(args.out, report)
    return emit([_rec("dsub-built", True,
                      f"{len(report['objects'])} objects, "
                      f"{len(report['morphisms'])} morphisms, "
                      f"{len(report['weq'])} weqs")], None)


def cmd_weq_closure(args):
    kind, obj = io.load_any(args.path)
    if kind != "category":
        print("weq-closure expects a category file", file=sys.stderr)
        return 2
    cat, weq = obj
    seed = weq.members if weq is not None else frozenset()
    closure = fincat.closure_two_of_six(cat, seed, args.mode)
    if args.out:
        io.save(args.out, io.category_doc(cat, weq=closure))
    return emit([_rec("closure-computed", True,
                      f"{len(closure.members)} members")], None)


def cmd_reedy(args):
    kind, obj = io.load_any(args.path)
    if kind != "diagram":
        print("reedy commands expect a diagram file", file=sys.stderr)
        return 2
    x = obj
    if fincat.is_direct(x.index) is None:
        return emit([_rec("index-direct", False,
                          "index category is not direct")], args.out)
    if args.reedy_command == "check":
        st = cc.reedy_status(x)
        return emit([_rec("reedy-cofibrant", st["reedy_cofibrant"],
                          f"witness={st['witness']}"
                          if st["witness"] else "")], args.out)
    if args.reedy_command == "colim":
        colim = cc.reedy_colimit(x)
        doc = io.complex_doc(colim.complex)
        if args.out:
            io.save(args.out, doc)
        return emit([_rec("reedy-colimit", True,
                          f"dims={dict(sorted(colim.complex.dims.items()))}")],
                    None)
    # replace (empty sieve)
    if x.weq is None:
        return emit([_rec("weq-present", False,
                          "diagram file needs a weq class for replacement")],
                    args.out)
    empty = fincat.FinCategory([], [], {}, {})
    sieve = fincat.CatFunctor(empty, x.index, {}, {})
    h = cc.ChainDiagram(empty, {}, {}, check=False)
    xhat, g = cc.reedy_replace_rel(x, sieve, h, {})
    if args.out:
        io.save(args.out, io.diagram_doc(xhat))
    return emit([_rec("replacement-built", True,
                      "postconditions asserted")], None)


_FILTRATION_CORPUS = {
    "delta1": lambda cap: sset.spine(1, cap),
    "spine2": lambda cap: sset.spine(2, cap),
    "spine3": lambda cap: sset.spine(3, cap),
    "wedge": lambda cap: sset.wedge(cap),
    "parallel": lambda cap: sset.parallel_pair(cap),
}


def cmd_verify_filtration(args):
    if args.k in _FILTRATION_CORPUS:
        k = _FILTRATION_CORPUS[args.k](min(args.cap, 3))
    else:
        kind, obj = io.load_any(args.k)
        if kind != "sset":
            print("--k must name a corpus element or an sset file",
                  file=sys.stderr)
            return 2
        k = obj
    ctx = hocat.rank_context(k, budget=args.budget + 2)
    steps = hocat.verify_filtration(ctx)
    records = []
    for s in steps:
        label = "union" if s.n == -1 else f"n={s.n}"
        records.append(_rec(f"filtration-{label}", s.passed,
                            s.witness or f"{s.primitive_count} primitives"))
    return emit(records, args.out)


def cmd_frames(args):
    if args.frames_command == "vertex":
        kind, x = io.load_any(args.path)
        if kind != "complex":
            print("frames vertex expects a complex file", file=sys.stderr)
            return 2
        fr = frames.frame_of_object(x, cap=args.cap)
        rep = frames.validate_frame(fr)
        return emit([_rec("vertex-frame", rep.passed,
                          "; ".join(rep.violations[:3]))], args.out)
    if args.frames_command in ("edge", "theta"):
        kind, f = io.load_any(args.path)
        if kind != "chain_map":
            print("expects a chain map file", file=sys.stderr)
            return 2
        edge = frames.frame_of_map(f, cap=min(args.cap, 2))
        if args.frames_command == "edge":
            rep = frames.validate_frame(edge)
            eq = frames.is_equivalence_edge(edge)
            return emit([_rec("edge-frame", rep.passed,
                              "; ".join(rep.violations[:3])),
                         _rec("equivalence-edge", True,
                              f"detected={eq}")], args.out)
        th = frames.theta(edge)
        mats = {n: th.mat(n).tolist() for n in th.degrees()}
        return emit([_rec("theta", True, json.dumps(mats, sort_keys=True))],
                    args.out)
    if args.frames_command == "triangle":
        _, f = io.load_any(args.first)
        _, g = io.load_any(args.second)
        t = frames.frame_of_composable_pair(f, g, cap=min(args.cap, 2))
        rep = frames.check_triangle_coherence(t)
        return emit([_rec("triangle-coherence", rep.passed, rep.message)],
                    args.out)
    if args.frames_command == "verify-triangles":
        records = []
        for i in range(args.count):
            rng = rand.rng_for(args.seed, 7000 + i)
            x = rand.random_complex(rng, args.prime, max_dim=2)
            y = rand.random_complex(rng, args.prime, max_dim=2)
            z = rand.random_complex(rng, args.prime, max_dim=2)
            f = rand.random_chain_map(rng, x, y)
            g = rand.random_chain_map(rng, y, z)
            t = frames.frame_of_composable_pair(f, g, cap=2)
            rep = frames.check_triangle_coherence(t)
            records.append(_rec(f"triangle-{i}", rep.passed, rep.message))
        return emit(records, args.out)
    # lift demo
    rng = rand.rng_for(args.seed, 7500)
    x = rand.random_complex(rng, args.prime, max_dim=2)
    y = rand.random_complex(rng, args.prime, max_dim=2)
    fx = frames.frame_of_object(x, cap=2)
    fy = frames.frame_of_object(y, cap=2)
    f = rand.random_chain_map(rng, x, y)
    free1 = fincat.free_category_on_quiver(
        fincat.Quiver(("x", "y"), (("q", "x", "y"),)))
    res = frames.lift_free_diagram(free1, {"x": fx, "y": fy},
                                   {"q": cc.induced(f)}, cap=2)
    return emit([_rec("lift", res.status == "ok", res.message)], args.out)


def cmd_suite(args):
    config = SuiteConfig(name=args.name, seed=args.seed, cap=args.cap,
                         prime=args.prime, budget=args.budget, out=args.out,
                         k=args.k)
    try:
        report = run_suite(config)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    shown = [{"check": f"{report.name}:{r.check_id}", "passed": r.passed,
              "details": r.details} for r in report.records]
    for r in shown:
        status = "PASS" if r["passed"] else "FAIL"
        detail = f"  {r['details']}" if r.get("details") else ""
        print(f"[{status}] {r['check']}{detail}")
    if args.out:
        with open(args.out, "w") as fh:
            for doc in report.to_docs():
                fh.write(json.dumps(doc, sort_keys=True) + "\n")
    code = 0 if report.passed else 1
    print(f"suite {report.name}: "
          f"{'PASS' if report.passed else 'FAIL'} "
          f"({len(shown)} checks, {report.seconds:.2f}s)")
    return code


def cmd_proptest(args):
    recs = proptest.run_property_tests(seed=args.seed, count=args.count,
                                       prime=args.prime)
    records = [{"check": f"{r.prop}#{r.case}", "passed": r.passed,
                "details": r.details} for r in recs]
    return emit(records, args.out)


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "nerve":
            return cmd_nerve(args)
        if args.command == "hocat":
            return cmd_hocat(args)
        if args.command == "dsub":
            return cmd_dsub_build(args)
        if args.command == "weq-closure":
            return cmd_weq_closure(args)
        if args.command == "reedy":
            return cmd_reedy(args)
        if args.command == "sset":
            return cmd_verify_filtration(args)
        if args.command == "frames":
            return cmd_frames(args)
        if args.command == "suite":
            return cmd_suite(args)
        if args.command == "proptest":
            return cmd_proptest(args)
    except io.FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, ValueError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    print("unknown command", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
