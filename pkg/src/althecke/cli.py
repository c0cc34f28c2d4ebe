"""Command line front end: ``althecke <subcommand> --n N --e E ...``.

Exit status is 0 exactly when every requested check passes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from . import combinat as cb

FORMATS = ("text", "json", "csv")
DEFAULT_SUITES = "RO,hash-intertwine"
# verify/gram solve n!-sized systems; everything else is enumeration
HEAVY_LIMIT, LIGHT_LIMIT = 5, 6


class UsageError(Exception):
    pass


def _e(text):
    if text.lower() in ("inf", "infinity", "oo", "none"):
        return None
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("e must be >= 2 or inf")
    return v


def _need_e(args):
    if args.e is None or args.e < 3:
        raise UsageError(f"{args.cmd} needs a finite e >= 3")


def _guard(args, limit):
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    if args.n > limit and not args.force:
        raise UsageError(f"n={args.n} exceeds the desk-scale limit {limit} for {args.cmd}; pass --force")


def _gens(args, n=None, e=None):
    from .klrgen import GeneratorSet
    from .seminormal import ALTERNATING, SeminormalModel
    n = args.n if n is None else n
    e = args.e if e is None else e
    model = SeminormalModel(n, e, ALTERNATING, cache_dir=args.cache_dir)
    return GeneratorSet(n, e, model=model)


def _emit(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


# subcommands -------------------------------------------------------------------

def cmd_tableaux(args, out):
    _guard(args, LIGHT_LIMIT)
    shapes = [tuple(int(x) for x in args.shape.split(","))] if args.shape else cb.partitions(args.n)
    rows = []
    for lam in shapes:
        for t in cb.standard_tableaux(lam):
            row = {"shape": list(lam), "tableau": t.to_json(),
                   "residues": list(cb.residue_sequence(t, args.e))}
            if args.e is not None:
                row["degree"], row["codegree"] = cb.degrees(t, args.e)
                row["class"] = cb.residue_class(cb.residue_sequence(t, args.e), args.e)
            rows.append(row)
    if args.format == "json":
        _emit(out, _dump(rows))
    elif args.format == "csv":
        _emit(out, "shape,tableau,residues,degree,codegree")
        for r in rows:
            _emit(out, ",".join([".".join(map(str, r["shape"])),
                                 "/".join("".join(map(str, x)) for x in r["tableau"]),
                                 "".join(map(str, r["residues"])),
                                 str(r.get("degree", "")), str(r.get("codegree", ""))]))
    else:
        for r in rows:
            t = "/".join(" ".join(map(str, x)) for x in r["tableau"])
            extra = f"  deg={r['degree']} codeg={r['codegree']}" if "degree" in r else ""
            _emit(out, f"{tuple(r['shape'])}  {t}  res={r['residues']}{extra}")
    return 0


def cmd_gdim(args, out):
    _guard(args, LIGHT_LIMIT)
    _need_e(args)
    poly = cb.graded_dim(args.n, args.e, args.algebra)
    if args.format == "json":
        _emit(out, json.dumps(poly.to_json(), sort_keys=False))
    elif args.format == "csv":
        _emit(out, "degree,dimension")
        for k, v in poly.to_json().items():
            _emit(out, f"{k},{v}")
    else:
        _emit(out, repr(poly))
    return 0


def cmd_blocks(args, out):
    from .gradedbasis import block_report
    _guard(args, LIGHT_LIMIT)
    _need_e(args)
    rep = block_report(args.n, args.e)
    if args.format == "json":
        _emit(out, _dump(rep))
    elif args.format == "csv":
        _emit(out, "gamma,defect,size,partitions,classifier")
        for b in rep:
            _emit(out, ",".join([";".join("".join(map(str, a)) for a in b["gamma"]), str(b["defect"]),
                                 str(b["size"]), ";".join(".".join(map(str, p)) for p in b["partitions"]),
                                 b["classifier"]]))
    else:
        for b in rep:
            _emit(out, f"gamma={b['gamma']} defect={b['defect']} |gamma|={b['size']} "
                       f"partitions={b['partitions']} {b['classifier']}")
    return 0


def cmd_basis(args, out):
    from . import gradedbasis as gb
    _guard(args, LIGHT_LIMIT)
    _need_e(args)
    if args.format == "json":
        _emit(out, gb.basis_json(args.n, args.e, args.algebra))
    elif args.format == "csv":
        _emit(out, gb.basis_csv(args.n, args.e, args.algebra))
    else:
        for row in gb.basis_rows(args.n, args.e, args.algebra):
            lam, s, t, primed, deg, z2 = row
            sign = "+" if z2 == 0 else "-"
            _emit(out, f"Psi{sign}[{s}, {t}]  shape={lam} degree={deg}")
    return 0


def _run_one(payload):
    """Worker: evaluate one suite; returns its JSON report."""
    n, e, suite, variant, target, cache_dir = payload
    from .klrgen import GeneratorSet, run_suite
    from .seminormal import ALTERNATING, SeminormalModel
    gens = GeneratorSet(n, e, model=SeminormalModel(n, e, ALTERNATING, cache_dir=cache_dir))
    if target:
        from .specialize import parse_target, verify_specialized_klr
        (rep,) = verify_specialized_klr(gens, parse_target(target, e), (suite,))
    else:
        rep = run_suite(gens, suite, variant)
    return rep.to_json()


def cmd_verify(args, out):
    from .klrgen import SUITES
    _guard(args, HEAVY_LIMIT)
    _need_e(args)
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    allowed = ("klr", "RpSn", "MainRelations") if args.target else SUITES
    for s in suites:
        if s not in allowed:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(allowed)}")
    work = [(args.n, args.e, s, args.variant, args.target, args.cache_dir) for s in suites]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_run_one, work))
    else:
        reports = [_run_one(w) for w in work]
    failed = sum(len(r["failures"]) for r in reports)
    if args.format == "json":
        _emit(out, _dump({"n": args.n, "e": args.e, "variant": args.variant, "target": args.target,
                          "reports": reports, "ok": failed == 0}))
    elif args.format == "csv":
        _emit(out, "suite,relation,indices,witness_norm")
        for r in reports:
            for f in r["failures"]:
                _emit(out, f"{r['suite']},{f['relation']},\"{f['indices']}\",{f['witness_norm']}")
    else:
        for r in reports:
            _emit(out, f"{r['suite']}: {r['passed']}/{r['total']} passed "
                       f"({r['vacuous']} vacuous, {len(r['failures'])} failed)")
            for f in r["failures"]:
                _emit(out, f"  FAIL {f['relation']} {f['indices']} witness_norm={f['witness_norm']}")
    return 0 if failed == 0 else 1


def cmd_gram(args, out):
    from .gradedbasis import gram_matrix
    from .specialize import parse_target
    _guard(args, HEAVY_LIMIT)
    _need_e(args)
    if args.n > 3 and not args.force:
        raise UsageError("Gram matrices for n > 3 are gated; pass --force")
    target = parse_target(args.target or "F7", args.e)
    blocks = list(cb.blocks(args.n, args.e))
    if args.block is not None:
        blocks = [blocks[int(args.block)]]
    gens = _gens(args)
    ok = True
    results = []
    for gamma in blocks:
        g = gram_matrix(gamma, args.n, args.e, target, gens)
        F = target.field
        checks = {"diagonal_nonzero": g.diagonal_nonzero(F),
                  "dominance_violations": len(g.dominance_violations(F)),
                  "nonsingular": g.nonsingular}
        ok &= checks["diagonal_nonzero"] and not checks["dominance_violations"] and checks["nonsingular"]
        results.append((g, checks))
    F = target.field
    if args.format == "json":
        _emit(out, _dump([dict(g.to_json(F), checks=c) for g, c in results]))
    elif args.format == "csv":
        for g, _ in results:
            _emit(out, g.to_csv(F))
    else:
        for g, c in results:
            _emit(out, f"gamma={[list(a) for a in g.gamma]} defect={g.defect} size={g.size} "
                       f"rank={g.rank} over {g.target}: {c}")
            for row in g.entries:
                _emit(out, "  [" + " ".join(f"{F.fmt(x):>6}" for x in row) + "]")
    return 0 if ok else 1


def cmd_specialize(args, out):
    from .klrgen import klr_word_image
    from .specialize import parse_target, specialize_element, verify_specialized_klr
    _guard(args, HEAVY_LIMIT)
    _need_e(args)
    target = parse_target(args.target or "F3", args.e)
    gens = _gens(args)
    result = {"target": target.describe()}
    status = 0
    if args.element:
        total, sign, word = None, 1, []
        for tok in args.element.split() + ["+"]:
            if tok not in ("+", "-"):
                word.append(tok)
                continue
            if word:
                x = klr_word_image(gens, word)
                x = x if sign > 0 else -x
                total = x if total is None else total + x
            sign, word = (1 if tok == "+" else -1), []
        if total is None:
            raise UsageError("empty --element")
        result["element"] = args.element
        result["image"] = str(specialize_element(total, gens.model, target))
    if args.check or not args.element:
        reps = verify_specialized_klr(gens, target)
        result["reports"] = [r.to_json() for r in reps]
        status = 0 if all(r.ok for r in reps) else 1
    if args.format == "json":
        _emit(out, _dump(result))
    else:
        _emit(out, f"target {target.label}: xi={result['target']['xi']}")
        if "image" in result:
            _emit(out, f"{result['element']}  ->  {result['image']}")
        for r in result.get("reports", []):
            _emit(out, f"{r['suite']}: {r['passed']}/{r['total']} passed "
                       f"({r['vacuous']} vacuous, {len(r['failures'])} failed)")
    return status


COMMANDS = {"tableaux": cmd_tableaux, "gdim": cmd_gdim, "blocks": cmd_blocks, "basis": cmd_basis,
            "verify": cmd_verify, "gram": cmd_gram, "specialize": cmd_specialize}


def build_parser():
    p = argparse.ArgumentParser(prog="althecke", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--e", type=_e, default=3, help="quantum characteristic (integer or inf)")
        s.add_argument("--format", choices=FORMATS, default="text")
        s.add_argument("--cache-dir", default=os.environ.get("ALTHECKE_CACHE"))
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--force", action="store_true")
        if name in ("gdim", "basis"):
            s.add_argument("--algebra", choices=("S", "A"), default="S")
        if name == "tableaux":
            s.add_argument("--shape", help="comma separated partition")
        if name == "verify":
            s.add_argument("--suite", default=DEFAULT_SUITES)
            s.add_argument("--variant", choices=("printed", "corrected"), default="printed")
            s.add_argument("--target", help="run the undeformed suites after specialization")
        if name == "gram":
            s.add_argument("--block", help="index into the block list (default: all)")
            s.add_argument("--target", help="fp:p[:xi], F<q>, cyclotomic (default F7)")
        if name == "specialize":
            s.add_argument("--target", help="fp:p[:xi], F<q>, cyclotomic (default F3)")
            s.add_argument("--element", help="e.g. 'y3 e(012) - y3 e(021)'")
            s.add_argument("--check", action="store_true", help="also run the specialized KLR suites")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args, out)
    except UsageError as exc:
        print(f"althecke {args.cmd}: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as exc:
        print(f"althecke {args.cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
