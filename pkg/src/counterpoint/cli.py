"""Command line interface: ``counterpoint <command> [flags]``.

Every command builds one report record ``{command, config, result, paper_diff?}``;
``--json`` prints it canonically, otherwise it is rendered as text.

Exit codes: 0 success, 1 bad input, 2 negative domain verdict (not strong,
rejected steps, dissonant downbeat), 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .cache import dumps, load_or_build
from .dichotomy import CLASSICAL_CONSONANCES, Dichotomy, StrongDichotomy, enumerate_strong, find_polarity
from .errors import CounterpointError, DissonantDownbeat, NotStrong
from .fux import Composition, CompositionError, paper_diff, run_comparison, validate_composition
from .projections import (
    first_species_symmetries,
    second_species_projections,
    theorem_audit,
)
from .ring import FirstInterval, TwoInterval, check_modulus

EXIT_OK, EXIT_INPUT, EXIT_VERDICT, EXIT_ORACLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(a) for a in text.replace(" ", "").split(",") if a != ""]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _dichotomy(args) -> Dichotomy:
    try:
        n = check_modulus(args.modulus)
    except CounterpointError as exc:
        raise InputError(str(exc)) from None
    xs = _ints(args.consonances)
    if len(xs) != n // 2:
        raise InputError(f"consonance set must have {n // 2} elements for modulus {n}, got {len(xs)}")
    try:
        return Dichotomy(tuple(xs), n)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _strong(args) -> StrongDichotomy:
    d = _dichotomy(args)
    return StrongDichotomy(d, find_polarity(d))


def _config(args, **extra) -> dict:
    cfg = {"modulus": args.modulus, "consonances": sorted(set(_ints(args.consonances)))}
    cfg.update(extra)
    return cfg


def _bounds(k: int) -> list[int]:
    return [k * k, 2 * k * k - k]


# --- commands ---------------------------------------------------------------


def cmd_polarity(args):
    d = _dichotomy(args)
    try:
        p = find_polarity(d)
        result, code = {"strong": True, "polarity": str(p), "u": p.u, "v": p.v}, EXIT_OK
    except NotStrong as exc:
        result = {"strong": False, "reason": exc.reason, "candidates": [str(c) for c in exc.candidates]}
        code = EXIT_VERDICT
    return {"command": "polarity", "config": _config(args), "result": result}, code


def cmd_dichotomies(args):
    try:
        n = check_modulus(args.modulus)
    except CounterpointError as exc:
        raise InputError(str(exc)) from None
    found = enumerate_strong(n)
    result = {"count": len(found)}
    if not args.count_only:
        result["dichotomies"] = [{"consonances": list(D.X), "polarity": str(D.polarity)} for D in found]
    return {"command": "dichotomies", "config": {"modulus": n, "count_only": args.count_only}, "result": result}, EXIT_OK


def _result_record(res, D: StrongDichotomy) -> dict:
    rec = res.to_dict()
    rec["matrices"] = [g.matrix_str() for g in res.projections]
    lo, hi = _bounds(D.k)
    rec["successor_count"] = len(res.successors)
    rec["score_within_bounds"] = lo <= res.max_score <= hi
    rec["successors_within_bounds"] = lo <= len(res.successors) <= hi
    return rec


def cmd_projections(args):
    D = _strong(args)
    code = EXIT_OK
    if args.all:
        results = load_or_build(D, args.cache, threads=args.threads)
        audit = theorem_audit(D, results, strict=False)
        result = {
            "pairs": [_result_record(r, D) for r in results],
            "audit": {
                "bounds": [audit.lower, audit.upper],
                "score_histogram": {str(a): b for a, b in audit.score_histogram.items()},
                "successor_histogram": {str(a): b for a, b in audit.successor_histogram.items()},
                "score_violations": [list(v) for v in audit.score_violations],
                "successor_violations": [list(v) for v in audit.successor_violations],
            },
        }
        cfg = _config(args, all=True)
    else:
        if args.y is None:
            raise InputError("give -y (and -z) or --all")
        y, z = args.y % D.modulus, (args.z or 0) % D.modulus
        if not D.is_consonant(y):
            raise DissonantDownbeat(f"downbeat interval {y} is not in {D.base}")
        results = [second_species_projections(y, z, D)]
        result = _result_record(results[0], D)
        cfg = _config(args, y=y, z=z)
    if args.oracle:
        from .oracle import projections_oracle

        mismatches = [[r.y, r.z] for r in results if projections_oracle(r.y, r.z, D) != r]
        result["oracle"] = {"match": not mismatches, "mismatches": mismatches}
        if mismatches:
            code = EXIT_ORACLE
    return {"command": "projections", "config": cfg, "result": result}, code


def cmd_successors(args):
    D = _strong(args)
    parts = _ints(args.interval)
    n = D.modulus
    if len(parts) == 3:
        xi = TwoInterval(*parts, modulus=n)
        if not D.is_consonant(xi.x):
            raise DissonantDownbeat(f"downbeat interval {xi.x} is not in {D.base}")
        res = second_species_projections(xi.x, xi.y, D)
        label, c = str(xi), xi.c
        species = 2
    elif len(parts) == 2:
        eta = FirstInterval(*parts, modulus=n)
        if not D.is_consonant(eta.x):
            raise DissonantDownbeat(f"interval {eta.x} is not in {D.base}")
        res = first_species_symmetries(eta.x, D)
        label, c = str(eta), eta.c
        species = 1
    else:
        raise InputError("--interval takes c,x,y (second species) or c,x (first species)")
    succ = sorted(e.translate(dc=c) for e in res.successors)
    lo, hi = _bounds(D.k)
    result = {
        "interval": label,
        "species": species,
        "max_score": res.max_score,
        "successors": [str(e) for e in succ],
        "count": len(succ),
        "bounds": [lo, hi],
    }
    return {"command": "successors", "config": _config(args, interval=parts), "result": result}, EXIT_OK


def cmd_check(args):
    try:
        comp = Composition.from_json(args.path)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc.strerror}") from None
    except (CompositionError, NotStrong, ValueError) as exc:
        raise InputError(f"{args.path}: {exc}") from None
    verdicts = validate_composition(comp)
    rejected = [v.index for v in verdicts if not v.admitted]
    result = {
        "steps": [v.to_dict() for v in verdicts],
        "admitted": len(verdicts) - len(rejected),
        "rejected": rejected,
    }
    cfg = {"path": str(args.path), "modulus": comp.modulus, "consonances": list(comp.dichotomy.X)}
    return {"command": "check", "config": cfg, "result": result}, (EXIT_VERDICT if rejected else EXIT_OK)


def cmd_compare(args):
    D = _strong(args)
    report = run_comparison(args.case, args.universe, D, require_progression=not args.no_progression)
    record = {"command": "compare", "config": _config(args, case=args.case, universe=args.universe), "result": report.to_dict()}
    diff = paper_diff(report)
    if diff is not None:
        record["paper_diff"] = diff
    return record, EXIT_OK


# --- text rendering -----------------------------------------------------------


def render_text(record: dict, matrix: bool = False) -> str:
    cmd, res = record["command"], record["result"]
    lines: list[str] = []
    if cmd == "polarity":
        if res["strong"]:
            lines.append(res["polarity"])
        else:
            why = "no polarity" if res["reason"] == "none" else "multiple polarities"
            lines.append(f"NotStrong ({why})")
            lines += [f"  {c}" for c in res["candidates"]]
    elif cmd == "dichotomies":
        for d in res.get("dichotomies", []):
            lines.append("{" + ",".join(map(str, d["consonances"])) + "} " + d["polarity"])
        lines.append(str(res["count"]))
    elif cmd == "projections":
        pairs = res["pairs"] if "pairs" in res else [res]
        for r in pairs:
            lines += _render_pair(r, show_matrix=matrix)
        if "audit" in res:
            a = res["audit"]
            lines.append(f"bounds {a['bounds'][0]}..{a['bounds'][1]}")
            lines.append("max score histogram: " + ", ".join(f"{k}:{v}" for k, v in a["score_histogram"].items()))
            lines.append("successor histogram: " + ", ".join(f"{k}:{v}" for k, v in a["successor_histogram"].items()))
            lines.append(f"score violations: {len(a['score_violations'])}; successor-set violations: {len(a['successor_violations'])}")
        if "oracle" in res:
            lines.append("ORACLE MATCH" if res["oracle"]["match"] else f"ORACLE MISMATCH at {res['oracle']['mismatches']}")
    elif cmd == "successors":
        lo, hi = res["bounds"]
        lines.append(f"successors of {res['interval']} (max score {res['max_score']}):")
        lines.append("  " + " ".join(res["successors"]))
        lines.append(f"count {res['count']} (bounds {lo}..{hi})")
    elif cmd == "check":
        for s in res["steps"]:
            src = "{}+e1.{}+e2.{}".format(*s["source"])
            dst = "{}+e1.{}".format(*s["target"])
            mark = "ok " if s["admitted"] else "BAD"
            lines.append(f"{s['index']:>3} {mark} {src:>14} -> {dst:<9} {s['reason']} ({len(s['projections'])} projections)")
        lines.append(f"admitted {res['admitted']}/{len(res['steps'])}")
        if res["rejected"]:
            lines.append("rejected steps: " + ", ".join(map(str, res["rejected"])))
    elif cmd == "compare":
        lines.append(f"case {res['case']}, universe {res['universe']}, Z_{res['modulus']} X={res['consonances']}")
        for key in ("total", "fux_only", "proj_only", "both", "neither", "repetitions"):
            lines.append(f"  {key:<12}{res[key]:>6}")
        lines.append(f"  admission rate {res['admission_rate']:.3f}%")
        if "paper_diff" in record:
            diff = record["paper_diff"]
            lines.append("DIFF against published table: " + ("match" if diff["match"] else "differs"))
            for key, want in diff["published"].items():
                delta = diff["deltas"].get(key)
                lines.append(f"  {key:<15} published {want:>8}  " + (f"delta {delta:+}" if delta is not None else "same"))
    return "\n".join(lines) + "\n"


def _render_pair(r: dict, show_matrix: bool) -> list[str]:
    out = [f"y={r['y']} z={r['z']}  max score {r['max_score']}  successors {r['successor_count']}"]
    for params, mat in zip(r["projections"], r["matrices"]):
        t1, t2, s, w1, w2 = params
        line = f"  t1={t1} t2={t2} s={s} w1={w1} w2={w2}"
        if show_matrix:
            line += f"   {mat}"
        out.append(line)
    return out


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", type=int, default=12)
    common.add_argument("--consonances", default=",".join(map(str, CLASSICAL_CONSONANCES)))
    common.add_argument("--json", action="store_true", help="emit the machine-readable record")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker processes for table sweeps")
    common.add_argument("--cache", type=Path, help="projection table cache file")
    common.add_argument("--matrix", action="store_true", help="also print projections in matrix form")

    parser = argparse.ArgumentParser(prog="counterpoint", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polarity", parents=[common], help="find the polarity of a dichotomy")
    p.set_defaults(func=cmd_polarity)

    p = sub.add_parser("dichotomies", parents=[common], help="enumerate strong dichotomies")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_dichotomies)

    p = sub.add_parser("projections", parents=[common], help="maximal projections for 0+e1.y+e2.z")
    p.add_argument("-y", type=int)
    p.add_argument("-z", type=int)
    p.add_argument("--all", action="store_true", help="sweep every (y, z) and audit the bounds")
    p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force search")
    p.set_defaults(func=cmd_projections)

    p = sub.add_parser("successors", parents=[common], help="admitted successors of an interval")
    p.add_argument("--interval", required=True, help="c,x,y or c,x")
    p.set_defaults(func=cmd_successors)

    p = sub.add_parser("check", parents=[common], help="validate a composition file")
    p.add_argument("path", type=Path)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compare", parents=[common], help="Fux vs projection model contingency table")
    p.add_argument("--case", type=int, choices=(1, 2), default=2)
    p.add_argument("--universe", choices=("all", "fs-valid"), default="all")
    p.add_argument("--no-progression", action="store_true", help="case 1: do not require a valid first-species frame")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotStrong as exc:
        print(f"error: dichotomy is not strong: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except DissonantDownbeat as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    text = dumps(record) if args.json else render_text(record, matrix=args.matrix)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
