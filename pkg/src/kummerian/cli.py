"""Command line interface: ``kummerian {check,search,cup,omega,massey,run-all}``.

Exit codes: ``check`` 0 KUMMERIAN_AT / 2 REFUTED; ``search`` 0 SOLUTIONS /
2 EMPTY / 3 CAP_EXCEEDED; every command returns 1 on errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .cocycle import Orientation, ThetaNotWellDefined, fox_matrix
from .kummer import (
    CAP_EXCEEDED,
    DEFAULT_MAX_BRANCHES,
    DEFAULT_MAX_SOLUTIONS,
    EMPTY,
    KUMMERIAN_AT,
    is_kummerian_at,
    refutation_report,
)
from .magnus import cup_kernel, labute_mildness, omega, pairing_table
from .massey import parse_characters, triple_massey
from .words import PresentationFile, PresentationSyntaxError, WordSyntaxError, parse_presentation, parse_word

TOOL = "kummerian"


class UsageError(Exception):
    pass


def _digest(text: str, extra: dict) -> str:
    h = hashlib.sha256(text.encode())
    h.update(json.dumps(extra, sort_keys=True).encode())
    return h.hexdigest()[:16]


def _base_report(command: str, pf: PresentationFile | None, precision, text: str, extra: dict) -> dict:
    P = pf.presentation if pf else None
    return {
        "tool": f"{TOOL} {__version__}",
        "command": command,
        "inputs_digest": _digest(text, extra),
        "p": P.p if P else None,
        "precision": precision,
        "status": None,
        "witness": None,
        "solutions": None,
        "pairings": None,
        "massey": None,
    }


def _load(path: str) -> tuple[PresentationFile, str]:
    text = Path(path).read_text()
    return parse_presentation(text), text


def _precision(args, pf: PresentationFile) -> int:
    n = args.precision if args.precision is not None else pf.precision
    if n is None:
        raise UsageError("no precision given (use -N or a 'precision' line)")
    return n


def run_check(args) -> tuple[dict, int]:
    pf, text = _load(args.file)
    P = pf.presentation
    n = _precision(args, pf)
    if args.theta is not None:
        theta_vals = tuple(int(t) for t in args.theta.split(","))
    elif pf.theta is not None:
        theta_vals = pf.theta
    else:
        raise UsageError("no orientation given (use --theta or a 'theta' line)")
    if len(theta_vals) != P.d:
        raise UsageError(f"theta has {len(theta_vals)} values for {P.d} generators")
    theta = Orientation(P.p, n, theta_vals)
    report = _base_report("check", pf, n, text, {"theta": theta_vals, "N": n})
    verdict = is_kummerian_at(P, theta)
    report.update(verdict.to_json())
    report["theta"] = list(theta.residues)
    report["fox_matrix"] = fox_matrix(P, theta).to_json()["rows"]
    return report, 0 if verdict.status == KUMMERIAN_AT else 2


def run_search(args) -> tuple[dict, int]:
    pf, text = _load(args.file)
    P = pf.presentation
    n = _precision(args, pf)
    caps = {"max_solutions": args.max_solutions, "max_branches": args.max_branches}
    report = _base_report("search", pf, n, text, {"N": n, **caps})
    rr = refutation_report(P, n, **caps)
    report.update(rr)
    report["solution_count"] = len(rr["solutions"])
    code = {EMPTY: 2, CAP_EXCEEDED: 3}.get(rr["status"], 0)
    return report, code


def run_cup(args) -> tuple[dict, int]:
    pf, text = _load(args.file)
    P = pf.presentation
    report = _base_report("cup", pf, None, text, {})
    report["status"] = "OK"
    report["pairings"] = pairing_table(P).to_json()
    report["cup_kernel"] = cup_kernel(P).to_json()
    report["mildness"] = [m.to_json() for m in labute_mildness(P)]
    return report, 0


def run_omega(args) -> tuple[dict, int]:
    if args.word is None:
        raise UsageError("omega needs --word")
    if args.file:
        pf, text = _load(args.file)
        names = pf.presentation.names
    else:
        pf, text = None, ""
        names = _names_in_order(args.word)
    w = parse_word(args.word, names)
    cap = args.cap
    value = omega(w, cap)
    report = _base_report("omega", pf, None, text, {"word": args.word, "cap": cap})
    report["status"] = "OK"
    report["word"] = w.render(names)
    report["omega"] = value if value is not None else f"> {cap}"
    return report, 0


def _names_in_order(text: str) -> list[str]:
    seen = []
    for m in re.finditer(r"[A-Za-z_][A-Za-z0-9_]*", text):
        if m.group() not in seen:
            seen.append(m.group())
    return seen


def run_massey(args) -> tuple[dict, int]:
    if args.phi is None:
        raise UsageError("massey needs --phi")
    pf, text = _load(args.file)
    P = pf.presentation
    phis = parse_characters(args.phi, P.d)
    report = _base_report("massey", pf, None, text, {"phi": args.phi, "seed": args.seed})
    verdict = triple_massey(P, *phis, seed=args.seed)
    report["status"] = "ESSENTIAL" if verdict.essential else "NOT_ESSENTIAL"
    report["massey"] = verdict.to_json()
    return report, 0


def fixtures_dir() -> Path:
    return Path(str(resources.files("kummerian") / "fixtures"))


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list):
        return (
            isinstance(actual, list)
            and len(expected) == len(actual)
            and all(_matches(e, a) for e, a in zip(expected, actual))
        )
    return expected == actual


def run_fixture_checks(directory: Path, seed: int = 0) -> list[tuple[str, str, bool, str]]:
    results = []
    for pres in sorted(directory.glob("*.pres")):
        sidecar = pres.with_suffix(".expected.json")
        if not sidecar.exists():
            continue
        for check in json.loads(sidecar.read_text())["checks"]:
            ns = argparse.Namespace(
                file=str(pres),
                precision=check.get("precision"),
                theta=check.get("theta"),
                phi=check.get("phi"),
                word=check.get("word"),
                cap=check.get("cap", 4),
                seed=seed,
                max_solutions=DEFAULT_MAX_SOLUTIONS,
                max_branches=DEFAULT_MAX_BRANCHES,
            )
            try:
                report, _ = COMMANDS[check["command"]](ns)
                ok = _matches(check["expect"], report)
                got = report.get("status")
            except Exception as exc:  # recorded as a failed check
                ok, got = False, f"error: {exc}"
            results.append((pres.stem, check["command"], ok, str(got)))
    return results


def run_all(args) -> tuple[dict, int]:
    directory = Path(args.fixtures) if args.fixtures else fixtures_dir()
    results = run_fixture_checks(directory, args.seed)
    report = _base_report("run-all", None, None, str(directory.name), {"seed": args.seed})
    report["checks"] = [{"fixture": f, "command": c, "pass": ok, "got": got} for f, c, ok, got in results]
    failed = sum(not ok for *_, ok, _ in results)
    report["status"] = "PASS" if not failed else f"FAIL ({failed} of {len(results)})"
    return report, 0 if not failed else 1


COMMANDS = {
    "check": run_check,
    "search": run_search,
    "cup": run_cup,
    "omega": run_omega,
    "massey": run_massey,
    "run-all": run_all,
}


def _print_text(report: dict) -> None:
    cmd = report["command"]
    if cmd == "run-all":
        for c in report["checks"]:
            print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['fixture']:<18} {c['command']:<7} {c['got']}")
        print(report["status"])
        return
    if cmd == "check":
        print(f"{report['status']} (mod {report['p']}^{report['precision']}), theta = {tuple(report['theta'])}")
        if report["witness"]:
            w = report["witness"]
            print(f"  witness: Fox entry (r{w['relator']}, x{w['generator']}) = {w['residue']}")
    elif cmd == "search":
        print(f"{report['status']}" + (f" at level {report['level']}" if report["level"] else ""))
        print(f"  {report['statement']}")
        for s in report["solutions"]:
            print(f"  theta = {tuple(s)}")
        print(f"  branches explored: {report['explored_branches']}; per level: {report['level_counts']}")
    elif cmd == "cup":
        for row in report["pairings"]:
            print(f"relator {row['relator']}: bockstein {row['bockstein']}, cup {row['cup']}"
                  + (f", diagonal {row['p2_diagonal']}" if "p2_diagonal" in row else "")
                  + (" [uncalibrated]" if row.get("flag") else ""))
        k = report["cup_kernel"]
        print(f"cup kernel: dimension {k['dimension']}, basis {k['basis']}"
              + (" (Demushkin-like)" if k["demushkin_like"] else ""))
        for m in report["mildness"]:
            print(f"mildness r{m['relator']}: {m['status']}" + (f" (value {m['value']})" if m["value"] else ""))
    elif cmd == "omega":
        print(f"omega({report['word']}) = {report['omega']}")
    elif cmd == "massey":
        m = report["massey"]
        print(f"nonEmpty={m['nonEmpty']} containsZero={m['containsZero']} essential={m['essential']}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", "--precision", type=int, default=None)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-solutions", type=int, default=DEFAULT_MAX_SOLUTIONS)
    common.add_argument("--max-branches", type=int, default=DEFAULT_MAX_BRANCHES)
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="test one orientation")
    sp.add_argument("file")
    sp.add_argument("--theta", help="comma-separated residues, one per generator")

    sp = sub.add_parser("search", parents=[common], help="search all orientations level by level")
    sp.add_argument("file")

    sp = sub.add_parser("cup", parents=[common], help="Bockstein/cup pairing tables and mildness")
    sp.add_argument("file")

    sp = sub.add_parser("omega", parents=[common], help="lower central weight of a word")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--word", required=True)
    sp.add_argument("--cap", type=int, default=4)

    sp = sub.add_parser("massey", parents=[common], help="triple Massey product status")
    sp.add_argument("file")
    sp.add_argument("--phi", required=True, help="three characters, e.g. '1,0,0;1,0,0;1,0,0'")

    sp = sub.add_parser("run-all", parents=[common], help="run every bundled fixture check")
    sp.add_argument("--fixtures", help="directory of .pres files with .expected.json sidecars")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args)
    except (PresentationSyntaxError, WordSyntaxError, ThetaNotWellDefined, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
