"""Command line entry point.

Exit codes: 0 when the report has no failure entries, 1 when a mathematical
check fails, 2 for parse or validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebra import AlgebraError, check_cy_pairing, check_unit_assoc, extract_algebra
from .bracket import cyclic_derivative, master_residual, necklace_bracket
from .complex import Selector, cohomology_scan
from .conventions import render_conventions
from .dsl import ParseError, PotentialDoc, format_series, parse_potential, print_potential
from .quiver import (ExtData, PotentialError, QuiverError, canonical_potential, ext_of, load_quiver,
                     phi_from_ext, shifted_alphabet, validate_quiver)
from .words import CyclicSeries, NcPoly

COMMANDS = ("check-master", "derive", "bracket", "canonical", "cohomology", "algebra", "classify", "conventions")
# quiver defects that are a classification verdict rather than malformed input
_MATH_CODES = {"not_symmetric", "odd_loops", "odd_diagonal", "bad_involution"}


class UsageError(ValueError):
    pass


@dataclass
class CommandOutcome:
    exit_code: int
    report: dict[str, Any] = field(default_factory=dict)


def _series_json(s: CyclicSeries | NcPoly) -> list[dict[str, Any]]:
    return [{"word": s.alphabet.names(w), "coeff": str(c)} for w, c in s.items()]


def _parse_failures(exc: ParseError) -> list[dict[str, Any]]:
    return [{"check": "parse", "line": d.line, "col": d.col, "message": d.message} for d in exc.diagnostics]


def _load_potential(text: str) -> PotentialDoc:
    """A potential document, or a quiver JSON standing for its canonical potential."""
    if text.lstrip().startswith("{"):
        sa = shifted_alphabet(load_quiver(text))
        return PotentialDoc(sa.alphabet, canonical_potential(sa))
    return parse_potential(text)


def _quiver_failure(cmd: str, exc: QuiverError) -> CommandOutcome:
    code = 1 if exc.code in _MATH_CODES else 2
    return CommandOutcome(code, {"command": cmd, "failures": [{"check": exc.code, "message": str(exc)}]})


def _check_master(inputs: dict[str, Any]) -> CommandOutcome:
    doc = _load_potential(inputs["potential"])
    res = master_residual(doc.series)
    report = {
        "command": "check-master",
        "residual_terms": len(res),
        "residual": format_series(res),
        "failures": [] if not res else [{"check": "master_equation", "residual_terms": len(res)}],
    }
    return CommandOutcome(0 if not res else 1, report)


def _derive(inputs: dict[str, Any]) -> CommandOutcome:
    doc = _load_potential(inputs["potential"])
    var = inputs["var"]
    if var not in doc.alphabet.index:
        raise UsageError(f"unknown variable {var!r}")
    poly = cyclic_derivative(doc.series, var)
    return CommandOutcome(0, {"command": "derive", "var": var, "derivative": format_series(poly),
                              "terms": _series_json(poly), "failures": []})


def _bracket(inputs: dict[str, Any]) -> CommandOutcome:
    f = _load_potential(inputs["left"])
    g = _load_potential(inputs["right"])
    if f.alphabet != g.alphabet:
        raise UsageError("the two documents declare different alphabets")
    out = necklace_bracket(f.series, g.series)
    return CommandOutcome(0, {"command": "bracket", "bracket": format_series(out),
                              "terms": _series_json(out), "failures": []})


def _canonical(inputs: dict[str, Any]) -> CommandOutcome:
    q = load_quiver(inputs["quiver"])
    sa = shifted_alphabet(q)
    try:
        W = canonical_potential(sa)
    except PotentialError as exc:
        return CommandOutcome(1, {"command": "canonical", "failures": [{"check": "master_equation", "message": str(exc)}]})
    return CommandOutcome(0, {"command": "canonical", "document": print_potential(W),
                              "potential": format_series(W), "residual_terms": 0, "failures": []})


def _cohomology(inputs: dict[str, Any]) -> CommandOutcome:
    sa = shifted_alphabet(load_quiver(inputs["quiver"]))
    sel = Selector.parse(inputs.get("selector", "g_can"))
    ns = inputs.get("n") or [1]
    rep = cohomology_scan(sa, sel, ns, inputs.get("w_max", 6), inputs.get("w_min", 0),
                          threads=inputs.get("threads"))
    failures = []
    if sel is Selector.G_CAN:
        failures = [{"check": "nonvanishing_cohomology", "n": b["n"], "w": b["w"], "dim_H": b["dim_H"]}
                    for b in rep.blocks if b["n"] >= 1 and b["dim_H"] != 0]
    report = {"command": "cohomology", **rep.to_json(), "failures": failures}
    return CommandOutcome(0 if not failures else 1, report)


def _algebra(inputs: dict[str, Any]) -> CommandOutcome:
    doc = _load_potential(inputs["potential"])
    try:
        table = extract_algebra(doc.series, doc.alphabet)
    except AlgebraError as exc:
        return CommandOutcome(1, {"command": "algebra", "failures": [{"check": "extraction", "message": str(exc)}]})
    ua, cy = check_unit_assoc(table), check_cy_pairing(table)
    failures = [{"check": name, **{k: v for k, v in rep.items() if k.endswith("failures") and v}}
                for name, rep in (("unit_assoc", ua), ("cy_pairing", cy)) if rep["status"] != "pass"]
    return CommandOutcome(0 if not failures else 1,
                          {"command": "algebra", "table": table.to_json(), "unit_assoc": ua,
                           "cy_pairing": cy, "failures": failures})


def _classify(inputs: dict[str, Any]) -> CommandOutcome:
    try:
        raw = json.loads(inputs["data"])
    except json.JSONDecodeError as exc:
        raise QuiverError("malformed", f"invalid JSON: {exc}") from None
    if isinstance(raw, list):
        raw = {"ext1_dim": raw}
    if not isinstance(raw, dict):
        raise QuiverError("malformed", "expected a JSON object or matrix")
    if "ext1_dim" in raw:
        m = raw["ext1_dim"]
        if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
            raise QuiverError("malformed", "ext1_dim must be a matrix")
        gens = raw.get("generators")
        if gens is not None and (not isinstance(gens, list) or len(gens) != len(m)):
            raise QuiverError("malformed", "generators must be a list with one entry per row")
        q = phi_from_ext(ExtData.from_matrix(m, gens))
    else:
        q = validate_quiver(raw)
    ext = ext_of(q)
    loops = {v: ext.ext1_dim[i][i] for i, v in enumerate(ext.generators)}
    return CommandOutcome(0, {"command": "classify", "quiver": q.to_json(),
                              "ext1_dim": [list(r) for r in ext.ext1_dim], "loops": loops, "failures": []})


def _conventions(inputs: dict[str, Any]) -> CommandOutcome:
    return CommandOutcome(0, {"command": "conventions", "document": render_conventions(), "failures": []})


_DISPATCH = {
    "check-master": _check_master,
    "derive": _derive,
    "bracket": _bracket,
    "canonical": _canonical,
    "cohomology": _cohomology,
    "algebra": _algebra,
    "classify": _classify,
    "conventions": _conventions,
}


def run_command(cmd: str, inputs: dict[str, Any]) -> CommandOutcome:
    """Run one subcommand on in-memory inputs (file contents, not paths)."""
    if cmd not in _DISPATCH:
        return CommandOutcome(2, {"command": cmd, "failures": [{"check": "usage", "message": f"unknown command {cmd!r}"}]})
    try:
        return _DISPATCH[cmd](inputs)
    except ParseError as exc:
        return CommandOutcome(2, {"command": cmd, "failures": _parse_failures(exc)})
    except QuiverError as exc:
        return _quiver_failure(cmd, exc)
    except UsageError as exc:
        return CommandOutcome(2, {"command": cmd, "failures": [{"check": "usage", "message": str(exc)}]})
    except RecursionError:
        return CommandOutcome(2, {"command": cmd, "failures": [{"check": "usage", "message": "input nested too deeply"}]})


def _text(report: dict[str, Any]) -> str:
    cmd = report.get("command")
    fails = report.get("failures", [])
    lines: list[str] = []
    if cmd == "check-master" and "residual" in report:
        lines.append("OK: {W,W} = 0" if not fails else f"FAIL: {{W,W}} = {report['residual']}")
        return "\n".join(lines) + "\n"
    if cmd in ("canonical", "conventions") and not fails:
        return report["document"]
    if cmd == "derive" and not fails:
        return f"d/d{report['var']} = {report['derivative']}\n"
    if cmd == "bracket" and not fails:
        return f"{{f,g}} = {report['bracket']}\n"
    if cmd == "cohomology" and "blocks" in report:
        lines.append(f"selector {report['selector']}")
        for b in report["blocks"]:
            lines.append(f"n={b['n']:>3} w={b['w']:>3} dim={b['dim_domain']:>6} ker={b['dim_ker']:>6}"
                         f" rank_in={b['rank_in']:>6} H={b['dim_H']}")
    if cmd == "algebra" and "table" in report:
        for p in report["table"]["product"]:
            lines.append(f"{p['a']} * {p['b']} = {p['coeff']} {p['c']}")
        lines.append(f"unit/associativity: {report['unit_assoc']['status']}")
        lines.append(f"pairing: {report['cy_pairing']['status']} (det {report['cy_pairing']['determinant']})")
    if cmd == "classify" and not fails:
        ext = report["ext1_dim"]
        lines.append(f"OK: symmetric quiver, {len(ext)} vertices, {sum(map(sum, ext))} arrows")
    for f in fails:
        if f.get("check") == "parse":
            lines.append(f"ERROR {f['line']}:{f['col']}: {f['message']}")
        else:
            detail = f.get("message") or ", ".join(f"{k}={v}" for k, v in sorted(f.items()) if k != "check")
            lines.append(f"FAIL: {f['check']}: {detail}")
    if not fails and not lines:
        lines.append("OK")
    return "\n".join(lines) + "\n"


def render_report(outcome: CommandOutcome, fmt: str = "json") -> bytes:
    """Deterministic bytes: sorted-key JSON, or human-readable text."""
    if fmt == "json":
        return (json.dumps(outcome.report, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return _text(outcome.report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8", errors="surrogateescape") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    p = argparse.ArgumentParser(prog="necklace", description="Necklace-bracket computations for 2CY quivers.")
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("check-master", parents=[common], help="check {W,W} = 0")
    s.add_argument("potential", help="potential file or quiver JSON ('-' for stdin)")
    s = sub.add_parser("derive", parents=[common], help="cyclic derivative")
    s.add_argument("potential")
    s.add_argument("--var", required=True)
    s = sub.add_parser("bracket", parents=[common], help="necklace bracket of two series")
    s.add_argument("left")
    s.add_argument("right")
    s = sub.add_parser("canonical", parents=[common], help="canonical potential of a quiver")
    s.add_argument("quiver")
    s = sub.add_parser("cohomology", parents=[common], help="cohomology of the deformation complex")
    s.add_argument("quiver")
    s.add_argument("--selector", choices=("gcan", "g", "ghat"), default="gcan")
    s.add_argument("--n", type=int, action="append", help="cohomological degree (repeatable)")
    s.add_argument("--w-max", type=int, default=6)
    s.add_argument("--w-min", type=int, default=0)
    s = sub.add_parser("algebra", parents=[common], help="extract and check the algebra")
    s.add_argument("potential")
    s = sub.add_parser("classify", parents=[common], help="quiver from Ext data, or validate a quiver")
    s.add_argument("data", nargs="?", help="JSON file with ext1_dim or a quiver")
    s.add_argument("--ext", help="inline ext1_dim matrix, e.g. '[[2,1],[1,0]]'")
    s = sub.add_parser("conventions", parents=[common], help="write the CONVENTIONS document")
    s.add_argument("--output", help="write the document here instead of stdout")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd in ("check-master", "derive", "algebra"):
            inputs: dict[str, Any] = {"potential": _read(args.potential)}
            if args.cmd == "derive":
                inputs["var"] = args.var
        elif args.cmd == "bracket":
            inputs = {"left": _read(args.left), "right": _read(args.right)}
        elif args.cmd in ("canonical", "cohomology"):
            inputs = {"quiver": _read(args.quiver)}
            if args.cmd == "cohomology":
                inputs.update(selector=args.selector, n=args.n, w_max=args.w_max, w_min=args.w_min)
        elif args.cmd == "classify":
            if args.ext is None and args.data is None:
                raise UsageError("classify needs a JSON file or --ext")
            inputs = {"data": args.ext if args.ext is not None else _read(args.data)}
        else:
            inputs = {}
    except (OSError, UsageError) as exc:
        outcome = CommandOutcome(2, {"command": args.cmd, "failures": [{"check": "usage", "message": str(exc)}]})
    else:
        outcome = run_command(args.cmd, inputs)
    if args.cmd == "conventions" and args.output and outcome.exit_code == 0:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(outcome.report["document"])
    sys.stdout.buffer.write(render_report(outcome, args.format))
    sys.stdout.flush()
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
