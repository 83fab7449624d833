"""Command-line front end: computations and verification sweeps with JSON reports.

Every subcommand emits a single report, as readable text (default) or as a
JSON envelope {command, params, timestamp, report}. Reruns of the same
command produce byte-identical JSON apart from the timestamp. Exit status is
0 when the computation succeeded and any requested verification found no
failures, 1 when a verification reported failures or a negative verdict, and
2 on configuration errors.

Long values are elided in text mode only, with an explicit marker; JSON
output is always complete. The QLUCAS_JOBS environment variable sets the
default worker count for sweep commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import catalog
from .congruence import (
    verify_apery,
    verify_inter2_identity,
    verify_plucas_at_one,
    verify_ratio_congruence,
)
from .intpoly import IntPolynomial, NotDivisible, cyclotomic, reduce_mod_cyclotomic
from .landau import DEFAULT_BUDGET, check_landau
from .qcombinatorics import RatioSpec, q_binomial, q_ratio, q_ratio_at_one, q_ratio_mod
from .relations import DEFAULT_MARGIN, find_relations, verify_relation
from .series import TruncatedSeries, build_F, extract_cofactor, specialize, verify_definition_Ld

_ELIDE_LIMIT = 120


# -- argument helpers ---------------------------------------------------------------


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3 or 1/2, got {text!r}")


def _load_spec(source: str) -> RatioSpec:
    if source.endswith(".json") or os.path.sep in source or os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return RatioSpec.from_json_dict(json.load(fh))
    return catalog.builtin_spec(source)


def _load_sequence(source: str, order: int, qval: Fraction) -> list:
    if source.endswith(".json") or os.path.sep in source or os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise ValueError(f"{source}: expected a JSON list of numbers")
        return [v if isinstance(v, int) else Fraction(str(v)) for v in raw]
    return catalog.builtin_sequence(source, order, qval)


def _poly_json(p: IntPolynomial) -> dict:
    return {
        "degree": None if p.is_zero() else p.degree,
        "coefficients": list(p.to_strings()),
        "polynomial": str(p),
    }


# -- output -------------------------------------------------------------------------


def _elide(text: str) -> str:
    if len(text) <= _ELIDE_LIMIT:
        return text
    omitted = len(text) - 80
    return f"{text[:60]} ... [{omitted} characters elided] ... {text[-20:]}"


def _render_lines(key: str, value, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for sub, item in value.items():
            _render_lines(sub, item, indent + 1, lines)
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            joined = ", ".join(str(v) for v in value)
            lines.append(f"{pad}{key}: [{_elide(joined)}]")
        else:
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value):
                _render_lines(f"[{i}]", item, indent + 1, lines)
    else:
        lines.append(f"{pad}{key}: {_elide(str(value))}")


def _render_text(envelope: dict) -> str:
    lines: list[str] = []
    for key, value in envelope.items():
        _render_lines(key, value, 0, lines)
    return "\n".join(lines) + "\n"


def _emit(envelope: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(envelope)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    return int(os.environ.get("QLUCAS_JOBS", "1"))


# -- subcommand handlers --------------------------------------------------------------


def _cmd_cyclotomic(args):
    poly = cyclotomic(args.b)
    report = {"b": args.b, **_poly_json(poly)}
    return {"b": args.b}, report, True


def _cmd_qbinom(args):
    poly = q_binomial(args.n, args.k)
    if args.mod is not None:
        poly = reduce_mod_cyclotomic(poly, args.mod)
    params = {"n": args.n, "k": args.k, "mod": args.mod}
    return params, {**params, **_poly_json(poly)}, True


def _cmd_qratio(args):
    spec = _load_spec(args.spec)
    params = {
        "spec": spec.to_json_dict(),
        "point": list(args.point),
        "mod": args.mod,
        "at_one": args.at_one,
    }
    if args.at_one:
        try:
            value = q_ratio_at_one(spec, args.point)
        except NotDivisible as exc:
            return params, {"integral": False, "error": str(exc)}, False
        return params, {"integral": True, "value_at_one": value}, True
    if args.mod is not None:
        poly = q_ratio_mod(spec, args.point, args.mod)
        return params, {"mod": args.mod, **_poly_json(poly)}, True
    try:
        poly = q_ratio(spec, args.point)
    except NotDivisible as exc:
        return params, {"integral": False, "error": str(exc)}, False
    return params, {"integral": True, **_poly_json(poly)}, True


def _cmd_check_landau(args):
    spec = _load_spec(args.spec)
    report = check_landau(spec, budget=args.budget)
    params = {"spec": spec.to_json_dict(), "budget": args.budget}
    return params, report.to_json_dict(), report.ok


def _cmd_verify_congruence(args):
    spec = _load_spec(args.spec)
    jobs = _jobs(args)
    report = verify_ratio_congruence(spec, args.b_max, args.n_box, jobs=jobs)
    params = {
        "spec": spec.to_json_dict(),
        "b_max": args.b_max,
        "n_box": list(args.n_box),
        "jobs": jobs,
    }
    return params, report.to_json_dict(), report.ok


def _cmd_verify_plucas(args):
    spec = _load_spec(args.spec)
    jobs = _jobs(args)
    report = verify_plucas_at_one(spec, args.p_max, args.n_box, jobs=jobs)
    params = {
        "spec": spec.to_json_dict(),
        "p_max": args.p_max,
        "n_box": list(args.n_box),
        "jobs": jobs,
    }
    return params, report.to_json_dict(), report.ok


def _cmd_verify_inter2(args):
    spec = _load_spec(args.spec)
    report = verify_inter2_identity(spec, args.b, args.n_box)
    params = {"spec": spec.to_json_dict(), "b": args.b, "n_box": list(args.n_box)}
    return params, report.to_json_dict(), report.ok


def _cmd_build_series(args):
    spec = _load_spec(args.spec)
    series = build_F(spec, args.cap)
    params = {"spec": spec.to_json_dict(), "cap": list(args.cap)}
    report = {
        "num_vars": series.num_vars,
        "cap": list(series.cap),
        "coefficients": series.to_json_list(),
    }
    return params, report, True


def _specialized(spec: RatioSpec, t, m, order: int) -> TruncatedSeries:
    cap = tuple(order // mj if mj else 0 for mj in m)
    return specialize(build_F(spec, cap), t, m, order)


def _cmd_specialize(args):
    spec = _load_spec(args.spec)
    t = args.t if args.t is not None else (0,) * spec.dim
    m = args.m if args.m is not None else (1,) * spec.dim
    series = _specialized(spec, t, m, args.order)
    params = {
        "spec": spec.to_json_dict(),
        "t": list(t),
        "m": list(m),
        "order": args.order,
    }
    report = {
        "order": args.order,
        "coefficients": series.to_json_list(),
    }
    return params, report, True


def _cmd_extract_cofactor(args):
    spec = _load_spec(args.spec)
    t = args.t if args.t is not None else (0,) * spec.dim
    m = args.m if args.m is not None else (1,) * spec.dim
    series = _specialized(spec, t, m, args.order)
    base = series.values_at_q(1)
    residues, report = extract_cofactor(series, base, args.b, args.order)
    params = {
        "spec": spec.to_json_dict(),
        "t": list(t),
        "m": list(m),
        "order": args.order,
        "b": args.b,
    }
    out = {
        "residues": [_poly_json(r) for r in residues],
        "check": report.to_json_dict(),
    }
    return params, out, report.ok


def _cmd_verify_apery(args):
    report = verify_apery(args.family, args.t, args.b_max, args.n_max)
    params = {"family": args.family, "t": args.t, "b_max": args.b_max, "n_max": args.n_max}
    return params, report.to_json_dict(), report.ok


def _cmd_verify_ld(args):
    if args.series.endswith(".json") or os.path.sep in args.series or os.path.exists(args.series):
        with open(args.series, encoding="utf-8") as fh:
            raw = json.load(fh)
        series = TruncatedSeries.from_json_list(
            raw["num_vars"], raw["cap"], raw["coefficients"]
        )
    else:
        coeffs = catalog.builtin_sequence(args.series, args.order, 1)
        if any(not isinstance(c, int) for c in coeffs):
            raise ValueError("verify-ld needs an integer sequence")
        series = TruncatedSeries.from_coefficients(coeffs)
    report = verify_definition_Ld(series, args.p, args.k, args.order)
    params = {"series": args.series, "p": args.p, "k": args.k, "order": args.order}
    return params, report.to_json_dict(), report.ok


def _cmd_find_relations(args):
    data = [_load_sequence(src, 2 * args.order, args.q) for src in args.series]
    found = find_relations(data, args.dx, args.dy, args.order, margin=args.margin)
    stability_order = min(2 * args.order, min(len(f) for f in data) - 1)
    candidates = []
    any_artifact = False
    for cand in found:
        if stability_order > args.order:
            stable = verify_relation(cand, data, stability_order)
            status = "verified" if stable else "truncation artifact"
            any_artifact = any_artifact or not stable
        else:
            status = "unchecked"
        candidates.append(
            {**cand.to_json_dict(), "pretty": str(cand), "stability": status}
        )
    params = {
        "series": list(args.series),
        "dx": args.dx,
        "dy": args.dy,
        "order": args.order,
        "margin": args.margin,
        "q": str(args.q),
    }
    report = {
        "count": len(candidates),
        "stability_order": stability_order,
        "candidates": candidates,
    }
    return params, report, not any_artifact


# -- parser -------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlucas",
        description="Exact q-factorial ratio computations and congruence verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", help="write the report to a file instead of stdout")
        return p

    p = add("cyclotomic", _cmd_cyclotomic, "compute one cyclotomic polynomial")
    p.add_argument("b", type=int)

    p = add("qbinom", _cmd_qbinom, "compute a Gaussian binomial coefficient")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--mod", type=int, help="reduce modulo this cyclotomic index")

    p = add("qratio", _cmd_qratio, "evaluate a q-factorial ratio at a lattice point")
    p.add_argument("--spec", required=True, help="JSON file or built-in spec name")
    p.add_argument("--point", type=_csv_ints, required=True)
    p.add_argument("--mod", type=int, help="reduce modulo this cyclotomic index")
    p.add_argument("--at-one", action="store_true", help="integer value at q = 1")

    p = add("check-landau", _cmd_check_landau, "decide the step-function hypotheses")
    p.add_argument("--spec", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("verify-congruence", _cmd_verify_congruence, "sweep the ratio congruence")
    p.add_argument("--spec", required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--n-box", type=_csv_ints, required=True)
    p.add_argument("--jobs", type=int)

    p = add("verify-plucas", _cmd_verify_plucas, "sweep the prime case at q = 1")
    p.add_argument("--spec", required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--n-box", type=_csv_ints, required=True)
    p.add_argument("--jobs", type=int)

    p = add("verify-inter2", _cmd_verify_inter2, "sweep the multiple-point identity")
    p.add_argument("--spec", required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n-box", type=_csv_ints, required=True)

    p = add("build-series", _cmd_build_series, "tabulate the generating series")
    p.add_argument("--spec", required=True)
    p.add_argument("--cap", type=_csv_ints, required=True)

    p = add("specialize", _cmd_specialize, "substitute x_j <- q^t_j x^m_j")
    p.add_argument("--spec", required=True)
    p.add_argument("--t", type=_csv_ints)
    p.add_argument("--m", type=_csv_ints)
    p.add_argument("--order", type=int, required=True)

    p = add("extract-cofactor", _cmd_extract_cofactor, "cyclotomic residues of a specialized series")
    p.add_argument("--spec", required=True)
    p.add_argument("--t", type=_csv_ints)
    p.add_argument("--m", type=_csv_ints)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("verify-apery", _cmd_verify_apery, "sweep the Apery-type congruence")
    p.add_argument("--family", choices=("a", "b"), required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)

    p = add("verify-ld", _cmd_verify_ld, "decide the mod-p functional equation class")
    p.add_argument("--series", required=True, help="JSON file or built-in sequence name")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--order", type=int, required=True)

    p = add("find-relations", _cmd_find_relations, "search for algebraic relations")
    p.add_argument("--series", action="append", required=True,
                   help="JSON file or built-in sequence name; repeatable")
    p.add_argument("--dx", type=int, required=True)
    p.add_argument("--dy", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--margin", type=int, default=DEFAULT_MARGIN)
    p.add_argument("--q", type=_rational, default=Fraction(1))

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params, report, ok = args.handler(args)
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    envelope = {
        "command": args.command,
        "params": params,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "report": report,
    }
    _emit(envelope, args.format, args.output)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
