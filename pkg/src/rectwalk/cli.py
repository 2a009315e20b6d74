"""Command-line interface.

    rectwalk alpha --aspect 10
    rectwalk ratio --aspect 10 --exponent 0.625 --method all
    rectwalk probability --aspect 1 --exponent 0.625
    rectwalk table --aspect-min 2 --aspect-max 10 --aspect-step 2 --exponents 0.625,1
    rectwalk map --aspect 3 --samples 50 --format csv
    rectwalk validate --level quick

Exit status: 0 success, 1 domain error, 2 usage error, 3 accuracy error or
failed validation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable

from . import hitting, lattice, scmap, validation
from .errors import AccuracyError, DomainError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_ACCURACY = 3

_CLI_METHODS = {
    "quadrature": "quadrature",
    "closed": "closed_rw",
    "leading": "leading",
    "two-term": "two_term",
}


# ---------------------------------------------------------------- output


def _format_value(value, digits: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def _json_value(value, digits: int):
    if isinstance(value, float) and not isinstance(value, bool):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    return value


def _columns(records: list[dict]) -> list[str]:
    cols: list[str] = []
    for rec in records:
        for key in rec:
            if key not in cols:
                cols.append(key)
    return cols


def serialize(records: list[dict], fmt: str = "text", digits: int = 12) -> str:
    """Render records as an aligned text table, CSV or a JSON array."""
    if fmt == "json":
        payload = [{k: _json_value(v, digits) for k, v in rec.items()} for rec in records]
        return json.dumps(payload, indent=2) + "\n"
    cols = _columns(records)
    rows = [[_format_value(rec.get(c), digits) for c in cols] for rec in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- helpers


def _canonical_aspect(r: float) -> tuple[float, str | None]:
    if not (r > 0.0 and math.isfinite(r)):
        raise DomainError(f"aspect ratio must be positive and finite, got {r!r}")
    if r < 1.0:
        return 1.0 / r, (
            f"aspect {r:g} < 1 replaced by {1.0 / r:g}; 'end' now refers to the "
            "horizontal edges and 'side' to the vertical edges"
        )
    return r, None


def _methods_for(method: str, b: float) -> list[str]:
    if method != "all":
        return [_CLI_METHODS[method]]
    chosen = ["quadrature"]
    if b == hitting.BROWNIAN:
        chosen.append("closed_rw")
    chosen.append("leading")
    if b <= 1.0:
        chosen.append("two_term")
    return chosen


def _ratio_record(res: hitting.RatioResult, aspect_in: float, notice: str | None) -> dict:
    return {
        "aspect": aspect_in,
        "exponent": res.b,
        "method": res.method,
        "value": res.value,
        "err_estimate": res.err_estimate,
        "warning": res.warning,
        "notice": notice,
    }


def _ratio_records(aspect: float, b: float, method: str, tol: float, with_p: bool) -> list[dict]:
    r, notice = _canonical_aspect(aspect)
    m = None
    records = []
    for name in _methods_for(method, b):
        if name in ("quadrature", "closed_rw") and m is None:
            m = scmap.alpha_from_aspect(r)
        res = hitting.compute_ratio(r, b, name, tol, alpha=m)
        rec = _ratio_record(res, aspect, notice)
        if with_p:
            rec = {**rec, "probability": hitting.end_probability(res)}
            rec["notice"] = rec.pop("notice")
        records.append(rec)
    return records


# ---------------------------------------------------------------- verbs


def _cmd_alpha(args) -> list[dict]:
    r, notice = _canonical_aspect(args.aspect)
    m = scmap.alpha_from_aspect(r, args.method)
    return [
        {
            "aspect": args.aspect,
            "method": args.method,
            "alpha": m.alpha,
            "excess": m.excess,
            "aspect_check": scmap.aspect_from_alpha(m),
            "notice": notice,
        }
    ]


def _cmd_ratio(args) -> list[dict]:
    return _ratio_records(args.aspect, args.exponent, args.method, args.tol, with_p=False)


def _cmd_probability(args) -> list[dict]:
    return _ratio_records(args.aspect, args.exponent, args.method, args.tol, with_p=True)


def _aspect_grid(lo: float, hi: float, step: float) -> list[float]:
    if not step > 0.0:
        raise DomainError(f"--aspect-step must be positive, got {step!r}")
    if hi < lo:
        raise DomainError(f"--aspect-max ({hi!r}) is below --aspect-min ({lo!r})")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(n + 1)]


def _parse_exponents(text: str) -> list[float]:
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise DomainError(f"could not parse exponents {text!r}") from exc
    if not values:
        raise DomainError("no exponents given")
    return values


def _cmd_table(args) -> list[dict]:
    records = []
    for r_in in _aspect_grid(args.aspect_min, args.aspect_max, args.aspect_step):
        for b in _parse_exponents(args.exponents):
            rec = _ratio_records(r_in, b, args.method, args.tol, with_p=True)[0]
            records.append(rec)
    return records


def _cmd_map(args) -> list[dict]:
    r, notice = _canonical_aspect(args.aspect)
    if args.samples < 1:
        raise DomainError(f"--samples must be at least 1, got {args.samples!r}")
    m = scmap.alpha_from_aspect(r)
    alpha = m.alpha
    b = args.exponent
    records = []
    n = args.samples
    for i in range(n):
        u = alpha * (2 * i + 1 - n) / n
        z = scmap.sc_map_boundary(u, m)
        deriv = scmap.sc_map_deriv_abs(u, m)
        kernel = float(hitting.hit_density_halfplane(u, m, b))
        records.append(
            {
                "u": u,
                "x": z.real,
                "y": z.imag,
                "deriv_abs": deriv,
                "kernel": kernel,
                "density": kernel * deriv ** -b,
            }
        )
    if notice:
        records[0]["notice"] = notice
    return records


def _cmd_validate(args) -> tuple[list[dict], bool]:
    checks = validation.run_checks(args.level)
    records = [c.as_record() for c in checks]
    for aspect, heights in ((2.0, (19, 39, 79)), (10.0, (19, 39, 79))):
        if args.level == "full":
            heights = heights + (159,)
        for row in lattice.resolution_rows(aspect, heights):
            records.append({"kind": "lattice", **row})
    return records, all(c.passed for c in checks)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--digits", type=int, default=12, help="significant digits (1-17)")

    parser = argparse.ArgumentParser(
        prog="rectwalk",
        description="End-versus-side hitting ratios for walks started at a rectangle centre.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("alpha", parents=[common], help="corner parameter for an aspect ratio")
    p.add_argument("--aspect", type=float, required=True)
    p.add_argument("--method", choices=("theta", "asymptotic", "auto"), default="auto")

    for verb, helptext in (("ratio", "end/side ratio"), ("probability", "end probability")):
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.add_argument("--aspect", type=float, required=True)
        p.add_argument("--exponent", type=float, required=True)
        p.add_argument("--method", choices=(*_CLI_METHODS, "all"), default="quadrature")
        p.add_argument("--tol", type=float, default=hitting.DEFAULT_REL_TOL)

    p = sub.add_parser("table", parents=[common], help="ratio table over aspect ratios and exponents")
    p.add_argument("--aspect-min", type=float, required=True)
    p.add_argument("--aspect-max", type=float, required=True)
    p.add_argument("--aspect-step", type=float, required=True)
    p.add_argument("--exponents", required=True, help="comma-separated list, e.g. 0.625,1")
    p.add_argument("--method", choices=tuple(_CLI_METHODS), default="quadrature")
    p.add_argument("--tol", type=float, default=hitting.DEFAULT_REL_TOL)

    p = sub.add_parser("map", parents=[common], help="boundary samples of the Schwarz-Christoffel map")
    p.add_argument("--aspect", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--exponent", type=float, default=hitting.BROWNIAN)

    p = sub.add_parser("validate", parents=[common], help="run the reference checks")
    p.add_argument("--level", choices=validation.LEVELS, default="quick")
    return parser


_HANDLERS = {
    "alpha": _cmd_alpha,
    "ratio": _cmd_ratio,
    "probability": _cmd_probability,
    "table": _cmd_table,
    "map": _cmd_map,
}


def run(argv: Iterable[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, write records to ``stdout`` and return the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if not 1 <= args.digits <= 17:
        print(f"rectwalk: --digits must be between 1 and 17, got {args.digits}", file=stderr)
        return EXIT_USAGE
    status = EXIT_OK
    try:
        if args.verb == "validate":
            records, ok = _cmd_validate(args)
            status = EXIT_OK if ok else EXIT_ACCURACY
        else:
            records = _HANDLERS[args.verb](args)
    except DomainError as exc:
        print(f"rectwalk: {exc}", file=stderr)
        return EXIT_DOMAIN
    except AccuracyError as exc:
        msg = f"rectwalk: {exc}"
        if exc.estimate is not None:
            msg += f" (best estimate {exc.estimate!r})"
        print(msg, file=stderr)
        return EXIT_ACCURACY
    stdout.write(serialize(records, args.format, args.digits))
    if status != EXIT_OK:
        print("rectwalk: validation failed", file=stderr)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
