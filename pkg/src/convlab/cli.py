"""Command-line harness: exact convolutions and verification sweeps.

Six subcommands, each emitting machine-readable rows (CSV by default,
JSON behind --format json) with a fixed column order:

  convolve         one exact additive convolution value
                   columns: N, M, boundary, value
  verify-ingham    divisor convolution vs. its main term over an N grid
                   columns: N, M, boundary, exact, main, residual,
                            envelope, normalized, relative, sub_full_ratio
  verify-general   normalized sigma convolution vs. its main term
                   columns: alpha, beta, N, M, delta, regime, exact,
                            main, residual, envelope, normalized
  orthogonality    Ramanujan-sum pair sums vs. the diagonal main term
                   columns: r, s, exact, main, defect, normalized
  goldbach         Lambda self-convolution vs. N times the singular series
                   columns: N, R, exact, singular_series, main, ratio
  tau              coprime-pair harmonic sum vs. (3/pi^2) log^2 y
                   columns: y, exact, main, residual_over_log

Exit codes: 0 pass, 1 assertion failure, 2 usage or domain error.
Floats are printed with 15 significant digits; reruns are byte-identical.
The sieve is built once per process at the largest limit the command
needs (or --sieve-limit, whichever is bigger).  CONVLAB_THREADS caps
sweep parallelism; grid results never depend on the worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .arith import build_sieve, tabulate
from .asymptotics import (
    divisor_report,
    envelope_defect,
    main_term_sigma_norm,
    ramanujan_regime,
    sigma_norm_report,
    sweep,
    tau_main,
)
from .convolution import (
    ConvolutionSpec,
    additive_convolution,
    divisor_additive_convolution,
    tau_exact,
)
from .errors import UsageError
from .ramanujan import orthogonality_defect, singular_series

Row = Dict[str, Any]


def _parse_kind(text: str) -> Tuple[str, Optional[float]]:
    plain = {"d": "divisor", "mu": "mobius", "phi": "phi", "lambda": "lambda"}
    if text in plain:
        return plain[text], None
    for prefix in ("sigma_norm:", "sigma:"):
        if text.startswith(prefix):
            try:
                s = float(text[len(prefix):])
            except ValueError:
                raise UsageError(f"bad exponent in function kind {text!r}") from None
            return prefix[:-1], s
    raise UsageError(
        f"unknown function kind {text!r}; expected one of "
        "d, mu, phi, lambda, sigma:s, sigma_norm:s"
    )


def _parse_m_rule(text: str) -> Tuple[str, Optional[float]]:
    if text == "half":
        return "half", None
    if text.startswith("frac:"):
        c = float(text[5:])
        if not 0 < c <= 1:
            raise UsageError(f"frac rule needs 0 < c <= 1, got {c}")
        return "frac", c
    if text.startswith("fixed:"):
        return "fixed", float(text[6:])
    raise UsageError(f"unknown M rule {text!r}; expected half, frac:c, or fixed:M")


def _parse_grid(text: str, kind: str) -> List[float]:
    toks = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not toks:
        raise UsageError(f"empty {kind} grid")
    try:
        return [float(tok) for tok in toks]
    except ValueError:
        raise UsageError(f"bad {kind} grid entry in {text!r}") from None


def _fmt_float(v: float) -> str:
    return "nan" if math.isnan(v) else "%.15g" % v


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, float):
        return None if math.isnan(v) else float("%.15g" % v)
    return v


def _emit(
    command: str,
    headers: Sequence[str],
    rows: Sequence[Row],
    summary: Dict[str, Any],
    fmt: str,
    output: Optional[str],
) -> None:
    if fmt == "json":
        doc = {
            "command": command,
            "rows": [{h: _json_value(row[h]) for h in headers} for row in rows],
            "summary": {k: _json_value(v) for k, v in summary.items()},
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [",".join(headers)]
        for row in rows:
            lines.append(",".join(_csv_cell(row[h]) for h in headers))
        for key, val in summary.items():
            lines.append(f"# {key}={_csv_cell(val)}")
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sieve_for(required: int, requested: Optional[int]):
    if requested is not None and requested < required:
        raise UsageError(
            f"--sieve-limit {requested} is below the required limit {required}"
        )
    return build_sieve(max(required, requested or 0, 2))


# --- subcommands ---------------------------------------------------------

_CONVOLVE_HEADERS = ("N", "M", "boundary", "value")


def cmd_convolve(args: argparse.Namespace) -> int:
    fkind, fs = _parse_kind(args.f)
    gkind, gs = _parse_kind(args.g)
    sieve = _sieve_for(args.N, args.sieve_limit)
    ftab = tabulate(sieve, fkind, args.N, s=fs)
    gtab = ftab if (gkind, gs) == (fkind, fs) else tabulate(sieve, gkind, args.N, s=gs)
    mode = "exact_integer" if ftab.is_integer and gtab.is_integer else "real"
    spec = ConvolutionSpec(N=args.N, M=args.M, boundary=args.boundary, value_mode=mode)
    value = additive_convolution(ftab, gtab, spec)
    row = {"N": args.N, "M": args.M, "boundary": args.boundary, "value": value}
    _emit("convolve", _CONVOLVE_HEADERS, [row], {}, args.format, args.output)
    return 0


_INGHAM_HEADERS = (
    "N", "M", "boundary", "exact", "main", "residual",
    "envelope", "normalized", "relative", "sub_full_ratio",
)


def cmd_verify_ingham(args: argparse.Namespace) -> int:
    grid = [int(v) for v in _parse_grid(args.N_grid, "N")]
    rule, param = _parse_m_rule(args.M_rule)
    sieve = _sieve_for(max(grid), args.sieve_limit)
    dtable = tabulate(sieve, "divisor", max(grid))

    def m_of(N: int) -> float:
        if rule == "half":
            return float(N // 2)
        if rule == "frac":
            return param * N
        return param

    result = sweep(lambda N: divisor_report(sieve, dtable, N, m_of(N)), grid)
    rows: List[Row] = []
    for N, rep in zip(grid, result.reports):
        if rule == "frac":
            full = divisor_additive_convolution(dtable, N, float(N), "half_open")
            ratio = rep.exact / full
        else:
            ratio = math.nan
        boundary = "closed" if rep.envelope_kind == "divisor_subsum" else "half_open"
        rows.append(
            {
                "N": N,
                "M": rep.M,
                "boundary": boundary,
                "exact": rep.exact,
                "main": rep.main,
                "residual": rep.residual,
                "envelope": rep.envelope,
                "normalized": rep.normalized,
                "relative": rep.relative,
                "sub_full_ratio": ratio,
            }
        )
    first, last = result.endpoint_relative
    norm0 = abs(result.reports[0].normalized)
    trend_ok = True
    if len(grid) >= 2:
        trend_ok = abs(last) < abs(first) and all(
            abs(r.normalized) <= 2.0 * norm0 for r in result.reports
        )
    summary = {
        "max_normalized": result.max_normalized,
        "relative_first": first,
        "relative_last": last,
        "trend_ok": trend_ok,
    }
    _emit("verify-ingham", _INGHAM_HEADERS, rows, summary, args.format, args.output)
    return 0 if trend_ok else 1


_GENERAL_HEADERS = (
    "alpha", "beta", "N", "M", "delta", "regime",
    "exact", "main", "residual", "envelope", "normalized",
)


def cmd_verify_general(args: argparse.Namespace) -> int:
    if args.alpha <= 0 or args.beta <= 0:
        raise UsageError("alpha and beta must be positive")
    grid = _parse_grid(args.M_grid, "M")
    sieve = _sieve_for(args.N, args.sieve_limit)
    ftab = tabulate(sieve, "sigma_norm", args.N, s=args.alpha)
    gtab = ftab if args.beta == args.alpha else tabulate(
        sieve, "sigma_norm", args.N, s=args.beta
    )
    delta = min(args.alpha, args.beta)
    regime = ramanujan_regime(delta)
    rows: List[Row] = []
    reports = []
    for M in grid:
        if M < 2:
            # the regime envelope needs M >= 2 (log M > 0), so no normalization here
            spec = ConvolutionSpec(N=args.N, M=M, boundary="half_open", value_mode="real")
            exact = additive_convolution(ftab, gtab, spec)
            main, _ = main_term_sigma_norm(sieve, args.alpha, args.beta, args.N, M)
            row_vals = (exact, main, exact - main, math.nan, math.nan)
        else:
            rep = sigma_norm_report(
                sieve, ftab, gtab, args.alpha, args.beta, args.N, M
            )
            reports.append(rep)
            row_vals = (rep.exact, rep.main, rep.residual, rep.envelope, rep.normalized)
        rows.append(
            {
                "alpha": args.alpha,
                "beta": args.beta,
                "N": args.N,
                "M": M,
                "delta": delta,
                "regime": regime,
                "exact": row_vals[0],
                "main": row_vals[1],
                "residual": row_vals[2],
                "envelope": row_vals[3],
                "normalized": row_vals[4],
            }
        )
    bounded_ok = True
    if len(reports) >= 2:
        if regime == "delta_gt_1":
            bounded_ok = abs(reports[-1].residual) <= 10.0 * abs(reports[0].residual)
        else:
            norm0 = abs(reports[0].normalized)
            bounded_ok = all(abs(r.normalized) <= 2.0 * norm0 for r in reports)
    max_norm = max((abs(r.normalized) for r in reports), default=math.nan)
    summary = {"regime": regime, "max_normalized": max_norm, "bounded_ok": bounded_ok}
    _emit("verify-general", _GENERAL_HEADERS, rows, summary, args.format, args.output)
    return 0 if bounded_ok else 1


_ORTHO_HEADERS = ("r", "s", "exact", "main", "defect", "normalized")


def cmd_orthogonality(args: argparse.Namespace) -> int:
    if args.r_max < 1 or args.s_max < 1:
        raise UsageError("r-max and s-max must be >= 1")
    required = max(args.N, args.r_max, args.s_max)
    sieve = _sieve_for(required, args.sieve_limit)
    rows: List[Row] = []
    worst = 0.0
    for r in range(1, args.r_max + 1):
        for s in range(1, args.s_max + 1):
            rec = orthogonality_defect(sieve, r, s, args.N, args.M)
            normalized = rec.defect / envelope_defect(r, s)
            worst = max(worst, abs(normalized))
            rows.append(
                {
                    "r": r,
                    "s": s,
                    "exact": rec.exact,
                    "main": rec.main,
                    "defect": rec.defect,
                    "normalized": normalized,
                }
            )
    summary = {"max_normalized_defect": worst}
    _emit("orthogonality", _ORTHO_HEADERS, rows, summary, args.format, args.output)
    if args.assert_max is not None and worst > args.assert_max:
        return 1
    return 0


_GOLDBACH_HEADERS = ("N", "R", "exact", "singular_series", "main", "ratio")


def cmd_goldbach(args: argparse.Namespace) -> int:
    if args.N < 2 or args.N % 2 != 0:
        raise UsageError(f"N must be an even integer >= 2, got {args.N}")
    if args.R < 1:
        raise UsageError(f"R must be >= 1, got {args.R}")
    sieve = _sieve_for(max(args.N, args.R), args.sieve_limit)
    ltab = tabulate(sieve, "lambda", args.N)
    spec = ConvolutionSpec(
        N=args.N, M=float(args.N), boundary="half_open", value_mode="real"
    )
    exact = additive_convolution(ltab, ltab, spec)
    ss = singular_series(sieve, args.N, args.R)
    main = args.N * ss
    ratio = exact / main if main != 0 else math.nan
    row = {
        "N": args.N,
        "R": args.R,
        "exact": exact,
        "singular_series": ss,
        "main": main,
        "ratio": ratio,
    }
    in_band = bool(0.5 <= ratio <= 1.5)
    summary = {"in_band": in_band}
    _emit("goldbach", _GOLDBACH_HEADERS, [row], summary, args.format, args.output)
    return 0 if in_band else 1


_TAU_HEADERS = ("y", "exact", "main", "residual_over_log")


def cmd_tau(args: argparse.Namespace) -> int:
    exact = tau_exact(args.y)
    if args.y >= 2:
        main = tau_main(args.y)
        rol = (exact - main) / math.log(args.y)
    else:
        main = math.nan
        rol = math.nan
    row = {"y": args.y, "exact": exact, "main": main, "residual_over_log": rol}
    _emit("tau", _TAU_HEADERS, [row], {}, args.format, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write to a file instead of stdout")
    common.add_argument(
        "--sieve-limit",
        type=int,
        default=None,
        help="sieve size; must cover every N the command touches",
    )

    parser = argparse.ArgumentParser(
        prog="convlab",
        description="Exact additive convolution sums and their asymptotic checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "convolve",
        parents=[common],
        help="one exact convolution sum",
        description="Columns: " + ", ".join(_CONVOLVE_HEADERS),
    )
    p.add_argument("--f", required=True, help="d, mu, phi, lambda, sigma:s, sigma_norm:s")
    p.add_argument("--g", required=True, help="same kinds as --f")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=float, required=True)
    p.add_argument("--boundary", choices=("half_open", "closed"), required=True)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser(
        "verify-ingham",
        parents=[common],
        help="divisor convolution vs. main term over an N grid",
        description="Columns: " + ", ".join(_INGHAM_HEADERS),
    )
    p.add_argument("--N-grid", dest="N_grid", required=True, help="comma-separated N values")
    p.add_argument(
        "--M-rule",
        dest="M_rule",
        required=True,
        help="half, frac:c, or fixed:M (sub_full_ratio is reported for frac)",
    )
    p.set_defaults(func=cmd_verify_ingham)

    p = sub.add_parser(
        "verify-general",
        parents=[common],
        help="normalized sigma convolution vs. main term over an M grid",
        description="Columns: " + ", ".join(_GENERAL_HEADERS),
    )
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M-grid", dest="M_grid", required=True, help="comma-separated M values")
    p.set_defaults(func=cmd_verify_general)

    p = sub.add_parser(
        "orthogonality",
        parents=[common],
        help="Ramanujan pair sums vs. the diagonal main term",
        description="Columns: " + ", ".join(_ORTHO_HEADERS),
    )
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--r-max", dest="r_max", type=int, required=True)
    p.add_argument("--s-max", dest="s_max", type=int, required=True)
    p.add_argument(
        "--assert-max",
        dest="assert_max",
        type=float,
        default=None,
        help="exit 1 if max |defect|/(rs(log(rs)+1)) exceeds this",
    )
    p.set_defaults(func=cmd_orthogonality)

    p = sub.add_parser(
        "goldbach",
        parents=[common],
        help="Lambda self-convolution vs. N times the singular series",
        description="Columns: " + ", ".join(_GOLDBACH_HEADERS),
    )
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--R", type=int, required=True)
    p.set_defaults(func=cmd_goldbach)

    p = sub.add_parser(
        "tau",
        parents=[common],
        help="coprime-pair harmonic sum vs. its main term",
        description="Columns: " + ", ".join(_TAU_HEADERS),
    )
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_tau)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
