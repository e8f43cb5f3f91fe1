"""Command-line surface tying the modules together.

Subcommands: certify, table, curve, amplify, constants, norm, dual, lift.
Every command accepts --json / --csv; tolerances and grid sizes come from
an optional flat key=value config file. POLYTORUS_THREADS caps the
certification scan's parallelism.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys

import numpy as np

from . import certify as certify_mod
from . import constants as constants_mod
from . import duality, lift, norms
from .config import DEFAULT, load_config
from .fourier import FourierSeries, LinearPolynomial


def _parse_q(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def _parse_coeffs(text: str) -> LinearPolynomial:
    return LinearPolynomial([complex(tok) for tok in text.split(",") if tok.strip()])


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(payload, args, default_csv: bool = False) -> None:
    as_csv = args.csv or (default_csv and not args.json)
    if not as_csv:
        json.dump(_jsonable(payload), sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf)
    rows = payload if isinstance(payload, list) else None
    if rows is not None:
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(["" if v is None else v for v in row.values()])
    else:
        flat = _jsonable(payload)
        writer.writerow(["key", "value"])
        for k, v in flat.items():
            writer.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
    sys.stdout.write(buf.getvalue())


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="force JSON output")
    parser.add_argument("--csv", action="store_true", help="force CSV output")
    parser.add_argument("--config", help="flat key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polytorus")
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="certify L^q -> L^p unboundedness")
    cert.add_argument("--p", type=float, required=True)
    cert.add_argument("--q", type=_parse_q, required=True)
    cert.add_argument("--dmax", type=int, default=12)
    cert.add_argument("--seed", type=int, default=None)
    _add_common(cert)

    table = sub.add_parser("table", help="critical-curve comparison table")
    table.add_argument("--q-list", required=True, help="comma-separated q values; 'inf' allowed")
    _add_common(table)

    curve = sub.add_parser("curve", help="critical curve over a q range")
    curve.add_argument("--qmin", type=float, required=True)
    curve.add_argument("--qmax", type=float, required=True)
    curve.add_argument("--steps", type=int, required=True)
    _add_common(curve)

    amp = sub.add_parser("amplify", help="tensor-doubling ratio demonstration")
    amp.add_argument("--series-file", required=True, help="JSON series file")
    amp.add_argument("--p", type=float, required=True)
    amp.add_argument("--q", type=float, required=True)
    _add_common(amp)

    cons = sub.add_parser("constants", help="critical exponent and Khintchine constants")
    cons.add_argument("--p", type=float, default=None, help="exponent for a_p, b_p (default p*)")
    _add_common(cons)

    norm = sub.add_parser("norm", help="L^p norm of a linear polynomial")
    norm.add_argument("--coeffs", required=True, help="comma-separated complex coefficients")
    norm.add_argument("--p", type=float, required=True)
    norm.add_argument(
        "--method",
        default="auto",
        choices=["auto", "grid", "multinomial", "montecarlo", "bessel", "cltLimit"],
    )
    norm.add_argument("--samples", type=int, default=None)
    norm.add_argument("--seed", type=int, default=0)
    norm.add_argument("--grid-N", type=int, default=None, dest="grid_n")
    _add_common(norm)

    dual = sub.add_parser("dual", help="dual norm of a linear function")
    dual.add_argument("--coeffs", required=True)
    dual.add_argument("--p", type=float, required=True)
    dual.add_argument("--restarts", type=int, default=None)
    dual.add_argument("--seed", type=int, default=0)
    _add_common(dual)

    lft = sub.add_parser("lift", help="minimal-norm Riesz preimage of z_1+...+z_d")
    lft.add_argument("--d", type=int, required=True)
    lft.add_argument("--q", type=_parse_q, required=True)
    lft.add_argument("--grid-N", type=int, default=None, dest="grid_n")
    lft.add_argument("--max-deg", type=int, default=None, dest="max_deg")
    lft.add_argument("--emit-coeffs", action="store_true")
    _add_common(lft)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config) if args.config else DEFAULT

    if args.command == "certify":
        result = certify_mod.certify_unbounded(
            args.p, args.q, d_max=args.dmax, seed=args.seed, config=config
        )
        if isinstance(result, certify_mod.Certificate):
            payload = {"status": "certified", **dataclasses.asdict(result)}
            payload["method_log"] = list(result.method_log)
            _emit(payload, args)
            return certify_mod.EXIT_CERTIFIED
        payload = {"status": result.reason, **dataclasses.asdict(result)}
        payload["method_log"] = list(result.method_log)
        _emit(payload, args)
        return result.exit_code

    if args.command == "table":
        q_values = [_parse_q(tok) for tok in args.q_list.split(",") if tok.strip()]
        _emit(certify_mod.critical_table(q_values), args, default_csv=True)
        return 0

    if args.command == "curve":
        qs = np.linspace(args.qmin, args.qmax, args.steps)
        rows = [
            {
                "q": float(q),
                "critical_p": constants_mod.critical_curve(float(q)),
                "legacy_p": constants_mod.legacy_curve(float(q)),
            }
            for q in qs
        ]
        _emit(rows, args, default_csv=True)
        return 0

    if args.command == "amplify":
        with open(args.series_file) as fh:
            series = FourierSeries.from_json(fh.read())
        ratio, ratio2 = certify_mod.amplification_demo(series, args.p, args.q, config=config)
        _emit(
            {"ratio": ratio, "ratio_doubled": ratio2, "squaring_defect": ratio2 - ratio**2},
            args,
        )
        return 0

    if args.command == "constants":
        p_star = constants_mod.solve_critical_p()
        p = p_star if args.p is None else args.p
        kc = constants_mod.khintchine_constants(p)
        triple = constants_mod.ExponentTriple.from_pq(max(p, 2.0), math.inf)
        _emit(
            {
                "p_star": p_star,
                "p": p,
                "a_p": kc.a,
                "b_p": kc.b,
                "margins": {
                    "theorem_margin_q_inf": constants_mod.unboundedness_margin(triple),
                    "legacy_margin_q_inf": constants_mod.legacy_condition(triple),
                },
            },
            args,
        )
        return 0

    if args.command == "norm":
        poly = _parse_coeffs(args.coeffs)
        if args.method == "auto":
            est = norms.linear_norm(poly, args.p, samples=args.samples, seed=args.seed, config=config)
        elif args.method == "grid":
            est = norms.grid_norm(poly.to_series(), args.p, n=args.grid_n, config=config)
        elif args.method == "multinomial":
            est = norms.multinomial_norm(poly, int(args.p))
        elif args.method == "montecarlo":
            est = norms.monte_carlo_norm(
                poly, args.p, args.samples or config.mc_default_samples, args.seed, config=config
            )
        elif args.method == "bessel":
            est = norms.pearson_walk_moment(poly.dim, args.p, config=config)
        else:
            est = norms.NormEstimate(norms.clt_limit_norm(args.p), "cltLimit", 0.0, 0)
        _emit(
            {
                "value": est.value,
                "method": est.method,
                "error_bound": est.error_bound,
                "samples": est.samples_or_points,
            },
            args,
        )
        return 0

    if args.command == "dual":
        poly = _parse_coeffs(args.coeffs)
        result = duality.dual_norm_linear(
            poly, args.p, restarts=args.restarts, seed=args.seed, config=config
        )
        _emit(
            {
                "value": result.value,
                "maximizer": [{"re": c.real, "im": c.imag} for c in result.maximizer.coeffs],
                "lower_certificate": result.lower_certificate,
                "upper_certificate": result.upper_certificate,
            },
            args,
        )
        return 0

    if args.command == "lift":
        built = lift.build_lift(args.d, args.q, n=args.grid_n, config=config)
        report = lift.verify_projection(built, max_deg=args.max_deg, config=config)
        lhs, rhs = lift.minimal_norm_identity(built)
        payload = {
            "C": built.normalizer,
            "norm_lhs": lhs,
            "norm_rhs": rhs,
            "projection_ok": report.ok,
            "max_violation": max(report.unit_coefficient_error, report.max_analytic_violation),
        }
        if args.emit_coeffs:
            from .fourier import extract_coefficients

            series = extract_coefficients(
                built.grid, args.max_deg or config.lift_max_deg, config=config
            )
            payload["coefficient_table"] = series.to_payload()["terms"]
        else:
            payload["coefficient_table"] = None
        _emit(payload, args)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
