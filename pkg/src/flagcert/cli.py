"""Command-line front end.

Exit codes: 0 the requested check passed, 1 a verification failed,
2 usage or parse errors.  ``--format json`` switches every report to a
fixed-key JSON document with rationals rendered as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    BUILTIN_CERTIFICATES,
    VerificationError,
    builtin_certificate,
    load_certificate,
    save_certificate,
    verify,
    verify_example_order3,
)
from .constructions import (
    BUILTIN_BLOWUPS,
    builtin_blowup,
    limit_densities,
    load_blowup,
)
from .flags import EMPTY_TYPE, POINT_TYPE, TypeSigma, enumerate_flags
from .orgraphs import Orgraph, enumerate_orgraphs
from .sdp import build_problem, export_sdpa, load_solution, parse_sdpa, round_and_verify

__all__ = ["main", "CommandOutcome"]


@dataclass(frozen=True)
class CommandOutcome:
    """What a subcommand decided: exit status plus the rendered report."""

    status: int
    text: str

    def emit(self) -> int:
        if self.text:
            print(self.text)
        return self.status


def _usage_error(message: str) -> CommandOutcome:
    return CommandOutcome(2, f"error: {message}")


def _frac(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return f"{value:.12f}"


def _parse_orgraph(text: str, what: str):
    try:
        return Orgraph.from_org1(text).canonical()
    except ValueError as exc:
        raise ValueError(f"bad {what} {text!r}: {exc}") from exc


def _resolve_type(args) -> TypeSigma:
    if getattr(args, "type", None):
        return TypeSigma(Orgraph.from_org1(args.type))
    order = getattr(args, "type_order", None)
    if order in (None, 1):
        return POINT_TYPE
    if order == 0:
        return EMPTY_TYPE
    raise ValueError(f"type order {order} needs an explicit --type encoding")


def cmd_enumerate(args) -> CommandOutcome:
    try:
        if args.type_order is None and args.type is None:
            if not 0 <= args.order <= 6:
                raise ValueError("graph enumeration is supported for orders 0..6")
            items = [g.to_org1() for g in enumerate_orgraphs(args.order)]
        else:
            sigma = _resolve_type(args)
            if args.order > 5:
                raise ValueError("flag enumeration is supported up to order 5")
            basis = enumerate_flags(sigma, args.order)
            items = [f.encode() for f in basis.flags]
    except ValueError as exc:
        return _usage_error(str(exc))
    if args.format == "json":
        return CommandOutcome(0, json.dumps({"count": len(items), "encodings": items}))
    return CommandOutcome(0, "\n".join([str(len(items))] + items))


def cmd_verify(args) -> CommandOutcome:
    if args.builtin == "p3-order3":
        try:
            report = verify_example_order3()
        except VerificationError as exc:
            return CommandOutcome(1, f"order-3 worked example FAILED: {exc}")
        if args.format == "json":
            return CommandOutcome(0, json.dumps(report.to_json_dict()))
        lines = ["order-3 worked example:"]
        for name, coeffs in report.identities:
            body = ", ".join(f"{g}: {c}" for g, c in sorted(coeffs.items()))
            lines.append(f"  {name} = {body}")
        lines.append(
            f"  scalar bound: max at rho = {_frac(report.quadratic_argmax)} "
            f"is {_frac(report.quadratic_max)}; value at rho = 1 is "
            f"{_frac(report.value_at_full_edge_density)}"
        )
        lines.append("PASS")
        return CommandOutcome(0, "\n".join(lines))

    if not args.builtin and not args.certificate:
        return _usage_error("give a certificate path or --builtin")
    try:
        if args.builtin:
            cert = builtin_certificate(args.builtin)
            label = args.builtin
        else:
            cert = load_certificate(args.certificate)
            label = args.certificate
    except (VerificationError, OSError, ValueError) as exc:
        return _usage_error(str(exc))

    report = verify(cert)
    if args.format == "json":
        doc = report.to_json_dict()
        doc["certificate"] = label
        return CommandOutcome(0 if report.ok else 1, json.dumps(doc))
    lines = [
        f"certificate {label}: {len(cert.flags)} flags of order "
        f"{cert.flag_order} over type {cert.sigma}, host order {cert.host_order}",
        f"  psd: {'yes' if report.psd else 'NO'}"
        f" (float min eigenvalue {report.min_eigenvalue:.6g})",
        f"  min slack: {_frac(report.min_slack)}"
        f" at {report.min_slack_graph.to_org1()}",
        f"  implied bound: {_frac(report.implied_bound)}"
        f" ({float(report.implied_bound):.8f})",
        f"  claimed bound: {_frac(cert.bound)} ({float(cert.bound):.8f})",
        "PASS" if report.ok else "FAIL",
    ]
    return CommandOutcome(0 if report.ok else 1, "\n".join(lines))


def cmd_construct(args) -> CommandOutcome:
    if not args.builtin and not args.spec:
        return _usage_error("give a blowup spec path or --builtin")
    try:
        if args.builtin:
            spec = builtin_blowup(args.builtin)
        else:
            spec = load_blowup(args.spec)
        target = _parse_orgraph(args.target, "target") if args.target else None
        max_order = args.max_order
        if max_order is None:
            max_order = target.n if target is not None else 3
        dens = limit_densities(spec, max_order)
    except (ValueError, OSError, KeyError) as exc:
        return _usage_error(str(exc))

    if target is not None:
        value = dens.density(target)
        if args.format == "json":
            doc = {"target": target.to_org1(), "density": _frac(value)}
            return CommandOutcome(0, json.dumps(doc))
        return CommandOutcome(0, _frac(value))

    if args.format == "json":
        doc = {
            "orders": {
                str(k): {g.to_org1(): _frac(v) for g, v in sorted(dens.orders[k].items(), key=lambda kv: kv[0].to_org1())}
                for k in sorted(dens.orders)
            }
        }
        return CommandOutcome(0, json.dumps(doc))
    lines = []
    for k in sorted(dens.orders):
        for g in sorted(dens.orders[k], key=lambda g: g.to_org1()):
            lines.append(f"{k} {g.to_org1()} {_frac(dens.orders[k][g])}")
    return CommandOutcome(0, "\n".join(lines))


def cmd_sdp(args) -> CommandOutcome:
    if args.sdp_command == "export":
        try:
            target = _parse_orgraph(args.target, "target")
            sigma = _resolve_type(args)
            flag_order = args.flag_order
            if flag_order is None:
                flag_order = (args.order + sigma.order) // 2
            problem = build_problem(target, sigma, flag_order, args.order)
        except ValueError as exc:
            return _usage_error(str(exc))
        out = args.out
        if out is None:
            out = f"problem-{target.to_org1().replace(':', '_')}-n{args.order}.dat-s"
        export_sdpa(problem, out)
        if args.format == "json":
            doc = {
                "out": out,
                "dimension": problem.dimension,
                "hosts": len(problem.hosts),
            }
            return CommandOutcome(0, json.dumps(doc))
        return CommandOutcome(
            0,
            f"wrote {out}: {problem.dimension}x{problem.dimension} block, "
            f"{len(problem.hosts)} slack entries",
        )

    # round
    try:
        problem = parse_sdpa(args.problem)
        matrix, b = load_solution(args.solution)
        denominators = [int(tok) for tok in args.denominators.split(",") if tok]
        if not denominators or any(d < 1 for d in denominators):
            raise ValueError(f"bad denominator list {args.denominators!r}")
    except (ValueError, OSError) as exc:
        return _usage_error(str(exc))

    result = round_and_verify(problem, matrix, b, denominators)
    if result.ok:
        if args.out:
            save_certificate(result.certificate, args.out)
        if args.format == "json":
            doc = result.report.to_json_dict()
            doc["denominator"] = result.attempts[-1].denominator
            doc["out"] = args.out
            return CommandOutcome(0, json.dumps(doc))
        lines = [a.describe() for a in result.attempts]
        lines.append(
            f"certified bound {_frac(result.certificate.bound)} "
            f"(implied {_frac(result.report.implied_bound)})"
        )
        if args.out:
            lines.append(f"wrote {args.out}")
        return CommandOutcome(0, "\n".join(lines))
    if args.format == "json":
        doc = {
            "ok": False,
            "attempts": [
                {
                    "denominator": a.denominator,
                    "psd": a.psd,
                    "bound": _frac(a.bound),
                    "min_slack": _frac(a.min_slack),
                }
                for a in result.attempts
            ],
        }
        return CommandOutcome(1, json.dumps(doc))
    lines = [a.describe() for a in result.attempts]
    lines.append("FAIL: no denominator produced a verifiable certificate")
    return CommandOutcome(1, "\n".join(lines))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="report style (default text)",
    )
    parser.add_argument(
        "--threads", type=int, default=None,
        help="worker count; results do not depend on it "
        "(default from FLAGCERT_THREADS)",
    )


def _check_threads(args) -> str | None:
    if args.threads is None:
        env = os.environ.get("FLAGCERT_THREADS")
        if env is None:
            args.threads = 1
            return None
        try:
            args.threads = int(env)
        except ValueError:
            return f"FLAGCERT_THREADS={env!r} is not an integer"
    if args.threads < 1:
        return f"thread count must be at least 1, got {args.threads}"
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagcert",
        description="Exact verification of inducibility bounds for oriented graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list orgraphs or flags up to isomorphism")
    p_enum.add_argument("--order", type=int, required=True)
    p_enum.add_argument("--type-order", type=int, default=None, dest="type_order")
    p_enum.add_argument("--type", default=None, help="type encoding, e.g. \"1:\"")
    _add_common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = sub.add_parser("verify", help="check a certificate exactly")
    p_verify.add_argument("certificate", nargs="?", help="certificate JSON path")
    p_verify.add_argument(
        "--builtin", choices=BUILTIN_CERTIFICATES + ("p3-order3",), default=None,
    )
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_con = sub.add_parser("construct", help="limit densities of a blowup construction")
    p_con.add_argument("spec", nargs="?", help="blowup spec JSON path")
    p_con.add_argument("--builtin", choices=BUILTIN_BLOWUPS, default=None)
    p_con.add_argument("--target", default=None, help="orgraph encoding")
    p_con.add_argument("--max-order", type=int, default=None, dest="max_order")
    _add_common(p_con)
    p_con.set_defaults(func=cmd_construct)

    p_sdp = sub.add_parser("sdp", help="export the search problem / round a solution")
    sdp_sub = p_sdp.add_subparsers(dest="sdp_command", required=True)
    p_exp = sdp_sub.add_parser("export")
    p_exp.add_argument("--target", required=True)
    p_exp.add_argument("--order", type=int, default=5, help="host order (default 5)")
    p_exp.add_argument("--type-order", type=int, default=None, dest="type_order")
    p_exp.add_argument("--type", default=None)
    p_exp.add_argument("--flag-order", type=int, default=None, dest="flag_order")
    p_exp.add_argument("--out", default=None)
    _add_common(p_exp)
    p_exp.set_defaults(func=cmd_sdp)
    p_round = sdp_sub.add_parser("round")
    p_round.add_argument("--problem", required=True, help=".dat-s file")
    p_round.add_argument("--solution", required=True, help="d lines of d numbers, then b")
    p_round.add_argument("--denominators", default="100,10000,100000,1000000")
    p_round.add_argument("--out", default=None, help="certificate JSON to write")
    _add_common(p_round)
    p_round.set_defaults(func=cmd_sdp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    problem = _check_threads(args)
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return 2
    outcome = args.func(args)
    if outcome.status == 2 and outcome.text:
        print(outcome.text, file=sys.stderr)
        return 2
    return outcome.emit()


if __name__ == "__main__":
    sys.exit(main())
