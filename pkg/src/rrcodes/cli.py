"""Command line entry point.  Every command prints one JSON document on stdout.

Exit codes: 0 ok, 1 internal invariant failure, 2 invalid input,
3 verification failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import codes, oracle, verify
from .errors import FormulaDiscrepancy, InvalidInput, RRCodesError
from .quotient import QuotientCtx, nilpotency_index, q_pi
from .serialize import SCHEMA, ctx_from_parts, ctx_summary, dumps, spec_from_json

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, payload: dict, code: int, diagnostics: list | None = None):
        super().__init__(payload.get("message", ""))
        self.payload = payload
        self.code = code
        self.diagnostics = diagnostics or []


def _context(args) -> QuotientCtx:
    if args.field_json is None or args.alpha_json is None:
        raise InvalidInput("--field-json and --alpha-json are required")
    return ctx_from_parts(args.field_json, args.s, args.alpha_json)


def _max_ideal(ctx: QuotientCtx) -> list[str]:
    pi = "x^3 - alpha0"
    return {
        "NC_V": [pi, "u"],
        "NC_FULL": [pi, "u"],
        "NC_U": [pi, "v"],
        "NC_UV": [pi, "u", "v"],
    }.get(ctx.case, [pi, "u", "v"])


def cmd_ring_info(args) -> tuple[dict, list]:
    ctx = _context(args)
    payload = {
        "context": ctx_summary(ctx),
        "alpha0": ctx.alpha0.to_json(),
        "cube": ctx.case == "CUBE",
        "nilpotency_index": verify.predicted_nilpotency(ctx),
        "nilpotency_measured": nilpotency_index(q_pi(ctx)),
    }
    if ctx.case == "CUBE":
        payload["crt_components"] = [c.to_json() for c in codes.crt_decompose(ctx)]
    else:
        payload["maximal_ideal"] = _max_ideal(ctx)
    return payload, []


def _describe(args):
    ctx = _context(args)
    spec = spec_from_json(ctx, args.spec_json)
    return codes.describe(spec, verify=True, max_dim=args.max_dim)


def cmd_classify(args) -> tuple[dict, list]:
    d = _describe(args)
    return {"context": ctx_summary(d.spec.ctx), "descriptor": d.to_json()}, d.dual.diagnostics


def cmd_dual(args) -> tuple[dict, list]:
    d = _describe(args)
    return {"spec": d.spec.to_json(), "dual": d.dual.to_json()}, d.dual.diagnostics


def cmd_enumerate(args) -> tuple[dict, list]:
    ctx = _context(args)
    specs = [s.to_json() for s in codes.enumerate_specs(ctx, args.z_bound, args.limit)]
    return {"context": ctx_summary(ctx), "count": len(specs), "specs": specs}, []


def cmd_verify(args) -> tuple[dict, list]:
    budget = verify.Budget(seed=args.seed, samples=args.samples, max_dim=args.max_dim)
    if args.field_json is None and args.alpha_json is None:
        instances = verify.desk_instances()
    else:
        ctx = _context(args)
        instances = [("supplied", ctx)]
    blocks, every = [], []
    for label, ctx in instances:
        checks = verify.run(ctx, args.suite, budget)
        every.extend(checks)
        blocks.append({"label": label, "context": ctx_summary(ctx), "checks": checks,
                       "summary": verify.summarize(checks)})
    payload = {"suite": args.suite, "seed": args.seed, "samples": args.samples,
               "instances": blocks, "summary": verify.summarize(every)}
    if payload["summary"]["failed"]:
        raise CommandFailed(payload, EXIT_VERIFY)
    return payload, []


def cmd_gen_matrix(args) -> tuple[dict, list]:
    ctx = _context(args)
    if ctx.dim > args.max_dim:
        raise InvalidInput(f"ambient dimension {ctx.dim} exceeds --max-dim {args.max_dim}")
    spec = codes.validate_spec(spec_from_json(ctx, args.spec_json))
    S = oracle.span_closure(codes.generators(spec), ctx)
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(S.to_text())
    except OSError as exc:
        raise CommandFailed({"error": "IOError", "message": str(exc)}, EXIT_IO) from exc
    return {"spec": spec.to_json(), "dim": S.dim, "path": args.out}, []


COMMANDS: dict[str, Callable] = {
    "ring-info": cmd_ring_info,
    "classify": cmd_classify,
    "dual": cmd_dual,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "gen-matrix": cmd_gen_matrix,
}


def _common(defaults: bool) -> argparse.ArgumentParser:
    # subcommand copies suppress defaults so flags given before the subcommand survive
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field-json", default=d(None), help='e.g. {"p":7,"m":1}')
    common.add_argument("--s", type=int, default=d(1))
    common.add_argument("--alpha-json", default=d(None), help='e.g. {"a1":[2],"a2":[0],"a3":[3],"a4":[5]}')
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--max-dim", type=int, default=d(128))
    common.add_argument("--samples", type=int, default=d(20))
    return common


def build_parser() -> argparse.ArgumentParser:
    top, common = _common(True), _common(False)
    parser = argparse.ArgumentParser(prog="rrcodes", description=__doc__.splitlines()[0], parents=[top])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ring-info", parents=[common], help="case, alpha0, nilpotency, maximal ideal or CRT split")
    for name in ("classify", "dual"):
        p = sub.add_parser(name, parents=[common], help="describe a code spec" if name == "classify" else "dual only")
        p.add_argument("--spec-json", required=True)
    p = sub.add_parser("enumerate", parents=[common], help="list canonical specs")
    p.add_argument("--z-bound", type=int, default=0)
    p.add_argument("--limit", type=int, default=100)
    p = sub.add_parser("verify", parents=[common], help="run oracle check suites")
    p.add_argument("--suite", default="all", choices=list(verify.SUITES) + ["all"])
    p = sub.add_parser("gen-matrix", parents=[common], help="export the oracle basis of a code")
    p.add_argument("--spec-json", required=True)
    p.add_argument("--out", required=True)
    return parser


def _emit(command: str, status: str, payload: dict, diagnostics: list) -> None:
    doc = {"schema": SCHEMA, "command": command, "status": status, "payload": payload, "diagnostics": diagnostics}
    sys.stdout.write(dumps(doc) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    command = args.command
    try:
        payload, diagnostics = COMMANDS[command](args)
    except CommandFailed as exc:
        _emit(command, "error", exc.payload, exc.diagnostics)
        return exc.code
    except RRCodesError as exc:
        info = {"error": exc.name, "message": str(exc)}
        if isinstance(exc, FormulaDiscrepancy):
            info["branch"] = exc.branch
        _emit(command, "error", info, [])
        return exc.exit_code
    except Exception as exc:  # anything unexpected is an internal failure
        _emit(command, "error", {"error": type(exc).__name__, "message": str(exc)}, [])
        return EXIT_INTERNAL
    _emit(command, "ok", payload, diagnostics)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
