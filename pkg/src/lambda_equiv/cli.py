"""
Command line interface: ``lambda-equiv {eq,verify,translate,whnf}``.

Exit codes are part of the interface:

* ``eq``: 0 equal, 1 not equivalent, 2 parse or type error, 3 out of fuel
* ``verify``: 0 valid, 1 invalid, 2 malformed file
* ``translate``: 0 certificate produced, 1 invalid derivation, 2 malformed file
* ``whnf``: 0 normal form printed, 2 parse error, 3 out of fuel
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from lambda_equiv.algo import check_tm_eq, decide_tm_eq
from lambda_equiv.certificates import (
    Node,
    deserialize_certificate,
    deserialize_decl,
    dumps,
    serialize_tm_eq,
)
from lambda_equiv.decl import check_decl
from lambda_equiv.errors import (
    CertificateError,
    ContractError,
    FuelExhausted,
    InconsistentCertificate,
    LambdaEquivError,
    NotationError,
)
from lambda_equiv.logrel import completeness
from lambda_equiv.notation import parse_ctx, parse_term, parse_type, print_term
from lambda_equiv.reduction import DEFAULT_FUEL, step_depth, whnf

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_FUEL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambda-equiv",
        description="Decide and certify beta-eta equality of simply typed lambda terms.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v for info, -vv for debug)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    eq = commands.add_parser("eq", help="Decide whether two terms are equal at a type")
    eq.add_argument("ctx", help="Context, e.g. 'f:i -> i, x:i' (may be empty)")
    eq.add_argument("left", help="Left-hand term, e.g. '\\x. f x'")
    eq.add_argument("right", help="Right-hand term")
    eq.add_argument("type", help="Type to compare at, e.g. 'i -> i'")
    eq.add_argument("--cert", metavar="PATH", help="Write the certificate here if equal")
    _add_common(eq, fuel=True)
    eq.set_defaults(handler=run_eq)

    verify = commands.add_parser("verify", help="Check an algorithmic certificate")
    verify.add_argument("certificate", help="Certificate file written by 'eq' or 'translate'")
    _add_common(verify, fuel=False)
    verify.set_defaults(handler=run_verify)

    translate = commands.add_parser(
        "translate", help="Turn a declarative derivation into an algorithmic certificate"
    )
    translate.add_argument("derivation", help="Declarative derivation file")
    translate.add_argument(
        "--cert", metavar="PATH", help="Write the certificate here instead of stdout"
    )
    _add_common(translate, fuel=False)
    translate.set_defaults(handler=run_translate)

    normalize = commands.add_parser("whnf", help="Weak head normalize a term, showing each step")
    normalize.add_argument("ctx", help="Context the term is stated in")
    normalize.add_argument("term", help="Term to reduce")
    _add_common(normalize, fuel=True)
    normalize.set_defaults(handler=run_whnf)

    return parser


def _add_common(parser: argparse.ArgumentParser, *, fuel: bool) -> None:
    if fuel:
        parser.add_argument(
            "--fuel",
            type=int,
            default=DEFAULT_FUEL,
            help=f"Maximum weak head steps per normalization (default {DEFAULT_FUEL})",
        )
    parser.add_argument(
        "--json", action="store_true", help="Print a machine-readable result on stdout"
    )


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _fail(args: argparse.Namespace, error: Exception, code: int) -> int:
    print(f"error: {error}", file=sys.stderr)
    if args.json:
        print(json.dumps({"result": "error", "message": str(error)}, sort_keys=True))
    return code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise CertificateError(f"Cannot read file: {e}", path=path) from e


def _write_certificate(path: str, node: Node) -> None:
    Path(path).write_text(dumps(node), encoding="utf-8")
    logger.info("Wrote certificate to %s", path)


def run_eq(args: argparse.Namespace) -> int:
    try:
        ctx = parse_ctx(args.ctx)
        left = parse_term(args.left, ctx)
        right = parse_term(args.right, ctx)
        tp = parse_type(args.type)
        deriv = decide_tm_eq(ctx.types, left, right, tp, fuel=args.fuel)
    except FuelExhausted as e:
        return _fail(args, e, EXIT_FUEL)
    except (NotationError, ContractError) as e:
        return _fail(args, e, EXIT_INPUT)

    if deriv is None:
        _emit(args, "not equivalent", {"result": "not-equivalent"})
        return EXIT_REJECTED

    node = serialize_tm_eq(ctx, deriv, left, right, tp)
    if args.cert:
        _write_certificate(args.cert, node)
    _emit(args, "equal", {"result": "equal", "certificate": node})
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    try:
        (ctx, left, right, tp), deriv = deserialize_certificate(
            _read(args.certificate), path=args.certificate
        )
    except InconsistentCertificate as e:
        logger.info("%s", e)
        _emit(args, "invalid", {"result": "invalid"})
        return EXIT_REJECTED
    except CertificateError as e:
        return _fail(args, e, EXIT_INPUT)

    if check_tm_eq(ctx.types, deriv, left, right, tp):
        _emit(args, "valid", {"result": "valid"})
        return EXIT_OK
    _emit(args, "invalid", {"result": "invalid"})
    return EXIT_REJECTED


def run_translate(args: argparse.Namespace) -> int:
    try:
        (ctx, left, right, tp), deriv = deserialize_decl(
            _read(args.derivation), path=args.derivation
        )
    except InconsistentCertificate as e:
        logger.info("%s", e)
        _emit(args, "invalid derivation", {"result": "invalid"})
        return EXIT_REJECTED
    except CertificateError as e:
        return _fail(args, e, EXIT_INPUT)

    if not check_decl(ctx.types, deriv, left, right, tp):
        _emit(args, "invalid derivation", {"result": "invalid"})
        return EXIT_REJECTED

    result = completeness(ctx.types, deriv)
    if not check_tm_eq(ctx.types, result, left, right, tp):
        # completeness promises a valid certificate; reaching this is a bug
        return _fail(args, ContractError("Translated certificate does not check"), EXIT_REJECTED)

    node = serialize_tm_eq(ctx, result, left, right, tp)
    if args.cert:
        _write_certificate(args.cert, node)
    _emit(args, "" if args.cert else dumps(node), {"result": "translated", "certificate": node})
    return EXIT_OK


def format_step_depth(depth: int) -> str:
    """``beta`` at the head, ``app-left^k beta`` under ``k`` applications."""
    return "beta" if depth == 0 else f"app-left^{depth} beta"


def run_whnf(args: argparse.Namespace) -> int:
    try:
        ctx = parse_ctx(args.ctx)
        term = parse_term(args.term, ctx)
        normal, trace = whnf(term, args.fuel)
    except FuelExhausted as e:
        return _fail(args, e, EXIT_FUEL)
    except NotationError as e:
        return _fail(args, e, EXIT_INPUT)

    depths = [step_depth(step) for step in trace]
    text = print_term(ctx.names, normal)
    lines = [text, *(format_step_depth(depth) for depth in depths)]
    _emit(
        args,
        "\n".join(lines),
        {"normal-form": text, "trace": [{"depth": depth} for depth in depths]},
    )
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except LambdaEquivError as e:
        logger.debug("Unhandled library error", exc_info=True)
        return _fail(args, e, EXIT_INPUT)
    except RecursionError:
        logger.debug("Input too deep", exc_info=True)
        return _fail(args, CertificateError("Input is nested too deeply"), EXIT_INPUT)


if __name__ == "__main__":
    raise SystemExit(main())
