"""
JSON certificates for algorithmic and declarative derivations.

Every node is an object with a ``"rule"`` and a ``"stmt"`` holding the
judgment it concludes in canonical concrete syntax; children sit under
rule-specific keys. Traces are arrays of ``{"depth": k}``, each meaning the
beta step under ``k`` application spines. Files are written with sorted keys
and no insignificant whitespace, so re-serialization is byte-stable.

Only the root statement is authoritative when reading. The reader recomputes
every inner statement from the one above it and its rule, and rejects a file
whose annotation disagrees. Variable names may differ; only the de Bruijn
form is compared.
"""

from __future__ import annotations

import json
from typing import Any

from lambda_equiv.algo import (
    AlgArr,
    AlgBase,
    PApp,
    PathEqDeriv,
    PVar,
    TmEqDeriv,
    apply_fresh,
)
from lambda_equiv.decl import (
    DecApp,
    DecBeta,
    DecExt,
    DecLam,
    DecSym,
    DecTrans,
    DecVar,
    DeclDeriv,
    conclusion,
)
from lambda_equiv.errors import (
    CertificateError,
    ContractError,
    InconsistentCertificate,
    InvalidDerivation,
    InvalidTrace,
    NotationError,
)
from lambda_equiv.notation import (
    NamedCtx,
    parse_ctx,
    parse_term,
    parse_type,
    print_ctx,
    print_term,
    print_type,
)
from lambda_equiv.reduction import MStep, replay, step_at_depth, step_depth
from lambda_equiv.syntax import App, Arr, Base, Ctx, Tm, Tp, extend_ctx, lookup

type Node = dict[str, Any]

type Statement = tuple[NamedCtx, Tm, Tm, Tp]

# a statement with the context reduced to its types, as rules compute it
type Judgment = tuple[Ctx, Tm, Tm, Tp]


def dumps(node: Node) -> str:
    """Canonical JSON text: sorted keys, no whitespace, no trailing newline."""
    return json.dumps(node, sort_keys=True, separators=(",", ":"))


def _stmt(ctx: NamedCtx, left: Tm, right: Tm, tp: Tp) -> dict[str, str]:
    return {
        "ctx": print_ctx(ctx.names, ctx.types),
        "left": print_term(ctx.names, left),
        "right": print_term(ctx.names, right),
        "type": print_type(tp),
    }


def _trace(trace: MStep) -> list[dict[str, int]]:
    return [{"depth": step_depth(step)} for step in trace]


# Writing


def serialize_tm_eq(
    ctx: NamedCtx, deriv: TmEqDeriv, left: Tm, right: Tm, tp: Tp
) -> Node:
    """
    Certificate for ``ctx ⊢ left ⇔ right : tp``.

    Raises:
        ContractError: If ``deriv`` does not fit the statement's shape
    """
    match deriv, tp:
        case AlgArr(body), Arr(domain, codomain):
            return {
                "rule": "alg-arr",
                "stmt": _stmt(ctx, left, right, tp),
                "body": serialize_tm_eq(
                    ctx.extend_fresh(domain),
                    body,
                    apply_fresh(left),
                    apply_fresh(right),
                    codomain,
                ),
            }
        case AlgBase(trace_left, trace_right, paths), Base():
            left_nf = replay(left, trace_left)
            right_nf = replay(right, trace_right)
            if left_nf is None or right_nf is None:
                raise InvalidTrace("Trace does not replay on its term")
            return {
                "rule": "alg-base",
                "stmt": _stmt(ctx, left, right, tp),
                "left-trace": _trace(trace_left),
                "right-trace": _trace(trace_right),
                "paths": _serialize_path(ctx, paths, left_nf, right_nf)[0],
            }
    raise ContractError(f"{type(deriv).__name__} does not fit type {print_type(tp)}")


def _serialize_path(
    ctx: NamedCtx, deriv: PathEqDeriv, left: Tm, right: Tm
) -> tuple[Node, Tp]:
    match deriv, left, right:
        case PVar(k), _, _:
            tp = lookup(ctx.types, k)
            return {"rule": "p-var", "index": k, "stmt": _stmt(ctx, left, right, tp)}, tp
        case PApp(fun, arg), App(fun_left, arg_left), App(fun_right, arg_right):
            fun_node, fun_tp = _serialize_path(ctx, fun, fun_left, fun_right)
            match fun_tp:
                case Arr(domain, codomain):
                    node = {
                        "rule": "p-app",
                        "stmt": _stmt(ctx, left, right, codomain),
                        "fun": fun_node,
                        "arg": serialize_tm_eq(ctx, arg, arg_left, arg_right, domain),
                    }
                    return node, codomain
    raise ContractError(f"{type(deriv).__name__} does not fit the path {left!r}")


def serialize_decl(ctx: NamedCtx, deriv: DeclDeriv) -> Node:
    """
    Serialize a declarative derivation, annotating each node with its statement.

    Raises:
        InvalidDerivation: If some node proves nothing
    """
    stmt = conclusion(ctx.types, deriv)
    if stmt is None:
        raise InvalidDerivation(f"{type(deriv).__name__} does not derive a statement")
    node: Node = {"stmt": _stmt(ctx, *stmt)}
    match deriv:
        case DecVar(k):
            node |= {"rule": "dec-var", "index": k}
        case DecLam(domain, body):
            node |= {"rule": "dec-lam", "body": serialize_decl(ctx.extend_fresh(domain), body)}
        case DecExt(domain, body):
            node |= {"rule": "dec-ext", "body": serialize_decl(ctx.extend_fresh(domain), body)}
        case DecBeta(body, arg):
            arg_stmt = conclusion(ctx.types, arg)
            assert arg_stmt is not None
            node |= {
                "rule": "dec-beta",
                "body": serialize_decl(ctx.extend_fresh(arg_stmt[2]), body),
                "arg": serialize_decl(ctx, arg),
            }
        case DecApp(fun, arg):
            node |= {
                "rule": "dec-app",
                "fun": serialize_decl(ctx, fun),
                "arg": serialize_decl(ctx, arg),
            }
        case DecSym(inner):
            node |= {"rule": "dec-sym", "inner": serialize_decl(ctx, inner)}
        case DecTrans(left, right):
            node |= {
                "rule": "dec-trans",
                "left": serialize_decl(ctx, left),
                "right": serialize_decl(ctx, right),
            }
    return node


# Reading


class _Reader:
    """Walks a decoded JSON document, raising CertificateError on any surprise."""

    def __init__(self, path: str | None):
        self.path = path

    def fail(self, message: str) -> CertificateError:
        return CertificateError(message, path=self.path)

    def load(self, text: str) -> Node:
        if not text.strip():
            raise self.fail("File is empty")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise self.fail(f"Invalid JSON: {e}") from e
        return self.node(data)

    def node(self, data: Any) -> Node:
        if not isinstance(data, dict) or not isinstance(data.get("rule"), str):
            raise self.fail("Expected an object with a 'rule' field")
        return data

    def child(self, node: Node, key: str) -> Node:
        if key not in node:
            raise self.fail(f"Rule {node['rule']!r} is missing its {key!r} child")
        return self.node(node[key])

    def index(self, node: Node) -> int:
        value = node.get("index")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise self.fail(f"Rule {node['rule']!r} needs a non-negative integer 'index'")
        return value

    def trace(self, node: Node, key: str) -> MStep:
        entries = node.get(key)
        if not isinstance(entries, list):
            raise self.fail(f"Rule {node['rule']!r} needs a {key!r} array")
        steps = []
        for entry in entries:
            depth = entry.get("depth") if isinstance(entry, dict) else None
            if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
                raise self.fail(f"Trace entries must look like {{\"depth\": k}}, got {entry!r}")
            steps.append(step_at_depth(depth))
        return MStep(tuple(steps))

    def statement(self, node: Node) -> Statement:
        stmt = node.get("stmt")
        if not isinstance(stmt, dict):
            raise self.fail(f"Rule {node['rule']!r} has no 'stmt'")
        fields = [stmt.get(key) for key in ("ctx", "left", "right", "type")]
        if not all(isinstance(value, str) for value in fields):
            raise self.fail("Statements need string 'ctx', 'left', 'right' and 'type'")
        ctx_text, left_text, right_text, type_text = fields
        try:
            ctx = parse_ctx(ctx_text)
            return (
                ctx,
                parse_term(left_text, ctx),
                parse_term(right_text, ctx),
                parse_type(type_text),
            )
        except NotationError as e:
            raise self.fail(f"Bad statement: {e}") from e

    def agree(self, node: Node, stmt: Statement, expected: Judgment | None) -> None:
        """Compare a node's own statement with the one its parent's rule implies."""
        if expected is None:
            return
        ctx, left, right, tp = stmt
        if (ctx.types, left, right, tp) != expected:
            raise InconsistentCertificate(
                f"Rule {node['rule']!r} states {dumps(node['stmt'])}, "
                "which does not follow from the node above it",
                path=self.path,
            )

    def tm_eq(self, node: Node, expected: Judgment | None = None) -> TmEqDeriv:
        stmt = self.statement(node)
        self.agree(node, stmt, expected)
        ctx, left, right, tp = stmt
        match node["rule"]:
            case "alg-arr":
                body_expected = None
                if isinstance(tp, Arr):
                    body_expected = (
                        extend_ctx(ctx.types, tp.domain),
                        apply_fresh(left),
                        apply_fresh(right),
                        tp.codomain,
                    )
                return AlgArr(self.tm_eq(self.child(node, "body"), body_expected))
            case "alg-base":
                trace_left = self.trace(node, "left-trace")
                trace_right = self.trace(node, "right-trace")
                left_nf = replay(left, trace_left)
                right_nf = replay(right, trace_right)
                # a trace that does not replay is for the checker to reject
                paths_expected = None
                if left_nf is not None and right_nf is not None:
                    paths_expected = (ctx.types, left_nf, right_nf, tp)
                return AlgBase(
                    trace_left,
                    trace_right,
                    self.path_eq(self.child(node, "paths"), paths_expected),
                )
        raise self.fail(f"Unknown term equality rule {node['rule']!r}")

    def path_eq(self, node: Node, expected: Judgment | None = None) -> PathEqDeriv:
        stmt = self.statement(node)
        self.agree(node, stmt, expected)
        ctx, left, right, tp = stmt
        match node["rule"]:
            case "p-var":
                return PVar(self.index(node))
            case "p-app":
                fun_node = self.child(node, "fun")
                arg_node = self.child(node, "arg")
                fun_expected = arg_expected = None
                match left, right:
                    case App(fun_left, arg_left), App(fun_right, arg_right):
                        domain = self.statement(arg_node)[3]
                        fun_expected = (ctx.types, fun_left, fun_right, Arr(domain, tp))
                        arg_expected = (ctx.types, arg_left, arg_right, domain)
                return PApp(
                    self.path_eq(fun_node, fun_expected),
                    self.tm_eq(arg_node, arg_expected),
                )
        raise self.fail(f"Unknown path equality rule {node['rule']!r}")

    def decl(self, node: Node, expected_ctx: Ctx | None = None) -> DeclDeriv:
        ctx, left, right, tp = self.statement(node)
        if expected_ctx is not None and ctx.types != expected_ctx:
            raise InconsistentCertificate(
                f"Rule {node['rule']!r} states context {node['stmt']['ctx']!r}, "
                "which does not follow from the node above it",
                path=self.path,
            )
        deriv: DeclDeriv
        match node["rule"]:
            case "dec-var":
                deriv = DecVar(self.index(node))
            case "dec-lam" | "dec-ext" as rule:
                body = self.child(node, "body")
                body_ctx = self.statement(body)[0]
                if not body_ctx.types:
                    raise self.fail(f"Rule {rule!r} needs a body stated under a binder")
                domain = body_ctx.types[-1]
                cls = DecLam if rule == "dec-lam" else DecExt
                deriv = cls(domain, self.decl(body, extend_ctx(ctx.types, domain)))
            case "dec-beta":
                arg = self.child(node, "arg")
                domain = self.statement(arg)[3]
                deriv = DecBeta(
                    self.decl(self.child(node, "body"), extend_ctx(ctx.types, domain)),
                    self.decl(arg, ctx.types),
                )
            case "dec-app":
                deriv = DecApp(
                    self.decl(self.child(node, "fun"), ctx.types),
                    self.decl(self.child(node, "arg"), ctx.types),
                )
            case "dec-sym":
                deriv = DecSym(self.decl(self.child(node, "inner"), ctx.types))
            case "dec-trans":
                deriv = DecTrans(
                    self.decl(self.child(node, "left"), ctx.types),
                    self.decl(self.child(node, "right"), ctx.types),
                )
            case rule:
                raise self.fail(f"Unknown declarative rule {rule!r}")
        # the root statement is judged by check_decl, inner ones must match their rule
        if expected_ctx is not None:
            derived = conclusion(ctx.types, deriv)
            if derived is not None and derived != (left, right, tp):
                raise InconsistentCertificate(
                    f"Rule {node['rule']!r} states {dumps(node['stmt'])}, "
                    "which its premises do not derive",
                    path=self.path,
                )
        return deriv


def deserialize_certificate(
    text: str, path: str | None = None
) -> tuple[Statement, TmEqDeriv]:
    """
    Read an algorithmic certificate.

    Returns:
        The root statement and the derivation tree

    Raises:
        CertificateError: If the text is not a well-formed certificate, including
            inner statements that disagree with the rules above them
    """
    reader = _Reader(path)
    try:
        root = reader.load(text)
        return reader.statement(root), reader.tm_eq(root)
    except RecursionError as e:
        raise reader.fail("Certificate is nested too deeply to read") from e


def deserialize_decl(text: str, path: str | None = None) -> tuple[Statement, DeclDeriv]:
    """
    Read a declarative derivation.

    Raises:
        CertificateError: If the text is not a well-formed derivation
    """
    reader = _Reader(path)
    try:
        root = reader.load(text)
        return reader.statement(root), reader.decl(root)
    except RecursionError as e:
        raise reader.fail("Derivation is nested too deeply to read") from e
