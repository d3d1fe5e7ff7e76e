"""
Concrete syntax: a lark grammar for terms, types and contexts, name
resolution to de Bruijn indices, and the canonical printer.

Terms are written with names (``\\x. f x``); a context ``f:i -> i, x:i`` binds
its rightmost name innermost. Printing chooses binder names deterministically,
avoiding every name in scope, so ``parse(print(M)) == M``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from lark import Lark, Transformer, UnexpectedEOF, UnexpectedInput

from lambda_equiv.errors import ParseError, ScopeError, UnboundVariable
from lambda_equiv.syntax import BASE, App, Arr, Ctx, Lam, Tm, Tp, Var

GRAMMAR = r"""
    ?term: "\\" NAME "." term       -> lam
         | application
    ?application: application atom  -> app
                | atom
    ?atom: NAME                      -> var
         | "(" term ")"

    ?tp: tp_atom "->" tp             -> arrow
       | tp_atom
    ?tp_atom: "i"                    -> base
            | "(" tp ")"

    ctx: [binding ("," binding)*]
    binding: NAME ":" tp

    NAME: /[A-Za-z_][A-Za-z0-9_']*/

    %import common.WS
    %ignore WS
"""

_parser = Lark(GRAMMAR, parser="lalr", start=["term", "tp", "ctx"])


@dataclass(frozen=True, slots=True)
class NamedCtx:
    """A context as written: distinct names alongside their types."""

    names: tuple[str, ...] = ()
    types: Ctx = ()

    def __len__(self) -> int:
        return len(self.names)

    def extend(self, name: str, tp: Tp) -> NamedCtx:
        return NamedCtx((*self.names, name), (*self.types, tp))

    def extend_fresh(self, tp: Tp) -> NamedCtx:
        """Bind a new variable under the first name the context does not use."""
        return self.extend(fresh_name(self.names), tp)


# Named syntax trees, the transformer's output before resolution


@dataclass(frozen=True, slots=True)
class _Name:
    name: str


@dataclass(frozen=True, slots=True)
class _Lam:
    name: str
    body: _Named


@dataclass(frozen=True, slots=True)
class _App:
    fun: _Named
    arg: _Named


type _Named = _Name | _Lam | _App


class _ToSyntax(Transformer):
    def var(self, children):
        return _Name(str(children[0]))

    def lam(self, children):
        name, body = children
        return _Lam(str(name), body)

    def app(self, children):
        fun, arg = children
        return _App(fun, arg)

    def base(self, _children):
        return BASE

    def arrow(self, children):
        domain, codomain = children
        return Arr(domain, codomain)

    def binding(self, children):
        # the token keeps its position
        name, tp = children
        return name, tp

    def ctx(self, children):
        return [child for child in children if child is not None]


def _parse(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as e:
        line, column = getattr(e, "line", None), getattr(e, "column", None)
        token = getattr(e, "token", None)
        at_end = isinstance(e, UnexpectedEOF) or getattr(token, "type", None) == "$END"
        if at_end or not line or line < 1:
            lines = text.splitlines() or [""]
            raise ParseError(
                "Unexpected end of input", len(lines), len(lines[-1]) + 1
            ) from e
        raise ParseError(f"Unexpected input {_describe(e)}", line, column) from e
    return _ToSyntax().transform(tree)


def _describe(error: UnexpectedInput) -> str:
    token = getattr(error, "token", None)
    if token is not None:
        return repr(str(token))
    char = getattr(error, "char", None)
    return repr(char) if char is not None else ""


def parse_type(text: str) -> Tp:
    """
    Parse a type: ``i`` or ``T -> S``, where arrows associate to the right.

    Raises:
        ParseError: If the text is not a type
    """
    return _parse(text, "tp")


def parse_ctx(text: str) -> NamedCtx:
    """
    Parse a context ``x:T, y:S``; the empty string is the empty context.

    Raises:
        ParseError: If the text is not a context or repeats a name
    """
    if not text.strip():
        return NamedCtx()
    ctx = NamedCtx()
    for token, tp in _parse(text, "ctx"):
        name = str(token)
        if name in ctx.names:
            raise ParseError(f"Duplicate name in context: {name}", token.line, token.column)
        ctx = ctx.extend(name, tp)
    return ctx


def parse_term(text: str, ctx: NamedCtx | Sequence[str] = ()) -> Tm:
    """
    Parse a term and resolve its names against ``ctx``.

    A name refers to the innermost binder that declares it, lambdas first and
    then the context from right to left.

    Raises:
        ParseError: If the text is not a term
        UnboundVariable: If a name is bound neither by a lambda nor by ``ctx``
    """
    names = ctx.names if isinstance(ctx, NamedCtx) else tuple(ctx)
    return _resolve(_parse(text, "term"), list(names))


def _resolve(named: _Named, scope: list[str]) -> Tm:
    match named:
        case _Name(name):
            for position in range(len(scope) - 1, -1, -1):
                if scope[position] == name:
                    return Var(len(scope) - 1 - position)
            raise UnboundVariable(name)
        case _Lam(name, body):
            scope.append(name)
            try:
                return Lam(_resolve(body, scope))
            finally:
                scope.pop()
        case _App(fun, arg):
            return App(_resolve(fun, scope), _resolve(arg, scope))


# Printing


def _candidates() -> Iterator[str]:
    letters = ("x", "y", "z", "u", "v", "w")
    yield from letters
    for n in itertools.count(1):
        for letter in letters:
            yield f"{letter}{n}"


def fresh_name(taken: Sequence[str]) -> str:
    """The first of ``x, y, z, u, v, w, x1, y1, ...`` not in ``taken``."""
    used = set(taken)
    return next(name for name in _candidates() if name not in used)


def print_type(tp: Tp) -> str:
    match tp:
        case Arr(Arr() as domain, codomain):
            return f"({print_type(domain)}) -> {print_type(codomain)}"
        case Arr(domain, codomain):
            return f"{print_type(domain)} -> {print_type(codomain)}"
        case _:
            return "i"


def print_ctx(names: Sequence[str], ctx: Ctx) -> str:
    return ", ".join(f"{name}:{print_type(tp)}" for name, tp in zip(names, ctx))


def print_term(names: Sequence[str], term: Tm) -> str:
    """
    Print ``term`` with its free variables named by ``names``.

    ``names[-1]`` names ``Var(0)``. Binders get the first candidate name not
    already in scope.

    Raises:
        ScopeError: If ``term`` has a free variable ``names`` does not cover
    """
    return _print(list(names), term)


def _print(scope: list[str], term: Tm) -> str:
    match term:
        case Var(index):
            if not 0 <= index < len(scope):
                raise ScopeError(index, len(scope))
            return scope[-1 - index]
        case Lam(body):
            name = fresh_name(scope)
            scope.append(name)
            try:
                return f"\\{name}. {_print(scope, body)}"
            finally:
                scope.pop()
        case App(fun, arg):
            fun_text = _print(scope, fun)
            if isinstance(fun, Lam):
                fun_text = f"({fun_text})"
            arg_text = _print(scope, arg)
            if not isinstance(arg, Var):
                arg_text = f"({arg_text})"
            return f"{fun_text} {arg_text}"
