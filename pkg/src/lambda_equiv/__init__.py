"""
lambda_equiv: certified beta-eta equality for the simply typed lambda calculus

The library decides typed equality by weak head normalization and
type-directed eta expansion, emits independently checkable certificates, and
runs its completeness proof: a logical relation turns any declarative
derivation of an equation into an algorithmic certificate.
"""

from .algo import (
    AlgArr,
    AlgBase,
    PApp,
    PVar,
    check_path_eq,
    check_tm_eq,
    decide_path_eq,
    decide_tm_eq,
)
from .assertions import Equivalent, Translates
from .decl import (
    DecApp,
    DecBeta,
    DecExt,
    DecLam,
    DecSym,
    DecTrans,
    DecVar,
    check_decl,
    gen_decl,
)
from .errors import (
    CertificateError,
    ContractError,
    FuelExhausted,
    InconsistentCertificate,
    LambdaEquivError,
    NotationError,
    ParseError,
    UnboundVariable,
)
from .logrel import completeness, fundamental, reflect, reify
from .notation import NamedCtx, parse_ctx, parse_term, parse_type, print_term, print_type
from .reduction import DEFAULT_FUEL, MStep, whnf
from .subst import Subst, apply_tm, compose, id_subst
from .syntax import BASE, App, Arr, Base, Lam, Var, type_check

__all__ = [
    # Syntax
    "BASE",
    "App",
    "Arr",
    "Base",
    "Lam",
    "Var",
    "type_check",
    # Substitutions and reduction
    "Subst",
    "apply_tm",
    "compose",
    "id_subst",
    "DEFAULT_FUEL",
    "MStep",
    "whnf",
    # Algorithmic equality
    "AlgArr",
    "AlgBase",
    "PApp",
    "PVar",
    "check_path_eq",
    "check_tm_eq",
    "decide_path_eq",
    "decide_tm_eq",
    # Declarative equality
    "DecApp",
    "DecBeta",
    "DecExt",
    "DecLam",
    "DecSym",
    "DecTrans",
    "DecVar",
    "check_decl",
    "gen_decl",
    # Logical relation
    "completeness",
    "fundamental",
    "reflect",
    "reify",
    # Concrete syntax
    "NamedCtx",
    "parse_ctx",
    "parse_term",
    "parse_type",
    "print_term",
    "print_type",
    # Assertion helpers
    "Equivalent",
    "Translates",
    # Errors
    "CertificateError",
    "ContractError",
    "FuelExhausted",
    "InconsistentCertificate",
    "LambdaEquivError",
    "NotationError",
    "ParseError",
    "UnboundVariable",
]
