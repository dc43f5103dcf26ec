"""Two mappings into untyped lambda calculus, with a beta reducer.

The stripping mapping erases types: both abstraction forms become lambdas,
pairing constructs become Church pairs, projections apply a selector, and
negation vanishes. The encoding mapping instead keeps domains as data,
pairing every abstraction with its domain; application first projects the
function component. Both leave the inert constant pi^ for tau.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .reduction import DEFAULT_FUEL, FuelExhausted
from .syntax import (
    Appl,
    Bound,
    Case,
    ExistAbs,
    Expr,
    InjL,
    InjR,
    InternalSubst,
    Neg,
    Prim,
    ProjL,
    ProjR,
    ProtDef,
    Product,
    Sum,
    UnivAbs,
    Var,
    free_vars,
    fresh_name,
    open_binder,
)


@dataclass(frozen=True)
class PrimConst:
    pass


@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class LBound:
    index: int


@dataclass(frozen=True)
class Lam:
    body: "LambdaTerm"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class LApp:
    fun: "LambdaTerm"
    arg: "LambdaTerm"


LambdaTerm = PrimConst | LVar | LBound | Lam | LApp

PI = PrimConst()


def lclose(e: LambdaTerm, x: str, depth: int = 0) -> LambdaTerm:
    match e:
        case LVar(name) if name == x:
            return LBound(depth)
        case Lam(body, hint):
            return Lam(lclose(body, x, depth + 1), hint)
        case LApp(fun, arg):
            return LApp(lclose(fun, x, depth), lclose(arg, x, depth))
    return e


def llam(x: str, body: LambdaTerm) -> Lam:
    return Lam(lclose(body, x), x)


def lshift(e: LambdaTerm, by: int, depth: int = 0) -> LambdaTerm:
    match e:
        case LBound(i) if i >= depth:
            return LBound(i + by)
        case Lam(body, hint):
            return Lam(lshift(body, by, depth + 1), hint)
        case LApp(fun, arg):
            return LApp(lshift(fun, by, depth), lshift(arg, by, depth))
    return e


def lopen(scoped: LambdaTerm, repl: LambdaTerm, depth: int = 0) -> LambdaTerm:
    match scoped:
        case LBound(i):
            if i == depth:
                return lshift(repl, depth)
            if i > depth:
                return LBound(i - 1)
            return scoped
        case Lam(body, hint):
            return Lam(lopen(body, repl, depth + 1), hint)
        case LApp(fun, arg):
            return LApp(lopen(fun, repl, depth), lopen(arg, repl, depth))
    return scoped


def beta_step(e: LambdaTerm) -> LambdaTerm | None:
    """One normal-order step: leftmost-outermost, including under lambdas."""
    match e:
        case LApp(Lam(body), arg):
            return lopen(body, arg)
        case Lam(body, hint):
            r = beta_step(body)
            return None if r is None else Lam(r, hint)
        case LApp(fun, arg):
            r = beta_step(fun)
            if r is not None:
                return LApp(r, arg)
            r = beta_step(arg)
            return None if r is None else LApp(fun, r)
    return None


def beta_nf(e: LambdaTerm, fuel: int = DEFAULT_FUEL) -> LambdaTerm:
    cur = e
    for _ in range(fuel):
        nxt = beta_step(cur)
        if nxt is None:
            return cur
        cur = nxt
    if beta_step(cur) is None:
        return cur
    raise FuelExhausted(e, fuel, lam_to_text(e))


def is_beta_normal(e: LambdaTerm) -> bool:
    match e:
        case LApp(Lam(_), _):
            return False
        case Lam(body):
            return is_beta_normal(body)
        case LApp(fun, arg):
            return is_beta_normal(fun) and is_beta_normal(arg)
    return True


def _pair(a: LambdaTerm, b: LambdaTerm, avoid: set[str]) -> LambdaTerm:
    z = fresh_name("z", avoid)
    return llam(z, LApp(LApp(LVar(z), a), b))


def _selector(which: int) -> LambdaTerm:
    x = LVar("x") if which == 0 else LVar("y")
    return llam("x", llam("y", x))


def strip(e: Expr, _avoid: set[str] | None = None) -> LambdaTerm:
    """Type-stripping translation."""
    avoid = _avoid if _avoid is not None else free_vars(e)
    match e:
        case Prim():
            return PI
        case Var(name):
            return LVar(name)
        case UnivAbs(dom, body, hint) | ExistAbs(dom, body, hint):
            x = fresh_name(hint, avoid)
            return llam(x, strip(open_binder(body, Var(x)), avoid | {x}))
        case Appl(fun, arg):
            return LApp(strip(fun, avoid), strip(arg, avoid))
        case ProtDef(witness, proof, _):
            return _pair(strip(witness, avoid), strip(proof, avoid), avoid)
        case Product(l, r) | Sum(l, r) | Case(l, r):
            return _pair(strip(l, avoid), strip(r, avoid), avoid)
        case ProjL(operand):
            return LApp(strip(operand, avoid), _selector(0))
        case ProjR(operand):
            return LApp(strip(operand, avoid), _selector(1))
        case InjL(val, _):
            inner = LApp(LVar("x"), strip(val, avoid | {"x", "y"}))
            return llam("x", llam("y", inner))
        case InjR(_, val):
            inner = LApp(LVar("y"), strip(val, avoid | {"x", "y"}))
            return llam("x", llam("y", inner))
        case Neg(operand):
            return strip(operand, avoid)
        case Bound(index):
            raise ValueError(f"dangling binder reference ?b{index}")
        case InternalSubst():
            raise ValueError("pending substitutions have no translation")
    raise ValueError(f"unrecognized term: {e!r}")


def encode(e: Expr, _avoid: set[str] | None = None) -> LambdaTerm:
    """Type-encoding translation: abstractions carry their domains."""
    avoid = _avoid if _avoid is not None else free_vars(e)
    match e:
        case Prim():
            return PI
        case Var(name):
            return LVar(name)
        case UnivAbs(dom, body, hint) | ExistAbs(dom, body, hint):
            x = fresh_name(hint, avoid)
            inner = llam(x, encode(open_binder(body, Var(x)), avoid | {x}))
            z = fresh_name("z", avoid)
            return llam(z, LApp(LApp(LVar(z), encode(dom, avoid)), inner))
        case Appl(fun, arg):
            second = llam("x", llam("y", LVar("y")))
            return LApp(LApp(encode(fun, avoid), second), encode(arg, avoid))
        case ProtDef(witness, proof, _):
            return _pair(encode(witness, avoid), encode(proof, avoid), avoid)
        case Product(l, r) | Sum(l, r) | Case(l, r):
            return _pair(encode(l, avoid), encode(r, avoid), avoid)
        case ProjL(operand):
            return LApp(encode(operand, avoid), _selector(0))
        case ProjR(operand):
            return LApp(encode(operand, avoid), _selector(1))
        case InjL(val, _):
            tagged = LApp(LVar("x"), llam("u", llam("v", LVar("v"))))
            return llam("x", llam("y", LApp(tagged, encode(val, avoid | {"x", "y"}))))
        case InjR(_, val):
            tagged = LApp(LVar("y"), llam("u", llam("v", LVar("v"))))
            return llam("x", llam("y", LApp(tagged, encode(val, avoid | {"x", "y"}))))
        case Neg(operand):
            return encode(operand, avoid)
        case Bound(index):
            raise ValueError(f"dangling binder reference ?b{index}")
        case InternalSubst():
            raise ValueError("pending substitutions have no translation")
    raise ValueError(f"unrecognized term: {e!r}")


def lam_to_text(e: LambdaTerm, _env: tuple[str, ...] = ()) -> str:
    match e:
        case PrimConst():
            return "pi^"
        case LVar(name):
            return name
        case LBound(index):
            if index < len(_env):
                return _env[index]
            return f"?b{index}"
        case Lam(body, hint):
            x = fresh_name(hint, set(_env) | _lam_free(body))
            return f"\\{x}.{lam_to_text(body, (x, *_env))}"
        case LApp(fun, arg):
            return f"({lam_to_text(fun, _env)} {lam_to_text(arg, _env)})"
    raise ValueError(f"unrecognized term: {e!r}")


def _lam_free(e: LambdaTerm) -> set[str]:
    match e:
        case LVar(name):
            return {name}
        case Lam(body):
            return _lam_free(body)
        case LApp(fun, arg):
            return _lam_free(fun) | _lam_free(arg)
    return set()
