"""Shared term generators and enumerators for the property suites.

Three families live here: a typing-rule-directed random generator whose
output always synthesizes a type, a negation-heavy generator for the
negation engine, and exhaustive size-bounded enumerators used for critical
pairs and for the consistency sweep.
"""

from __future__ import annotations

import random
from typing import Iterator

from dcalc.reduction import NormalClass, classify_nf
from dcalc.syntax import (
    TAU,
    Appl,
    Bound,
    Case,
    Context,
    ExistAbs,
    Expr,
    ExprS,
    InjL,
    InjR,
    InternalSubst,
    Neg,
    ProjL,
    ProjR,
    ProtDef,
    Product,
    Sum,
    UnivAbs,
    Var,
    close_binder,
    free_vars,
    shift,
)
from dcalc.typecheck import synth

ACCEPTANCE_LINES: list[str] = []


def report(tag: str, ok: bool, detail: str = "") -> None:
    """Emit one acceptance pass/fail line, keep it for the summary, assert."""
    status = "pass" if ok else "fail"
    line = f"[acceptance] {tag}: {status}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def sample_contexts() -> list[Context]:
    """Well-formed declaration lists the random generator draws leaves from."""
    a, b = Var("a"), Var("b")
    small = Context((("a", TAU), ("b", TAU)))
    rich = Context(
        (
            ("a", TAU),
            ("b", TAU),
            ("x", a),
            ("y", b),
            ("f", UnivAbs(a, b, "z")),
            ("P", UnivAbs(a, TAU, "z")),
            ("p", Product(a, b)),
            ("s", Sum(a, b)),
            ("w", ExistAbs(a, TAU, "z")),
        )
    )
    return [small, rich]


_KINDS = (
    ("leaf", 3),
    ("univ", 2),
    ("exist", 1),
    ("appl", 3),
    ("product", 1),
    ("sum", 1),
    ("injl", 1),
    ("injr", 1),
    ("proj", 2),
    ("projdef", 1),
    ("protdef", 1),
    ("case", 2),
    ("neg", 2),
)
_KIND_NAMES = tuple(k for k, _ in _KINDS)
_KIND_WEIGHTS = tuple(w for _, w in _KINDS)


def _leaf(rng: random.Random, ctx: Context) -> Expr:
    pool: list[Expr] = [TAU]
    pool.extend(Var(name) for name, _ in ctx.entries)
    return rng.choice(pool)


def _gen_protdef(rng: random.Random, ctx: Context, depth: int) -> Expr:
    proof = gen_typed_term(rng, ctx, depth)
    ty = synth(ctx, proof)
    if rng.random() < 0.5:
        x = ctx.fresh("w")
        return ProtDef(ty, proof, close_binder(Var(x), x), x)
    witness = gen_typed_term(rng, ctx, depth)
    x = ctx.fresh("w", free_vars(ty))
    return ProtDef(witness, proof, close_binder(ty, x), x)


def gen_typed_term(rng: random.Random, ctx: Context, depth: int) -> Expr:
    """A random term that synthesizes a type under ctx.

    Every alternative mirrors one typing rule, building premises first, so
    the result is well typed by construction; applications, projections and
    case analyses are built around their introduction forms and therefore
    often contain redexes.
    """
    if depth <= 0:
        return _leaf(rng, ctx)
    kind = rng.choices(_KIND_NAMES, weights=_KIND_WEIGHTS)[0]
    match kind:
        case "leaf":
            return _leaf(rng, ctx)
        case "univ" | "exist":
            dom = gen_typed_term(rng, ctx, depth - 1)
            x = ctx.fresh("v")
            body = gen_typed_term(rng, ctx.extend(x, dom), depth - 1)
            scoped = close_binder(body, x)
            if kind == "univ":
                return UnivAbs(dom, scoped, x)
            return ExistAbs(dom, scoped, x)
        case "appl":
            arg = gen_typed_term(rng, ctx, depth - 1)
            dom = synth(ctx, arg)
            x = ctx.fresh("v")
            body = gen_typed_term(rng, ctx.extend(x, dom), depth - 1)
            scoped = close_binder(body, x)
            if rng.random() < 0.25:
                return Appl(ExistAbs(dom, scoped, x), arg)
            return Appl(UnivAbs(dom, scoped, x), arg)
        case "product":
            left = gen_typed_term(rng, ctx, depth - 1)
            return Product(left, gen_typed_term(rng, ctx, depth - 1))
        case "sum":
            left = gen_typed_term(rng, ctx, depth - 1)
            return Sum(left, gen_typed_term(rng, ctx, depth - 1))
        case "injl":
            val = gen_typed_term(rng, ctx, depth - 1)
            return InjL(val, gen_typed_term(rng, ctx, depth - 1))
        case "injr":
            tag = gen_typed_term(rng, ctx, depth - 1)
            return InjR(tag, gen_typed_term(rng, ctx, depth - 1))
        case "proj":
            left = gen_typed_term(rng, ctx, depth - 1)
            pair = Product(left, gen_typed_term(rng, ctx, depth - 1))
            return ProjL(pair) if rng.random() < 0.5 else ProjR(pair)
        case "projdef":
            pd = _gen_protdef(rng, ctx, depth - 1)
            return ProjL(pd) if rng.random() < 0.5 else ProjR(pd)
        case "protdef":
            return _gen_protdef(rng, ctx, depth - 1)
        case "case":
            shared = shift(gen_typed_term(rng, ctx, depth - 1), 1)
            if rng.random() < 0.4:
                left = gen_typed_term(rng, ctx, depth - 1)
                right = gen_typed_term(rng, ctx, depth - 1)
                return Case(UnivAbs(left, shared, "l"), UnivAbs(right, shared, "r"))
            val = gen_typed_term(rng, ctx, depth - 1)
            this = synth(ctx, val)
            other = gen_typed_term(rng, ctx, depth - 1)
            if rng.random() < 0.5:
                arms = Case(UnivAbs(this, shared, "l"), UnivAbs(other, shared, "r"))
                return Appl(arms, InjL(val, other))
            arms = Case(UnivAbs(other, shared, "l"), UnivAbs(this, shared, "r"))
            return Appl(arms, InjR(other, val))
        case "neg":
            return Neg(gen_typed_term(rng, ctx, depth - 1))
    raise AssertionError(kind)


def gen_neg_heavy(rng: random.Random, depth: int, scope: int = 0) -> ExprS:
    """Application-free terms biased toward nested negations."""
    leaves: list[ExprS] = [TAU, Var("a"), Var("b")]
    leaves.extend(Bound(k) for k in range(scope))
    if depth <= 0:
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.40:
        return Neg(gen_neg_heavy(rng, depth - 1, scope))
    if r < 0.55:
        dom = gen_neg_heavy(rng, depth - 1, scope)
        return UnivAbs(dom, gen_neg_heavy(rng, depth - 1, scope + 1), "x")
    if r < 0.68:
        dom = gen_neg_heavy(rng, depth - 1, scope)
        return ExistAbs(dom, gen_neg_heavy(rng, depth - 1, scope + 1), "x")
    if r < 0.80:
        left = gen_neg_heavy(rng, depth - 1, scope)
        return Product(left, gen_neg_heavy(rng, depth - 1, scope))
    if r < 0.92:
        left = gen_neg_heavy(rng, depth - 1, scope)
        return Sum(left, gen_neg_heavy(rng, depth - 1, scope))
    if r < 0.95:
        val = gen_neg_heavy(rng, depth - 1, scope)
        return InjL(val, gen_neg_heavy(rng, depth - 1, scope))
    if r < 0.98:
        tag = gen_neg_heavy(rng, depth - 1, scope)
        return InjR(tag, gen_neg_heavy(rng, depth - 1, scope))
    witness = gen_neg_heavy(rng, depth - 1, scope)
    proof = gen_neg_heavy(rng, depth - 1, scope)
    return ProtDef(witness, proof, gen_neg_heavy(rng, depth - 1, scope + 1), "x")


def _subst_pool(
    n: int, scope: int, memo: dict[tuple[int, int], list[ExprS]]
) -> list[ExprS]:
    """All expressions with exactly n nodes, substitution nodes included.

    Free occurrences of x and dangling indices below scope stand for the
    surrounding environment and binders.
    """
    key = (n, scope)
    if key in memo:
        return memo[key]
    out: list[ExprS] = []
    if n == 1:
        out.append(TAU)
        out.append(Var("x"))
        out.extend(Bound(k) for k in range(scope))
        memo[key] = out
        return out
    for inner in _subst_pool(n - 1, scope, memo):
        out.append(Neg(inner))
        out.append(ProjL(inner))
        out.append(ProjR(inner))
    for i in range(1, n - 1):
        lefts = _subst_pool(i, scope, memo)
        rights = _subst_pool(n - 1 - i, scope, memo)
        scoped = _subst_pool(n - 1 - i, scope + 1, memo)
        for l in lefts:
            for r in rights:
                out.append(Appl(l, r))
                out.append(Product(l, r))
                out.append(Sum(l, r))
                out.append(InjL(l, r))
                out.append(InjR(l, r))
                out.append(Case(l, r))
            for s in scoped:
                out.append(UnivAbs(l, s, "y"))
                out.append(ExistAbs(l, s, "y"))
                out.append(InternalSubst(l, s, "y"))
    for i in range(1, n - 2):
        for j in range(1, n - 1 - i):
            k = n - 1 - i - j
            for w in _subst_pool(i, scope, memo):
                for p in _subst_pool(j, scope, memo):
                    for t in _subst_pool(k, scope + 1, memo):
                        out.append(ProtDef(w, p, t, "y"))
    memo[key] = out
    return out


def enumerate_subst_terms(max_size: int) -> Iterator[ExprS]:
    """Every expression of at most max_size nodes over leaves tau, x, and
    indices bound by enclosing binders."""
    memo: dict[tuple[int, int], list[ExprS]] = {}
    for n in range(1, max_size + 1):
        yield from _subst_pool(n, 0, memo)


def _normal_pool(
    n: int, scope: int, memo: dict[tuple[int, int], list[Expr]]
) -> list[Expr]:
    """All closed normal expressions with exactly n nodes.

    Subexpressions of normal forms are normal, so candidates combine smaller
    pool members and a classification filter on the result suffices.
    """
    key = (n, scope)
    if key in memo:
        return memo[key]
    candidates: list[Expr] = []
    if n == 1:
        candidates.append(TAU)
        candidates.extend(Bound(k) for k in range(scope))
        memo[key] = candidates
        return candidates
    for inner in _normal_pool(n - 1, scope, memo):
        candidates.append(Neg(inner))
        candidates.append(ProjL(inner))
        candidates.append(ProjR(inner))
    for i in range(1, n - 1):
        lefts = _normal_pool(i, scope, memo)
        rights = _normal_pool(n - 1 - i, scope, memo)
        scoped = _normal_pool(n - 1 - i, scope + 1, memo)
        for l in lefts:
            for r in rights:
                candidates.append(Appl(l, r))
                candidates.append(Product(l, r))
                candidates.append(Sum(l, r))
                candidates.append(InjL(l, r))
                candidates.append(InjR(l, r))
                candidates.append(Case(l, r))
            for s in scoped:
                candidates.append(UnivAbs(l, s, "y"))
                candidates.append(ExistAbs(l, s, "y"))
    for i in range(1, n - 2):
        for j in range(1, n - 1 - i):
            k = n - 1 - i - j
            for w in _normal_pool(i, scope, memo):
                for p in _normal_pool(j, scope, memo):
                    for t in _normal_pool(k, scope + 1, memo):
                        candidates.append(ProtDef(w, p, t, "y"))
    out = [c for c in candidates if classify_nf(c) is not NormalClass.REDUCIBLE]
    memo[key] = out
    return out


def enumerate_normal_closed(max_size: int) -> Iterator[Expr]:
    """Every closed normal form of at most max_size nodes."""
    memo: dict[tuple[int, int], list[Expr]] = {}
    for n in range(1, max_size + 1):
        for t in _normal_pool(n, 0, memo):
            if classify_nf(t) is NormalClass.NORMAL_FORM:
                yield t
