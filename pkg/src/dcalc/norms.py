"""Norms: binary-tree shapes assigned to terms over a context.

A norm is a leaf or a pair of norms. Not every term has one; norm returns
None for undefined. Norms are invariant under reduction and connect a term
to its type: a typeable term's norm equals its type's norm with ambient
declarations accounted for.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Appl,
    Bound,
    Case,
    Context,
    ExistAbs,
    ExprS,
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
    open_binder,
)


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Pair:
    left: "Norm"
    right: "Norm"


Norm = Leaf | Pair

LEAF = Leaf()


def norm(ctx: Context, e: ExprS) -> Norm | None:
    match e:
        case Prim():
            return LEAF
        case Var(name):
            if name not in ctx:
                return None
            return norm(ctx.prefix(name), ctx.lookup(name))
        case Bound():
            return None
        case UnivAbs(dom, body, hint) | ExistAbs(dom, body, hint):
            nd = norm(ctx, dom)
            if nd is None:
                return None
            x = ctx.fresh(hint, free_vars(body) | free_vars(dom))
            nb = norm(ctx.extend(x, dom), open_binder(body, Var(x)))
            if nb is None:
                return None
            return Pair(nd, nb)
        case Appl(fun, arg):
            nf = norm(ctx, fun)
            if not isinstance(nf, Pair):
                return None
            if norm(ctx, arg) != nf.left:
                return None
            return nf.right
        case ProtDef(witness, proof, tag, hint):
            nw = norm(ctx, witness)
            np = norm(ctx, proof)
            if nw is None or np is None:
                return None
            x = ctx.fresh(hint, free_vars(tag) | free_vars(witness))
            nt = norm(ctx.extend(x, witness), open_binder(tag, Var(x)))
            if nt is None or nt != np:
                return None
            return Pair(nw, np)
        case ProjL(operand):
            n = norm(ctx, operand)
            return n.left if isinstance(n, Pair) else None
        case ProjR(operand):
            n = norm(ctx, operand)
            return n.right if isinstance(n, Pair) else None
        case Product(l, r) | Sum(l, r):
            nl = norm(ctx, l)
            nr = norm(ctx, r)
            if nl is None or nr is None:
                return None
            return Pair(nl, nr)
        case InjL(val, rtag):
            nv = norm(ctx, val)
            nt = norm(ctx, rtag)
            if nv is None or nt is None:
                return None
            return Pair(nv, nt)
        case InjR(ltag, val):
            nt = norm(ctx, ltag)
            nv = norm(ctx, val)
            if nt is None or nv is None:
                return None
            return Pair(nt, nv)
        case Case(left, right):
            nl = norm(ctx, left)
            nr = norm(ctx, right)
            match nl, nr:
                case Pair(a, c1), Pair(b, c2) if c1 == c2:
                    return Pair(Pair(a, b), c1)
            return None
        case Neg(operand):
            return norm(ctx, operand)
        case InternalSubst():
            return None
    return None


def normable(ctx: Context, e: ExprS) -> bool:
    return norm(ctx, e) is not None


def norm_to_text(n: Norm) -> str:
    match n:
        case Leaf():
            return "*"
        case Pair(left, right):
            return f"[{norm_to_text(left)},{norm_to_text(right)}]"
    raise ValueError(f"not a norm: {n!r}")
