"""Single-step and multi-step reduction, normal forms, and the negation engine.

The rewrite axioms come in three groups: beta (application meets abstraction
or case meets injection), pi (projections meet introduction forms), and nu
(negation pushed through or absorbed by every constructor). Structural
congruence applies in every component of every operator. The deterministic
strategy is leftmost-outermost with axioms tried in the fixed table order at
each node.

Negation reduction is the sub-relation with axioms nu1..nu5 only and
congruence restricted to negations, both components of products and sums, and
the scoped component of binders; it terminates unconditionally with a
strictly decreasing weight and is confluent.
"""

from __future__ import annotations

import enum

from .syntax import (
    Appl,
    Bound,
    Case,
    Expr,
    ExprS,
    InjL,
    InjR,
    InternalSubst,
    Neg,
    Prim,
    Product,
    ProjL,
    ProjR,
    ProtDef,
    Sum,
    UnivAbs,
    ExistAbs,
    Var,
    children,
    open_binder,
    plug,
    replace_child,
    scoped_index,
    to_text,
)

DEFAULT_FUEL = 100_000

Path = tuple[int, ...]
Step = tuple[Path, str, ExprS]


class FuelExhausted(Exception):
    def __init__(self, e, fuel: int, text: str | None = None):
        shown = to_text(e) if text is None else text
        super().__init__(f"no normal form within {fuel} steps: {shown}")
        self.expr = e
        self.fuel = fuel


def axiom_steps(e: ExprS) -> list[tuple[str, ExprS]]:
    """All axioms applicable at the root of e, in table order."""
    out: list[tuple[str, ExprS]] = []
    match e:
        case Appl(UnivAbs(_, body), arg):
            out.append(("beta1", open_binder(body, arg)))
        case Appl(ExistAbs(_, body), arg):
            out.append(("beta2", open_binder(body, arg)))
        case Appl(Case(left, _), InjL(val, _)):
            out.append(("beta3", Appl(left, val)))
        case Appl(Case(_, right), InjR(_, val)):
            out.append(("beta4", Appl(right, val)))
        case ProjL(ProtDef(witness, _, _)):
            out.append(("pi1", witness))
        case ProjR(ProtDef(_, proof, _)):
            out.append(("pi2", proof))
        case ProjL(Product(l, _)):
            out.append(("pi3", l))
        case ProjR(Product(_, r)):
            out.append(("pi4", r))
        case ProjL(Sum(l, _)):
            out.append(("pi5", l))
        case ProjR(Sum(_, r)):
            out.append(("pi6", r))
        case Neg(Neg(a)):
            out.append(("nu1", a))
        case Neg(Product(l, r)):
            out.append(("nu2", Sum(Neg(l), Neg(r))))
        case Neg(Sum(l, r)):
            out.append(("nu3", Product(Neg(l), Neg(r))))
        case Neg(UnivAbs(dom, body, hint)):
            out.append(("nu4", ExistAbs(dom, Neg(body), hint)))
        case Neg(ExistAbs(dom, body, hint)):
            out.append(("nu5", UnivAbs(dom, Neg(body), hint)))
        case Neg(Prim()):
            out.append(("nu6", Prim()))
        case Neg(ProtDef() as inner):
            out.append(("nu7", inner))
        case Neg(InjL() as inner):
            out.append(("nu8", inner))
        case Neg(InjR() as inner):
            out.append(("nu9", inner))
        case Neg(Case() as inner):
            out.append(("nu10", inner))
    return out


def redexes(e: ExprS) -> list[Step]:
    """Every (position, axiom, whole-term-after) triple, in strategy order."""
    out: list[Step] = []

    def walk(sub: ExprS, path: Path) -> None:
        for name, result in axiom_steps(sub):
            out.append((path, name, plug(e, path, result)))
        for i, c in enumerate(children(sub)):
            walk(c, path + (i,))

    walk(e, ())
    return out


def first_redex(e: ExprS) -> tuple[Path, str, ExprS] | None:
    """Leftmost-outermost redex as (path, axiom, contractum-at-path)."""
    steps = axiom_steps(e)
    if steps:
        name, result = steps[0]
        return (), name, result
    for i, c in enumerate(children(e)):
        found = first_redex(c)
        if found is not None:
            path, name, result = found
            return (i, *path), name, result
    return None


def reduce_trace(e: ExprS, fuel: int = DEFAULT_FUEL) -> list[Step]:
    trace: list[Step] = []
    cur = e
    for _ in range(fuel):
        found = first_redex(cur)
        if found is None:
            return trace
        path, name, result = found
        cur = plug(cur, path, result)
        trace.append((path, name, cur))
    if first_redex(cur) is None:
        return trace
    raise FuelExhausted(e, fuel)


def reduce_nf(e: ExprS, fuel: int = DEFAULT_FUEL) -> ExprS:
    cur = e
    for _ in range(fuel):
        found = first_redex(cur)
        if found is None:
            return cur
        path, name, result = found
        cur = plug(cur, path, result)
    if first_redex(cur) is None:
        return cur
    raise FuelExhausted(e, fuel)


def conv(a: ExprS, b: ExprS, fuel: int = DEFAULT_FUEL) -> bool:
    """Congruence test: common normal form, valid inputs assumed."""
    return a == b or reduce_nf(a, fuel) == reduce_nf(b, fuel)


def render_trace(steps: list[Step]) -> str:
    lines = []
    for path, name, term in steps:
        at = ".".join(map(str, path)) if path else "root"
        lines.append(f"{name} @ {at} : {to_text(term)}")
    return "\n".join(lines)


class NormalClass(enum.Enum):
    NORMAL_FORM = "NormalForm"
    DEAD_END = "DeadEnd"
    REDUCIBLE = "Reducible"


def _dead_end(e: ExprS) -> bool:
    match e:
        case Var() | Bound():
            return True
        case Appl(Case(left, right), arg):
            if _normal(left) and _normal(right) and _dead_end(arg):
                return True
            return False
        case Appl(fun, arg):
            return _dead_end(fun) and _normal(arg)
        case ProjL(inner) | ProjR(inner):
            return _dead_end(inner)
        case Neg(inner):
            return not isinstance(inner, Neg) and _dead_end(inner)
    return False


def _normal(e: ExprS) -> bool:
    match e:
        case Prim():
            return True
        case UnivAbs(dom, body) | ExistAbs(dom, body):
            return _normal(dom) and _normal(body)
        case ProtDef(witness, proof, tag):
            return _normal(witness) and _normal(proof) and _normal(tag)
        case Product(l, r) | Sum(l, r) | Case(l, r):
            return _normal(l) and _normal(r)
        case InjL(a, b) | InjR(a, b):
            return _normal(a) and _normal(b)
    return _dead_end(e)


def classify_nf(e: ExprS) -> NormalClass:
    """Sort an expression into dead ends, other normal forms, or reducible."""
    if _dead_end(e):
        return NormalClass.DEAD_END
    if _normal(e):
        return NormalClass.NORMAL_FORM
    return NormalClass.REDUCIBLE


def neg_axiom(e: ExprS) -> tuple[str, ExprS] | None:
    """The negation-only axioms nu1..nu5 at the root."""
    match e:
        case Neg(Neg(a)):
            return "nu1", a
        case Neg(Product(l, r)):
            return "nu2", Sum(Neg(l), Neg(r))
        case Neg(Sum(l, r)):
            return "nu3", Product(Neg(l), Neg(r))
        case Neg(UnivAbs(dom, body, hint)):
            return "nu4", ExistAbs(dom, Neg(body), hint)
        case Neg(ExistAbs(dom, body, hint)):
            return "nu5", UnivAbs(dom, Neg(body), hint)
    return None


def _neg_positions(e: ExprS) -> tuple[int, ...]:
    """Components negation reduction may descend into."""
    match e:
        case Neg(_):
            return (0,)
        case Product(_, _) | Sum(_, _):
            return (0, 1)
        case UnivAbs() | ExistAbs() | ProtDef() | InternalSubst():
            return (scoped_index(e),)  # type: ignore[return-value]
    return ()


def neg_redexes(e: ExprS) -> list[Step]:
    out: list[Step] = []

    def walk(sub: ExprS, path: Path) -> None:
        found = neg_axiom(sub)
        if found is not None:
            name, result = found
            out.append((path, name, plug(e, path, result)))
        kids = children(sub)
        for i in _neg_positions(sub):
            walk(kids[i], path + (i,))

    walk(e, ())
    return out


def neg_step(e: ExprS) -> tuple[Path, str, ExprS] | None:
    found = neg_axiom(e)
    if found is not None:
        name, result = found
        return (), name, result
    kids = children(e)
    for i in _neg_positions(e):
        deeper = neg_step(kids[i])
        if deeper is not None:
            path, name, result = deeper
            return (i, *path), name, result
    return None


def neg_trace(e: ExprS) -> list[Step]:
    trace: list[Step] = []
    cur = e
    while True:
        found = neg_step(cur)
        if found is None:
            return trace
        path, name, result = found
        cur = plug(cur, path, result)
        trace.append((path, name, cur))


def neg_nf(e: ExprS) -> ExprS:
    cur = e
    while True:
        found = neg_step(cur)
        if found is None:
            return cur
        path, name, result = found
        cur = plug(cur, path, result)


def neg_weight(e: ExprS) -> int:
    """Termination weight for negation reduction; strictly drops per step."""
    match e:
        case Prim() | Var() | Bound():
            return 1
        case Neg(inner):
            return (neg_weight(inner) + 1) ** 2
    return 1 + sum(neg_weight(c) for c in children(e))
