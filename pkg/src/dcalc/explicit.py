"""Reduction with internalized substitutions and environments.

This engine mirrors the plain reducer but makes beta steps produce a pending
substitution node ``[x:=a]b`` instead of substituting eagerly; environments
hold named definitions that variables unfold against (``use``), and spent
binders are dropped (``rem``). Negation steps are aggregated: a nonempty
sequence of negation-reduction steps counts as one step here.

Definition evaluation is the sub-relation with only use/rem as axioms (all
structural rules retained); it terminates with a strictly decreasing weight
and eliminates every pending substitution.

Traversal opens every binder with a fresh name on the way down and closes it
again on the way up, so every term handled by a rule is locally closed and
environment definitions can be spliced in without index adjustments.
"""

from __future__ import annotations

from .reduction import DEFAULT_FUEL, FuelExhausted, neg_redexes, neg_step, neg_nf
from .syntax import (
    Appl,
    Bound,
    Case,
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
    binder_used,
    children,
    close_binder,
    free_vars,
    fresh_name,
    open_binder,
    replace_child,
    scoped_index,
)

Path = tuple[int, ...]


class Env:
    """Ordered definitions with pairwise-distinct names."""

    __slots__ = ("defs", "_index", "_pool")

    def __init__(self, defs: tuple[tuple[str, ExprS], ...] = ()):
        self.defs = defs
        self._index = {name: i for i, (name, _) in enumerate(defs)}
        if len(self._index) != len(defs):
            raise ValueError("duplicate definition name in environment")
        pool: set[str] = set(self._index)
        for _, d in defs:
            pool |= free_vars(d)
        self._pool = pool

    def __repr__(self) -> str:
        return f"Env({self.defs!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Env) and self.defs == other.defs

    def __hash__(self) -> int:
        return hash(self.defs)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def lookup(self, name: str) -> ExprS | None:
        i = self._index.get(name)
        return None if i is None else self.defs[i][1]

    def extend(self, name: str, defn: ExprS) -> "Env":
        return Env(self.defs + ((name, defn),))

    def pool(self) -> set[str]:
        """Names that fresh binders must avoid: defined names and their free vars."""
        return self._pool


def mu_axiom_steps(env: Env, e: ExprS) -> list[tuple[str, ExprS]]:
    """All non-structural rules applicable at the root, in table order."""
    out: list[tuple[str, ExprS]] = []
    match e:
        case Appl(UnivAbs(_, body, hint), arg):
            out.append(("beta1_mu", InternalSubst(arg, body, hint)))
        case Appl(ExistAbs(_, body, hint), arg):
            out.append(("beta2_mu", InternalSubst(arg, body, hint)))
        case Appl(Case(left, _), InjL(val, _)):
            out.append(("beta3", Appl(left, val)))
        case Appl(Case(_, right), InjR(_, val)):
            out.append(("beta4", Appl(right, val)))
        case Var(x) if x in env:
            out.append(("use", env.lookup(x)))
        case InternalSubst(_, body) if not binder_used(body):
            out.append(("rem", body))
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


def _neg_reachable_plus(e: ExprS) -> list[ExprS]:
    """Terms reachable from e by one or more negation-reduction steps."""
    seen: set[ExprS] = {e}
    queue = [e]
    out: list[ExprS] = []
    while queue:
        cur = queue.pop()
        for _, _, nxt in neg_redexes(cur):
            if nxt not in seen:
                seen.add(nxt)
                out.append(nxt)
                queue.append(nxt)
    return out


def _open_fresh(env: Env, e: ExprS, i: int, avoid: set[str]) -> tuple[str, ExprS]:
    comp = children(e)[i]
    hint = getattr(e, "hint", "x")
    x = fresh_name(hint, avoid | env.pool() | free_vars(comp) | free_vars(e))
    return x, open_binder(comp, Var(x))


def mu_redexes(env: Env, e: ExprS, _avoid: set[str] | None = None) -> list[tuple[Path, str, ExprS]]:
    """Every single step available, as (path, rule, whole-term-after).

    The negation rule contributes one entry per term reachable by a nonempty
    sequence of negation steps from the subterm at the position.
    """
    avoid = _avoid if _avoid is not None else free_vars(e)
    out: list[tuple[Path, str, ExprS]] = [((), name, res) for name, res in mu_axiom_steps(env, e)]
    for t in _neg_reachable_plus(e):
        out.append(((), "nu", t))
    scoped = scoped_index(e)
    for i, c in enumerate(children(e)):
        if i == scoped:
            x, opened = _open_fresh(env, e, i, avoid)
            inner_env = env.extend(x, e.defn) if isinstance(e, InternalSubst) else env
            sub = mu_redexes(inner_env, opened, avoid | {x})
            out.extend(
                ((i, *p), name, replace_child(e, i, close_binder(res, x))) for p, name, res in sub
            )
        else:
            sub = mu_redexes(env, c, avoid)
            out.extend(((i, *p), name, replace_child(e, i, res)) for p, name, res in sub)
    return out


def mu_step(env: Env, e: ExprS, _avoid: set[str] | None = None) -> tuple[str, ExprS] | None:
    """Deterministic single step: root rules, aggregated negation, then children."""
    avoid = _avoid if _avoid is not None else free_vars(e)
    steps = mu_axiom_steps(env, e)
    if steps:
        return steps[0]
    if neg_step(e) is not None:
        return "nu", neg_nf(e)
    scoped = scoped_index(e)
    for i, c in enumerate(children(e)):
        if i == scoped:
            x, opened = _open_fresh(env, e, i, avoid)
            inner_env = env.extend(x, e.defn) if isinstance(e, InternalSubst) else env
            found = mu_step(inner_env, opened, avoid | {x})
            if found is not None:
                name, res = found
                return name, replace_child(e, i, close_binder(res, x))
        else:
            found = mu_step(env, c, avoid)
            if found is not None:
                name, res = found
                return name, replace_child(e, i, res)
    return None


def mu_trace(env: Env, e: ExprS, fuel: int = DEFAULT_FUEL) -> list[tuple[str, ExprS]]:
    trace: list[tuple[str, ExprS]] = []
    cur = e
    for _ in range(fuel):
        found = mu_step(env, cur)
        if found is None:
            return trace
        name, cur = found
        trace.append((name, cur))
    if mu_step(env, cur) is None:
        return trace
    raise FuelExhausted(e, fuel)


def mu_nf(env: Env, e: ExprS, fuel: int = DEFAULT_FUEL) -> ExprS:
    cur = e
    for _ in range(fuel):
        found = mu_step(env, cur)
        if found is None:
            return cur
        _, cur = found
    if mu_step(env, cur) is None:
        return cur
    raise FuelExhausted(e, fuel)


def def_eval_step(env: Env, e: ExprS, _avoid: set[str] | None = None) -> ExprS | None:
    """One use/rem step under full structural congruence, or None."""
    avoid = _avoid if _avoid is not None else free_vars(e)
    match e:
        case Var(x) if x in env:
            return env.lookup(x)
        case InternalSubst(defn, body, hint):
            if not binder_used(body):
                return body
            d = def_eval_step(env, defn, avoid)
            if d is not None:
                return InternalSubst(d, body, hint)
            x, opened = _open_fresh(env, e, 1, avoid)
            r = def_eval_step(env.extend(x, defn), opened, avoid | {x})
            if r is not None:
                return InternalSubst(defn, close_binder(r, x), hint)
            return None
    scoped = scoped_index(e)
    for i, c in enumerate(children(e)):
        if i == scoped:
            x, opened = _open_fresh(env, e, i, avoid)
            r = def_eval_step(env, opened, avoid | {x})
            if r is not None:
                return replace_child(e, i, close_binder(r, x))
        else:
            r = def_eval_step(env, c, avoid)
            if r is not None:
                return replace_child(e, i, r)
    return None


def def_eval_trace(env: Env, e: ExprS) -> list[ExprS]:
    out: list[ExprS] = []
    cur = e
    while True:
        nxt = def_eval_step(env, cur)
        if nxt is None:
            return out
        cur = nxt
        out.append(cur)


def contains_subst(e: ExprS) -> bool:
    if isinstance(e, InternalSubst):
        return True
    return any(contains_subst(c) for c in children(e))


def def_eval_nf(env: Env, e: ExprS) -> ExprS:
    cur = e
    while True:
        nxt = def_eval_step(env, cur)
        if nxt is None:
            assert not contains_subst(cur)
            return cur
        cur = nxt


def def_weight(env: Env, e: ExprS) -> int:
    """Termination weight for definition evaluation; strictly drops per step."""
    match e:
        case Prim() | Bound():
            return 1
        case Var(x):
            d = env.lookup(x)
            return 1 if d is None else def_weight(env, d) + 1
        case InternalSubst(defn, body, hint):
            x = fresh_name(hint, env.pool() | free_vars(body) | free_vars(defn))
            inner = def_weight(env.extend(x, defn), open_binder(body, Var(x)))
            return def_weight(env, defn) + inner + 1
    return sum(def_weight(env, c) for c in children(e))
