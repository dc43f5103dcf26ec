"""Terms, contexts, substitution and printing.

Terms are locally nameless: free variables are ``Var(name)``, references to
enclosing binders are ``Bound(k)`` de Bruijn indices. Binder nodes keep the
surface name as a hint that printing uses but equality ignores, so
alpha-equivalence is plain structural equality and substitution of named
variables can never capture.

Every binding operator scopes over exactly one component: abstractions over
their body, protected definitions over their tag, internal substitutions over
their body. Instantiating a binder shifts dangling indices of the replacement
so that terms plugged in under further binders stay well-formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Prim:
    """The primitive constant, written ``tau``. It is its own type."""


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bound:
    index: int


@dataclass(frozen=True)
class UnivAbs:
    """Universal abstraction ``[x:a]b``; both function and dependent product."""

    dom: "Expr"
    body: "Expr"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class ExistAbs:
    """Existential abstraction ``[x!a]b``."""

    dom: "Expr"
    body: "Expr"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Appl:
    fun: "Expr"
    arg: "Expr"


@dataclass(frozen=True)
class ProtDef:
    """Protected definition ``<x:=a, b : c>``; the binder scopes over c only."""

    witness: "Expr"
    proof: "Expr"
    tag: "Expr"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class ProjL:
    e: "Expr"


@dataclass(frozen=True)
class ProjR:
    e: "Expr"


@dataclass(frozen=True)
class Product:
    l: "Expr"
    r: "Expr"


@dataclass(frozen=True)
class Sum:
    l: "Expr"
    r: "Expr"


@dataclass(frozen=True)
class InjL:
    """Left injection ``inl(a,b)``: value a, with b the absent right tag."""

    val: "Expr"
    rtag: "Expr"


@dataclass(frozen=True)
class InjR:
    """Right injection ``inr(a,b)``: a the absent left tag, value b."""

    ltag: "Expr"
    val: "Expr"


@dataclass(frozen=True)
class Case:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    e: "Expr"


@dataclass(frozen=True)
class InternalSubst:
    """Pending substitution ``[x:=a]b``; binds in the body only.

    Not part of the surface calculus; produced by the explicit-substitution
    reduction engine's beta steps.
    """

    defn: "Expr"
    body: "Expr"
    hint: str = field(default="x", compare=False)


Expr = (
    Prim
    | Var
    | Bound
    | UnivAbs
    | ExistAbs
    | Appl
    | ProtDef
    | ProjL
    | ProjR
    | Product
    | Sum
    | InjL
    | InjR
    | Case
    | Neg
)

ExprS = Expr | InternalSubst

TAU = Prim()

# (constructor, scoped-component-index) for the three binding operators;
# every other constructor binds nothing.
_SCOPED_INDEX = {UnivAbs: 1, ExistAbs: 1, ProtDef: 2, InternalSubst: 1}


def children(e: ExprS) -> tuple[ExprS, ...]:
    match e:
        case Prim() | Var() | Bound():
            return ()
        case UnivAbs(dom, body) | ExistAbs(dom, body):
            return (dom, body)
        case Appl(fun, arg):
            return (fun, arg)
        case ProtDef(witness, proof, tag):
            return (witness, proof, tag)
        case ProjL(inner) | ProjR(inner) | Neg(inner):
            return (inner,)
        case Product(l, r) | Sum(l, r) | Case(l, r):
            return (l, r)
        case InjL(a, b) | InjR(a, b):
            return (a, b)
        case InternalSubst(defn, body):
            return (defn, body)
    raise AssertionError(f"unreachable: {e!r}")


def replace_child(e: ExprS, i: int, new: ExprS) -> ExprS:
    match e:
        case UnivAbs(dom, body, hint):
            return UnivAbs(new if i == 0 else dom, new if i == 1 else body, hint)
        case ExistAbs(dom, body, hint):
            return ExistAbs(new if i == 0 else dom, new if i == 1 else body, hint)
        case Appl(fun, arg):
            return Appl(new if i == 0 else fun, new if i == 1 else arg)
        case ProtDef(witness, proof, tag, hint):
            parts = [witness, proof, tag]
            parts[i] = new
            return ProtDef(parts[0], parts[1], parts[2], hint)
        case ProjL(_):
            return ProjL(new)
        case ProjR(_):
            return ProjR(new)
        case Product(l, r):
            return Product(new if i == 0 else l, new if i == 1 else r)
        case Sum(l, r):
            return Sum(new if i == 0 else l, new if i == 1 else r)
        case InjL(a, b):
            return InjL(new if i == 0 else a, new if i == 1 else b)
        case InjR(a, b):
            return InjR(new if i == 0 else a, new if i == 1 else b)
        case Case(l, r):
            return Case(new if i == 0 else l, new if i == 1 else r)
        case Neg(_):
            return Neg(new)
        case InternalSubst(defn, body, hint):
            return InternalSubst(new if i == 0 else defn, new if i == 1 else body, hint)
    raise AssertionError(f"no child {i} in {e!r}")


def scoped_index(e: ExprS) -> int | None:
    """Index of the component the node binds in, or None for non-binders."""
    return _SCOPED_INDEX.get(type(e))


def subtree_at(e: ExprS, path: tuple[int, ...]) -> ExprS:
    for i in path:
        e = children(e)[i]
    return e


def plug(e: ExprS, path: tuple[int, ...], new: ExprS) -> ExprS:
    if not path:
        return new
    i = path[0]
    return replace_child(e, i, plug(children(e)[i], path[1:], new))


def alpha_eq(a: ExprS, b: ExprS) -> bool:
    """Equality up to bound-variable names; structural on this representation."""
    return a == b


def free_vars(e: ExprS) -> set[str]:
    match e:
        case Prim() | Bound():
            return set()
        case Var(name):
            return {name}
    out: set[str] = set()
    for c in children(e):
        out |= free_vars(c)
    return out


def shift(e: ExprS, by: int, depth: int = 0) -> ExprS:
    """Add ``by`` to every index that points past ``depth`` enclosing binders."""
    if by == 0:
        return e
    match e:
        case Prim() | Var():
            return e
        case Bound(index):
            return Bound(index + by) if index >= depth else e
    scoped = scoped_index(e)
    out = e
    for i, c in enumerate(children(e)):
        d = depth + 1 if i == scoped else depth
        nc = shift(c, by, d)
        if nc is not c:
            out = replace_child(out, i, nc)
    return out


def subst(a: ExprS, x: str, b: ExprS) -> ExprS:
    """Replace every free occurrence of variable x in a by b.

    Occurrences of binders are indices, never names, so no renaming is needed;
    b's own dangling indices are shifted when it lands under binders.
    """

    def go(e: ExprS, depth: int) -> ExprS:
        match e:
            case Prim() | Bound():
                return e
            case Var(name):
                return shift(b, depth) if name == x else e
        scoped = scoped_index(e)
        out = e
        for i, c in enumerate(children(e)):
            d = depth + 1 if i == scoped else depth
            nc = go(c, d)
            if nc is not c:
                out = replace_child(out, i, nc)
        return out

    return go(a, 0)


def open_binder(scoped: ExprS, repl: ExprS) -> ExprS:
    """Instantiate a binder's scoped component with repl.

    ``scoped`` is the one component a binder scopes over, taken out of its
    binder; indices pointing at the removed binder become repl (shifted under
    any inner binders) and indices pointing past it step down one level.
    """

    def go(e: ExprS, depth: int) -> ExprS:
        match e:
            case Prim() | Var():
                return e
            case Bound(index):
                if index == depth:
                    return shift(repl, depth)
                if index > depth:
                    return Bound(index - 1)
                return e
        scoped_i = scoped_index(e)
        out = e
        for i, c in enumerate(children(e)):
            d = depth + 1 if i == scoped_i else depth
            nc = go(c, d)
            if nc is not c:
                out = replace_child(out, i, nc)
        return out

    return go(scoped, 0)


def close_binder(scoped: ExprS, x: str) -> ExprS:
    """Abstract the free variable x out of a component going under a binder."""

    def go(e: ExprS, depth: int) -> ExprS:
        match e:
            case Var(name):
                return Bound(depth) if name == x else e
            case Prim() | Bound():
                return e
        scoped_i = scoped_index(e)
        out = e
        for i, c in enumerate(children(e)):
            d = depth + 1 if i == scoped_i else depth
            nc = go(c, d)
            if nc is not c:
                out = replace_child(out, i, nc)
        return out

    return go(scoped, 0)


def binder_used(scoped: ExprS) -> bool:
    """True when a binder's scoped component actually references the binder."""

    def go(e: ExprS, depth: int) -> bool:
        match e:
            case Prim() | Var():
                return False
            case Bound(index):
                return index == depth
        scoped_i = scoped_index(e)
        return any(
            go(c, depth + 1 if i == scoped_i else depth) for i, c in enumerate(children(e))
        )

    return go(scoped, 0)


def size(e: ExprS) -> int:
    match e:
        case Prim() | Var() | Bound():
            return 1
    return 1 + sum(size(c) for c in children(e))


def fresh_name(hint: str, avoid: set[str]) -> str:
    if hint not in avoid:
        return hint
    i = 1
    while f"{hint}{i}" in avoid:
        i += 1
    return f"{hint}{i}"


class Context:
    """Ordered declarations with pairwise-distinct names, prefix-scoped."""

    __slots__ = ("entries", "_index")

    def __init__(self, entries: tuple[tuple[str, Expr], ...] = ()):
        self.entries = entries
        self._index = {name: i for i, (name, _) in enumerate(entries)}
        if len(self._index) != len(entries):
            raise ValueError("duplicate declaration name in context")

    def __repr__(self) -> str:
        inner = ", ".join(f"{name}:{to_text(ty)}" for name, ty in self.entries)
        return f"({inner})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Context) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def names(self) -> set[str]:
        return set(self._index)

    def lookup(self, name: str) -> Expr | None:
        i = self._index.get(name)
        return None if i is None else self.entries[i][1]

    def position(self, name: str) -> int | None:
        return self._index.get(name)

    def prefix(self, name: str) -> "Context":
        """Declarations strictly before name's declaration."""
        i = self._index[name]
        return Context(self.entries[:i])

    def extend(self, name: str, ty: Expr) -> "Context":
        return Context(self.entries + ((name, ty),))

    def fresh(self, hint: str, avoid: set[str] | None = None) -> str:
        taken = set(self._index)
        if avoid:
            taken |= avoid
        return fresh_name(hint, taken)


def _postfix_safe(e: ExprS) -> bool:
    """Can e take a .1/.2 postfix when printed, without parentheses?"""
    return not isinstance(e, (UnivAbs, ExistAbs, Neg, InternalSubst))


def to_text(e: ExprS) -> str:
    """Print a term; binder hints are freshened so reparsing gives the same term."""

    def go(e: ExprS, env: list[str]) -> str:
        match e:
            case Prim():
                return "tau"
            case Var(name):
                return name
            case Bound(index):
                if index < len(env):
                    return env[index]
                return f"?b{index - len(env)}"
            case UnivAbs(dom, body, hint):
                x = fresh_name(hint, set(env) | free_vars(body))
                return f"[{x}:{go(dom, env)}]{go(body, [x] + env)}"
            case ExistAbs(dom, body, hint):
                x = fresh_name(hint, set(env) | free_vars(body))
                return f"[{x}!{go(dom, env)}]{go(body, [x] + env)}"
            case Appl(fun, arg):
                return f"({go(fun, env)} {go(arg, env)})"
            case ProtDef(witness, proof, tag, hint):
                x = fresh_name(hint, set(env) | free_vars(tag))
                w = go(witness, env)
                p = go(proof, env)
                return f"<{x}:={w}, {p} : {go(tag, [x] + env)}>"
            case ProjL(inner):
                s = go(inner, env)
                return f"{s}.1" if _postfix_safe(inner) else f"({s}).1"
            case ProjR(inner):
                s = go(inner, env)
                return f"{s}.2" if _postfix_safe(inner) else f"({s}).2"
            case Product(l, r):
                return f"[{go(l, env)},{go(r, env)}]"
            case Sum(l, r):
                return f"[{go(l, env)}+{go(r, env)}]"
            case InjL(val, rtag):
                return f"inl({go(val, env)},{go(rtag, env)})"
            case InjR(ltag, val):
                return f"inr({go(ltag, env)},{go(val, env)})"
            case Case(l, r):
                return f"case({go(l, env)},{go(r, env)})"
            case Neg(inner):
                return f"~{go(inner, env)}"
            case InternalSubst(defn, body, hint):
                x = fresh_name(hint, set(env) | free_vars(body))
                return f"[{x}:={go(defn, env)}]{go(body, [x] + env)}"
        raise AssertionError(f"unreachable: {e!r}")

    return go(e, [])


for _cls in (
    Prim,
    Var,
    Bound,
    UnivAbs,
    ExistAbs,
    Appl,
    ProtDef,
    ProjL,
    ProjR,
    Product,
    Sum,
    InjL,
    InjR,
    Case,
    Neg,
    InternalSubst,
):
    _cls.__str__ = to_text  # type: ignore[method-assign]
