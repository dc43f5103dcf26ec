"""Axiom schemes and the pure-type-system bridge.

Seven schemes of typed constants, indexed by expressions: two that recover
classical reasoning over sums (negax+ / negax-) and five that let types be
demoted to and restored from tau (cast, castin, castout, dcastin, dcastout).
Each requested instance becomes one context declaration whose name is the
scheme slug plus a stable hash of the canonically serialized indices, so
re-instantiation is deterministic.

pts_to_dcalc translates a single-sorted pure type system into this calculus,
inserting the cast-family instances it needs as it goes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .reduction import DEFAULT_FUEL, reduce_nf
from .syntax import (
    TAU,
    Appl,
    Bound,
    Case,
    Context,
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
    close_binder,
    free_vars,
    fresh_name,
)
from .typecheck import TypingError, synth

SCHEME_ARITY = {
    "negax+": 2,
    "negax-": 2,
    "cast": 1,
    "castin": 1,
    "castout": 1,
    "dcastin": 2,
    "dcastout": 2,
}

FAMILIES = {
    "neg": ("negax+", "negax-"),
    "cast": ("cast", "castin", "castout", "dcastin", "dcastout"),
}

_SLUGS = {"negax+": "negaxp", "negax-": "negaxn"}


class CyclicIndices(Exception):
    """Axiom requests whose indices reference each other cyclically."""


class TranslationError(Exception):
    """A pure-type-system term that the casting translation cannot handle."""


def normalize_scheme(name: str) -> str:
    for canonical, slug in _SLUGS.items():
        if name in (canonical, slug):
            return canonical
    if name in SCHEME_ARITY:
        return name
    raise ValueError(f"unknown axiom scheme: {name}")


def resolve_axiom_gate(tokens: list[str]) -> frozenset[str]:
    """Expand CLI / directive gate tokens (families, schemes, 'all')."""
    out: set[str] = set()
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        if tok == "all":
            out.update(SCHEME_ARITY)
        elif tok in FAMILIES:
            out.update(FAMILIES[tok])
        else:
            out.add(normalize_scheme(tok))
    return frozenset(out)


def canonical(e: Expr) -> str:
    """Deterministic serialization ignoring binder hints."""
    match e:
        case Prim():
            return "tau"
        case Var(name):
            return f"(v {name})"
        case Bound(index):
            return f"(b {index})"
        case UnivAbs(dom, body):
            return f"(U {canonical(dom)} {canonical(body)})"
        case ExistAbs(dom, body):
            return f"(E {canonical(dom)} {canonical(body)})"
        case Appl(fun, arg):
            return f"(a {canonical(fun)} {canonical(arg)})"
        case ProtDef(witness, proof, tag):
            return f"(p {canonical(witness)} {canonical(proof)} {canonical(tag)})"
        case ProjL(operand):
            return f"(l {canonical(operand)})"
        case ProjR(operand):
            return f"(r {canonical(operand)})"
        case Product(l, r):
            return f"(prod {canonical(l)} {canonical(r)})"
        case Sum(l, r):
            return f"(sum {canonical(l)} {canonical(r)})"
        case InjL(val, rtag):
            return f"(il {canonical(val)} {canonical(rtag)})"
        case InjR(ltag, val):
            return f"(ir {canonical(ltag)} {canonical(val)})"
        case Case(left, right):
            return f"(c {canonical(left)} {canonical(right)})"
        case Neg(operand):
            return f"(n {canonical(operand)})"
        case InternalSubst(defn, body):
            return f"(s {canonical(defn)} {canonical(body)})"
    raise ValueError(f"unrecognized term: {e!r}")


def instance_name(scheme: str, indices: tuple[Expr, ...]) -> str:
    scheme = normalize_scheme(scheme)
    slug = _SLUGS.get(scheme, scheme)
    payload = scheme + "|" + "|".join(canonical(i) for i in indices)
    digest = hashlib.blake2b(payload.encode(), digest_size=5).hexdigest()
    return f"{slug}_{digest}"


@dataclass(frozen=True)
class AxiomScheme:
    """One instantiated axiom: a declaration name plus its template type."""

    scheme: str
    indices: tuple[Expr, ...]
    name: str
    ty: Expr
    deps: tuple[str, ...]


def imp(a: Expr, b: Expr) -> Expr:
    """Implication: a universal abstraction whose body ignores the binder.

    b must not contain dangling binder references of its own.
    """
    return UnivAbs(a, b, "z")


def _univ(tmp: str, hint: str, dom: Expr, body: Expr) -> Expr:
    return UnivAbs(dom, close_binder(body, tmp), hint)


def _exist(tmp: str, hint: str, dom: Expr, body: Expr) -> Expr:
    return ExistAbs(dom, close_binder(body, tmp), hint)


def _app(f: Expr, *args: Expr) -> Expr:
    out = f
    for a in args:
        out = Appl(out, a)
    return out


def instance(scheme: str, indices: tuple[Expr, ...]) -> AxiomScheme:
    """Build one instance; its type may reference dependency instance names."""
    scheme = normalize_scheme(scheme)
    if len(indices) != SCHEME_ARITY[scheme]:
        raise ValueError(
            f"{scheme} takes {SCHEME_ARITY[scheme]} indices, got {len(indices)}"
        )
    name = instance_name(scheme, indices)
    match scheme:
        case "negax+":
            a, b = indices
            ty = imp(Sum(a, b), imp(Neg(a), b))
            deps: tuple[str, ...] = ()
        case "negax-":
            a, b = indices
            ty = imp(imp(Neg(a), b), Sum(a, b))
            deps = ()
        case "cast":
            (a,) = indices
            ty = imp(a, TAU)
            deps = ()
        case "castin":
            (a,) = indices
            cast_nm = instance_name("cast", indices)
            x = Var("@1")
            ty = _univ("@1", "x", a, imp(x, Appl(Var(cast_nm), x)))
            deps = (cast_nm,)
        case "castout":
            (a,) = indices
            cast_nm = instance_name("cast", indices)
            x = Var("@1")
            ty = _univ("@1", "x", a, imp(Appl(Var(cast_nm), x), x))
            deps = (cast_nm,)
        case "dcastin" | "dcastout":
            a, b = indices
            cast_nm = instance_name("cast", (a,))
            ci = Var(instance_name("castin", (a,)))
            co = Var(instance_name("castout", (a,)))
            x, y, z = Var("@1"), Var("@2"), Var("@3")
            plain = Appl(y, z)
            routed = Appl(y, _app(co, x, _app(ci, x, z)))
            core = imp(plain, routed) if scheme == "dcastin" else imp(routed, plain)
            ty = _univ(
                "@1", "x", a,
                _univ("@2", "y", imp(x, b), _univ("@3", "z", x, core)),
            )
            deps = (cast_nm, str(ci.name), str(co.name))
        case _:
            raise ValueError(f"unknown axiom scheme: {scheme}")
    return AxiomScheme(scheme, indices, name, ty, deps)


def closure_requests(scheme: str, indices: tuple[Expr, ...]) -> list[AxiomScheme]:
    """The instance plus its template dependencies, dependencies first."""
    scheme = normalize_scheme(scheme)
    out: list[AxiomScheme] = []
    match scheme:
        case "castin" | "castout":
            out.extend(closure_requests("cast", indices))
        case "dcastin" | "dcastout":
            a, _ = indices
            out.extend(closure_requests("cast", (a,)))
            out.extend(closure_requests("castin", (a,)))
            out.extend(closure_requests("castout", (a,)))
    out.append(instance(scheme, indices))
    seen: set[str] = set()
    dedup = []
    for inst in out:
        if inst.name not in seen:
            seen.add(inst.name)
            dedup.append(inst)
    return dedup


def instantiate_axioms(requests: list[tuple[str, list[Expr]]]) -> Context:
    """A context declaring every requested instance, dependencies ordered first."""
    pending: list[AxiomScheme] = []
    seen: set[str] = set()
    for scheme, indices in requests:
        for inst in closure_requests(scheme, tuple(indices)):
            if inst.name not in seen:
                seen.add(inst.name)
                pending.append(inst)
    generated = {inst.name for inst in pending}
    entries: list[tuple[str, Expr]] = []
    placed: set[str] = set()
    while pending:
        progressed = False
        rest: list[AxiomScheme] = []
        for inst in pending:
            needs = (free_vars(inst.ty) & generated) - placed
            if needs:
                rest.append(inst)
            else:
                entries.append((inst.name, inst.ty))
                placed.add(inst.name)
                progressed = True
        if not progressed:
            names = ", ".join(inst.name for inst in rest)
            raise CyclicIndices(f"no dependency order for: {names}")
        pending = rest
    return Context(tuple(entries))


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class Pi:
    var: str
    dom: "PtsExpr"
    cod: "PtsExpr"


@dataclass(frozen=True)
class PLam:
    var: str
    dom: "PtsExpr"
    body: "PtsExpr"


@dataclass(frozen=True)
class PApp:
    fun: "PtsExpr"
    arg: "PtsExpr"


PtsExpr = Star | PVar | Pi | PLam | PApp


class _Translator:
    def __init__(self, fuel: int):
        self.fuel = fuel
        self.entries: list[tuple[str, Expr]] = []
        self.created: dict[str, AxiomScheme] = {}

    def global_names(self) -> set[str]:
        return {name for name, _ in self.entries}

    def ensure(self, scheme: str, indices: tuple[Expr, ...]) -> str:
        """Declare an instance (and its dependencies) if not already present."""
        for inst in closure_requests(scheme, indices):
            if inst.name in self.created:
                continue
            loose = set().union(*(free_vars(i) for i in inst.indices)) - self.global_names()
            if loose:
                raise TranslationError(
                    f"axiom index mentions names not in the translated context: "
                    f"{', '.join(sorted(loose))}"
                )
            self.created[inst.name] = inst
            self.entries.append((inst.name, inst.ty))
        return instance_name(scheme, indices)

    def ctx(self, locals_: list[tuple[str, Expr]]) -> Context:
        return Context(tuple(self.entries) + tuple(locals_))

    def translate(
        self,
        pe: PtsExpr,
        scope: dict[str, str],
        locals_: list[tuple[str, Expr]],
    ) -> Expr:
        match pe:
            case Star():
                return TAU
            case PVar(name):
                if name in scope:
                    return Var(scope[name])
                if any(name == n for n, _ in self.entries):
                    return Var(name)
                raise TranslationError(f"unbound variable: {name}")
            case Pi(var, dom, cod):
                ta = self.translate(dom, scope, locals_)
                x = self._pick(var, locals_)
                inner = locals_ + [(x, ta)]
                tb = self.translate(cod, {**scope, var: x}, inner)
                c = self._synth(tb, inner)
                index = UnivAbs(ta, close_binder(c, x), var)
                arg = UnivAbs(ta, close_binder(tb, x), var)
                cast_nm = self.ensure("cast", (index,))
                return Appl(Var(cast_nm), arg)
            case PLam(var, dom, body):
                ta = self.translate(dom, scope, locals_)
                x = self._pick(var, locals_)
                inner = locals_ + [(x, ta)]
                tb = self.translate(body, {**scope, var: x}, inner)
                c = self._synth(tb, inner)
                d = self._synth(c, inner)
                index = UnivAbs(ta, close_binder(d, x), var)
                castin_nm = self.ensure("castin", (index,))
                u = UnivAbs(ta, close_binder(c, x), var)
                t = UnivAbs(ta, close_binder(tb, x), var)
                return _app(Var(castin_nm), u, t)
            case PApp(fun, arg):
                tf = self.translate(fun, scope, locals_)
                tx = self.translate(arg, scope, locals_)
                ty = reduce_nf(self._synth(tf, locals_), self.fuel)
                match ty:
                    case Appl(Var(nm), c) if (
                        nm in self.created and self.created[nm].scheme == "cast"
                    ):
                        (d,) = self.created[nm].indices
                    case _:
                        raise TranslationError(
                            "operator does not translate to a cast application"
                        )
                castout_nm = self.ensure("castout", (d,))
                return _app(Var(castout_nm), c, tf, tx)
        raise ValueError(f"unrecognized term: {pe!r}")

    def _pick(self, hint: str, locals_: list[tuple[str, Expr]]) -> str:
        taken = self.global_names() | {n for n, _ in locals_}
        return fresh_name(hint, taken)

    def _synth(self, e: Expr, locals_: list[tuple[str, Expr]]) -> Expr:
        try:
            return synth(self.ctx(locals_), e, self.fuel)
        except TypingError as err:
            raise TranslationError(f"side condition failed: {err}") from err


def pts_to_dcalc(
    pctx: list[tuple[str, PtsExpr]],
    pe: PtsExpr,
    fuel: int = DEFAULT_FUEL,
) -> tuple[Context, Expr]:
    """Translate a context and term of the single-sorted pure type system.

    Returns the translated context, with the cast-family instances each
    declaration needs inserted right before it, and the translated term.
    """
    tr = _Translator(fuel)
    for name, pty in pctx:
        ty = tr.translate(pty, {}, [])
        if any(name == n for n, _ in tr.entries):
            raise TranslationError(f"duplicate declaration: {name}")
        tr.entries.append((name, ty))
    term = tr.translate(pe, {}, [])
    return Context(tuple(tr.entries)), term
