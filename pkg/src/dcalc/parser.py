"""Concrete syntax for terms and proof files.

Grammar sketch (backtracking recursive descent):

    expr     := '~' expr | postfix
    postfix  := atom ('.' ('1'|'2') | '(' expr (',' expr)* ')')*
    atom     := 'tau' | name | bracket | '(' expr expr? ')' | protdef
              | ('inl'|'inr'|'case') '(' expr ',' expr ')'
    bracket  := '[' name ':=' expr ']' expr                 pending substitution
              | '[' group (';' group)* ']' expr             abstractions
              | '[' expr ((';'|'=>') expr)+ ']'             implication chain
              | '[' expr (',' expr)+ ']'                    product
              | '[' expr ('+' expr)+ ']'                    sum
    group    := name (',' name)* (':'|'!') expr
    protdef  := '<' name ':=' expr ',' expr ':' expr '>'

The call form f(a,b) is sugar for ((f a) b). Implications [a;b=>c] nest to
the right, as do products and sums. '--' starts a line comment.

Files hold directives: `context NAME { decls }`, `def NAME := expr`,
`check expr : expr`, and `axiom scheme{indices}`. Referencing an axiom
scheme such as negax-{a,~a} inside an expression resolves to the generated
instance name and splices the instance declarations (dependencies first)
into the context right before the enclosing item.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import (
    SCHEME_ARITY,
    closure_requests,
    imp,
    instance_name,
    normalize_scheme,
)
from .syntax import (
    TAU,
    Appl,
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
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "negax" and j < n and text[j] in "+-":
                word += text[j]
                j += 1
            toks.append(Token("NAME", word, line, col))
            col += j - i
            i = j
            continue
        if text.startswith(":=", i) or text.startswith("=>", i):
            toks.append(Token("PUNCT", text[i : i + 2], line, col))
            i += 2
            col += 2
            continue
        if c in "[](){}<>,;:!~+.":
            toks.append(Token("PUNCT", c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


@dataclass
class CheckItem:
    term: Expr
    ty: Expr
    line: int


@dataclass
class Document:
    context: Context
    defs: dict[str, Expr] = field(default_factory=dict)
    checks: list[CheckItem] = field(default_factory=list)


def _is_scheme(name: str) -> bool:
    try:
        normalize_scheme(name)
        return True
    except ValueError:
        return False


class _Parser:
    def __init__(self, toks: list[Token], allowed: frozenset[str], document: bool):
        self.toks = toks
        self.pos = 0
        self.allowed = allowed
        self.document = document
        self.binders: frozenset[str] = frozenset()
        self.entries: list[tuple[str, Expr]] = []
        self.entry_names: set[str] = set()
        self.defs: dict[str, Expr] = {}
        self.checks: list[CheckItem] = []

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "EOF"

    def take(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "EOF":
            got = tok.text if tok.kind != "EOF" else "end of input"
            raise ParseError(f"expected {text!r}, got {got!r}", tok.line, tok.col)
        return self.take()

    def expect_name(self) -> Token:
        tok = self.peek()
        if tok.kind != "NAME":
            got = tok.text if tok.kind != "EOF" else "end of input"
            raise ParseError(f"expected a name, got {got!r}", tok.line, tok.col)
        return self.take()

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    # expressions

    def expr(self) -> ExprS:
        if self.at("~"):
            self.take()
            return Neg(self.expr())
        return self.postfix()

    def postfix(self) -> ExprS:
        e = self.atom()
        while True:
            if self.at("."):
                self.take()
                tok = self.expect_name()
                if tok.text == "1":
                    e = ProjL(e)
                elif tok.text == "2":
                    e = ProjR(e)
                else:
                    raise ParseError("expected 1 or 2 after '.'", tok.line, tok.col)
            elif self.at("("):
                snap = self._save()
                try:
                    args = self._call_args()
                except ParseError:
                    self._restore(snap)
                    break
                for a in args:
                    e = Appl(e, a)
            else:
                break
        return e

    def _call_args(self) -> list[ExprS]:
        self.expect("(")
        args = [self.expr()]
        while self.at(","):
            self.take()
            args.append(self.expr())
        self.expect(")")
        return args

    def atom(self) -> ExprS:
        tok = self.peek()
        if tok.kind == "NAME":
            if tok.text == "tau":
                self.take()
                return TAU
            if tok.text in ("inl", "inr", "case") and self.peek(1).text == "(":
                self.take()
                self.expect("(")
                first = self.expr()
                self.expect(",")
                second = self.expr()
                self.expect(")")
                match tok.text:
                    case "inl":
                        return InjL(first, second)
                    case "inr":
                        return InjR(first, second)
                    case _:
                        return Case(first, second)
            self.take()
            return self._resolve(tok)
        if tok.text == "[":
            return self._bracket()
        if tok.text == "(":
            self.take()
            e1 = self.expr()
            if self.at(")"):
                self.take()
                return e1
            e2 = self.expr()
            self.expect(")")
            return Appl(e1, e2)
        if tok.text == "<":
            return self._protdef()
        raise self.error("expected an expression")

    def _resolve(self, tok: Token) -> ExprS:
        name = tok.text
        if name in self.binders:
            return Var(name)
        if name in self.defs:
            return self.defs[name]
        if _is_scheme(name) and self.at("{"):
            return self._scheme_ref(tok)
        return Var(name)

    def _scheme_ref(self, tok: Token) -> Expr:
        scheme = normalize_scheme(tok.text)
        if scheme not in self.allowed:
            raise ParseError(
                f"axiom scheme {scheme!r} is not enabled here", tok.line, tok.col
            )
        self.expect("{")
        indices = [self.expr()]
        while self.at(","):
            self.take()
            indices.append(self.expr())
        self.expect("}")
        if len(indices) != SCHEME_ARITY[scheme]:
            raise ParseError(
                f"{scheme} takes {SCHEME_ARITY[scheme]} indices, got {len(indices)}",
                tok.line,
                tok.col,
            )
        if self.document:
            for idx in indices:
                loose = free_vars(idx) - self.entry_names
                if loose:
                    raise ParseError(
                        "axiom index uses names not declared in the context: "
                        + ", ".join(sorted(loose)),
                        tok.line,
                        tok.col,
                    )
            for inst in closure_requests(scheme, tuple(indices)):
                if inst.name not in self.entry_names:
                    self.entries.append((inst.name, inst.ty))
                    self.entry_names.add(inst.name)
        return Var(instance_name(scheme, tuple(indices)))

    def _protdef(self) -> ExprS:
        self.expect("<")
        name = self.expect_name().text
        self.expect(":=")
        witness = self.expr()
        self.expect(",")
        proof = self.expr()
        self.expect(":")
        outer = self.binders
        self.binders = outer | {name}
        try:
            tag = self.expr()
        finally:
            self.binders = outer
        self.expect(">")
        return ProtDef(witness, proof, close_binder(tag, name), name)

    def _save(self) -> tuple[int, frozenset[str], int]:
        return self.pos, self.binders, len(self.entries)

    def _restore(self, snap: tuple[int, frozenset[str], int]) -> None:
        self.pos, self.binders, keep = snap
        del self.entries[keep:]
        self.entry_names = {n for n, _ in self.entries}

    def _bracket(self) -> ExprS:
        self.expect("[")
        snap = self._save()
        best: ParseError | None = None
        for attempt in (self._subst, self._binders, self._implication, self._tuple):
            try:
                return attempt()
            except ParseError as err:
                if best is None or (err.line, err.col) >= (best.line, best.col):
                    best = err
                self._restore(snap)
        raise best if best is not None else self.error("expected a bracket form")

    def _subst(self) -> ExprS:
        name = self.expect_name().text
        self.expect(":=")
        defn = self.expr()
        self.expect("]")
        outer = self.binders
        self.binders = outer | {name}
        try:
            body = self.expr()
        finally:
            self.binders = outer
        return InternalSubst(defn, close_binder(body, name), name)

    def _binders(self) -> ExprS:
        groups: list[tuple[list[str], str, ExprS]] = [self._group()]
        while self.at(";"):
            self.take()
            groups.append(self._group())
        self.expect("]")
        body = self.expr()
        for names, flag, dom in reversed(groups):
            cls = ExistAbs if flag == "!" else UnivAbs
            for name in reversed(names):
                body = cls(dom, close_binder(body, name), name)
        return body

    def _group(self) -> tuple[list[str], str, ExprS]:
        names = [self.expect_name().text]
        while self.at(","):
            self.take()
            names.append(self.expect_name().text)
        if self.at(":"):
            flag = ":"
        elif self.at("!"):
            flag = "!"
        else:
            raise self.error("expected ':' or '!' in binder group")
        self.take()
        dom = self.expr()
        self.binders = self.binders | set(names)
        return names, flag, dom

    def _implication(self) -> ExprS:
        items = [self.expr()]
        seps: list[str] = []
        while self.at(";") or self.at("=>"):
            seps.append(self.take().text)
            items.append(self.expr())
        self.expect("]")
        if "=>" not in seps:
            raise self.error("expected '=>' in implication")
        first_arrow = seps.index("=>")
        if ";" in seps[first_arrow:]:
            raise self.error("';' may not follow '=>' in an implication")
        out = items[-1]
        for item in reversed(items[:-1]):
            out = imp(item, out)
        return out

    def _tuple(self) -> ExprS:
        first = self.expr()
        if self.at(","):
            items = [first]
            while self.at(","):
                self.take()
                items.append(self.expr())
            self.expect("]")
            out = items[-1]
            for item in reversed(items[:-1]):
                out = Product(item, out)
            return out
        if self.at("+"):
            items = [first]
            while self.at("+"):
                self.take()
                items.append(self.expr())
            self.expect("]")
            out = items[-1]
            for item in reversed(items[:-1]):
                out = Sum(item, out)
            return out
        raise self.error("expected ',' or '+' in bracket")

    # directives

    def document_body(self) -> Document:
        while self.peek().kind != "EOF":
            tok = self.expect_name()
            match tok.text:
                case "context":
                    self._context_block()
                case "def":
                    self._def_directive()
                case "check":
                    term = self.expr()
                    self.expect(":")
                    ty = self.expr()
                    self.checks.append(CheckItem(term, ty, tok.line))
                case "axiom":
                    ref = self.expect_name()
                    if not _is_scheme(ref.text):
                        raise ParseError(
                            f"unknown axiom scheme: {ref.text}", ref.line, ref.col
                        )
                    self._scheme_ref(ref)
                case _:
                    raise ParseError(
                        "expected a directive (context, def, check, axiom), got "
                        f"{tok.text!r}",
                        tok.line,
                        tok.col,
                    )
        return Document(Context(tuple(self.entries)), self.defs, self.checks)

    def _context_block(self) -> None:
        self.expect_name()
        self.expect("{")
        while not self.at("}"):
            names = [self.expect_name()]
            while self.at(","):
                self.take()
                names.append(self.expect_name())
            self.expect(":")
            ty = self.expr()
            for tok in names:
                self._declare(tok, ty)
            if self.at(";"):
                self.take()
            else:
                break
        self.expect("}")

    def _declare(self, tok: Token, ty: Expr) -> None:
        if tok.text in self.entry_names or tok.text in self.defs:
            raise ParseError(f"duplicate name: {tok.text}", tok.line, tok.col)
        self.entries.append((tok.text, ty))
        self.entry_names.add(tok.text)

    def _def_directive(self) -> None:
        tok = self.expect_name()
        self.expect(":=")
        body = self.expr()
        if tok.text in self.entry_names or tok.text in self.defs:
            raise ParseError(f"duplicate name: {tok.text}", tok.line, tok.col)
        self.defs[tok.text] = body


def parse_term(text: str, allowed_schemes: frozenset[str] = frozenset()) -> ExprS:
    """Parse one standalone expression."""
    parser = _Parser(tokenize(text), allowed_schemes, document=False)
    e = parser.expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected trailing input: {tok.text!r}", tok.line, tok.col)
    return e


def parse_document(text: str, allowed_schemes: frozenset[str] = frozenset()) -> Document:
    """Parse a proof file of directives into a context, definitions, and checks."""
    parser = _Parser(tokenize(text), allowed_schemes, document=True)
    return parser.document_body()
