"""A small imperative language with a six-rule small-step semantics.

A configuration pairs a statement sequence with a store.  The empty sequence
is the only irreducible program.  One extra statement, ``x :∈ pow2div(t)``,
nondeterministically assigns to ``x`` any power of two (at least 2) dividing
the value of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from . import kernel
from ._lexer import Lexer, TokenStream, describe
from .kernel import (Config, EmptyChoiceError, Language, TypeMismatch,
                     UnboundVariable, literal)

Value = Union[int, bool]


# -- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Even:
    arg: Expr


@dataclass(frozen=True)
class Not:
    arg: Expr


Expr = Union[Int, Bool, Var, BinOp, Even, Not]

COMPARE = {"=", "<", "<="}
LOGIC = {"and", "or"}

_LEVEL = {"or": 1, "and": 2, "=": 3, "<": 3, "<=": 3, "+": 4, "-": 4, "*": 5, "/": 5}


# -- statements -------------------------------------------------------------

@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Block:
    stmts: tuple[Stmt, ...]


@dataclass(frozen=True)
class If:
    cond: Expr
    then: tuple[Stmt, ...]
    orelse: tuple[Stmt, ...]


@dataclass(frozen=True)
class While:
    cond: Expr
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class ChoosePow2Div:
    name: str
    expr: Expr


Stmt = Union[Skip, Assign, Block, If, While, ChoosePow2Div]


# -- store and configurations -----------------------------------------------

@dataclass(frozen=True)
class Store:
    """Variable bindings kept in allocation order."""

    bindings: tuple[tuple[str, Value], ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.bindings]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable in store: {names}")

    @classmethod
    def of(cls, *pairs: tuple[str, Value], **kw: Value) -> Store:
        return cls(tuple(pairs) + tuple(kw.items()))

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.bindings)

    def __getitem__(self, name: str) -> Value:
        for n, v in self.bindings:
            if n == name:
                return v
        raise UnboundVariable(f"unbound variable {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.bindings)

    def set(self, name: str, value: Value) -> Store:
        """``ρ + (name = value)``; a new name goes to the end."""
        if name in self:
            return Store(tuple((n, value if n == name else v) for n, v in self.bindings))
        return Store(self.bindings + ((name, value),))

    def __str__(self) -> str:
        return "⟨" + ", ".join(f"{n} = {render_value(v)}" for n, v in self.bindings) + "⟩"


@dataclass(frozen=True)
class ImpConfig:
    program: tuple[Stmt, ...]
    store: Store

    @property
    def terminal(self) -> bool:
        return not self.program

    def __str__(self) -> str:
        return f"⟨{render_program(self.program)}, {self.store}⟩"


kernel.register_payload(Language.IMP, ImpConfig)


def config(program: Iterable[Stmt] | str, store: Store | str | dict = ()) -> Config:
    """Build a tagged configuration from source text or AST pieces."""
    if isinstance(program, str):
        program = parse_imp(program)
    if isinstance(store, str):
        store = parse_store(store)
    elif isinstance(store, dict):
        store = Store(tuple(store.items()))
    elif not isinstance(store, Store):
        store = Store(tuple(store))
    return Config(Language.IMP, ImpConfig(tuple(program), store))


# -- evaluation -------------------------------------------------------------

def _int(v: Value, op: str) -> int:
    if type(v) is not int:
        raise TypeMismatch(f"{op} expects an integer, got {render_value(v)}")
    return v


def _bool(v: Value, op: str) -> bool:
    if type(v) is not bool:
        raise TypeMismatch(f"{op} expects a boolean, got {render_value(v)}")
    return v


def eval_expr(t: Expr, store: Store) -> Value:
    """Big-step value of ``t`` in ``store``."""
    if isinstance(t, Int):
        return t.value
    if isinstance(t, Bool):
        return t.value
    if isinstance(t, Var):
        return store[t.name]
    if isinstance(t, Even):
        return _int(eval_expr(t.arg, store), "even") % 2 == 0
    if isinstance(t, Not):
        return not _bool(eval_expr(t.arg, store), "not")
    if isinstance(t, BinOp):
        a = eval_expr(t.left, store)
        b = eval_expr(t.right, store)
        op = t.op
        if op in LOGIC:
            a, b = _bool(a, op), _bool(b, op)
            return (a and b) if op == "and" else (a or b)
        if op == "=":
            if type(a) is not type(b):
                raise TypeMismatch(f"cannot compare {render_value(a)} with {render_value(b)}")
            return a == b
        a, b = _int(a, op), _int(b, op)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return kernel.trunc_div(a, b)
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
    raise TypeError(f"not an expression: {t!r}")


def pow2_divisors(n: int) -> list[int]:
    """Powers of two, from 2 upward, dividing ``n``."""
    if n == 0:
        raise EmptyChoiceError("every power of two divides 0")
    out, p = [], 2
    while n % p == 0:
        out.append(p)
        p *= 2
    return out


def step_imp(c: ImpConfig) -> tuple[ImpConfig, ...]:
    """Successors of ``c`` under the small-step rules, in canonical order."""
    if not c.program:
        return ()
    head, rest = c.program[0], c.program[1:]
    store = c.store
    if isinstance(head, Skip):
        return (ImpConfig(rest, store),)
    if isinstance(head, Assign):
        return (ImpConfig(rest, store.set(head.name, eval_expr(head.expr, store))),)
    if isinstance(head, Block):
        return (ImpConfig(head.stmts + rest, store),)
    if isinstance(head, If):
        cond = _bool(eval_expr(head.cond, store), "if")
        return (ImpConfig((head.then if cond else head.orelse) + rest, store),)
    if isinstance(head, While):
        unfolded = If(head.cond, head.body + (head,), (Skip(),))
        return (ImpConfig((unfolded,) + rest, store),)
    if isinstance(head, ChoosePow2Div):
        n = eval_expr(head.expr, store)
        if type(n) is not int:
            raise EmptyChoiceError(f"pow2div of non-integer {render_value(n)}")
        choices = pow2_divisors(n)
        if not choices:
            raise EmptyChoiceError(f"{n} has no power-of-two divisor")
        return tuple(ImpConfig(rest, store.set(head.name, p)) for p in choices)
    raise TypeError(f"not a statement: {head!r}")


def step(c: Config) -> tuple[Config, ...]:
    return tuple(Config(Language.IMP, s) for s in step_imp(c.payload))


def erase_imp(c: ImpConfig, keep: Iterable[str] | None = None) -> tuple:
    """Drop the program and the variable names, keeping the listed values.

    ``keep=None`` keeps every variable in allocation order; names not yet
    allocated are skipped.
    """
    store = c.store
    names = store.names if keep is None else [n for n in keep if n in store]
    return tuple(literal(store[n]) for n in names)


# -- rendering --------------------------------------------------------------

def render_value(v: Value) -> str:
    if type(v) is bool:
        return "true" if v else "false"
    return str(v)


def render_expr(t: Expr, level: int = 0) -> str:
    if isinstance(t, (Int, Bool)):
        return render_value(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Even):
        return f"even({render_expr(t.arg)})"
    if isinstance(t, Not):
        return f"not({render_expr(t.arg)})"
    if isinstance(t, BinOp):
        mine = _LEVEL[t.op]
        # comparisons do not chain, so both sides bind tighter
        left = render_expr(t.left, mine + 1 if t.op in COMPARE else mine)
        right = render_expr(t.right, mine + 1)
        text = f"{left} {t.op} {right}"
        return f"({text})" if mine < level else text
    raise TypeError(f"not an expression: {t!r}")


def render_stmt(s: Stmt) -> str:
    if isinstance(s, Skip):
        return "skip"
    if isinstance(s, Assign):
        return f"{s.name} := {render_expr(s.expr)}"
    if isinstance(s, ChoosePow2Div):
        return f"{s.name} :∈ pow2div({render_expr(s.expr)})"
    if isinstance(s, Block):
        return "{" + render_program(s.stmts) + "}"
    if isinstance(s, If):
        then = render_program(s.then) if s.then else "{}"
        return f"if {render_expr(s.cond)} then {then} else {_render_single(s.orelse)}"
    if isinstance(s, While):
        return f"while {render_expr(s.cond)} do {_render_single(s.body)}"
    raise TypeError(f"not a statement: {s!r}")


def _render_single(stmts: tuple[Stmt, ...]) -> str:
    if len(stmts) == 1:
        return render_stmt(stmts[0])
    return "{" + render_program(stmts) + "}"


def render_program(stmts: Iterable[Stmt]) -> str:
    return "; ".join(render_stmt(s) for s in stmts)


# -- parsing ----------------------------------------------------------------

_LEXER = Lexer([":=", ":∈", ":in", "<=", "<", "=", "+", "-", "*", "/",
                "(", ")", "{", "}", ";", ","])
KEYWORDS = {"skip", "if", "then", "else", "while", "do", "true", "false",
            "even", "not", "and", "or", "pow2div"}


class _Parser:
    def __init__(self, source: str):
        self.ts = TokenStream(_LEXER.tokenize(source))

    def program(self) -> tuple[Stmt, ...]:
        stmts = self.stmts()
        if self.ts.peek.kind != "eof":
            self.ts.error(f"unexpected {describe(self.ts.peek)}")
        return stmts

    def stmts(self) -> tuple[Stmt, ...]:
        out = [self.stmt()]
        while self.ts.accept(";"):
            out.append(self.stmt())
        return tuple(out)

    def stmt(self) -> Stmt:
        ts = self.ts
        tok = ts.peek
        if ts.accept("skip"):
            return Skip()
        if ts.accept("{"):
            if ts.accept("}"):
                return Block(())
            body = self.stmts()
            ts.expect("}")
            return Block(body)
        if ts.accept("if"):
            cond = self.expr()
            ts.expect("then")
            # the then-branch runs up to ``else`` and may be a sequence
            then = self.stmts()
            ts.expect("else")
            return If(cond, then, (self.stmt(),))
        if ts.accept("while"):
            cond = self.expr()
            ts.expect("do")
            return While(cond, (self.stmt(),))
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            ts.next()
            if ts.accept(":="):
                return Assign(tok.text, self.expr())
            if ts.accept(":∈", ":in"):
                ts.expect("pow2div")
                ts.expect("(")
                e = self.expr()
                ts.expect(")")
                return ChoosePow2Div(tok.text, e)
            ts.error(f"expected ':=' or ':∈' after {tok.text!r}, found {describe(ts.peek)}")
        ts.error(f"expected a statement, found {describe(tok)}")

    def expr(self) -> Expr:
        return self.binary(1)

    def binary(self, level: int) -> Expr:
        if level > 5:
            return self.atom()
        ops = [op for op, lv in _LEVEL.items() if lv == level]
        left = self.binary(level + 1)
        if level == 3:
            tok = self.ts.accept(*ops)
            if tok:
                left = BinOp(tok.text, left, self.binary(level + 1))
                if self.ts.at(*ops):
                    self.ts.error("comparisons do not chain")
            return left
        while True:
            tok = self.ts.accept(*ops)
            if tok is None:
                return left
            left = BinOp(tok.text, left, self.binary(level + 1))

    def atom(self) -> Expr:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "int":
            ts.next()
            return Int(int(tok.text))
        if ts.accept("true"):
            return Bool(True)
        if ts.accept("false"):
            return Bool(False)
        if ts.at("even", "not"):
            ts.next()
            ts.expect("(")
            arg = self.expr()
            ts.expect(")")
            return Even(arg) if tok.text == "even" else Not(arg)
        if ts.accept("("):
            e = self.expr()
            ts.expect(")")
            return e
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            ts.next()
            return Var(tok.text)
        ts.error(f"expected an expression, found {describe(tok)}")


def parse_imp(source: str) -> tuple[Stmt, ...]:
    """Parse a program into its top-level statement sequence."""
    return _Parser(source).program()


def parse_value(text: str) -> Value:
    text = text.strip()
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        raise kernel.ParseError(f"not a value: {text!r}") from None


def parse_store(text: str) -> Store:
    """``"x=12,y=1"`` -> store with x allocated before y."""
    pairs = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, eq, value = part.partition("=")
        if not eq or not name.strip().isidentifier():
            raise kernel.ParseError(f"malformed binding {part!r}")
        pairs.append((name.strip(), parse_value(value)))
    try:
        return Store(tuple(pairs))
    except ValueError as exc:
        raise kernel.ParseError(str(exc)) from None
