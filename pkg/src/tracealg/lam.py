"""Call-by-value lambda calculus with recursive abstractions.

``fun f x -> t`` binds both the argument ``x`` and the abstraction itself
under ``f``, so applying it to a value ``u`` steps to ``t`` with ``u`` for
``x`` and the whole abstraction for ``f``.  Integers, booleans, the
primitives ``even``, ``/``, ``+``, ``*`` and a lazy ``if`` complete the
language.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Union

from . import kernel
from ._lexer import Lexer, TokenStream, describe
from .kernel import (BoolLit, Config, FunApp, IntLit, Language, StuckError,
                     TypeMismatch, UnboundVariable)


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
class Prim:
    name: str
    # display only: written between its operands in the source
    infix: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class Fix:
    fname: str
    xname: str
    body: Term


@dataclass(frozen=True)
class App:
    fn: Term
    arg: Term


@dataclass(frozen=True)
class If:
    cond: Term
    then: Term
    orelse: Term


Term = Union[Int, Bool, Var, Prim, Fix, App, If]

ARITY = {"even": 1, "/": 2, "+": 2, "*": 2}
INFIX_LEVEL = {"+": 1, "*": 2, "/": 2}

kernel.register_payload(Language.LAM, Int, Bool, Var, Prim, Fix, App, If)


def apply(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    """``(h a1 ... an)`` -> ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Fix):
        return free_vars(t.body) - {t.fname, t.xname}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    if isinstance(t, If):
        return free_vars(t.cond) | free_vars(t.then) | free_vars(t.orelse)
    return set()


def _all_names(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Fix):
        return _all_names(t.body) | {t.fname, t.xname}
    if isinstance(t, App):
        return _all_names(t.fn) | _all_names(t.arg)
    if isinstance(t, If):
        return _all_names(t.cond) | _all_names(t.then) | _all_names(t.orelse)
    return set()


def fresh_name(avoid: set[str], base: str = "_rec") -> str:
    for i in itertools.count():
        name = base if i == 0 else f"{base}{i}"
        if name not in avoid:
            return name


def subst(t: Term, env: dict[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution."""
    if not env:
        return t
    if isinstance(t, Var):
        return env.get(t.name, t)
    if isinstance(t, App):
        return App(subst(t.fn, env), subst(t.arg, env))
    if isinstance(t, If):
        return If(subst(t.cond, env), subst(t.then, env), subst(t.orelse, env))
    if isinstance(t, Fix):
        inner = {k: v for k, v in env.items() if k not in (t.fname, t.xname)}
        if not inner:
            return t
        fname, xname, body = t.fname, t.xname, t.body
        incoming = set().union(*(free_vars(v) for v in inner.values()))
        if fname in incoming or xname in incoming:
            avoid = incoming | _all_names(body) | set(inner)
            renames = {}
            if fname in incoming:
                renames[fname] = Var(fresh_name(avoid, fname))
                avoid.add(renames[fname].name)
            if xname in incoming:
                renames[xname] = Var(fresh_name(avoid, xname))
            body = subst(body, renames)
            fname = renames.get(fname, Var(fname)).name
            xname = renames.get(xname, Var(xname)).name
        return Fix(fname, xname, subst(body, inner))
    return t


def substitute(body: Term, x: str, u: Term, f: str, rec: Term) -> Term:
    """``body`` with ``u`` for ``x`` and ``rec`` for ``f``; ``x`` wins if ``x == f``."""
    return subst(body, {f: rec, x: u})


def is_value(t: Term) -> bool:
    if isinstance(t, (Int, Bool, Prim, Fix)):
        return True
    if isinstance(t, App):
        head, args = spine(t)
        return (isinstance(head, Prim) and len(args) < ARITY[head.name]
                and all(is_value(a) for a in args))
    return False


def _int(t: Term, op: str) -> int:
    if not isinstance(t, Int):
        raise TypeMismatch(f"{op} expects an integer, got {render(t)}")
    return t.value


def _primitive(name: str, args: list[Term]) -> Term:
    if name == "even":
        return Bool(_int(args[0], name) % 2 == 0)
    a, b = _int(args[0], name), _int(args[1], name)
    if name == "+":
        return Int(a + b)
    if name == "*":
        return Int(a * b)
    return Int(kernel.trunc_div(a, b))


def _reduce(t: Term) -> Term | None:
    """``t`` after one step, or None when ``t`` is a value."""
    if isinstance(t, Var):
        raise UnboundVariable(f"free variable {t.name!r} in configuration")
    if isinstance(t, If):
        if not is_value(t.cond):
            return If(_reduce(t.cond), t.then, t.orelse)
        if not isinstance(t.cond, Bool):
            raise TypeMismatch(f"if expects a boolean, got {render(t.cond)}")
        return t.then if t.cond.value else t.orelse
    if not isinstance(t, App):
        return None
    head, args = spine(t)
    if isinstance(head, (If, Var)):
        return apply(_reduce(head), *args)
    for i, a in enumerate(args):
        if not is_value(a):
            return apply(head, *args[:i], _reduce(a), *args[i + 1:])
    if isinstance(head, Fix):
        return apply(substitute(head.body, head.xname, args[0], head.fname, head),
                     *args[1:])
    if isinstance(head, Prim):
        k = ARITY[head.name]
        if len(args) < k:
            return None
        return apply(_primitive(head.name, args[:k]), *args[k:])
    raise StuckError(f"cannot apply {render(head)}")


def step_lam(t: Term) -> tuple[Term, ...]:
    reduced = _reduce(t)
    return () if reduced is None else (reduced,)


def step(c: Config) -> tuple[Config, ...]:
    return tuple(Config(Language.LAM, s) for s in step_lam(c.payload))


def erase_lam_term(t: Term) -> kernel.ErasedTerm:
    """Replace abstractions, primitives and ``if`` heads by ``<fun>``.

    Application spines are flattened, so ``(h a b)`` becomes ``<fun>(a,b)``.
    """
    if isinstance(t, Int):
        return IntLit(t.value)
    if isinstance(t, Bool):
        return BoolLit(t.value)
    if isinstance(t, Var):
        raise UnboundVariable(f"cannot erase open term: free variable {t.name!r}")
    head, args = spine(t)
    erased = [erase_lam_term(a) for a in args]
    if isinstance(head, If):
        erased = [erase_lam_term(head.cond), erase_lam_term(head.then),
                  erase_lam_term(head.orelse)] + erased
    elif not isinstance(head, (Fix, Prim)):
        raise StuckError(f"cannot erase application of {render(head)}")
    return FunApp(tuple(erased))


# -- rendering --------------------------------------------------------------

def _is_infix(t: Term) -> bool:
    head, args = spine(t)
    return isinstance(head, Prim) and head.infix and len(args) == 2


def render(t: Term, atomic: bool = False) -> str:
    """Source text for ``t``; ``atomic`` asks for a self-delimiting form."""
    if isinstance(t, Int):
        return str(t.value)
    if isinstance(t, Bool):
        return "true" if t.value else "false"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Prim):
        return f"({t.name})" if atomic and t.name in INFIX_LEVEL else t.name
    if isinstance(t, Fix):
        params = t.xname if t.fname not in free_vars(t.body) else f"{t.fname} {t.xname}"
        text = f"fun {params} -> {render(t.body)}"
        return f"({text})" if atomic else text
    if isinstance(t, If):
        return f"(if {render(t.cond, True)} {render(t.then, True)} {render(t.orelse, True)})"
    if _is_infix(t):
        text = _render_infix(t, 0)
        return f"({text})" if atomic else text
    head, args = spine(t)
    head_text = head.name if isinstance(head, Prim) else render(head, True)
    return "(" + " ".join([head_text] + [render(a, True) for a in args]) + ")"


def _render_infix(t: Term, level: int) -> str:
    head, (a, b) = spine(t)
    mine = INFIX_LEVEL[head.name]

    def operand(u: Term, need: int) -> str:
        if _is_infix(u):
            return _render_infix(u, need)
        return render(u, True)

    text = f"{operand(a, mine)} {head.name} {operand(b, mine + 1)}"
    return f"({text})" if mine < level else text


# -- parsing ----------------------------------------------------------------

_LEXER = Lexer(["->", "→", "(", ")", "+", "*", "/"])
KEYWORDS = {"fun", "if", "true", "false", "even"}


class _Parser:
    def __init__(self, source: str):
        self.ts = TokenStream(_LEXER.tokenize(source))

    def term(self) -> Term:
        ts = self.ts
        if ts.accept("fun"):
            names = []
            while ts.peek.kind == "ident" and ts.peek.text not in KEYWORDS:
                names.append(ts.next().text)
            if not ts.at("->", "→"):
                ts.error(f"expected '->', found {describe(ts.peek)}")
            ts.next()
            if len(names) not in (1, 2):
                ts.error("fun takes a parameter and an optional recursion name")
            body = self.term()
            if len(names) == 1:
                fname = fresh_name(_all_names(body) | set(names))
                return Fix(fname, names[0], body)
            return Fix(names[0], names[1], body)
        return self.infix(1)

    def infix(self, level: int) -> Term:
        if level > 2:
            return self.juxtaposition()
        ops = [op for op, lv in INFIX_LEVEL.items() if lv == level]
        left = self.infix(level + 1)
        while self.ts.at(*ops):
            op = self.ts.next().text
            left = apply(Prim(op, infix=True), left, self.infix(level + 1))
        return left

    def juxtaposition(self) -> Term:
        ts = self.ts
        if ts.accept("if"):
            head = If(self.atom(), self.atom(), self.atom())
        elif ts.peek.kind == "op" and ts.peek.text in INFIX_LEVEL:
            head = Prim(ts.next().text)
        else:
            head = self.atom()
        while self._starts_atom():
            head = App(head, self.atom())
        return head

    def _starts_atom(self) -> bool:
        tok = self.ts.peek
        if tok.kind == "int" or self.ts.at("(", "true", "false", "even"):
            return True
        return tok.kind == "ident" and tok.text not in KEYWORDS

    def atom(self) -> Term:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "int":
            ts.next()
            return Int(int(tok.text))
        if ts.accept("true"):
            return Bool(True)
        if ts.accept("false"):
            return Bool(False)
        if ts.accept("even"):
            return Prim("even")
        if ts.accept("("):
            t = self.term()
            ts.expect(")")
            return t
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            ts.next()
            return Var(tok.text)
        ts.error(f"expected a term, found {describe(tok)}")


def parse_lam(source: str, allow_free: bool = False) -> Term:
    """Parse a closed term; ``fun x -> t`` gets a fresh recursion name."""
    p = _Parser(source)
    t = p.term()
    if p.ts.peek.kind != "eof":
        p.ts.error(f"unexpected {describe(p.ts.peek)}")
    if not allow_free and free_vars(t):
        raise kernel.ParseError(f"free variable(s) {sorted(free_vars(t))} in closed term")
    return t


def config(term: Term | str, *inputs: int | bool) -> Config:
    """``term`` applied to the literal ``inputs``, as a tagged configuration."""
    if isinstance(term, str):
        term = parse_lam(term)
    args = [Bool(v) if type(v) is bool else Int(v) for v in inputs]
    return Config(Language.LAM, apply(term, *args))
