"""First-order recursive equations, reduced call-by-value one step at a time.

A program is an ordered list of rules ``f(p1,...,pn) = rhs`` whose patterns
are variables or literals.  A configuration pairs the program with a closed
term.  Defined functions and the primitives ``even``, ``/``, ``+``, ``*`` are
strict in every argument; ``if`` is strict only in its condition.  The
redex reduced at each step is the leftmost-innermost one in a strict
position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import kernel
from ._lexer import Lexer, TokenStream, describe
from .kernel import (BoolLit, Config, FunApp, IntLit, Language, StuckError,
                     TypeMismatch, UnboundVariable)


@dataclass(frozen=True)
class Int:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Bool:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    name: str
    args: tuple[Term, ...]

    def __str__(self):
        return f"{self.name}(" + ",".join(str(a) for a in self.args) + ")"


Term = Union[Int, Bool, Var, App]
Literal = (Int, Bool)

PRIMITIVES = {"even": 1, "/": 2, "+": 2, "*": 2, "if": 3}


@dataclass(frozen=True)
class Rule:
    lhs: App
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class EqnProgram:
    rules: tuple[Rule, ...]

    @property
    def arities(self) -> dict[str, int]:
        return {r.lhs.name: len(r.lhs.args) for r in self.rules}

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


@dataclass(frozen=True)
class EqnConfig:
    program: EqnProgram
    term: Term

    def __str__(self):
        return str(self.term)


kernel.register_payload(Language.EQN, EqnConfig)


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return set().union(*(free_vars(a) for a in t.args))
    return set()


def substitute(t: Term, env: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return env.get(t.name, t)
    if isinstance(t, App):
        return App(t.name, tuple(substitute(a, env) for a in t.args))
    return t


def _match(patterns: tuple[Term, ...], values: tuple[Term, ...]) -> dict[str, Term] | None:
    env = {}
    for p, v in zip(patterns, values):
        if isinstance(p, Var):
            env[p.name] = v
        elif p != v:
            return None
    return env


def _int(t: Term, op: str) -> int:
    if not isinstance(t, Int):
        raise TypeMismatch(f"{op} expects an integer, got {t}")
    return t.value


def _apply_primitive(name: str, args: tuple[Term, ...]) -> Term:
    if name == "even":
        return Bool(_int(args[0], name) % 2 == 0)
    a, b = _int(args[0], name), _int(args[1], name)
    if name == "+":
        return Int(a + b)
    if name == "*":
        return Int(a * b)
    return Int(kernel.trunc_div(a, b))


def _reduce(program: EqnProgram, t: Term) -> Term | None:
    """``t`` after one step, or None when ``t`` is a literal."""
    if isinstance(t, Literal):
        return None
    if isinstance(t, Var):
        raise UnboundVariable(f"free variable {t.name!r} in configuration")
    if t.name == "if":
        cond = t.args[0]
        if not isinstance(cond, Literal):
            return App("if", (_reduce(program, cond),) + t.args[1:])
        if not isinstance(cond, Bool):
            raise TypeMismatch(f"if expects a boolean, got {cond}")
        return t.args[1] if cond.value else t.args[2]
    for i, a in enumerate(t.args):
        if not isinstance(a, Literal):
            return App(t.name, t.args[:i] + (_reduce(program, a),) + t.args[i + 1:])
    if t.name in PRIMITIVES:
        return _apply_primitive(t.name, t.args)
    for rule in program.rules:
        if rule.lhs.name == t.name and len(rule.lhs.args) == len(t.args):
            env = _match(rule.lhs.args, t.args)
            if env is not None:
                return substitute(rule.rhs, env)
    raise StuckError(f"no rule matches {t}")


def step_eqn(c: EqnConfig) -> tuple[EqnConfig, ...]:
    reduced = _reduce(c.program, c.term)
    if reduced is None:
        return ()
    return (EqnConfig(c.program, reduced),)


def step(c: Config) -> tuple[Config, ...]:
    return tuple(Config(Language.EQN, s) for s in step_eqn(c.payload))


def erase_fun_term(t: Term) -> kernel.ErasedTerm:
    """Replace every function name, primitives and ``if`` included, by ``<fun>``."""
    if isinstance(t, Int):
        return IntLit(t.value)
    if isinstance(t, Bool):
        return BoolLit(t.value)
    if isinstance(t, Var):
        raise UnboundVariable(f"cannot erase open term: free variable {t.name!r}")
    return FunApp(tuple(erase_fun_term(a) for a in t.args))


def erase_eqn(c: EqnConfig) -> kernel.ErasedTerm:
    return erase_fun_term(c.term)


# -- parsing ----------------------------------------------------------------

_LEXER = Lexer(["(", ")", ",", "=", "/", "+", "*"], newlines=True)
_OPERATOR_NAMES = {"/", "+", "*"}


class _Parser:
    def __init__(self, source: str):
        self.ts = TokenStream(_LEXER.tokenize(source))

    def skip_newlines(self):
        while self.ts.peek.kind == "nl":
            self.ts.next()

    def program(self) -> list[tuple[App, Term, object]]:
        rules = []
        self.skip_newlines()
        while self.ts.peek.kind != "eof":
            start = self.ts.peek
            lhs = self.term()
            self.ts.expect("=")
            rhs = self.term()
            rules.append((lhs, rhs, start))
            # rules are separated by newlines; a rule may also follow directly
            self.skip_newlines()
        return rules

    def term(self) -> Term:
        ts = self.ts
        tok = ts.peek
        if tok.kind == "int":
            ts.next()
            return Int(int(tok.text))
        if ts.accept("true"):
            return Bool(True)
        if ts.accept("false"):
            return Bool(False)
        if tok.kind == "ident" or (tok.kind == "op" and tok.text in _OPERATOR_NAMES):
            ts.next()
            if ts.accept("("):
                args = [self.term()]
                while ts.accept(","):
                    args.append(self.term())
                ts.expect(")")
                return App(tok.text, tuple(args))
            if tok.kind == "op":
                ts.error(f"operator {tok.text!r} must be applied", tok)
            return Var(tok.text)
        ts.error(f"expected a term, found {describe(tok)}")


def _check_term(t: Term, arities: dict[str, int], where) -> None:
    if isinstance(t, App):
        expected = PRIMITIVES.get(t.name, arities.get(t.name))
        if expected is None:
            raise kernel.ParseError(f"unknown function {t.name!r}", where.line, where.col)
        if expected != len(t.args):
            raise kernel.ParseError(
                f"{t.name} takes {expected} argument(s), given {len(t.args)}",
                where.line, where.col)
        for a in t.args:
            _check_term(a, arities, where)


def parse_eqn(source: str) -> EqnProgram:
    """Parse rules, one ``lhs = rhs`` per line, ``#`` comments allowed."""
    raw = _Parser(source).program()
    arities: dict[str, int] = {}
    for lhs, _, tok in raw:
        if not isinstance(lhs, App) or lhs.name in PRIMITIVES:
            raise kernel.ParseError("left-hand side must apply a defined function",
                                    tok.line, tok.col)
        if arities.setdefault(lhs.name, len(lhs.args)) != len(lhs.args):
            raise kernel.ParseError(f"{lhs.name} defined with inconsistent arity",
                                    tok.line, tok.col)
    rules = []
    for lhs, rhs, tok in raw:
        names = []
        for p in lhs.args:
            if isinstance(p, App):
                raise kernel.ParseError("patterns are variables or literals", tok.line, tok.col)
            if isinstance(p, Var):
                names.append(p.name)
        if len(set(names)) != len(names):
            raise kernel.ParseError("pattern variables must be distinct", tok.line, tok.col)
        unbound = free_vars(rhs) - set(names)
        if unbound:
            raise kernel.ParseError(f"unbound variable(s) {sorted(unbound)} in right-hand side",
                                    tok.line, tok.col)
        _check_term(rhs, arities, tok)
        rules.append(Rule(lhs, rhs))
    return EqnProgram(tuple(rules))


def parse_term(source: str, program: EqnProgram | None = None) -> Term:
    """Parse a closed term such as ``f(12)``."""
    p = _Parser(source)
    p.skip_newlines()
    t = p.term()
    p.skip_newlines()
    if p.ts.peek.kind != "eof":
        p.ts.error(f"unexpected {describe(p.ts.peek)}")
    if free_vars(t):
        raise kernel.ParseError(f"term has free variable(s) {sorted(free_vars(t))}")
    if program is not None:
        _check_term(t, program.arities, p.ts.tokens[0])
    return t


def config(program: EqnProgram | str, term: Term | str) -> Config:
    if isinstance(program, str):
        program = parse_eqn(program)
    if isinstance(term, str):
        term = parse_term(term, program)
    return Config(Language.EQN, EqnConfig(program, term))


def call(entry: str, *values: int | bool) -> Term:
    """``entry(v1,...,vn)`` with literal arguments."""
    return App(entry, tuple(Bool(v) if type(v) is bool else Int(v) for v in values))
