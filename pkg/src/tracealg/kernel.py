"""Generic reduction engine.

A language supplies a step function mapping a configuration to the ordered
tuple of its successors.  The empty tuple marks a terminal configuration.
This module enumerates every maximal reduction sequence reachable from a
finite set of initial configurations, and defines the erased-term trees that
functional languages project onto.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Sequence

DEFAULT_MAX_STEPS = 10_000
DEFAULT_MAX_SEQUENCES = 100_000


class TraceAlgError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TraceAlgError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class StuckError(TraceAlgError):
    """A non-terminal configuration to which no rule applies."""


class EmptyChoiceError(StuckError):
    pass


class UnboundVariable(StuckError):
    pass


class TypeMismatch(StuckError):
    pass


class DivisionByZero(StuckError):
    pass


class LimitExceeded(TraceAlgError):
    """More distinct maximal sequences than the task allows."""


class NondeterminismError(TraceAlgError):
    pass


class TruncatedSequenceError(TraceAlgError):
    pass


class Language(str, enum.Enum):
    IMP = "imp"
    EQN = "eqn"
    LAM = "lam"


_PAYLOAD_TYPES: dict[Language, tuple[type, ...]] = {}


def register_payload(language: Language, *types: type) -> None:
    _PAYLOAD_TYPES[Language(language)] = types


@dataclass(frozen=True)
class Config:
    language: Language
    payload: Any

    def __post_init__(self):
        object.__setattr__(self, "language", Language(self.language))
        expected = _PAYLOAD_TYPES.get(self.language)
        if expected is not None and not isinstance(self.payload, expected):
            raise TypeError(
                f"{self.language.value} config cannot hold {type(self.payload).__name__}"
            )


StepFunction = Callable[[Config], Sequence[Config]]


class Status(str, enum.Enum):
    TERMINAL = "terminal"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class ReductionSequence:
    configs: tuple[Config, ...]
    status: Status

    def __post_init__(self):
        if not self.configs:
            raise ValueError("a reduction sequence has at least one configuration")

    def __len__(self) -> int:
        return len(self.configs)

    @property
    def first(self) -> Config:
        return self.configs[0]

    @property
    def last(self) -> Config:
        return self.configs[-1]

    @property
    def terminal(self) -> bool:
        return self.status is Status.TERMINAL


@dataclass(frozen=True)
class EnumerationTask:
    initials: tuple[Config, ...]
    step: StepFunction
    max_steps: int = DEFAULT_MAX_STEPS
    max_sequences: int = DEFAULT_MAX_SEQUENCES

    def __post_init__(self):
        object.__setattr__(self, "initials", tuple(dict.fromkeys(self.initials)))
        if self.max_steps <= 0 or self.max_sequences <= 0:
            raise ValueError("enumeration limits must be positive")


def _successors(step: StepFunction, config: Config) -> tuple[Config, ...]:
    return tuple(step(config))


def _expand(initial: Config, step: StepFunction, max_steps: int, budget: int,
            deterministic: bool = False) -> list[ReductionSequence]:
    # Depth-first over an explicit stack; the head of a path is extended in
    # place while the branch stays linear.
    found: list[ReductionSequence] = []
    stack: list[list[Config]] = [[initial]]
    while stack:
        path = stack.pop()
        while True:
            succ = _successors(step, path[-1])
            if not succ:
                status = Status.TERMINAL
                break
            if deterministic and len(succ) > 1:
                raise NondeterminismError(
                    f"configuration after {len(path) - 1} steps has {len(succ)} successors"
                )
            if len(path) - 1 >= max_steps:
                status = Status.TRUNCATED
                break
            # push alternatives in reverse so the first successor is explored first
            for alt in reversed(succ[1:]):
                stack.append(path + [alt])
            path.append(succ[0])
        found.append(ReductionSequence(tuple(path), status))
        if len(found) > budget:
            raise LimitExceeded(f"more than {budget} maximal reduction sequences")
    return found


def enumerate_sequences(task: EnumerationTask) -> list[ReductionSequence]:
    """All maximal reduction sequences of ``task``, in depth-first order.

    A sequence that is still reducible after ``task.max_steps`` steps is
    returned with status ``TRUNCATED``.  Producing more than
    ``task.max_sequences`` sequences raises :class:`LimitExceeded`.
    """
    out: list[ReductionSequence] = []
    for initial in task.initials:
        out.extend(_expand(initial, task.step, task.max_steps,
                           task.max_sequences - len(out)))
    return out


def run_deterministic(initial: Config, step: StepFunction,
                      max_steps: int = DEFAULT_MAX_STEPS) -> ReductionSequence:
    """The unique maximal sequence from ``initial``.

    Raises :class:`NondeterminismError` as soon as a configuration with two or
    more successors is reached.
    """
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    (seq,) = _expand(initial, step, max_steps, 1, deterministic=True)
    return seq


def check_sequence(seq: ReductionSequence, step: StepFunction) -> bool:
    """Re-apply ``step`` to confirm every link and the terminal status."""
    for here, there in zip(seq.configs, seq.configs[1:]):
        if there not in _successors(step, here):
            return False
    return (not _successors(step, seq.last)) == seq.terminal


# Erased terms: the image of a functional configuration once every function,
# primitive or abstraction has been replaced by the opaque head ``<fun>``.

@dataclass(frozen=True)
class IntLit:
    value: int

    def __post_init__(self):
        if type(self.value) is not int:
            raise TypeError("IntLit holds an int")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class BoolLit:
    value: bool

    def __post_init__(self):
        if type(self.value) is not bool:
            raise TypeError("BoolLit holds a bool")

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class FunApp:
    """``<fun>(a1,...,an)``.  With no arguments it stands for a bare function value."""

    args: tuple[ErasedTerm, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return "<fun>"
        return "<fun>(" + ",".join(str(a) for a in self.args) + ")"


ErasedTerm = IntLit | BoolLit | FunApp


def literal(value: int | bool) -> IntLit | BoolLit:
    """Wrap a Python value, keeping ``True`` and ``1`` apart."""
    if type(value) is bool:
        return BoolLit(value)
    if type(value) is int:
        return IntLit(value)
    raise TypeError(f"not a literal value: {value!r}")


def fun(*args: ErasedTerm | int | bool) -> FunApp:
    return FunApp(tuple(a if isinstance(a, (IntLit, BoolLit, FunApp)) else literal(a)
                        for a in args))


def parse_erased_term(text: str) -> ErasedTerm:
    """Inverse of ``str`` on erased terms (no whitespace allowed)."""
    pos = 0

    def term() -> ErasedTerm:
        nonlocal pos
        if text.startswith("<fun>", pos):
            pos += 5
            if pos < len(text) and text[pos] == "(":
                pos += 1
                args = [term()]
                while pos < len(text) and text[pos] == ",":
                    pos += 1
                    args.append(term())
                if pos >= len(text) or text[pos] != ")":
                    raise ParseError(f"expected ')' at offset {pos} in {text!r}")
                pos += 1
                return FunApp(tuple(args))
            return FunApp()
        for word, value in (("true", True), ("false", False)):
            if text.startswith(word, pos):
                pos += len(word)
                return BoolLit(value)
        start = pos
        if pos < len(text) and text[pos] == "-":
            pos += 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start or text[start:pos] == "-":
            raise ParseError(f"unexpected input at offset {start} in {text!r}")
        return IntLit(int(text[start:pos]))

    result = term()
    if pos != len(text):
        raise ParseError(f"trailing input at offset {pos} in {text!r}")
    return result



def trunc_div(a: int, b: int) -> int:
    """Integer division rounding toward zero."""
    if b == 0:
        raise DivisionByZero(f"division of {a} by zero")
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q
