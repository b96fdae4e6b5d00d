"""Execution traces, the speed-up relation and algorithm identity.

A trace is the pointwise image of a terminal reduction sequence under an
erasure: the store values of an imperative configuration, or the
``<fun>``-erased term of a functional one.  A set of traces stands for an
algorithm.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import eqn, imp, lam
from .kernel import (BoolLit, FunApp, IntLit, Language, ParseError,
                     ReductionSequence, TruncatedSequenceError,
                     parse_erased_term)


@dataclass(frozen=True)
class TupleState:
    """Values of the kept variables, names erased."""

    values: tuple[IntLit | BoolLit, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def state(*values: int | bool) -> TupleState:
    return TupleState(tuple(BoolLit(v) if type(v) is bool else IntLit(v) for v in values))


ErasedState = TupleState | IntLit | BoolLit | FunApp


@dataclass(frozen=True)
class ProjectionSpec:
    """Which erasure to apply.  ``keep`` lists imperative variables; None keeps all."""

    keep: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.keep is not None:
            object.__setattr__(self, "keep", tuple(self.keep))
            if len(set(self.keep)) != len(self.keep):
                raise ValueError(f"duplicate kept variable in {self.keep}")


@dataclass(frozen=True)
class Trace:
    states: tuple[ErasedState, ...]
    origin: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.states:
            raise ValueError("a trace has at least one state")
        tuple_kind = {isinstance(s, TupleState) for s in self.states}
        if len(tuple_kind) > 1:
            raise ValueError("trace mixes tuple states and term states")

    def __len__(self) -> int:
        return len(self.states)

    def __str__(self) -> str:
        return "|".join(str(s) for s in self.states)


def trace(*states: ErasedState) -> Trace:
    return Trace(tuple(states))


@dataclass(frozen=True)
class TraceSet:
    traces: frozenset[Trace]
    metadata: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __init__(self, traces: Iterable[Trace] = (), metadata: Mapping[str, str] | None = None):
        object.__setattr__(self, "traces", frozenset(traces))
        object.__setattr__(self, "metadata", dict(metadata or {}))

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self):
        return iter(sorted(self.traces, key=str))

    def __contains__(self, t: Trace) -> bool:
        return t in self.traces


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def erase(config, spec: ProjectionSpec = ProjectionSpec()) -> ErasedState:
    """Apply the language's erasure to one configuration."""
    payload = config.payload
    if config.language is Language.IMP:
        return TupleState(imp.erase_imp(payload, spec.keep))
    if config.language is Language.EQN:
        return eqn.erase_eqn(payload)
    return lam.erase_lam_term(payload)


def project(seq: ReductionSequence, spec: ProjectionSpec = ProjectionSpec(),
            origin: Mapping[str, str] | None = None) -> Trace:
    if not seq.terminal:
        raise TruncatedSequenceError(
            f"sequence truncated after {len(seq) - 1} steps cannot become a trace")
    return Trace(tuple(erase(c, spec) for c in seq.configs),
                 dict(origin or {"language": seq.first.language.value}))


def dedup(t: Trace) -> Trace:
    """Keep the first state of each run of consecutive equal states."""
    out = [t.states[0]]
    for s in t.states[1:]:
        if s != out[-1]:
            out.append(s)
    return Trace(tuple(out), t.origin)


def trace_set(sequences: Iterable[ReductionSequence],
              spec: ProjectionSpec = ProjectionSpec(),
              dedup_runs: bool = False,
              metadata: Mapping[str, str] | None = None) -> TraceSet:
    traces = (project(s, spec) for s in sequences)
    if dedup_runs:
        traces = (dedup(t) for t in traces)
    return TraceSet(traces, metadata)


def minimal_gap_bound(b: Trace, a: Trace) -> int | None:
    """Smallest k for which ``b`` is a k-bounded speed-up of ``a``, or None.

    ``b`` must embed into ``a`` index-monotonically with ``b[0]`` at ``a[0]``
    and with equal last states.  The cost of an embedding is its longest run
    of skipped states of ``a``, the run after the last matched index
    included.
    """
    bs, as_ = b.states, a.states
    m, n = len(bs), len(as_)
    if m > n or bs[0] != as_[0] or bs[-1] != as_[-1]:
        return None
    # best[j]: least max-gap so far with the current element of b matched at a[j]
    best: list[int | None] = [None] * n
    best[0] = 0
    for i in range(1, m):
        nxt: list[int | None] = [None] * n
        for j in range(i, n):
            if as_[j] != bs[i]:
                continue
            cand = None
            for jp in range(i - 1, j):
                if best[jp] is None:
                    continue
                cost = max(best[jp], j - jp - 1)
                if cand is None or cost < cand:
                    cand = cost
            nxt[j] = cand
        best = nxt
    finals = [max(c, n - 1 - j) for j, c in enumerate(best) if c is not None]
    return min(finals) if finals else None


def speedup_check(B: TraceSet, A: TraceSet) -> int | None:
    """The bound k making ``B`` a speed-up of ``A``, or None if none exists."""
    k = 0
    for b in B.traces:
        bounds = [g for a in A.traces if (g := minimal_gap_bound(b, a)) is not None]
        if not bounds:
            return None
        k = max(k, min(bounds))
    return k


def algorithm_equal(A: TraceSet, B: TraceSet) -> bool:
    """Same traces, state for state; metadata is ignored."""
    return A.traces == B.traces


# -- text format --------------------------------------------------------------
#
# One trace per line, states separated by ``|``; lines sorted.  Metadata is
# carried on ``# @key: value`` header lines; other ``#`` lines are comments.

def serialize_trace_set(A: TraceSet) -> str:
    lines = [f"# @{k}: {v}" for k, v in sorted(A.metadata.items())]
    lines += sorted(str(t) for t in A.traces)
    return "".join(line + "\n" for line in lines)


def parse_state(text: str) -> ErasedState:
    if text.startswith("("):
        if not text.endswith(")"):
            raise ParseError(f"unterminated tuple state {text!r}")
        inner = text[1:-1]
        values = []
        for part in inner.split(",") if inner else []:
            v = parse_erased_term(part)
            if isinstance(v, FunApp):
                raise ParseError(f"tuple state holds values only: {text!r}")
            values.append(v)
        return TupleState(tuple(values))
    return parse_erased_term(text)


def parse_trace(line: str) -> Trace:
    return Trace(tuple(parse_state(s) for s in line.split("|")))


def parse_trace_set(text: str) -> TraceSet:
    metadata: dict[str, str] = {}
    traces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# @") and ": " in line:
                key, _, value = line[3:].partition(": ")
                metadata[key] = value
            continue
        try:
            traces.append(parse_trace(line))
        except (ParseError, ValueError) as exc:
            raise ParseError(str(exc), lineno) from None
    return TraceSet(traces, metadata)


def load_trace_set(path) -> TraceSet:
    with open(path, encoding="utf-8") as fh:
        return parse_trace_set(fh.read())
