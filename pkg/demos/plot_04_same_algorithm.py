"""
When do two programs express the same algorithm?
================================================

Two syntactically different definitions of the identity on booleans have
the same trace set.  The deterministic and nondeterministic halving
programs, and a hand-written set with a second register, do not.
"""

from pathlib import Path

from tracealg import eqn, imp, traces
from tracealg.kernel import EnumerationTask, enumerate_sequences


def boolean_set(source):
    program = eqn.parse_eqn(source)
    initials = tuple(eqn.config(program, eqn.call("f", b)) for b in (True, False))
    return traces.trace_set(enumerate_sequences(EnumerationTask(initials, eqn.step)))


by_cases = boolean_set("f(false) = false\nf(true) = true")
by_variable = boolean_set("f(x) = x")
print(traces.serialize_trace_set(by_cases))
print("same algorithm:", traces.algorithm_equal(by_cases, by_variable))


def halving_set(source):
    initials = tuple(imp.config(source, {"x": x}) for x in (7, 8, 12))
    seqs = enumerate_sequences(EnumerationTask(initials, imp.step))
    return traces.trace_set(seqs, traces.ProjectionSpec(("x",)), dedup_runs=True)


det = halving_set("while even(x) do x := x / 2")
nondet = halving_set("while even(x) do {d :∈ pow2div(x); x := x / d}")
pairs = traces.load_trace_set(
    Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "odd_factor_pairs.traces")

for name, a, b in [("det/nondet", det, nondet), ("det/pairs", det, pairs),
                   ("nondet/pairs", nondet, pairs)]:
    print(name, traces.algorithm_equal(a, b))
