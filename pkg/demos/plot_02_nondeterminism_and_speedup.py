"""
Nondeterministic halving and the speed-up relation
==================================================

Dividing by any power of two that divides x gives a nondeterministic
program.  All of its maximal reduction sequences are enumerated, and the
short traces of the deterministic loop are checked to be a bounded speed-up
of its long traces.
"""

from tracealg import imp, traces
from tracealg.kernel import EnumerationTask, enumerate_sequences

keep_x = traces.ProjectionSpec(("x",))


def trace_set(source, xs, dedup_runs):
    initials = tuple(imp.config(source, {"x": x}) for x in xs)
    seqs = enumerate_sequences(EnumerationTask(initials, imp.step))
    return traces.trace_set(seqs, keep_x, dedup_runs)


nondet = trace_set("while even(x) do {d :∈ pow2div(x); x := x / d}", [8], True)
print(traces.serialize_trace_set(nondet))

loop = "while even(x) do x := x / 2"
long_traces = trace_set(loop, [7, 8, 12], False)
short_traces = trace_set(loop, [7, 8, 12], True)
print(traces.serialize_trace_set(long_traces))

# at most 3 consecutive states of a long trace are skipped
print("k =", traces.speedup_check(short_traces, long_traces))

# the long traces are not a speed-up of the short ones
print(traces.speedup_check(long_traces, short_traces))
