"""
Reduction sequences of an imperative program
============================================

Run the halving loop from x = 12 one small step at a time, then erase the
program and the variable names to get its execution trace.
"""

from tracealg import imp, traces
from tracealg.kernel import run_deterministic

config = imp.config("while even(x) do x := x / 2", "x=12")
seq = run_deterministic(config, imp.step)

# every configuration pairs the remaining program with the store
for c in seq.configs:
    print(c.payload)

# keep only the value of x
trace = traces.project(seq, traces.ProjectionSpec(("x",)))
print(trace)

# collapsing repeated states leaves the three values the loop visits
print(traces.dedup(trace))
