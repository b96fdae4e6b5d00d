"""
Execution traces of functional programs
=======================================

A recursive equation and a recursive lambda term compute the largest odd
divisor.  Once function names and abstractions are replaced by ``<fun>``,
their traces are identical.
"""

from tracealg import eqn, lam, traces
from tracealg.kernel import run_deterministic

program = eqn.parse_eqn("f(x) = if(even(x), f(/(x,2)), x)")
eqn_seq = run_deterministic(eqn.config(program, "f(12)"), eqn.step)

term = lam.parse_lam("fun f x -> (if (even x) (f (/ x 2)) x)")
lam_seq = run_deterministic(lam.config(term, 12), lam.step)

for e, l in zip(eqn_seq.configs, lam_seq.configs):
    print(f"{str(e.payload):32} {lam.render(l.payload)}")

eqn_trace = traces.project(eqn_seq)
lam_trace = traces.project(lam_seq)
print(eqn_trace == lam_trace)
for s in eqn_trace.states:
    print(s)

# an ordinary abstraction takes one beta step, then two arithmetic steps
seq = run_deterministic(lam.config("(fun x -> x * x + 1) 7"), lam.step)
print(" -> ".join(lam.render(c.payload) for c in seq.configs))
