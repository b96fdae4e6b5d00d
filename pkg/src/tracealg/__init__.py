"""Small-step interpreters, execution traces and algorithm identity."""

from .kernel import (BoolLit, Config, EnumerationTask, FunApp, IntLit,
                     Language, ReductionSequence, Status, TraceAlgError,
                     enumerate_sequences, run_deterministic)
from .traces import (ProjectionSpec, Trace, TraceSet, TupleState,
                     algorithm_equal, dedup, minimal_gap_bound, project,
                     serialize_trace_set, parse_trace_set, speedup_check,
                     trace_set)

__version__ = "0.1.0"
