"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 stuck configuration,
3 step or sequence limit exceeded, 4 not a speed-up, 5 different algorithms.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
import tempfile
from dataclasses import dataclass

from . import eqn, imp, lam, traces
from .kernel import (DEFAULT_MAX_SEQUENCES, DEFAULT_MAX_STEPS, Config,
                     EnumerationTask, Language, LimitExceeded, ParseError,
                     Status, StuckError, TraceAlgError, TruncatedSequenceError,
                     enumerate_sequences)

EXIT_OK, EXIT_PARSE, EXIT_STUCK, EXIT_LIMIT, EXIT_NOT_SPEEDUP, EXIT_DIFFERENT = range(6)

STEPS = {Language.IMP: imp.step, Language.EQN: eqn.step, Language.LAM: lam.step}


class UsageError(TraceAlgError):
    pass


@dataclass
class RunSpec:
    language: Language
    program_path: str
    inputs: list
    keep: tuple[str, ...] | None = None
    dedup: bool = False
    entry: str | None = None
    max_steps: int = DEFAULT_MAX_STEPS
    max_sequences: int = DEFAULT_MAX_SEQUENCES

    def read_program(self) -> str:
        try:
            with open(self.program_path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {self.program_path}: {exc.strerror}") from None


# -- input descriptions -------------------------------------------------------

def _expand_value(item: str) -> list:
    lo, sep, hi = item.partition("..")
    if sep:
        a, b = imp.parse_value(lo), imp.parse_value(hi)
        if type(a) is not int or type(b) is not int:
            raise ParseError(f"range bounds must be integers: {item!r}")
        return list(range(a, b + 1))
    return [imp.parse_value(item)]


def parse_values(text: str) -> list:
    """``"7,8,12"``, ``"1..20"`` or ``"true,false"`` -> literal values."""
    out = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        out.extend(_expand_value(item))
    if not out:
        raise ParseError(f"no input values in {text!r}")
    return out


def parse_store_inputs(text: str, default_var: str = "x") -> list[imp.Store]:
    """``"x=1..3,y=0"`` -> one store per combination, in listing order.

    Items without ``=`` extend the values of the preceding variable; leading
    bare values bind ``default_var``.
    """
    groups: list[tuple[str, list]] = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, eq, value = item.partition("=")
        if eq:
            name = name.strip()
            if not name.isidentifier():
                raise ParseError(f"malformed binding {item!r}")
            if any(name == g for g, _ in groups):
                raise ParseError(f"variable {name!r} bound twice")
            groups.append((name, _expand_value(value.strip())))
        elif groups:
            groups[-1][1].extend(_expand_value(item))
        else:
            groups.append((default_var, _expand_value(item)))
    if not groups:
        raise ParseError(f"no input values in {text!r}")
    names = [g for g, _ in groups]
    return [imp.Store(tuple(zip(names, combo)))
            for combo in itertools.product(*(vals for _, vals in groups))]


# -- building configurations ---------------------------------------------------

def initial_configs(spec: RunSpec, single: bool = False) -> list[Config]:
    source = spec.read_program()
    lang = spec.language
    if lang is Language.IMP:
        program = imp.parse_imp(source)
        if single:
            stores = [imp.parse_store(spec.inputs[0])]
        else:
            stores = [s for text in spec.inputs for s in parse_store_inputs(text, spec.entry or "x")]
        return [imp.config(program, s) for s in stores]
    if single:
        arg_lists = [parse_values(spec.inputs[0])]
    else:
        arg_lists = [[v] for text in spec.inputs for v in parse_values(text)]
    if lang is Language.EQN:
        program = eqn.parse_eqn(source)
        entry = spec.entry or "f"
        arity = program.arities.get(entry)
        if arity is None:
            raise ParseError(f"program defines no function {entry!r}")
        for args in arg_lists:
            if len(args) != arity:
                raise UsageError(f"{entry} takes {arity} argument(s), given {len(args)}")
        return [eqn.config(program, eqn.call(entry, *args)) for args in arg_lists]
    term = lam.parse_lam(source)
    return [lam.config(term, *args) for args in arg_lists]


def render_config(c: Config) -> str:
    if c.language is Language.LAM:
        return lam.render(c.payload)
    return str(c.payload)


def _sequences(spec: RunSpec, configs: list[Config]):
    task = EnumerationTask(tuple(configs), STEPS[spec.language],
                           spec.max_steps, spec.max_sequences)
    return enumerate_sequences(task)


def build_trace_set(spec: RunSpec) -> traces.TraceSet:
    configs = initial_configs(spec)
    seqs = _sequences(spec, configs)
    metadata = {
        "language": spec.language.value,
        "program": traces.digest(spec.read_program()),
        "inputs": ";".join(spec.inputs),
        "dedup": "yes" if spec.dedup else "no",
    }
    if spec.keep is not None:
        metadata["keep"] = ",".join(spec.keep)
    return traces.trace_set(seqs, traces.ProjectionSpec(spec.keep), spec.dedup, metadata)


def write_atomically(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".traces")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# -- commands -----------------------------------------------------------------

def cmd_run(spec: RunSpec, out=None) -> int:
    out = out or sys.stdout
    configs = initial_configs(spec, single=True)
    seqs = _sequences(spec, configs)
    code = EXIT_OK
    for i, seq in enumerate(seqs):
        if i:
            out.write("\n")
        for c in seq.configs:
            out.write(render_config(c) + "\n")
        if seq.status is Status.TRUNCATED:
            out.write(f"... truncated after {len(seq) - 1} steps\n")
            code = EXIT_LIMIT
    return code


def cmd_enumerate(spec: RunSpec, out_path: str | None, out=None) -> int:
    out = out or sys.stdout
    text = traces.serialize_trace_set(build_trace_set(spec))
    if out_path:
        write_atomically(out_path, text)
    else:
        out.write(text)
    return EXIT_OK


def _load(path: str) -> traces.TraceSet:
    try:
        return traces.load_trace_set(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_speedup(path_b: str, path_a: str, out=None) -> int:
    out = out or sys.stdout
    k = traces.speedup_check(_load(path_b), _load(path_a))
    if k is None:
        out.write("not-a-speedup\n")
        return EXIT_NOT_SPEEDUP
    out.write(f"k={k}\n")
    return EXIT_OK


def _verdict(same: bool, out) -> int:
    out = out or sys.stdout
    out.write("equal\n" if same else "different\n")
    return EXIT_OK if same else EXIT_DIFFERENT


def cmd_equal(path_a: str, path_b: str, out=None) -> int:
    return _verdict(traces.algorithm_equal(_load(path_a), _load(path_b)), out)


def cmd_compare(spec_a: RunSpec, spec_b: RunSpec, out=None) -> int:
    return _verdict(traces.algorithm_equal(build_trace_set(spec_a), build_trace_set(spec_b)), out)


# -- argument parsing -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _keep(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    return tuple(n.strip() for n in text.split(",") if n.strip())


def _add_program_args(p: argparse.ArgumentParser, prefix: str = "", required: bool = True):
    dest = prefix.replace("-", "_")
    p.add_argument(f"--{prefix}lang", dest=f"{dest}lang", required=required,
                   choices=[lang.value for lang in Language])
    p.add_argument(f"--{prefix}program", dest=f"{dest}program", required=required,
                   metavar="PATH")
    p.add_argument(f"--{prefix}keep", dest=f"{dest}keep", metavar="X,Y",
                   help="imperative variables kept by the projection (default: all)")
    p.add_argument(f"--{prefix}entry", dest=f"{dest}entry", metavar="NAME",
                   help="eqn entry function (default f); imp variable for bare inputs (default x)")


def _add_limits(p: argparse.ArgumentParser):
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--max-seqs", type=int, default=DEFAULT_MAX_SEQUENCES)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tracealg", description="Reduction sequences, traces and algorithm identity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="print the reduction sequence of one input")
    _add_program_args(p)
    p.add_argument("--input", required=True)
    _add_limits(p)

    p = sub.add_parser("enumerate", help="write the trace set over a range of inputs")
    _add_program_args(p)
    p.add_argument("--inputs", "--input", dest="inputs", action="append", required=True)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--out", metavar="PATH")
    _add_limits(p)

    p = sub.add_parser("speedup", help="bound k making FILE_B a speed-up of FILE_A")
    p.add_argument("file_b")
    p.add_argument("file_a")

    p = sub.add_parser("equal", help="compare two trace-set files")
    p.add_argument("file_a")
    p.add_argument("file_b")

    p = sub.add_parser("compare", help="compare the algorithms of two programs")
    _add_program_args(p)
    _add_program_args(p, "vs-")
    p.add_argument("--inputs", "--input", dest="inputs", action="append", required=True)
    p.add_argument("--dedup", action="store_true")
    _add_limits(p)
    return parser


def _positive(parser, args):
    for name in ("max_steps", "max_seqs"):
        if getattr(args, name, 1) <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")


def _spec(args, prefix: str = "") -> RunSpec:
    inputs = args.inputs if hasattr(args, "inputs") else [args.input]
    return RunSpec(
        language=Language(getattr(args, prefix + "lang")),
        program_path=getattr(args, prefix + "program"),
        inputs=inputs,
        keep=_keep(getattr(args, prefix + "keep")),
        dedup=getattr(args, "dedup", False),
        entry=getattr(args, prefix + "entry"),
        max_steps=args.max_steps,
        max_sequences=args.max_seqs,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _positive(parser, args)
    try:
        if args.command == "run":
            return cmd_run(_spec(args))
        if args.command == "enumerate":
            return cmd_enumerate(_spec(args), args.out)
        if args.command == "speedup":
            return cmd_speedup(args.file_b, args.file_a)
        if args.command == "equal":
            return cmd_equal(args.file_a, args.file_b)
        return cmd_compare(_spec(args), _spec(args, "vs_"))
    except (ParseError, UsageError) as exc:
        print(f"tracealg: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StuckError as exc:
        print(f"tracealg: stuck: {exc}", file=sys.stderr)
        return EXIT_STUCK
    except (LimitExceeded, TruncatedSequenceError) as exc:
        print(f"tracealg: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
