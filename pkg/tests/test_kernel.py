import pytest
from hypothesis import given, settings, strategies as st

from tracealg import imp, kernel
from tracealg.kernel import (BoolLit, Config, EnumerationTask, FunApp, IntLit,
                             Language, LimitExceeded, NondeterminismError,
                             Status, enumerate_sequences, run_deterministic)

from oracles import bfs_sequences, pow2_halving_runs

HALVE = "while even(x) do x := x / 2"
HALVE_ND = "while even(x) do {d :∈ pow2div(x); x := x / d}"


def test_deterministic_imp_task_gives_one_terminal_sequence():
    task = EnumerationTask((imp.config(HALVE, "x=12"),), imp.step)
    (seq,) = enumerate_sequences(task)
    assert len(seq) == 10
    assert seq.status is Status.TERMINAL
    assert seq.last.payload == imp.ImpConfig((), imp.Store.of(x=3))


def test_terminal_initial_config():
    task = EnumerationTask((imp.config([], "x=1"),), imp.step)
    (seq,) = enumerate_sequences(task)
    assert len(seq) == 1 and seq.terminal


def test_nondeterministic_task_at_8_matches_choice_tree():
    task = EnumerationTask((imp.config(HALVE_ND, "x=8"),), imp.step)
    seqs = enumerate_sequences(task)
    assert len(seqs) == len(pow2_halving_runs(8)) == 4
    assert all(s.terminal for s in seqs)


def test_enumeration_order_is_depth_first_by_increasing_divisor():
    task = EnumerationTask((imp.config(HALVE_ND, "x=8"),), imp.step)
    finals = [s.last.payload.store["d"] for s in enumerate_sequences(task)]
    # d=2 then 2 then 2; d=2 then 4; d=4 then 2; d=8
    assert finals == [2, 4, 2, 8]


def test_truncation_is_flagged_per_sequence():
    loop = imp.config("while true do skip", "x=0")
    (seq,) = enumerate_sequences(EnumerationTask((loop,), imp.step, max_steps=25))
    assert seq.status is Status.TRUNCATED
    assert len(seq) == 26


def test_too_many_sequences_is_an_error():
    task = EnumerationTask((imp.config(HALVE_ND, "x=8"),), imp.step, max_sequences=3)
    with pytest.raises(LimitExceeded):
        enumerate_sequences(task)


def test_limits_must_be_positive():
    with pytest.raises(ValueError):
        EnumerationTask((), imp.step, max_steps=0)
    with pytest.raises(ValueError):
        EnumerationTask((), imp.step, max_sequences=0)


def test_run_deterministic_lam_example():
    from tracealg import lam
    seq = run_deterministic(lam.config("(fun x -> x * x + 1) 7"), lam.step)
    assert len(seq) == 4
    assert seq.last.payload == lam.Int(50)


def test_run_deterministic_empty_program():
    assert len(run_deterministic(imp.config([], "x=1"), imp.step)) == 1


def test_run_deterministic_rejects_branching():
    with pytest.raises(NondeterminismError):
        run_deterministic(imp.config(HALVE_ND, "x=12"), imp.step)


def test_config_payload_must_match_language():
    with pytest.raises(TypeError):
        Config(Language.IMP, "not a config")


def test_check_sequence_detects_a_forged_link():
    seq = run_deterministic(imp.config(HALVE, "x=12"), imp.step)
    assert kernel.check_sequence(seq, imp.step)
    forged = kernel.ReductionSequence(seq.configs[:3] + seq.configs[4:], seq.status)
    assert not kernel.check_sequence(forged, imp.step)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=3, unique=True))
def test_enumeration_equals_breadth_first_oracle(xs):
    initials = tuple(imp.config(HALVE_ND, {"x": x}) for x in xs)
    got = {s.configs for s in enumerate_sequences(EnumerationTask(initials, imp.step))}
    assert got == bfs_sequences(initials, imp.step)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 64), min_size=1, max_size=4, unique=True))
def test_every_link_is_a_step(xs):
    initials = tuple(imp.config(HALVE_ND, {"x": x}) for x in xs)
    for seq in enumerate_sequences(EnumerationTask(initials, imp.step)):
        assert kernel.check_sequence(seq, imp.step)


def test_erased_literals_keep_booleans_and_integers_apart():
    assert IntLit(1) != BoolLit(True)
    assert kernel.literal(True) == BoolLit(True)
    with pytest.raises(TypeError):
        IntLit(True)


@pytest.mark.parametrize("text", [
    "12", "-4", "true", "<fun>", "<fun>(12)", "<fun>(<fun>(12),<fun>(<fun>(12,2)),12)",
])
def test_erased_term_text_round_trip(text):
    assert str(kernel.parse_erased_term(text)) == text


def test_erased_term_rendering():
    t = kernel.fun(kernel.fun(12), kernel.fun(kernel.fun(12, 2)), 12)
    assert str(t) == "<fun>(<fun>(12),<fun>(<fun>(12,2)),12)"
    assert str(FunApp()) == "<fun>"


@pytest.mark.parametrize("bad", ["<fun>(", "<fun>(1,)", "12x", "", "-"])
def test_erased_term_parse_errors(bad):
    with pytest.raises(kernel.ParseError):
        kernel.parse_erased_term(bad)


@pytest.mark.parametrize("a,b,q", [(7, 2, 3), (-7, 2, -3), (7, -2, -3), (-7, -2, 3), (12, 4, 3)])
def test_trunc_div(a, b, q):
    assert kernel.trunc_div(a, b) == q


def test_trunc_div_by_zero():
    with pytest.raises(kernel.DivisionByZero):
        kernel.trunc_div(1, 0)
