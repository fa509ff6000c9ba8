import bisect

import pytest
from hypothesis import given, strategies as st

from collapse_goodstein import (BIG_OMEGA, OMEGA, ZERO, Budget, BudgetExceeded, Cofinality,
                                DomainError, check_bachmann, fgh_eval, fs_step, is_ot0,
                                iter_descent, nat, norm, parse, single_step_lt_n, step_le, tp,
                                verify_majorize)

P = parse


@pytest.mark.parametrize("text, expected", [
    ("0", Cofinality.ZERO), ("3", Cofinality.ONE), ("w+1", Cofinality.ONE),
    ("w", Cofinality.OMEGA), ("Om", Cofinality.BIG_OMEGA), ("Om2", Cofinality.BIG_OMEGA2),
    ("p0(Om)", Cofinality.OMEGA), ("p1(Om2)", Cofinality.OMEGA), ("p1(w)", Cofinality.OMEGA),
    ("p0(p0(Om))", Cofinality.OMEGA), ("p1(Om+Om)", Cofinality.BIG_OMEGA),
    ("p2(Om2)", Cofinality.BIG_OMEGA2), ("p0(1)", Cofinality.OMEGA),
])
def test_tp(text, expected):
    assert tp(P(text)) is expected


def test_cofinality_helpers():
    assert Cofinality.BIG_OMEGA.level == 1 and Cofinality.OMEGA.level is None
    assert Cofinality.BIG_OMEGA2.as_term() == P("Om2")


@pytest.mark.parametrize("text, x, expected", [
    ("p0(1)", 3, "w*3"),
    ("Om", 5, "5"),
    ("p0(Om)", 1, "p0(w)"),
    ("p0(Om)", 0, "w"),
    ("p0(Om)", 2, "p0(p0(w))"),
    ("w+1", 7, "w"),
    ("0", 3, "0"),
    ("p1(Om2)", 2, "p1(p1(Om))"),
    ("p0(p1(Om2))", 1, "p0(p1(Om))"),
    ("Om+w*2", 4, "Om+w+4"),
])
def test_fs_step_examples(text, x, expected):
    assert fs_step(P(text), x) == P(expected)


def test_fs_step_uncountable_index():
    assert fs_step(P("Om"), P("w+1")) == P("w+1")
    assert fs_step(P("p1(Om*2)"), P("w")) == P("p1(Om+w)")
    assert fs_step(P("Om2"), P("p1(Om)")) == P("p1(Om)")


def test_fs_step_index_errors():
    with pytest.raises(DomainError):
        fs_step(OMEGA, BIG_OMEGA)
    with pytest.raises(DomainError):
        fs_step(BIG_OMEGA, BIG_OMEGA)
    with pytest.raises(DomainError):
        fs_step(OMEGA, -1)


def test_z_iteration_unfolds():
    # z_0 = 0 and z_{n+1} = p0(Om[z_n]) = p0(z_n); then p0(Om)[n] = p0(z_n).
    z = ZERO
    for n in range(6):
        assert fs_step(P("p0(Om)"), n) == P(f"p0({z})")
        z = P(f"p0({z})")


def test_iter_descent_examples():
    assert iter_descent(OMEGA, 0, 1).value == ZERO
    assert iter_descent(nat(2), 0, 2).value == ZERO
    d = iter_descent(P("w+1"), 0, 4)
    assert d.value == ZERO and d.reached_zero and d.next_index == 3


def test_iter_descent_budget():
    with pytest.raises(BudgetExceeded):
        iter_descent(OMEGA, 0, 50, Budget(max_steps=10))


def test_step_le():
    a = P("p0(Om)")
    assert step_le(a, a, 3)
    assert step_le(P("w*2"), P("p0(1)"), 2)
    # w[2] = 2 and 2[2] = 1: the fixed-index chain reaches 1.
    assert step_le(nat(1), OMEGA, 2)
    assert not step_le(P("w+3"), P("w*2"), 2)
    with pytest.raises(DomainError):
        step_le(a, a, 0)


def test_single_step_lt_n():
    assert single_step_lt_n(P("w*2"), P("p0(1)"), 3)
    assert not single_step_lt_n(P("w*2"), P("p0(1)"), 2)


def test_bachmann_examples():
    assert check_bachmann(P("p0(1)"), P("w*2+1"), 2)
    assert check_bachmann(P("w"), P("p0(1)"), 3)
    assert check_bachmann(P("p0(Om)"), P("p0(w)+1"), 1)


def test_bachmann_fails_for_uncountable_cofinality():
    # Om[2] = 2 < w < Om but w[1] = 1 < 2: the property is about countable cofinality.
    assert not check_bachmann(BIG_OMEGA, OMEGA, 2)


def test_majorize():
    assert verify_majorize([OMEGA, OMEGA, OMEGA])
    assert verify_majorize([P("p0(1)"), P("w*2"), P("w*2")])
    with pytest.raises(DomainError, match="index 0"):
        verify_majorize([OMEGA, P("w+1")])


def test_fgh():
    assert fgh_eval(ZERO, 5) == 6
    assert fgh_eval(nat(1), 2) == 4
    assert fgh_eval(nat(2), 2) == 8
    assert fgh_eval(nat(2), 3) == 24
    assert fgh_eval(OMEGA, 2) == 8
    with pytest.raises(DomainError):
        fgh_eval(BIG_OMEGA, 2)
    with pytest.raises(BudgetExceeded):
        fgh_eval(P("p0(1)"), 5, Budget(max_steps=1000))


def _valid_indices(a):
    return range(5)


def test_strict_descent_monotone_closed(ot0_5):
    for a in ot0_5:
        if not a:
            continue
        prev = None
        for x in _valid_indices(a):
            ax = fs_step(a, x)
            assert ax < a and is_ot0(ax), (a, x)
            if prev is not None:
                assert prev <= ax
                if tp(a) > Cofinality.ONE:
                    assert prev < ax
            prev = ax
        assert norm(a) <= norm(fs_step(a, 1)) + 1


def test_sandwich_interpolation(ot0_5):
    keys = [t.key for t in ot0_5]
    for a in ot0_5:
        if tp(a) != Cofinality.OMEGA:
            continue
        lo = bisect.bisect_right(keys, fs_step(a, 0).key)
        hi = bisect.bisect_left(keys, a.key)
        for b in ot0_5[lo:hi]:
            x = 0
            while not b < fs_step(a, x + 1):
                x += 1
            assert fs_step(a, x) <= b


@given(st.sampled_from([P(t) for t in ("w", "p0(1)", "p0(w)", "p0(Om)", "p0(p1(Om2))",
                                          "p0(Om)*2+w", "p0(p1(w))")]),
       st.integers(0, 30))
def test_fs_monotone_in_index(a, x):
    assert fs_step(a, x) < fs_step(a, x + 1) < a
