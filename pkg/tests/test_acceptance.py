"""Acceptance criteria C1..C9.

Each criterion is split into parts; every part records PASS or FAIL and the
terminal summary prints one aggregated line per criterion. Parts that cannot
be computed at all (the numbers involved have more digits than there are
atoms in the universe) are strict xfails: they really run and really fail.

Run directly with ``python3 tests/test_acceptance.py``.
"""
import bisect
import hashlib
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from functools import cmp_to_key

import pytest

from collapse_goodstein import (OMEGA, ZERO, BudgetExceeded, Cofinality, Ordering,
                                assign_nat, bc_nat, bc_ord, classify_gap, compare, fs_step,
                                hardy, is_ot, is_ot0, knf_decompose, knf_oracle, nat, norm, run,
                                tp, verify_descent)
from collapse_goodstein.terms import cmp

from conftest import ACCEPTANCE
from oracles import goodstein_reference, hardy_direct, rule_cmp

TITLES = {
    1: "order suite on enumerate_terms(6)",
    2: "fundamental sequences on OT0, norm <= 6, x <= 4",
    3: "Hardy exactness",
    4: "k-normal form equivalence, m <= 5000, k in {2, 3}",
    5: "base change at k = 2, m < n <= 2000",
    6: "ordinal assignment invariance and descent inequality",
    7: "Goodstein termination for l = 1..4",
    8: "gap classification totality, norm <= 5",
    9: "deterministic trace artifacts",
}

ORDER_SECONDS = 60
HARDY_SECONDS = 1
KNF_SECONDS = 300
SAMPLES = 100_000
# Largest m with bc_nat(m, 2) computable: 512 = H_w(2) maps to H_w(3) = 3^(3^82+1).
K2_LIMIT = 511
# sha256 of the concatenated traces of run(1..4), frozen from an independent run.
TRACE_SHA256 = "73b7d5d7f2147cb7cfbad452e7f2dad7bd54b2d5199c280ca551157961527930"


def record(num, name, ok, detail=""):
    ACCEPTANCE.setdefault(num, (TITLES[num], []))[1].append((name, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'} C{num} {name}{': ' + detail if detail else ''}")


@contextmanager
def part(num, name):
    try:
        yield
    except BaseException as exc:
        first_line = (str(exc).splitlines() or [""])[0][:80]
        record(num, name, False, f"{type(exc).__name__} {first_line}".strip())
        raise
    record(num, name, True)


def timed(num, name, seconds, start):
    elapsed = time.perf_counter() - start
    with part(num, f"{name} ({elapsed:.1f}s, target < {seconds}s)"):
        assert elapsed < seconds


# -- C1 ------------------------------------------------------------------------

def test_c1_order_suite(terms6):
    start = time.perf_counter()
    rng = random.Random(1)
    with part(1, "54499 terms enumerated"):
        assert len(terms6) == 54_499 and len(set(terms6)) == 54_499
    with part(1, "reflexive and trichotomous"):
        assert all(compare(t, t) is Ordering.EQUAL for t in terms6)
        for _ in range(SAMPLES):
            a, b = rng.choice(terms6), rng.choice(terms6)
            c = compare(a, b)
            assert c in Ordering and (c is Ordering.EQUAL) == (a == b)
            assert cmp(b, a) == -cmp(a, b)
    ordered = sorted(terms6, key=cmp_to_key(cmp))
    pos = {t: i for i, t in enumerate(ordered)}
    with part(1, "total: sorted sequence strictly increasing"):
        assert all(cmp(x, y) < 0 for x, y in zip(ordered, ordered[1:]))
    with part(1, "agrees with the rule-based order"):
        assert sorted(terms6, key=cmp_to_key(rule_cmp)) == ordered
        for _ in range(SAMPLES):
            a, b = rng.choice(terms6), rng.choice(terms6)
            assert cmp(a, b) == rule_cmp(a, b) == (pos[a] > pos[b]) - (pos[a] < pos[b])
    with part(1, f"transitive on {SAMPLES} sampled triples"):
        for _ in range(SAMPLES):
            a, b, c = (rng.choice(terms6) for _ in range(3))
            if cmp(a, b) < 0 and cmp(b, c) < 0:
                assert cmp(a, c) < 0
            if cmp(a, b) > 0 and cmp(b, c) > 0:
                assert cmp(a, c) > 0
    with part(1, "no descending cycle on the OT fragment"):
        frag = [t for t in ordered if is_ot(t)]
        assert frag
        # A strictly increasing enumeration consistent with every sampled pair
        # leaves no room for a cycle.
        assert all(x < y and not y < x for x, y in zip(frag, frag[1:]))
        for _ in range(SAMPLES):
            a, b = rng.choice(frag), rng.choice(frag)
            assert (a < b) == (pos[a] < pos[b])
    timed(1, "runtime", ORDER_SECONDS, start)


# -- C2 ------------------------------------------------------------------------

def test_c2_fundamental_sequences(ot0_6):
    terms = sorted(ot0_6)
    with part(2, "a[x] < a, monotone in x, closed in OT0"):
        for a in terms:
            if a == ZERO:
                continue
            steps = [fs_step(a, x) for x in range(5)]
            for s in steps:
                assert s < a and is_ot0(s)
            strict = tp(a) != Cofinality.ONE
            for s, t in zip(steps, steps[1:]):
                assert s < t if strict else s == t
    with part(2, "N(a) <= N(a[1]) + 1"):
        assert all(norm(a) <= norm(fs_step(a, 1)) + 1 for a in terms if a != ZERO)
    with part(2, "Bachmann property, countable cofinality"):
        assert _bachmann_failures(terms, countable=True) == 0


@pytest.mark.xfail(strict=True, reason="for cofinality Omega or Omega_2 with a natural index "
                   "the property has counterexamples such as Om[2] = 2 < w < Om, w[1] = 1")
def test_c2_bachmann_uncountable_cofinality(ot0_6):
    with part(2, "Bachmann property, uncountable cofinality with natural index"):
        assert _bachmann_failures(sorted(ot0_6), countable=False) == 0


def _bachmann_failures(terms, countable):
    first = [fs_step(b, 1) if b != ZERO else ZERO for b in terms]
    sizes = [norm(b) for b in terms]
    failures = 0
    for a in terms:
        if a == ZERO or (tp(a) <= Cofinality.OMEGA) != countable:
            continue
        hi = bisect.bisect_left(terms, a)
        for x in range(5):
            ax = fs_step(a, x)
            n_ax = norm(ax)
            for i in range(bisect.bisect_right(terms, ax), hi):
                if not (ax <= first[i] and n_ax < sizes[i]):
                    failures += 1
    return failures


# -- C3 ------------------------------------------------------------------------

def test_c3_hardy_exact():
    start = time.perf_counter()
    with part(3, "H_0(2) = 2, H_3(2) = 16, H_w(2) = 512"):
        assert hardy(ZERO, 2) == 2 == hardy_direct(ZERO, 2)
        assert hardy(nat(3), 2) == 16 == hardy_direct(nat(3), 2)
        assert hardy(OMEGA, 2) == 512 == hardy_direct(OMEGA, 2)
    timed(3, "runtime", HARDY_SECONDS, start)


@pytest.mark.xfail(strict=True, raises=BudgetExceeded,
                   reason="H_w(3) = 3^(3^82+1) has about 2e39 bits")
def test_c3_hardy_omega_base_three():
    with part(3, "H_w(3) against the direct oracle"):
        assert hardy(OMEGA, 3) == hardy_direct(OMEGA, 3)


# -- C4 ------------------------------------------------------------------------

def test_c4_knf_equivalence():
    start = time.perf_counter()
    for k in (2, 3):
        forms = {}
        with part(4, f"greedy = oracle at k={k}"):
            for m in range(5001):
                d = knf_decompose(m, k)
                assert d == knf_oracle(m, k), m
                forms[m] = d
        with part(4, f"lexicographic correspondence at k={k}"):
            keys = [(forms[m].alpha, forms[m].p, forms[m].q) for m in range(k, 5001)]
            # Strictly increasing in m is equivalent to m < n <=> key_m <lex key_n.
            assert all(x < y for x, y in zip(keys, keys[1:]))
    timed(4, "runtime", KNF_SECONDS, start)


# -- C5 ------------------------------------------------------------------------

def _base_change_checks(top):
    prev = None
    for m in range(top + 1):
        v = bc_nat(m, 2)
        assert m <= v
        assert prev is None or prev < v
        prev = v
        if m >= 2:
            d, d2 = knf_decompose(m, 2), knf_decompose(v, 3)
            assert (d2.alpha, d2.p, d2.q) == (bc_ord(d.alpha, 2), d.p, bc_nat(d.q, 2))


def test_c5_base_change_attainable():
    with part(5, f"monotone, inflationary, NF preserving for n <= {K2_LIMIT}"):
        _base_change_checks(K2_LIMIT)


@pytest.mark.xfail(strict=True, raises=BudgetExceeded,
                   reason="bc_nat(512, 2) = H_w(3) cannot be written down")
def test_c5_base_change_full_range():
    with part(5, "same checks for n <= 2000"):
        _base_change_checks(2000)


# -- C6 ------------------------------------------------------------------------

def test_c6_assignment_attainable():
    with part(6, "invariance at k=3 for m <= 2000"):
        assert all(assign_nat(bc_nat(m, 3), 4) == assign_nat(m, 3) for m in range(2001))
    with part(6, f"invariance at k=2 for m <= {K2_LIMIT}"):
        assert all(assign_nat(bc_nat(m, 2), 3) == assign_nat(m, 2) for m in range(K2_LIMIT + 1))
    with part(6, "assigned ordinals lie in OT"):
        assert all(is_ot(assign_nat(m, k)) for k in (2, 3) for m in range(2001))
    with part(6, "o_{k+1}(m'-1) >= o_k(m)[k] for m <= 500"):
        for k in (2, 3):
            for m in range(1, 501):
                assert assign_nat(bc_nat(m, k) - 1, k + 1) >= fs_step(assign_nat(m, k), k)


@pytest.mark.xfail(strict=True, raises=BudgetExceeded,
                   reason="m' is not computable for 512 <= m <= 2000 at k=2")
def test_c6_assignment_k2_full_range():
    with part(6, "invariance at k=2 for 512 <= m <= 2000"):
        for m in range(K2_LIMIT + 1, 2001):
            assert assign_nat(bc_nat(m, 2), 3) == assign_nat(m, 2)


# -- C7 ------------------------------------------------------------------------

def test_c7_goodstein_termination():
    expected = {1: 1, 2: 3, 3: 5, 4: 21}
    for ell, final in expected.items():
        with part(7, f"run({ell}) terminates at k={final}, matches oracle, descent verified"):
            r = run(ell)
            assert r.terminated and r.final_k == final
            assert r.values == goodstein_reference(ell)
            assert verify_descent(r)


# -- C8 ------------------------------------------------------------------------

def test_c8_gap_classification(countable_ot0_5):
    terms = sorted(countable_ot0_5)
    with part(8, f"classify_gap verified on all {len(terms) * (len(terms) - 1) // 2} pairs"):
        for i, a in enumerate(terms):
            for b in terms[i + 1:]:
                classify_gap(a, b)


# -- C9 ------------------------------------------------------------------------

def _traces(tmp_path, seed):
    blobs = []
    for ell in range(1, 5):
        path = tmp_path / f"trace_{seed}_{ell}.jsonl"
        subprocess.run([sys.executable, "-m", "collapse_goodstein", "goodstein", "run", str(ell),
                        "--trace", str(path)], check=True, capture_output=True,
                       env={**os.environ, "PYTHONHASHSEED": seed})
        blobs.append(path.read_bytes())
    return b"".join(blobs)


def test_c9_determinism(tmp_path):
    with part(9, "traces byte-identical across processes and hash seeds"):
        first, second = _traces(tmp_path, "0"), _traces(tmp_path, "12345")
        assert first == second
    with part(9, "traces match the frozen digest"):
        assert hashlib.sha256(first).hexdigest() == TRACE_SHA256


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
