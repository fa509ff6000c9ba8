"""Cofinality, fundamental sequences and the descent relations built on them."""
from enum import IntEnum
from functools import lru_cache
from typing import NamedTuple

from .budget import Budget, as_meter
from .errors import BudgetExceeded, DomainError
from .terms import (BIG_OMEGA, BIG_OMEGA2, UNIT, ZERO, Term, add, drop_last,
                    is_nat, mul_nat, nat, nat_value, norm, principal_of, to_text)


class Cofinality(IntEnum):
    ZERO = 0
    ONE = 1
    OMEGA = 2
    BIG_OMEGA = 3
    BIG_OMEGA2 = 4

    @property
    def level(self):
        """Index i for the uncountable cofinalities Omega_i, else None."""
        return {3: 1, 4: 2}.get(int(self))

    def as_term(self):
        return {0: ZERO, 1: nat(1), 2: principal_of(0, ZERO),
                3: BIG_OMEGA, 4: BIG_OMEGA2}[int(self)]


_ZERO_ARG_TP = {0: Cofinality.OMEGA, 1: Cofinality.BIG_OMEGA, 2: Cofinality.BIG_OMEGA2}
# tp(arg) below this value passes straight through psi_i; Omega_3 is out of range.
_PASS_LIMIT = {0: Cofinality.BIG_OMEGA, 1: Cofinality.BIG_OMEGA2, 2: None}


def tp(a):
    if not a.parts:
        return Cofinality.ZERO
    level, arg, _ = a.parts[-1]
    if level == UNIT:
        return Cofinality.ONE
    return _tp_psi(level, arg)


@lru_cache(maxsize=None)
def _tp_psi(level, arg):
    if not arg.parts:
        return _ZERO_ARG_TP[level]
    t = tp(arg)
    if t == Cofinality.ONE:
        return Cofinality.OMEGA
    limit = _PASS_LIMIT[level]
    if limit is None or t < limit:
        return t
    if t == limit:
        return Cofinality.OMEGA
    raise DomainError(f"psi_{level} applied to an argument of cofinality {t.name}; "
                      "such terms are outside OT")


def fs_step(a, x, budget=None):
    """The fundamental-sequence step a[x].

    x is a natural (int or natural term) when a has countable cofinality and
    any term below Omega_i when tp(a) = Omega_i. Ints are accepted there too.
    """
    meter = as_meter(budget)
    t = tp(a)
    if t <= Cofinality.OMEGA:
        if isinstance(x, Term):
            if not is_nat(x):
                raise DomainError(f"{to_text(a)} has cofinality {t.name}; "
                                  "index must be natural")
            x = nat_value(x)
        elif x < 0:
            raise DomainError("index must be nonnegative")
    else:
        x = x if isinstance(x, Term) else nat(x)
        bound = BIG_OMEGA if t == Cofinality.BIG_OMEGA else BIG_OMEGA2
        if not x < bound:
            raise DomainError(f"index {to_text(x)} is not below the cofinality of {to_text(a)}")
    return _fs(a, x, meter)


def _fs(a, x, meter):
    """a[x] with x an int for countable cofinality and a Term otherwise."""
    if not a.parts:
        return ZERO
    level, arg, _ = a.parts[-1]
    prefix = drop_last(a)
    if level == UNIT:
        return prefix
    return add(prefix, _fs_psi(level, arg, x, meter))


def _fs_psi(level, arg, x, meter):
    meter.tick()
    if not arg.parts:
        return nat(x) if level == 0 else x
    t = tp(arg)
    if t == Cofinality.ONE:
        return mul_nat(principal_of(level, _fs(arg, 0, meter)), x)
    limit = _PASS_LIMIT[level]
    if limit is None or t < limit:
        return principal_of(level, _fs(arg, x, meter))
    if t == limit:
        z = ZERO
        for _ in range(x):
            meter.tick()
            z = principal_of(level, _fs(arg, z, meter))
        return principal_of(level, _fs(arg, z, meter))
    raise DomainError(f"no fundamental sequence for psi_{level}({to_text(arg)})")


class Descent(NamedTuple):
    value: Term
    next_index: int
    reached_zero: bool


def iter_descent(a, start_index=0, steps=1, budget=None):
    """a[start][start+1]...[start+steps-1], stopping early at 0."""
    meter = as_meter(budget)
    if steps > meter.budget.max_steps:
        raise BudgetExceeded(f"{steps} descent steps requested, cap is {meter.budget.max_steps}")
    cur = a
    i = start_index
    for _ in range(steps):
        if not cur.parts:
            break
        cur = fs_step(cur, i, meter)
        i += 1
    return Descent(cur, i, not cur.parts)


def step_le(a, b, k, budget=None):
    """Whether a lies on the fixed-index chain b, b[k], b[k][k], ..."""
    if k < 1:
        raise DomainError("step index must be >= 1")
    meter = as_meter(budget)
    cur = b
    while True:
        if cur == a:
            return True
        if cur < a or not cur.parts:
            return False
        meter.tick()
        cur = fs_step(cur, k, meter)


def single_step_lt_n(a, b, n, budget=None):
    """Whether a = b[x] for some natural x < n."""
    meter = as_meter(budget)
    return any(fs_step(b, x, meter) == a for x in range(n))


def check_bachmann(a, b, x, budget=None):
    meter = as_meter(budget)
    ax = fs_step(a, x, meter)
    if not (ax < b < a):
        return True
    return ax <= fs_step(b, 1, meter) and norm(ax) < norm(b)


def verify_majorize(seq, budget=None):
    meter = as_meter(budget)
    for n in range(len(seq) - 1):
        lo = fs_step(seq[n], n + 1, meter)
        if not (lo <= seq[n + 1] <= seq[n]):
            raise DomainError(f"sandwich condition fails at index {n}")
    cur = seq[0] if seq else ZERO
    for n, xi in enumerate(seq):
        cur = fs_step(cur, n, meter)
        if xi < cur:
            return False
    return True


def fgh_eval(a, n, budget=None):
    """F_a(n) for the fast-growing hierarchy."""
    if not a < BIG_OMEGA:
        raise DomainError("the fast-growing hierarchy is indexed by countable terms")
    if n < 1:
        raise DomainError("argument must be >= 1")
    return _fgh(a, n, as_meter(budget))


def _fgh(a, n, meter):
    meter.tick()
    if not a.parts:
        meter.check_bits(n.bit_length())
        return n + 1
    if a.parts[-1][0] == UNIT:
        pred = drop_last(a)
        v = n
        for _ in range(n):
            v = _fgh(pred, v, meter)
        return v
    return _fgh(_fs(a, n, meter), n, meter)


__all__ = ["Budget", "Cofinality", "Descent", "tp", "fs_step", "iter_descent", "step_le",
           "single_step_lt_n", "check_bachmann", "verify_majorize", "fgh_eval"]
