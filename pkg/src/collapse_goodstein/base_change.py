"""The base change [k <- k+1] on naturals, terms and contexts."""
from .budget import as_meter
from .errors import DomainError
from .gap import Context
from .hardy import _guarded, _h, knf_decompose
from .terms import UNIT, Term, nat, split_nat


def _check_base(k):
    if k < 2:
        raise DomainError("base k must be >= 2")


def bc_nat(m, k, budget=None):
    """Rewrite m's base-k normal form at base k+1 and evaluate it."""
    _check_base(k)
    if m < 0:
        raise DomainError("only naturals can be base-changed")
    return _guarded(_bc_nat, m, k, as_meter(budget))


def _bc_nat(m, k, meter):
    if m < k:
        return m
    if m == k:
        return k + 1
    d = knf_decompose(m, k, meter)
    head = _h(_bc_ord(d.alpha, k, meter), k + 1, None, meter)
    return head * d.p + _bc_nat(d.q, k, meter)


def bc_ord(a, k, budget=None):
    """Structural base change: multiplicities stay, natural leaves move."""
    _check_base(k)
    return _guarded(_bc_ord, a, k, as_meter(budget))


def _bc_ord(a, k, meter):
    head, n = split_nat(a)
    parts = tuple((level, _bc_ord(arg, k, meter), count) for level, arg, count in head.parts)
    if n:
        parts += ((UNIT, None, _bc_nat(n, k, meter)),)
    return Term(parts)


def bc_context(c, k, budget=None):
    """Base-change every filled position; the hole stays where it is."""
    _check_base(k)
    meter = as_meter(budget)
    return Context(tuple((_bc_ord(left, k, meter), level, _bc_ord(right, k, meter))
                         for left, level, right in c.frames))


__all__ = ["bc_nat", "bc_ord", "bc_context"]
