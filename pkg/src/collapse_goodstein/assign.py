"""Ordinal assignment: base-k normal forms lifted one collapsing level up."""
from .budget import as_meter
from .errors import DomainError
from .gap import Context
from .hardy import _guarded, knf_decompose
from .terms import OMEGA, ZERO, add, mul_nat, nat, principal_of, split_nat, to_text


def _check_base(k):
    if k < 2:
        raise DomainError("base k must be >= 2")


def assign_nat(m, k, budget=None):
    _check_base(k)
    if m < 0:
        raise DomainError("only naturals have an assigned ordinal")
    return _guarded(_assign_nat, m, k, as_meter(budget))


def _assign_nat(m, k, meter):
    if m < k:
        return nat(m)
    if m == k:
        return OMEGA
    d = knf_decompose(m, k, meter)
    lead = mul_nat(principal_of(0, _assign_ord(d.alpha, k, meter)), d.p)
    return add(lead, _assign_nat(d.q, k, meter))


def assign_ord(a, k, budget=None):
    _check_base(k)
    return _guarded(_assign_ord, a, k, as_meter(budget))


def _assign_ord(a, k, meter):
    head, n = split_nat(a)
    out = ZERO
    for level, arg, count in head.parts:
        if level == 2:
            raise DomainError(f"{to_text(a)} has a p2 summand; assignment covers OT0 only")
        out = add(out, mul_nat(principal_of(level + 1, _assign_ord(arg, k, meter)), count))
    return add(out, _assign_nat(n, k, meter))


def assign_context(c, k, budget=None):
    """Assign every filled position and lift each enclosing level by one."""
    _check_base(k)
    meter = as_meter(budget)
    frames = []
    for left, level, right in c.frames:
        if level == 2:
            raise DomainError("assignment covers OT0 only; found a p2 frame")
        frames.append((_assign_ord(left, k, meter), None if level is None else level + 1,
                       _assign_ord(right, k, meter)))
    return Context(tuple(frames))


__all__ = ["assign_nat", "assign_ord", "assign_context"]
