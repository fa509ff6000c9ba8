"""Syntactic well-foundedness: the G0/G1 argument collections and OT membership."""
from functools import lru_cache

from .terms import BIG_OMEGA, BIG_OMEGA2, UNIT, Term, psi

# psi_1(Omega_2) denotes epsilon_{Omega+1}, the bound defining OT0.
EPS_OMEGA_SUCC = psi(1, BIG_OMEGA2)


class GSet(frozenset):
    """Finite set of terms compared against a single bound."""

    def below(self, bound):
        kb = bound.key
        return all(x.key < kb for x in self)

    def exceeds(self, bound):
        kb = bound.key
        return any(x.key > kb for x in self)

    def sorted(self):
        return sorted(self, key=lambda t: t.key)


@lru_cache(maxsize=None)
def g0(a):
    out = set()
    for level, arg, _ in a.parts:
        if level == UNIT:
            continue
        if level == 0:
            out.add(arg)
        out |= g0(arg)
    return GSet(out)


@lru_cache(maxsize=None)
def g1(a):
    if a < BIG_OMEGA:
        return GSet()
    out = set()
    for level, arg, _ in a.parts:
        if level == 1:
            out.add(arg)
            out |= g1(arg)
        elif level == 2:
            out |= g1(arg)
    return GSet(out)


@lru_cache(maxsize=None)
def is_ot(a):
    for level, arg, _ in a.parts:
        if level == UNIT:
            continue
        if not is_ot(arg):
            return False
        if level == 1 and not g1(arg).below(arg):
            return False
        if level == 0 and not (g0(arg).below(arg) and arg < BIG_OMEGA2):
            return False
    return True


def is_ot0(a):
    return is_ot(a) and a < EPS_OMEGA_SUCC and g0(a).below(EPS_OMEGA_SUCC)


def is_countable(a):
    return a < BIG_OMEGA


def psi_is_normal(level, arg):
    """Whether psi_level(arg) is a normal-form application."""
    t = Term(((level, arg, 1),))
    return is_ot(t)


__all__ = ["GSet", "g0", "g1", "is_ot", "is_ot0"]
