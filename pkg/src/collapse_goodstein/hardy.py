"""Hardy hierarchy, the approximation ladder and k-normal forms of naturals.

Values are exact Python ints. Every evaluation can run in *capped* mode:
given a bound, it returns the exact value when it does not exceed the bound
and ``None`` otherwise, without ever materialising the large number. This
is sound because the value at a limit equals the value at its last ladder
rung and every earlier rung is strictly smaller, so exceeding the bound at
any intermediate stage settles the comparison.
"""
from dataclasses import dataclass
from math import log2
from typing import Optional

from .budget import as_meter
from .errors import BudgetExceeded, DomainError
from .fundamental import Cofinality, _fs, tp
from .normal_form import is_ot0
from .terms import (BIG_OMEGA, BIG_OMEGA2, OMEGA, UNIT, ZERO, Term, add, drop_last,
                    enumerate_terms, mul_nat, nat, norm, principal_of, psi,
                    split_nat, to_text)

_MEMO_LIMIT = 200_000
_exact = {}     # (term, k) -> H_term(k)
_above = {}     # (term, k) -> largest bound known to be exceeded


def _remember(table, key, value):
    if len(table) > _MEMO_LIMIT:
        table.clear()
    table[key] = value


def _check_countable(a, k):
    if k < 2:
        raise DomainError("base k must be >= 2")
    if not a < BIG_OMEGA:
        raise DomainError(f"Hardy functions take countable indices, got {to_text(a)}")


def _h(a, k, cap, meter):
    """H_a(k) exactly, or None when cap is given and the value exceeds it."""
    key = (a, k)
    hit = _exact.get(key)
    if hit is not None:
        return hit if cap is None or hit <= cap else None
    if cap is not None and _above.get(key, -1) >= cap:
        return None
    meter.tick()
    head, n = split_nat(a)
    if n:
        if cap is None:
            if head.parts:
                base = _h(head, k, None, meter)
                meter.check_bits(base.bit_length() + int(n * log2(k)) + 1)
                value = base * k ** n
            else:
                meter.check_bits(int((n + 1) * log2(k)) + 1)
                value = k ** (n + 1)
        else:
            if n + (0 if head.parts else 1) >= cap.bit_length():
                value = None
            else:
                scale = k ** n
                if head.parts:
                    base = _h(head, k, cap // scale, meter)
                    value = None if base is None else base * scale
                else:
                    value = k * scale
                    value = value if value <= cap else None
    elif not a.parts:
        value = k if cap is None or k <= cap else None
    else:
        value = _h_limit(a, k, cap, meter)
    if value is None:
        _remember(_above, key, max(cap, _above.get(key, -1)))
    else:
        _remember(_exact, key, value)
    return value


def _h_limit(a, k, cap, meter):
    cur = _fs(a, 0, meter)
    for _ in range(k):
        h = _h(cur, k, cap, meter)
        if h is None:
            return None
        if cap is not None and _overshoots_before(a, h, k, cap, meter):
            return None
        cur = _fs(a, h, meter)
    return _h(cur, k, cap, meter)


def _overshoots_before(a, h, k, cap, meter):
    # H at a[x] is strictly increasing in x, so probing small indices first
    # avoids building a[h] when h is large and the answer is already known.
    x = 1
    while x < h:
        if _h(_fs(a, x, meter), k, cap, meter) is None:
            return True
        x *= 2
    return False


def _guarded(fn, *args):
    try:
        return fn(*args)
    except RecursionError:
        raise BudgetExceeded("term nesting exceeds the interpreter recursion limit") from None


def hardy(a, k, budget=None):
    """H_a(k) exactly; raises BudgetExceeded instead of giving up silently."""
    _check_countable(a, k)
    return _guarded(_h, a, k, None, as_meter(budget))


def hardy_capped(a, k, cap, budget=None):
    """H_a(k) if it is at most cap, else None."""
    _check_countable(a, k)
    if cap < 0:
        return None
    return _guarded(_h, a, k, cap, as_meter(budget))


def ladder(a, b, k, budget=None):
    """The rung a{b,k}: a[0], then a[H of the previous rung], b times."""
    _check_countable(a, k)
    if tp(a) != Cofinality.OMEGA:
        raise DomainError(f"ladder needs a limit of cofinality omega, got {to_text(a)}")
    if not 0 <= b <= k:
        raise DomainError(f"rung {b} out of range 0..{k}")
    meter = as_meter(budget)

    def climb():
        cur = _fs(a, 0, meter)
        for _ in range(b):
            cur = _fs(a, _h(cur, k, None, meter), meter)
        return cur
    return _guarded(climb)


# -- k-normal forms -----------------------------------------------------------

@dataclass(frozen=True)
class KNF:
    """m = H_alpha(k) * p + q, or a bare literal when m < k."""
    alpha: Optional[Term]
    p: int
    q: int
    k: int
    literal: Optional[int] = None

    @classmethod
    def lit(cls, m, k):
        return cls(None, 0, 0, k, m)

    @property
    def is_literal(self):
        return self.literal is not None

    def __str__(self):
        if self.is_literal:
            return str(self.literal)
        return f"H[{to_text(self.alpha)}]({self.k})*{self.p}+{self.q}"


def knf_value(d, budget=None):
    if d.is_literal:
        return d.literal
    return hardy(d.alpha, d.k, budget) * d.p + d.q


def _finish(m, k, alpha, meter):
    h = _h(alpha, k, m, meter)
    p, q = divmod(m, h)
    if not 1 <= p < k:
        raise DomainError(f"internal error: multiplicity {p} out of range for base {k}")
    return KNF(alpha, p, q, k)


_SEEDS = (ZERO, OMEGA, psi(0, BIG_OMEGA), psi(0, psi(1, BIG_OMEGA2)))


def knf_decompose(m, k, budget=None):
    """Base-k normal form of m by greedy descent from a seed above m.

    A limit candidate b is narrowed to b[x+1] for the largest x with
    H_{b[x]}(k) <= m (or to b[0] when no such x exists); the maximal index
    lies in [b[x], b[x+1]). Successors are stepped down by one.
    """
    return _guarded(_decompose, m, k, budget)


def _decompose(m, k, budget):
    if k < 2:
        raise DomainError("base k must be >= 2")
    if m < 0:
        raise DomainError("only naturals have normal forms")
    if m < k:
        return KNF.lit(m, k)
    meter = as_meter(budget)
    for beta in _SEEDS:
        if _h(beta, k, m, meter) is None:
            break
    else:
        raise BudgetExceeded(f"{m} exceeds every seed of the search")
    if not beta.parts:
        raise DomainError("internal error: H_0(k) = k exceeds m >= k")
    while True:
        if beta.parts[-1][0] == UNIT:
            beta = drop_last(beta)
            if _h(beta, k, m, meter) is not None:
                return _finish(m, k, beta, meter)
            continue
        beta = _narrow(beta, m, k, meter)


def _narrow(beta, m, k, meter):
    """beta[x+1] for the largest x with H_{beta[x]}(k) <= m, else beta[0]."""
    def fits(x):
        return _h(_fs(beta, x, meter), k, m, meter) is not None

    if not fits(0):
        return _fs(beta, 0, meter)
    lo, hi = 0, 1
    while fits(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return _fs(beta, hi, meter)


# -- brute-force reference ----------------------------------------------------

ORACLE_CAP = 10 ** 5
ORACLE_BASES = (2, 3, 4)
_OMEGA_TWICE = mul_nat(OMEGA, 2)


def knf_oracle(m, k, budget=None):
    """Reference decomposition: maximise over every admissible index.

    Candidates are countable OT0 terms of norm at most log_k(m), since
    k^(norm+1) <= H_a(k). Collapses with a nonzero argument are skipped
    while m < H_{w*2}(k), a lower bound for all of them; sums are pruned
    as soon as a prefix alone overshoots m.
    """
    if k not in ORACLE_BASES:
        raise DomainError(f"oracle supports bases {ORACLE_BASES}, got {k}")
    if m > ORACLE_CAP:
        raise DomainError(f"oracle cap {ORACLE_CAP} exceeded by {m}")
    if m < 0:
        raise DomainError("only naturals have normal forms")
    if m < k:
        return KNF.lit(m, k)
    meter = as_meter(budget)
    bound = 0
    while k ** (bound + 2) <= m:
        bound += 1
    best = None
    for a, h in _candidates(k, bound, m, meter):
        if h <= m and (best is None or a > best):
            best = a
    return _finish(m, k, best, meter)


def _candidates(k, bound, m, meter):
    principals = [nat(1), OMEGA] if bound >= 1 else []
    if _h(_OMEGA_TWICE, k, m, meter) is not None:
        if bound - 1 > 9:
            raise BudgetExceeded("oracle enumeration too large")
        for arg in enumerate_terms(bound - 1, below=BIG_OMEGA2):
            if arg.parts:
                t = principal_of(0, arg)
                if is_ot0(t):
                    principals.append(t)
    principals.sort(reverse=True)
    out = []
    _grow(ZERO, 0, 0, principals, bound, k, m, meter, out)
    return out


def _grow(acc, used, start, principals, bound, k, m, meter, out):
    if acc.parts:
        h = _h(acc, k, m, meter)
        if h is None:
            return
        out.append((acc, h))
    else:
        out.append((acc, k))
    for i in range(start, len(principals)):
        p = principals[i]
        cost = norm(p)
        if used + cost > bound:
            continue
        nxt = add(acc, p)
        if not is_ot0(nxt):
            continue
        _grow(nxt, used + cost, i, principals, bound, k, m, meter, out)


__all__ = ["KNF", "hardy", "hardy_capped", "ladder", "knf_decompose", "knf_oracle",
           "knf_value", "ORACLE_CAP"]
