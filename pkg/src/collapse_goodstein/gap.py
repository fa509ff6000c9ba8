"""One-hole contexts and the classification of gaps between two terms.

A context is a stack of frames read from the outside in. Every frame is a
``(left, level, right)`` triple: outer frames stand for
``left + p{level}(<inner>) + right`` and the innermost frame, whose level is
``None``, stands for ``left + [.] + right``.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from .budget import as_meter
from .errors import ClassificationDefect, ContextError, DomainError, ParseError
from .fundamental import fs_step
from .terms import (BIG_OMEGA, OMEGA, UNIT, ZERO, Term, _pkey, add, drop_last,
                    expand, is_nat, last_principal, mul_nat, nat, nat_value,
                    parse, principal_of, to_text)

HOLE = "[.]"

Frame = Tuple[Term, Optional[int], Term]


@dataclass(frozen=True)
class Context:
    frames: Tuple[Frame, ...] = ((ZERO, None, ZERO),)

    def __post_init__(self):
        if not self.frames or self.frames[-1][1] is not None:
            raise DomainError("the innermost frame must hold the hole")
        if any(level not in (0, 1, 2) for _, level, _ in self.frames[:-1]):
            raise DomainError("outer frames need a collapsing level 0, 1 or 2")

    @property
    def path(self):
        """Number of expanded summands left of the hole, per nesting level."""
        return tuple(len(expand(left)) for left, _, _ in self.frames)

    @property
    def levels(self):
        return tuple(level for _, level, _ in self.frames[:-1])

    def __str__(self):
        return context_text(self)


def hole():
    return Context()


def _concat(*pieces):
    parts = []
    for piece in pieces:
        for level, arg, count in piece.parts:
            if parts:
                plevel, parg, pcount = parts[-1]
                if plevel == level and parg == arg:
                    parts[-1] = (level, arg, pcount + count)
                    continue
                if _pkey(plevel, parg) < _pkey(level, arg):
                    raise ContextError("filling the hole breaks the nonincreasing order")
            parts.append((level, arg, count))
    return Term(tuple(parts))


def substitute(c, t):
    """The term c[[t]]."""
    inner = t
    for left, level, right in reversed(c.frames):
        if level is not None:
            inner = principal_of(level, inner)
        inner = _concat(left, inner, right)
    return inner


def truncate(c):
    """Drop everything hereditarily to the right of the hole."""
    return Context(tuple((left, level, ZERO) for left, level, _ in c.frames))


def is_psi0_nesting_free(c):
    return 0 not in c.levels


def context_text(c):
    inner = HOLE
    for left, level, right in reversed(c.frames):
        if level is not None:
            inner = f"p{level}({inner})"
        items = [to_text(left)] if left.parts else []
        items.append(inner)
        if right.parts:
            items.append(to_text(right))
        inner = "+".join(items)
    return inner


def parse_context(text):
    """Parse a term containing exactly one hole marker ``[.]``."""
    at = text.find(HOLE)
    if at < 0 or text.find(HOLE, at + 1) >= 0:
        raise ParseError("a context needs exactly one hole [.]", max(at, 0))
    # Enclosing parentheses of the hole, innermost last.
    depth_stack = []
    for i, ch in enumerate(text[:at]):
        if ch == "(":
            depth_stack.append(i)
        elif ch == ")":
            if not depth_stack:
                raise ParseError("unbalanced ')'", i)
            depth_stack.pop()
    opens = depth_stack
    regions = [(0, len(text))]
    for o in opens:
        regions.append((o + 1, _matching(text, o)))
    frames = []
    for depth, (lo, hi) in enumerate(regions):
        summands = _split_top(text, lo, hi)
        idx = next(j for j, (s, e) in enumerate(summands) if s <= at < e)
        left = _join(text, summands[:idx])
        right = _join(text, summands[idx + 1:])
        s, e = summands[idx]
        item = text[s:e].strip()
        if depth + 1 < len(regions):
            head = item.split("(", 1)[0].strip()
            if head not in ("p0", "p1", "p2") or not item.endswith(")"):
                raise ParseError("the hole may only sit inside p0, p1 or p2", s)
            level = int(head[1])
        else:
            if item != HOLE:
                raise ParseError("the hole must be a whole summand", s)
            level = None
        frames.append((left, level, right))
    return Context(tuple(frames))


def _matching(text, o):
    depth = 0
    for i in range(o, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError("unbalanced '('", o)


def _split_top(text, lo, hi):
    out, depth, start = [], 0, lo
    for i in range(lo, hi):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            out.append((start, i))
            start = i + 1
    out.append((start, hi))
    return out


def _join(text, spans):
    if not spans:
        return ZERO
    return parse("+".join(text[s:e] for s, e in spans))


# -- gap classification -------------------------------------------------------

@dataclass(frozen=True)
class SuccessorOf:
    pred: Term


@dataclass(frozen=True)
class BelowFirst:
    pass


@dataclass(frozen=True)
class NatHole:
    context: Context
    t: int


@dataclass(frozen=True)
class OmegaLimit:
    context: Context
    gamma: Term
    t: int


@dataclass(frozen=True)
class PsiMultiple:
    context: Context
    level: int
    gamma: Term
    s: int


@dataclass(frozen=True)
class OmegaUncountable:
    context: Context
    gamma: Term
    tau: Term


def _strip_prefix(a, xi):
    """r with a = xi + r, assuming xi's summands open a's expansion."""
    ea, ex = expand(a), expand(xi)
    if ea[:len(ex)] != ex:
        return None
    r = ZERO
    for level, arg in ea[len(ex):]:
        r = add(r, principal_of(level, arg) if level != UNIT else nat(1))
    return r


def _is_limit(t):
    return t.parts and t.parts[-1][0] != UNIT


def classify_gap(a, b, budget=None):
    """Locate the first divergence of a < b and return the matching clause.

    Every returned case has been checked against its defining inequalities;
    a failure raises ClassificationDefect.
    """
    if not a < b:
        raise DomainError(f"classify_gap needs a < b, got {to_text(a)} and {to_text(b)}")
    meter = as_meter(budget)
    if b == add(a, nat(1)):
        return SuccessorOf(a)
    if a < fs_step(b, 1, meter):
        return BelowFirst()
    frames = []
    x, y = a, b
    while True:
        xi = drop_last(y)
        principal = last_principal(y)
        r = _strip_prefix(x, xi)
        if r is None or not r < principal:
            raise ClassificationDefect(f"no common prefix at {to_text(x)} vs {to_text(y)}")
        level, arg, _ = principal.parts[0]
        if level == UNIT:
            raise ClassificationDefect(f"successor divergence at {to_text(y)}")
        if arg.parts and _is_limit(arg) and r.parts and r.parts[0][0] == level:
            lead_arg = r.parts[0][1]
            rest = drop_first(r)
            frames.append((xi, level, rest))
            x, y = lead_arg, arg
            continue
        case = _innermost(frames, xi, level, arg, r, a, b, meter)
        _verify(case, a, b, meter)
        return case


def drop_first(a):
    level, arg, count = a.parts[0]
    head = ((level, arg, count - 1),) if count > 1 else ()
    return Term(head + a.parts[1:])


def _innermost(frames, xi, level, arg, r, a, b, meter):
    if level == 0 and not arg.parts:
        if not is_nat(r):
            raise ClassificationDefect("omega hole filled by a non-natural")
        return NatHole(Context(tuple(frames) + ((xi, None, ZERO),)), nat_value(r))
    if arg.parts and not _is_limit(arg):
        gamma = drop_last(arg)
        if not r.parts or r.parts[0][0] != level or r.parts[0][1] != gamma:
            raise ClassificationDefect(f"no multiple of p{level}({to_text(gamma)}) at the gap")
        s = r.parts[0][2]
        rest = Term(r.parts[1:])
        ctx = Context(tuple(frames) + ((xi, None, rest),))
        return PsiMultiple(ctx, level, gamma, s)
    if level == 1 and not arg.parts:
        ctx = Context(tuple(frames) + ((xi, None, ZERO),))
        if 0 in (lv for _, lv, _ in frames):
            top = substitute(truncate(ctx), BIG_OMEGA)
            t = 0
            while not a < fs_step(top, t + 1, meter):
                meter.tick()
                t += 1
            return OmegaLimit(ctx, r, t)
        return OmegaUncountable(ctx, r, r)
    raise ClassificationDefect(f"unclassified divergence at p{level}({to_text(arg)})")


def _verify(case, a, b, meter):
    def need(cond, what):
        if not cond:
            raise ClassificationDefect(f"witness check failed: {what}")

    if isinstance(case, NatHole):
        lam = case.context
        need(substitute(lam, nat(case.t)) == a, "a = lambda[t]")
        need(substitute(truncate(lam), OMEGA) == b, "b = lambda-[w]")
        need(a < fs_step(b, case.t + 1, meter), "a < b[t+1]")
    elif isinstance(case, PsiMultiple):
        lam = case.context
        unit = principal_of(case.level, case.gamma)
        need(substitute(lam, mul_nat(unit, case.s)) == a, "a = lambda[psi(gamma)*s]")
        need(substitute(truncate(lam), principal_of(case.level, add(case.gamma, nat(1)))) == b,
             "b = lambda-[psi(gamma+1)]")
        need(a < fs_step(b, case.s + 1, meter), "a < b[s+1]")
    elif isinstance(case, OmegaLimit):
        lam = case.context
        need(substitute(lam, case.gamma) == a, "a = lambda[gamma]")
        need(substitute(truncate(lam), BIG_OMEGA) == b, "b = lambda-[Om]")
        need(fs_step(b, case.t, meter) <= a < fs_step(b, case.t + 1, meter),
             "b[t] <= a < b[t+1]")
    elif isinstance(case, OmegaUncountable):
        lam = case.context
        need(substitute(lam, case.gamma) == a, "a = lambda[gamma]")
        need(substitute(truncate(lam), BIG_OMEGA) == b, "b = lambda-[Om]")
        need(fs_step(b, case.tau, meter) <= a < fs_step(b, add(case.tau, nat(1)), meter),
             "b[tau] <= a < b[tau+1]")


__all__ = ["Context", "hole", "substitute", "truncate", "is_psi0_nesting_free",
           "context_text", "parse_context", "classify_gap", "SuccessorOf", "BelowFirst",
           "NatHole", "OmegaLimit", "PsiMultiple", "OmegaUncountable"]
