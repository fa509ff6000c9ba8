"""Canonical terms of the notation system and their order.

A term is zero or a nonincreasing sum of principal terms. Principals are the
unit ``1`` and the collapsing applications ``p0(x)``, ``p1(x)``, ``p2(x)``.
Repeated principals are run-length encoded, so a term is a tuple of
``(level, arg, count)`` triples with ``level == -1`` marking the unit (its
``arg`` is ``None``). A natural number ``n`` is exactly ``((-1, None, n),)``.

Comparison goes through a cached nested-tuple key whose native ordering is
the term order: principals compare by level first (the unit has the lowest
level), then by argument; sums compare lexicographically on the principal
sequence with counts expanded. Two principals agree up to a count difference
``c1 < c2`` exactly when the expanded sequence of the first runs out or
continues with something smaller, so ``(pkey, count)`` pairs encode that
directly.
"""
from enum import Enum

from .errors import DomainError, NonCanonicalError, ParseError

UNIT = -1


class Ordering(Enum):
    LESS = "LT"
    EQUAL = "EQ"
    GREATER = "GT"

    def __str__(self):
        return self.value


class Term:
    __slots__ = ("parts", "_key", "_hash", "_norm")

    def __init__(self, parts=()):
        self.parts = parts
        self._key = None
        self._hash = None
        self._norm = None

    @classmethod
    def from_parts(cls, parts):
        """Build a term from (level, arg, count) triples, validating canonicity."""
        parts = tuple(parts)
        for i, (level, arg, count) in enumerate(parts):
            if level not in (UNIT, 0, 1, 2):
                raise DomainError(f"bad level {level}")
            if count < 1:
                raise DomainError("counts must be positive")
            if (level == UNIT) != (arg is None):
                raise DomainError("only the unit has no argument")
            if i and not _pkey(level, arg) < _pkey(*parts[i - 1][:2]):
                raise DomainError("principals must be strictly decreasing")
        return cls(parts)

    @property
    def key(self):
        k = self._key
        if k is None:
            k = tuple((_pkey(level, arg), count) for level, arg, count in self.parts)
            self._key = k
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.parts)
        return h

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __mul__(self, n):
        return mul_nat(self, n)

    def __bool__(self):
        return bool(self.parts)

    def __repr__(self):
        return f"Term({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _pkey(level, arg):
    return (UNIT,) if level == UNIT else (level, arg.key)


def _coerce(x):
    if isinstance(x, Term):
        return x
    if isinstance(x, int):
        return nat(x)
    raise TypeError(f"cannot use {type(x).__name__} as a term")


ZERO = Term(())
ONE = Term(((UNIT, None, 1),))


def nat(n):
    if n < 0:
        raise DomainError("naturals are nonnegative")
    return Term(((UNIT, None, n),)) if n else ZERO


def psi(level, arg=ZERO):
    if level not in (0, 1, 2):
        raise DomainError(f"collapsing level must be 0, 1 or 2, got {level}")
    return Term(((level, _coerce(arg), 1),))


OMEGA = psi(0)
BIG_OMEGA = psi(1)
BIG_OMEGA2 = psi(2)


# -- structural helpers -------------------------------------------------------

def is_principal(a):
    return len(a.parts) == 1 and a.parts[0][2] == 1


def is_nat(a):
    return not a.parts or (len(a.parts) == 1 and a.parts[0][0] == UNIT)


def nat_value(a):
    if not a.parts:
        return 0
    if len(a.parts) == 1 and a.parts[0][0] == UNIT:
        return a.parts[0][2]
    raise DomainError(f"{to_text(a)} is not a natural number")


def split_nat(a):
    """Return (prefix, n) with a = prefix + n and prefix free of units."""
    if a.parts and a.parts[-1][0] == UNIT:
        return Term(a.parts[:-1]), a.parts[-1][2]
    return a, 0


def leading(a):
    """Leading principal of a nonzero term as (level, arg)."""
    level, arg, _ = a.parts[0]
    return level, arg


def principal_of(level, arg):
    return Term(((level, arg, 1),))


def last_principal(a):
    level, arg, _ = a.parts[-1]
    return principal_of(level, arg)


def drop_last(a):
    """Remove one copy of the last principal."""
    *init, (level, arg, count) = a.parts
    if count > 1:
        init.append((level, arg, count - 1))
    return Term(tuple(init))


def expand(a):
    """Principal summands with repetition, as (level, arg) pairs."""
    out = []
    for level, arg, count in a.parts:
        out.extend([(level, arg)] * count)
    return out


# -- order and arithmetic -----------------------------------------------------

def cmp(a, b):
    ka, kb = a.key, b.key
    return (ka > kb) - (ka < kb)


def compare(a, b):
    c = cmp(a, b)
    return Ordering.LESS if c < 0 else Ordering.GREATER if c > 0 else Ordering.EQUAL


def add(a, b):
    if not b.parts:
        return a
    if not a.parts:
        return b
    level, arg, count = b.parts[0]
    lead = _pkey(level, arg)
    parts = a.parts
    i = len(parts)
    while i and _pkey(*parts[i - 1][:2]) < lead:
        i -= 1
    keep = parts[:i]
    if keep and keep[-1][0] == level and keep[-1][1] == arg:
        return Term(keep[:-1] + ((level, arg, keep[-1][2] + count),) + b.parts[1:])
    return Term(keep + b.parts)


def mul_nat(a, n):
    if n < 0:
        raise DomainError("multiplier must be a natural number")
    if not a.parts:
        return ZERO
    if not is_principal(a):
        raise DomainError(f"multiplication needs a principal term, got {to_text(a)}")
    if n == 0:
        return ZERO
    level, arg, _ = a.parts[0]
    return Term(((level, arg, n),))


def norm(a):
    v = a._norm
    if v is None:
        v = 0
        for level, arg, count in a.parts:
            v += count * (1 if level == UNIT else 1 + norm(arg))
        a._norm = v
    return v


def max_coefficient(a):
    return nat(_mc(a))


def _mc(a):
    best = 0
    for level, arg, count in a.parts:
        best = max(best, count if level == UNIT else _mc(arg))
    return best


# -- enumeration --------------------------------------------------------------

ENUM_CAP = 9


def enumerate_terms(norm_bound, below=None, cap=ENUM_CAP):
    """All canonical terms of norm <= norm_bound (optionally < below), ascending."""
    if norm_bound < 0:
        raise DomainError("norm bound must be nonnegative")
    if norm_bound > cap:
        raise DomainError(f"norm bound {norm_bound} exceeds the safety cap {cap}")
    result = _enumerate(norm_bound)
    if below is not None:
        kb = below.key
        result = [t for t in result if t.key < kb]
    return result


_ENUM_CACHE = {}


def _enumerate(bound):
    hit = _ENUM_CACHE.get(bound)
    if hit is not None:
        return list(hit)
    by_norm = [[ZERO]]
    principals = []  # (norm, level, arg), sorted descending later
    for n in range(1, bound + 1):
        if n == 1:
            principals.append((1, UNIT, None))
            fresh_args = [ZERO]
        else:
            fresh_args = by_norm[n - 1]
        for arg in fresh_args:
            for level in (0, 1, 2):
                principals.append((n, level, arg))
        principals.sort(key=lambda p: _pkey(p[1], p[2]), reverse=True)
        layer = []
        _sums(principals, n, 0, [], layer)
        by_norm.append(layer)
    out = [t for layer in by_norm for t in layer]
    out.sort(key=lambda t: t.key)
    _ENUM_CACHE[bound] = tuple(out)
    return out


def _sums(principals, remaining, start, acc, out):
    if remaining == 0:
        out.append(Term(tuple(acc)))
        return
    for i in range(start, len(principals)):
        pn, level, arg = principals[i]
        if pn > remaining:
            continue
        if acc and acc[-1][0] == level and acc[-1][1] == arg:
            prev = acc[-1]
            acc[-1] = (level, arg, prev[2] + 1)
            _sums(principals, remaining - pn, i, acc, out)
            acc[-1] = prev
        else:
            acc.append((level, arg, 1))
            _sums(principals, remaining - pn, i, acc, out)
            acc.pop()


# -- text form ----------------------------------------------------------------

_SUGAR = {0: "w", 1: "Om", 2: "Om2"}


def to_text(a):
    if not a.parts:
        return "0"
    items = []
    for level, arg, count in a.parts:
        if level == UNIT:
            items.append(str(count))
            continue
        head = _SUGAR[level] if not arg.parts else f"p{level}({to_text(arg)})"
        items.append(head if count == 1 else f"{head}*{count}")
    return "+".join(items)


print_term = to_text


def parse(text):
    p = _Parser(text)
    t = p.term()
    p.skip()
    if p.i < len(p.s):
        raise ParseError(f"unexpected character {p.s[p.i]!r}", p.i)
    return t


class _Parser:
    def __init__(self, text):
        self.s = text
        self.i = 0

    def skip(self):
        s, i = self.s, self.i
        while i < len(s) and s[i].isspace():
            i += 1
        self.i = i

    def peek(self):
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, lit):
        self.skip()
        if not self.s.startswith(lit, self.i):
            raise ParseError(f"expected {lit!r}", self.i)
        self.i += len(lit)

    def digits(self):
        self.skip()
        start = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if start == self.i:
            raise ParseError("expected a number", start)
        return int(self.s[start:self.i]), start

    def term(self):
        self.skip()
        start = self.i
        if self.peek() == "0":
            value, _ = self.digits()
            if value == 0:
                if self.peek() in ("+", "*"):
                    raise ParseError("0 cannot be a summand", start)
                return ZERO
            self.i = start
        items = [self.item()]
        while self.peek() == "+":
            self.i += 1
            items.append(self.item())
        parts = []
        for level, arg, count, pos in items:
            if parts:
                plevel, parg, pcount = parts[-1]
                if plevel == level and parg == arg:
                    parts[-1] = (level, arg, pcount + count)
                    continue
                if _pkey(plevel, parg) < _pkey(level, arg):
                    raise NonCanonicalError("parts not nonincreasing", pos)
            parts.append((level, arg, count))
        return Term(tuple(parts))

    def item(self):
        c = self.peek()
        pos = self.i
        if c.isdigit():
            value, _ = self.digits()
            if value == 0:
                raise ParseError("0 cannot be a summand", pos)
            if self.peek() == "*":
                if value != 1:
                    raise ParseError("only principals take a multiplier", self.i)
                self.i += 1
                value = self.count()
            return UNIT, None, value, pos
        if c == "p":
            self.i += 1
            if self.i >= len(self.s) or self.s[self.i] not in "012":
                raise ParseError("expected p0, p1 or p2", pos)
            level = int(self.s[self.i])
            self.i += 1
            self.expect("(")
            arg = self.term()
            self.expect(")")
        elif self.s.startswith("Om2", self.i):
            self.i += 3
            level, arg = 2, ZERO
        elif self.s.startswith("Om", self.i):
            self.i += 2
            level, arg = 1, ZERO
        elif c == "w":
            self.i += 1
            level, arg = 0, ZERO
        else:
            raise ParseError(f"unexpected {c!r}" if c else "unexpected end of input", pos)
        count = 1
        if self.peek() == "*":
            self.i += 1
            count = self.count()
        return level, arg, count, pos

    def count(self):
        value, at = self.digits()
        if value < 1:
            raise ParseError("multiplier must be at least 1", at)
        return value


__all__ = ["Term", "Ordering", "ZERO", "ONE", "OMEGA", "BIG_OMEGA", "BIG_OMEGA2", "nat", "psi",
           "parse", "print_term", "to_text", "compare", "add", "mul_nat", "norm",
           "max_coefficient", "enumerate_terms"]
