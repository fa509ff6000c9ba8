"""The Goodstein process driven by k-normal forms, with its ordinal trace."""
import json
from dataclasses import dataclass, field
from typing import List, Optional

from .assign import assign_nat
from .base_change import bc_nat
from .budget import as_meter
from .errors import BudgetExceeded, DomainError
from .fundamental import fs_step
from .hardy import KNF, hardy, knf_decompose
from .terms import Term, nat, to_text

# Values with more digits than this are written to traces in abbreviated form.
TRACE_DIGIT_LIMIT = 60
TRACE_PREFIX_DIGITS = 20


@dataclass(frozen=True)
class TraceEntry:
    k: int
    base: int
    value: int
    knf: KNF
    ordinal: Term


@dataclass
class RunResult:
    entries: List[TraceEntry] = field(default_factory=list)
    terminated: bool = False
    final_k: Optional[int] = None

    @property
    def values(self):
        return [e.value for e in self.entries]


def goodstein_step(value, k, budget=None):
    """G_{k+1} from G_k: change base k+2 to k+3, then subtract one."""
    if value < 0 or k < 0:
        raise DomainError("value and step index must be nonnegative")
    if value == 0:
        return 0
    return bc_nat(value, k + 2, budget) - 1


def _entry(value, k, budget):
    base = k + 2
    meter = as_meter(budget)
    return TraceEntry(k, base, value, knf_decompose(value, base, meter),
                      assign_nat(value, base, meter))


def run(ell, max_steps=100, budget=None, on_entry=None):
    """Iterate from G_0 = ell until the value hits 0 or max_steps steps pass.

    Each step gets a fresh meter from ``budget``. When one runs out, the
    raised BudgetExceeded carries the trace so far in ``partial``.
    ``on_entry`` is called with every entry as soon as it is recorded.
    """
    if ell < 0:
        raise DomainError("the starting value must be a natural number")
    result = RunResult()
    value, k = ell, 0
    try:
        while True:
            entry = _entry(value, k, budget)
            result.entries.append(entry)
            if on_entry is not None:
                on_entry(entry)
            if value == 0:
                result.terminated, result.final_k = True, k
                return result
            if k >= max_steps:
                return result
            value = goodstein_step(value, k, budget)
            k += 1
    except BudgetExceeded as exc:
        raise BudgetExceeded(f"step {k}: {exc}", partial=result) from None


def verify_descent(r, budget=None):
    """Ordinals strictly decrease and never drop below O_k[k+2]."""
    entries = r.entries
    for cur, nxt in zip(entries, entries[1:]):
        if cur.value == 0:
            continue
        if nxt.k != cur.k + 1 or not nxt.ordinal < cur.ordinal:
            return False
        if not fs_step(cur.ordinal, cur.k + 2, budget) <= nxt.ordinal:
            return False
    return True


def ell_tower(n, budget=None):
    """l_0 = 0 and l_{i+1} = H_{l_i}(2)."""
    if n < 0:
        raise DomainError("tower height must be nonnegative")
    meter = as_meter(budget)
    ell = 0
    for _ in range(n):
        ell = hardy(nat(ell), 2, meter)
    return ell


# -- trace records ------------------------------------------------------------

def encode_int(v):
    s = str(v)
    if len(s) <= TRACE_DIGIT_LIMIT:
        return s
    return {"digits": len(s), "prefix": s[:TRACE_PREFIX_DIGITS]}


def knf_record(d):
    if d.is_literal:
        return {"literal": d.literal}
    return {"alpha": to_text(d.alpha), "p": d.p, "q": encode_int(d.q)}


def entry_record(e):
    return {"k": e.k, "base": e.base, "value": encode_int(e.value),
            "knf": knf_record(e.knf), "ordinal": to_text(e.ordinal)}


def dumps_record(rec):
    return json.dumps(rec, ensure_ascii=False, separators=(",", ":"))


def write_trace(r, fh):
    """Write one JSON record per entry to an open text file."""
    for e in r.entries:
        fh.write(dumps_record(entry_record(e)) + "\n")


__all__ = ["TraceEntry", "RunResult", "goodstein_step", "run", "verify_descent",
           "ell_tower", "write_trace", "entry_record"]
