"""Command-line front end.

Exit status: 0 success, 1 domain error or bad usage, 2 budget exhausted,
3 malformed term text, 130 interrupted.
"""
import argparse
import importlib
import json
import os
import sys

from . import assign as _assign
from . import base_change as _bc
from . import fundamental as _fund
from . import gap as _gap
from . import goodstein as _good
from . import normal_form as _nf
from . import terms as _terms
from .budget import DEFAULT_MAX_BITS, DEFAULT_MAX_STEPS, Budget
from .errors import BudgetExceeded, DomainError, ParseError
from .goodstein import dumps_record, encode_int

# The package re-exports a function named hardy, which shadows the submodule.
_hardy = importlib.import_module(".hardy", __package__)

ENV_MAX_STEPS = "COLLAPSE_MAX_STEPS"
ENV_MAX_BITS = "COLLAPSE_MAX_BITS"
RECURSION_LIMIT = 20000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _term(text):
    return _terms.parse(text)


def _ctx(text):
    return _gap.parse_context(text)


def _nat(text):
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise UsageError(f"expected a natural number, got {text!r}")
    return v


def _show(x):
    """Text form of a result value."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, _terms.Term):
        return _terms.to_text(x)
    if isinstance(x, _gap.Context):
        return _gap.context_text(x)
    if isinstance(x, _terms.Ordering):
        return str(x)
    if isinstance(x, _fund.Cofinality):
        return x.name
    return str(x)


def _record_value(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return encode_int(x)
    return _show(x)


def _tree(t):
    return [{"level": "1" if level == _terms.UNIT else level, "count": count,
             **({} if arg is None else {"arg": _tree(arg)})}
            for level, arg, count in t.parts]


def _gset_text(s):
    return "{" + ", ".join(_terms.to_text(t) for t in s.sorted()) + "}"


def _case_fields(case):
    out = {"case": type(case).__name__}
    for name, value in vars(case).items():
        out[name] = _record_value(value)
    return out


# -- handlers: each returns (text lines, record dicts) --------------------------

def _single(op, value):
    return [_show(value)], [{"op": op, "result": _record_value(value)}]


def h_parse(a, budget):
    t = _term(a.term)
    return [json.dumps(_tree(t))], [{"op": "parse", "result": _terms.to_text(t),
                                     "tree": _tree(t)}]


def h_print(a, budget):
    return _single("print", _terms.print_term(_term(a.term)))


def h_cmp(a, budget):
    return _single("cmp", _terms.compare(_term(a.a), _term(a.b)))


def h_add(a, budget):
    return _single("add", _terms.add(_term(a.a), _term(a.b)))


def h_mul(a, budget):
    return _single("mul", _terms.mul_nat(_term(a.a), _nat(a.n)))


def h_norm(a, budget):
    return _single("norm", _terms.norm(_term(a.term)))


def h_mc(a, budget):
    return _single("mc", _terms.max_coefficient(_term(a.term)))


def h_ot(a, budget):
    return _single("ot-check", _nf.is_ot(_term(a.term)))


def h_ot0(a, budget):
    return _single("ot0-check", _nf.is_ot0(_term(a.term)))


def h_g0(a, budget):
    s = _nf.g0(_term(a.term))
    return [_gset_text(s)], [{"op": "g0", "result": [_terms.to_text(t) for t in s.sorted()]}]


def h_g1(a, budget):
    s = _nf.g1(_term(a.term))
    return [_gset_text(s)], [{"op": "g1", "result": [_terms.to_text(t) for t in s.sorted()]}]


def h_tp(a, budget):
    return _single("tp", _fund.tp(_term(a.term)))


def h_fs(a, budget):
    return _single("fs", _fund.fs_step(_term(a.term), _term(a.index), budget))


def h_descend(a, budget):
    d = _fund.iter_descent(_term(a.term), _nat(a.start), _nat(a.steps), budget)
    return ([f"{_show(d.value)} (next index {d.next_index})"],
            [{"op": "descend", "result": _show(d.value), "next_index": d.next_index,
              "reached_zero": d.reached_zero}])


def h_step_le(a, budget):
    return _single("step-le", _fund.step_le(_term(a.a), _term(a.b), _nat(a.k), budget))


def h_bachmann(a, budget):
    return _single("bachmann", _fund.check_bachmann(_term(a.a), _term(a.b), _nat(a.x), budget))


def h_majorize(a, budget):
    return _single("majorize", _fund.verify_majorize([_term(t) for t in a.terms], budget))


def h_fgh(a, budget):
    return _single("fgh", _fund.fgh_eval(_term(a.term), _nat(a.n), budget))


def h_hardy(a, budget):
    return _single("hardy", _hardy.hardy(_term(a.term), _nat(a.k), budget))


def h_hardy_capped(a, budget):
    v = _hardy.hardy_capped(_term(a.term), _nat(a.k), _nat(a.cap), budget)
    return [("above " + a.cap) if v is None else str(v)], [
        {"op": "hardy-capped", "result": None if v is None else encode_int(v)}]


def h_single_step(a, budget):
    return _single("single-step", _fund.single_step_lt_n(_term(a.a), _term(a.b), _nat(a.n),
                                                          budget))


def h_ladder(a, budget):
    return _single("ladder", _hardy.ladder(_term(a.term), _nat(a.b), _nat(a.k), budget))


def _knf_out(op, d):
    return [str(d)], [{"op": op, "knf": _good.knf_record(d), "k": d.k}]


def h_knf(a, budget):
    return _knf_out("knf", _hardy.knf_decompose(_nat(a.m), _nat(a.k), budget))


def h_knf_oracle(a, budget):
    return _knf_out("knf-oracle", _hardy.knf_oracle(_nat(a.m), _nat(a.k), budget))


def h_knf_value(a, budget):
    k = _nat(a.k)
    if a.literal is not None:
        d = _hardy.KNF.lit(_nat(a.literal), k)
    else:
        if a.alpha is None or a.p is None or a.q is None:
            raise UsageError("knf-value needs ALPHA P Q or --literal")
        d = _hardy.KNF(_term(a.alpha), _nat(a.p), _nat(a.q), k)
    return _single("knf-value", _hardy.knf_value(d, budget))


def h_bc_nat(a, budget):
    return _single("bc-nat", _bc.bc_nat(_nat(a.m), _nat(a.k), budget))


def h_bc_ord(a, budget):
    return _single("bc-ord", _bc.bc_ord(_term(a.term), _nat(a.k), budget))


def h_bc_context(a, budget):
    return _single("bc-context", _bc.bc_context(_ctx(a.context), _nat(a.k), budget))


def h_assign(a, budget):
    k = _nat(a.k)
    if a.value.strip().isdigit():
        return _single("assign", _assign.assign_nat(int(a.value), k, budget))
    return _single("assign", _assign.assign_ord(_term(a.value), k, budget))


def h_assign_context(a, budget):
    return _single("assign-context", _assign.assign_context(_ctx(a.context), _nat(a.k), budget))


def h_subst(a, budget):
    return _single("subst", _gap.substitute(_ctx(a.context), _term(a.term)))


def h_truncate(a, budget):
    return _single("truncate", _gap.truncate(_ctx(a.context)))


def h_nesting_free(a, budget):
    return _single("nesting-free", _gap.is_psi0_nesting_free(_ctx(a.context)))


def h_classify(a, budget):
    case = _gap.classify_gap(_term(a.a), _term(a.b), budget)
    fields = _case_fields(case)
    text = fields["case"] + "".join(f" {k}={v}" for k, v in fields.items() if k != "case")
    return [text], [{"op": "classify-gap", **fields}]


def h_enum(a, budget):
    below = _term(a.below) if a.below else None
    ts = _terms.enumerate_terms(_nat(a.n), below=below)
    return [_terms.to_text(t) for t in ts], [{"op": "enum", "result": _terms.to_text(t)}
                                            for t in ts]


def h_ell_tower(a, budget):
    return _single("ell-tower", _good.ell_tower(_nat(a.n), budget))


def _run_with_trace(a, budget, out):
    """Run the process, streaming trace records so an interrupt keeps them."""
    fh = open(a.trace, "w", encoding="utf-8", newline="\n") if a.trace else None
    entries = []
    try:
        def sink(e):
            entries.append(e)
            if fh:
                fh.write(dumps_record(_good.entry_record(e)) + "\n")
                fh.flush()
        return _good.run(_nat(a.ell), a.max_steps, budget, on_entry=sink)
    except KeyboardInterrupt:
        last = entries[-1].k if entries else None
        out.write(f"interrupted after k={last}\n")
        out.flush()
        raise
    finally:
        if fh:
            fh.close()


def _run_summary(r):
    if r.terminated:
        return f"terminated k={r.final_k}"
    return f"not terminated after k={r.entries[-1].k}"


def h_goodstein_run(a, budget, out=sys.stdout):
    r = _run_with_trace(a, budget, out)
    records = [_good.entry_record(e) for e in r.entries]
    records.append({"op": "goodstein run", "terminated": r.terminated, "final_k": r.final_k})
    return [_run_summary(r)], records


def h_goodstein_verify(a, budget, out=sys.stdout):
    r = _run_with_trace(a, budget, out)
    ok = _good.verify_descent(r, budget)
    return ([f"{_run_summary(r)}; descent {'verified' if ok else 'FAILED'}"],
            [{"op": "goodstein verify", "terminated": r.terminated, "final_k": r.final_k,
              "descent": ok}])


# name -> (handler, positional argument spec, library operations it exposes)
COMMANDS = {
    "parse": (h_parse, ["term"], ["parse"]),
    "print": (h_print, ["term"], ["print_term"]),
    "cmp": (h_cmp, ["a", "b"], ["compare"]),
    "add": (h_add, ["a", "b"], ["add"]),
    "mul": (h_mul, ["a", "n"], ["mul_nat"]),
    "norm": (h_norm, ["term"], ["norm"]),
    "mc": (h_mc, ["term"], ["max_coefficient"]),
    "ot-check": (h_ot, ["term"], ["is_ot"]),
    "ot0-check": (h_ot0, ["term"], ["is_ot0"]),
    "g0": (h_g0, ["term"], ["g0"]),
    "g1": (h_g1, ["term"], ["g1"]),
    "tp": (h_tp, ["term"], ["tp"]),
    "fs": (h_fs, ["term", "index"], ["fs_step"]),
    "descend": (h_descend, ["term", "start", "steps"], ["iter_descent"]),
    "step-le": (h_step_le, ["a", "b", "k"], ["step_le"]),
    "single-step": (h_single_step, ["a", "b", "n"], ["single_step_lt_n"]),
    "bachmann": (h_bachmann, ["a", "b", "x"], ["check_bachmann"]),
    "majorize": (h_majorize, ["terms+"], ["verify_majorize"]),
    "fgh": (h_fgh, ["term", "n"], ["fgh_eval"]),
    "hardy": (h_hardy, ["term", "k"], ["hardy"]),
    "hardy-capped": (h_hardy_capped, ["term", "k", "cap"], ["hardy_capped"]),
    "ladder": (h_ladder, ["term", "b", "k"], ["ladder"]),
    "knf": (h_knf, ["m", "k"], ["knf_decompose"]),
    "knf-oracle": (h_knf_oracle, ["m", "k"], ["knf_oracle"]),
    "knf-value": (h_knf_value, ["k", "alpha?", "p?", "q?"], ["knf_value"]),
    "bc-nat": (h_bc_nat, ["m", "k"], ["bc_nat"]),
    "bc-ord": (h_bc_ord, ["term", "k"], ["bc_ord"]),
    "bc-context": (h_bc_context, ["context", "k"], ["bc_context"]),
    "assign": (h_assign, ["value", "k"], ["assign_nat", "assign_ord"]),
    "assign-context": (h_assign_context, ["context", "k"], ["assign_context"]),
    "subst": (h_subst, ["context", "term"], ["substitute"]),
    "truncate": (h_truncate, ["context"], ["truncate"]),
    "nesting-free": (h_nesting_free, ["context"], ["is_psi0_nesting_free"]),
    "classify-gap": (h_classify, ["a", "b"], ["classify_gap"]),
    "enum": (h_enum, ["n"], ["enumerate_terms"]),
    "ell-tower": (h_ell_tower, ["n"], ["ell_tower"]),
    "goodstein run": (h_goodstein_run, ["ell"], ["run", "goodstein_step"]),
    "goodstein verify": (h_goodstein_verify, ["ell"], ["verify_descent"]),
}


def _common(p, goodstein=False):
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--max-bits", type=int, default=None)
    if goodstein:
        p.add_argument("--max-steps", type=int, default=100,
                       help="number of Goodstein steps to run (default 100)")
        p.add_argument("--budget-steps", type=int, default=None,
                       help="per-step evaluation budget")
        p.add_argument("--trace", default=None, help="write JSONL trace records here")
    else:
        p.add_argument("--max-steps", type=int, default=None)


def _add_positionals(p, spec):
    for name in spec:
        if name.endswith("+"):
            p.add_argument(name[:-1], nargs="+")
        elif name.endswith("?"):
            p.add_argument(name[:-1], nargs="?")
        else:
            p.add_argument(name)


def build_parser():
    parser = _Parser(prog="collapse-goodstein",
                     description="Ordinal notation, Hardy hierarchy and Goodstein toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    gsub = None
    for name, (_, spec, _ops) in COMMANDS.items():
        if name.startswith("goodstein "):
            if gsub is None:
                g = sub.add_parser("goodstein", help="Goodstein process")
                gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
            p = gsub.add_parser(name.split()[1])
            _common(p, goodstein=True)
        else:
            p = sub.add_parser(name)
            _common(p)
        _add_positionals(p, spec)
        if name == "knf-value":
            p.add_argument("--literal", default=None)
        if name == "enum":
            p.add_argument("--below", default=None)
        p.set_defaults(command_name=name)
    return parser


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer") from None


def resolve_budget(args):
    if hasattr(args, "budget_steps"):
        steps = args.budget_steps
    else:
        steps = args.max_steps
    if steps is None:
        steps = _env_int(ENV_MAX_STEPS) or DEFAULT_MAX_STEPS
    bits = args.max_bits if args.max_bits is not None else (_env_int(ENV_MAX_BITS)
                                                           or DEFAULT_MAX_BITS)
    try:
        return Budget(steps, bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    if sys.getrecursionlimit() < RECURSION_LIMIT:
        sys.setrecursionlimit(RECURSION_LIMIT)
    try:
        args = build_parser().parse_args(argv)
        budget = resolve_budget(args)
        handler = COMMANDS[args.command_name][0]
        if args.command_name.startswith("goodstein "):
            lines, records = handler(args, budget, out)
        else:
            lines, records = handler(args, budget)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return 3
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return 1
    except KeyboardInterrupt:
        err.write("interrupted\n")
        return 130
    if args.format == "records":
        for rec in records:
            out.write(dumps_record(rec) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return 0


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
