"""Exact ordinal notations below the two-step collapse, Hardy functions and
the Goodstein process they drive."""
from .assign import assign_context, assign_nat, assign_ord
from .base_change import bc_context, bc_nat, bc_ord
from .budget import DEFAULT_BUDGET, Budget
from .errors import (BudgetExceeded, ClassificationDefect, ContextError, DomainError,
                     NonCanonicalError, OrdinalError, ParseError)
from .fundamental import (Cofinality, check_bachmann, fgh_eval, fs_step, iter_descent,
                          single_step_lt_n, step_le, tp, verify_majorize)
from .gap import (BelowFirst, Context, NatHole, OmegaLimit, OmegaUncountable, PsiMultiple,
                  SuccessorOf, classify_gap, hole, is_psi0_nesting_free, parse_context,
                  substitute, truncate)
from .goodstein import (RunResult, TraceEntry, ell_tower, goodstein_step, run, verify_descent,
                        write_trace)
from .hardy import KNF, hardy, hardy_capped, knf_decompose, knf_oracle, knf_value, ladder
from .normal_form import g0, g1, is_ot, is_ot0
from .terms import (BIG_OMEGA, BIG_OMEGA2, OMEGA, ONE, ZERO, Ordering, Term, add, compare,
                    enumerate_terms, max_coefficient, mul_nat, nat, norm, parse, print_term,
                    psi, to_text)

__version__ = "0.1.0"
