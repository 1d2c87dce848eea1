"""Turning rewrite sequences and chains into innermost ones.

For a right-linear overlay TRS the constructions here are executable
versions of three facts:

* ``simulate_substitution``: if ``s`` is linear and ``s sigma ->* t`` with
  ``t`` a normal form, the bindings of ``sigma`` can be normalized to some
  ``sigma'`` with ``s sigma' ->i* t``.
* ``innermost_simulate``: ``s ->* t`` with ``t`` a normal form implies
  ``s ->i* t`` (for terminating ``s``), by linearizing ``s`` first.
* ``chain_to_innermost``: a minimal (P,R)-chain of length n can be replaced
  by an innermost one of the same length with the same head.

Every result is re-validated before it is returned; the recursions are
guarded by fuel rather than by the well-founded order that justifies them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import kernels
from .dp import ChainModel, ChainReport, ChainSegment, Minimality, enumerate_chains_ex, validate_chain
from .errors import FuelExhausted, NonOverlayContradiction, PreconditionViolated, SimulationError
from .rewriting import (
    FULL,
    INNERMOST,
    INNERMOST_LEFTMOST,
    Fuel,
    RewriteStep,
    Trace,
    Verdict,
    embed_trace,
    find_rewrite_path,
    is_normal_form,
    is_terminating_bounded,
    lift_bindings,
    normalize,
    project_trace,
    validate_trace,
)
from .termtypes import App, Term, Var, variables
from .terms import Substitution, is_linear, linearize
from .trs import Trs, collapsing_rules, find_inner_overlaps, non_right_linear_rules


class _Budget:
    """Shared step budget for one top-level call."""

    def __init__(self, fuel: Fuel):
        self.fuel = fuel
        self.left = fuel.max_steps

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise FuelExhausted(f"simulation exceeded {self.fuel.max_steps} steps")

    def normal_form(self, t: Term, R: Trs) -> Trace:
        res = normalize(t, R, INNERMOST_LEFTMOST, Fuel(max(self.left, 1), self.fuel.max_size))
        if not res.complete:
            raise FuelExhausted(f"could not normalize {t} within fuel", res.trace)
        self.spend(len(res.trace))
        return res.trace


@dataclass(frozen=True)
class SimulationResult:
    sigma_prime: Substitution
    innermost_trace: Trace
    # x -> trace from x sigma to x sigma'
    witnesses: Dict[str, Trace] = field(default_factory=dict, compare=False)


def _args_nf_or_raise(lhs: Term, inst: dict, R: Trs, what: str):
    for a in lhs.args:
        u = kernels.substitute(a, inst)
        if kernels.has_redex(u, R.lhs_index):
            raise NonOverlayContradiction(
                f"{what}: argument {u} of the instantiated left-hand side is not a normal form")


def _simulate(s: Term, sigma: dict, witness: Trace, R: Trs, budget: _Budget):
    """Core recursion.  Returns ``(sigma_prime, witnesses, innermost_trace)``.

    ``witness`` is a trace from ``s sigma`` to a normal form ``t``; ``s`` is
    linear.  ``sigma_prime`` is a dict over the variables of ``s``.
    """
    budget.spend()
    t = witness.final
    if type(s) is Var:
        return {s.name: t}, {s.name: witness}, Trace(t)

    root_at = next((k for k, st in enumerate(witness.steps) if not st.position), None)
    if root_at is None:
        return _simulate_args(s, sigma, witness, R, budget)

    # s sigma ->>e* l theta ->e r theta ->* t
    root = witness.steps[root_at]
    rule = R[root.rule_index]
    theta = {}
    if not kernels.match_into(rule.lhs, root.source, theta):
        raise SimulationError(f"witness step {root_at} does not match rule {rule}")
    r_vars = set(variables(rule.rhs))
    theta_r = {x: v for x, v in theta.items() if x in r_vars}
    rest = Trace(root.target, witness.steps[root_at + 1:])
    theta_r_p, wit, inner_r = _simulate(rule.rhs, theta_r, rest, R, budget)

    theta_p = dict(theta_r_p)
    wit = dict(wit)
    for x in variables(rule.lhs):
        if x in r_vars:
            continue
        nf = budget.normal_form(theta[x], R)
        theta_p[x] = nf.final
        wit[x] = nf
    _args_nf_or_raise(rule.lhs, theta_p, R, f"rule {rule}")

    ext = lift_bindings(rule.lhs, theta, wit)
    below = Trace(witness.initial, witness.steps[:root_at]).then(ext)
    sigma_p, wits, inner_args = _simulate_args(s, sigma, below, R, budget)

    lhs_inst = inner_args.final
    rhs_inst = kernels.substitute(rule.rhs, theta_p)
    if rhs_inst != inner_r.initial:
        raise SimulationError(f"rhs instance {rhs_inst} differs from {inner_r.initial}")
    step = RewriteStep((), root.rule_index, lhs_inst, rhs_inst, "R",
                       Substitution._trusted({x: theta_p[x] for x in variables(rule.lhs)}))
    inner = Trace(inner_args.initial, inner_args.steps + (step,) + inner_r.steps)
    return sigma_p, wits, inner


def _simulate_args(s: App, sigma: dict, below: Trace, R: Trs, budget: _Budget):
    """Componentwise case: ``below`` rewrites ``s sigma`` strictly below the root."""
    sigma_p = {}
    wits = {}
    inners = []
    for i, si in enumerate(s.args, 1):
        part = project_trace(below, i)
        sub = {x: sigma[x] for x in variables(si) if x in sigma}
        sp, w, inner = _simulate(si, sub, part, R, budget)
        sigma_p.update(sp)
        wits.update(w)
        inners.append(inner)
    cur = kernels.substitute(s, sigma_p)
    start = cur
    steps = []
    for i, inner in enumerate(inners, 1):
        emb = embed_trace(inner, cur, (i,))
        steps.extend(emb.steps)
        cur = emb.final
    return sigma_p, wits, Trace(start, tuple(steps))


def _check_witness(witness: Trace, start: Term, end: Term, R: Trs):
    if witness.initial != start:
        raise PreconditionViolated(f"witness starts at {witness.initial}, expected {start}")
    if witness.final != end:
        raise PreconditionViolated(f"witness ends at {witness.final}, expected {end}")
    check = validate_trace(witness, R, FULL)
    if not check:
        raise PreconditionViolated(f"witness is not a rewrite sequence: {check}")


def _require_right_linear(R: Trs):
    bad = non_right_linear_rules(R)
    if bad:
        raise PreconditionViolated(f"R not right-linear: rule {R[bad[0]]}")


def _require_terminating(t: Term, R: Trs, fuel: Fuel):
    res = is_terminating_bounded(t, R, fuel)
    if res.verdict is Verdict.NONTERMINATING:
        raise PreconditionViolated(f"{t} is not terminating (loops through {res.loop.final})")


def simulate_substitution(s: Term, sigma: Substitution, t: Term, R: Trs, fuel: Fuel = Fuel(),
                          witness: Optional[Trace] = None) -> SimulationResult:
    """Normalize ``sigma`` on ``Var(s)`` so that ``s sigma' ->i* t``.

    ``witness`` is a rewrite sequence from ``s sigma`` to ``t``; when omitted
    a shortest one is searched for within ``fuel``.  The termination
    hypothesis on ``s sigma`` is refuted only by a found loop; an
    inconclusive bounded check does not block the construction, which is
    fuel-guarded on its own.
    """
    if not is_linear(s):
        raise PreconditionViolated(f"{s} is not linear")
    _require_right_linear(R)
    if not is_normal_form(t, R):
        raise PreconditionViolated(f"{t} is not a normal form")
    sig = sigma.as_dict() if isinstance(sigma, Substitution) else dict(sigma)
    start = kernels.substitute(s, sig)
    if witness is None:
        witness = find_rewrite_path(start, t, R, fuel)
        if witness is None:
            raise PreconditionViolated(f"no rewrite sequence from {start} to {t} found within fuel")
    else:
        _check_witness(witness, start, t, R)
    _require_terminating(start, R, fuel)

    budget = _Budget(fuel)
    sub = {x: sig[x] for x in variables(s) if x in sig}
    sigma_p, wits, inner = _simulate(s, sub, witness, R, budget)

    result = SimulationResult(Substitution._trusted(sigma_p), inner, wits)
    _verify_simulation(s, sig, t, result, R)
    return result


def _verify_simulation(s, sigma, t, result: SimulationResult, R: Trs):
    inner = result.innermost_trace
    if inner.initial != kernels.substitute(s, result.sigma_prime.as_dict()) or inner.final != t:
        raise SimulationError("innermost trace has the wrong endpoints")
    check = validate_trace(inner, R, INNERMOST)
    if not check:
        raise SimulationError(f"constructed trace is not innermost: {check}")
    if not set(result.sigma_prime) <= set(variables(s)):
        raise SimulationError("sigma' binds variables outside Var(s)")
    for x in variables(s):
        w = result.witnesses.get(x)
        before = sigma.get(x, Var(x))
        after = result.sigma_prime.get(x, Var(x))
        if w is None or w.initial != before or w.final != after or not validate_trace(w, R, FULL):
            raise SimulationError(f"no valid witness for the binding of {x}")
        if not is_normal_form(after, R):
            raise SimulationError(f"binding of {x} is not a normal form")


def innermost_simulate(s: Term, t: Term, R: Trs, fuel: Fuel = Fuel(),
                       witness: Optional[Trace] = None) -> Trace:
    """An innermost rewrite sequence from ``s`` to the normal form ``t``.

    ``s`` is linearized with fresh variables ``y1, y2, ...`` mapped back to
    the original variables; since variables are normal forms the normalized
    substitution coincides with that renaming.
    """
    _require_right_linear(R)
    if not is_normal_form(t, R):
        raise PreconditionViolated(f"{t} is not a normal form")
    if witness is None:
        witness = find_rewrite_path(s, t, R, fuel)
        if witness is None:
            raise PreconditionViolated(f"no rewrite sequence from {s} to {t} found within fuel")
    else:
        _check_witness(witness, s, t, R)
    _require_terminating(s, R, fuel)

    lin, back = linearize(s)
    budget = _Budget(fuel)
    sigma_p, _, inner = _simulate(lin, back.as_dict(), witness, R, budget)
    if Substitution._trusted(sigma_p) != back:
        raise SimulationError("normalized renaming differs from the renaming")
    if inner.initial != s or inner.final != t:
        raise SimulationError("innermost trace has the wrong endpoints")
    check = validate_trace(inner, R, INNERMOST)
    if not check:
        raise SimulationError(f"constructed trace is not innermost: {check}")
    return inner


# --- chains -------------------------------------------------------------------

@dataclass(frozen=True)
class ChainConversionResult:
    innermost_chain: ChainModel
    final_substitution: Substitution
    report: Optional[ChainReport] = field(default=None, compare=False)


def _require_switch_hypotheses(P: Trs, R: Trs):
    coll = collapsing_rules(P)
    if coll:
        raise PreconditionViolated(f"P non-collapsing: rule {P[coll[0]]} collapses")
    U = R.union(P)
    bad = non_right_linear_rules(U)
    if bad:
        raise PreconditionViolated(f"R∪P right-linear: rule {U[bad[0]]} is not")
    overlaps = find_inner_overlaps(U)
    if overlaps:
        raise PreconditionViolated(f"R∪P overlay: {overlaps[0]}")


def decompose_last(chain: ChainModel) -> Tuple[Term, Substitution]:
    """``(u, sigma)`` with ``u = f(y1, ..., ym)`` fresh-linear and ``u sigma`` the chain's last term."""
    last = chain.last
    if type(last) is Var:
        raise PreconditionViolated("chain ends in a variable")
    taken = set(variables(last))
    names = []
    i = 1
    while len(names) < len(last.args):
        if f"y{i}" not in taken:
            names.append(f"y{i}")
        i += 1
    u = App(last.sym, tuple(Var(n) for n in names))
    return u, Substitution._trusted(dict(zip(names, last.args)))


def chain_to_innermost(chain: ChainModel, P: Trs, R: Trs, u: Optional[Term] = None,
                       sigma: Optional[Substitution] = None, fuel: Fuel = Fuel(),
                       sigma_prime: Optional[Substitution] = None,
                       check_output_minimality: bool = False) -> ChainConversionResult:
    """Innermost chain of the same length and head, ending in ``u sigma'``.

    ``chain`` must end in ``u sigma`` (trailing below-root R-steps allowed).
    When ``u`` is omitted the last term is split as ``f(y1..ym)`` with
    ``sigma`` binding the arguments.  When ``sigma_prime`` is omitted each
    binding of ``sigma`` is normalized innermost-leftmost.
    """
    _require_switch_hypotheses(P, R)
    if u is None:
        u, sigma = decompose_last(chain)
    elif sigma is None:
        raise ValueError("sigma is required when u is given")
    if type(u) is Var:
        raise PreconditionViolated("u must not be a variable")
    sig = sigma.as_dict() if isinstance(sigma, Substitution) else dict(sigma)
    if kernels.substitute(u, sig) != chain.last:
        raise PreconditionViolated(f"chain ends in {chain.last}, not in u sigma")
    shape = validate_chain(chain, P, R, ("shape",))
    if not shape.shape:
        raise PreconditionViolated("input chain is not a (P,R)-chain: " + "; ".join(shape.problems))
    minimal, loop = _chain_minimality(chain, R, fuel)
    if minimal is Minimality.FAILS:
        raise PreconditionViolated(f"input chain is not minimal: {loop.initial} loops")

    budget = _Budget(fuel)
    u_vars = variables(u)
    traces = {}
    target = {}
    for x in u_vars:
        before = sig.get(x, Var(x))
        if sigma_prime is None:
            tr = budget.normal_form(before, R)
        else:
            after = sigma_prime.get(x, Var(x))
            tr = find_rewrite_path(before, after, R, fuel)
            if tr is None:
                raise PreconditionViolated(f"no rewrite sequence from {before} to {after} for {x}")
            if not is_normal_form(after, R):
                raise PreconditionViolated(f"sigma' binding of {x} is not a normal form")
        traces[x] = tr
        target[x] = tr.final
    _args_nf_or_raise_pre(u, target, R)

    # pending: below-root trace from the last term of the remaining prefix to the target
    pending = Trace(chain.segments[-1].p_step.target if chain.segments else chain.head,
                    chain.tail).then(lift_bindings(u, sig, traces))
    pieces: List[Tuple[RewriteStep, Trace]] = []
    segments = list(chain.segments)
    while segments:
        seg = segments.pop()
        p_step = seg.p_step
        rule = P[p_step.rule_index]
        delta = {}
        if not kernels.match_into(rule.lhs, p_step.source, delta):
            raise SimulationError(f"P-step does not match {rule}")
        if pending.initial != p_step.target:
            raise SimulationError("pending trace does not start at the P-step target")

        r = rule.rhs
        delta_p = {}
        wits = {}
        inners = []
        for i, ri in enumerate(r.args, 1):
            part = project_trace(pending, i)
            sub = {x: delta[x] for x in variables(ri)}
            dp_i, w_i, inner_i = _simulate(ri, sub, part, R, budget)
            delta_p.update(dp_i)
            wits.update(w_i)
            inners.append(inner_i)
        r_vars = set(variables(r))
        for x in variables(rule.lhs):
            if x in r_vars:
                continue
            nf = budget.normal_form(delta[x], R)
            delta_p[x] = nf.final
            wits[x] = nf
        _args_nf_or_raise(rule.lhs, delta_p, R, f"pair {rule}")

        lhs_inst = kernels.substitute(rule.lhs, delta_p)
        rhs_inst = kernels.substitute(r, delta_p)
        new_p = RewriteStep((), p_step.rule_index, lhs_inst, rhs_inst, "P",
                            Substitution._trusted({x: delta_p[x] for x in variables(rule.lhs)}))
        cur = rhs_inst
        steps = []
        for i, inner in enumerate(inners, 1):
            emb = embed_trace(inner, cur, (i,))
            steps.extend(emb.steps)
            cur = emb.final
        pieces.append((new_p, Trace(rhs_inst, tuple(steps))))

        seg_start = segments[-1].p_step.target if segments else chain.head
        pending = Trace(seg_start, seg.r_steps).then(lift_bindings(rule.lhs, delta, wits))

    # base case: head ->>e* target, simulated argument by argument
    head = chain.head
    head_steps = []
    cur = head
    for i, a in enumerate(getattr(head, "args", ()), 1):
        part = project_trace(pending, i)
        inner = innermost_simulate(a, part.final, R, fuel, witness=part)
        emb = embed_trace(inner, cur, (i,))
        head_steps.extend(emb.steps)
        cur = emb.final

    out_segments = []
    r_steps = tuple(head_steps)
    for new_p, tail in reversed(pieces):
        out_segments.append(ChainSegment(r_steps, new_p))
        r_steps = tail.steps
    result_chain = ChainModel(head, tuple(out_segments), r_steps)

    checks = ("shape", "innermost", "minimal") if check_output_minimality else ("shape", "innermost")
    report = validate_chain(result_chain, P, R, checks, fuel)
    if not (report.shape and report.innermost):
        raise SimulationError("converted chain failed validation:\n" + str(report))
    final = kernels.substitute(u, target)
    if result_chain.length != chain.length or result_chain.head != chain.head or result_chain.last != final:
        raise SimulationError("converted chain has the wrong length, head or end")
    return ChainConversionResult(result_chain, Substitution._trusted(target), report)


def _args_nf_or_raise_pre(u: Term, target: dict, R: Trs):
    for a in u.args:
        v = kernels.substitute(a, target)
        if kernels.has_redex(v, R.lhs_index):
            raise PreconditionViolated(f"proper subterm {v} of u sigma' is not a normal form")


def _chain_minimality(chain, R, fuel):
    from .dp import chain_minimality

    return chain_minimality(chain, R, fuel)


# --- the contradiction harness --------------------------------------------------

@dataclass
class RefutationReport:
    status: str  # "refuted", "no-chain", "inconclusive", "precondition"
    message: str
    full_chain: Optional[ChainModel] = None
    innermost_chain: Optional[ChainModel] = None

    def __str__(self):
        text = f"{self.status}: {self.message}"
        if self.innermost_chain is not None:
            text += "\n" + str(self.innermost_chain)
        return text


def refute_longer_innermost_chain(s1: Term, P: Trs, R: Trs, n: int, fuel: Fuel = Fuel(),
                                  limit: Optional[int] = 10_000) -> RefutationReport:
    """Exhibit an innermost chain of length ``n + 1`` from ``s1`` if a full one exists.

    Such a chain contradicts any claim that ``n`` is the maximal length of
    innermost minimal chains starting at ``s1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    try:
        _require_switch_hypotheses(P, R)
    except PreconditionViolated as e:
        return RefutationReport("precondition", str(e))
    chains, complete = enumerate_chains_ex(P, R, s1, n + 1, fuel, limit)
    longest = [c for c in chains if c.length == n + 1]
    inconclusive = not complete
    for c in longest:
        minimal, _ = _chain_minimality(c, R, fuel)
        if minimal is Minimality.FAILS:
            continue
        try:
            res = chain_to_innermost(c, P, R, fuel=fuel)
        except FuelExhausted:
            inconclusive = True
            continue
        return RefutationReport(
            "refuted", f"innermost chain of length {n + 1} from {s1}", c, res.innermost_chain)
    if inconclusive:
        return RefutationReport("inconclusive", f"no convertible chain of length {n + 1} within fuel")
    return RefutationReport("no-chain", f"no full chain of length {n + 1} from {s1}")
