"""Exceptional ideal sets of a dense H <= SL(n, P) and its congruence-image table.

Each procedure proposes candidate ideals from an explicit element of H (a
commutator, a power of an infinite-order element, a discriminant) and then
confirms a candidate only after an exact computation with the finite image
phi_I(H).
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm

from .congruence import reduce_group, residue_field_of
from .fingrp import DEFAULT_CAP, EnumerationCap, FiniteMatGroup, find_invariant_form
from .ideals import common_ideals, ideals_up_to_norm, pi_of
from .linalg import PY_OPS, EchelonSpan
from .matgroup import (GroupError, Inconclusive, _lengths, _trace_ring_from, adjoint_rep,
                       basis_algebra_closure, basis_env_algebra, derived_normal_gens,
                       env_algebra_dim, gram_discriminant, infinite_order_element,
                       is_abs_irreducible, iterated_commutator, random_word, trace_ring)
from .nfmat import (commutator, entries, is_identity, mat_identity, mat_inverse, mat_mul,
                    mat_power, mat_sub, mat_trace)

EXPONENT_BOUNDS = {2: 10, 3: 21, 5: 60, 7: 84, 11: 253}


def c6_c9_exponent_bound(q):
    """Bound s on exponents of C6 and C9 groups in SL(q, .) for the tabulated primes."""
    if q not in EXPONENT_BOUNDS:
        raise ValueError(f"no tabulated exponent bound for degree {q}; the general bound "
                         "is a function of the degree and must be supplied explicitly")
    return EXPONENT_BOUNDS[q]


def threads():
    try:
        return max(1, int(os.environ.get("DENSESL_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# per-ideal images

class IdealImage:
    """phi_I(H) with the tests used to confirm candidates, computed lazily."""

    def __init__(self, H, I, cap=DEFAULT_CAP):
        self.ideal = I
        self.group = FiniteMatGroup(residue_field_of(I), H.n, reduce_group(H, I), cap)

    @cached_property
    def full(self):
        return self.group.is_full_sl()

    @cached_property
    def derived_length(self):
        return self.group.derived_length()

    @cached_property
    def max_order(self):
        return self.group.max_element_order()

    @cached_property
    def exponent(self):
        return self.group.exponent()

    @cached_property
    def abs_irreducible(self):
        return self.group.is_abs_irreducible()

    @cached_property
    def c5(self):
        return self.group.is_c5_group()

    @cached_property
    def monomial(self):
        return self.abs_irreducible and self.group.is_monomial()

    def record(self):
        """Evidence computed so far (plus order and index, which are cheap)."""
        rec = {"order": self.group.order, "index": self.group.index_in_sl(), "full": self.full}
        for key in ("derived_length", "max_order", "exponent", "abs_irreducible", "c5",
                    "monomial"):
            if key in self.__dict__:
                rec[key] = self.__dict__[key]
        if "trace_subfield" in self.group.__dict__:
            rec["trace_subfield"] = self.group.trace_subfield
        return rec


class Context:
    """Shared per-run state: the group, seed, caps and cached ideal images."""

    def __init__(self, H, seed=1, cap=DEFAULT_CAP, budget=50):
        self.H = H
        self.seed = seed
        self.cap = cap
        self.budget = budget
        self._images = {}

    def image(self, I):
        if I not in self._images:
            self._images[I] = IdealImage(self.H, I, self.cap)
        return self._images[I]


def _ctx(H, ctx, seed=1, cap=DEFAULT_CAP):
    return ctx if ctx is not None else Context(H, seed, cap)


@dataclass
class PiReport:
    procedure: str
    witness: dict = field(default_factory=dict)
    candidates: list = field(default_factory=list)
    confirmed: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    inconclusive_flags: list = field(default_factory=list)
    verdict: str | None = None
    # the witness as field elements / matrices; not serialized
    witness_elements: dict = field(default_factory=dict, repr=False)

    @property
    def inconclusive(self):
        return bool(self.inconclusive_flags)

    def to_json(self):
        out = {
            "procedure": self.procedure,
            "witness": self.witness,
            "candidates": [_ideal_json(I) for I in self.candidates],
            "confirmed": [_ideal_json(I) for I in self.confirmed],
            "evidence": [{"ideal": _ideal_json(I), **self.evidence[I]} for I in self.confirmed],
            "inconclusive_flags": list(self.inconclusive_flags),
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict
        return out


def _ideal_json(I):
    return {**I.to_json(), "label": I.label()}


def _nonidentity_entries(g):
    n = len(g)
    F = g[0][0].field
    return [x for x in entries(mat_sub(g, mat_identity(F, n))) if not x.is_zero()]


def _mu_flag(H):
    if H.mu == 1:
        return []
    return [f"ideals above primes dividing mu={H.mu} are outside the scope of reduction"]


def _confirm(report, ctx, test):
    """Run the finite test on every candidate (optionally in parallel)."""
    def run(I):
        img = ctx.image(I)
        try:
            ok = test(img)
        except EnumerationCap as exc:
            return I, None, str(exc)
        return I, ok, None

    cands = sorted(report.candidates)
    # images are cached per ideal, so make sure each is created before threading
    for I in cands:
        ctx.image(I)
    workers = min(threads(), max(1, len(cands)))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, cands))
    else:
        results = [run(I) for I in cands]
    for I, ok, err in results:
        if err is not None:
            report.inconclusive_flags.append(f"{I.label()}: {err}")
        elif ok:
            report.confirmed.append(I)
            report.evidence[I] = ctx.image(I).record()
    return report


# ---------------------------------------------------------------------------
# the procedures

def primes_for_abs_irreducible(H, ctx=None):
    ctx = _ctx(H, ctx)
    A, _ = basis_env_algebra(H.gens, "P")
    if len(A) != H.n * H.n:
        raise GroupError("input not absolutely irreducible")
    delta = gram_discriminant(A)
    report = PiReport("abs_irreducible", witness={"discriminant": str(delta)},
                      inconclusive_flags=_mu_flag(H))
    report.candidates = sorted(pi_of(delta, H.field, H.mu))
    return _confirm(report, ctx, lambda img: not img.full and not img.abs_irreducible)


def primes_for_monomial(H, seed=1, ctx=None):
    ctx = _ctx(H, ctx, seed)
    n = H.n
    if n not in (2, 3, 5, 7, 11, 13) and not all(n % d for d in range(2, n)):
        raise GroupError("the monomial test needs prime degree")
    e = lcm(*range(1, n + 1))
    report = PiReport("monomial", witness={"e": e}, inconclusive_flags=_mu_flag(H))
    rng = random.Random(seed)
    c = None
    for length in _lengths(ctx.budget):
        g = random_word(H, rng, length)
        h = random_word(H, rng, length)
        c = commutator(mat_power(g, e), mat_power(h, e))
        if not is_identity(c):
            break
        c = None
    if c is None:
        report.inconclusive_flags.append("no g, h with [g^e, h^e] != 1 found within budget")
        return report
    report.candidates = sorted(common_ideals(_nonidentity_entries(c), H.field, H.mu))
    return _confirm(report, ctx, lambda img: not img.full and img.monomial)


def primes_for_solvable(H, l, seed=1, ctx=None):
    ctx = _ctx(H, ctx, seed)
    report = PiReport(f"solvable(l={l})", witness={"depth": l + 1},
                      inconclusive_flags=_mu_flag(H))
    try:
        g = iterated_commutator(H, l, seed, ctx.budget)
    except Inconclusive as exc:
        report.inconclusive_flags.append(str(exc))
        return report
    report.candidates = sorted(common_ideals(_nonidentity_entries(g), H.field, H.mu))
    return _confirm(report, ctx, lambda img: not img.full and img.derived_length is not None
                    and img.derived_length <= l)


def primes_for_order(H, s, seed=1, ctx=None):
    ctx = _ctx(H, ctx, seed)
    report = PiReport(f"order(s={s})", witness={"s": s}, inconclusive_flags=_mu_flag(H))
    try:
        h = infinite_order_element(H, seed, ctx.budget)
    except Inconclusive as exc:
        report.inconclusive_flags.append(str(exc))
        return report
    report.witness["h"] = [[str(x) for x in row] for row in h]
    cands = set()
    power = h
    for _ in range(s):
        cands |= common_ideals(_nonidentity_entries(power), H.field, H.mu)
        power = mat_mul(power, h)
    report.candidates = sorted(cands)
    return _confirm(report, ctx, lambda img: not img.full and img.max_order <= s)


def _field_rank(elements):
    span = EchelonSpan(PY_OPS)
    for a in elements:
        span.add(list(a.coeffs))
    return span.dim


def primes_for_subfields(H, ctx=None):
    """Pi_5: verdict INFINITE when the traces lie in a proper subfield, else FINITE."""
    ctx = _ctx(H, ctx)
    if H.mu != 1:
        raise GroupError("subfield analysis needs integral entries (R = O, mu = 1)")
    F = H.field
    tr = trace_ring(H)
    report = PiReport("subfields", witness={"trace_span_index": _idx(tr.span_index),
                                            "trace_ring_index": _idx(tr.unital_index)})
    if _field_rank(tr.traces + [F.one()]) < F.m:
        report.verdict = "INFINITE"
        return report
    A, _ = basis_algebra_closure(derived_normal_gens(H), H.gens)
    if env_algebra_dim(A, "P") != H.n * H.n:
        raise GroupError("[H,H] is not absolutely irreducible; the subfield analysis "
                         "needs an absolutely irreducible derived subgroup")
    dtr = _trace_ring_from([mat_trace(a) for a in A], F)
    B = [F.from_integral_basis(row) for row in dtr.unital.basis]
    if len(B) < F.m:
        report.verdict = "INFINITE"
        return report
    delta = F.trace_form_det(B)
    report.witness["derived_trace_ring_index"] = _idx(dtr.unital_index)
    report.witness["discriminant"] = str(delta)
    report.verdict = "FINITE"
    report.candidates = sorted(pi_of(F(delta), F))
    return _confirm(report, ctx, lambda img: img.c5)


def _idx(x):
    return x if isinstance(x, int) else "inf"


def primes_for_similarity(H, seed=1, ctx=None):
    ctx = _ctx(H, ctx, seed)
    if H.n == 2:
        raise GroupError("similarity test only applies for n > 2: every subgroup of "
                         "SL(2, F) preserves an alternating form")
    rng = random.Random(seed)
    report = PiReport("similarity", inconclusive_flags=_mu_flag(H))
    h = None
    for length in _lengths(ctx.budget):
        x, y = random_word(H, rng, length), random_word(H, rng, length)
        cand = commutator(x, y)
        c = mat_trace(cand) - mat_trace(mat_inverse(cand))
        if not c.is_zero():
            h = cand
            break
    if h is None:
        report.inconclusive_flags.append("no h in [H,H] with tr(h) != tr(h^-1) found; "
                                         "H may preserve a form")
        return report
    report.witness["c"] = str(c)
    report.witness_elements.update(c=c, h=h)
    report.candidates = sorted(pi_of(c, H.field, H.mu))

    def test(img):
        if img.full:
            return False
        G = img.group
        return (find_invariant_form(G, "symmetric", True) is not None
                or find_invariant_form(G, "alternating", True) is not None)

    return _confirm(report, ctx, test)


# ---------------------------------------------------------------------------
# density and the combined pipeline

@dataclass
class DensityVerdict:
    verdict: str
    reason: str = ""

    def __str__(self):
        return f"{self.verdict}({self.reason})" if self.reason else self.verdict


def is_dense(H, seed=1, budget=50):
    d = H.n * H.n - 1
    if env_algebra_dim(adjoint_rep(H).gens, "P") < d * d:
        return DensityVerdict("NOT_DENSE", "Ad reducible")
    try:
        infinite_order_element(H, seed, budget)
    except Inconclusive:
        return DensityVerdict("INCONCLUSIVE", "no infinite-order element found")
    return DensityVerdict("DENSE")


@dataclass
class DenseResult:
    pi: list
    reports: list
    deleted: list
    ambiguous: list
    subfields: PiReport | None
    view: str

    @property
    def unverified(self):
        flags = [f"{r.procedure}: {f}" for r in self.reports for f in r.inconclusive_flags]
        if self.subfields is not None:
            flags += [f"subfields: {f}" for f in self.subfields.inconclusive_flags]
        return flags

    def to_json(self):
        return {
            "view": self.view,
            "pi": [_ideal_json(I) for I in self.pi],
            "deleted": [_ideal_json(I) for I in self.deleted],
            "ambiguous": [_ideal_json(I) for I in self.ambiguous],
            "reports": [r.to_json() for r in self.reports]
            + ([self.subfields.to_json()] if self.subfields else []),
            "unverified": self.unverified,
        }


def primes_for_dense(H, seed=1, view="all", cap=DEFAULT_CAP, ctx=None):
    """Pi(H) as a sorted ideal list with the contributing reports.

    view='sat' keeps the ideals surviving the subfield deletion step; view='all'
    also adds the confirmed subfield ideals, giving every ideal with a
    non-surjective image that the procedures detect.
    """
    ctx = ctx or Context(H, seed, cap)
    n = H.n
    if n == 2:
        reports = [primes_for_solvable(H, 4, seed, ctx), primes_for_order(H, 10, seed, ctx)]
    elif n in EXPONENT_BOUNDS:
        reports = [primes_for_abs_irreducible(H, ctx), primes_for_monomial(H, seed, ctx),
                   primes_for_solvable(H, 2, seed, ctx), primes_for_similarity(H, seed, ctx),
                   primes_for_order(H, c6_c9_exponent_bound(n), seed, ctx)]
    else:
        raise GroupError(f"degree {n} is not supported (need a prime with a tabulated bound)")
    union = sorted({I for r in reports for I in r.confirmed})
    deleted, ambiguous = [], []
    for I in union:
        img = ctx.image(I)
        if img.group.ring.k > 1 and img.c5:
            # every member of the union passed some other class test
            confirmed_by = [r.procedure for r in reports if I in r.confirmed]
            if confirmed_by:
                ambiguous.append(I)
            else:
                deleted.append(I)
    survivors = [I for I in union if I not in deleted]
    sub = None
    if view == "all":
        if H.mu == 1:
            sub = primes_for_subfields(H, ctx)
            survivors = sorted(set(survivors) | set(sub.confirmed))
        else:
            sub = PiReport("subfields", inconclusive_flags=["skipped: needs mu = 1"])
    elif view != "sat":
        raise ValueError(f"unknown view {view!r}")
    return DenseResult(sorted(survivors), reports, deleted, ambiguous, sub, view)


# ---------------------------------------------------------------------------
# tables and sweeps

@dataclass
class TableRow:
    ideal: str
    norm: int
    index: int
    structure: str
    order: int
    ideal_json: dict

    def to_json(self):
        return {"ideal": self.ideal, "norm": self.norm, "index": self.index,
                "structure": self.structure, "order": self.order, "gen": self.ideal_json}


@dataclass
class QuotientTable:
    rows: list
    notes: list = field(default_factory=list)

    HEADER = ("ideal", "norm", "index", "structure")

    def to_text(self):
        cells = [self.HEADER] + [(r.ideal, str(r.norm), str(r.index), r.structure)
                                 for r in self.rows]
        widths = [max(len(c[i]) for c in cells) for i in range(4)]
        lines = []
        for c in cells:
            parts = [c[0].ljust(widths[0])] + [c[i].rjust(widths[i]) for i in (1, 2)] + [c[3]]
            lines.append("  ".join(parts).rstrip())
        lines += [f"# {note}" for note in self.notes]
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"rows": [r.to_json() for r in self.rows], "notes": list(self.notes)}


def congruence_table(H, ideals=None, extra_ideals=(), seed=1, view="all", cap=DEFAULT_CAP,
                     ctx=None):
    ctx = ctx or Context(H, seed, cap)
    if ideals is None:
        ideals = primes_for_dense(H, seed, view, cap, ctx).pi
    rows = []
    for I in sorted(set(ideals) | set(extra_ideals)):
        img = ctx.image(I)
        G = img.group
        rows.append(TableRow(I.label(), I.norm, G.index_in_sl(), G.structure_description(),
                             G.order, I.to_json()))
    rows.sort(key=lambda r: (r.norm, r.ideal))
    return QuotientTable(rows)


def sweep_nonfull(H, max_norm, cap=DEFAULT_CAP):
    """Every maximal ideal of norm <= max_norm (not over mu) with a proper image."""
    ideals = ideals_up_to_norm(H.field, max_norm, H.mu)

    def check(I):
        G = FiniteMatGroup(residue_field_of(I), H.n, reduce_group(H, I), cap)
        return I, G.is_full_sl()

    workers = threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(check, ideals))
    else:
        results = [check(I) for I in ideals]
    return sorted(I for I, full in results if not full)


__all__ = [
    "EXPONENT_BOUNDS", "c6_c9_exponent_bound", "PiReport", "IdealImage", "Context",
    "primes_for_abs_irreducible", "primes_for_monomial", "primes_for_solvable",
    "primes_for_order", "primes_for_subfields", "primes_for_similarity", "is_dense",
    "DensityVerdict", "primes_for_dense", "DenseResult", "congruence_table", "QuotientTable",
    "TableRow", "sweep_nonfull", "is_abs_irreducible",
]
