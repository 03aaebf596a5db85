"""Named verification suites shared by the command line and the tests.

A suite takes a :class:`Context` and returns a :class:`~exactlie.io.Record`
with a pass flag, a summary and witnesses for every failure.  Lie-side
suites need an algebra with a toral subalgebra; abstract suites work on a
root system, extracted from the algebra when one is given.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Callable

from . import admissible as adm
from . import root_systems as rsys
from .errors import ContractViolation, LieError, Violation
from .exact_linalg import Subspace
from .io import Record
from .lie_core import LieAlgebra, bracket, center, derived_subalgebra
from .toral import ToralSubalgebra, weight_decomposition

PARTIAL_SUM_MAX_TERMS = 5
PARTIAL_SUM_LIMIT = 2000


class SuiteInputError(LieError):
    """A suite was requested for an input it cannot run on."""


def violation_record(v: Violation) -> dict:
    return {"check": v.check, "message": v.message, **v.witness}


@dataclass
class Context:
    """Input for the suites: either an algebra with toral part or an abstract system."""

    algebra: LieAlgebra | None = None
    toral: ToralSubalgebra | None = None
    system: rsys.AbstractRootSystem | None = None
    family: tuple | None = None  # (name, n) for abstract truncations
    seed: int = 0
    samples: int = adm.DEFAULT_SAMPLES

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    @property
    def lie(self) -> bool:
        return self.algebra is not None

    @cached_property
    def decomposition(self):
        return weight_decomposition(self.algebra, self.toral)

    @cached_property
    def datum(self) -> adm.RootDatum:
        if not self.lie:
            raise SuiteInputError("this suite needs a Lie algebra input")
        return adm.root_datum(self.decomposition, self.samples, self.rng("datum"))

    @cached_property
    def abstract(self) -> rsys.AbstractRootSystem:
        if self.system is not None:
            return self.system
        return rsys.extract_abstract(self.datum)


SuiteFn = Callable[[Context], Record]
SUITES: dict[str, SuiteFn] = {}
LIE_SUITES: set[str] = set()
FAMILY_SUITES: set[str] = set()


def suite(name: str, lie: bool = False, family: bool = False):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        if lie:
            LIE_SUITES.add(name)
        if family:
            FAMILY_SUITES.add(name)
        return fn

    return register


def _record(name: str, violations: list, summary: dict | None = None) -> Record:
    return Record(name, not violations, summary or {}, [violation_record(v) for v in violations])


def _guard(name: str, fn: Callable[[], Record]) -> Record:
    try:
        return fn()
    except ContractViolation as exc:
        return _record(name, [exc.violation])
    except adm.NotAdmissible as exc:
        return _record(name, [exc.violation])
    except LieError as exc:
        if isinstance(exc, SuiteInputError):
            raise
        return _record(name, [Violation(f"{name}.precondition", str(exc), {"error": type(exc).__name__})])


def applicable(ctx: Context, name: str) -> bool:
    if name in LIE_SUITES:
        return ctx.lie
    if name in FAMILY_SUITES:
        return ctx.family is not None and ctx.family[1] > _chain_floor(ctx.family[0])
    return True


def run_suites(ctx: Context, names: list[str] | None = None) -> list[Record]:
    """Run the named suites (all applicable ones when ``names`` is empty), in name order."""
    if not names:
        names = sorted(n for n in SUITES if applicable(ctx, n))
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise SuiteInputError(f"unknown suite {unknown[0]!r}; choose from {', '.join(sorted(SUITES))}")
    for n in names:
        if n in LIE_SUITES and not ctx.lie:
            raise SuiteInputError(f"suite {n!r} needs a Lie algebra input")
        if n in FAMILY_SUITES and ctx.family is None:
            raise SuiteInputError(f"suite {n!r} needs --family and --n")
    return [_guard(n, lambda n=n: SUITES[n](ctx)) for n in sorted(set(names))]


# -- Lie-side suites -----------------------------------------------------------------

@suite("admissible", lie=True)
def _admissible(ctx: Context) -> Record:
    verdict = adm.is_admissible(ctx.decomposition, ctx.samples, ctx.rng("admissible"))
    if isinstance(verdict, Violation):
        return _record("admissible", [verdict])
    return _record("admissible", [], {"roots": len(verdict.roots), "all_integrable": verdict.all_integrable})


@suite("loc5", lie=True)
def _loc5(ctx: Context) -> Record:
    rd = ctx.datum
    violations = adm.check_loc5(rd)
    strings = []
    for a in rd.roots:
        for b in rd.roots:
            try:
                ks = adm.root_string(rd, b, a)
            except ContractViolation:
                continue
            strings.append({"alpha": a, "beta": b, "pairing": rd.pairing(b, a), "string": [ks[0], ks[-1]]})
    return _record("loc5", violations, {"pairs": len(strings), "strings": strings})


@suite("simple", lie=True)
def _simple(ctx: Context) -> Record:
    rd = ctx.datum
    v = adm.splitting_elements_unique(rd, ctx.samples, ctx.rng("simple"))
    return _record("simple", [v] if v else [], {"roots": len(rd.roots), "samples": ctx.samples})


@suite("killing", lie=True)
def _killing(ctx: Context) -> Record:
    v = adm.killing_identities(ctx.datum)
    return _record("killing", [v] if v else [])


@suite("theta", lie=True)
def _theta(ctx: Context) -> Record:
    """theta_a maps L_b onto L_{s_a b} and preserves brackets on seeded random pairs."""
    rd = ctx.datum
    L = rd.algebra
    rng = ctx.rng("theta")
    violations = []
    for a in rd.roots:
        theta = adm.theta_automorphism(rd, a)
        for _ in range(20):
            x = tuple(rng.randint(-3, 3) for _ in range(L.dim))
            y = tuple(rng.randint(-3, 3) for _ in range(L.dim))
            if theta @ bracket(L, x, y) != bracket(L, theta @ x, theta @ y):
                violations.append(Violation("theta.automorphism", "theta does not preserve a bracket", {"alpha": a, "x": x, "y": y}))
                break
    return _record("theta", violations, {"roots": len(rd.roots)})


@suite("interesting", lie=True)
def _interesting(ctx: Context) -> Record:
    d = ctx.decomposition
    ok = adm.is_maximal_toral(d)
    violations = []
    if not ok:
        extra = [v for v in d.zero_space.basis if not d.toral.contains(v)]
        violations.append(Violation("interesting", "zero weight space is larger than the toral subalgebra", {"element": extra[0]}))
    return _record("interesting", violations, {"zero_space_dim": d.zero_space.dim, "toral_dim": d.toral.dim})


@suite("max-tor", lie=True)
def _max_tor(ctx: Context) -> Record:
    rd = ctx.datum
    pieces = adm.simple_ideal_decomposition(rd)
    comps = rsys.connected_components(ctx.abstract)
    violations = []
    if len(pieces) != len(comps):
        violations.append(Violation("max-tor", "ideal count differs from component count", {"ideals": len(pieces), "components": len(comps)}))
    return _record("max-tor", violations, {"ideals": [p.ideal.dim for p in pieces], "components": len(comps)})


def _candidate_ideals(rd: adm.RootDatum) -> list[Subspace]:
    L = rd.algebra
    out = [derived_subalgebra(L)]
    z = center(L)
    if z.dim:
        out.append(z)
    for comp in adm.root_components(rd):
        out.append(adm._root_part(rd, comp))
    unique = []
    for s in out:
        if s.dim and s not in unique:
            unique.append(s)
    return unique


@suite("semi-sim1", lie=True)
def _semi_sim1(ctx: Context) -> Record:
    """Root description of ideals and the complementary ideal J."""
    rd = ctx.datum
    d = rd.decomposition
    balanced = adm._bracket_sum_space(d, rd.roots) == d.zero_space
    rows = []
    for ideal in _candidate_ideals(rd):
        if not adm.is_ideal(rd.algebra, ideal):
            continue
        iis = adm.ideal_root_subset(rd, ideal)
        row = {"ideal_dim": ideal.dim, "roots": len(iis.roots_RI)}
        if balanced:
            row["complement_dim"] = adm.complement_ideal(rd, iis).dim
        rows.append(row)
    return _record("semi-sim1", [], {"ideals": rows, "zero_space_is_bracket_span": balanced})


@suite("semi-sim", lie=True)
def _semi_sim(ctx: Context) -> Record:
    c = adm.core(ctx.datum)
    return _record(
        "semi-sim",
        [],
        {
            "core_dim": c.core_space.dim,
            "center_dim": c.center_of_core.dim,
            "quotient_dim": 0 if c.quotient is None else c.quotient.dim,
        },
    )


def rest2_subsets(rs: rsys.AbstractRootSystem) -> list[frozenset]:
    """Distinct closures of singletons and pairs of roots."""
    roots = rs.sorted_roots
    seen = []
    for m in [(a,) for a in roots] + list(combinations(roots, 2)):
        delta = rsys.closure_delta_M(rs, m)
        if delta not in seen:
            seen.append(delta)
    return seen


@suite("rest2", lie=True)
def _rest2(ctx: Context) -> Record:
    rd = ctx.datum
    violations = []
    subsets = rest2_subsets(ctx.abstract)
    for delta in subsets:
        try:
            adm.sub_from_roots(rd, delta, 1, ctx.rng("rest2"))
        except ContractViolation as exc:
            violations.append(exc.violation)
    return _record("rest2", violations, {"subsets": len(subsets), "sizes": sorted(len(s) for s in subsets)})


@suite("closure-lie", lie=True)
def _closure_lie(ctx: Context) -> Record:
    """Pairwise-sum closure agrees with the root support of the generated subalgebra."""
    rd = ctx.datum
    rs = ctx.abstract
    violations = []
    roots = rs.sorted_roots
    for m in [(a,) for a in roots] + list(combinations(roots, 2)):
        if rsys.closure_delta_M(rs, m) != adm.generated_root_support(rd, m):
            violations.append(Violation("closure-lie", "closure differs from the generated support", {"m": m}))
    return _record("closure-lie", violations)


# -- abstract suites ---------------------------------------------------------------------

@suite("axioms")
def _axioms(ctx: Context) -> Record:
    rs = ctx.abstract
    v = rsys.check_axioms(rs.roots, rs.coroot, rs.space)
    return _record("axioms", [v] if v else [], {"roots": len(rs), "span_dim": rs.space.dim, "fingerprint": rsys.fingerprint(rs)})


@suite("bound")
def _bound(ctx: Context) -> Record:
    """Pairings in Z cap [-4, 4]; span of any two independent roots holds finitely many roots."""
    rs = ctx.abstract
    violations = []
    for a in rs.sorted_roots:
        for b in rs.sorted_roots:
            p = rs.pairing(b, a)
            if p.denominator != 1 or abs(p) > 4:
                violations.append(Violation("bound.c", "pairing outside Z cap [-4, 4]", {"alpha": a, "beta": b, "value": p}))
    checked = 0
    for a, b in combinations(rs.sorted_roots, 2):
        if Subspace.span([a, b], rs.rank).dim == 2:
            try:
                rsys.finiteness_certificate(rs, [a, b])
                checked += 1
            except rsys.SingularPairing:
                continue
    return _record("bound", violations, {"pairs_certified": checked})


@suite("components")
def _components(ctx: Context) -> Record:
    comps = rsys.connected_components(ctx.abstract)
    return _record("components", [], {"components": len(comps), "sizes": [len(c) for c in comps]})


@suite("sdiv")
def _sdiv(ctx: Context) -> Record:
    rs = ctx.abstract
    s = rsys.sdiv(rs)
    violations = []
    if rsys.sdiv(s).members != s.members:
        violations.append(Violation("sdiv", "sdiv is not idempotent", {}))
    return _record("sdiv", violations, {"roots": len(rs), "sdiv_roots": len(s), "reduced": len(s) == len(rs)})


def partial_sum_instances(rs: rsys.AbstractRootSystem, max_terms: int, limit: int, rng: random.Random) -> list[tuple]:
    """Multisets of 2..max_terms roots whose sum is a root.

    All of them when there are at most ``limit``, otherwise a seeded sample
    of ``limit``.
    """
    roots = rs.sorted_roots
    found = []
    for k in range(2, max_terms + 1):
        for combo in combinations_with_replacement(roots, k):
            total = tuple(sum(col) for col in zip(*combo))
            if total in rs.roots:
                found.append((combo, total))
    if len(found) > limit:
        found = rng.sample(found, limit)
    return found


@suite("cor0")
def _cor0(ctx: Context) -> Record:
    rs = ctx.abstract
    instances = partial_sum_instances(rs, PARTIAL_SUM_MAX_TERMS, PARTIAL_SUM_LIMIT, ctx.rng("cor0"))
    violations = []
    for summands, beta in instances:
        if rsys.partial_sum_witness(rs, summands, beta) is None:
            violations.append(Violation("cor0", "no ordering with all prefix sums in R or 0", {"summands": summands, "beta": beta}))
    return _record("cor0", violations, {"instances": len(instances)})


@suite("closure")
def _closure(ctx: Context) -> Record:
    """Closure minimality against brute-force enumeration (systems with at most 24 roots)."""
    rs = ctx.abstract
    if len(rs) > 24:
        return _record("closure", [], {"skipped": "more than 24 roots"})
    closed = rsys.symmetric_closed_subsets(rs)
    violations = []
    roots = rs.sorted_roots
    for m in [()] + [(a,) for a in roots] + list(combinations(roots, 2)):
        expected = frozenset(rs.roots)
        for c in closed:
            if set(m) <= c:
                expected &= c
        if not m:
            expected = frozenset()
        if rsys.closure_delta_M(rs, m) != expected:
            violations.append(Violation("closure", "closure is not the smallest symmetric closed superset", {"m": m}))
    return _record("closure", violations, {"closed_subsets": len(closed)})


def _chain_floor(family: str) -> int:
    """Smallest n where the chain starts; D starts at 3 because D2 is reducible."""
    return 3 if family == "D" else rsys.FAMILY_MINIMUM[family]


@suite("chain", family=True)
def _chain(ctx: Context) -> Record:
    name, n = ctx.family
    lo = _chain_floor(name)
    if n < lo + 1:
        raise SuiteInputError(f"chain for {name} needs n >= {lo + 1}")
    report = rsys.chain_check(name, n, lo)
    violations = [
        Violation("chain", "link is not a closed irreducible subsystem", {"n": link.n, **{k: getattr(link, k) for k in ("subset", "closed", "subsystem", "irreducible", "coroots_agree")}})
        for link in report.failures()
    ]
    if not report.union_ok:
        violations.append(Violation("chain", "union of the chain differs from the top truncation on its span", {}))
    return _record("chain", violations, {"family": name, "from": lo, "to": n, "links": len(report.links)})
