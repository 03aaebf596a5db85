"""sl2-triples, admissibility, splitting elements and what follows from them.

Everything here works on a :class:`~exactlie.toral.WeightDecomposition`
``L = sum_a L_a`` of a finite-dimensional algebra.  Checks that look for
counterexamples return ``None`` on success and a
:class:`~exactlie.errors.Violation` otherwise; postconditions that a correct
input can never break raise :class:`~exactlie.errors.ContractViolation`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    ContractViolation,
    LieError,
    NotAnIdeal,
    NotClosed,
    NotSymmetric,
    PreconditionError,
    Violation,
)
from .exact_linalg import Matrix, Subspace, Vector, combine, dot, scale, solve_affine
from .lie_core import (
    CoordinateMap,
    LieAlgebra,
    bracket,
    center,
    exp_ad,
    is_ad_nilpotent,
    is_ideal,
    is_semisimple,
    killing_form,
    killing_radical,
    quotient_algebra,
    subalgebra_on,
)
from .toral import ToralSubalgebra, Weight, WeightDecomposition, weight_decomposition

DEFAULT_SAMPLES = 5


def neg(w: Weight) -> Weight:
    return tuple(-a for a in w)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wscale(k, w: Weight) -> Weight:
    return tuple(k * x for x in w)


@dataclass(frozen=True)
class Sl2Triple:
    e: Vector
    h: Vector
    f: Vector
    root: Weight


class NotAdmissible(LieError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


# -- sl2-triples --------------------------------------------------------------

def _triple_system(d: WeightDecomposition, alpha: Weight, x: Vector):
    """Linear system for ``y in L_{-alpha}``: ``[x, y] in h`` and ``alpha([x, y]) = 2``.

    Returns ``None`` if infeasible, else ``(y, h, kernel_images)`` where
    ``kernel_images`` are the brackets ``[x, k]`` for ``k`` spanning the
    homogeneous solutions (all zero when the splitting element is unique).
    """
    L = d.algebra
    toral = d.toral
    minus = d.space(neg(alpha))
    if minus.dim == 0:
        return None
    images = [bracket(L, x, v) for v in minus.basis]
    residuals = [toral.space.reduce(img) for img in images]
    rows, rhs = [], []
    for k in range(L.dim):
        row = tuple(r[k] for r in residuals)
        if any(row):
            rows.append(row)
            rhs.append(0)
    rows.append(tuple(toral.weight_functional(alpha, img) for img in images))
    rhs.append(2)
    solved = solve_affine(Matrix(rows, cols=minus.dim), rhs)
    if solved is None:
        return None
    coeffs, kernel = solved
    y = combine(coeffs, minus.basis, L.dim)
    h = combine(coeffs, images, L.dim)
    kernel_images = [combine(k, images, L.dim) for k in kernel.basis]
    return y, h, kernel_images


def _is_triple(L: LieAlgebra, e: Vector, h: Vector, f: Vector) -> bool:
    return (
        bracket(L, e, f) == tuple(h)
        and bracket(L, h, e) == scale(2, e)
        and bracket(L, h, f) == scale(-2, f)
    )


def find_sl2_triple(d: WeightDecomposition, alpha: Weight, x: Sequence) -> Sl2Triple | None:
    """An sl2-triple ``(x, [x, y], y)`` with ``y in L_{-alpha}`` and ``[x, y]`` toral.

    Only the two linear conditions are imposed; the remaining relations
    follow from the grading and are re-verified before returning.
    """
    alpha = tuple(alpha)
    x = tuple(Fraction(a) for a in x)
    if not any(alpha) or not any(x):
        raise PreconditionError("need a nonzero root and a nonzero root vector")
    if not d.space(alpha).contains(x):
        raise PreconditionError("x is not in the root space of alpha")
    found = _triple_system(d, alpha, x)
    if found is None:
        return None
    y, h, _ = found
    if not (_is_triple(d.algebra, x, h, y) and d.toral.contains(h)):
        raise ContractViolation(Violation("sl2-triple", "linear solution is not an sl2-triple", {"root": alpha, "x": x}))
    return Sl2Triple(x, h, y, alpha)


def random_root_vector(space: Subspace, rng: random.Random) -> Vector:
    """A random nonzero combination of the basis with small integer coefficients."""
    while True:
        coeffs = [rng.randint(-3, 3) for _ in range(space.dim)]
        if any(coeffs):
            return space.element(coeffs)


# -- root data ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootDatum:
    """Roots of ``(L, h)`` with splitting elements and chosen sl2-triples.

    ``triples[a]`` is the triple through the first basis vector of ``L_a``;
    its middle element is ``splitting_elements[a]``.
    """

    decomposition: WeightDecomposition
    roots: tuple
    splitting_elements: dict
    triples: dict
    integrable: dict
    toral_in_brackets: bool

    @property
    def algebra(self) -> LieAlgebra:
        return self.decomposition.algebra

    @property
    def toral(self) -> ToralSubalgebra:
        return self.decomposition.toral

    @cached_property
    def _coroots(self) -> dict:
        return {a: self.toral.coordinates(h) for a, h in self.splitting_elements.items()}

    def coroot(self, alpha: Weight) -> tuple:
        """Coordinates of ``h_alpha`` in the toral basis, i.e. the covector ``b -> b(h_alpha)``."""
        return self._coroots[tuple(alpha)]

    def pairing(self, beta: Weight, alpha: Weight) -> Fraction:
        """``beta(h_alpha)``."""
        return dot(beta, self._coroots[tuple(alpha)])

    def is_root(self, w: Weight) -> bool:
        return self.decomposition.is_root(w)

    def is_root_or_zero(self, w: Weight) -> bool:
        return self.decomposition.is_weight(w)

    @property
    def all_integrable(self) -> bool:
        return all(self.integrable.values())

    def space(self, w: Weight) -> Subspace:
        return self.decomposition.space(w)


def _bracket_sum_space(d: WeightDecomposition, roots: Iterable[Weight]) -> Subspace:
    """``sum_a [L_a, L_{-a}]``."""
    L = d.algebra
    vectors = []
    for a in roots:
        for u in d.space(a).basis:
            for v in d.space(neg(a)).basis:
                vectors.append(bracket(L, u, v))
    return Subspace.span(vectors, L.dim)


def _clause_one(d: WeightDecomposition) -> Violation | None:
    toral = d.toral
    brackets = _bracket_sum_space(d, d.roots)
    if toral.space <= brackets:
        return None
    inside = toral.space & brackets
    coords = Subspace.span([toral.coordinates(v) for v in inside.basis], toral.dim)
    direction = coords.annihilator().basis[0]
    return Violation(
        "admissible.clause1",
        "toral subalgebra is not contained in the span of [L_a, L_-a]",
        {"clause": 1, "direction": direction, "element": toral.element(direction)},
    )


def root_datum(
    d: WeightDecomposition, samples: int = 0, rng: random.Random | None = None
) -> RootDatum:
    """Splitting elements and sl2-triples for every root.

    Feasibility is required for each basis vector of each root space and for
    ``samples`` random nonzero combinations.  Raises :class:`NotAdmissible`
    when some root vector has no sl2-partner; the containment clause for the
    toral subalgebra is only recorded (see :func:`is_admissible`).
    """
    if not d.roots:
        raise NotAdmissible(Violation("admissible.precondition", "empty root set", {"clause": 0}))
    rng = rng if rng is not None else random.Random(0)
    L = d.algebra
    splitting, triples, integrable = {}, {}, {}
    for alpha in d.roots:
        space = d.space(alpha)
        candidates = list(space.basis) + [random_root_vector(space, rng) for _ in range(samples)]
        first = None
        nilpotent = False
        for x in candidates:
            t = find_sl2_triple(d, alpha, x)
            if t is None:
                raise NotAdmissible(
                    Violation(
                        "admissible.clause2",
                        "root vector has no sl2-partner in the opposite root space",
                        {"clause": 2, "root": alpha, "x": x},
                    )
                )
            if first is None:
                first = t
            if not nilpotent and is_ad_nilpotent(L, t.e) and is_ad_nilpotent(L, t.f):
                nilpotent = True
        triples[alpha] = first
        splitting[alpha] = first.h
        integrable[alpha] = nilpotent
    return RootDatum(
        decomposition=d,
        roots=tuple(d.roots),
        splitting_elements=splitting,
        triples=triples,
        integrable=integrable,
        toral_in_brackets=_clause_one(d) is None,
    )


def is_admissible(
    d: WeightDecomposition, samples: int = DEFAULT_SAMPLES, rng: random.Random | None = None
) -> RootDatum | Violation:
    """The datum when ``(L, h)`` is admissible, else a witness of the failing clause.

    Clause 1: ``h`` lies in ``sum_a [L_a, L_-a]``; the witness names a toral
    direction outside it.  Clause 2: every tested root vector lies in an
    sl2-triple with partner in the opposite root space and middle element
    in ``h``.  Every vector cannot be tested; a basis of each root space plus
    ``samples`` seeded random combinations are.
    """
    if not d.roots:
        return Violation("admissible.precondition", "empty root set", {"clause": 0})
    failure = _clause_one(d)
    if failure is not None:
        return failure
    try:
        return root_datum(d, samples, rng)
    except NotAdmissible as exc:
        return exc.violation


# -- splitting elements -------------------------------------------------------------

def _independent_roots(rd: RootDatum) -> list:
    chosen, span = [], Subspace.zero(rd.toral.dim)
    for a in rd.roots:
        if not span.contains(a):
            chosen.append(a)
            span = span + Subspace.span([a], rd.toral.dim)
    return chosen


def splitting_elements_unique(
    rd: RootDatum, samples: int = DEFAULT_SAMPLES, rng: random.Random | None = None
) -> Violation | None:
    """The splitting element does not depend on the root vector or its partner.

    Also checks linearity: ``a in span(b_1..b_m)`` implies
    ``h_a in span(h_b1..h_bm)``, for a maximal independent set of roots and
    for every pair of roots.
    """
    rng = rng if rng is not None else random.Random(0)
    d = rd.decomposition
    for alpha in rd.roots:
        space = d.space(alpha)
        expected = rd.splitting_elements[alpha]
        for x in list(space.basis) + [random_root_vector(space, rng) for _ in range(samples)]:
            found = _triple_system(d, alpha, x)
            if found is None:
                return Violation("simple.feasible", "no sl2-partner", {"root": alpha, "x": x})
            _, h, kernel_images = found
            if h != expected:
                return Violation("simple.unique", "two different splitting elements", {"root": alpha, "x": x, "h1": expected, "h2": h})
            for img in kernel_images:
                if any(img):
                    return Violation(
                        "simple.unique",
                        "another partner gives a different splitting element",
                        {"root": alpha, "x": x, "h1": expected, "h2": tuple(a + b for a, b in zip(h, img))},
                    )
    r = rd.toral.dim
    dim = rd.algebra.dim

    def hspan(roots):
        return Subspace.span([rd.splitting_elements[b] for b in roots], dim)

    base = _independent_roots(rd)
    base_h = hspan(base)
    for alpha in rd.roots:
        if not base_h.contains(rd.splitting_elements[alpha]):
            return Violation("simple.linear", "h_a outside the span of the base's splitting elements", {"root": alpha, "base": base})
    for b1, b2 in combinations(rd.roots, 2):
        wspan = Subspace.span([b1, b2], r)
        hs = None
        for alpha in rd.roots:
            if wspan.contains(alpha):
                hs = hs or hspan([b1, b2])
                if not hs.contains(rd.splitting_elements[alpha]):
                    return Violation("simple.linear", "h_a outside span(h_b1, h_b2)", {"root": alpha, "span": [b1, b2]})
    return None


def killing_identities(rd: RootDatum) -> Violation | None:
    """``kappa(h_b, h_b) != 0``, ``b(t) kappa(h_b, h_b) = 2 kappa(t, h_b)``, ``span{h_b} = h``.

    Requires a semisimple algebra with a maximal toral subalgebra.
    """
    L = rd.algebra
    if not is_semisimple(L):
        return Violation("killing.precondition", "algebra is not semisimple", {})
    if not is_maximal_toral(rd):
        return Violation("killing.precondition", "toral subalgebra fails the maximality criterion", {})
    toral = rd.toral
    for beta in rd.roots:
        hb = rd.splitting_elements[beta]
        kbb = killing_form(L, hb, hb)
        if kbb == 0:
            return Violation("killing.nondegenerate", "kappa(h_b, h_b) = 0", {"root": beta})
        for j, t in enumerate(toral.basis):
            if beta[j] * kbb != 2 * killing_form(L, t, hb):
                return Violation(
                    "killing.representation",
                    "b(t) kappa(h_b, h_b) != 2 kappa(t, h_b)",
                    {"root": beta, "toral_index": j},
                )
    if Subspace.span(rd.splitting_elements.values(), L.dim) != toral.space:
        return Violation("killing.span", "splitting elements do not span the toral subalgebra", {})
    return None


# -- root combinatorics on the Lie side ---------------------------------------------------

def root_string(rd: RootDatum, beta: Weight, alpha: Weight) -> list[int]:
    """Sorted integers ``k`` with ``beta + k alpha`` in ``R`` or zero.

    Asserts the result is an interval containing 0 and that
    ``beta - beta(h_alpha) alpha`` is a root.
    """
    beta, alpha = tuple(beta), tuple(alpha)
    pivot = next(i for i, a in enumerate(alpha) if a)
    ks = []
    for w in rd.decomposition.spaces:
        diff = tuple(a - b for a, b in zip(w, beta))
        k = diff[pivot] / alpha[pivot]
        if k.denominator == 1 and diff == wscale(k, alpha):
            ks.append(int(k))
    ks.sort()
    if 0 not in ks or ks != list(range(ks[0], ks[-1] + 1)):
        raise ContractViolation(Violation("loc5.interval", "root string is not an interval through 0", {"beta": beta, "alpha": alpha, "ks": ks}))
    p = rd.pairing(beta, alpha)
    if p.denominator != 1 or not rd.is_root(tuple(b - p * a for a, b in zip(alpha, beta))):
        raise ContractViolation(Violation("loc5.reflection", "beta - beta(h_a) a is not a root", {"beta": beta, "alpha": alpha}))
    return ks


def scaled_root_check(rd: RootDatum) -> Violation | None:
    """``{k : k a in R}`` is inside ``{+-1, +-1/2, +-2}`` for every root."""
    allowed = {Fraction(s) for s in (1, -1, 2, -2)} | {Fraction(1, 2), Fraction(-1, 2)}
    for alpha in rd.roots:
        pivot = next(i for i, a in enumerate(alpha) if a)
        for beta in rd.roots:
            k = beta[pivot] / alpha[pivot]
            if beta == wscale(k, alpha) and k not in allowed:
                return Violation("loc5.multiples", "root has a forbidden multiple", {"alpha": alpha, "multiple": k})
    return None


def check_loc5(rd: RootDatum) -> list[Violation]:
    """Integrality, reflections, bracket nonvanishing, strings, sign rule and multiples."""
    L = rd.algebra
    out = []
    for alpha in rd.roots:
        if not rd.integrable[alpha]:
            continue
        for beta in rd.roots:
            p = rd.pairing(beta, alpha)
            if p.denominator != 1:
                out.append(Violation("loc5.i", "b(h_a) is not an integer", {"alpha": alpha, "beta": beta, "value": p}))
                continue
            if not rd.is_root(tuple(b - p * a for a, b in zip(alpha, beta))):
                out.append(Violation("loc5.i", "b - b(h_a) a is not a root", {"alpha": alpha, "beta": beta}))
            s = wadd(alpha, beta)
            if rd.is_root(s):
                e = rd.triples[alpha].e
                if not any(any(bracket(L, e, v)) for v in rd.space(beta).basis):
                    out.append(Violation("loc5.ii", "[e_a, L_b] = 0 although a + b is a root", {"alpha": alpha, "beta": beta}))
            try:
                root_string(rd, beta, alpha)
            except ContractViolation as exc:
                out.append(exc.violation)
            if p > 0 and not rd.is_root_or_zero(tuple(b - a for a, b in zip(alpha, beta))):
                out.append(Violation("loc5.iv", "b(h_a) > 0 but b - a is not in R or 0", {"alpha": alpha, "beta": beta}))
            if p < 0 and not rd.is_root_or_zero(s):
                out.append(Violation("loc5.iv", "b(h_a) < 0 but b + a is not in R or 0", {"alpha": alpha, "beta": beta}))
    multiples = scaled_root_check(rd)
    if multiples is not None:
        out.append(multiples)
    return out


def pairing_bound_violations(rd: RootDatum) -> list[Violation]:
    """``b(h_a)`` must be an integer in ``[-4, 4]``."""
    out = []
    for alpha in rd.roots:
        for beta in rd.roots:
            p = rd.pairing(beta, alpha)
            if p.denominator != 1 or abs(p) > 4:
                out.append(Violation("bound.c", "pairing outside Z cap [-4, 4]", {"alpha": alpha, "beta": beta, "value": p}))
    return out


def is_symmetric(rd_roots: Iterable[Weight], delta: Iterable[Weight]) -> bool:
    delta = set(map(tuple, delta))
    return all(neg(a) in delta for a in delta)


def is_closed(roots: Iterable[Weight], delta: Iterable[Weight]) -> bool:
    roots = set(map(tuple, roots))
    delta = set(map(tuple, delta))
    return all(wadd(a, b) not in roots or wadd(a, b) in delta for a in delta for b in delta)


# -- ideals and cores ------------------------------------------------------------------

@dataclass(frozen=True)
class IdealRootSubset:
    ideal: Subspace
    roots_RI: frozenset


def ideal_root_subset(rd: RootDatum, ideal: Subspace) -> IdealRootSubset:
    """``R_I = {a : I meets L_a}``; checks it is symmetric and closed and that
    ``I = (I cap L_0) + sum_{a in R_I} L_a``."""
    L = rd.algebra
    if not is_ideal(L, ideal):
        raise NotAnIdeal("subspace is not an ideal")
    d = rd.decomposition
    r_i = frozenset(a for a in rd.roots if (ideal & d.space(a)).dim > 0)
    if not is_symmetric(rd.roots, r_i):
        raise ContractViolation(Violation("semi-sim1.a", "R_I is not symmetric", {"roots": sorted(r_i)}))
    if not is_closed(rd.roots, r_i):
        raise ContractViolation(Violation("semi-sim1.a", "R_I is not closed", {"roots": sorted(r_i)}))
    for a in r_i:
        if not d.space(a) <= ideal:
            raise ContractViolation(Violation("semi-sim1.a", "L_a is not inside I", {"root": a}))
    rebuilt = (ideal & d.zero_space) + Subspace.span([v for a in r_i for v in d.space(a).basis], L.dim)
    if rebuilt != ideal:
        raise ContractViolation(Violation("semi-sim1.a", "I is not (I cap L_0) + sum L_a", {}))
    return IdealRootSubset(ideal, r_i)


def _root_part(rd: RootDatum, roots: Iterable[Weight]) -> Subspace:
    roots = list(roots)
    d = rd.decomposition
    return _bracket_sum_space(d, roots) + Subspace.span(
        [v for a in roots for v in d.space(a).basis], rd.algebra.dim
    )


def complement_ideal(rd: RootDatum, iis: IdealRootSubset) -> Subspace:
    """``J = sum_{a in D}[L_a, L_-a] + sum_{a in D} L_a`` with ``D = R minus R_I``.

    Requires ``L_0 = sum_a [L_a, L_-a]``; checks ``J`` is an ideal, ``L = I + J``
    and ``I cap J`` is central.
    """
    L = rd.algebra
    d = rd.decomposition
    if _bracket_sum_space(d, rd.roots) != d.zero_space:
        raise PreconditionError("L_0 is not the span of the brackets [L_a, L_-a]")
    delta = [a for a in rd.roots if a not in iis.roots_RI]
    j = _root_part(rd, delta)
    if not is_ideal(L, j):
        raise ContractViolation(Violation("semi-sim1.c", "J is not an ideal", {}))
    if (iis.ideal + j).dim != L.dim:
        raise ContractViolation(Violation("semi-sim1.c", "I + J is not L", {}))
    if not (iis.ideal & j) <= center(L):
        raise ContractViolation(Violation("semi-sim1.c", "I cap J is not central", {}))
    return j


@dataclass(frozen=True, eq=False)
class Core:
    core_space: Subspace
    center_of_core: Subspace
    quotient: LieAlgebra | None  # None when the core is abelian modulo its center
    representatives: tuple


def core(rd: RootDatum) -> Core:
    """``L_c = L_00 + sum_a L_a`` with ``L_00 = sum_a [L_a, L_-a]`` and its center.

    The quotient by the center is built on a pivot-completion complement and
    checked to have trivial Killing radical.
    """
    bad = [a for a in rd.roots if not rd.integrable[a]]
    if bad:
        raise PreconditionError(f"non-integrable root {bad[0]}")
    L = rd.algebra
    space = _root_part(rd, rd.roots)
    reps = tuple(space.basis)
    sub_alg = subalgebra_on(L, reps)
    local_center = center(sub_alg)
    z = Subspace.span([combine(c, reps, L.dim) for c in local_center.basis], L.dim)
    if z.dim == space.dim:
        return Core(space, z, None, ())
    quotient, q_reps = quotient_algebra(L, space, z)
    if killing_radical(quotient).dim != 0:
        raise ContractViolation(Violation("semi-sim", "core modulo its center is not semisimple", {}))
    return Core(space, z, quotient, q_reps)


# -- subalgebras attached to root subsets ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootSubalgebra:
    """``L_D`` written in its own basis, with ``h_D = h cap sum_{a in D}[L_a, L_-a]``."""

    algebra: LieAlgebra
    toral: ToralSubalgebra
    embedding: tuple  # ambient vectors of the new basis
    restriction: dict  # root or zero of L in D -> weight on h_D
    datum: RootDatum


def sub_from_roots(
    rd: RootDatum, delta: Iterable[Weight], samples: int = 1, rng: random.Random | None = None
) -> RootSubalgebra:
    """Subalgebra ``L_D`` for a symmetric closed ``D`` of integrable roots.

    Asserts that restriction to ``h_D`` is injective on ``D`` plus zero and that
    ``(L_D, h_D)`` is admissible with root system exactly the image of ``D``.
    """
    delta = sorted(set(map(tuple, delta)))
    if not delta:
        raise PreconditionError("empty root subset")
    unknown = [a for a in delta if not rd.is_root(a)]
    if unknown:
        raise PreconditionError(f"{unknown[0]} is not a root")
    if not is_symmetric(rd.roots, delta):
        raise NotSymmetric("root subset is not symmetric")
    if not is_closed(rd.roots, delta):
        raise NotClosed("root subset is not closed")
    if not all(rd.integrable[a] for a in delta):
        raise PreconditionError("root subset contains non-integrable roots")
    L = rd.algebra
    d = rd.decomposition
    brackets = _bracket_sum_space(d, delta)
    h_delta = rd.toral.space & brackets
    basis = list(brackets.basis) + [v for a in delta for v in d.space(a).basis]
    sub_alg = subalgebra_on(L, basis)
    coords = CoordinateMap(basis, L.dim)
    new_toral = ToralSubalgebra(sub_alg, [coords(t) for t in h_delta.basis])

    zero = d.zero_weight
    restriction = {w: tuple(rd.toral.evaluate(w, t) for t in h_delta.basis) for w in delta + [zero]}
    if len(set(restriction.values())) != len(restriction):
        raise ContractViolation(Violation("rest2.injective", "restriction to h_D is not injective on D and 0", {"delta": delta}))

    new_d = weight_decomposition(sub_alg, new_toral)
    expected = {restriction[a] for a in delta}
    if set(new_d.roots) != expected:
        raise ContractViolation(Violation("rest2.roots", "root set of L_D is not the image of D", {"delta": delta}))
    for w in delta + [zero]:
        image = Subspace.span([combine(c, basis, L.dim) for c in new_d.space(restriction[w]).basis], L.dim)
        target = d.space(w) if w != zero else brackets
        if image != target:
            raise ContractViolation(Violation("rest2.spaces", "weight spaces of L_D do not match", {"weight": w}))
    verdict = is_admissible(new_d, samples, rng)
    if isinstance(verdict, Violation):
        raise ContractViolation(Violation("rest2.admissible", "L_D is not admissible", {"delta": delta, "cause": str(verdict)}))
    return RootSubalgebra(sub_alg, new_toral, tuple(basis), restriction, verdict)


def root_components(rd: RootDatum) -> list[list]:
    """Classes of the relation generated by ``b(h_a) != 0``."""
    parent = {a: a for a in rd.roots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in rd.roots:
        for b in rd.roots:
            if rd.pairing(b, a) != 0:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for a in rd.roots:
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())


def simple_ideal_decomposition(rd: RootDatum) -> list[IdealRootSubset]:
    """Split ``L`` along the connected components of ``R``.

    Requires a semisimple algebra, the maximality criterion ``L_0 = h`` and
    admissibility.  Checks that the pieces are ideals with pairwise zero
    brackets summing to ``L`` and that ``h`` is the direct sum of the
    ``h cap L^i``.
    """
    L = rd.algebra
    if not is_semisimple(L):
        raise PreconditionError("algebra is not semisimple")
    if not is_maximal_toral(rd):
        raise PreconditionError("toral subalgebra fails the maximality criterion")
    if not rd.toral_in_brackets:
        raise PreconditionError("datum is not admissible (toral part outside the bracket span)")
    pieces = []
    for comp in root_components(rd):
        space = _root_part(rd, comp)
        if not is_ideal(L, space):
            raise ContractViolation(Violation("max-tor", "component does not span an ideal", {"component": comp}))
        pieces.append(IdealRootSubset(space, frozenset(comp)))
    for a, b in combinations(pieces, 2):
        if any(any(bracket(L, u, v)) for u in a.ideal.basis for v in b.ideal.basis):
            raise ContractViolation(Violation("max-tor", "distinct components do not commute", {}))
    if sum(p.ideal.dim for p in pieces) != L.dim or Subspace.span([v for p in pieces for v in p.ideal.basis], L.dim).dim != L.dim:
        raise ContractViolation(Violation("max-tor", "components do not form a direct sum equal to L", {}))
    toral_parts = [rd.toral.space & p.ideal for p in pieces]
    if sum(t.dim for t in toral_parts) != rd.toral.dim or Subspace.span([v for t in toral_parts for v in t.basis], L.dim) != rd.toral.space:
        raise ContractViolation(Violation("max-tor.a", "h is not the direct sum of the h_i", {}))
    return pieces


def is_maximal_toral(d) -> bool:
    """Criterion ``L_0 = h`` (accepts a datum or a decomposition).

    If ``L_0 = h``, a toral subalgebra containing ``h`` centralizes ``h`` and so
    lies in ``L_0``; the criterion is sufficient for maximality.
    """
    d = getattr(d, "decomposition", d)
    return d.zero_space == d.toral.space


def theta_automorphism(rd: RootDatum, alpha: Weight) -> Matrix:
    """``exp(ad e) exp(ad -f) exp(ad e)`` for the chosen triple through ``alpha``.

    Asserts it maps ``L_b`` onto ``L_{s_a(b)}`` for every root ``b``, with
    ``s_a(b) = b - b(h_a) a``.
    """
    alpha = tuple(alpha)
    if not rd.integrable.get(alpha):
        raise PreconditionError("root is not integrable")
    L = rd.algebra
    t = rd.triples[alpha]
    ee = exp_ad(L, t.e)
    theta = ee @ exp_ad(L, scale(-1, t.f)) @ ee
    for beta in rd.roots:
        p = rd.pairing(beta, alpha)
        target = tuple(b - p * a for a, b in zip(alpha, beta))
        image = Subspace.span([theta @ v for v in rd.space(beta).basis], L.dim)
        if image != rd.space(target):
            raise ContractViolation(Violation("bound.b", "theta_a(L_b) != L_{s_a b}", {"alpha": alpha, "beta": beta}))
    return theta


def generated_root_support(rd: RootDatum, m: Iterable[Weight]) -> frozenset:
    """Roots whose spaces meet the subalgebra generated by ``L_a``, ``a in M cup -M``."""
    L = rd.algebra
    d = rd.decomposition
    gens = []
    for a in m:
        gens.extend(d.space(a).basis)
        gens.extend(d.space(neg(a)).basis)
    space = Subspace.span(gens, L.dim)
    while True:
        grown = space + Subspace.span(
            [bracket(L, u, v) for u in gens for v in space.basis], L.dim
        )
        if grown == space:
            break
        space = grown
    return frozenset(a for a in rd.roots if (space & d.space(a)).dim > 0)


def root_embedding(small: RootDatum, big: RootDatum, images: Sequence[Sequence]) -> dict:
    """Root map induced by a Lie homomorphism ``small -> big``.

    ``images[i]`` is the image of the i-th basis vector of the small algebra.
    Checks the homomorphism property, that toral maps into toral, that each
    root space lands in one root space, and that pairings are preserved.
    """
    S, B = small.algebra, big.algebra
    if len(images) != S.dim:
        raise PreconditionError("need one image per basis vector")
    images = [tuple(Fraction(x) for x in v) for v in images]

    def phi(v):
        return combine(v, images, B.dim)

    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            if phi(S.basis_bracket(i, j)) != bracket(B, images[i], images[j]):
                raise PreconditionError(f"map is not a homomorphism on basis pair ({i}, {j})")
    for t in small.toral.basis:
        if not big.toral.contains(phi(t)):
            raise ContractViolation(Violation("embedding", "toral element maps outside the big toral subalgebra", {}))
    mapping = {}
    for a in small.roots:
        hits = [b for b in big.roots if all(big.space(b).contains(phi(v)) for v in small.space(a).basis)]
        if len(hits) != 1:
            raise ContractViolation(Violation("embedding", "root space does not land in a single root space", {"root": a}))
        mapping[a] = hits[0]
    if len(set(mapping.values())) != len(mapping):
        raise ContractViolation(Violation("embedding", "root map is not injective", {}))
    for a in small.roots:
        if phi(small.splitting_elements[a]) != big.splitting_elements[mapping[a]]:
            raise ContractViolation(Violation("embedding", "splitting elements do not correspond", {"root": a}))
        for b in small.roots:
            if small.pairing(b, a) != big.pairing(mapping[b], mapping[a]):
                raise ContractViolation(Violation("embedding", "pairing not preserved", {"alpha": a, "beta": b}))
    return mapping
