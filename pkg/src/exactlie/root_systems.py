"""Abstract root systems: axioms, reflections, closures and family truncations.

Roots are tuples of fractions in ``Q^rank``; each root ``a`` carries a stored
coroot covector ``a_check`` with ``a_check(v) = dot(a_check, v)``.  Roots are
only required to span :attr:`AbstractRootSystem.space`, which for type ``A``
in its usual coordinates is the hyperplane of vectors with coordinate sum 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import ContractViolation, PreconditionError, UnsupportedFamily, Violation
from .exact_linalg import Matrix, Subspace, dot, solve_affine, vec

FAMILY_MINIMUM = {"A": 1, "B": 1, "C": 1, "D": 2, "BC": 1}

Root = tuple


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _is_zero(a: Root) -> bool:
    return not any(a)


@dataclass(frozen=True, eq=False)
class AbstractRootSystem:
    rank: int  # ambient coordinate dimension
    roots: frozenset
    coroot: Mapping  # root -> covector
    space: Subspace

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AbstractRootSystem)
            and self.rank == other.rank
            and self.roots == other.roots
            and all(self.coroot[a] == other.coroot[a] for a in self.roots)
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.roots))

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.roots

    def __repr__(self) -> str:
        return f"AbstractRootSystem({len(self.roots)} roots, rank {self.rank}, span dim {self.space.dim})"

    @cached_property
    def sorted_roots(self) -> tuple:
        return tuple(sorted(self.roots))

    def pairing(self, beta: Root, alpha: Root) -> Fraction:
        """``alpha_check(beta)``."""
        return dot(self.coroot[tuple(alpha)], beta)

    def is_root_or_zero(self, v: Root) -> bool:
        return _is_zero(v) or tuple(v) in self.roots


def make_system(roots: Iterable[Sequence], coroot: Mapping, rank: int | None = None, check: bool = True) -> AbstractRootSystem:
    """Build a system from roots and coroots; raises :class:`ContractViolation` if ``check`` fails."""
    roots = frozenset(vec(a) for a in roots)
    coroot = {vec(a): vec(c) for a, c in coroot.items()}
    if rank is None:
        rank = len(next(iter(roots))) if roots else 0
    space = Subspace.span(roots, rank)
    rs = AbstractRootSystem(rank, roots, {a: coroot[a] for a in roots if a in coroot}, space)
    if check:
        v = check_axioms(roots, coroot, space)
        if v is not None:
            raise ContractViolation(v)
    return rs


def check_axioms(candidate: Iterable[Sequence], coroot: Mapping, space: Subspace | None = None) -> Violation | None:
    """First failing axiom, or ``None``.

    Checked in order: (i) ``0`` is not a root and the roots span ``space``
    (the whole coordinate space when ``space`` is omitted); (ii) every root
    has a coroot with ``a_check(a) = 2`` and ``s_a(b) = b - a_check(b) a`` is a
    root; (iii) ``a_check(b)`` is an integer.
    """
    roots = [vec(a) for a in candidate]
    coroot = {vec(a): vec(c) for a, c in coroot.items()}
    if not roots:
        return Violation("axioms.i", "empty root set", {})
    n = len(roots[0])
    if any(len(a) != n for a in roots):
        return Violation("axioms.i", "roots of different lengths", {})
    rset = set(roots)
    for a in roots:
        if _is_zero(a):
            return Violation("axioms.i", "zero is a root", {"root": a})
    target = space if space is not None else Subspace.full(n)
    if Subspace.span(roots, n) != target:
        return Violation("axioms.i", "roots do not span the space", {"span_dim": Subspace.span(roots, n).dim, "space_dim": target.dim})
    for a in sorted(rset):
        c = coroot.get(a)
        if c is None or len(c) != n:
            return Violation("axioms.ii", "missing coroot", {"root": a})
        if dot(c, a) != 2:
            return Violation("axioms.ii", "coroot does not take the value 2 on its root", {"root": a, "value": dot(c, a)})
    for a in sorted(rset):
        c = coroot[a]
        for b in sorted(rset):
            p = dot(c, b)
            if tuple(x - p * y for x, y in zip(b, a)) not in rset:
                return Violation("axioms.ii", "reflection leaves the root set", {"alpha": a, "beta": b, "pairing": p})
            if p.denominator != 1:
                return Violation("axioms.iii", "pairing is not an integer", {"alpha": a, "beta": b, "pairing": p})
    return None


def reflect(rs: AbstractRootSystem, alpha: Root, beta: Sequence) -> Root:
    """``s_alpha(beta) = beta - alpha_check(beta) alpha`` for any vector ``beta``."""
    alpha = tuple(alpha)
    if alpha not in rs.roots:
        raise PreconditionError(f"{alpha} is not a root")
    p = dot(rs.coroot[alpha], beta)
    return tuple(Fraction(b) - p * a for a, b in zip(alpha, beta))


def is_closed(rs: AbstractRootSystem, delta: Iterable[Root]) -> bool:
    delta = set(delta)
    return all(_add(a, b) not in rs.roots or _add(a, b) in delta for a in delta for b in delta)


def is_symmetric(delta: Iterable[Root]) -> bool:
    delta = set(delta)
    return all(_neg(a) in delta for a in delta)


def is_reflection_stable(rs: AbstractRootSystem, delta: Iterable[Root]) -> bool:
    delta = set(delta)
    return all(reflect(rs, a, b) in delta for a in delta for b in delta)


@dataclass(frozen=True, eq=False)
class Subsystem:
    """Subset of a parent system stable under its own reflections."""

    parent: AbstractRootSystem
    members: frozenset

    def __post_init__(self):
        if not self.members <= self.parent.roots:
            raise PreconditionError("members are not roots of the parent")
        if not is_reflection_stable(self.parent, self.members):
            raise ContractViolation(Violation("subsystem", "members are not stable under their reflections", {}))

    def __len__(self) -> int:
        return len(self.members)

    def as_system(self) -> AbstractRootSystem:
        """The members as a root system in their own span."""
        coroot = {a: self.parent.coroot[a] for a in self.members}
        space = Subspace.span(self.members, self.parent.rank)
        return AbstractRootSystem(self.parent.rank, self.members, coroot, space)


def connected_components(rs: AbstractRootSystem) -> list[frozenset]:
    """Classes of the relation generated by ``a_check(b) != 0``, sorted by their smallest root.

    Each class is asserted to be a closed subsystem.
    """
    roots = rs.sorted_roots
    parent = {a: a for a in roots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(roots, 2):
        if rs.pairing(b, a) != 0 or rs.pairing(a, b) != 0:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for a in roots:
        groups.setdefault(find(a), set()).add(a)
    comps = [frozenset(g) for _, g in sorted(groups.items())]
    for c in comps:
        if not (is_closed(rs, c) and is_reflection_stable(rs, c)):
            raise ContractViolation(Violation("components", "component is not a closed subsystem", {"component": sorted(c)}))
    return comps


def is_irreducible(rs: AbstractRootSystem) -> bool:
    return len(connected_components(rs)) == 1


def closure_delta_M(rs: AbstractRootSystem, m: Iterable[Sequence]) -> frozenset:
    """Smallest symmetric closed subset containing ``m``.

    Pairwise-sum fixed point starting from ``m`` and ``-m``; the result is
    asserted symmetric, closed and stable under its own reflections.
    """
    m = [vec(a) for a in m]
    for a in m:
        if a not in rs.roots:
            raise PreconditionError(f"{a} is not a root")
    current = set(m) | {_neg(a) for a in m}
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            for b in list(current):
                s = _add(a, b)
                if s in rs.roots and s not in current:
                    current.add(s)
                    new.append(s)
        frontier = new
    result = frozenset(current)
    if not (is_symmetric(result) and is_closed(rs, result) and is_reflection_stable(rs, result)):
        raise ContractViolation(Violation("closure", "closure is not a symmetric closed subsystem", {"m": m}))
    return result


def symmetric_closed_subsets(rs: AbstractRootSystem) -> list[frozenset]:
    """Every symmetric closed subset, by brute force over pairs ``{a, -a}``.

    Exponential in ``len(rs) / 2``; meant as an oracle for small systems.
    """
    pairs = sorted({min(a, _neg(a)) for a in rs.roots})
    out = []
    for mask in range(1 << len(pairs)):
        delta = set()
        for i, a in enumerate(pairs):
            if mask >> i & 1:
                delta.add(a)
                delta.add(_neg(a))
        if is_closed(rs, delta):
            out.append(frozenset(delta))
    return out


def partial_sum_witness(rs: AbstractRootSystem, summands: Sequence[Sequence], beta: Sequence) -> tuple | None:
    """Ordering of ``summands`` whose prefix sums all lie in ``R`` or are zero.

    Returns a tuple of indices into ``summands`` or ``None``.  Depth-first
    search over subsets; a subset whose sum is not in ``R`` or zero, or which
    was already shown to be a dead end, is never expanded twice.
    """
    summands = [vec(a) for a in summands]
    beta = vec(beta)
    k = len(summands)
    total = tuple(sum(col, Fraction(0)) for col in zip(*summands)) if summands else beta
    if total != beta:
        raise PreconditionError("summands do not add up to beta")
    full = (1 << k) - 1
    dead: set = set()

    def search(mask: int, acc: Root, order: list) -> list | None:
        if mask == full:
            return order
        if mask in dead:
            return None
        tried = set()
        for i in range(k):
            if mask >> i & 1 or summands[i] in tried:
                continue
            tried.add(summands[i])
            nxt = _add(acc, summands[i])
            if rs.is_root_or_zero(nxt):
                found = search(mask | 1 << i, nxt, order + [i])
                if found is not None:
                    return found
        dead.add(mask)
        return None

    found = search(0, tuple(Fraction(0) for _ in beta), [])
    return None if found is None else tuple(found)


class SingularPairing(PreconditionError):
    pass


def _pairing_matrix(rs: AbstractRootSystem, base: Sequence[Root]) -> Matrix:
    # row j, column i: alpha_j_check(alpha_i)
    return Matrix([[rs.pairing(a_i, a_j) for a_i in base] for a_j in base])


def cartan_solve(rs: AbstractRootSystem, base: Sequence[Sequence], eta: Sequence) -> tuple:
    """Solve ``sum_i alpha_j_check(alpha_i) x_i = alpha_j_check(eta)`` for ``x``.

    When ``eta`` lies in the span of ``base`` the solution is asserted to
    satisfy ``eta = sum_i x_i alpha_i``.
    """
    base = [vec(a) for a in base]
    eta = vec(eta)
    for a in base:
        if a not in rs.roots:
            raise PreconditionError(f"{a} is not a root")
    a = _pairing_matrix(rs, base)
    solved = solve_affine(a, [dot(rs.coroot[b], eta) for b in base])
    if solved is None or solved[1].dim:
        raise SingularPairing("pairing matrix of the base is singular")
    x = solved[0]
    if Subspace.span(base, rs.rank).contains(eta):
        recombined = tuple(sum((c * b[i] for c, b in zip(x, base)), Fraction(0)) for i in range(rs.rank))
        if recombined != eta:
            raise ContractViolation(Violation("cartan_solve", "solution does not reproduce eta", {"eta": eta, "x": x}))
    return x


def roots_in_span(rs: AbstractRootSystem, base: Sequence[Sequence]) -> frozenset:
    span = Subspace.span([vec(a) for a in base], rs.rank)
    return frozenset(a for a in rs.roots if span.contains(a))


def finiteness_certificate(rs: AbstractRootSystem, base: Sequence[Sequence], bound: int = 4) -> frozenset:
    """Roots in ``span(base)`` recovered from right-hand sides in ``[-bound, bound]^n``.

    Every root ``eta`` in the span is determined by the integers
    ``alpha_j_check(eta)``; when all pairings lie in ``[-4, 4]`` there are at
    most ``9^n`` candidates.  Asserts the enumeration finds exactly the roots
    of the span.
    """
    base = [vec(a) for a in base]
    a = _pairing_matrix(rs, base)
    solved = solve_affine(a, [0] * len(base))
    if solved is None or solved[1].dim:
        raise SingularPairing("pairing matrix of the base is singular")
    found = set()
    for rhs in product(range(-bound, bound + 1), repeat=len(base)):
        sol = solve_affine(a, rhs)
        eta = tuple(sum((c * b[i] for c, b in zip(sol[0], base)), Fraction(0)) for i in range(rs.rank))
        if eta in rs.roots:
            found.add(eta)
    direct = roots_in_span(rs, base)
    if found != direct:
        raise ContractViolation(
            Violation("finiteness", "enumeration over bounded pairings misses roots", {"missing": sorted(direct - found)})
        )
    return frozenset(found)


def sdiv(rs: AbstractRootSystem | Subsystem) -> Subsystem:
    """Roots whose double is not a root, as a subsystem."""
    if isinstance(rs, Subsystem):
        rs = rs.as_system()
    members = frozenset(a for a in rs.roots if tuple(2 * x for x in a) not in rs.roots)
    return Subsystem(rs, members)


def is_reduced(rs: AbstractRootSystem) -> bool:
    return len(sdiv(rs)) == len(rs)


def _standard_coroot(a: Root) -> Root:
    n2 = dot(a, a)
    return tuple(2 * x / n2 for x in a)


def family_truncation(family: str, n: int) -> AbstractRootSystem:
    """Standard coordinate realization with coroots ``2a / (a, a)``.

    ``A_n`` lives in ``Q^{n+1}`` (roots ``e_i - e_j``); ``B_n``, ``C_n``,
    ``D_n`` and ``BC_n`` live in ``Q^n``.
    """
    if family not in FAMILY_MINIMUM or not isinstance(n, int) or n < FAMILY_MINIMUM[family]:
        raise UnsupportedFamily(f"unsupported truncation ({family!r}, {n})")
    rank = n + 1 if family == "A" else n

    def e(i, c=1):
        return tuple(Fraction(c) if k == i else Fraction(0) for k in range(rank))

    roots = set()
    if family == "A":
        for i in range(rank):
            for j in range(rank):
                if i != j:
                    roots.add(_add(e(i), e(j, -1)))
    else:
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.add(_add(e(i, si), e(j, sj)))
        for i in range(n):
            for s in (1, -1):
                if family in ("B", "BC"):
                    roots.add(e(i, s))
                if family in ("C", "BC"):
                    roots.add(e(i, 2 * s))
    return make_system(roots, {a: _standard_coroot(a) for a in roots}, rank)


def _include(a: Root, rank: int) -> Root:
    return tuple(a) + (Fraction(0),) * (rank - len(a))


@dataclass(frozen=True)
class ChainLink:
    n: int
    subset: bool
    closed: bool
    subsystem: bool
    irreducible: bool
    coroots_agree: bool

    @property
    def ok(self) -> bool:
        return self.subset and self.closed and self.subsystem and self.irreducible and self.coroots_agree


@dataclass(frozen=True)
class ChainReport:
    family: str
    n_min: int
    n_max: int
    links: tuple
    union_ok: bool

    @property
    def ok(self) -> bool:
        return self.union_ok and all(link.ok for link in self.links)

    def failures(self) -> list:
        return [link for link in self.links if not link.ok]


def chain_check(family: str, n_max: int, n_min: int | None = None) -> ChainReport:
    """Check ``X_n -> X_{n+1}`` (coordinate inclusion) for ``n_min <= n < n_max``.

    Each link records whether the image is a subset, closed, a subsystem,
    irreducible, and whether the coroots of the image agree with the
    restriction of the bigger system's coroots.  Finally the union of all
    images inside ``X_{n_max}`` is compared with the roots of ``X_{n_max}``
    in the span of that union.
    """
    lo = FAMILY_MINIMUM.get(family) if n_min is None else n_min
    if family not in FAMILY_MINIMUM or lo is None or lo < FAMILY_MINIMUM[family] or n_max < lo + 1:
        raise UnsupportedFamily(f"unsupported chain ({family!r}, {n_min}..{n_max})")
    systems = {n: family_truncation(family, n) for n in range(lo, n_max + 1)}
    links = []
    for n in range(lo, n_max):
        small, big = systems[n], systems[n + 1]
        image = {_include(a, big.rank): a for a in small.roots}
        subset = set(image) <= big.roots
        closed = subset and is_closed(big, image)
        stable = subset and is_reflection_stable(big, image)
        irreducible = is_irreducible(small)
        agree = subset and all(
            big.pairing(_include(b, big.rank), _include(a, big.rank)) == small.pairing(b, a)
            for a in small.roots
            for b in small.roots
        )
        links.append(ChainLink(n, subset, closed, stable, irreducible, agree))
    top = systems[n_max]
    union = set(top.roots)
    for n in range(lo, n_max):
        union |= {_include(a, top.rank) for a in systems[n].roots}
    union_ok = union == set(roots_in_span(top, list(union)))
    return ChainReport(family, lo, n_max, tuple(links), union_ok)


def extract_abstract(rd) -> AbstractRootSystem:
    """Abstract system of a datum: weights as vectors, coroot of ``a`` from ``h_a``.

    ``a_check(b) = b(h_a)``, which is the dot product of ``b`` with the toral
    coordinates of ``h_a``.
    """
    bad = [a for a in rd.roots if not rd.integrable[a]]
    if bad:
        raise PreconditionError(f"root {bad[0]} is not integrable")
    coroot = {a: rd.coroot(a) for a in rd.roots}
    rank = rd.toral.dim
    roots = frozenset(rd.roots)
    space = Subspace.span(roots, rank)
    v = check_axioms(roots, coroot, space)
    if v is not None:
        raise ContractViolation(v)
    return AbstractRootSystem(rank, roots, coroot, space)


def positive_roots(rs: AbstractRootSystem) -> list:
    """Roots whose first nonzero coordinate is positive."""
    return sorted(a for a in rs.roots if next(x for x in a if x) > 0)


def simple_roots(rs: AbstractRootSystem) -> list:
    """Positive roots that are not a sum of two positive roots."""
    pos = positive_roots(rs)
    sums = {_add(a, b) for a in pos for b in pos}
    return [a for a in pos if a not in sums]


def cartan_matrix(rs: AbstractRootSystem, simple: Sequence[Root] | None = None) -> tuple:
    """``C[i][j] = alpha_i_check(alpha_j)``."""
    simple = simple_roots(rs) if simple is None else simple
    return tuple(tuple(int(rs.pairing(b, a)) for b in simple) for a in simple)


def _canonical_matrix(m: Sequence[Sequence[int]]) -> tuple:
    k = len(m)
    return min(
        tuple(m[p[i]][p[j]] for i in range(k) for j in range(k)) for p in permutations(range(k))
    ) if k else ()


def fingerprint(rs: AbstractRootSystem) -> tuple:
    """``(root count, component count, sorted per-component (size, canonical Cartan))``.

    The Cartan matrix of each component is canonicalized by minimizing over
    simultaneous row and column permutations.
    """
    simple = simple_roots(rs)
    parts = []
    for comp in connected_components(rs):
        s = [a for a in simple if a in comp]
        parts.append((len(comp), _canonical_matrix(cartan_matrix(rs, s))))
    return (len(rs.roots), len(parts), tuple(sorted(parts)))


def check_root_map(small: AbstractRootSystem, big: AbstractRootSystem, mapping: Mapping) -> Violation | None:
    """A root map is injective, additive where sums are roots, preserves
    pairings, and has a closed irreducible image when ``small`` is irreducible."""
    if set(mapping) != set(small.roots):
        return Violation("embedding", "map is not defined on every root", {})
    if len(set(mapping.values())) != len(mapping) or not set(mapping.values()) <= big.roots:
        return Violation("embedding", "map is not an injection into the roots", {})
    for a in small.roots:
        for b in small.roots:
            if small.pairing(b, a) != big.pairing(mapping[b], mapping[a]):
                return Violation("embedding", "pairing not preserved", {"alpha": a, "beta": b})
            s = _add(a, b)
            if s in small.roots and mapping[s] != _add(mapping[a], mapping[b]):
                return Violation("embedding", "map is not additive", {"alpha": a, "beta": b})
    image = set(mapping.values())
    if not is_closed(big, image):
        return Violation("embedding", "image is not closed", {})
    if is_irreducible(small) and not is_irreducible(Subsystem(big, frozenset(image)).as_system()):
        return Violation("embedding", "image is not irreducible", {})
    return None
