"""Split toral subalgebras and weight space decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotCommuting, NotSplit, NotToral, PreconditionError
from .exact_linalg import Subspace, Vector, combine, dot, simultaneous_eigenspaces
from .lie_core import CoordinateMap, LieAlgebra, ad_matrix, bracket, embed_block

Weight = tuple  # tuple[Fraction, ...], values on the chosen toral basis


class ToralSubalgebra:
    """A nonzero split toral subalgebra with a fixed ordered basis.

    Weights are recorded as their values on :attr:`basis`, so two weights are
    equal exactly when their coordinate tuples are.
    """

    def __init__(self, algebra: LieAlgebra, basis: Iterable[Sequence], check: bool = True):
        basis = tuple(tuple(Fraction(x) for x in b) for b in basis)
        if not basis:
            raise NotToral("a toral subalgebra must be nonzero")
        for b in basis:
            if len(b) != algebra.dim:
                raise DimensionMismatch(f"toral vector of length {len(b)} in dimension {algebra.dim}")
        self.algebra = algebra
        self.basis = basis
        try:
            self._coords = CoordinateMap(basis, algebra.dim)
        except ValueError:
            raise NotToral("toral basis vectors are linearly dependent") from None
        self.space = self._coords.space
        if check:
            reason = _toral_failure(algebra, basis)
            if reason:
                raise NotToral(reason)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"ToralSubalgebra(dim={self.dim}, ambient={self.algebra.dim})"

    def coordinates(self, h: Sequence) -> tuple:
        """Coordinates of a toral element against :attr:`basis`."""
        return self._coords(h)

    def element(self, coords: Sequence) -> Vector:
        return combine(coords, self.basis, self.algebra.dim)

    def weight_functional(self, weight: Weight, v: Sequence) -> Fraction:
        """A linear extension of ``weight`` to the whole algebra, evaluated at ``v``."""
        return dot(weight, self._coords.extended(v))

    def evaluate(self, weight: Weight, h: Sequence) -> Fraction:
        """``weight(h)`` for ``h`` in the toral subalgebra."""
        return dot(weight, self.coordinates(h))

    def contains(self, v: Sequence) -> bool:
        return self.space.contains(v)

    @cached_property
    def ad_matrices(self) -> list:
        return [ad_matrix(self.algebra, b) for b in self.basis]


def _toral_failure(L: LieAlgebra, basis: Sequence[Sequence]) -> str | None:
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if any(bracket(L, basis[a], basis[b])):
                return f"basis elements {a} and {b} do not commute"
    try:
        simultaneous_eigenspaces([ad_matrix(L, b) for b in basis], L.dim)
    except NotSplit as exc:
        return f"not split: {exc}"
    except NotCommuting as exc:
        return str(exc)
    return None


def is_toral(L: LieAlgebra, space: Subspace) -> bool:
    """Nonzero, abelian, and simultaneously diagonalizable over the rationals."""
    if space.ambient_dim != L.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    if space.dim == 0:
        return False
    return _toral_failure(L, space.basis) is None


@dataclass(frozen=True, eq=False)
class WeightDecomposition:
    """``L = sum of weight spaces`` for the adjoint action of a toral subalgebra.

    ``spaces`` always includes the zero weight, even when its space is the
    toral subalgebra itself.
    """

    toral: ToralSubalgebra
    spaces: dict  # Weight -> Subspace

    @property
    def algebra(self) -> LieAlgebra:
        return self.toral.algebra

    @cached_property
    def zero_weight(self) -> Weight:
        return (Fraction(0),) * self.toral.dim

    @cached_property
    def roots(self) -> tuple:
        """Nonzero weights, sorted."""
        return tuple(w for w in self.spaces if any(w))

    @property
    def zero_space(self) -> Subspace:
        return self.spaces.get(self.zero_weight, Subspace.zero(self.algebra.dim))

    def space(self, weight: Weight) -> Subspace:
        return self.spaces.get(tuple(weight), Subspace.zero(self.algebra.dim))

    def is_root(self, weight: Weight) -> bool:
        return any(weight) and tuple(weight) in self.spaces

    def is_weight(self, weight: Weight) -> bool:
        """In ``R`` or zero."""
        return tuple(weight) in self.spaces or not any(weight)

    def same_as(self, other: "WeightDecomposition") -> bool:
        return self.spaces == other.spaces

    def __repr__(self) -> str:
        return f"WeightDecomposition({len(self.roots)} roots, zero space dim {self.zero_space.dim})"


def weight_decomposition(L: LieAlgebra, toral: ToralSubalgebra) -> WeightDecomposition:
    if toral.algebra is not L and toral.algebra != L:
        raise PreconditionError("toral subalgebra belongs to a different algebra")
    pieces = simultaneous_eigenspaces(toral.ad_matrices, L.dim)
    spaces = {tuple(values): space for values, space in pieces}
    return WeightDecomposition(toral, spaces)


def check_decomposition(d: WeightDecomposition) -> list[str]:
    """Direct-sum and eigen-equation checks; returns a list of problems."""
    L = d.algebra
    problems = []
    total = sum(s.dim for s in d.spaces.values())
    if total != L.dim:
        problems.append(f"weight space dimensions sum to {total}, not {L.dim}")
    union = Subspace.span([v for s in d.spaces.values() for v in s.basis], L.dim)
    if union.dim != total:
        problems.append("weight spaces are not independent")
    for w, s in d.spaces.items():
        if s.dim == 0:
            problems.append(f"weight {w} has a zero space")
        for x in s.basis:
            for coord, h in zip(range(d.toral.dim), d.toral.basis):
                lhs = bracket(L, h, x)
                if lhs != tuple(w[coord] * a for a in x):
                    problems.append(f"[h_{coord}, x] != w(h_{coord}) x for weight {w}")
    return problems


def restrict(d: WeightDecomposition, sub: ToralSubalgebra, check: bool = True) -> WeightDecomposition:
    """Decomposition with respect to a toral subalgebra of ``d.toral``.

    Each new weight space is the sum of the old weight spaces whose weights
    restrict to it.  With ``check`` the result is compared against a direct
    recomputation.
    """
    L = d.algebra
    if not sub.space <= d.toral.space:
        raise PreconditionError("subalgebra is not contained in the toral subalgebra")
    embed = [d.toral.coordinates(t) for t in sub.basis]
    merged: dict[Weight, list] = {}
    for w, space in d.spaces.items():
        beta = tuple(dot(w, e) for e in embed)
        merged.setdefault(beta, []).extend(space.basis)
    spaces = {beta: Subspace.span(vs, L.dim) for beta, vs in sorted(merged.items())}
    result = WeightDecomposition(sub, spaces)
    if check:
        direct = weight_decomposition(L, sub)
        if not result.same_as(direct):
            raise AssertionError("restricted decomposition disagrees with direct recomputation")
    return result


def direct_sum_toral(L: LieAlgebra, parts: Sequence[ToralSubalgebra]) -> ToralSubalgebra:
    """Block toral subalgebra of ``direct_sum(*(t.algebra for t in parts))``."""
    basis = []
    offset = 0
    for t in parts:
        basis.extend(embed_block(b, offset, L.dim) for b in t.basis)
        offset += t.algebra.dim
    if offset != L.dim:
        raise DimensionMismatch("summand dimensions do not add up to the algebra dimension")
    return ToralSubalgebra(L, basis, check=False)
