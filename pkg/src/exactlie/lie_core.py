"""Lie algebras given by structure constants over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, JacobiViolation, NotNilpotent, PreconditionError
from .exact_linalg import (
    Matrix,
    Subspace,
    Vector,
    _rref_rows,
    nullspace,
    unit_vector,
    zero_vector,
)

Element = Vector


class LieAlgebra:
    """Finite-dimensional Lie algebra with basis ``b_0 .. b_{dim-1}``.

    ``structure`` maps ``(i, j)`` with ``i < j`` to the sparse expansion
    ``[b_i, b_j] = sum_k c * b_k`` given as ``((k, c), ...)``.  Brackets with
    ``i > j`` follow from antisymmetry and ``[b_i, b_i] = 0``.
    """

    def __init__(self, dim: int, structure: Mapping, labels: Sequence[str] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if labels is None:
            labels = [f"b{i}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
        table = {}
        for (i, j), terms in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"structure key ({i}, {j}) must satisfy 0 <= i < j < dim")
            merged: dict[int, Fraction] = {}
            for k, c in terms:
                if not 0 <= k < dim:
                    raise ValueError(f"index {k} out of range in [b{i}, b{j}]")
                merged[k] = merged.get(k, Fraction(0)) + Fraction(c)
            clean = tuple(sorted((k, c) for k, c in merged.items() if c))
            if clean:
                table[(i, j)] = clean
        self.dim = dim
        self.labels = tuple(labels)
        self.structure = table

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero brackets={len(self.structure)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.dim, self.labels, tuple(sorted(self.structure.items()))))

    @cached_property
    def _brackets(self) -> dict[tuple[int, int], tuple]:
        full = {}
        for (i, j), terms in self.structure.items():
            full[(i, j)] = terms
            full[(j, i)] = tuple((k, -c) for k, c in terms)
        return full

    @cached_property
    def _by_left(self) -> list[list[tuple[int, tuple]]]:
        rows: list[list] = [[] for _ in range(self.dim)]
        for (i, j), terms in self._brackets.items():
            rows[i].append((j, terms))
        return rows

    def basis_element(self, i: int) -> Element:
        return unit_vector(self.dim, i)

    def basis_bracket(self, i: int, j: int) -> Element:
        acc = [Fraction(0)] * self.dim
        for k, c in self._brackets.get((i, j), ()):
            acc[k] = c
        return tuple(acc)

    @cached_property
    def _basis_ad(self) -> list[Matrix]:
        mats = []
        for i in range(self.dim):
            cols = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for j, terms in self._by_left[i]:
                for k, c in terms:
                    cols[j][k] = c
            mats.append(Matrix._wrap(tuple(zip(*cols)), self.dim))
        return mats

    def zero(self) -> Element:
        return zero_vector(self.dim)


def _check(L: LieAlgebra, x: Sequence) -> None:
    if len(x) != L.dim:
        raise DimensionMismatch(f"element of length {len(x)} in a Lie algebra of dimension {L.dim}")


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Element:
    """Bilinear extension of the structure table."""
    _check(L, x)
    _check(L, y)
    acc = [Fraction(0)] * L.dim
    ys = [(j, b) for j, b in enumerate(y) if b]
    if not ys:
        return tuple(acc)
    table = L._brackets
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in ys:
            terms = table.get((i, j))
            if terms:
                ab = a * b
                for k, c in terms:
                    acc[k] += ab * c
    return tuple(acc)


def ad_matrix(L: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad_x``; column ``j`` is ``[x, b_j]``."""
    _check(L, x)
    terms = [(i, a) for i, a in enumerate(x) if a]
    if len(terms) == 1 and terms[0][1] == 1:
        return L._basis_ad[terms[0][0]]
    acc = [[Fraction(0)] * L.dim for _ in range(L.dim)]
    for i, a in terms:
        for j, t in L._by_left[i]:
            for k, c in t:
                acc[k][j] += a * c
    return Matrix._wrap(tuple(tuple(r) for r in acc), L.dim)


def find_jacobi_violation(L: LieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple ``i < j < k`` on which the Jacobi identity fails."""
    n = L.dim
    basis = [L.basis_element(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = L.basis_bracket(i, j)
            for k in range(j + 1, n):
                s1 = bracket(L, basis[i], L.basis_bracket(j, k))
                s2 = bracket(L, basis[j], L.basis_bracket(k, i))
                s3 = bracket(L, basis[k], bij)
                if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                    return (i, j, k)
    return None


def validate(L: LieAlgebra) -> None:
    """Raise :class:`JacobiViolation` naming the first bad basis triple."""
    bad = find_jacobi_violation(L)
    if bad is not None:
        raise JacobiViolation(*bad)


def killing_form(L: LieAlgebra, x: Sequence, y: Sequence) -> Fraction:
    return ad_matrix(L, x).trace_of_product(ad_matrix(L, y))


def killing_matrix(L: LieAlgebra) -> Matrix:
    ads = L._basis_ad
    return Matrix(
        [[ads[i].trace_of_product(ads[j]) for j in range(L.dim)] for i in range(L.dim)],
        cols=L.dim,
    )


def center(L: LieAlgebra) -> Subspace:
    # x is central iff sum_i x_i [b_i, b_j] = 0 for every j
    rows = []
    for j in range(L.dim):
        col_j = [L.basis_bracket(i, j) for i in range(L.dim)]
        for k in range(L.dim):
            rows.append(tuple(col_j[i][k] for i in range(L.dim)))
    return nullspace(Matrix._wrap(tuple(rows), L.dim))


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span([L.basis_bracket(i, j) for (i, j) in L.structure], L.dim)


def killing_radical(L: LieAlgebra) -> Subspace:
    return nullspace(killing_matrix(L))


def is_semisimple(L: LieAlgebra) -> bool:
    return killing_radical(L).dim == 0


def centralizer(L: LieAlgebra, space: Subspace) -> Subspace:
    """Elements commuting with every vector of ``space``."""
    if space.dim == 0:
        return Subspace.full(L.dim)
    rows = []
    for v in space.basis:
        ad = ad_matrix(L, v)
        rows.extend(ad.data)
    return nullspace(Matrix._wrap(tuple(rows), L.dim))


def is_ad_nilpotent(L: LieAlgebra, x: Sequence) -> bool:
    """``ad_x^dim == 0``, tested by repeated squaring with early exit."""
    m = ad_matrix(L, x)
    power, k = m, 1
    while k < L.dim:
        if power.is_zero():
            return True
        power = power @ power
        k *= 2
    return power.is_zero()


def exp_ad(L: LieAlgebra, x: Sequence) -> Matrix:
    """``sum_k ad_x^k / k!`` for an ad-nilpotent ``x``."""
    m = ad_matrix(L, x)
    result = Matrix.identity(L.dim)
    term = Matrix.identity(L.dim)
    for k in range(1, L.dim + 1):
        term = term @ m
        if term.is_zero():
            return result
        result = result + term * Fraction(1, factorial(k))
    if not (term @ m).is_zero():
        raise NotNilpotent("ad_x is not nilpotent")
    return result


def is_subalgebra(L: LieAlgebra, space: Subspace) -> bool:
    basis = space.basis
    return all(
        space.contains(bracket(L, basis[a], basis[b]))
        for a in range(len(basis))
        for b in range(a + 1, len(basis))
    )


def is_ideal(L: LieAlgebra, space: Subspace) -> bool:
    return all(
        space.contains(bracket(L, L.basis_element(i), v)) for v in space.basis for i in range(L.dim)
    )


def bracket_span(L: LieAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """``[left, right]`` as a subspace."""
    return Subspace.span(
        [bracket(L, u, v) for u in left.basis for v in right.basis],
        L.dim,
    )


class CoordinateMap:
    """Coordinates against a fixed (not necessarily echelon) basis."""

    def __init__(self, basis: Sequence[Sequence], ambient_dim: int):
        self.basis = tuple(tuple(Fraction(x) for x in b) for b in basis)
        self.ambient_dim = ambient_dim
        k = len(self.basis)
        aug = [b + tuple(Fraction(int(i == r)) for i in range(k)) for r, b in enumerate(self.basis)]
        rows, pivots = _rref_rows(aug, ambient_dim + k)
        if len(pivots) != k or (pivots and pivots[-1] >= ambient_dim):
            raise ValueError("basis vectors are linearly dependent")
        self._pivots = pivots
        self._transform = [r[ambient_dim:] for r in rows]
        self.space = Subspace.span(self.basis, ambient_dim)

    def __call__(self, v: Sequence) -> tuple:
        """Coordinates of ``v``; raises if ``v`` is outside the span."""
        if not self.space.contains(v):
            raise ValueError("vector is not in the span of the basis")
        return self.extended(v)

    def extended(self, v: Sequence) -> tuple:
        """A fixed linear map agreeing with the coordinates on the span."""
        k = len(self.basis)
        out = [Fraction(0)] * k
        for p, t in zip(self._pivots, self._transform):
            c = v[p]
            if c:
                for i in range(k):
                    if t[i]:
                        out[i] += c * t[i]
        return tuple(out)


def subalgebra_on(L: LieAlgebra, basis: Sequence[Sequence], labels: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra spanned by ``basis`` written in that basis."""
    coords = CoordinateMap(basis, L.dim)
    structure = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            v = bracket(L, basis[a], basis[b])
            try:
                c = coords(v)
            except ValueError:
                raise PreconditionError(f"span is not closed under the bracket (pair {a}, {b})") from None
            structure[(a, b)] = [(k, x) for k, x in enumerate(c) if x]
    return LieAlgebra(len(basis), structure, labels)


def quotient_algebra(
    L: LieAlgebra, space: Subspace, ideal: Subspace
) -> tuple[LieAlgebra, tuple]:
    """``space / ideal`` on the pivot-completion complement of ``ideal`` in ``space``.

    Returns the quotient algebra and the representatives (ambient vectors) of
    its basis.
    """
    if not ideal <= space:
        raise PreconditionError("ideal is not contained in the space")
    reps = space.complement_in_coordinates(ideal)
    coords = CoordinateMap(reps + ideal.basis, L.dim)
    m = len(reps)
    structure = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = bracket(L, reps[a], reps[b])
            try:
                c = coords(v)
            except ValueError:
                raise PreconditionError(f"space is not closed under the bracket (pair {a}, {b})") from None
            structure[(a, b)] = [(k, x) for k, x in enumerate(c[:m]) if x]
    return LieAlgebra(m, structure), reps


def direct_sum(*algebras: LieAlgebra) -> LieAlgebra:
    """Block-diagonal direct sum; labels gain an ``s<index>.`` prefix."""
    if not algebras:
        raise ValueError("need at least one summand")
    structure = {}
    labels = []
    offset = 0
    for n, alg in enumerate(algebras):
        for (i, j), terms in alg.structure.items():
            structure[(i + offset, j + offset)] = [(k + offset, c) for k, c in terms]
        labels.extend(f"s{n}.{lab}" for lab in alg.labels)
        offset += alg.dim
    return LieAlgebra(offset, structure, labels)


def block_offsets(algebras: Iterable[LieAlgebra]) -> list[int]:
    offsets, total = [], 0
    for alg in algebras:
        offsets.append(total)
        total += alg.dim
    return offsets


def embed_block(v: Sequence, offset: int, total: int) -> Element:
    out = [Fraction(0)] * total
    out[offset:offset + len(v)] = [Fraction(x) for x in v]
    return tuple(out)
