"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions.
Matrices are stored densely but every kernel skips zero entries, since the
operators met in practice (adjoint matrices in root-vector bases) are very
sparse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotCommuting, NotSplit

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (a leading unicode minus is accepted)."""
    return Fraction(text.strip().replace("−", "-"))


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- vectors ---------------------------------------------------------------

def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if k == i else _ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    if c == 0:
        return zero_vector(len(v))
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    total = _ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def is_zero(v: Iterable) -> bool:
    return not any(v)


def combine(coeffs: Sequence, vectors: Sequence[Vector], n: int | None = None) -> Vector:
    """Return ``sum(c * v)``; ``n`` is needed only when ``vectors`` is empty."""
    if n is None:
        n = len(vectors[0])
    acc = [_ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                acc[i] += c * a
    return tuple(acc)


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in r) for r in data)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self._hash = None

    @classmethod
    def _wrap(cls, rows: tuple, cols: int) -> "Matrix":
        # trusted constructor: rows already tuples of Fractions
        m = cls.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m.data = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._wrap(tuple((_ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls._wrap(
            tuple(tuple(Fraction(values[i]) if i == j else _ZERO for j in range(n)) for i in range(n)),
            n,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns), cols=len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix._wrap(tuple(zip(*self.data)), self.rows)

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.data)
        return f"Matrix([{body}])"

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._wrap(tuple(add(a, b) for a, b in zip(self.data, other.data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._wrap(tuple(sub(a, b) for a, b in zip(self.data, other.data)), self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(-x for x in r) for r in self.data), self.cols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        return Matrix._wrap(tuple(scale(c, r) for r in self.data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(r, v) for r in self.data)

    def _matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        nz = [[(j, b) for j, b in enumerate(r) if b] for r in other.data]
        out = []
        for r in self.data:
            acc = [_ZERO] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in nz[k]:
                        acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._wrap(tuple(out), other.cols)

    def apply(self, v: Sequence) -> Vector:
        return self @ v

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_diagonal(self) -> bool:
        return all(not x or i == j for i, r in enumerate(self.data) for j, x in enumerate(r))

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), _ZERO)

    def trace_of_product(self, other: "Matrix") -> Fraction:
        """``trace(self @ other)`` without forming the product."""
        total = _ZERO
        for i, r in enumerate(self.data):
            for j, a in enumerate(r):
                if a:
                    b = other.data[j][i]
                    if b:
                        total += a * b
        return total

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]


# -- echelon forms ---------------------------------------------------------

def _rref_rows(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination; returns (nonzero rref rows, pivot columns)."""
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        lead = prow[c]
        if lead != 1:
            inv = 1 / Fraction(lead)
            prow = [x * inv if x else _ZERO for x in prow]
            work[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row_i = work[i]
            f = row_i[c]
            if f:
                for j in support:
                    row_i[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, padded with zero rows to the input shape."""
    rows, _ = _rref_rows(m.data, m.cols)
    out = [tuple(Fraction(x) for x in r) for r in rows]
    out.extend((_ZERO,) * m.cols for _ in range(m.rows - len(out)))
    return Matrix._wrap(tuple(out), m.cols)


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.data, m.cols)[1])


def nullspace(m: Matrix) -> "Subspace":
    """Kernel of ``v -> m @ v`` as a subspace of Q^cols."""
    rows, pivots = _rref_rows(m.data, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -r[f]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def solve_affine(a: Matrix, b: Sequence) -> tuple[Vector, "Subspace"] | None:
    """Solve ``a @ x = b`` exactly.

    Returns ``(particular, kernel)`` where every solution is ``particular``
    plus an element of ``kernel``, or ``None`` when the system is infeasible.
    """
    b = vec(b)
    if len(b) != a.rows:
        raise DimensionMismatch(f"{a.rows} equations but {len(b)} right-hand sides")
    n = a.cols
    aug = [r + (rhs,) for r, rhs in zip(a.data, b)]
    rows, pivots = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [_ZERO] * n
    for r, p in zip(rows, pivots):
        x[p] = Fraction(r[n])
    return tuple(x), nullspace(a)


# -- subspaces -------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim stored by its canonical rref basis.

    Because the echelon basis is canonical, ``==`` is set equality.
    """

    ambient_dim: int
    basis: tuple  # tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, _ = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, tuple(tuple(Fraction(x) for x in r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Residual of ``v`` after clearing the pivot columns; zero iff ``v`` is in the subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        w = [Fraction(x) for x in v]
        for p, row in zip(self.pivots, self.basis):
            c = w[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] -= c * row[j]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of a member ``v`` against :attr:`basis` (its pivot entries)."""
        return tuple(Fraction(v[p]) for p in self.pivots)

    def element(self, coords: Sequence) -> Vector:
        return combine(coords, self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def issubspace(self, other: "Subspace") -> bool:
        return self <= other

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on the subspace (identified with Q^n via the dot product)."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return nullspace(Matrix._wrap(self.basis, self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        ann = other.annihilator().basis
        if not ann:
            return self
        # coefficient vectors c with sum_i c_i u_i annihilated by every a in ann
        gram = Matrix([[dot(u, a) for u in self.basis] for a in ann], cols=self.dim)
        ker = nullspace(gram)
        return Subspace.span([self.element(c) for c in ker.basis], self.ambient_dim)

    __and__ = intersect

    def complement_in_coordinates(self, sub: "Subspace") -> tuple:
        """Basis vectors of ``self`` completing ``sub`` (a subspace of ``self``).

        ``sub`` is rewritten in the coordinates of ``self``; the basis vectors
        of ``self`` at the non-pivot positions of that echelon form span a
        complement.  Deterministic and exact.
        """
        self._check(sub)
        coords = Subspace.span([self.coordinates(v) for v in sub.basis], self.dim)
        taken = set(coords.pivots)
        return tuple(self.basis[i] for i in range(self.dim) if i not in taken)

    def restrict_operator(self, op: Matrix) -> Matrix:
        """Matrix of an operator leaving the subspace invariant, in :attr:`basis` coordinates."""
        images = [op @ b for b in self.basis]
        return Matrix._wrap(tuple(tuple(img[p] for img in images) for p in self.pivots), self.dim)


# -- polynomials and eigenvalues --------------------------------------------

def _hessenberg(m: Matrix) -> list[list[Fraction]]:
    n = m.rows
    h = [list(r) for r in m.data]
    for k in range(1, n - 1):
        piv = None
        for i in range(k, n):
            if h[i][k - 1]:
                piv = i
                break
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for r in h:
                r[piv], r[k] = r[k], r[piv]
        lead = h[k][k - 1]
        for i in range(k + 1, n):
            t = h[i][k - 1]
            if not t:
                continue
            t = t / lead
            hi, hk = h[i], h[k]
            for j in range(k - 1, n):
                if hk[j]:
                    hi[j] -= t * hk[j]
            for r in h:
                if r[i]:
                    r[k] += t * r[i]
    return h


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial ``det(xI - m)``, coefficients lowest degree first."""
    if m.rows != m.cols:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.rows
    h = _hessenberg(m)
    polys: list[list[Fraction]] = [[_ONE]]
    for k in range(n):
        prev = polys[-1]
        p = [_ZERO] + prev  # x * p_{k-1}
        for i, c in enumerate(prev):
            p[i] -= h[k][k] * c
        prod = _ONE
        for i in range(k - 1, -1, -1):
            prod *= h[i + 1][i]
            if not prod:
                break
            coeff = h[i][k] * prod
            if coeff:
                for j, c in enumerate(polys[i]):
                    p[j] -= coeff * c
        polys.append(p)
    return polys[-1]


def _integer_roots(coeffs: list[int], bound: int) -> dict[int, int]:
    """Integer roots (with multiplicity) of a monic integer polynomial, all of size <= bound."""
    roots: dict[int, int] = {}
    p = list(coeffs)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
        roots[0] = roots.get(0, 0) + 1

    def deflate(p: list[int], r: int) -> list[int] | None:
        # synthetic division by (x - r); None if remainder is nonzero
        q = [0] * (len(p) - 1)
        carry = 0
        for i in range(len(p) - 1, 0, -1):
            carry = p[i] + carry * r
            q[i - 1] = carry
        return q if p[0] + carry * r == 0 else None

    d = 1
    while len(p) > 1 and d <= min(bound, abs(p[0])):
        if p[0] % d == 0:
            for r in (d, -d):
                while len(p) > 1:
                    q = deflate(p, r)
                    if q is None:
                        break
                    p = q
                    roots[r] = roots.get(r, 0) + 1
        d += 1
    return roots


def rational_eigenvalues(m: Matrix) -> dict[Fraction, int]:
    """Rational eigenvalues of ``m`` with algebraic multiplicity.

    The matrix is scaled to an integer matrix, whose characteristic polynomial
    is monic with integer coefficients; by the rational root theorem its
    rational roots are integer divisors of the constant term, and they are
    bounded by the max-row-sum norm.
    """
    n = m.rows
    if n == 0:
        return {}
    if m.is_diagonal():
        out: dict[Fraction, int] = {}
        for i in range(n):
            out[m.data[i][i]] = out.get(m.data[i][i], 0) + 1
        return out
    scale_by = lcm(*(x.denominator for r in m.data for x in r))
    im = m * scale_by
    bound = max(sum(abs(x) for x in r) for r in im.data)
    poly = charpoly(im)
    assert all(c.denominator == 1 for c in poly)
    coeffs = [int(c) for c in poly]
    roots = _integer_roots(coeffs, int(bound))
    return {Fraction(r, scale_by): k for r, k in sorted(roots.items())}


def simultaneous_eigenspaces(ops: Sequence[Matrix], dim: int | None = None) -> list[tuple[tuple, Subspace]]:
    """Common eigenspaces of a commuting family of rational matrices.

    Returns ``(eigenvalue tuple, subspace)`` pairs sorted by eigenvalue tuple.
    Raises :class:`NotCommuting` for a non-commuting pair and
    :class:`NotSplit` when some operator has an irrational eigenvalue or is
    not diagonalizable.
    """
    if dim is None:
        if not ops:
            raise ValueError("dimension required for an empty family")
        dim = ops[0].rows
    for op in ops:
        if op.shape != (dim, dim):
            raise DimensionMismatch(f"operator of shape {op.shape} on a space of dimension {dim}")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not (ops[i] @ ops[j] - ops[j] @ ops[i]).is_zero():
                raise NotCommuting(i, j)

    pieces: list[tuple[tuple, Subspace]] = [((), Subspace.full(dim))]
    for index, op in enumerate(ops):
        refined = []
        for values, space in pieces:
            local = space.restrict_operator(op)
            found = 0
            for lam, _mult in rational_eigenvalues(local).items():
                kernel = nullspace(local - Matrix.identity(space.dim) * lam)
                refined.append((values + (lam,), Subspace.span([space.element(c) for c in kernel.basis], dim)))
                found += kernel.dim
            if found != space.dim:
                raise NotSplit(
                    f"operator {index} is not diagonalizable over the rationals "
                    f"(eigenspaces cover {found} of {space.dim} dimensions)",
                    operator=index,
                )
        pieces = refined
    pieces.sort(key=lambda p: p[0])
    return pieces
