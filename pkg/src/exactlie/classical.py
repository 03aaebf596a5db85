"""Builders for gl, sl, so and sp over the rationals.

Bases are fixed so results are reproducible:

* ``gl(n)``: every elementary matrix ``E_ij`` off the diagonal in row-major
  order, then ``E_11 .. E_nn``; toral basis ``E_ii``.
* ``sl(n)``: the same off-diagonal ``E_ij``, then ``H_i = E_ii - E_{i+1,i+1}``;
  toral basis ``H_i``.
* ``so_odd(n) = so_{2n+1}``, ``so_even(n) = so_{2n}``, ``sp(n) = sp_{2n}``:
  matrices ``X`` with ``X^T J + J X = 0`` where ``J`` is the antidiagonal form
  (symmetric for so, ``[[0, K], [-K, 0]]`` for sp).  The basis is one element
  ``E_ij -/+ E_{j'i'}`` per position strictly above the antidiagonal (plus the
  antidiagonal ``E_{ii'}`` for sp), with ``i' = N-1-i``; the diagonal members
  are ``H_i = E_ii - E_{i'i'}``, which form the toral basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedFamily
from .lie_core import CoordinateMap, LieAlgebra, direct_sum
from .toral import ToralSubalgebra, direct_sum_toral

FAMILIES = ("gl", "sl", "so_odd", "so_even", "sp", "abelian")

SparseMatrix = dict  # {(row, col): Fraction}


@dataclass(frozen=True)
class MatrixRealization:
    size: int
    matrices: tuple  # tuple[SparseMatrix, ...]
    labels: tuple
    toral_indices: tuple


def _label(prefix: str, i: int, j: int, n: int) -> str:
    return f"{prefix}{i + 1}{j + 1}" if n < 10 else f"{prefix}{i + 1},{j + 1}"


def _gl_sl(n: int, traceless: bool) -> MatrixRealization:
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append({(i, j): Fraction(1)})
                labels.append(_label("E", i, j, n))
    toral = []
    if traceless:
        for i in range(n - 1):
            toral.append(len(mats))
            mats.append({(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)})
            labels.append(f"H{i + 1}")
    else:
        for i in range(n):
            toral.append(len(mats))
            mats.append({(i, i): Fraction(1)})
            labels.append(_label("E", i, i, n))
    return MatrixRealization(n, tuple(mats), tuple(labels), tuple(toral))


def _form_preserving(size: int, symplectic: bool) -> MatrixRealization:
    half = size // 2

    def eps(i: int) -> int:
        return 1 if (not symplectic or i < half) else -1

    off, diag = [], []
    for i in range(size):
        for j in range(size):
            ip, jp = size - 1 - i, size - 1 - j
            if i + j < size - 1:
                sign = Fraction(-eps(i) * eps(j)) if symplectic else Fraction(-1)
                m = {(i, j): Fraction(1), (jp, ip): sign}
                entry = (m, _label("X", i, j, size))
                (diag if i == j else off).append(entry)
            elif i + j == size - 1 and symplectic:
                off.append(({(i, j): Fraction(1)}, _label("X", i, j, size)))
    mats = [m for m, _ in off] + [m for m, _ in diag]
    labels = [lab for _, lab in off] + [f"H{k + 1}" for k in range(len(diag))]
    toral = tuple(range(len(off), len(off) + len(diag)))
    return MatrixRealization(size, tuple(mats), tuple(labels), toral)


def matrix_realization(family: str, n: int) -> MatrixRealization:
    if family == "gl" and n >= 1:
        return _gl_sl(n, traceless=False)
    if family == "sl" and n >= 2:
        return _gl_sl(n, traceless=True)
    if family == "so_odd" and n >= 1:
        return _form_preserving(2 * n + 1, symplectic=False)
    if family == "so_even" and n >= 2:
        return _form_preserving(2 * n, symplectic=False)
    if family == "sp" and n >= 1:
        return _form_preserving(2 * n, symplectic=True)
    raise UnsupportedFamily(f"unsupported classical family ({family!r}, {n})")


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    out: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    for (i, k), x in b.items():
        for (k2, j), y in a.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) - x * y
    return {key: v for key, v in out.items() if v}


def _flatten(m: SparseMatrix, size: int) -> tuple:
    v = [Fraction(0)] * (size * size)
    for (i, j), x in m.items():
        v[i * size + j] = Fraction(x)
    return tuple(v)


def algebra_from_matrices(real: MatrixRealization) -> LieAlgebra:
    size = real.size
    coords = CoordinateMap([_flatten(m, size) for m in real.matrices], size * size)
    structure = {}
    for a in range(len(real.matrices)):
        for b in range(a + 1, len(real.matrices)):
            c = commutator(real.matrices[a], real.matrices[b])
            if c:
                structure[(a, b)] = [(k, x) for k, x in enumerate(coords(_flatten(c, size))) if x]
    return LieAlgebra(len(real.matrices), structure, real.labels)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, [f"z{i + 1}" for i in range(n)])


def build_classical(family: str, n: int) -> tuple[LieAlgebra, ToralSubalgebra]:
    """Classical matrix algebra with its diagonal Cartan subalgebra as toral part.

    ``family`` is one of ``gl``, ``sl``, ``so_odd`` (so_{2n+1}), ``so_even``
    (so_{2n}), ``sp`` (sp_{2n}); ``abelian`` gives an n-dimensional abelian
    algebra whose toral part is the whole algebra.
    """
    if family == "abelian":
        if n < 1:
            raise UnsupportedFamily("abelian algebra needs n >= 1")
        L = abelian(n)
        return L, ToralSubalgebra(L, [L.basis_element(i) for i in range(n)])
    real = matrix_realization(family, n)
    L = algebra_from_matrices(real)
    toral = ToralSubalgebra(L, [L.basis_element(i) for i in real.toral_indices], check=False)
    return L, toral


def direct_sum_pairs(*pairs: tuple[LieAlgebra, ToralSubalgebra]) -> tuple[LieAlgebra, ToralSubalgebra]:
    """Direct sum of algebras with the block toral subalgebra."""
    L = direct_sum(*(p[0] for p in pairs))
    return L, direct_sum_toral(L, [p[1] for p in pairs])
