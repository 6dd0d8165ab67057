"""Exact rational linear algebra over graded coordinate spaces.

Scalars are ``gmpy2.mpq`` values; matrices and vectors are numpy arrays of
dtype ``object`` holding them.  Matrices act on column vectors, so column
``j`` of a matrix is the image of the basis vector ``e_j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import InputError

Scalar = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)

_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions, mpq values and strings of the form ``"p"`` or
    ``"p/q"``.  Floats are refused, since a float token is not bit-exact.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational literal: {value!r}")
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, str):
        m = _LITERAL.match(value)
        if not m:
            raise InputError(f"malformed rational literal {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise InputError(f"zero denominator in literal {value!r}")
        return mpq(num, den)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return mpq(int(value.numerator), int(value.denominator))
    raise InputError(f"not a rational literal: {value!r}")


def as_array(values, shape: Optional[Sequence[int]] = None) -> np.ndarray:
    """Exact object array from nested sequences (or an existing array)."""
    arr = np.array(values, dtype=object)
    if shape is not None:
        arr = arr.reshape(tuple(shape))
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = scalar(v)
    return out


def exact(arr: np.ndarray) -> np.ndarray:
    """Normalise every entry of an object array to mpq (einsum leaves int zeros)."""
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, Scalar) else scalar(v)
    return out


def zeros(*shape: int) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = ONE
    return m


def is_zero(arr: np.ndarray) -> bool:
    return not np.any(arr != 0)


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class GradedSpace:
    """A Z/2-graded coordinate space with even basis vectors listed first."""

    parities: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(int(p) for p in self.parities)
        if any(p not in (0, 1) for p in ps):
            raise InputError(f"parities must be 0 or 1, got {list(self.parities)}")
        if list(ps) != sorted(ps):
            raise InputError(
                "basis is not in canonical order (even vectors first); "
                f"reorder parities {list(ps)} as {sorted(ps)}"
            )
        object.__setattr__(self, "parities", ps)

    @classmethod
    def of(cls, n_even: int, n_odd: int) -> "GradedSpace":
        return cls((0,) * n_even + (1,) * n_odd)

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def n_even(self) -> int:
        return self.parities.count(0)

    def indices(self, parity: int) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p == parity]

    def parity_array(self) -> np.ndarray:
        return np.array(self.parities, dtype=int)

    def koszul(self) -> np.ndarray:
        """Integer matrix s[i, j] = (-1)^(|e_i||e_j|)."""
        p = self.parity_array()
        return 1 - 2 * np.outer(p, p)

    def vector_parity(self, v: np.ndarray) -> Optional[int]:
        """Parity of a homogeneous vector; None for zero or mixed vectors."""
        support = {self.parities[i] for i in np.flatnonzero(v != 0)}
        return support.pop() if len(support) == 1 else None


@dataclass(frozen=True)
class Subspace:
    ambient: GradedSpace
    basis: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of a matrix."""
        if not self.basis:
            return zeros(self.ambient.dim, 0)
        return np.stack(self.basis, axis=1)

    def contains(self, vectors: Iterable[np.ndarray]) -> bool:
        extra = [np.asarray(v, dtype=object) for v in vectors]
        if not extra:
            return True
        return rank(np.stack(list(self.basis) + extra, axis=1)) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains([v])

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace) or other.ambient != self.ambient:
            return NotImplemented
        return self.dim == other.dim and self.contains(other.basis)

    __hash__ = None


def _rref(m: np.ndarray) -> tuple[list[list[Scalar]], list[int]]:
    rows = [[scalar(x) for x in row] for row in np.asarray(m, dtype=object)]
    ncols = m.shape[1] if m.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(_rref(m)[1])


image_dim = rank


def _check_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise InputError(f"expected a matrix, got an array of shape {m.shape}")
    return m


def _kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    n = m.shape[1]
    if m.shape[0] == 0 or n == 0:
        basis = []
        for j in range(n):
            v = zeros(n)
            v[j] = ONE
            basis.append(v)
        return basis
    rows, pivots = _rref(m)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(n)
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def kernel(m, space: Optional[GradedSpace] = None) -> Subspace:
    """Exact null space of ``m``.

    With ``space`` given, the columns are treated as graded coordinates and the
    even and odd blocks are solved separately, so every basis vector is
    homogeneous.  That split is only valid for parity-respecting constraint
    systems; anything else raises ``InputError``.
    """
    m = _check_matrix(m)
    n = m.shape[1]
    if space is None:
        return Subspace(GradedSpace((0,) * n), tuple(_kernel_basis(m)))
    if space.dim != n:
        raise InputError(f"matrix has {n} columns but the space has dimension {space.dim}")
    basis = []
    for parity in (0, 1):
        cols = space.indices(parity)
        for w in _kernel_basis(m[:, cols]):
            v = zeros(n)
            v[cols] = w
            basis.append(v)
    if len(basis) != n - rank(m):
        raise InputError("constraint system does not respect the grading")
    return Subspace(space, tuple(basis))


def span(space: GradedSpace, vectors: Iterable[np.ndarray]) -> Subspace:
    """Independent basis (reduced echelon rows) of the span of ``vectors``."""
    vecs = [np.asarray(v, dtype=object) for v in vectors]
    if not vecs:
        return Subspace(space, ())
    rows, _ = _rref(np.stack(vecs))
    return Subspace(space, tuple(np.array(r, dtype=object) for r in rows))


def solve(m, b) -> Optional[np.ndarray]:
    """Some exact solution of m x = b (free variables set to zero), or None."""
    m = _check_matrix(m)
    b = np.asarray(b, dtype=object)
    if b.ndim != 1 or b.shape[0] != m.shape[0]:
        raise InputError(f"right-hand side of length {b.shape} does not match {m.shape[0]} rows")
    n = m.shape[1]
    if m.shape[0] == 0:
        return zeros(n)
    rows, pivots = _rref(np.concatenate([m, b.reshape(-1, 1)], axis=1))
    if pivots and pivots[-1] == n:
        return None
    x = zeros(n)
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return x


def invert(m) -> Optional[np.ndarray]:
    m = _check_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n:
        raise InputError(f"cannot invert a non-square {m.shape} matrix")
    if n == 0:
        return zeros(0, 0)
    rows, pivots = _rref(np.concatenate([m, identity(n)], axis=1))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return np.array([r[n:] for r in rows], dtype=object)


def is_even_map(space: GradedSpace, m) -> bool:
    m = _check_matrix(m)
    if m.shape != (space.dim, space.dim):
        raise InputError(f"map of shape {m.shape} does not act on a {space.dim}-dimensional space")
    p = space.parity_array()
    mixing = p[:, None] != p[None, :]
    return not np.any(m[mixing] != 0)


def matpow(m: np.ndarray, n: int) -> np.ndarray:
    out = identity(m.shape[0])
    for _ in range(n):
        out = out.dot(m)
    return out
