"""Hom-cochains, the coboundaries delta^1 and delta^2, and H^2.

An n-cochain ``f`` is stored as a tensor ``t`` of shape ``(d,) * (n + 1)`` with
``f(e_i1, ..., e_in) = sum_k t[i1, ..., in, k] e_k``.  Cochains are parity
homogeneous; a general cochain is the sum of its even and odd parts, and all
operators here are linear, so they act on each part separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import exactlin as el
from . import superalgebra as sa
from .errors import AxiomError, InputError, PreconditionError
from .superalgebra import SuperAlgebra, Verdict, after, before, koszul_pairs, outer_left, outer_right


@dataclass(frozen=True, eq=False)
class Cochain:
    algebra: SuperAlgebra
    arity: int
    parity: int
    coeffs: np.ndarray

    def __post_init__(self):
        d = self.algebra.dim
        if self.arity < 1:
            raise InputError(f"cochain arity must be positive, got {self.arity}")
        if self.parity not in (0, 1):
            raise InputError(f"cochain parity must be 0 or 1, got {self.parity}")
        t = el.as_array(self.coeffs) if np.size(self.coeffs) else el.zeros(*(d,) * (self.arity + 1))
        if t.shape != (d,) * (self.arity + 1):
            raise InputError(f"{self.arity}-cochain tensor must have shape {(d,) * (self.arity + 1)}, got {t.shape}")
        bad = np.argwhere((t != 0) & ~parity_mask(self.algebra, self.arity, self.parity))
        if len(bad):
            raise InputError(
                f"coefficient at {tuple(int(i) for i in bad[0])} breaks parity homogeneity "
                f"of a {'odd' if self.parity else 'even'} cochain"
            )
        t.flags.writeable = False
        object.__setattr__(self, "coeffs", t)

    @classmethod
    def zero(cls, a: SuperAlgebra, arity: int, parity: int = 0) -> "Cochain":
        return cls(a, arity, parity, el.zeros(*(a.dim,) * (arity + 1)))

    @classmethod
    def from_map(cls, a: SuperAlgebra, matrix, parity: int = 0) -> "Cochain":
        """1-cochain from a matrix acting on column vectors."""
        return cls(a, 1, parity, el.as_array(matrix).T)

    @classmethod
    def product(cls, a: SuperAlgebra) -> "Cochain":
        """The multiplication of ``a`` as an even 2-cochain."""
        return cls(a, 2, 0, a.mul)

    def matrix(self) -> np.ndarray:
        if self.arity != 1:
            raise InputError("only 1-cochains have a matrix")
        return self.coeffs.T

    def is_zero(self) -> bool:
        return el.is_zero(self.coeffs)

    def _compatible(self, other: "Cochain"):
        if not self.algebra.same_as(other.algebra):
            raise InputError("cochains live over different algebras")
        if (self.arity, self.parity) != (other.arity, other.parity):
            raise InputError("cochains differ in arity or parity")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.algebra, self.arity, self.parity, el.exact(self.coeffs + other.coeffs))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.algebra, self.arity, self.parity, el.exact(self.coeffs - other.coeffs))

    def __neg__(self) -> "Cochain":
        return Cochain(self.algebra, self.arity, self.parity, el.exact(-self.coeffs))

    def scaled(self, c) -> "Cochain":
        return Cochain(self.algebra, self.arity, self.parity, el.exact(el.scalar(c) * self.coeffs))

    __rmul__ = scaled

    def equals(self, other: "Cochain") -> bool:
        self._compatible(other)
        return el.is_zero(self.coeffs - other.coeffs)

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, parity={self.parity}, nonzero={int(np.count_nonzero(self.coeffs != 0))})"


def parity_mask(a: SuperAlgebra, arity: int, parity: int) -> np.ndarray:
    """Boolean tensor of the slots a homogeneous cochain may occupy."""
    p = a.space.parity_array()
    total = np.zeros((a.dim,) * (arity + 1), dtype=int) + parity
    for axis in range(arity + 1):
        shape = [1] * (arity + 1)
        shape[axis] = a.dim
        total = total + p.reshape(shape)
    return total % 2 == 0


def _alpha_defect(a: SuperAlgebra, t: np.ndarray) -> np.ndarray:
    n = t.ndim - 1
    return after(a.alpha, t) - before(t, *([a.alpha] * n))


def is_hom_cochain(f: Cochain) -> Verdict:
    """alpha(f(x_1, ..., x_n)) = f(alpha(x_1), ..., alpha(x_n))."""
    return sa._verdict("Hom-cochain condition", _alpha_defect(f.algebra, f.coeffs))


def _require_cochain(f: Cochain, arity: int):
    if f.arity != arity:
        raise InputError(f"expected a {arity}-cochain, got arity {f.arity}")
    v = is_hom_cochain(f)
    if not v:
        raise PreconditionError("is_hom_cochain", v)


def _odd_sign(a: SuperAlgebra, parity: int) -> np.ndarray:
    """(-1)^(|e_i||f|) as an integer vector."""
    return 1 - 2 * (a.space.parity_array() * parity % 2)


def delta1_tensor(a: SuperAlgebra, t: np.ndarray, parity: int) -> np.ndarray:
    c = a.mul
    sf = _odd_sign(a, parity)[:, None, None]
    # (-1)^{|x1||f|} x1 * f(x2) + f(x1) * x2 - f(x1 * x2)
    left = np.einsum("jm,imr->ijr", t, c)
    right = np.einsum("im,mjr->ijr", t, c)
    inner = np.einsum("ijm,mr->ijr", c, t)
    return sf * left + right - inner


def delta2_tensor(a: SuperAlgebra, t: np.ndarray, parity: int) -> np.ndarray:
    c, A = a.mul, a.alpha
    s_ij, s_jk, _ = koszul_pairs(a.space)
    sf = _odd_sign(a, parity)
    sf_i = sf[:, None, None, None]
    sf_j = sf[None, :, None, None]
    X = outer_right(t, A, c)  # f(a(x1), x2 x3)
    V = outer_left(t, c, A)   # f(x1 x2, a(x3))
    U = outer_right(c, A, t)  # a(x1) f(x2, x3)
    W = outer_left(c, t, A)   # f(x1, x2) a(x3)
    return (
        X
        - s_ij * sa.swap12(X)
        + s_ij * sa.swap12(V)
        + sf_i * U
        - s_ij * sf_j * sa.swap12(U)
        + s_ij * sa.swap12(W)
        - s_jk * sa.swap23(V)
        - s_jk * sa.swap23(W)
    )


def delta1(f: Cochain) -> Cochain:
    _require_cochain(f, 1)
    return Cochain(f.algebra, 2, f.parity, el.exact(delta1_tensor(f.algebra, f.coeffs, f.parity)))


def delta2(f: Cochain) -> Cochain:
    _require_cochain(f, 2)
    return Cochain(f.algebra, 3, f.parity, el.exact(delta2_tensor(f.algebra, f.coeffs, f.parity)))


def circle_tensor(a: SuperAlgebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    A = a.alpha
    s_ij, s_jk, _ = koszul_pairs(a.space)
    Y = outer_right(f, A, g)  # f(a(x), g(y, z))
    Z = outer_left(f, g, A)   # f(g(x, y), a(z))
    return Y - s_ij * sa.swap12(Y) + s_ij * sa.swap12(Z) - s_jk * sa.swap23(Z)


def circle_alpha(f: Cochain, g: Cochain) -> Cochain:
    """f o_alpha g (x, y, z)."""
    _require_cochain(f, 2)
    _require_cochain(g, 2)
    if not f.algebra.same_as(g.algebra):
        raise InputError("cochains live over different algebras")
    out = el.exact(circle_tensor(f.algebra, f.coeffs, g.coeffs))
    return Cochain(f.algebra, 3, (f.parity + g.parity) % 2, out)


# -- cochain spaces and cohomology ------------------------------------------

def _slot_basis(a: SuperAlgebra, arity: int, parity: int) -> list[tuple[int, ...]]:
    return [tuple(int(i) for i in s) for s in np.argwhere(parity_mask(a, arity, parity))]


def cochain_basis(a: SuperAlgebra, arity: int, parity: int) -> list[Cochain]:
    """Basis of the homogeneous Hom-cochains of given arity and parity."""
    if arity not in (1, 2):
        raise InputError(f"cochain spaces are computed for arity 1 and 2 only, got {arity}")
    shape = (a.dim,) * (arity + 1)
    slots = _slot_basis(a, arity, parity)
    columns = []
    for slot in slots:
        unit = el.zeros(*shape)
        unit[slot] = el.ONE
        columns.append(_alpha_defect(a, unit).reshape(-1))
    if not slots:
        return []
    solutions = el.kernel(np.stack(columns, axis=1)).basis
    basis = []
    for sol in solutions:
        t = el.zeros(*shape)
        for coef, slot in zip(sol, slots):
            t[slot] = coef
        basis.append(Cochain(a, arity, parity, t))
    return basis


@dataclass(frozen=True)
class CohomologyReport:
    parity: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int

    @property
    def dim_h2(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def as_dict(self) -> dict:
        return {
            "parity": "odd" if self.parity else "even",
            "C2": self.dim_cochains,
            "Z2": self.dim_cocycles,
            "B2": self.dim_coboundaries,
            "H2": self.dim_h2,
        }


def _columns(cochains: list[Cochain], op) -> np.ndarray:
    return np.stack([op(f).coeffs.reshape(-1) for f in cochains], axis=1)


def coboundary_matrix(a: SuperAlgebra, parity: int) -> tuple[np.ndarray, list[Cochain]]:
    """Matrix of delta^1 on the chosen basis of C^1 (columns), with that basis."""
    c1 = cochain_basis(a, 1, parity)
    if not c1:
        return el.zeros(a.dim ** 3, 0), c1
    return _columns(c1, delta1), c1


def cocycles(a: SuperAlgebra, parity: int) -> list[Cochain]:
    c2 = cochain_basis(a, 2, parity)
    if not c2:
        return []
    ker = el.kernel(_columns(c2, delta2))
    return [
        Cochain(a, 2, parity, el.exact(sum((coef * f.coeffs for coef, f in zip(v, c2)), el.zeros(*(a.dim,) * 3))))
        for v in ker.basis
    ]


def h2(a: SuperAlgebra, parity: int) -> CohomologyReport:
    v = sa.is_hom_novikov(a)
    if not v:
        raise AxiomError("is_hom_novikov", v)
    c2 = cochain_basis(a, 2, parity)
    z2 = len(c2) - (el.rank(_columns(c2, delta2)) if c2 else 0)
    b2 = el.rank(coboundary_matrix(a, parity)[0])
    return CohomologyReport(parity, len(c2), z2, b2)


def solve_coboundary(G: Cochain) -> Optional[Cochain]:
    """Some f in C^1 with delta^1 f = G (free coordinates zero), or None."""
    if G.arity != 2:
        raise InputError("only 2-cochains can be coboundaries of 1-cochains")
    m, basis = coboundary_matrix(G.algebra, G.parity)
    if not basis:
        return Cochain.zero(G.algebra, 1, G.parity) if G.is_zero() else None
    coef = el.solve(m, G.coeffs.reshape(-1))
    if coef is None:
        return None
    t = sum((c * f.coeffs for c, f in zip(coef, basis)), el.zeros(G.algebra.dim, G.algebra.dim))
    return Cochain(G.algebra, 1, G.parity, el.exact(t))


def z1(a: SuperAlgebra, parity: int) -> list[Cochain]:
    """1-cocycles ker(delta^1) (no delta^0 exists, so no H^1 quotient)."""
    m, basis = coboundary_matrix(a, parity)
    if not basis:
        return []
    out = []
    for v in el.kernel(m).basis:
        t = sum((c * f.coeffs for c, f in zip(v, basis)), el.zeros(a.dim, a.dim))
        out.append(Cochain(a, 1, parity, el.exact(t)))
    return out
