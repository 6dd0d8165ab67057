"""Superalgebras given by structure constants, and their axiom predicates.

A product is stored as a tensor ``c`` with ``e_i e_j = sum_k c[i, j, k] e_k``.
Every identity checked here is multilinear, so it holds for all vectors iff it
holds on all tuples of basis vectors; the predicates therefore loop (via
tensor contractions) over basis tuples only, taking the Koszul signs from the
basis parities.  Failures report the lexicographically first violating tuple
together with the exact residual vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import exactlin as el
from .errors import InputError
from .exactlin import GradedSpace, Scalar


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate; truthy iff the identity holds."""

    ok: bool
    check: str
    witness: Optional[tuple[int, ...]] = None
    residual: Optional[np.ndarray] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"{self.check}: holds"
        msg = f"{self.check}: fails"
        if self.witness is not None:
            msg += f" at basis tuple {self.witness}"
        if self.residual is not None:
            msg += " with residual [" + ", ".join(str(x) for x in np.ravel(self.residual)) + "]"
        return msg


def _verdict(check: str, residual: np.ndarray, vector_valued: bool = True) -> Verdict:
    """Inspect a residual tensor indexed by basis tuples (plus an output axis)."""
    nonzero = np.argwhere(residual != 0)
    if len(nonzero) == 0:
        return Verdict(True, check)
    first = nonzero[0]
    if vector_valued:
        witness = tuple(int(i) for i in first[:-1])
        return Verdict(False, check, witness, el.exact(residual[witness]))
    witness = tuple(int(i) for i in first)
    return Verdict(False, check, witness, el.exact(np.array([residual[witness]], dtype=object)))


def _all(check: str, *verdicts: Verdict) -> Verdict:
    for v in verdicts:
        if not v:
            return v
    return Verdict(True, check)


def _sq(matrix, dim: int, what: str) -> np.ndarray:
    m = el.as_array(matrix)
    if m.shape != (dim, dim):
        raise InputError(f"{what} must be a {dim}x{dim} matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """(A, mu, alpha): a graded space, a product tensor and an even twisting map."""

    space: GradedSpace
    mul: np.ndarray
    alpha: np.ndarray = None

    def __post_init__(self):
        d = self.space.dim
        mul = el.as_array(self.mul) if np.size(self.mul) else el.zeros(d, d, d)
        if mul.shape != (d, d, d):
            raise InputError(f"structure tensor must have shape {(d, d, d)}, got {mul.shape}")
        p = self.space.parity_array()
        bad = (p[:, None, None] + p[None, :, None] + p[None, None, :]) % 2 == 1
        hit = np.argwhere((mul != 0) & bad)
        if len(hit):
            i, j, k = (int(x) for x in hit[0])
            raise InputError(
                f"structure constant c[{i}][{j}][{k}] = {mul[i, j, k]} violates the grading "
                f"(|e_{i}| + |e_{j}| != |e_{k}|)"
            )
        alpha = el.identity(d) if self.alpha is None else _sq(self.alpha, d, "alpha")
        if not el.is_even_map(self.space, alpha):
            raise InputError("twisting map alpha is not even")
        mul.flags.writeable = False
        alpha.flags.writeable = False
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def from_entries(cls, parities, entries: dict, alpha=None) -> "SuperAlgebra":
        """Build from a sparse ``{(i, j, k): c}`` mapping."""
        space = GradedSpace(tuple(parities))
        mul = el.zeros(space.dim, space.dim, space.dim)
        for (i, j, k), c in entries.items():
            mul[i, j, k] = el.scalar(c)
        return cls(space, mul, alpha)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parities(self) -> tuple[int, ...]:
        return self.space.parities

    def with_mul(self, mul) -> "SuperAlgebra":
        return SuperAlgebra(self.space, mul, self.alpha)

    def with_alpha(self, alpha) -> "SuperAlgebra":
        return SuperAlgebra(self.space, self.mul, alpha)

    def same_as(self, other: "SuperAlgebra") -> bool:
        return (
            self is other
            or (
                self.space == other.space
                and el.is_zero(self.mul - other.mul)
                and el.is_zero(self.alpha - other.alpha)
            )
        )

    def __repr__(self) -> str:
        nnz = int(np.count_nonzero(self.mul != 0))
        return f"SuperAlgebra(parities={list(self.parities)}, nonzero_constants={nnz})"


@dataclass(frozen=True, eq=False)
class EvenMap:
    space: GradedSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = _sq(self.matrix, self.space.dim, "map")
        if not el.is_even_map(self.space, m):
            raise InputError("map is not even (it mixes parities)")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class BilinearForm:
    space: GradedSpace
    gram: np.ndarray

    def __post_init__(self):
        g = _sq(self.gram, self.space.dim, "gram matrix")
        g.flags.writeable = False
        object.__setattr__(self, "gram", g)

    def __call__(self, x, y) -> Scalar:
        return np.asarray(x, dtype=object).dot(self.gram).dot(np.asarray(y, dtype=object))


def map_matrix(a: SuperAlgebra, m) -> np.ndarray:
    """Matrix of an even self-map of ``a`` given as EvenMap or array-like."""
    if isinstance(m, EvenMap):
        if m.space != a.space:
            raise InputError("map lives on a different graded space")
        return m.matrix
    return EvenMap(a.space, m).matrix


def _gram(a: SuperAlgebra, B) -> np.ndarray:
    if isinstance(B, BilinearForm):
        if B.space != a.space:
            raise InputError("form lives on a different graded space")
        return B.gram
    return BilinearForm(a.space, B).gram


# -- tensor plumbing --------------------------------------------------------
# f, g are product-like tensors f[i, j, r]; h is a matrix with h(e_k) = sum_n h[n, k] e_n.

def outer_left(f, g, h) -> np.ndarray:
    """T[i, j, k] = f(g(e_i, e_j), h(e_k))."""
    return np.einsum("ijm,nk,mnr->ijkr", g, h, f, optimize=True)


def outer_right(f, h, g) -> np.ndarray:
    """T[i, j, k] = f(h(e_i), g(e_j, e_k))."""
    return np.einsum("mi,jkn,mnr->ijkr", h, g, f, optimize=True)


def after(m, f) -> np.ndarray:
    """Post-compose a tensor's output with the matrix m."""
    return np.einsum("...m,rm->...r", f, m)


def before(f, *maps) -> np.ndarray:
    """f(m_1 e_i, m_2 e_j, ...) for a tensor f of matching arity."""
    out = f
    for axis, m in enumerate(maps):
        out = np.moveaxis(np.tensordot(m, out, axes=([0], [axis])), 0, axis)
    return out


def swap12(t) -> np.ndarray:
    return np.swapaxes(t, 0, 1)


def swap23(t) -> np.ndarray:
    return np.swapaxes(t, 1, 2)


def koszul_pairs(space: GradedSpace):
    """Sign arrays s_ij, s_jk, s_ik shaped to broadcast over (i, j, k, r)."""
    s = space.koszul()
    return s[:, :, None, None], s[None, :, :, None], s[:, None, :, None]


def multiply(a: SuperAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    if x.shape != (a.dim,) or y.shape != (a.dim,):
        raise InputError(f"vectors must have length {a.dim}")
    return el.exact(np.einsum("i,j,ijk->k", x, y, a.mul))


def apply(m, x) -> np.ndarray:
    return el.exact(np.asarray(m, dtype=object).dot(np.asarray(x, dtype=object)))


# -- axiom predicates -------------------------------------------------------

def _hom_associator(a: SuperAlgebra) -> np.ndarray:
    """(e_i e_j) alpha(e_k) - alpha(e_i)(e_j e_k)."""
    c, A = a.mul, a.alpha
    return outer_left(c, c, A) - outer_right(c, A, c)


def is_multiplicative(a: SuperAlgebra) -> Verdict:
    c, A = a.mul, a.alpha
    res = after(A, c) - before(c, A, A)
    return _verdict("multiplicativity alpha(xy) = alpha(x)alpha(y)", res)


def is_hom_left_symmetric(a: SuperAlgebra) -> Verdict:
    s_ij, _, _ = koszul_pairs(a.space)
    h = _hom_associator(a)
    left = _verdict(
        "Hom-left-symmetry (xy)a(z) - a(x)(yz) = (-1)^|x||y| ((yx)a(z) - a(y)(xz))",
        h - s_ij * swap12(h),
    )
    return _all("Hom-left-symmetric", is_multiplicative(a), left)


def satisfies_hom_novikov_identity(a: SuperAlgebra) -> Verdict:
    _, s_jk, _ = koszul_pairs(a.space)
    t = outer_left(a.mul, a.mul, a.alpha)
    return _verdict("Hom-Novikov identity (xy)a(z) = (-1)^|y||z| (xz)a(y)", t - s_jk * swap23(t))


def is_hom_novikov(a: SuperAlgebra) -> Verdict:
    return _all("Hom-Novikov", is_hom_left_symmetric(a), satisfies_hom_novikov_identity(a))


def is_hom_associative(a: SuperAlgebra) -> Verdict:
    assoc = _verdict("Hom-associativity (xy)a(z) = a(x)(yz)", _hom_associator(a))
    return _all("Hom-associative", is_multiplicative(a), assoc)


def is_associative(a: SuperAlgebra) -> Verdict:
    """Plain associativity, ignoring alpha."""
    c = a.mul
    I = el.identity(a.dim)
    return _verdict("associativity (xy)z = x(yz)", outer_left(c, c, I) - outer_right(c, I, c))


def is_supercommutative(a: SuperAlgebra) -> Verdict:
    s = a.space.koszul()[:, :, None]
    c = a.mul
    return _verdict("supercommutativity xy = (-1)^|x||y| yx", c - s * swap12(c))


def is_hom_supercommutative(a: SuperAlgebra) -> Verdict:
    return _all("Hom-supercommutative", is_hom_associative(a), is_supercommutative(a))


def is_hom_lie(a: SuperAlgebra) -> Verdict:
    """Multiplicative Hom-Lie superalgebra axioms, reading a's product as the bracket."""
    b, A = a.mul, a.alpha
    s = a.space.koszul()
    skew = _verdict("super skew-symmetry [x,y] = -(-1)^|x||y| [y,x]", b + s[:, :, None] * swap12(b))
    q = outer_right(b, A, b)  # [a(e_i), [e_j, e_k]]
    s_ij, s_jk, s_ik = koszul_pairs(a.space)
    jac = (
        s_ik * q
        + s_ij * np.einsum("jkir->ijkr", q)
        + s_jk * np.einsum("kijr->ijkr", q)
    )
    jacobi = _verdict("super Hom-Jacobi identity", jac)
    return _all("Hom-Lie", is_multiplicative(a), skew, jacobi)


def is_derivation(a: SuperAlgebra, D) -> Verdict:
    D = map_matrix(a, D)
    c = a.mul
    res = after(D, c) - before(c, D, el.identity(a.dim)) - before(c, el.identity(a.dim), D)
    return _verdict("derivation D(xy) = D(x)y + xD(y)", res)


def commutes_with_alpha(a: SuperAlgebra, M) -> Verdict:
    M = map_matrix(a, M)
    comm = M.dot(a.alpha) - a.alpha.dot(M)
    return _verdict("commutes with alpha", comm, vector_valued=False)


def is_rota_baxter(a: SuperAlgebra, P, weight) -> Verdict:
    P = map_matrix(a, P)
    lam = el.scalar(weight)
    c = a.mul
    I = el.identity(a.dim)
    inner = before(c, P, I) + before(c, I, P) + lam * c
    res = before(c, P, P) - after(P, inner)
    return _verdict(f"Rota-Baxter identity of weight {lam}", res)


def is_regular(a: SuperAlgebra) -> bool:
    return el.invert(a.alpha) is not None and bool(is_multiplicative(a))


def is_involutive(a: SuperAlgebra) -> bool:
    return el.is_zero(a.alpha.dot(a.alpha) - el.identity(a.dim))


# -- bilinear forms ---------------------------------------------------------

def form_is_supersymmetric(B: BilinearForm) -> Verdict:
    g = B.gram
    return _verdict(
        "supersymmetry B(x,y) = (-1)^|x||y| B(y,x)", g - B.space.koszul() * g.T, vector_valued=False
    )


def form_is_even(B: BilinearForm) -> Verdict:
    p = B.space.parity_array()
    mixed = np.where(p[:, None] != p[None, :], B.gram, el.ZERO)
    return _verdict("evenness B(A_0, A_1) = 0", mixed, vector_valued=False)


def form_is_nondegenerate(B: BilinearForm) -> bool:
    return el.rank(B.gram) == B.space.dim


def form_is_novikov_invariant(a: SuperAlgebra, B) -> Verdict:
    g, c, A = _gram(a, B), a.mul, a.alpha
    res = np.einsum("mi,jkn,mn->ijk", A, c, g) - np.einsum("ijm,nk,mn->ijk", c, A, g)
    return _verdict("invariance B(a(x), yz) = B(xy, a(z))", res, vector_valued=False)


def form_is_lie_invariant(a: SuperAlgebra, B) -> Verdict:
    g, b = _gram(a, B), a.mul
    res = np.einsum("ijm,mk->ijk", b, g) - np.einsum("jkn,in->ijk", b, g)
    return _verdict("invariance B([x,y], z) = B(x, [y,z])", res, vector_valued=False)


def form_alpha_symmetric(a: SuperAlgebra, B) -> Verdict:
    g, A = _gram(a, B), a.alpha
    return _verdict("B(a(x), y) = B(x, a(y))", A.T.dot(g) - g.dot(A), vector_valued=False)


def _form_basics(B: BilinearForm) -> Verdict:
    nondeg = Verdict(form_is_nondegenerate(B), "nondegeneracy")
    return _all("even supersymmetric nondegenerate form", form_is_even(B), form_is_supersymmetric(B), nondeg)


def is_quadratic_hom_novikov(a: SuperAlgebra, B) -> Verdict:
    B = B if isinstance(B, BilinearForm) else BilinearForm(a.space, B)
    return _all(
        "quadratic Hom-Novikov",
        is_hom_novikov(a),
        _form_basics(B),
        form_is_novikov_invariant(a, B),
    )


def is_quadratic_hom_lie(a: SuperAlgebra, B) -> Verdict:
    B = B if isinstance(B, BilinearForm) else BilinearForm(a.space, B)
    return _all(
        "quadratic Hom-Lie",
        is_hom_lie(a),
        _form_basics(B),
        form_is_lie_invariant(a, B),
        form_alpha_symmetric(a, B),
    )


# -- change of basis --------------------------------------------------------

def change_basis(a: SuperAlgebra, P) -> SuperAlgebra:
    """Rewrite ``a`` in the basis e'_j = sum_i P[i, j] e_i (P even and invertible)."""
    P = map_matrix(a, P)
    Pinv = el.invert(P)
    if Pinv is None:
        raise InputError("change-of-basis matrix is singular")
    mul = after(Pinv, before(a.mul, P, P))
    return SuperAlgebra(a.space, el.exact(mul), el.exact(Pinv.dot(a.alpha).dot(P)))


def transform_form(B: BilinearForm, P) -> BilinearForm:
    P = el.as_array(P)
    return BilinearForm(B.space, el.exact(P.T.dot(B.gram).dot(P)))


def transform_map(M, P) -> np.ndarray:
    P = el.as_array(P)
    return el.exact(el.invert(P).dot(np.asarray(M, dtype=object)).dot(P))
