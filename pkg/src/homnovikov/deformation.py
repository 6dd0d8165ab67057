"""Truncated one-parameter formal deformations g_t = G_0 + G_1 t + ... + G_N t^N.

G_0 is the product of the base algebra.  Everything is computed modulo
t^(N+1); the defining identities are checked order by order on basis triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import exactlin as el
from . import superalgebra as sa
from .cohomology import Cochain, circle_tensor, delta1, delta2, is_hom_cochain, solve_coboundary
from .errors import InputError, PreconditionError
from .superalgebra import SuperAlgebra, Verdict, koszul_pairs, outer_left, outer_right

DEFAULT_ORDER = 4


def _as_term(base: SuperAlgebra, t, n: int) -> Cochain:
    if isinstance(t, Cochain):
        if not t.algebra.same_as(base):
            raise InputError(f"term G_{n} lives over a different algebra")
        c = t
    else:
        c = Cochain(base, 2, 0, t)
    if c.arity != 2 or c.parity != 0:
        raise InputError(f"term G_{n} must be an even 2-cochain")
    v = is_hom_cochain(c)
    if not v:
        raise InputError(f"term G_{n} does not commute with alpha (basis pair {v.witness})")
    return c


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    base: SuperAlgebra
    order: int
    terms: tuple

    def __post_init__(self):
        if self.order < 1:
            raise InputError(f"order must be positive, got {self.order}")
        if len(self.terms) != self.order:
            raise InputError(f"expected {self.order} terms, got {len(self.terms)}")
        terms = tuple(_as_term(self.base, t, n + 1) for n, t in enumerate(self.terms))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def null(cls, base: SuperAlgebra, order: int = DEFAULT_ORDER) -> "TruncatedDeformation":
        return cls(base, order, tuple(Cochain.zero(base, 2) for _ in range(order)))

    def term(self, n: int) -> np.ndarray:
        """Tensor of G_n, with G_0 the base product."""
        return self.base.mul if n == 0 else self.terms[n - 1].coeffs

    def lowest_nonzero(self) -> Optional[int]:
        for n, g in enumerate(self.terms, start=1):
            if not g.is_zero():
                return n
        return None

    def is_null(self) -> bool:
        return self.lowest_nonzero() is None

    def equals(self, other: "TruncatedDeformation") -> bool:
        return (
            self.order == other.order
            and self.base.same_as(other.base)
            and all(g.equals(h) for g, h in zip(self.terms, other.terms))
        )


@dataclass(frozen=True, eq=False)
class EquivalenceTransform:
    """phi_t = id + phi_1 t + ... + phi_N t^N; maps are matrices acting on columns."""

    base: SuperAlgebra
    order: int
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != self.order:
            raise InputError(f"expected {self.order} maps, got {len(self.maps)}")
        maps = []
        for n, m in enumerate(self.maps, start=1):
            m = sa.map_matrix(self.base, m)
            if not el.is_even_map(self.base.space, m):
                raise InputError(f"phi_{n} is not even")
            if not sa.commutes_with_alpha(self.base, m):
                raise InputError(f"phi_{n} does not commute with alpha")
            m = el.exact(m.copy())
            m.flags.writeable = False
            maps.append(m)
        object.__setattr__(self, "maps", tuple(maps))

    @classmethod
    def identity(cls, base: SuperAlgebra, order: int = DEFAULT_ORDER) -> "EquivalenceTransform":
        return cls(base, order, tuple(el.zeros(base.dim, base.dim) for _ in range(order)))

    def coefficient(self, n: int) -> np.ndarray:
        return el.identity(self.base.dim) if n == 0 else self.maps[n - 1]

    def inverse(self) -> "EquivalenceTransform":
        """psi_t with phi_t psi_t = id: psi_n = -sum_{k=1..n} phi_k psi_{n-k}."""
        psi = [el.identity(self.base.dim)]
        for n in range(1, self.order + 1):
            acc = el.zeros(self.base.dim, self.base.dim)
            for k in range(1, n + 1):
                acc = acc - self.maps[k - 1].dot(psi[n - k])
            psi.append(el.exact(acc))
        return EquivalenceTransform(self.base, self.order, tuple(psi[1:]))


# -- the order-by-order identities -----------------------------------------

def left_symmetry_term(a: SuperAlgebra, f, g) -> np.ndarray:
    """f(ax, g(y,z)) - f(g(x,y), az) - s_xy f(ay, g(x,z)) + s_xy f(g(y,x), az)."""
    s_ij, _, _ = koszul_pairs(a.space)
    Y = outer_right(f, a.alpha, g)
    Z = outer_left(f, g, a.alpha)
    return Y - Z - s_ij * sa.swap12(Y) + s_ij * sa.swap12(Z)


def novikov_term(a: SuperAlgebra, f, g) -> np.ndarray:
    """f(g(x,y), az) - s_yz f(g(x,z), ay)."""
    _, s_jk, _ = koszul_pairs(a.space)
    Z = outer_left(f, g, a.alpha)
    return Z - s_jk * sa.swap23(Z)


def _order_sums(d: TruncatedDeformation, n: int):
    ls = el.zeros(*(d.base.dim,) * 4)
    nv = el.zeros(*(d.base.dim,) * 4)
    for i in range(n + 1):
        f, g = d.term(i), d.term(n - i)
        ls = ls + left_symmetry_term(d.base, f, g)
        nv = nv + novikov_term(d.base, f, g)
    return el.exact(ls), el.exact(nv)


def _first_failure(label: str, residual) -> Optional[Verdict]:
    v = sa._verdict(label, residual)
    return None if v else v


def check_deformation(d: TruncatedDeformation) -> Verdict:
    """All deformation equations up to order N; a failure names order and triple."""
    for n in range(1, d.order + 1):
        ls, nv = _order_sums(d, n)
        for label, res in ((f"order {n} left-symmetry", ls), (f"order {n} Novikov identity", nv)):
            bad = _first_failure(label, res)
            if bad is not None:
                return bad
    return Verdict(True, f"deformation equations up to order {d.order}")


def is_two_cocycle(base: SuperAlgebra, G1: Cochain) -> Verdict:
    return sa._verdict("delta^2 G_1 = 0", delta2(_as_term(base, G1, 1)).coeffs)


def is_infinitesimal(base: SuperAlgebra, G1: Cochain) -> Verdict:
    """Order-one equations, split as delta^2 G_1 = 0 plus the order-one Novikov part."""
    G1 = _as_term(base, G1, 1)
    cocycle = is_two_cocycle(base, G1)
    if not cocycle:
        return cocycle
    nv = novikov_term(base, base.mul, G1.coeffs) + novikov_term(base, G1.coeffs, base.mul)
    return sa._all("infinitesimal deformation", cocycle, sa._verdict("order 1 Novikov identity", el.exact(nv)))


def obstruction_sum(d: TruncatedDeformation, n: int) -> np.ndarray:
    """sum_{i+j=n, i,j>=1} G_i o_alpha G_j (the tensor equal to -delta^2 G_n)."""
    acc = el.zeros(*(d.base.dim,) * 4)
    for i in range(1, n):
        acc = acc + circle_tensor(d.base, d.term(i), d.term(n - i))
    return el.exact(acc)


# -- equivalences -----------------------------------------------------------

def _check_pair(d: TruncatedDeformation, phi: EquivalenceTransform):
    if not d.base.same_as(phi.base):
        raise PreconditionError("same_base", message="precondition failed: transform has a different base")
    if d.order != phi.order:
        raise PreconditionError(
            "same_order", message=f"precondition failed: orders differ ({d.order} vs {phi.order})"
        )


def apply_equivalence(d: TruncatedDeformation, phi: EquivalenceTransform) -> TruncatedDeformation:
    """g'_t(u, v) = phi_t(g_t(phi_t^-1 u, phi_t^-1 v)) mod t^(N+1)."""
    _check_pair(d, phi)
    psi = phi.inverse()
    N, dim = d.order, d.base.dim
    # G_b(psi_c x, psi_e y) collected by total degree b + c + e
    inner = [el.zeros(dim, dim, dim) for _ in range(N + 1)]
    for b in range(N + 1):
        for c in range(N + 1 - b):
            for e in range(N + 1 - b - c):
                inner[b + c + e] = inner[b + c + e] + sa.before(d.term(b), psi.coefficient(c), psi.coefficient(e))
    terms = []
    for n in range(1, N + 1):
        acc = el.zeros(dim, dim, dim)
        for k in range(n + 1):
            acc = acc + sa.after(phi.coefficient(k), inner[n - k])
        terms.append(el.exact(acc))
    return TruncatedDeformation(d.base, N, tuple(terms))


def cohomology_class_delta(d: TruncatedDeformation, d2: TruncatedDeformation,
                           phi: EquivalenceTransform) -> Cochain:
    """G_1 - G_1', which must be delta^1 phi_1 and hence a coboundary."""
    diff = d.terms[0] - d2.terms[0]
    expected = delta1(Cochain.from_map(d.base, phi.maps[0]))
    assert diff.equals(expected), "G_1 - G_1' differs from delta^1 phi_1"
    assert solve_coboundary(diff) is not None, "G_1 - G_1' is not a coboundary"
    return diff


def _require_valid(d: TruncatedDeformation):
    v = check_deformation(d)
    if not v:
        raise PreconditionError("check_deformation", v)


def _trivialize(d: TruncatedDeformation):
    n = d.lowest_nonzero()
    if n is None:
        return d
    f = solve_coboundary(d.terms[n - 1])
    if f is None:
        return None
    maps = [el.zeros(d.base.dim, d.base.dim) for _ in range(d.order)]
    maps[n - 1] = f.matrix()
    return apply_equivalence(d, EquivalenceTransform(d.base, d.order, tuple(maps)))


def trivialize_step(d: TruncatedDeformation) -> Optional[TruncatedDeformation]:
    """Kill the lowest nonzero term G_n when it is a coboundary delta^1 f_n."""
    _require_valid(d)
    return _trivialize(d)


def rigidity_reduce(d: TruncatedDeformation) -> tuple[TruncatedDeformation, bool]:
    """Repeat trivialize_step; True iff the result is the null deformation."""
    _require_valid(d)
    while not d.is_null():
        nxt = _trivialize(d)
        if nxt is None:
            return d, False
        d = nxt
    return d, True


def from_series(base: SuperAlgebra, tensors: Sequence) -> TruncatedDeformation:
    return TruncatedDeformation(base, len(tensors), tuple(tensors))
