"""Algebra-producing operations: brackets, twists, derivation and Rota-Baxter
products, form twists, centers and the lower central series.

Every construction re-checks its hypotheses and raises
:class:`~homnovikov.errors.PreconditionError` naming the failed predicate.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from . import exactlin as el
from . import superalgebra as sa
from .errors import AxiomError, InputError, PreconditionError
from .exactlin import Subspace
from .superalgebra import BilinearForm, SuperAlgebra


class HomLieAlgebra(SuperAlgebra):
    """A SuperAlgebra whose product tensor is read as a bracket."""

    @property
    def bracket(self) -> np.ndarray:
        return self.mul

    @classmethod
    def of(cls, a: SuperAlgebra) -> "HomLieAlgebra":
        return cls(a.space, a.mul, a.alpha)


def _require(verdict, name: str, axiom: bool = False):
    if not verdict:
        raise (AxiomError if axiom else PreconditionError)(name, verdict)


def commutator(a: SuperAlgebra) -> np.ndarray:
    """Tensor of [x, y] = xy - (-1)^|x||y| yx."""
    s = a.space.koszul()[:, :, None]
    return el.exact(a.mul - s * sa.swap12(a.mul))


def sub_adjacent_hom_lie(a: SuperAlgebra, check: bool = True) -> HomLieAlgebra:
    if check:
        _require(sa.is_hom_novikov(a), "is_hom_novikov", axiom=True)
    return HomLieAlgebra(a.space, commutator(a), a.alpha)


def involutive_untwist(a: SuperAlgebra) -> SuperAlgebra:
    """(A, alpha o mu, id) for involutive alpha.

    Only alpha^2 = id is enforced; the result is a Novikov superalgebra when
    the input is Hom-Novikov.
    """
    if not sa.is_involutive(a):
        raise PreconditionError("is_involutive", message="precondition failed: alpha^2 != id")
    return SuperAlgebra(a.space, el.exact(sa.after(a.alpha, a.mul)), el.identity(a.dim))


def alpha_inverse_bracket(a: SuperAlgebra) -> SuperAlgebra:
    """The Lie superalgebra bracket alpha^-1 o [.,.] of a regular Hom-Novikov superalgebra.

    Returned with the identity twisting map.  Only invertibility of alpha is
    enforced; the Lie identities hold when the input is Hom-Novikov.
    """
    inv = el.invert(a.alpha)
    if inv is None:
        raise PreconditionError("is_regular", message="precondition failed: alpha is singular")
    return HomLieAlgebra(a.space, el.exact(sa.after(inv, commutator(a))), el.identity(a.dim))


def yau_square_twist(a: SuperAlgebra) -> SuperAlgebra:
    """(A, alpha o mu, alpha^2)."""
    _require(sa.is_hom_novikov(a), "is_hom_novikov", axiom=True)
    return yau_twist(a, a.alpha, a.alpha.dot(a.alpha))


def yau_twist(a: SuperAlgebra, beta, new_alpha=None) -> SuperAlgebra:
    """Unchecked twist (A, beta o mu, new_alpha); new_alpha defaults to beta."""
    beta = sa.map_matrix(a, beta)
    new_alpha = beta if new_alpha is None else new_alpha
    return SuperAlgebra(a.space, el.exact(sa.after(beta, a.mul)), el.exact(new_alpha))


def _derivation_hypotheses(a: SuperAlgebra, D):
    _require(sa.is_hom_associative(a), "is_hom_associative")
    _require(sa.is_supercommutative(a), "is_supercommutative")
    _require(sa.is_derivation(a, D), "is_derivation")
    _require(sa.commutes_with_alpha(a, D), "commutes_with_alpha")


def derivation_product(a: SuperAlgebra, D) -> SuperAlgebra:
    """x * y = x D(y) on a Hom-supercommutative algebra."""
    D = sa.map_matrix(a, D)
    _derivation_hypotheses(a, D)
    return SuperAlgebra(a.space, _right_composed(a.mul, D), a.alpha)


def _right_composed(c, D) -> np.ndarray:
    return el.exact(sa.before(c, el.identity(c.shape[0]), D))


def twisted_derivation_product(a: SuperAlgebra, D) -> SuperAlgebra:
    """x * y = alpha(x D(y)).

    Here ``a.mul`` must be associative and supercommutative and ``a.alpha`` an
    algebra morphism of it; the output keeps alpha as twisting map.
    """
    D = sa.map_matrix(a, D)
    _require(sa.is_associative(a), "is_associative")
    _require(sa.is_supercommutative(a), "is_supercommutative")
    _require(sa.is_multiplicative(a), "is_multiplicative")
    _require(sa.is_derivation(a, D), "is_derivation")
    _require(sa.commutes_with_alpha(a, D), "commutes_with_alpha")
    return SuperAlgebra(a.space, el.exact(sa.after(a.alpha, _right_composed(a.mul, D))), a.alpha)


def xi_family(a: SuperAlgebra, D, xi) -> SuperAlgebra:
    """x *_xi y = x D(y) + xi xy."""
    D = sa.map_matrix(a, D)
    _derivation_hypotheses(a, D)
    return SuperAlgebra(a.space, el.exact(_right_composed(a.mul, D) + el.scalar(xi) * a.mul), a.alpha)


def rota_baxter_product(a: SuperAlgebra, P, weight) -> SuperAlgebra:
    """x o y = P(x)y + xP(y) + weight xy."""
    P = sa.map_matrix(a, P)
    lam = el.scalar(weight)
    _require(sa.is_hom_novikov(a), "is_hom_novikov", axiom=True)
    _require(sa.is_rota_baxter(a, P, lam), "is_rota_baxter")
    _require(sa.commutes_with_alpha(a, P), "commutes_with_alpha")
    I = el.identity(a.dim)
    mul = sa.before(a.mul, P, I) + sa.before(a.mul, I, P) + lam * a.mul
    return SuperAlgebra(a.space, el.exact(mul), a.alpha)


def form_twist(B: BilinearForm, alpha, n: int = 1) -> BilinearForm:
    """B_{alpha^n}(x, y) = B(alpha^n(x), y)."""
    if n < 1:
        raise InputError(f"twist power must be positive, got {n}")
    alpha = el.as_array(alpha)
    if alpha.shape != (B.space.dim, B.space.dim):
        raise InputError(f"alpha of shape {alpha.shape} does not match the form")
    return BilinearForm(B.space, el.exact(el.matpow(alpha, n).T.dot(B.gram)))


# -- centers and nilpotency -------------------------------------------------

def _annihilator(a: SuperAlgebra, tensors) -> Subspace:
    d = a.dim
    # rows: (j, r) component of x.e_j (or e_j.x) as a linear function of x
    rows = [np.transpose(t, (1, 2, 0)).reshape(d * d, d) for t in tensors]
    m = np.concatenate(rows, axis=0) if rows else el.zeros(0, d)
    return el.kernel(m, a.space)


def center(a: SuperAlgebra) -> Subspace:
    """Z(A) = {x : xy = yx = 0 for all y}."""
    return _annihilator(a, [a.mul, sa.swap12(a.mul)])


def lie_center(L: SuperAlgebra) -> Subspace:
    """C(A) = {x : [x, y] = 0 for all y}."""
    return _annihilator(L, [L.mul])


def bracket_span(L: SuperAlgebra, sub: Subspace) -> Subspace:
    """[A, sub] spanned by brackets of basis vectors with a basis of sub."""
    vecs = [el.exact(row) for v in sub.basis for row in np.einsum("j,ijk->ik", v, L.mul)]
    return el.span(L.space, [v for v in vecs if not el.is_zero(v)])


def lower_central_series(L: SuperAlgebra, max_i: Optional[int] = None) -> list[Subspace]:
    """[A^0 = A, A^1 = [A, A^0], ...]; stops once a term is zero or repeats."""
    full = el.span(L.space, list(el.identity(L.dim).T))
    series = [full]
    limit = L.dim + 1 if max_i is None else max_i
    while len(series) <= limit and not series[-1].is_zero():
        nxt = bracket_span(L, series[-1])
        if nxt.dim == series[-1].dim:
            series.append(nxt)
            break
        series.append(nxt)
    return series


def nilpotency_step(L: SuperAlgebra) -> Optional[int]:
    """Least i with A^i = 0 (so A^(i-1) != 0), or None if the series stalls."""
    series = lower_central_series(L)
    for i, term in enumerate(series):
        if term.is_zero():
            return i
    return None


def is_two_step_nilpotent(L: SuperAlgebra) -> bool:
    """A^2 = 0.  Abelian brackets count, unlike the strict step query."""
    series = lower_central_series(L, max_i=2)
    return any(term.is_zero() for term in series[:3])


def half_bracket_algebra(L: SuperAlgebra) -> SuperAlgebra:
    """Product xy = [x, y] / 2 on a 2-step nilpotent bracket."""
    if not is_two_step_nilpotent(L):
        raise PreconditionError("is_two_step_nilpotent")
    return SuperAlgebra(L.space, el.exact(L.mul * el.scalar("1/2")), L.alpha)
