"""Generators of valid random inputs for the theorem suites.

Rejection sampling of Hom-Novikov tensors almost never succeeds, so instances
are grown from known families instead: supercommutative monomial algebras
with endomorphisms and derivations, quadratic Novikov algebras, zero
products, direct products, and random even changes of basis on top.
Random scalars have numerators and denominators of absolute value at most 5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import constructions as cons
from . import exactlin as el
from . import superalgebra as sa
from .exactlin import GradedSpace
from .superalgebra import BilinearForm, SuperAlgebra


def small_rational(rng: np.random.Generator, zero_weight: float = 0.3):
    if rng.random() < zero_weight:
        return el.ZERO
    num = int(rng.integers(-5, 6))
    den = int(rng.integers(1, 6))
    return el.mpq(num, den)


def small_nonzero(rng: np.random.Generator):
    while True:
        x = small_rational(rng, 0.0)
        if x != 0:
            return x


def random_matrix(rng, rows: int, cols: int, zero_weight: float = 0.3) -> np.ndarray:
    m = el.zeros(rows, cols)
    for idx in np.ndindex(rows, cols):
        m[idx] = small_rational(rng, zero_weight)
    return m


def random_combination(rng, vectors, shape) -> np.ndarray:
    out = el.zeros(*shape)
    for v in vectors:
        out = out + small_rational(rng) * v
    return el.exact(out)


# -- supercommutative monomial algebras ------------------------------------

@dataclass(frozen=True)
class Monomial:
    exps: tuple[int, ...]
    odd: tuple[int, ...]

    @property
    def parity(self) -> int:
        return len(self.odd) % 2

    @property
    def degree(self) -> int:
        return sum(self.exps) + len(self.odd)


def _inversions(seq) -> int:
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


def monomial_algebra(even_orders=(), n_odd: int = 0, unital: bool = True):
    """Supercommutative associative algebra F[x_1..]/(x_i^{n_i}) (x) Lambda(theta_1..).

    Returns the algebra (twisting map id) and its monomial basis.  With
    ``unital=False`` the augmentation ideal (no constant monomial) is returned.
    """
    even_orders = tuple(even_orders)
    monos = []
    for exps in itertools.product(*[range(n) for n in even_orders]):
        for k in range(n_odd + 1):
            for odd in itertools.combinations(range(n_odd), k):
                monos.append(Monomial(tuple(exps), odd))
    if not unital:
        monos = [m for m in monos if m.degree > 0]
    monos.sort(key=lambda m: (m.parity, m.degree, m.exps, m.odd))
    index = {m: i for i, m in enumerate(monos)}
    entries = {}
    for (i, a), (j, b) in itertools.product(enumerate(monos), repeat=2):
        exps = tuple(x + y for x, y in zip(a.exps, b.exps))
        if any(e >= n for e, n in zip(exps, even_orders)) or set(a.odd) & set(b.odd):
            continue
        joined = a.odd + b.odd
        prod = Monomial(exps, tuple(sorted(joined)))
        if prod in index:
            entries[(i, j, index[prod])] = el.sign(_inversions(joined))
    algebra = SuperAlgebra.from_entries([m.parity for m in monos], entries)
    return algebra, monos


def _monomial_vector(monos, m: Monomial) -> np.ndarray:
    v = el.zeros(len(monos))
    v[monos.index(m)] = el.ONE
    return v


def random_endomorphism(rng, even_orders=(), n_odd: int = 0, unital: bool = True,
                        invertible: bool = False, involutive: bool = False) -> np.ndarray:
    """Matrix of a random algebra endomorphism of a monomial algebra.

    Even generators go to x * u (u even), odd generators to odd elements;
    both choices respect every defining relation.  Half of the draws are
    diagonal rescalings of the generators.  ``involutive`` restricts to sign
    changes and swaps of generators.
    """
    full, monos = monomial_algebra(even_orders, n_odd, unital=True)
    ne = len(even_orders)
    gens = []
    for g in range(ne):
        exps = tuple(1 if k == g else 0 for k in range(ne))
        gens.append(_monomial_vector(monos, Monomial(exps, ())))
    for g in range(n_odd):
        gens.append(_monomial_vector(monos, Monomial((0,) * ne, (g,))))
    odd_vecs = [_monomial_vector(monos, m) for m in monos if m.parity == 1]
    even_vecs = [_monomial_vector(monos, m) for m in monos if m.parity == 0]
    images = []
    if involutive:
        perm = list(range(n_odd))
        if n_odd >= 2 and rng.random() < 0.5:
            perm[0], perm[1] = perm[1], perm[0]
        # x -> -x keeps x^n = 0
        for g in range(ne):
            images.append(gens[g] if rng.random() < 0.5 else -gens[g])
        signs = [el.mpq(int(rng.choice([-1, 1]))) for _ in range(n_odd)]
        if perm[:2] == [1, 0]:
            signs[1] = signs[0]  # a swap squares to the identity only with equal signs
        for g in range(n_odd):
            images.append(signs[g] * gens[ne + perm[g]])
    elif rng.random() < 0.5:
        # torus element: rescale each generator
        for g in range(ne + n_odd):
            images.append(small_nonzero(rng) * gens[g])
    else:
        for g in range(ne):
            u = random_combination(rng, even_vecs, (len(monos),))
            if invertible:
                u[monos.index(Monomial((0,) * ne, ()))] = small_nonzero(rng)
            images.append(sa.multiply(full, gens[g], u))
        for g in range(n_odd):
            images.append(random_combination(rng, odd_vecs, (len(monos),)))
    alpha = el.zeros(len(monos), len(monos))
    for col, m in enumerate(monos):
        v = _monomial_vector(monos, Monomial((0,) * ne, ()))
        for g in range(ne):
            for _ in range(m.exps[g]):
                v = sa.multiply(full, v, images[g])
        for g in m.odd:
            v = sa.multiply(full, v, images[ne + g])
        alpha[:, col] = v
    if not unital:
        keep = [i for i, m in enumerate(monos) if m.degree > 0]
        alpha = alpha[np.ix_(keep, keep)]
    if invertible and el.invert(alpha) is None:
        return random_endomorphism(rng, even_orders, n_odd, unital, invertible, involutive)
    return el.exact(alpha)


# dims <= 4 with at least one entry per shape
MONOMIAL_SHAPES = [
    ((), 1, True),      # E1
    ((), 2, True),      # Lambda(theta1, theta2)
    ((2,), 1, True),
    ((2,), 0, True),
    ((3,), 0, True),
    ((4,), 0, True),
    ((2, 2), 0, True),
    ((), 2, False),
    ((2,), 1, False),
    ((4,), 0, False),
    ((3,), 0, False),
    ((), 1, False),
]


# -- linear spaces of maps ---------------------------------------------------

def _even_map_basis(space: GradedSpace) -> list[np.ndarray]:
    out = []
    for i, j in itertools.product(range(space.dim), repeat=2):
        if space.parities[i] == space.parities[j]:
            m = el.zeros(space.dim, space.dim)
            m[i, j] = el.ONE
            out.append(m)
    return out


def _solve_maps(space: GradedSpace, defect) -> list[np.ndarray]:
    """Even maps M with defect(M) == 0 for a linear ``defect``."""
    units = _even_map_basis(space)
    if not units:
        return []
    cols = np.stack([np.asarray(defect(u), dtype=object).reshape(-1) for u in units], axis=1)
    if cols.shape[0] == 0:
        return units
    out = []
    for v in el.kernel(cols).basis:
        out.append(el.exact(sum((c * u for c, u in zip(v, units)), el.zeros(space.dim, space.dim))))
    return out


def derivation_space(a: SuperAlgebra) -> list[np.ndarray]:
    """Even derivations of ``a`` commuting with its twisting map."""
    I = el.identity(a.dim)

    def defect(D):
        der = sa.after(D, a.mul) - sa.before(a.mul, D, I) - sa.before(a.mul, I, D)
        comm = D.dot(a.alpha) - a.alpha.dot(D)
        return np.concatenate([der.reshape(-1), comm.reshape(-1)])

    return _solve_maps(a.space, defect)


def alpha_commutant(a: SuperAlgebra) -> list[np.ndarray]:
    return _solve_maps(a.space, lambda M: M.dot(a.alpha) - a.alpha.dot(M))


def central_maps(a: SuperAlgebra) -> list[np.ndarray]:
    """Even maps into Z(A) commuting with alpha: Rota-Baxter operators of weight 0."""
    Z = cons.center(a)
    if Z.dim == a.dim:
        return alpha_commutant(a)
    # image in Z(A)  <=>  annihilated by a complement of Z(A) in the dual
    cokernel = el.kernel(Z.matrix().T).basis if Z.dim else list(el.identity(a.dim))
    W = np.stack(cokernel) if cokernel else el.zeros(0, a.dim)
    return _solve_maps(
        a.space,
        lambda M: np.concatenate([W.dot(M).reshape(-1), (M.dot(a.alpha) - a.alpha.dot(M)).reshape(-1)]),
    )


# -- random even bases ------------------------------------------------------

def random_even_basis_change(rng, space: GradedSpace) -> np.ndarray:
    """Invertible even matrix L U with small unit-triangular blocks."""
    P = el.identity(space.dim)
    for parity in (0, 1):
        idx = space.indices(parity)
        n = len(idx)
        L = el.identity(n)
        U = el.identity(n)
        for i, j in itertools.product(range(n), repeat=2):
            if i > j:
                L[i, j] = el.mpq(int(rng.integers(-2, 3)))
            elif i < j:
                U[i, j] = el.mpq(int(rng.integers(-2, 3)))
        diag = [small_nonzero(rng) for _ in range(n)]
        block = L.dot(U)
        for j in range(n):
            block[:, j] = block[:, j] * diag[j]
        P[np.ix_(idx, idx)] = block
    return el.exact(P)


def direct_product(a: SuperAlgebra, b: SuperAlgebra) -> SuperAlgebra:
    """A x B with zero cross products, reindexed into canonical order."""
    pa, pb = list(a.parities), list(b.parities)
    order = sorted(range(len(pa) + len(pb)), key=lambda i: (pa + pb)[i])
    pos = {old: new for new, old in enumerate(order)}
    n = len(order)
    mul = el.zeros(n, n, n)
    alpha = el.zeros(n, n)
    for src, offset in ((a, 0), (b, len(pa))):
        for (i, j, k), c in np.ndenumerate(src.mul):
            if c != 0:
                mul[pos[i + offset], pos[j + offset], pos[k + offset]] = c
        for (i, j), c in np.ndenumerate(src.alpha):
            alpha[pos[i + offset], pos[j + offset]] = c
    return SuperAlgebra(GradedSpace(tuple(sorted(pa + pb))), mul, alpha)


def _block_projection(a: SuperAlgebra, b: SuperAlgebra, which: int) -> np.ndarray:
    pa, pb = list(a.parities), list(b.parities)
    order = sorted(range(len(pa) + len(pb)), key=lambda i: (pa + pb)[i])
    n = len(order)
    P = el.zeros(n, n)
    for new, old in enumerate(order):
        if (old < len(pa)) == (which == 0):
            P[new, new] = el.ONE
    return P


# -- Hom-supercommutative and Hom-Novikov generators -------------------------

def random_monomial_shape(rng, max_dim: int = 4):
    shapes = [s for s in MONOMIAL_SHAPES if monomial_algebra(*s)[0].dim <= max_dim]
    return shapes[int(rng.integers(len(shapes)))]


def random_hom_supercommutative(rng, max_dim: int = 4, *, regular: bool = False,
                                involutive: bool = False, identity: bool = False):
    """(S, alpha o mu, alpha) for a monomial algebra S and endomorphism alpha.

    Returns (hom_algebra, base) where base is S carrying alpha as twisting map.
    """
    shape = random_monomial_shape(rng, max_dim)
    S, _ = monomial_algebra(*shape)
    if identity:
        alpha = el.identity(S.dim)
    else:
        alpha = random_endomorphism(rng, *shape, invertible=regular, involutive=involutive)
    base = S.with_alpha(alpha)
    return cons.yau_twist(base, alpha), base


def random_derivation(rng, a: SuperAlgebra) -> np.ndarray:
    return random_combination(rng, derivation_space(a), (a.dim, a.dim))


def random_hom_novikov(rng, max_dim: int = 4, *, regular: bool = False,
                       involutive: bool = False, conjugate: bool = True) -> SuperAlgebra:
    # derivation kinds are listed twice: they are the main source of
    # non-supercommutative products
    kinds = ["twisted-derivation", "twisted-derivation", "xi", "xi",
             "hom-supercommutative", "quadratic", "zero", "product"]
    if max_dim < 4:
        kinds.remove("quadratic")
    if max_dim < 2:
        kinds.remove("product")
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "twisted-derivation":
        _, base = random_hom_supercommutative(rng, max_dim, regular=regular, involutive=involutive)
        a = cons.twisted_derivation_product(base, random_derivation(rng, base))
    elif kind == "xi":
        hom, _ = random_hom_supercommutative(rng, max_dim, regular=regular, involutive=involutive)
        a = cons.xi_family(hom, random_derivation(rng, hom), small_rational(rng))
    elif kind == "hom-supercommutative":
        a, _ = random_hom_supercommutative(rng, max_dim, regular=regular, involutive=involutive)
    elif kind == "quadratic":
        a = random_quadratic(rng, max_dim, involutive=involutive)[0]
    elif kind == "zero":
        n = int(rng.integers(1, max_dim + 1))
        n_odd = int(rng.integers(0, n + 1))
        space = GradedSpace.of(n - n_odd, n_odd)
        alpha = _random_even_alpha(rng, space, regular=regular, involutive=involutive)
        a = SuperAlgebra(space, el.zeros(n, n, n), alpha)
    else:
        d1 = int(rng.integers(1, max_dim))
        a = direct_product(
            random_hom_novikov(rng, d1, regular=regular, involutive=involutive, conjugate=False),
            random_hom_novikov(rng, max_dim - d1, regular=regular, involutive=involutive, conjugate=False),
        )
    if conjugate and rng.random() < 0.6:
        a = sa.change_basis(a, random_even_basis_change(rng, a.space))
    return a


def _random_even_alpha(rng, space: GradedSpace, regular=False, involutive=False) -> np.ndarray:
    if involutive:
        signs = el.zeros(space.dim, space.dim)
        for i in range(space.dim):
            signs[i, i] = el.mpq(int(rng.choice([-1, 1])))
        P = random_even_basis_change(rng, space)
        return el.exact(P.dot(signs).dot(el.invert(P)))
    while True:
        m = el.zeros(space.dim, space.dim)
        for parity in (0, 1):
            idx = space.indices(parity)
            m[np.ix_(idx, idx)] = random_matrix(rng, len(idx), len(idx))
        if not regular or el.invert(m) is not None:
            return el.exact(m)


# -- quadratic algebras ------------------------------------------------------

def heisenberg_novikov() -> tuple[SuperAlgebra, BilinearForm]:
    """Dimension-4 quadratic Novikov superalgebra from a 2-step nilpotent bracket.

    Basis (x, x*, th, th*) with parities (0, 0, 1, 1); [th, th] = x*,
    [x, th] = -th*, [th, x] = th*, and xy = [x, y] / 2.
    """
    L = SuperAlgebra.from_entries(
        [0, 0, 1, 1], {(2, 2, 1): 1, (0, 2, 3): -1, (2, 0, 3): 1}
    )
    gram = el.as_array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    return cons.half_bracket_algebra(L), BilinearForm(L.space, gram)


def frobenius_monomial(even_orders=(), n_odd: int = 0) -> tuple[SuperAlgebra, BilinearForm]:
    """Unital monomial algebra with B(a, b) = coefficient of the top monomial in ab."""
    S, monos = monomial_algebra(even_orders, n_odd)
    top = max(range(len(monos)), key=lambda i: monos[i].degree)
    if monos[top].parity:
        raise ValueError("top monomial is odd; the trace form would not be even")
    gram = el.exact(S.mul[:, :, top])
    return S, BilinearForm(S.space, gram)


FROBENIUS_SHAPES = [((2,), 0), ((3,), 0), ((), 2), ((2, 2), 0), ((4,), 0)]


def _zero_quadratic(rng, n_even: int, n_odd_pairs: int):
    space = GradedSpace.of(n_even, 2 * n_odd_pairs)
    g = el.zeros(space.dim, space.dim)
    for i in range(n_even):
        g[i, i] = small_nonzero(rng)
    for k in range(n_odd_pairs):
        i, j = n_even + 2 * k, n_even + 2 * k + 1
        g[i, j], g[j, i] = el.ONE, -el.ONE
    return SuperAlgebra(space, el.zeros(space.dim, space.dim, space.dim)), BilinearForm(space, g)


def _self_adjoint_automorphism(rng, a: SuperAlgebra, B: BilinearForm, kind: str) -> np.ndarray:
    d = a.dim
    parity_op = el.identity(d)
    for i in a.space.indices(1):
        parity_op[i, i] = -el.ONE
    if kind == "heisenberg":
        alpha = el.identity(d) if rng.random() < 0.5 else parity_op
        alpha = el.exact(alpha.copy())
        alpha[1, 0] = small_rational(rng)  # x -> x + s x*
        return alpha
    if kind == "zero":
        # B-self-adjoint even maps form a linear space; draw an invertible one
        sols = _solve_maps(a.space, lambda M: M.T.dot(B.gram) - B.gram.dot(M))
        for _ in range(50):
            m = random_combination(rng, sols, (d, d))
            if el.invert(m) is not None:
                return m
        return el.identity(d)
    return parity_op if rng.random() < 0.5 else el.identity(d)


def _orthogonal_sum(parts):
    a, B, alpha = parts[0]
    for b, C, beta in parts[1:]:
        ab = direct_product(a.with_alpha(alpha), b.with_alpha(beta))
        n1 = a.dim
        pa, pb = list(a.parities), list(b.parities)
        order = sorted(range(len(pa) + len(pb)), key=lambda i: (pa + pb)[i])
        pos = {old: new for new, old in enumerate(order)}
        g = el.zeros(ab.dim, ab.dim)
        for (i, j), c in np.ndenumerate(B.gram):
            g[pos[i], pos[j]] = c
        for (i, j), c in np.ndenumerate(C.gram):
            g[pos[i + n1], pos[j + n1]] = c
        a, B, alpha = ab.with_alpha(el.identity(ab.dim)), BilinearForm(ab.space, g), ab.alpha
    return a, B, alpha


def random_quadratic(rng, max_dim: int = 8, involutive: bool = False,
                     conjugate: bool = True) -> tuple[SuperAlgebra, BilinearForm]:
    """Quadratic Hom-Novikov (A, alpha o mu, alpha, B) with alpha a B-self-adjoint automorphism."""
    parts = []
    budget = max_dim
    while budget > 0 and (not parts or rng.random() < 0.5):
        options = []
        if budget >= 4:
            options.append("heisenberg")
        options += [f"frob{i}" for i, (orders, odd) in enumerate(FROBENIUS_SHAPES)
                    if frobenius_monomial(orders, odd)[0].dim <= budget]
        options.append("zero")
        kind = options[int(rng.integers(len(options)))]
        if kind == "heisenberg":
            a, B = heisenberg_novikov()
        elif kind == "zero":
            n_even = int(rng.integers(0, min(budget, 2) + 1))
            pairs = int(rng.integers(0, (budget - n_even) // 2 + 1))
            if n_even + pairs == 0:
                n_even = 1
            a, B = _zero_quadratic(rng, n_even, pairs)
        else:
            a, B = frobenius_monomial(*FROBENIUS_SHAPES[int(kind[4:])])
        alpha = _self_adjoint_automorphism(rng, a, B, "heisenberg" if kind == "heisenberg" else kind)
        if involutive and kind != "zero":
            alpha = el.identity(a.dim) if kind == "heisenberg" else alpha
        if involutive and kind == "zero":
            alpha = el.identity(a.dim)
        parts.append((a, B, alpha))
        budget -= a.dim
    a, B, alpha = _orthogonal_sum(parts)
    a = cons.yau_twist(a, alpha)
    if conjugate and rng.random() < 0.6:
        P = random_even_basis_change(rng, a.space)
        a = sa.change_basis(a, P)
        B = sa.transform_form(B, P)
    return a, B


# -- Rota-Baxter pairs -------------------------------------------------------

def random_rota_baxter(rng, max_dim: int = 4):
    """(A, P, weight) with P an even Rota-Baxter operator commuting with alpha."""
    choice = int(rng.integers(4))
    if choice == 0 and max_dim >= 2:
        d1 = int(rng.integers(1, max_dim))
        a1 = random_hom_novikov(rng, d1, conjugate=False)
        a2 = random_hom_novikov(rng, max_dim - d1, conjugate=False)
        a = direct_product(a1, a2)
        lam = small_nonzero(rng)
        P = el.exact(-lam * _block_projection(a1, a2, int(rng.integers(2))))
    elif choice == 1:
        a = random_hom_novikov(rng, max_dim, conjugate=False)
        lam = small_nonzero(rng)
        P = el.exact(-lam * el.identity(a.dim))
    elif choice == 2:
        a = random_hom_novikov(rng, max_dim, conjugate=False)
        lam = el.ZERO
        P = random_combination(rng, central_maps(a), (a.dim, a.dim))
    else:
        a = random_hom_novikov(rng, max_dim, conjugate=False)
        lam = small_nonzero(rng)
        P = el.zeros(a.dim, a.dim)
    if rng.random() < 0.5:
        P = el.exact(-lam * el.identity(a.dim) - P)
    if rng.random() < 0.6:
        Q = random_even_basis_change(rng, a.space)
        a = sa.change_basis(a, Q)
        P = sa.transform_map(P, Q)
    return a, P, lam


# -- deformations ------------------------------------------------------------

def random_transform(rng, base: SuperAlgebra, order: int):
    from .deformation import EquivalenceTransform

    comm = alpha_commutant(base)
    maps = tuple(random_combination(rng, comm, (base.dim, base.dim)) for _ in range(order))
    return EquivalenceTransform(base, order, maps)


def derivation_series_deformation(rng, order: int, max_dim: int = 4, hom=None):
    """x D_t(y) + xi_t xy with D_t a series of derivations and xi_t a series of scalars.

    Each coefficient of D_t commutes with alpha, so the deformed product is a
    Hom-Novikov product for every t and all deformation equations hold.
    """
    from .deformation import TruncatedDeformation

    if hom is None:
        hom, _ = random_hom_supercommutative(rng, max_dim)
    ders = derivation_space(hom)
    I = el.identity(hom.dim)

    def coefficient():
        D = random_combination(rng, ders, (hom.dim, hom.dim))
        return el.exact(sa.before(hom.mul, I, D) + small_rational(rng) * hom.mul)

    base = SuperAlgebra(hom.space, coefficient(), hom.alpha)
    return TruncatedDeformation(base, order, tuple(coefficient() for _ in range(order)))


def scalar_series_deformation(rng, base: SuperAlgebra, order: int):
    """g_t = (1 + c_1 t + ...) G_0; valid over any Hom-Novikov base."""
    from .deformation import TruncatedDeformation

    return TruncatedDeformation(
        base, order, tuple(el.exact(small_rational(rng) * base.mul) for _ in range(order))
    )


def random_deformation(rng, order: int, max_dim: int = 4, conjugate: bool = True):
    """A valid deformation: a derivation series moved by a random equivalence."""
    from .deformation import apply_equivalence

    d = derivation_series_deformation(rng, order, max_dim)
    if conjugate:
        d = apply_equivalence(d, random_transform(rng, d.base, order))
    return d


def trivial_deformation(rng, base: SuperAlgebra, order: int):
    from .deformation import TruncatedDeformation, apply_equivalence

    return apply_equivalence(TruncatedDeformation.null(base, order), random_transform(rng, base, order))
