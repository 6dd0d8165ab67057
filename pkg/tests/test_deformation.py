import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnovikov import cohomology as coh
from homnovikov import constructions as cons
from homnovikov import deformation as dfm
from homnovikov import exactlin as el
from homnovikov import families as fam
from homnovikov.cohomology import Cochain
from homnovikov.deformation import EquivalenceTransform, TruncatedDeformation
from homnovikov.errors import InputError, PreconditionError
from homnovikov.superalgebra import SuperAlgebra

D_E1 = [[0, 0], [0, 1]]


def test_structure_validation(e1):
    with pytest.raises(InputError, match="expected 2 terms"):
        TruncatedDeformation(e1, 2, (el.zeros(2, 2, 2),))
    with pytest.raises(InputError, match="even"):
        TruncatedDeformation(e1, 1, (Cochain.zero(e1, 2, 1),))
    scaled = SuperAlgebra.from_entries([0, 0], {}, alpha=[[1, 0], [0, 2]])
    bad = el.zeros(2, 2, 2)
    bad[0, 0, 1] = 1  # alpha(G(e0, e0)) = 2 e1 but G(alpha e0, alpha e0) = e1
    with pytest.raises(InputError, match="alpha"):
        TruncatedDeformation(scaled, 1, (bad,))
    with pytest.raises(InputError, match="commute"):
        EquivalenceTransform(scaled, 1, (el.as_array([[0, 1], [0, 0]]),))
    with pytest.raises(InputError, match="even"):
        EquivalenceTransform(e1, 1, (el.as_array([[0, 1], [0, 0]]),))


def test_null_deformation_passes(e1):
    for order in (1, 3, 5):
        assert dfm.check_deformation(TruncatedDeformation.null(e1, order))
    assert TruncatedDeformation.null(e1).order == dfm.DEFAULT_ORDER


def test_xi_example(e1):
    base = cons.derivation_product(e1, D_E1)
    G1 = Cochain(base, 2, 0, e1.mul)
    assert dfm.check_deformation(TruncatedDeformation(base, 1, (G1,)))
    assert dfm.is_infinitesimal(base, G1)
    assert dfm.is_infinitesimal(base, Cochain.zero(base, 2))


def test_unit_line_order_one(unit_line):
    d = TruncatedDeformation(unit_line, 1, (Cochain.product(unit_line),))
    assert dfm.check_deformation(d)


def test_failure_names_order_and_triple(e1):
    # G1(e1, e0) = e1 alone breaks left-symmetry at order 1
    G1 = el.zeros(2, 2, 2)
    G1[1, 0, 1] = 1
    d = TruncatedDeformation(e1, 1, (G1,))
    v = dfm.check_deformation(d)
    assert not v
    assert v.check.startswith("order 1")
    assert v.witness == (0, 1, 0) and list(v.residual) == [0, 1]


def test_cocycle_failing_the_novikov_part(heisenberg):
    # G1(x*, th) = th* is a 2-cocycle but not an infinitesimal deformation
    a, _ = heisenberg
    G1 = el.zeros(4, 4, 4)
    G1[1, 2, 3] = 1
    G1 = Cochain(a, 2, 0, G1)
    assert dfm.is_two_cocycle(a, G1)
    v = dfm.is_infinitesimal(a, G1)
    assert not v and "Novikov" in v.describe()
    assert not dfm.check_deformation(TruncatedDeformation(a, 1, (G1,)))


def test_coboundaries_are_always_infinitesimal():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = fam.random_hom_novikov(rng, 3)
        f = fam.random_combination(rng, [b.coeffs for b in coh.cochain_basis(a, 1, 0)], (a.dim, a.dim))
        assert dfm.is_infinitesimal(a, coh.delta1(Cochain(a, 1, 0, f)))


def test_is_two_cocycle_examples(zero_line, unit_line):
    assert dfm.is_two_cocycle(zero_line, Cochain(zero_line, 2, 0, el.as_array([[[3]]])))
    assert dfm.is_two_cocycle(unit_line, coh.delta1(Cochain.from_map(unit_line, [[2]])))
    assert dfm.is_two_cocycle(unit_line, Cochain.zero(unit_line, 2))


def test_apply_identity_transform(e1):
    rng = np.random.default_rng(2)
    d = fam.derivation_series_deformation(rng, 3, hom=e1)
    assert dfm.apply_equivalence(d, EquivalenceTransform.identity(d.base, 3)).equals(d)


def test_order_one_equivalence_formula(unit_line):
    d = TruncatedDeformation.null(unit_line, 1)
    phi = EquivalenceTransform(unit_line, 1, (el.as_array([[3]]),))
    d2 = dfm.apply_equivalence(d, phi)
    # G1' = G1 - delta^1 phi_1 = -3 e
    assert d2.terms[0].coeffs[0, 0, 0] == -3
    assert dfm.cohomology_class_delta(d, d2, phi).coeffs[0, 0, 0] == 3
    ident = EquivalenceTransform.identity(unit_line, 1)
    assert dfm.cohomology_class_delta(d, d, ident).is_zero()


def test_mismatched_pair(e1, unit_line):
    with pytest.raises(PreconditionError):
        dfm.apply_equivalence(TruncatedDeformation.null(e1, 2), EquivalenceTransform.identity(e1, 3))
    with pytest.raises(PreconditionError):
        dfm.apply_equivalence(TruncatedDeformation.null(e1, 2), EquivalenceTransform.identity(unit_line, 2))


def test_inverse_transform():
    rng = np.random.default_rng(8)
    d = fam.random_deformation(rng, 3, 3)
    phi = fam.random_transform(rng, d.base, 3)
    psi = phi.inverse()
    # phi_t psi_t = id mod t^4
    for n in range(1, 4):
        total = sum((phi.coefficient(k).dot(psi.coefficient(n - k)) for k in range(n + 1)), el.zeros(d.base.dim, d.base.dim))
        assert el.is_zero(el.exact(total))


def test_trivialize_examples(unit_line, zero_line):
    null = TruncatedDeformation.null(unit_line, 2)
    assert dfm.trivialize_step(null) is null
    d = TruncatedDeformation(unit_line, 1, (Cochain.product(unit_line),))
    step = dfm.trivialize_step(d)
    assert step.is_null()
    z = TruncatedDeformation(zero_line, 1, (el.as_array([[[1]]]),))
    assert dfm.trivialize_step(z) is None
    assert dfm.rigidity_reduce(null) == (null, True)
    reduced, ok = dfm.rigidity_reduce(z)
    assert reduced is z and not ok


def test_trivialize_rejects_invalid(e1):
    G1 = el.zeros(2, 2, 2)
    G1[1, 0, 1] = 1
    with pytest.raises(PreconditionError):
        dfm.trivialize_step(TruncatedDeformation(e1, 1, (G1,)))
    with pytest.raises(PreconditionError):
        dfm.rigidity_reduce(TruncatedDeformation(e1, 1, (G1,)))


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_equivalence_preserves_validity_and_inverts(seed):
    rng = np.random.default_rng(seed)
    order = int(rng.integers(1, 4))
    d = fam.random_deformation(rng, order, 3)
    phi = fam.random_transform(rng, d.base, order)
    d2 = dfm.apply_equivalence(d, phi)
    assert dfm.check_deformation(d2)
    assert dfm.apply_equivalence(d2, phi.inverse()).equals(d)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_trivial_deformations_reduce_to_null(seed):
    rng = np.random.default_rng(seed)
    a = fam.random_hom_novikov(rng, 3)
    d = fam.trivial_deformation(rng, a, 3)
    assert dfm.check_deformation(d)
    reduced, ok = dfm.rigidity_reduce(d)
    assert ok and reduced.is_null()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_rigid_bases_trivialize_everything(seed):
    # whenever H2 vanishes in both parities every valid deformation reduces
    rng = np.random.default_rng(seed)
    a = fam.random_hom_novikov(rng, 3)
    if any(coh.h2(a, p).dim_h2 for p in (0, 1)):
        return
    for _ in range(3):
        d = fam.scalar_series_deformation(rng, a, 3)
        d = dfm.apply_equivalence(d, fam.random_transform(rng, a, 3))
        assert dfm.rigidity_reduce(d)[1]
