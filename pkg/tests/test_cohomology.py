import pytest

from qpbw import faults
from qpbw.cohomology import (
    CohomologyMonomial,
    DegreeMismatch,
    IndexBeyondT,
    cohomology_basis,
    cohomology_product,
    compose,
    dual_pairing,
    eta,
    eta_apply,
    functional,
    hilbert_coefficients,
    series_coefficients,
    square_scalar,
    verify_chain_map,
    verify_dual_basis,
    verify_eta_square,
    verify_hilbert,
    verify_products,
    verify_relations,
    xi,
    xi_apply,
)
from qpbw.presentations import Presentation
from qpbw.qscalar import ONE, LaurentScalar
from qpbw.resolution import ResolutionElement, augmentation

q12 = LaurentScalar.param(1, 2)


def phi(*a, coeff=ONE, mono=None):
    return ResolutionElement.generator(a, coeff, mono=mono)


def test_xi_examples():
    assert xi_apply(1, (2,), Presentation(1, t=1, N=(2,))) == phi(0)
    p = Presentation(2, t=2, N=(2, 3))
    # q21^(N2 tau1(1)) = q12^-3
    assert xi_apply(2, (1, 2), p) == phi(1, 0, coeff=q12**-3)
    assert not xi_apply(1, (1, 0), p)
    with pytest.raises(IndexBeyondT):
        xi_apply(1, (2, 0), Presentation(2))


def test_eta_examples():
    assert eta_apply(1, (1,), Presentation(1, t=1, N=(2,))) == phi(0)
    assert eta_apply(1, (2,), Presentation(1, t=1, N=(3,))) == phi(1, mono=(1,))
    assert eta_apply(2, (1, 1), Presentation(2)) == phi(1, 0, coeff=-q12.invert())
    assert not eta_apply(1, (0, 1), Presentation(2))


def test_chain_maps():
    assert verify_chain_map(xi(1), Presentation(1, t=1, N=(2,)), 6).ok
    p = Presentation(3, t=2, N=(2, 3))
    for m in [xi(1), xi(2), eta(1), eta(2), eta(3)]:
        rep = verify_chain_map(m, p, 5)
        assert rep.ok and rep.checks


def test_xi_fault_is_detected():
    p = Presentation(3, t=2, N=(2, 3))
    with faults.injected("xi-exponent"):
        rep = verify_chain_map(xi(2), p, 5)
    assert not rep.ok
    assert rep.first_failure.residue


def test_compose():
    p = Presentation(2, t=2, N=(2, 3))
    g = phi(2, 2)
    nested = xi(1).apply(xi(2).apply(g, p), p)
    assert compose([xi(1), xi(2)]).on_generator((2, 2), p) == nested
    assert compose([xi(1), xi(2)]).shift == 4


def test_eta_square_on_phi2():
    p2 = Presentation(1, t=1, N=(2,))
    sq = compose([eta(1), eta(1)]).on_generator((2,), p2)
    base = xi_apply(1, (2,), p2)
    ratio = augmentation(sq) / augmentation(base)
    assert ratio.is_unit()
    assert sq == base.scale(ratio)
    p3 = Presentation(1, t=1, N=(3,))
    sq3 = compose([eta(1), eta(1)]).on_generator((2,), p3)
    assert sq3 and all(any(j) for (j, _), _ in sq3)
    assert augmentation(sq3) == 0


def test_relations():
    assert verify_relations(Presentation(2, t=2, N=(2, 3)), 6).ok
    rep = verify_relations(Presentation(2), 4)
    assert rep.ok
    assert not any("xi" in c.obj for c in rep.checks)
    assert any("eta1eta2" in c.obj for c in rep.checks)


def test_relations_detect_xi_fault():
    with faults.injected("xi-exponent"):
        assert not verify_relations(Presentation(2, t=2, N=(2, 3)), 4).ok


def test_dual_pairing():
    p = Presentation(3, t=2, N=(2, 3))
    assert dual_pairing(CohomologyMonomial((1, 0), (0, 0, 0)), (2, 0, 0), p) == ONE
    p1 = Presentation(1, t=1, N=(3,))
    for b in range(4):
        v = dual_pairing(CohomologyMonomial((b,), (1,)), (2 * b + 1,), p1)
        assert v.is_unit()
    assert dual_pairing(CohomologyMonomial((1, 0), (0, 0, 0)), (1, 1, 0), p) == 0
    with pytest.raises(DegreeMismatch):
        dual_pairing(CohomologyMonomial((1, 0), (0, 0, 0)), (1, 0, 0), p)


def test_dual_basis():
    rep = verify_dual_basis(Presentation(2, t=1, N=(2,)), 5)
    assert rep.ok
    assert "H^0: #monomials = #generators" in [c.obj for c in rep.checks]


def test_cohomology_basis_degree_zero():
    assert [str(m) for m in cohomology_basis(0, Presentation(2, t=1, N=(2,)))] == ["1"]


def test_hilbert_examples():
    assert hilbert_coefficients(Presentation(2, t=1, N=(2,)), 5) == [1, 2, 2, 2, 2, 2]
    assert hilbert_coefficients(Presentation(1, t=1, N=(3,)), 4) == [1, 1, 1, 1, 1]
    assert hilbert_coefficients(Presentation(2), 4) == [1, 2, 1, 0, 0]
    assert series_coefficients(2, 1, 5) == [1, 2, 2, 2, 2, 2]
    assert verify_hilbert(Presentation(4, t=2, N=(2, 3)), 6).ok


def test_eta_square_law():
    assert verify_eta_square(Presentation(3, t=2, N=(2, 3))).ok
    assert square_scalar(1, Presentation(1, t=1, N=(2,))).is_unit()
    assert square_scalar(1, Presentation(1, t=1, N=(3,))) == 0
    assert not functional(compose([eta(2), eta(2)]), 2, Presentation(2, t=1, N=(2,)))


def test_product_normalization():
    p = Presentation(3, t=2, N=(2, 3))
    e2 = CohomologyMonomial((0, 0), (0, 1, 0))
    x1 = CohomologyMonomial((1, 0), (0, 0, 0))
    # eta2 xi1 = q12^N1 xi1 eta2
    prod = cohomology_product(e2, x1, p)
    assert prod == CohomologyMonomial((1, 0), (0, 1, 0), q12**2)
    e1 = CohomologyMonomial((0, 0), (1, 0, 0))
    e3 = CohomologyMonomial((0, 0), (0, 0, 1))
    assert cohomology_product(e3, e3, p) is None
    assert cohomology_product(e1, e1, p).b == (1, 0)
    assert verify_products(p, 4).ok
