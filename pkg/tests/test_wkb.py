import math

import numpy as np
import pytest

from boxwkb import (
    DegenerateRootError,
    DomainError,
    Geometry,
    Method,
    Parity,
    Potential,
    Regime,
    wkb_eigenvalue,
    wkb_residual,
    wkb_spectrum,
)
from boxwkb import wkb
from boxwkb.roots import Root

HO = Potential(1.0, 2.0)
LINEAR = Potential(1.0, 1.0)


@pytest.mark.parametrize("b", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("n", [0, 1, 4])
def test_free_box_is_exact(b, n):
    free = Potential.free()
    sym = wkb_eigenvalue(free, Geometry.symmetric(b), Parity.SYMMETRIC, n).energy
    anti = wkb_eigenvalue(free, Geometry.symmetric(b), Parity.ANTISYMMETRIC, n).energy
    half = wkb_eigenvalue(free, Geometry.half_line(b), Parity.HALF_LINE, n).energy
    assert sym == pytest.approx(((2 * n + 1) * math.pi / (2 * b)) ** 2, rel=1e-10)
    assert anti == pytest.approx(((2 * n + 2) * math.pi / (2 * b)) ** 2, rel=1e-10)
    assert half == pytest.approx(((n + 1) * math.pi / b) ** 2, rel=1e-10)


def test_harmonic_unconfined_limit():
    geo = Geometry.symmetric(5.0)
    levels = [r.energy for r in wkb_spectrum(HO, geo, 4)]
    assert levels == pytest.approx([1.0, 3.0, 5.0, 7.0], abs=1e-4)


def test_linear_unconfined_limit():
    geo = Geometry.half_line(12.0)
    for n in range(3):
        expected = (1.5 * math.pi * (n + 0.75)) ** (2.0 / 3.0)
        assert wkb_eigenvalue(LINEAR, geo, Parity.HALF_LINE, n).energy == pytest.approx(
            expected, abs=1e-8)


def test_spectrum_interleaves_parities():
    levels = wkb_spectrum(Potential(1.0, 4.0), Geometry.symmetric(1.0), 6)
    parities = [r.parity for r in levels]
    assert parities == [Parity.SYMMETRIC, Parity.ANTISYMMETRIC] * 3
    assert [r.index for r in levels] == [0, 0, 1, 1, 2, 2]
    energies = [r.energy for r in levels]
    assert energies == sorted(energies)


@pytest.mark.parametrize("pot, geo", [
    (HO, Geometry.symmetric(0.7)),
    (HO, Geometry.symmetric(3.0)),
    (Potential(1.0, 4.0), Geometry.symmetric(1.0)),
    (LINEAR, Geometry.half_line(2.0)),
])
def test_roots_satisfy_their_condition(pot, geo):
    for r in wkb_spectrum(pot, geo, 4):
        assert r.method is Method.WKB
        assert abs(r.residual) <= 1e-10
        assert abs(wkb_residual(pot, geo, r.parity, r.energy)) <= 1e-10
        assert r.bracket[0] <= r.energy <= r.bracket[1]
        assert r.evaluations > 0


def test_confinement_raises_energy():
    bs = np.linspace(0.5, 5.0, 40)
    for parity in (Parity.SYMMETRIC, Parity.ANTISYMMETRIC):
        es = [wkb_eigenvalue(HO, Geometry.symmetric(float(b)), parity, 0).energy for b in bs]
        assert all(e1 >= e2 - 1e-12 for e1, e2 in zip(es, es[1:]))


def test_regime_tag_matches_turning_point():
    r = wkb_eigenvalue(HO, Geometry.symmetric(3.0), Parity.ANTISYMMETRIC, 0)
    assert r.regime is Regime.INSIDE and math.sqrt(r.energy) < 3.0
    r = wkb_eigenvalue(HO, Geometry.symmetric(0.5), Parity.ANTISYMMETRIC, 0)
    assert r.regime is Regime.OUTSIDE and math.sqrt(r.energy) >= 0.5


def test_seam_neighbour_state_is_counted_once():
    # Both regime families root for the ground state here; only one survives
    geo = Geometry.half_line(2.7)
    levels = wkb_spectrum(LINEAR, geo, 3)
    assert [r.index for r in levels] == [0, 1, 2]
    assert levels[0].regime is Regime.INSIDE
    assert levels[0].energy == pytest.approx(2.606, abs=1e-3)


def test_root_on_seam_is_reported():
    geo = Geometry.symmetric(1.0)
    seam = 1.0
    fake = Root(energy=seam * (1 + 1e-8), bracket=(0.9, 1.1), residual=0.0, evaluations=3)
    with pytest.raises(DegenerateRootError) as info:
        wkb._to_result(fake, Regime.OUTSIDE, HO, geo, Parity.ANTISYMMETRIC, 0)
    assert info.value.estimate == fake.energy


def test_invalid_requests():
    geo = Geometry.symmetric(1.0)
    with pytest.raises(DomainError):
        wkb_eigenvalue(HO, geo, Parity.HALF_LINE, 0)
    with pytest.raises(ValueError):
        wkb_eigenvalue(HO, geo, Parity.SYMMETRIC, -1)
    with pytest.raises(ValueError):
        wkb_eigenvalue(HO, geo, Parity.SYMMETRIC, 0, tol=0.0)
    with pytest.raises(ValueError):
        wkb_spectrum(HO, geo, 0)


def test_high_states_follow_free_box_scaling():
    # deep in the outside regime the potential is a small perturbation
    geo = Geometry.symmetric(1.0)
    e = wkb_eigenvalue(HO, geo, Parity.SYMMETRIC, 30).energy
    free = (61 * math.pi / 2) ** 2
    assert e > free
    assert (e - free) / free < 0.01


def test_unconfined_limit_approached_from_above():
    bs = [2.0, 2.5, 3.0, 4.0, 5.0]
    for parity, limit in ((Parity.SYMMETRIC, 1.0), (Parity.ANTISYMMETRIC, 3.0)):
        es = [wkb_eigenvalue(HO, Geometry.symmetric(b), parity, 0).energy for b in bs]
        assert all(e >= limit - 1e-12 for e in es)
        assert all(e1 >= e2 for e1, e2 in zip(es, es[1:]))
