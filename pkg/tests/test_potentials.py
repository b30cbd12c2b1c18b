import json

import numpy as np
import pytest

import phaselab as pl
from phaselab.errors import DomainError, PotentialError


def test_evaluate_zero():
    assert pl.evaluate(pl.zero(), 1.0) == 0.0


def test_evaluate_square_well_inside_and_outside():
    pot = pl.square_well(1.0, 1.0)
    assert pl.evaluate(pot, 0.5) == 1.0
    assert pl.evaluate(pot, 2.0) == 0.0
    assert pl.evaluate(pot, pot.support_radius) == 0.0


def test_evaluate_rejects_negative_x_and_dirac():
    with pytest.raises(DomainError):
        pl.evaluate(pl.zero(), -0.1)
    with pytest.raises(PotentialError, match="no pointwise values"):
        pl.evaluate(pl.dirac_delta(1.0, 1.0), 0.5)


def test_moments_closed_forms():
    assert pl.moments(pl.zero()) == (0.0, 0.0, 0.0)
    assert pl.moments(pl.square_well(1.0, 1.0)) == (1.0, 0.5, pytest.approx(1.0 / 3.0))
    assert pl.moments(pl.dirac_delta(2.0, 0.5)) == (2.0, 1.0, 0.5)


def test_tabulated_trapezoid_constant():
    pot = pl.tabulated([0.0, 1.0], [1.0, 1.0])
    assert pot.m0 == pytest.approx(1.0)
    assert pot.support_radius == 1.0


def test_tabulated_interpolation_and_bounds():
    pot = pl.tabulated([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
    assert pl.evaluate(pot, 0.5) == pytest.approx(1.0)
    assert pl.evaluate(pot, 1.5) == pytest.approx(1.0)
    assert pl.evaluate(pot, 2.0) == 0.0
    assert pl.evaluate(pot, 5.0) == 0.0


def test_validation_rejects_negative_height():
    with pytest.raises(PotentialError, match="non-negative"):
        pl.square_well(-1.0, 1.0)


def test_validation_rejects_bad_grids():
    with pytest.raises(PotentialError, match="strictly increasing"):
        pl.tabulated([0.0, 1.0, 1.0], [0.0, 1.0, 0.0])
    with pytest.raises(PotentialError):
        pl.tabulated([0.0], [1.0])
    with pytest.raises(PotentialError):
        pl.tabulated([0.0, 1.0], [1.0, float("nan")])
    with pytest.raises(PotentialError, match="non-negative"):
        pl.tabulated([0.0, 1.0], [1.0, -0.5])


def test_validation_rejects_nonpositive_geometry():
    with pytest.raises(PotentialError):
        pl.square_well(1.0, 0.0)
    with pytest.raises(PotentialError):
        pl.dirac_delta(1.0, -2.0)
    with pytest.raises(PotentialError, match="non-negative"):
        pl.dirac_delta(-1.0, 2.0)


def test_zero_strength_delta_is_admitted():
    pot = pl.dirac_delta(0.0, 1.0)
    assert pot.m0 == 0.0
    assert pot.support_radius == 1.0


def test_validate_is_idempotent():
    pot = pl.square_well(2.0, 0.7)
    assert pl.validate(pot) == pot
    tab = pl.tabulated([0.0, 0.5, 2.0], [1.0, 0.25, 0.0])
    assert pl.validate(tab) == tab


def test_moment_scaling_is_exact():
    base = pl.square_well(1.3, 0.9)
    scaled = pl.square_well(5.0 * 1.3, 0.9)
    assert scaled.m0 == 5.0 * base.m0
    assert scaled.m1 == 5.0 * base.m1
    assert scaled.m2 == 5.0 * base.m2
    vals = [0.3, 1.1, 0.0, 0.7]
    tab = pl.tabulated([0.0, 1.0, 2.0, 3.0], vals)
    tab5 = pl.tabulated([0.0, 1.0, 2.0, 3.0], [5.0 * v for v in vals])
    assert tab5.m0 == pytest.approx(5.0 * tab.m0, rel=1e-15)
    assert tab5.m2 == pytest.approx(5.0 * tab.m2, rel=1e-15)


def test_tail_mass_envelope():
    for pot in (
        pl.zero(),
        pl.square_well(1.0, 1.0),
        pl.dirac_delta(2.0, 0.5),
        pl.tabulated([0.0, 1.0, 2.0], [0.0, 2.0, 0.0]),
    ):
        assert pl.tail_mass(pot, pot.support_radius) == 0.0
        assert pl.tail_mass(pot, pot.support_radius + 3.0) == 0.0
        assert pl.tail_mass(pot, 0.0) == pytest.approx(pot.m0, rel=1e-14, abs=1e-300)
    well = pl.square_well(2.0, 1.5)
    assert pl.tail_mass(well, 0.5) == pytest.approx(2.0)


def test_descriptor_roundtrip():
    for pot in (
        pl.zero(),
        pl.square_well(1.0, 2.0),
        pl.dirac_delta(0.5, 1.5),
        pl.tabulated([0.0, 1.0], [1.0, 0.0]),
    ):
        assert pl.from_descriptor(pl.to_descriptor(pot)) == pot


def test_parse_potential_inline_and_file(tmp_path):
    pot = pl.parse_potential('{"kind": "square_well", "height": 1.0, "width": 1.0}')
    assert pot == pl.square_well(1.0, 1.0)
    path = tmp_path / "well.json"
    path.write_text(json.dumps({"kind": "dirac_delta", "strength": 2.0, "position": 0.5}))
    assert pl.parse_potential(f"@{path}") == pl.dirac_delta(2.0, 0.5)


def test_parse_potential_errors_name_the_field():
    with pytest.raises(PotentialError, match="'width'"):
        pl.parse_potential('{"kind": "square_well", "height": 1.0}')
    with pytest.raises(PotentialError, match="'height'"):
        pl.parse_potential('{"kind": "square_well", "height": "tall", "width": 1.0}')
    with pytest.raises(PotentialError, match="kind"):
        pl.parse_potential('{"kind": "coulomb"}')
    with pytest.raises(PotentialError, match="JSON"):
        pl.parse_potential("{not json")


def test_potentials_are_hashable_and_frozen():
    pot = pl.square_well(1.0, 1.0)
    assert hash(pot) == hash(pl.square_well(1.0, 1.0))
    with pytest.raises(AttributeError):
        pot.height = 2.0
    assert len({pl.zero(), pl.zero()}) == 1
    arr = np.array([0.0, 1.0])
    assert pl.tabulated(arr, arr) == pl.tabulated([0.0, 1.0], [0.0, 1.0])
