import pytest

from qvla.families import sl2_untwisted
from qvla.isomorphisms import check_example_isomorphism, iso_affine, iso_qtorus
from qvla.scalars import InvalidInput


@pytest.mark.parametrize("which, zeta, opts", [
    ("affine", 0, {}),
    ("affine", 1, {}),
    ("affine", 1, {"epsilon": 2}),
    ("qheis", 0, {}),
    ("vlike", 0, {}),
    ("klein", 0, {}),
    ("klein", 1, {}),
])
def test_isomorphism_passes(which, zeta, opts):
    rep = check_example_isomorphism(which, zeta, **opts)
    assert rep.passed, [f.key for f in rep.failures[:3]]
    assert any(i.key.startswith("injective") for i in rep.instances)
    assert any(i.key.startswith("onto") for i in rep.instances)


def test_untwisted_affine_isomorphism():
    assert iso_affine(0, mode_radius=2, data=sl2_untwisted()).passed


def test_small_quantum_torus_isomorphism():
    assert iso_qtorus(0, ell=1, N=1, lattice_radius=2, mode_radius=2).passed


@pytest.mark.parametrize("which", ["qheis", "vlike"])
def test_nonzero_twist_is_rejected_where_undefined(which):
    with pytest.raises(InvalidInput):
        check_example_isomorphism(which, 1)


def test_unknown_example_is_rejected():
    with pytest.raises(InvalidInput):
        check_example_isomorphism("nonsense", 0)
