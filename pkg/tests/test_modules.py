from fractions import Fraction
from math import factorial

import pytest

from qvla.algebra import Mode
from qvla.currents import ContractError, GeneratorIndex
from qvla.enveloping import Envelope
from qvla.linear import Vec
from qvla.modules import (
    InducedModule,
    ModuleFields,
    affine_induced_module,
    bracket_support,
    check_equi_commutator,
    check_equivariance,
    check_module,
    check_phi_associativity,
    check_phi_flow,
    failure_kinds,
    fock_module,
    module_field,
    phi_power,
    phi_series,
)

A, C = GeneratorIndex("a"), GeneratorIndex("c")


# ---- the phi series --------------------------------------------------------

def test_phi_series_closed_forms():
    order = 8
    assert phi_series(0, order) == [1, 1] + [0] * (order - 1)
    assert phi_series(1, order) == [Fraction(1, factorial(k)) for k in range(order + 1)]
    assert phi_series(2, order) == [1] * (order + 1)


@pytest.mark.parametrize("eps", [-1, 0, 1, 2, 3])
def test_phi_flow(eps):
    assert check_phi_flow(eps, 6).passed


def test_phi_power_negative_exponent_inverts():
    for eps in (-1, 0, 1, 2):
        inv = phi_power(eps, -1, 6)
        direct = phi_power(eps, 1, 6)
        prod = [sum(inv[i] * direct[k - i] for i in range(k + 1)) for k in range(7)]
        assert prod == [1] + [0] * 6


# ---- modules ---------------------------------------------------------------

def test_fock_examples():
    mod = fock_module()
    one = mod.vacuum
    v = mod.action(A, -1, one)
    assert mod.action(A, 1, v) == one
    for m in range(0, 4):
        assert not mod.action(A, m, one)
    assert mod.action(C, 0, v) == v


def test_level_zero_kills_central_modes():
    mod = affine_induced_module(level=0)
    K = GeneratorIndex("K")
    x = next(a for a in mod.alg.generators(0) if not mod.alg.is_central(a))
    v = mod.action(x, -1 if (-1 - x.params[0]) % 2 == 0 else -2, mod.vacuum)
    assert v
    assert not mod.action(K, -1, v)


def test_restriction_bound():
    mod = fock_module()
    v = mod.action(A, -2, mod.action(A, -1, mod.vacuum))
    bound = mod.restriction_bound(v)
    assert bound == 3
    for m in range(bound + 1, bound + 5):
        assert not mod.action(A, m, v)
    assert mod.action(A, 2, v) == mod.action(A, -1, mod.vacuum).scale(mod.field.q(1) + 1 / mod.field.q(1))


def test_module_field_window():
    mod = fock_module()
    q = mod.field.q_elem(1)
    win = module_field(mod, A, q, (-2, 2))
    for e in range(-2, 3):
        assert win.get((e,)) == Vec(mod.field, {(A, -e): mod.field.q(1) ** e})


def test_fields_on_products_need_associativity():
    mod = fock_module()
    fields = ModuleFields(mod, Envelope(mod.alg))
    one = mod.field.identity()
    prod = Vec.single(mod.field, (Mode(A, one, -1, 0), Mode(A, one, -1, 0)))
    with pytest.raises(ContractError):
        fields.coefficient(prod, 0)


def test_bracket_support():
    alg = fock_module().alg
    q, one = alg.field.q_elem(1), alg.field.identity()
    assert bracket_support(alg, A, one, A, one) == sorted([q, q.inverse()])


@pytest.mark.parametrize("factory, order", [(fock_module, 4), (affine_induced_module, 3)])
def test_module_suite(factory, order):
    mod = factory()
    assert check_module(mod).passed
    assert check_equivariance(mod).passed
    assert check_equi_commutator(mod).passed
    gen = next(a for a in mod.alg.generators(0) if not mod.alg.is_central(a))
    x = Mode(gen, mod.field.identity(), -1, 0)
    assert check_phi_associativity(mod, x, x, order=order).passed


def test_mixed_scale_associativity():
    mod = fock_module()
    one, q = mod.field.identity(), mod.field.q_elem(1)
    rep = check_phi_associativity(mod, Mode(A, one, -1, 0), Mode(A, q, -1, 0), order=3)
    assert rep.passed


def test_missing_roots_fail_membership():
    mod = fock_module()
    x = Mode(A, mod.field.identity(), -1, 0)
    q = mod.field.q_elem(1)
    for roots in ([], [q]):
        rep = check_phi_associativity(mod, x, x, roots=roots)
        assert not rep.passed
        assert failure_kinds(rep) == {"membership"}


class Doubled(InducedModule):
    """Acts with twice the declared bracket: not a module for the algebra."""

    def bracket(self, x, y):
        return super().bracket(x, y).scale(2)


def test_doubled_bracket_is_detected():
    base = fock_module()
    mod = Doubled(base.alg, {C: 1}, "doubled")
    one, q = mod.field.identity(), mod.field.q_elem(1)
    assert not check_equi_commutator(mod).passed
    rep = check_phi_associativity(mod, Mode(A, one, -1, 0), Mode(A, q, -1, 0))
    assert not rep.passed
    assert failure_kinds(rep) <= {"skew-consistency", "substitution"}
