import random
from itertools import permutations

import pytest

from qvla.algebra import Mode, zeta_mode_bracket
from qvla.currents import ContractError, GeneratorIndex
from qvla.enveloping import (
    UNAVAILABLE,
    Envelope,
    check_gamma_epsilon_axiom,
    check_vertex_axioms,
    graded_dimension,
    rho_mode,
)
from qvla.families import abelian, example, q_heisenberg, sl2_chevalley, twisted_affine, virasoro_like
from qvla.linear import Vec

A, C = GeneratorIndex("a"), GeneratorIndex("c")


@pytest.fixture(scope="module")
def qheis():
    return Envelope(q_heisenberg())


def mono(env, *modes):
    return Vec.single(env.field, tuple(modes))


def test_rho_mode_examples():
    alg = q_heisenberg()
    q = alg.field.q_elem(1)
    for m in range(-3, 4):
        assert rho_mode(alg, 0, A, q, m) == Vec.single(alg.field, Mode(A, q, m, 0))
        want = Vec.single(alg.field, Mode(A, q, m - 1, 0), -m) if m else Vec(alg.field)
        assert rho_mode(alg, 1, A, q, m) == want
    assert rho_mode(alg, 2, A, q, -1) == Vec.single(alg.field, Mode(A, q, -3, 0), 2)


def test_normal_order_examples(qheis):
    fld = qheis.field
    one, q = fld.identity(), fld.q_elem(1)
    assert not qheis.normal_order([Mode(A, one, 0, 0)])
    got = qheis.normal_order([Mode(A, one, 1, 0), Mode(A, q, -2, 0)])
    bracket = zeta_mode_bracket(qheis.alg, 0, Mode(A, one, 1, 0), Mode(A, q, -2, 0))
    assert got == qheis.apply(bracket, qheis.vacuum)
    (central, c), = bracket.terms.items()
    assert central.a == C and c == -fld.q(1) / (fld.q(1) ** 2 - 1)
    x, y = Mode(A, one, -1, 0), Mode(A, one, -2, 0)
    assert qheis.normal_order([x, y]) == qheis.normal_order([y, x])
    assert qheis.normal_order([x, y]) == mono(qheis, y, x)


def test_normal_order_satisfies_adjacent_swaps():
    env = Envelope(twisted_affine(sl2_chevalley(), 0))
    fld = env.field
    gens = [a for a in env.alg.generators(0) if not env.alg.is_central(a)]
    rng = random.Random(4)
    for _ in range(30):
        word = [Mode(rng.choice(gens), fld.identity(), rng.randint(-3, 1), 0) for _ in range(3)]
        for i in range(2):
            x, y = word[i], word[i + 1]
            swapped = word[:i] + [y, x] + word[i + 2:]
            lhs = env.normal_order(word) - env.normal_order(swapped)
            rest = env.normal_order(word[i + 2:])
            rhs = env.apply(zeta_mode_bracket(env.alg, 0, x, y), rest)
            for z in reversed(word[:i]):
                rhs = env.apply_mode(z, rhs)
            assert lhs == rhs


def test_normal_order_is_independent_of_commuting_order():
    env = Envelope(abelian(2))
    one = env.field.identity()
    modes = [Mode(GeneratorIndex("a0"), one, -1, 0), Mode(GeneratorIndex("a1"), one, -2, 0),
             Mode(GeneratorIndex("a0"), one, -3, 0)]
    results = {tuple(env.normal_order(p).terms.items()) for p in permutations(modes)}
    assert len(results) == 1


def test_vertex_coefficient_examples(qheis):
    fld = qheis.field
    one, q = fld.identity(), fld.q_elem(1)
    a1, aq = qheis.generator(A, one), qheis.generator(A, q)
    for n in range(-4, 4):
        want = aq if n == -1 else qheis.zero()
        assert qheis.vertex_coefficient(qheis.vacuum, n, aq) == want
    assert qheis.vertex_coefficient(a1, -1, qheis.vacuum) == a1
    qs = fld.q(1)
    central = -qs / (qs ** 2 - 1)
    assert qheis.vertex_coefficient(a1, 1, aq) == qheis.zero()
    expected = qheis.apply(Vec.single(fld, Mode(C, one, -1, 0), central), qheis.vacuum)
    assert qheis.vertex_coefficient(a1, 0, aq) == expected
    assert qheis.normal_order([Mode(A, one, 1, 0), Mode(A, q, -2, 0)]) == expected
    # commutator formula with a single bracket term
    assert qheis.vertex_coefficient(a1, 0, aq) == qheis.apply(
        zeta_mode_bracket(qheis.alg, 0, Mode(A, one, 0, 0), Mode(A, q, -1, 0)), qheis.vacuum)


def test_derivation_matches_rho_convention(qheis):
    one = qheis.field.identity()
    a1 = qheis.generator(A, one)
    # D^n a / n! = a(-n-1)|0>
    assert qheis.derivation(a1, 1) == mono(qheis, Mode(A, one, -2, 0))
    assert qheis.derivation(a1, 2) == mono(qheis, Mode(A, one, -3, 0)).scale(2)


def test_r_action_examples(qheis):
    fld = qheis.field
    one, q = fld.identity(), fld.q_elem(1)
    assert qheis.r_action(q, qheis.vacuum) == qheis.vacuum
    assert qheis.r_action(q, qheis.generator(A, one)) == qheis.generator(A, q.inverse())
    assert qheis.r_action(q, mono(qheis, Mode(A, one, -2, 0))) == mono(qheis, Mode(A, q.inverse(), -2, 0))


def test_r_action_carries_twist_weight():
    alg = q_heisenberg().variant(epsilon=2)
    env = Envelope(alg)
    fld = env.field
    one, q = fld.identity(), fld.q_elem(1)
    got = env.r_action(q, mono(env, Mode(A, one, -2, 0)))
    assert got == mono(env, Mode(A, q.inverse(), -2, 0)).scale(fld.q(1) ** -1)


@pytest.mark.parametrize("eps", [0, 1])
def test_affine_r_action_weights(eps):
    env = Envelope(twisted_affine(sl2_chevalley(), eps))
    lam = env.field.zeta_elem()
    for a in env.alg.generators(0):
        if env.alg.is_central(a):
            continue
        k = a.params[0]
        gen = env.generator(a)
        assert env.r_action(lam, gen) == gen.scale(env.field.embed_power(lam, k - eps + 1))


def test_graded_dimensions():
    assert graded_dimension(virasoro_like(), 0) == 1
    assert graded_dimension(abelian(), 3) == 3
    assert [graded_dimension(abelian(), d) for d in range(5)] == [1, 1, 2, 3, 5]
    assert [graded_dimension(abelian(2), d) for d in range(5)] == [1, 2, 5, 10, 20]
    assert [graded_dimension(example("affine"), d) for d in range(4)] == [1, 4, 13, 35]
    assert graded_dimension(virasoro_like(), 1) == UNAVAILABLE
    assert graded_dimension(q_heisenberg(), 2) == UNAVAILABLE


def test_envelope_needs_weights():
    alg = q_heisenberg()
    fams = dict(alg.families)
    fams["a"] = type(fams["a"])("a", weight=None)
    with pytest.raises(ContractError):
        Envelope(alg.variant(families=fams))


def test_abelian_vertex_axioms():
    assert check_vertex_axioms(Envelope(abelian(2)), samples=8, degree=3).passed


def test_qheis_vertex_axioms_small(qheis):
    assert check_vertex_axioms(qheis, samples=8, degree=3).passed
    assert check_gamma_epsilon_axiom(qheis, samples=6, degree=2).passed


def test_identity_lambda_is_trivial():
    env = Envelope(twisted_affine(sl2_chevalley(), 0))
    assert check_gamma_epsilon_axiom(env, lambdas=[env.field.identity()], samples=4, degree=2).passed


def test_wrong_commutator_data_is_detected():
    # doubling one structure entry breaks skew-symmetry of the bracket, and the
    # vertex operators built on it fail the commutator formula
    alg = q_heisenberg()
    fld = alg.field
    from qvla.algebra import entry
    q = fld.q_elem(1)
    qs = fld.q(1)
    val = 1 / (qs - 1 / qs)
    broken = alg.variant(structure=lambda A_, x, y: [
        entry(fld, q, fld.identity(), 0, 0, {C: val}),
        entry(fld, q.inverse(), fld.identity(), 0, 0, {C: -2 * val}),
    ])
    rep = check_vertex_axioms(Envelope(broken), samples=12, degree=3)
    assert not rep.passed
