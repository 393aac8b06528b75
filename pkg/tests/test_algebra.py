import random

import pytest

from qvla.algebra import (
    Mode,
    NonConfluentRelations,
    SchemaError,
    associated_group,
    check_jacobi,
    check_maximality,
    check_reconstruction,
    check_skew_symmetry,
    check_zeta_lie_axioms,
    current_bracket,
    entry,
    g_mode_bracket,
    gamma_bracket,
    gamma_normal_form,
    mode_bracket_oracle,
    phi_gamma,
    reduce_mode,
    sample_modes,
    zeta_current_bracket,
    zeta_mode_bracket,
)
from qvla.currents import ContractError, CurrentExpr, GeneratorIndex
from qvla.families import (
    QuantumTorusData,
    example,
    klein_bottle,
    q_heisenberg,
    quantum_torus,
    sl2_chevalley,
    twisted_affine,
    virasoro_like,
)
from qvla.linear import Vec
from qvla.algebra import Rule

FAMILIES = ["qheis", "vlike", "klein", "affine", "qtorus"]
A, C = GeneratorIndex("a"), GeneratorIndex("c")


def single(alg, mode, c=1):
    return Vec.single(alg.field, mode, c)


def qheis_value(alg):
    q = alg.field.q(1)
    return 1 / (q - 1 / q)


# ---- associated groups -----------------------------------------------------

def test_associated_groups():
    assert associated_group(virasoro_like()) == []
    qh = q_heisenberg()
    assert associated_group(qh) == [qh.field.q_elem(1)]
    kb = klein_bottle()
    assert associated_group(kb) == [kb.field.group(1)]
    af = example("affine")
    assert associated_group(af) == [af.field.zeta_elem()]


# ---- current brackets ------------------------------------------------------

def test_qheis_current_bracket():
    alg = q_heisenberg()
    one, q = alg.field.identity(), alg.field.q_elem(1)
    terms = current_bracket(alg, A, one, A, one)
    val = qheis_value(alg)
    got = {(t.i, t.lam): t.coeff for t in terms}
    assert got == {
        (0, q): CurrentExpr(alg.field, 1, {(C, one, 0): val}),
        (0, q.inverse()): CurrentExpr(alg.field, 1, {(C, one, 0): -val}),
    }


def test_central_brackets_vanish():
    alg = q_heisenberg()
    one = alg.field.identity()
    assert current_bracket(alg, C, one, A, one) == []
    assert current_bracket(alg, A, one, C, one) == []
    assert zeta_mode_bracket(alg, 0, Mode(C, one, -1, 0), Mode(A, one, 2, 0)) == Vec(alg.field)


def test_undeclared_generator_is_schema_error():
    alg = q_heisenberg()
    one = alg.field.identity()
    with pytest.raises(SchemaError):
        current_bracket(alg, GeneratorIndex("b"), one, A, one)


def test_vlike_structure_entries():
    alg = virasoro_like()
    L = lambda m: GeneratorIndex("L", (m,))  # noqa: E731
    for m in range(-2, 3):
        for n in range(-2, 3):
            ents = {(e.i, e.j): e.value for e in alg.entries(L(m), L(n))}
            first = {L(m + n): m + n}
            if m == -n:
                first[C] = 1
            assert ents[(1, 0)] == Vec(alg.field, first)
            assert ents.get((0, 1), Vec(alg.field)) == Vec(alg.field, {L(m + n): m})


def test_vlike_mode_brackets():
    alg = virasoro_like()
    L = lambda m: GeneratorIndex("L", (m,))  # noqa: E731
    # L_{m1,m2} is the mode (L_{m2}, m1)
    assert g_mode_bracket(alg, (L(0), 1), (L(1), 0)) == Vec(alg.field, {(L(1), 1): 1})
    assert g_mode_bracket(alg, (L(2), 1), (L(-2), -1)) == Vec(alg.field, {(C, 0): 1})
    for m in range(-3, 4):
        for n in range(-3, 4):
            if m != -n:
                assert g_mode_bracket(alg, (L(0), m), (L(0), n)) == Vec(alg.field)


def test_qheis_mode_bracket_in_g():
    alg = q_heisenberg()
    q = alg.field.q(1)
    for m in range(-3, 4):
        for n in range(-3, 4):
            got = g_mode_bracket(alg, (A, m), (A, n))
            want = Vec(alg.field, {(C, 0): (q ** m - q ** -m) / (q - 1 / q)} if m == -n else {})
            assert got == want
    assert g_mode_bracket(alg, (A, 0), (A, 0)) == Vec(alg.field)


def test_affine_entry_weights():
    alg = twisted_affine(sl2_chevalley(), 0)
    fld = alg.field
    for a in alg.generators(0):
        if alg.is_central(a):
            continue
        for b in alg.generators(0):
            if alg.is_central(b):
                continue
            k = a.params[0]
            by_lam = {}
            for e in alg.entries(a, b):
                by_lam.setdefault((e.i, e.j), {})[e.alpha.torsion] = e.value
            for vals in by_lam.values():
                assert set(vals) == {0, 1}
                # (-1)^(k s) / 2 weights
                assert vals[1] == vals[0].scale(fld(-1) ** k)
    untwisted = example("affine", data=__import__("qvla.families", fromlist=["sl2_untwisted"]).sl2_untwisted())
    for a in untwisted.generators(0):
        for b in untwisted.generators(0):
            assert {e.alpha for e in untwisted.entries(a, b)} <= {untwisted.field.identity()}


def test_qtorus_rank_one_entries():
    for eps in (0, 1, 2):
        alg = quantum_torus(QuantumTorusData.generic(1, 1), eps)
        fld = alg.field
        q = fld.q(1)
        E = lambda m: GeneratorIndex("E", (1, 1, m))  # noqa: E731
        for m in range(-2, 3):
            for n in range(-2, 3):
                ents = alg.entries(E(m), E(n))
                noncentral = [(e.alpha, e.value) for e in ents if e.i == 0]
                qm = fld.q_elem(1) ** m
                assert len(noncentral) == 2
                assert (qm.inverse(), Vec(fld, {E(m + n): q ** ((eps - 1) * m)})) in noncentral
                assert (fld.q_elem(1) ** n, Vec(fld, {E(m + n): -1})) in noncentral
                central = [e for e in ents if e.i == 1]
                assert len(central) == (1 if m == -n else 0)


def test_qtorus_traceless_pair_has_no_central_entry():
    alg = quantum_torus(QuantumTorusData.generic(2, 1), 0)
    e12 = GeneratorIndex("E", (1, 2, 1))
    e12b = GeneratorIndex("E", (1, 2, -1))
    assert all(e.i == 0 for e in alg.entries(e12, e12b))


def test_qtorus_degenerate_parameters_give_loop_algebra():
    alg = quantum_torus(QuantumTorusData.specialized(2, 1, 1, {}), 0)
    fld = alg.field
    E = lambda i, j: GeneratorIndex("E", (i, j, 0))  # noqa: E731
    K = GeneratorIndex("K")
    for p in range(-3, 4):
        for r in range(-3, 4):
            got = g_mode_bracket(alg, (E(1, 2), p), (E(2, 1), r))
            want = {(E(1, 1), p + r): 1, (E(2, 2), p + r): -1}
            if p + r == 0 and p:
                want[(K, -1)] = p
            assert got == Vec(fld, want)


# ---- mode brackets of the twisted algebras -----------------------------------

def test_qheis_zeta_zero_mode_bracket():
    alg = q_heisenberg()
    fld = alg.field
    val = qheis_value(alg)
    window = alg.group_window()
    K = Mode(C, fld.identity(), -1, 0)
    for alpha in window:
        for beta in window:
            for m in range(-3, 3):
                for n in range(-3, 3):
                    got = zeta_mode_bracket(alg, 0, Mode(A, alpha, m, 0), Mode(A, beta, n, 0))
                    ratio = alpha / beta
                    c = 0
                    if m + n + 1 == 0:
                        c = (ratio == fld.q_elem(1)) - (ratio == fld.q_elem(1).inverse())
                    assert got == (Vec.single(fld, K, val * c) if c else Vec(fld))


def test_qheis_disjoint_scales_have_empty_bracket():
    alg = q_heisenberg()
    q = alg.field.q_elem(1)
    assert zeta_current_bracket(alg, 0, A, q ** 3, A, alg.field.identity()) == []


def test_affine_zeta_current_bracket_matches_loop_form():
    alg = twisted_affine(sl2_chevalley(), 0)
    fld = alg.field
    one = fld.identity()
    for zeta in (0, 1, 2):
        for a in alg.generators(0):
            for b in alg.generators(0):
                if alg.is_central(a) or alg.is_central(b):
                    continue
                terms = zeta_current_bracket(alg, zeta, a, one, b, one)
                assert {t.lam for t in terms} <= {one}
                data = alg.data
                va, vb = alg.eigenvectors[a], alg.eigenvectors[b]
                form = data.pair_vec(va, vb)
                by_i = {t.i: t for t in terms}
                assert set(by_i) <= {0, 1}
                if form:
                    (key, c), = by_i[1].coeff.terms()
                    assert key[0] == GeneratorIndex("K") and c == form / 2
                else:
                    assert 1 not in by_i
                assert (0 in by_i) == bool(data.br_vec(va, vb))


@pytest.mark.parametrize("zeta", [0, 2])
def test_vlike_bracket_matches_window_oracle(zeta):
    alg = virasoro_like()
    rng = random.Random(zeta)
    for _ in range(40):
        x, y = sample_modes(alg, zeta, 2, rng)
        assert zeta_mode_bracket(alg, zeta, x, y) == mode_bracket_oracle(alg, zeta, x, y)


def test_twist_mismatch_is_contract_error():
    alg = q_heisenberg()
    one = alg.field.identity()
    with pytest.raises(ContractError):
        reduce_mode(alg, 0, single(alg, Mode(A, one, 0, 1)))


# ---- relations -------------------------------------------------------------

def test_klein_reduction_flips_index_with_sign():
    alg = klein_bottle()
    fld = alg.field
    minus, one = fld.group(1), fld.identity()
    B = lambda m: GeneratorIndex("B", (m,))  # noqa: E731
    for zeta in (0, 1, 2):
        for n in range(-3, 4):
            got = reduce_mode(alg, zeta, single(alg, Mode(B(-3), minus, n, zeta)))
            assert got == single(alg, Mode(B(3), one, n, zeta), -1)


def test_klein_declared_basis_signs():
    alg = klein_bottle()
    B = lambda m: GeneratorIndex("B", (m,))  # noqa: E731
    for k in range(-3, 4):
        assert alg.g_reduce(B(-2), k) == Vec(alg.field, {(B(2), k): -((-1) ** k)})


def test_affine_reduction_to_identity_scale():
    for eps in (0, 1):
        alg = twisted_affine(sl2_chevalley(), eps)
        fld = alg.field
        minus, one = fld.zeta_elem(), fld.identity()
        for a in alg.generators(0):
            if alg.is_central(a):
                continue
            k = a.params[0]
            for zeta in (0, 1):
                got = reduce_mode(alg, zeta, single(alg, Mode(a, minus, 2, zeta)))
                assert got == single(alg, Mode(a, one, 2, zeta), (-1) ** ((-k + eps - 1) % 2))


def test_reduce_mode_is_idempotent_and_linear():
    alg = klein_bottle()
    rng = random.Random(1)
    for zeta in (0, 1):
        for _ in range(30):
            x, y = sample_modes(alg, zeta, 2, rng)
            X, Y = single(alg, x), single(alg, y)
            rx = reduce_mode(alg, zeta, X)
            assert reduce_mode(alg, zeta, rx) == rx
            assert reduce_mode(alg, zeta, X.scale(3) + Y) == rx.scale(3) + reduce_mode(alg, zeta, Y)


def test_cyclic_relations_are_reported():
    alg = klein_bottle()
    fld = alg.field
    one = fld.identity()

    def rules(alg, a, alpha):
        # a(z) rewritten to itself plus nothing new: an endless loop
        twin = GeneratorIndex("B", (-a.params[0],))
        expr = CurrentExpr(fld, 1, {(a, alpha, 0): 1, (twin, alpha, 0): -1})
        return [Rule((a, alpha, 0), expr)]

    looping = alg.variant(rules=rules)
    with pytest.raises(NonConfluentRelations):
        reduce_mode(looping, 0, single(looping, Mode(GeneratorIndex("B", (1,)), one, 0, 0)))


# ---- the Gamma quotient and the reconstruction map ---------------------------

def test_gamma_normal_form_examples():
    alg = q_heisenberg()
    fld = alg.field
    q, one = fld.q_elem(1), fld.identity()
    for m in range(-3, 4):
        base = single(alg, Mode(A, one, m, 1))
        assert gamma_normal_form(alg, base) == base
        shifted = single(alg, Mode(A, q, m, 1))
        assert gamma_normal_form(alg, shifted) == base.scale(fld.q(1) ** -m)
        assert not gamma_normal_form(alg, shifted - base.scale(fld.q(1) ** -m))


def test_qheis_gamma_bracket():
    alg = q_heisenberg()
    fld = alg.field
    one = fld.identity()
    q = fld.q(1)
    for m in range(-3, 4):
        for n in range(-3, 4):
            got = gamma_bracket(alg, Mode(A, one, m, 1), Mode(A, one, n, 1))
            c = (q ** m - q ** -m) / (q - 1 / q) if m == -n else 0
            assert got == (single(alg, Mode(C, one, 0, 1), c) if c else Vec(fld))


def test_phi_gamma_examples():
    alg = q_heisenberg()
    fld = alg.field
    q, one = fld.q_elem(1), fld.identity()
    assert phi_gamma(alg, single(alg, Mode(A, one, 2, 1))) == Vec(fld, {(A, 2): 1})
    assert phi_gamma(alg, single(alg, Mode(A, q, 2, 1))) == Vec(fld, {(A, 2): fld.q(1) ** -2})
    assert phi_gamma(alg, Vec(fld)) == Vec(fld)


@pytest.mark.parametrize("name", ["qheis", "klein", "affine"])
def test_gamma_bracket_is_invariant_under_rescaling(name):
    alg = example(name)
    fld, eps = alg.field, alg.epsilon
    rng = random.Random(5)
    for _ in range(20):
        x, y = sample_modes(alg, eps, 2, rng, family_radius=1, mode_radius=3)
        for lam in alg.group_window():
            moved = Mode(x.a, x.alpha / lam, x.m, eps)
            c = fld.embed_power(lam, -x.m + eps - 1)
            assert gamma_bracket(alg, moved, y).scale(c) == gamma_bracket(alg, x, y)
        X = single(alg, x)
        assert phi_gamma(alg, gamma_normal_form(alg, X)) == phi_gamma(alg, X)


def test_klein_gamma_bracket_matches_mode_formula():
    # [B_{m1,m2}, B_{n1,n2}] from the fixed points of the Virasoro-like bracket
    alg = klein_bottle()
    fld = alg.field
    one = fld.identity()
    B = lambda m: GeneratorIndex("B", (m,))  # noqa: E731

    def L(m1, m2):
        out = {(m1, m2): 1}
        out[(m1, -m2)] = out.get((m1, -m2), 0) - (-1) ** m1
        return out

    def vl(x, y):
        out = {}
        for (m1, m2), c in x.items():
            for (n1, n2), d in y.items():
                k = (m1 + n1, m2 + n2)
                out[k] = out.get(k, 0) + c * d * (m1 * n2 - m2 * n1)
                if k == (0, 0):
                    out["c"] = out.get("c", 0) + c * d * m1
        return out

    def to_g(d):
        v = Vec(fld)
        for k, c in d.items():
            if k == "c":
                v = v + Vec(fld, {(C, 0): c})
            else:
                v = v + alg.g_reduce(B(k[1]), k[0]).scale(fld(c) / 2)
        return v

    for m2 in range(0, 3):
        for n2 in range(0, 3):
            for m1 in range(-2, 3):
                for n1 in range(-2, 3):
                    x, y = Mode(B(m2), one, m1, 1), Mode(B(n2), one, n1, 1)
                    got = phi_gamma(alg, gamma_bracket(alg, x, y))
                    assert got == g_mode_bracket(alg, (B(m2), m1), (B(n2), n1))
                    # B = L + sigma(L) inside the Virasoro-like algebra
                    assert got == to_g(vl(L(m1, m2), L(n1, n2)))


# ---- axiom checks and their mutations ---------------------------------------

@pytest.mark.parametrize("name", FAMILIES)
def test_families_pass_axiom_checks(name):
    alg = example(name)
    assert check_skew_symmetry(alg, 2).passed
    assert check_jacobi(alg, 2).passed
    assert check_maximality(alg, 1, 3).passed
    assert check_reconstruction(alg, 1, 3).passed


def test_abelian_passes_everything():
    alg = example("abelian")
    for rep in (check_skew_symmetry(alg), check_jacobi(alg), check_maximality(alg, 1, 3),
                check_reconstruction(alg, 1, 3), check_zeta_lie_axioms(alg, 0, triples=20, pairs=20)):
        assert rep.passed


@pytest.mark.parametrize("eps", [-1, 1, 2])
def test_affine_other_twists(eps):
    alg = twisted_affine(sl2_chevalley(), eps)
    assert check_skew_symmetry(alg).passed
    assert check_jacobi(alg).passed
    assert check_maximality(alg, 1, 4).passed
    assert check_reconstruction(alg, 1, 3).passed


def test_qheis_sign_flip_breaks_skew_symmetry():
    alg = q_heisenberg()
    fld = alg.field
    q = fld.q_elem(1)
    val = qheis_value(alg)
    flipped = alg.variant(structure=lambda A_, x, y: [
        entry(fld, q, fld.identity(), 0, 0, {C: val}),
        entry(fld, q.inverse(), fld.identity(), 0, 0, {C: val}),
    ])
    rep = check_skew_symmetry(flipped, 1)
    assert not rep.passed
    assert any("lam=q1 k=0" in f.key for f in rep.failures)


def test_noninvariant_form_breaks_jacobi():
    data = sl2_chevalley()
    data.form = {("e", "f"): 1, ("h", "h"): 1}
    alg = twisted_affine(data, 0, validate=False)
    assert not check_jacobi(alg, 1).passed


def test_dropped_central_relations_break_injectivity():
    alg = q_heisenberg().variant(central_rules=False)
    rep = check_reconstruction(alg, 0, 2)
    assert not rep.passed
    assert any(f.key.startswith("injective") for f in rep.failures)


def test_dropped_central_relations_break_maximality():
    alg = virasoro_like().variant(central_rules=False)
    rep = check_maximality(alg, 1, 2)
    assert not rep.passed
    assert rep.failures[0].key.startswith("rank")


def test_klein_without_relations_is_not_maximal():
    assert not check_maximality(klein_bottle().variant(rules=None), 1, 2).passed


@pytest.mark.parametrize("name", FAMILIES)
def test_zeta_lie_axioms_small(name):
    alg = example(name)
    for zeta in (0, 1):
        assert check_zeta_lie_axioms(alg, zeta, triples=15, pairs=15, seed=3).passed
