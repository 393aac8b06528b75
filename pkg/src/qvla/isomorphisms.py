"""Comparison algebras and isomorphism checks for the built-in families.

Every comparison algebra is implemented from its own bracket formula; only
the source side uses the generic g^zeta machinery.
"""

from __future__ import annotations

import random

from .algebra import Mode, lie_str, reduce_mode, lie_bracket
from .currents import GeneratorIndex
from .families import QuantumTorusData, example, quantum_torus, sl2_chevalley, twisted_affine
from .linear import Echelon, Vec
from .report import Report
from .scalars import InvalidInput


def _single(fld, key, c=1):
    return Vec.single(fld, key, c)


def _apply(psi, fld, X: Vec) -> Vec:
    out = Vec(fld)
    for key, c in X.terms.items():
        out.add_scaled(psi(key), c)
    return out


def _bilinear(br, fld, X: Vec, Y: Vec) -> Vec:
    out = Vec(fld)
    for x, c in X.terms.items():
        for y, d in Y.terms.items():
            out.add_scaled(br(x, y), c * d)
    return out


def _compare(rep: Report, alg, zeta, target_basis, target_bracket, psi, pairs, source_basis):
    fld = alg.field
    for x, y in pairs:
        lhs = _apply(psi, fld, target_bracket(x, y))
        rhs = lie_bracket(alg, zeta, psi(x), psi(y))
        diff = lhs - rhs
        rep.record("psi[%s, %s]" % (_fmt(x), _fmt(y)), not diff, lie_str(diff))
    ech = Echelon(fld)
    rank = ech.extend(psi(t) for t in target_basis)
    rep.record("injective on %d target basis elements" % len(target_basis), rank == len(target_basis),
               "rank %d" % rank)
    missed = [s for s in source_basis if ech.reduce(_single(fld, s))]
    rep.record("onto %d source basis modes" % len(source_basis), not missed,
               "missed %s" % ", ".join(str(s) for s in missed[:4]))


def _fmt(key):
    return "(" + ",".join(str(k) for k in key) + ")"


def _source_basis(alg, zeta, gens, alphas, mode_range, extra=()):
    out = []
    for a in gens:
        for alpha in alphas:
            for m in mode_range:
                md = Mode(a, alpha, m, zeta)
                red = reduce_mode(alg, zeta, _single(alg.field, md))
                if len(red) == 1 and md in red.terms and red.terms[md].is_one():
                    out.append(md)
    return out + list(extra)


def _pairs(basis, limit, rng, aligned=None):
    full = [(x, y) for x in basis for y in basis]
    if limit is None or len(full) <= limit:
        return full
    picks = rng.sample(full, limit)
    if aligned:
        picks = picks[: limit // 2] + [aligned(rng) for _ in range(limit - limit // 2)]
    return picks


# ---------------------------------------------------------------------------


def iso_affine(zeta: int, mode_radius: int = 3, epsilon: int = 0, data=None) -> Report:
    """g^zeta of the twisted affine algebra against the untwisted affine algebra."""
    data = data or sl2_chevalley()
    alg = twisted_affine(data, epsilon)
    fld = alg.field
    T = data.order
    K = GeneratorIndex("K")
    rep = Report("iso-affine", {"zeta": zeta, "epsilon": epsilon, "mode_radius": mode_radius, "data": data.name})
    modes = range(-mode_radius, mode_radius + 1)
    target_basis = [("t", x, m) for x in data.basis for m in modes] + [("K",)]

    def target_bracket(u, v):
        if u[0] == "K" or v[0] == "K":
            return Vec(fld)
        _, x, m = u
        _, y, n = v
        out = Vec(fld)
        for z, c in data.br(x, y).terms.items():
            out._accumulate(("t", z, m + n), c)
        if m == -n:
            out._accumulate(("K",), data.pairing(x, y) * m)
        return out

    # invert the source map on the target basis: x t^m = T * sum coords * x_{(k,r)}^{1,zeta}(m)
    gens = sorted(alg.eigenvectors)
    from .families import _coordinates

    vecs = [alg.eigenvectors[a] for a in gens]
    one = fld.identity()

    def psi(u):
        if u[0] == "K":
            return _single(fld, Mode(K, one, zeta - 1, zeta), T)
        _, x, m = u
        coords = _coordinates(fld, vecs, _single(fld, x))
        return Vec(fld, {Mode(a, one, m, zeta): c * T for a, c in zip(gens, coords)})

    source = _source_basis(alg, zeta, gens, [one], modes, [Mode(K, one, zeta - 1, zeta)])
    pairs = [(u, v) for u in target_basis for v in target_basis]
    _compare(rep, alg, zeta, target_basis, target_bracket, psi, pairs, source)
    # the source map itself, read in the stated direction, on a few generators
    for a in gens:
        v = alg.eigenvectors[a]
        image = _apply(psi, fld, Vec(fld, {("t", x, 1): c for x, c in v.terms.items()}))
        rep.record("source map %s" % a, image == _single(fld, Mode(a, one, 1, zeta), T),
                   lie_str(image))
    return rep


def iso_qtorus(zeta: int, ell: int = 2, N: int = 2, lattice_radius: int = 2, mode_radius: int = 2,
               epsilon: int = 0, samples: int = 400, seed: int = 0) -> Report:
    """g^zeta of the quantum torus algebra against the affinization of gl_{ell,Q}."""
    data = QuantumTorusData.generic(ell, N)
    alg = quantum_torus(data, epsilon)
    fld = alg.field
    K = GeneratorIndex("K")
    one = fld.identity()
    rep = Report("iso-qtorus", {"zeta": zeta, "epsilon": epsilon, "ell": ell, "N": N,
                                "lattice_radius": lattice_radius, "mode_radius": mode_radius,
                                "group_radius": alg.group_radius, "samples": samples, "seed": seed})
    import itertools

    lattice = list(itertools.product(range(-lattice_radius, lattice_radius + 1), repeat=N))
    alphas = alg.group_window()
    modes = range(-mode_radius, mode_radius + 1)
    target_basis = [("E", i, j, mv, al, m) for i in range(1, ell + 1) for j in range(1, ell + 1)
                    for mv in lattice for al in alphas for m in modes] + [("K",)]

    def product(u, v):
        _, i, j, mv, al, _m = u
        _, i2, j2, nv, be, _n = v
        if j != i2 or be / al != data.qpow(mv):
            return None
        return (i, j2, tuple(x + y for x, y in zip(mv, nv)), al), fld.embed_power(data.sigma(mv, nv), 1)

    def form(u, v):
        _, i, j, mv, al, _m = u
        _, i2, j2, nv, be, _n = v
        if j != i2 or j2 != i or be / al != data.qpow(mv) or any(x + y for x, y in zip(mv, nv)):
            return fld.zero
        return fld.embed_power(data.sigma(mv, nv), 1)

    def target_bracket(u, v):
        out = Vec(fld)
        if u[0] == "K" or v[0] == "K":
            return out
        m, n = u[5], v[5]
        for sign, (x, y) in ((1, (u, v)), (-1, (v, u))):
            prod = product(x, y)
            if prod:
                (i, j, mv, al), c = prod
                out._accumulate(("E", i, j, mv, al, m + n), c * sign)
        if m == -n:
            out._accumulate(("K",), form(u, v) * m)
        return out

    def psi(u):
        if u[0] == "K":
            return _single(fld, Mode(K, one, zeta - 1, zeta))
        _, i, j, mv, al, m = u
        return _single(fld, Mode(GeneratorIndex("E", (i, j) + mv), al, m, zeta), fld.embed_power(al, 1 - epsilon))

    gens = [GeneratorIndex("E", (i, j) + mv) for i in range(1, ell + 1) for j in range(1, ell + 1) for mv in lattice]
    source = _source_basis(alg, zeta, gens, alphas, modes, [Mode(K, one, zeta - 1, zeta)])
    rng = random.Random(seed)
    elems = [t for t in target_basis if t[0] == "E"]

    def aligned(rng):
        u = rng.choice(elems)
        _, i, j, mv, al, m = u
        nv = rng.choice(lattice)
        if rng.random() < 0.5:
            nv = tuple(-x for x in mv)
        be = al * data.qpow(mv)
        if rng.random() < 0.5:
            be = al / data.qpow(nv)
        v = ("E", rng.choice([j, rng.randint(1, ell)]), rng.choice([i, rng.randint(1, ell)]), nv, be,
             rng.choice([-m, rng.randint(-mode_radius, mode_radius)]))
        return u, v

    pairs = _pairs(target_basis, samples, rng, aligned)
    _compare(rep, alg, zeta, target_basis, target_bracket, psi, pairs, source)
    return rep


def iso_qheis(zeta: int = 0, mode_radius: int = 4, group_radius: int = 2) -> Report:
    """H_q^0 against the Heisenberg algebra of the form <b^a, b^b> = (d_{a/b,q} - d_{a/b,1/q})/(q - 1/q)."""
    if zeta != 0:
        raise InvalidInput("the Heisenberg comparison is stated at zeta = 0")
    alg = example("qheis")
    fld = alg.field
    q = fld.q_elem(1)
    qs = fld.q(1)
    a, c = GeneratorIndex("a"), GeneratorIndex("c")
    one = fld.identity()
    alphas = [q**e for e in range(-group_radius, group_radius + 1)]
    modes = range(-mode_radius, mode_radius + 1)
    rep = Report("iso-qheis", {"zeta": zeta, "mode_radius": mode_radius, "group_radius": group_radius})
    target_basis = [("b", al, m) for al in alphas for m in modes] + [("c",)]

    def form(al, be):
        r = al / be
        return ((1 if r == q else 0) - (1 if r == q.inverse() else 0)) / (qs - 1 / qs)

    def target_bracket(u, v):
        if u[0] == "c" or v[0] == "c" or u[2] + v[2] + 1 != 0:
            return Vec(fld)
        return _single(fld, ("c",), form(u[1], v[1]))

    def psi(u):
        if u[0] == "c":
            return _single(fld, Mode(c, one, -1, 0))
        return _single(fld, Mode(a, u[1], u[2], 0))

    source = _source_basis(alg, 0, [a], alphas, modes, [Mode(c, one, -1, 0)])
    pairs = [(u, v) for u in target_basis for v in target_basis]
    _compare(rep, alg, 0, target_basis, target_bracket, psi, pairs, source)
    return rep


def _vl_prime_bracket(fld):
    def br(u, v):
        if u[0] == "c" or v[0] == "c":
            return Vec(fld)
        _, m1, m2 = u
        _, n1, n2 = v
        out = Vec(fld, {("L'", m1 + n1, m2 + n2): (m1 + 1) * n2 - m2 * (n1 + 1)})
        if m2 + n2 == 0 and m1 + n1 + 2 == 0:
            out._accumulate(("c",), m1 + 1)
        return out

    return br


def iso_vlike(zeta: int = 0, mode_radius: int = 3, family_radius: int = 3) -> Report:
    """VL^0 against VL' with L'_{m1,m2} -> L_{m2}^{1,0}(m1 + 1)."""
    if zeta != 0:
        raise InvalidInput("the VL' comparison is stated at zeta = 0")
    alg = example("vlike")
    fld = alg.field
    one = fld.identity()
    c = GeneratorIndex("c")
    rep = Report("iso-vlike", {"zeta": zeta, "mode_radius": mode_radius, "family_radius": family_radius})
    target_basis = [("L'", m - 1, j) for j in range(-family_radius, family_radius + 1)
                    for m in range(-mode_radius, mode_radius + 1)] + [("c",)]

    def psi(u):
        if u[0] == "c":
            return _single(fld, Mode(c, one, -1, 0))
        return _single(fld, Mode(GeneratorIndex("L", (u[2],)), one, u[1] + 1, 0))

    gens = [GeneratorIndex("L", (j,)) for j in range(-family_radius, family_radius + 1)]
    source = _source_basis(alg, 0, gens, [one], range(-mode_radius, mode_radius + 1), [Mode(c, one, -1, 0)])
    pairs = [(u, v) for u in target_basis for v in target_basis]
    _compare(rep, alg, 0, target_basis, _vl_prime_bracket(fld), psi, pairs, source)
    return rep


def iso_klein(zeta: int, mode_radius: int = 3, family_radius: int = 2) -> Report:
    """VL^zeta against B^zeta with L -> B and c -> 2c."""
    alg = example("klein")
    fld = alg.field
    one = fld.identity()
    c = GeneratorIndex("c")
    rep = Report("iso-klein", {"zeta": zeta, "mode_radius": mode_radius, "family_radius": family_radius})
    modes = range(-mode_radius, mode_radius + 1)
    target_basis = [("L", j, a) for j in range(-family_radius, family_radius + 1) for a in modes] + [("c",)]

    def vl_zeta(u, v):
        # [L_m(a), L_n(b)] = (a n - m b) L_{m+n}(a + b + zeta - 1) + d_{m+n,0} d_{a+b,0} a c
        if u[0] == "c" or v[0] == "c":
            return Vec(fld)
        _, m, a = u
        _, n, b = v
        out = Vec(fld, {("L", m + n, a + b + zeta - 1): a * n - m * b})
        if m + n == 0 and a + b == 0:
            out._accumulate(("c",), a)
        return out

    def psi(u):
        if u[0] == "c":
            return _single(fld, Mode(c, one, zeta - 1, zeta), 2)
        return _single(fld, Mode(GeneratorIndex("B", (u[1],)), one, u[2], zeta))

    gens = [GeneratorIndex("B", (j,)) for j in range(-family_radius, family_radius + 1)]
    source = _source_basis(alg, zeta, gens, [one], modes, [Mode(c, one, zeta - 1, zeta)])
    pairs = [(u, v) for u in target_basis for v in target_basis]
    _compare(rep, alg, zeta, target_basis, vl_zeta, psi, pairs, source)
    return rep


def check_example_isomorphism(which: str, zeta: int, **window) -> Report:
    checks = {"affine": iso_affine, "qtorus": iso_qtorus, "qheis": iso_qheis, "vlike": iso_vlike, "klein": iso_klein}
    if which not in checks:
        raise InvalidInput("unknown isomorphism check %r" % which)
    return checks[which](zeta, **window)
