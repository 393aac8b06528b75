"""Built-in quasi vertex Lie algebras and their comparison algebras.

Five families are provided: twisted affine algebras, quantum torus algebras,
the q-Heisenberg algebra, the Virasoro-like algebra and the Klein bottle
algebra.  Each constructor returns a :class:`~qvla.algebra.QVLA` whose
``g_reduce_fn`` describes the underlying Lie algebra independently of the
relation data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import QVLA, Family, Rule, entry
from .currents import CurrentExpr, GeneratorIndex
from .linear import Echelon, Vec
from .report import Report
from .scalars import Field, GroupElem, InvalidInput, field


class DataError(InvalidInput):
    """Invalid finite Lie data or quantum torus data."""


# ---------------------------------------------------------------------------
# finite-dimensional input data
# ---------------------------------------------------------------------------


@dataclass
class FiniteLieData:
    """A finite-dimensional Lie algebra with invariant form and automorphism.

    ``bracket[(x, y)]`` and ``sigma[x]`` are dicts over basis symbols;
    ``form[(x, y)]`` is a scalar.  Missing entries are zero.  Values may be
    ints or scalar strings in the field Q(zeta_T).
    """

    basis: list
    bracket: dict
    form: dict
    sigma: dict
    order: int
    name: str = "b"

    def __post_init__(self):
        self.field = field(self.order, 0)

    def vec(self, terms) -> Vec:
        return Vec(self.field, {k: self.field(v) for k, v in terms.items()})

    def br(self, x, y) -> Vec:
        if (x, y) in self.bracket:
            return self.vec(self.bracket[(x, y)])
        if (y, x) in self.bracket:
            return -self.vec(self.bracket[(y, x)])
        return Vec(self.field)

    def br_vec(self, u: Vec, v: Vec) -> Vec:
        out = Vec(self.field)
        for x, c in u.terms.items():
            for y, d in v.terms.items():
                out.add_scaled(self.br(x, y), c * d)
        return out

    def pairing(self, x, y):
        val = self.form.get((x, y), self.form.get((y, x), 0))
        return self.field(val)

    def pair_vec(self, u: Vec, v: Vec):
        out = self.field.zero
        for x, c in u.terms.items():
            for y, d in v.terms.items():
                out = out + c * d * self.pairing(x, y)
        return out

    def apply_sigma(self, v: Vec, times: int = 1) -> Vec:
        for _ in range(times):
            out = Vec(self.field)
            for x, c in v.terms.items():
                out.add_scaled(self.vec(self.sigma.get(x, {x: 1})), c)
            v = out
        return v

    def validate(self) -> Report:
        rep = Report("finite-lie-data", {"basis": len(self.basis), "order": self.order})
        unit = {x: Vec.single(self.field, x) for x in self.basis}
        for x, y in itertools.product(self.basis, repeat=2):
            rep.record("antisymmetry %s,%s" % (x, y), not (self.br(x, y) + self.br(y, x)))
            rep.record("form symmetric %s,%s" % (x, y), self.pairing(x, y) == self.pairing(y, x))
            sx, sy = self.apply_sigma(unit[x]), self.apply_sigma(unit[y])
            rep.record("sigma bracket %s,%s" % (x, y), self.br_vec(sx, sy) == self.apply_sigma(self.br(x, y)))
            rep.record("sigma form %s,%s" % (x, y), self.pair_vec(sx, sy) == self.pairing(x, y))
        for x, y, z in itertools.product(self.basis, repeat=3):
            jac = (
                self.br_vec(unit[x], self.br(y, z))
                + self.br_vec(unit[y], self.br(z, x))
                + self.br_vec(unit[z], self.br(x, y))
            )
            rep.record("jacobi %s,%s,%s" % (x, y, z), not jac, jac)
            inv = self.pair_vec(self.br(x, y), unit[z]) + self.pair_vec(unit[y], self.br(x, z))
            rep.record("form invariance %s,%s,%s" % (x, y, z), not inv, inv)
        for x in self.basis:
            rep.record("sigma order %s" % x, self.apply_sigma(unit[x], self.order) == unit[x])
        return rep

    def eigenbasis(self) -> dict:
        """k -> list of eigenvectors (Vecs) with sigma v = zeta^k v."""
        fld = self.field
        q = fld.zeta()
        out = {}
        for k in range(self.order):
            ech = Echelon(fld)
            vecs = []
            for x in self.basis:
                v = Vec.single(fld, x)
                proj = Vec(fld)
                for s in range(self.order):
                    proj.add_scaled(self.apply_sigma(v, s), q ** (-k * s) / self.order)
                if proj and ech.insert(proj):
                    vecs.append(proj)
            out[k] = vecs
        return out


def sl2_chevalley() -> FiniteLieData:
    """sl2 with the trace form and the Chevalley involution e -> -f, f -> -e, h -> -h."""
    return FiniteLieData(
        basis=["e", "f", "h"],
        bracket={("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        form={("e", "f"): 1, ("h", "h"): 2},
        sigma={"e": {"f": -1}, "f": {"e": -1}, "h": {"h": -1}},
        order=2,
        name="sl2",
    )


def sl2_untwisted() -> FiniteLieData:
    data = sl2_chevalley()
    data.sigma = {}
    data.order = 1
    data.__post_init__()
    return data


def abelian_data(dim: int = 1) -> FiniteLieData:
    return FiniteLieData(["x%d" % i for i in range(dim)], {}, {}, {}, 1, name="abelian")


def _coordinates(fld: Field, vectors: list, target: Vec) -> list:
    """Coefficients expressing ``target`` in the linearly independent ``vectors``."""
    ech = Echelon(fld, priority=lambda k: (1 if k[0] == "basis" else 0, k))
    for r, v in enumerate(vectors):
        aug = v.map_keys(lambda x: [(("basis", x), 1)])
        aug._accumulate(("tag", r), 1)
        ech.insert(aug)
    res = ech.reduce(target.map_keys(lambda x: [(("basis", x), 1)]))
    if any(k[0] == "basis" for k in res.terms):
        raise DataError("vector is not in the span of the eigenbasis")
    return [-res[("tag", r)] for r in range(len(vectors))]


# ---------------------------------------------------------------------------
# twisted affine
# ---------------------------------------------------------------------------


def twisted_affine(data: FiniteLieData, epsilon: int = 0, validate: bool = True) -> QVLA:
    """Twisted affine algebra with currents a(z) = sum (a t^(k+nT)) z^(-k-nT+e-1), a in b_(k)."""
    if validate:
        rep = data.validate()
        if not rep.passed:
            raise DataError("invalid finite Lie data: %s" % rep.failures[0].key)
    fld = data.field
    T = data.order
    eig = data.eigenbasis()
    gens = {}
    for k in range(T):
        for r, v in enumerate(eig[k]):
            gens[GeneratorIndex("x", (k, r))] = v
    K = GeneratorIndex("K")
    vec_of = {a: v for a, v in gens.items()}
    all_gens = sorted(gens)
    all_vecs = [vec_of[a] for a in all_gens]

    def to_gens(v: Vec) -> Vec:
        if not v:
            return Vec(fld)
        coords = _coordinates(fld, all_vecs, v)
        return Vec(fld, {a: c for a, c in zip(all_gens, coords)})

    def structure(alg, a, b):
        k = a.params[0]
        va, vb = vec_of[a], vec_of[b]
        br = to_gens(data.br_vec(va, vb))
        form = data.pair_vec(va, vb)
        out = []
        for s in range(T):
            lam = fld.group(s)
            c = fld.zeta() ** (-k * s) / T
            if br:
                out.append(entry(fld, lam, fld.identity(), 0, 0, br.scale(c)))
            if form:
                out.append(entry(fld, lam, fld.identity(), 1, 0, {K: form * c}))
        return out

    def rules(alg, a, alpha):
        if a == K or alpha.is_identity():
            return []
        k = a.params[0]
        expr = CurrentExpr(fld, epsilon, {(a, alpha, 0): 1, (a, fld.identity(), 0): -fld.embed_power(alpha, -k + epsilon - 1)})
        return [Rule((a, alpha, 0), expr)]

    def g_reduce(alg, a, m):
        if a == K:
            return {(K, m): 1} if m == epsilon - 1 else {}
        return {(a, m): 1} if (m - a.params[0]) % T == 0 else {}

    def gen_window(radius):
        return [g.params for g in all_gens]

    alg = QVLA(
        name="affine[%s,T=%d,e=%d]" % (data.name, T, epsilon),
        field=fld,
        epsilon=epsilon,
        families={"x": Family("x", 2, params=gen_window, weight=1), "K": Family("K", 0, central=True, weight=0)},
        structure=structure,
        rules=rules,
        g_reduce_fn=g_reduce,
        group_generators=[fld.group(1)] if T > 1 else [],
    )
    alg.data = data
    alg.eigenvectors = vec_of
    return alg


# ---------------------------------------------------------------------------
# quantum torus
# ---------------------------------------------------------------------------


@dataclass
class QuantumTorusData:
    """gl_ell over the quantum torus with matrix Q = (q_ij), 0 <= i, j <= N.

    ``q[(i, j)]`` for i > j are GroupElems in ``field``; the remaining entries
    follow from q_ii = 1 and q_ij q_ji = 1.
    """

    ell: int
    N: int
    q: dict = dc_field(default_factory=dict)
    field: Field = None

    @classmethod
    def generic(cls, ell: int = 1, N: int = 1) -> "QuantumTorusData":
        """Independent transcendental q_ij (i > j): q_s0 -> q_s, then the others."""
        pairs = [(s, 0) for s in range(1, N + 1)] + [(k, s) for s in range(1, N + 1) for k in range(s + 1, N + 1)]
        fld = field(1, len(pairs))
        q = {}
        for idx, pair in enumerate(pairs):
            q[pair] = fld.q_elem(idx + 1)
        return cls(ell, N, q, fld)

    @classmethod
    def specialized(cls, ell: int, N: int, torsion: int, exponents: dict) -> "QuantumTorusData":
        """Root-of-unity specialization: q_ij = zeta_torsion^exponents[(i, j)]."""
        fld = field(torsion, 0)
        q = {}
        for i in range(N + 1):
            for j in range(i):
                q[(i, j)] = fld.group(exponents.get((i, j), 0))
        return cls(ell, N, q, fld)

    def entry_q(self, i: int, j: int) -> GroupElem:
        if i == j:
            return self.field.identity()
        if i > j:
            return self.q[(i, j)]
        return self.q[(j, i)].inverse()

    def validate(self):
        for i in range(self.N + 1):
            for j in range(self.N + 1):
                if i != j and not (self.entry_q(i, j) * self.entry_q(j, i)).is_identity():
                    raise DataError("q_ij q_ji must be 1")
        for (i, j) in self.q:
            if not i > j or i > self.N:
                raise DataError("q must be indexed by pairs i > j with i <= N")

    def sigma(self, m, n) -> GroupElem:
        """prod over 1 <= s < k <= N of q_ks^(m_k n_s)."""
        g = self.field.identity()
        for k in range(1, self.N + 1):
            for s in range(1, k):
                g = g * self.entry_q(k, s) ** (m[k - 1] * n[s - 1])
        return g

    def qpow(self, m) -> GroupElem:
        """q^m = prod q_s0^(m_s)."""
        g = self.field.identity()
        for s in range(1, self.N + 1):
            g = g * self.entry_q(s, 0) ** m[s - 1]
        return g


def quantum_torus(data: QuantumTorusData, epsilon: int = 0) -> QVLA:
    """Central extension of gl_ell over the quantum torus, currents (E_ij t^m)(z)."""
    data.validate()
    fld = data.field
    ell, N = data.ell, data.N
    K = GeneratorIndex("K")
    one = fld.identity()

    def E(i, j, m):
        return GeneratorIndex("E", (i, j) + tuple(m))

    def structure(alg, a, b):
        i, j, m = a.params[0], a.params[1], a.params[2:]
        i2, j2, n = b.params[0], b.params[1], b.params[2:]
        mn = tuple(x + y for x, y in zip(m, n))
        qm = data.qpow(m)
        out = []
        if j == i2:
            c = fld.embed_power(qm, epsilon - 1) * fld.embed_power(data.sigma(m, n), 1)
            out.append(entry(fld, qm.inverse(), qm.inverse(), 0, 0, {E(i, j2, mn): c}))
        if j2 == i:
            c = -fld.embed_power(data.sigma(n, m), 1)
            out.append(entry(fld, data.qpow(n), one, 0, 0, {E(i2, j, mn): c}))
        if j == i2 and j2 == i and not any(mn):
            out.append(entry(fld, qm.inverse(), one, 1, 0, {K: fld.embed_power(data.sigma(m, n), 1)}))
        return out

    def params(radius):
        ms = list(itertools.product(range(-radius, radius + 1), repeat=N))
        return [(i, j) + m for i in range(1, ell + 1) for j in range(1, ell + 1) for m in ms]

    alg = QVLA(
        name="qtorus[l=%d,N=%d,e=%d]" % (ell, N, epsilon),
        field=fld,
        epsilon=epsilon,
        families={"E": Family("E", 2 + N, params=params, weight=1), "K": Family("K", 0, central=True, weight=0)},
        structure=structure,
        group_generators=sorted({data.qpow(tuple(1 if t == s else 0 for t in range(N))) for s in range(N)}
                                - {one}),
        group_radius=1,
    )
    alg.data = data
    return alg


# ---------------------------------------------------------------------------
# q-Heisenberg, Virasoro-like, Klein bottle
# ---------------------------------------------------------------------------


def q_heisenberg() -> QVLA:
    """[a(z), a(w)] = c/(q - 1/q) (delta(qw/z) - delta(w/(qz))), epsilon = 1."""
    fld = field(1, 1)
    q = fld.q_elem(1)
    c = GeneratorIndex("c")
    qs = fld.q(1)
    val = 1 / (qs - 1 / qs)

    def structure(alg, x, y):
        return [
            entry(fld, q, fld.identity(), 0, 0, {c: val}),
            entry(fld, q.inverse(), fld.identity(), 0, 0, {c: -val}),
        ]

    return QVLA(
        name="qheis",
        field=fld,
        epsilon=1,
        families={"a": Family("a", weight=1), "c": Family("c", central=True, weight=1)},
        structure=structure,
    )


def virasoro_like() -> QVLA:
    """L_m(z) = sum_n L_{n,m} z^-n with central c, epsilon = 1."""
    fld = field(1, 0)
    one = fld.identity()
    c = GeneratorIndex("c")

    def structure(alg, x, y):
        m, n = x.params[0], y.params[0]
        L = GeneratorIndex("L", (m + n,))
        first = {L: m + n}
        if m == -n:
            first[c] = 1
        return [entry(fld, one, one, 1, 0, first), entry(fld, one, one, 0, 1, {L: m})]

    return QVLA(
        name="vlike",
        field=fld,
        epsilon=1,
        families={"L": Family("L", 1, weight=2), "c": Family("c", central=True, weight=2)},
        structure=structure,
    )


def klein_bottle() -> QVLA:
    """Fixed points of L_{m1,m2} -> -(-1)^m1 L_{m1,-m2}; B_m(-z) = -B_{-m}(z), epsilon = 1."""
    fld = field(2, 0)
    one = fld.identity()
    minus = fld.group(1)
    c = GeneratorIndex("c")

    def B(m):
        return GeneratorIndex("B", (m,))

    def structure(alg, x, y):
        m, n = x.params[0], y.params[0]
        plus_i = {B(m + n): m + n}
        if m == -n:
            plus_i[c] = 2
        minus_i = {B(n - m): m - n}
        if m == n:
            minus_i[c] = -2
        return [
            entry(fld, one, one, 1, 0, plus_i),
            entry(fld, one, one, 0, 1, {B(m + n): m}),
            entry(fld, minus, one, 1, 0, minus_i),
            entry(fld, minus, one, 0, 1, {B(n - m): m}),
        ]

    def rules(alg, a, alpha):
        if a.family != "B" or alpha == one:
            return []
        m = a.params[0]
        expr = CurrentExpr(fld, 1, {(a, alpha, 0): 1, (B(-m), one, 0): 1})
        return [Rule((a, alpha, 0), expr)]

    def g_reduce(alg, a, k):
        if a == c:
            return {(c, 0): 1} if k == 0 else {}
        m = a.params[0]
        if m > 0:
            return {(a, k): 1}
        if m < 0:
            return {(B(-m), k): -((-1) ** k)}
        return {(a, k): 1} if k % 2 else {}

    return QVLA(
        name="klein",
        field=fld,
        epsilon=1,
        families={"B": Family("B", 1, weight=2), "c": Family("c", central=True, weight=2)},
        structure=structure,
        rules=rules,
        g_reduce_fn=g_reduce,
        group_generators=[minus],
    )


def abelian(n_families: int = 1, epsilon: int = 0) -> QVLA:
    """All structure entries zero."""
    fld = field(1, 0)
    return QVLA(
        name="abelian",
        field=fld,
        epsilon=epsilon,
        families={"a%d" % i: Family("a%d" % i, weight=1) for i in range(n_families)},
        structure=lambda alg, a, b: [],
        group_generators=[],
    )


EXAMPLES = {
    "qheis": q_heisenberg,
    "vlike": virasoro_like,
    "klein": klein_bottle,
    "affine": lambda: twisted_affine(sl2_chevalley(), 0),
    "qtorus": lambda: quantum_torus(QuantumTorusData.generic(1, 1), 0),
    "abelian": abelian,
}


def example(name: str, epsilon: int | None = None, **options) -> QVLA:
    """Construct a built-in example by name."""
    if name == "affine":
        data = options.get("data") or sl2_chevalley()
        return twisted_affine(data, 0 if epsilon is None else epsilon)
    if name == "qtorus":
        data = options.get("data") or QuantumTorusData.generic(options.get("ell", 1), options.get("N", 1))
        return quantum_torus(data, 0 if epsilon is None else epsilon)
    if name == "abelian":
        return abelian(epsilon=0 if epsilon is None else epsilon)
    if name not in EXAMPLES:
        raise InvalidInput("unknown example %r (choose from %s)" % (name, ", ".join(sorted(EXAMPLES))))
    if epsilon not in (None, 1):
        raise InvalidInput("%s is only defined at epsilon = 1" % name)
    return EXAMPLES[name]()
