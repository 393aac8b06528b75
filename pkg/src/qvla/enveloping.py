"""The enveloping vertex algebra of g^0 and its (Gamma, epsilon)-action.

Vectors are sparse combinations of PBW monomials: tuples of reduced creation
modes a^{alpha,0}(m), m < 0, sorted by ``mode_order`` and applied to the
vacuum (the empty tuple).  Vertex operators are computed one coefficient at a
time through the iterate recursion, with truncation bounds taken from the
declared family weights.
"""

from __future__ import annotations

import random
from math import comb, factorial

from .algebra import QVLA, Mode, reduce_mode, zeta_mode_bracket
from .currents import ContractError, binom
from .linear import Echelon, Vec, format_combination
from .report import Report
from .scalars import GroupElem

UNAVAILABLE = "unavailable"


def mode_order(x: Mode):
    """Deepest mode first, then family, params and group element."""
    return (x.m, x.a, x.alpha)


def rho_mode(alg: QVLA, n: int, a, alpha: GroupElem, m: int) -> Vec:
    """(-1)^n n! C(m, n) a^{alpha,0}(m - n): the m-th mode of D^n a^{alpha,0}."""
    c = (-1) ** n * factorial(n) * binom(m, n)
    if not c:
        return Vec(alg.field)
    return Vec.single(alg.field, Mode(a, alpha, m - n, 0), c)


def format_monomial(mono) -> str:
    return " ".join(str(x) for x in mono) + " |0>" if mono else "|0>"


def pbw_str(v: Vec) -> str:
    return format_combination(v.items(), format_monomial)


class Envelope:
    """V_{g^0} for a QVLA, with memoised mode actions and vertex coefficients."""

    def __init__(self, alg: QVLA):
        self.alg = alg
        self.field = alg.field
        self.epsilon = alg.epsilon
        self._act = {}
        self._coef = {}
        self._reduced = {}
        for fam in alg.families.values():
            if fam.weight is None:
                raise ContractError("family %s needs a declared weight for vertex operators" % fam.name)

    # ---- vectors -------------------------------------------------------
    @property
    def vacuum(self) -> Vec:
        return Vec.single(self.field, ())

    def zero(self) -> Vec:
        return Vec(self.field)

    def generator(self, a, alpha: GroupElem | None = None) -> Vec:
        """a^{alpha,0} = a^{alpha,0}(-1) applied to the vacuum."""
        alpha = alpha or self.field.identity()
        return self.apply(Vec.single(self.field, Mode(a, alpha, -1, 0)), self.vacuum)

    def reduce(self, mode: Mode) -> Vec:
        hit = self._reduced.get(mode)
        if hit is None:
            hit = reduce_mode(self.alg, 0, Vec.single(self.field, mode))
            self._reduced[mode] = hit
        return hit

    def mode_weight(self, x: Mode) -> int:
        """Weight shift of x acting as an operator."""
        return self.alg.families[x.a.family].weight - x.m - 1

    def weight(self, v) -> int:
        """Largest weight among the monomials of v (a monomial or a vector); -1 for zero."""
        if isinstance(v, tuple):
            return sum(self.mode_weight(x) for x in v)
        return max((self.weight(mono) for mono in v.terms), default=-1)

    @staticmethod
    def degree(mono) -> int:
        return -sum(x.m for x in mono)

    # ---- action of g^0 -------------------------------------------------
    def act_mode(self, x: Mode, mono: tuple) -> Vec:
        """x . mono for a reduced mode x, straightened into PBW order."""
        key = (x, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if not mono:
            out = Vec.single(self.field, (x,)) if x.m < 0 else self.zero()
        elif x.m < 0 and mode_order(x) <= mode_order(mono[0]):
            out = Vec.single(self.field, (x,) + mono)
        else:
            head, rest = mono[0], mono[1:]
            out = self.zero()
            for inner, c in self.act_mode(x, rest).terms.items():
                out.add_scaled(self.act_mode(head, inner), c)
            for z, c in zeta_mode_bracket(self.alg, 0, x, head).terms.items():
                out.add_scaled(self.act_mode(z, rest), c)
        self._act[key] = out
        return out

    def apply(self, X: Vec, v: Vec) -> Vec:
        """Action of a Lie element X (combination of twist-0 modes) on v."""
        out = self.zero()
        for mode, c in X.terms.items():
            for z, d in self.reduce(mode).terms.items():
                for mono, e in v.terms.items():
                    out.add_scaled(self.act_mode(z, mono), c * d * e)
        return out

    def apply_mode(self, mode: Mode, v: Vec) -> Vec:
        return self.apply(Vec.single(self.field, mode), v)

    def normal_order(self, word) -> Vec:
        """The word x_1 ... x_r applied to the vacuum, in PBW form."""
        v = self.vacuum
        for x in reversed(list(word)):
            v = self.apply_mode(x, v)
        return v

    # ---- vertex operators ----------------------------------------------
    def _coef_mono(self, mv: tuple, n: int, mw: tuple) -> Vec:
        key = (mv, n, mw)
        hit = self._coef.get(key)
        if hit is not None:
            return hit
        if not mv:
            out = Vec.single(self.field, mw) if n == -1 else self.zero()
        elif n > self.weight(mv) + self.weight(mw) - 1:
            out = self.zero()
        else:
            out = self._iterate(mv, n, mw)
        self._coef[key] = out
        return out

    def _iterate(self, mv: tuple, n: int, mw: tuple) -> Vec:
        # (a_(-k-1) u)_(n) w = sum_j C(k+j, j) [a_(-k-1-j) u_(n+j) w + (-1)^k u_(-k-1+n-j) a_(j) w]
        x, u = mv[0], mv[1:]
        k = -x.m - 1
        w = Vec.single(self.field, mw)
        out = self.zero()
        wt_u, wt_w = self.weight(u), self.weight(mw)
        for j in range(0, wt_u + wt_w - n):
            inner = self._coef_mono(u, n + j, mw)
            if inner:
                out.add_scaled(self.apply_mode(Mode(x.a, x.alpha, -k - 1 - j, 0), inner), comb(k + j, j))
        sign = (-1) ** k
        for j in range(0, self.alg.families[x.a.family].weight + wt_w):
            aw = self.apply_mode(Mode(x.a, x.alpha, j, 0), w)
            if aw:
                out.add_scaled(self.vertex_coefficient(Vec.single(self.field, u), -k - 1 + n - j, aw),
                               sign * comb(k + j, j))
        return out

    def vertex_coefficient(self, v: Vec, n: int, w: Vec) -> Vec:
        """v_n w, exact for each fixed n."""
        out = self.zero()
        for mv, c in v.terms.items():
            for mw, d in w.terms.items():
                out.add_scaled(self._coef_mono(mv, n, mw), c * d)
        return out

    def derivation(self, v: Vec, times: int = 1) -> Vec:
        """D^times v with D v = v_{-2} 1."""
        for _ in range(times):
            v = self.vertex_coefficient(v, -2, self.vacuum)
        return v

    # ---- (Gamma, epsilon) action ---------------------------------------
    def r_mode(self, lam: GroupElem, x: Mode) -> Vec:
        c = self.field.embed_power(lam, (x.m + 1) * (self.epsilon - 1))
        return self.reduce(Mode(x.a, x.alpha / lam, x.m, 0)).scale(c)

    def r_action(self, lam: GroupElem, v: Vec) -> Vec:
        out = self.zero()
        for mono, c in v.terms.items():
            w = self.vacuum
            for x in reversed(mono):
                w = self.apply(self.r_mode(lam, x), w)
            out.add_scaled(w, c)
        return out


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def creation_pool(env: Envelope, depth: int, family_radius: int = 1, group_radius: int = 1) -> list:
    """Reduced creation modes a^{alpha,0}(-n), 1 <= n <= depth, over small windows."""
    alg = env.alg
    alphas = _group_ball(alg, group_radius)
    pool = set()
    for a in alg.generators(family_radius):
        for alpha in alphas:
            for n in range(1, depth + 1):
                for z in env.reduce(Mode(a, alpha, -n, 0)).terms:
                    if z.m < 0:
                        pool.add(z)
    return sorted(pool, key=mode_order)


def _group_ball(alg: QVLA, radius: int) -> list:
    fld = alg.field
    elems = {fld.identity()}
    for g in alg.group_gens():
        if any(g.free):
            powers = range(-radius, radius + 1)
        else:
            powers = range(fld.T)
        elems = {h * g**e for h in elems for e in powers}
    return sorted(elems)


def random_monomial(env: Envelope, pool: list, degree: int, rng: random.Random) -> Vec:
    word = []
    budget = rng.randint(0, degree)
    while True:
        options = [x for x in pool if -x.m <= budget]
        if not options or (word and rng.random() < 0.35):
            break
        x = rng.choice(options)
        word.append(x)
        budget += x.m
    return env.normal_order(word)


def random_vector(env: Envelope, pool: list, degree: int, rng: random.Random) -> Vec:
    v = random_monomial(env, pool, degree, rng)
    if rng.random() < 0.4:
        v = v + random_monomial(env, pool, degree, rng).scale(rng.choice([2, -3, 5]))
    return v if v else env.vacuum


def _generator_vectors(env: Envelope, family_radius: int = 1, group_radius: int = 1) -> list:
    out = []
    for x in creation_pool(env, 1, family_radius, group_radius):
        out.append((x, Vec.single(env.field, (x,))))
    return out


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def check_vertex_axioms(env: Envelope, samples: int = 24, degree: int = 4, mode_radius: int = 3,
                        seed: int = 0) -> Report:
    """Vacuum, creation, Borcherds commutator, skew-symmetry, D-compatibility and rho consistency."""
    rng = random.Random(seed)
    pool = creation_pool(env, degree)
    rep = Report("vertex-axioms", {"algebra": env.alg.name, "samples": samples, "degree": degree,
                                   "mode_radius": mode_radius, "seed": seed})
    modes = range(-mode_radius, mode_radius + 1)
    vectors = [random_vector(env, pool, degree, rng) for _ in range(samples)]
    one = env.vacuum

    for idx, w in enumerate(vectors):
        for n in modes:
            got = env.vertex_coefficient(one, n, w)
            want = w if n == -1 else env.zero()
            rep.record("vacuum w%d n=%d" % (idx, n), got == want, pbw_str(got - want))
        got = env.vertex_coefficient(w, -1, one)
        rep.record("creation w%d" % idx, got == w, pbw_str(got - w))
        for n in range(0, mode_radius + 1):
            got = env.vertex_coefficient(w, n, one)
            rep.record("creation w%d n=%d" % (idx, n), not got, pbw_str(got))

    for idx in range(samples):
        u, v, w = (rng.choice(vectors) for _ in range(3))
        m, n = rng.choice(modes), rng.choice(modes)
        lhs = env.vertex_coefficient(u, m, env.vertex_coefficient(v, n, w)) - env.vertex_coefficient(
            v, n, env.vertex_coefficient(u, m, w))
        rhs = env.zero()
        for i in range(0, max(env.weight(u) + env.weight(v), 0)):
            uv = env.vertex_coefficient(u, i, v)
            if uv:
                rhs.add_scaled(env.vertex_coefficient(uv, m + n - i, w), binom(m, i))
        rep.record("commutator #%d m=%d n=%d" % (idx, m, n), lhs == rhs, pbw_str(lhs - rhs))

    for idx in range(samples):
        u, v = rng.choice(vectors), rng.choice(vectors)
        n = rng.choice(modes)
        lhs = env.vertex_coefficient(u, n, v)
        rhs = env.zero()
        for j in range(0, max(env.weight(u) + env.weight(v) - n, 0)):
            vu = env.vertex_coefficient(v, n + j, u)
            if vu:
                rhs.add_scaled(env.derivation(vu, j), env.field((-1) ** (n + j + 1)) / factorial(j))
        rep.record("skew #%d n=%d" % (idx, n), lhs == rhs, pbw_str(lhs - rhs))

    for idx in range(samples):
        v, w = rng.choice(vectors), rng.choice(vectors)
        n = rng.choice(modes)
        lhs = env.vertex_coefficient(env.derivation(v), n, w)
        rhs = env.vertex_coefficient(v, n - 1, w).scale(-n)
        rep.record("derivation #%d n=%d" % (idx, n), lhs == rhs, pbw_str(lhs - rhs))

    for x, gen in _generator_vectors(env):
        for k in range(0, 3):
            dk = env.derivation(gen, k)
            for idx in range(0, min(samples, 4)):
                w = vectors[idx]
                for m in modes:
                    lhs = env.vertex_coefficient(dk, m, w)
                    rhs = env.apply(rho_mode(env.alg, k, x.a, x.alpha, m), w)
                    rep.record("rho %s k=%d w%d m=%d" % (x, k, idx, m), lhs == rhs, pbw_str(lhs - rhs))
    return rep


def check_gamma_epsilon_axiom(env: Envelope, lambdas=None, samples: int = 16, degree: int = 3,
                              mode_radius: int = 3, seed: int = 0) -> Report:
    """R_lam(v_n w) = lam^{(n+1)(eps-1)} (R_lam v)_n (R_lam w), plus the group action laws."""
    fld = env.field
    alg = env.alg
    if lambdas is None:
        lambdas = [fld.identity()] + list(alg.group_gens())
    rng = random.Random(seed)
    pool = creation_pool(env, degree)
    rep = Report("gamma-epsilon", {"algebra": alg.name, "samples": samples, "degree": degree,
                                   "mode_radius": mode_radius, "seed": seed,
                                   "lambdas": " ".join(str(g) for g in lambdas)})
    vectors = [random_vector(env, pool, degree, rng) for _ in range(samples)]
    modes = range(-mode_radius, mode_radius + 1)
    for lam in lambdas:
        got = env.r_action(lam, env.vacuum)
        rep.record("R[%s] vacuum" % lam, got == env.vacuum, pbw_str(got))
        for x, gen in _generator_vectors(env):
            got = env.r_action(lam, gen)
            want = env.apply(env.reduce(Mode(x.a, x.alpha / lam, -1, 0)), env.vacuum)
            rep.record("R[%s] %s" % (lam, x), got == want, pbw_str(got - want))
        for idx in range(samples):
            v, w = rng.choice(vectors), rng.choice(vectors)
            n = rng.choice(modes)
            lhs = env.r_action(lam, env.vertex_coefficient(v, n, w))
            rhs = env.vertex_coefficient(env.r_action(lam, v), n, env.r_action(lam, w)).scale(
                fld.embed_power(lam, (n + 1) * (env.epsilon - 1)))
            rep.record("R[%s] covariance #%d n=%d" % (lam, idx, n), lhs == rhs, pbw_str(lhs - rhs))
        for mu in lambdas:
            v = rng.choice(vectors)
            lhs = env.r_action(lam, env.r_action(mu, v))
            rhs = env.r_action(lam * mu, v)
            rep.record("R[%s] R[%s] = R[%s]" % (lam, mu, lam * mu), lhs == rhs, pbw_str(lhs - rhs))
    return rep


def _finite_creation_modes(env: Envelope, depth: int, radius: int):
    alg = env.alg
    if any(f.arity and f.params is None for f in alg.families.values()):
        return None
    counts = []
    for r in (radius, radius + 1):
        ech = Echelon(env.field)
        for a in alg.generators(r):
            for alpha in _group_ball(alg, r):
                ech.insert(env.reduce(Mode(a, alpha, -depth, 0)))
        counts.append(ech.rank)
    return counts[0] if counts[0] == counts[1] else None


def graded_dimension(alg: QVLA, d: int, radius: int = 2):
    """Number of PBW monomials of degree d, or UNAVAILABLE when a degree piece is infinite.

    Finiteness is detected by comparing the span of creation modes on two
    nested windows; a family with an unbounded parameter window counts as
    infinite.
    """
    if d == 0:
        return 1
    env = Envelope(alg)
    dims = []
    for n in range(1, d + 1):
        dim = _finite_creation_modes(env, n, radius)
        if dim is None:
            return UNAVAILABLE
        dims.append(dim)
    # coefficients of prod_n (1 - t^n)^(-dims[n-1])
    series = [1] + [0] * d
    for n, dim in enumerate(dims, start=1):
        for _ in range(dim):
            for k in range(n, d + 1):
                series[k] += series[k - n]
    return series[d]
