"""Restricted g-modules seen as phi_epsilon-coordinated quasi modules for V_{g^0}.

A restricted module is realised as an induced module: PBW monomials in the
creation part of g applied to a vacuum killed by the modes a(m), m >= 0, with
central generators acting by a fixed level.  Generator fields are
Y_W(a^{alpha,0}, z) = a(alpha z); derivative vectors a^{alpha,0}(-k-1)|0> get
(1/k!)(z^eps d/dz)^k a(alpha z).  Fields of product vectors are fixed by the
associativity identity and cross-checked through skew-symmetry.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import QVLA, g_mode_bracket
from .currents import ContractError, GeneratorIndex, LaurentWindow, P
from .enveloping import Envelope, pbw_str
from .families import example, sl2_chevalley, twisted_affine
from .linear import Vec, format_combination
from .report import Report
from .scalars import GroupElem

IDENTITY = (GeneratorIndex("id"), 0)


# ---------------------------------------------------------------------------
# the substitution series
# ---------------------------------------------------------------------------


def phi_series(epsilon: int, order: int) -> list:
    """c_0..c_order with phi_eps(z, z0) = sum_k c_k z0^k z^(1 + k(eps-1))."""
    out = []
    num = Fraction(1)
    for k in range(order + 1):
        out.append(num / factorial(k))
        num *= 1 + k * (epsilon - 1)
    return out


def _mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def series_power(series: list, e: int, order: int) -> list:
    """series**e for a power series with constant term 1 and any integer e."""
    if series[0] != 1:
        raise ContractError("series_power needs constant term 1")
    tail = [Fraction(0)] + list(series[1 : order + 1])
    out = [Fraction(0)] * (order + 1)
    term = [Fraction(1)] + [Fraction(0)] * order
    binom = Fraction(1)
    for j in range(order + 1):
        for i, x in enumerate(term):
            out[i] += binom * x
        binom = binom * (e - j) / (j + 1)
        term = _mul(term, tail, order)
    return out


@lru_cache(maxsize=4096)
def phi_power(epsilon: int, e: int, order: int) -> tuple:
    """Coefficients of f(u)^e, where phi_eps(z, z0) = z f(z0 z^(eps-1))."""
    return tuple(series_power(phi_series(epsilon, order), e, order))


def check_phi_flow(epsilon: int, order: int = 6) -> Report:
    """phi(phi(z, w1), w2) = phi(z, w1 + w2) coefficientwise in w1, w2."""
    rep = Report("phi-flow", {"epsilon": epsilon, "order": order})
    f = phi_series(epsilon, order)
    # left side / z = f(u1) * f(u2 * f(u1)^(eps-1)), u_i = w_i z^(eps-1)
    g = list(phi_power(epsilon, epsilon - 1, order))
    powers = [[Fraction(1)] + [Fraction(0)] * order]  # f(u1)^(k(eps-1))
    for _ in range(order):
        powers.append(_mul(powers[-1], g, order))
    lhs = {}
    for k in range(order + 1):
        # coefficient of u2^k is c_k f(u1)^(1 + k(eps-1))
        for a, x in enumerate(_mul(f, powers[k], order)):
            if a + k <= order:
                lhs[(a, k)] = f[k] * x
    for a in range(order + 1):
        for b in range(order + 1 - a):
            rhs = f[a + b] * Fraction(factorial(a + b), factorial(a) * factorial(b))
            got = lhs.get((a, b), Fraction(0))
            rep.record("w1^%d w2^%d" % (a, b), got == rhs, "%s != %s" % (got, rhs))
    return rep


# ---------------------------------------------------------------------------
# induced modules
# ---------------------------------------------------------------------------


def _key_order(x):
    return (x[1], x[0])


class InducedModule:
    """U(g) tensor_{U(g_+)} C with g_+ spanned by a(m), m >= 0, and central levels."""

    def __init__(self, alg: QVLA, level: dict, name: str = ""):
        self.alg = alg
        self.field = alg.field
        self.epsilon = alg.epsilon
        self.level = {a: self.field(v) for a, v in level.items()}
        self.name = name or "induced(%s)" % alg.name
        self._act = {}
        self._bracket = {}

    @property
    def vacuum(self) -> Vec:
        return Vec.single(self.field, ())

    def zero(self) -> Vec:
        return Vec(self.field)

    def bracket(self, x, y) -> Vec:
        key = (x, y)
        hit = self._bracket.get(key)
        if hit is None:
            hit = g_mode_bracket(self.alg, x, y)
            self._bracket[key] = hit
        return hit

    def act_key(self, x, mono: tuple) -> Vec:
        """A g-basis element x = (a, m) applied to a PBW monomial."""
        if x == IDENTITY:
            return Vec.single(self.field, mono)
        if self.alg.is_central(x[0]):
            lvl = self.level.get(x[0], self.field.zero)
            return Vec.single(self.field, mono, lvl) if lvl else self.zero()
        key = (x, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if not mono:
            out = Vec.single(self.field, (x,)) if x[1] < 0 else self.zero()
        elif x[1] < 0 and _key_order(x) <= _key_order(mono[0]):
            out = Vec.single(self.field, (x,) + mono)
        else:
            head, rest = mono[0], mono[1:]
            out = self.zero()
            for inner, c in self.act_key(x, rest).terms.items():
                out.add_scaled(self.act_key(head, inner), c)
            for z, c in self.bracket(x, head).terms.items():
                out.add_scaled(self.act_key(z, rest), c)
        self._act[key] = out
        return out

    def apply(self, X: Vec, v: Vec) -> Vec:
        """Action of a Lie element (combination of g-basis keys, or IDENTITY)."""
        out = self.zero()
        for x, c in X.terms.items():
            for mono, d in v.terms.items():
                out.add_scaled(self.act_key(x, mono), c * d)
        return out

    def action(self, a: GeneratorIndex, m: int, v: Vec) -> Vec:
        return self.apply(self.alg.g_reduce(a, m), v)

    @staticmethod
    def degree(mono) -> int:
        return -sum(x[1] for x in mono)

    def restriction_bound(self, v: Vec) -> int:
        """a(m) v = 0 for every m above this bound."""
        return max((self.degree(mono) for mono in v.terms), default=0)

    def creation_keys(self, depth: int, family_radius: int = 1) -> list:
        keys = set()
        for a in self.alg.generators(family_radius):
            if self.alg.is_central(a):
                continue
            for m in range(-depth, 0):
                keys.update(self.alg.g_reduce(a, m).terms)
        return sorted(keys, key=_key_order)

    def random_vector(self, rng: random.Random, degree: int, family_radius: int = 1) -> Vec:
        pool = self.creation_keys(degree, family_radius)
        v = self.vacuum
        budget = rng.randint(0, degree)
        while True:
            options = [x for x in pool if -x[1] <= budget]
            if not options or rng.random() < 0.3:
                break
            x = rng.choice(options)
            v = self.apply(Vec.single(self.field, x), v)
            budget += x[1]
        return v if v else self.vacuum


def fock_module(level=1) -> InducedModule:
    """The level-`level` Fock module of the q-Heisenberg algebra."""
    alg = example("qheis")
    return InducedModule(alg, {GeneratorIndex("c"): level}, "fock(qheis)")


def affine_induced_module(level=1, epsilon: int = 0, data=None) -> InducedModule:
    """Vacuum module of the twisted affine algebra at the given level."""
    alg = twisted_affine(data or sl2_chevalley(), epsilon)
    return InducedModule(alg, {GeneratorIndex("K"): level}, "vacuum(affine)")


# ---------------------------------------------------------------------------
# fields on the module
# ---------------------------------------------------------------------------


class ModuleFields:
    """Y_W on vectors of V_{g^0} whose monomials have at most one mode."""

    def __init__(self, mod: InducedModule, env: Envelope):
        if env.alg is not mod.alg and env.alg.name != mod.alg.name:
            raise ContractError("module and envelope are built on different algebras")
        self.mod = mod
        self.env = env
        self.field = mod.field
        self.epsilon = mod.epsilon

    def generator_coefficient(self, a, alpha: GroupElem, e: int) -> Vec:
        """Coefficient of z^e in a(alpha z): alpha^e a(eps - 1 - e)."""
        return self.mod.alg.g_reduce(a, self.epsilon - 1 - e).scale(self.field.embed_power(alpha, e))

    def coefficient(self, v: Vec, e: int) -> Vec:
        """Coefficient of z^e in Y_W(v, z) as a Lie element."""
        eps = self.epsilon
        out = Vec(self.field)
        for mono, c in v.terms.items():
            if not mono:
                if e == 0:
                    out._accumulate(IDENTITY, c)
                continue
            if len(mono) > 1:
                raise ContractError("Y_W on the product vector %s needs the associativity extension"
                                    % pbw_str(Vec.single(self.field, mono)))
            x = mono[0]
            k = -x.m - 1
            base = e - k * (eps - 1)
            num = P(k, base, eps)
            if num:
                out.add_scaled(self.generator_coefficient(x.a, x.alpha, base), c * num / factorial(k))
        return out

    def act(self, v: Vec, e: int, w: Vec) -> Vec:
        return self.mod.apply(self.coefficient(v, e), w)


def module_field(mod: InducedModule, a, alpha: GroupElem, window) -> LaurentWindow:
    """The window of a(alpha z); cells are Lie elements keyed by the z exponent."""
    lo, hi = window
    fields = ModuleFields(mod, Envelope(mod.alg))
    win = LaurentWindow(("z",), ((lo, hi),))
    for e in range(lo, hi + 1):
        win.add((e,), fields.generator_coefficient(a, alpha, e))
    return win


def lie_element_str(X: Vec) -> str:
    return format_combination(X.items(), lambda k: "1" if k == IDENTITY else "%s(%d)" % k)


def _generator_pairs(mod: InducedModule, family_radius: int, group_radius: int):
    env = Envelope(mod.alg)
    from .enveloping import creation_pool

    return [x for x in creation_pool(env, 1, family_radius, group_radius) if not mod.alg.is_central(x.a)]


def _samples(mod: InducedModule, count: int, degree: int, seed: int) -> list:
    rng = random.Random(seed)
    out = [mod.vacuum]
    while len(out) < count:
        out.append(mod.random_vector(rng, degree))
    return out


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def check_module(mod: InducedModule, mode_radius: int = 4, samples: int = 4, degree: int = 3,
                 family_radius: int = 1, seed: int = 0) -> Report:
    """The action re-extracted from a(z) = Y_W(a^{1,0}, z) respects the g-bracket; restriction bounds hold."""
    alg = mod.alg
    fields = ModuleFields(mod, Envelope(alg))
    one = mod.field.identity()
    rep = Report("module", {"module": mod.name, "mode_radius": mode_radius, "samples": samples,
                            "degree": degree, "seed": seed})
    vectors = _samples(mod, samples, degree, seed)
    gens = [a for a in alg.generators(family_radius) if not alg.is_central(a)]
    exps = range(-mode_radius, mode_radius + 1)
    for a in gens:
        for b in gens:
            for e1 in exps:
                for e2 in exps:
                    X = fields.generator_coefficient(a, one, e1)
                    Y = fields.generator_coefficient(b, one, e2)
                    if not X or not Y:
                        continue
                    br = Vec(mod.field)
                    for x, c in X.terms.items():
                        for y, d in Y.terms.items():
                            br.add_scaled(mod.bracket(x, y), c * d)
                    for idx, w in enumerate(vectors):
                        lhs = mod.apply(X, mod.apply(Y, w)) - mod.apply(Y, mod.apply(X, w))
                        rhs = mod.apply(br, w)
                        rep.record("bracket %s z^%d, %s z^%d on w%d" % (a, e1, b, e2, idx), lhs == rhs,
                                   pbw_str(lhs - rhs))
    for a in gens:
        for idx, w in enumerate(vectors):
            bound = mod.restriction_bound(w)
            for m in range(bound + 1, bound + 4):
                got = mod.action(a, m, w)
                rep.record("restricted %s(%d) on w%d" % (a, m, idx), not got, pbw_str(got))
    return rep


def check_equivariance(mod: InducedModule, lambdas=None, mode_radius: int = 4, family_radius: int = 1,
                       group_radius: int = 1) -> Report:
    """Y_W(R_lam a^{alpha,0}, z) = Y_W(a^{alpha,0}, z / lam) on the window."""
    alg = mod.alg
    env = Envelope(alg)
    fields = ModuleFields(mod, env)
    if lambdas is None:
        lambdas = [mod.field.identity()] + list(alg.group_gens())
    rep = Report("equivariance", {"module": mod.name, "mode_radius": mode_radius,
                                  "lambdas": " ".join(str(g) for g in lambdas)})
    for x in _generator_pairs(mod, family_radius, group_radius):
        gen = Vec.single(mod.field, (x,))
        for lam in lambdas:
            image = env.r_action(lam, gen)
            for e in range(-mode_radius, mode_radius + 1):
                lhs = fields.coefficient(image, e)
                rhs = fields.coefficient(gen, e).scale(mod.field.embed_power(lam, -e))
                rep.record("R[%s] %s z^%d" % (lam, x, e), lhs == rhs, lie_element_str(lhs - rhs))
    return rep


def bracket_support(alg: QVLA, a, alpha, b, beta) -> list:
    """The lam with (R_{1/lam} a^{alpha,0})_i b^{beta,0} possibly nonzero, read off the structure data."""
    return sorted({e.alpha * beta / alpha for e in alg.entries(a, b)})


def check_equi_commutator(mod: InducedModule, pairs=None, mode_radius: int = 4, samples: int = 3,
                          degree: int = 2, family_radius: int = 1, group_radius: int = 1, seed: int = 0) -> Report:
    """[Y_W(u,z), Y_W(v,w)] = sum_{lam,i} lam^{1-eps} Y_W((R_{1/lam} u)_i v, w) Delta^(i)_{w,eps}(z, lam w)."""
    alg = mod.alg
    env = Envelope(alg)
    fields = ModuleFields(mod, env)
    fld, eps = mod.field, mod.epsilon
    if pairs is None:
        gens = _generator_pairs(mod, family_radius, group_radius)
        pairs = [(x, y) for x in gens for y in gens]
    rep = Report("equi-commutator", {"module": mod.name, "mode_radius": mode_radius, "samples": samples,
                                     "degree": degree, "seed": seed})
    vectors = _samples(mod, samples, degree, seed)
    exps = range(-mode_radius, mode_radius + 1)
    for x, y in pairs:
        u, v = Vec.single(fld, (x,)), Vec.single(fld, (y,))
        declared = bracket_support(alg, x.a, x.alpha, y.a, y.alpha)
        terms = []
        found = set()
        top = alg.families[x.a.family].weight + alg.families[y.a.family].weight
        for lam in declared:
            ru = env.r_action(lam.inverse(), u)
            for i in range(0, top):
                prod = env.vertex_coefficient(ru, i, v)
                if prod:
                    terms.append((lam, i, prod))
                    found.add(lam)
        rep.record("support %s %s" % (x, y), found <= set(declared),
                   "found %s, declared %s" % (sorted(map(str, found)), sorted(map(str, declared))))
        for e1 in exps:
            n = -e1 + eps - 1
            X = fields.coefficient(u, e1)
            for e2 in exps:
                Y = fields.coefficient(v, e2)
                rhs_op = Vec(fld)
                for lam, i, prod in terms:
                    dc = fld.embed_power(lam, n) * P(i, n, eps) / factorial(i)
                    if dc:
                        rhs_op.add_scaled(fields.coefficient(prod, e2 - n - i * (eps - 1)),
                                          dc * fld.embed_power(lam, 1 - eps))
                for idx, w in enumerate(vectors):
                    lhs = mod.apply(X, mod.apply(Y, w)) - mod.apply(Y, mod.apply(X, w))
                    rhs = mod.apply(rhs_op, w)
                    rep.record("%s z^%d, %s w^%d on w%d" % (x, e1, y, e2, idx), lhs == rhs, pbw_str(lhs - rhs))
    return rep


class _Associativity:
    """Both sides of the phi-associativity identity for one pair (u, v) and one module vector."""

    def __init__(self, fields: ModuleFields, x, y, roots, order: int):
        self.fields = fields
        self.mod = fields.mod
        self.env = fields.env
        self.fld = fields.field
        self.eps = fields.epsilon
        self.x, self.y = x, y
        self.u = Vec.single(self.fld, (x,))
        self.v = Vec.single(self.fld, (y,))
        self.roots = list(roots)
        self.order = order
        self.poly = self._poly()
        self.top = self.mod.alg.families[x.a.family].weight + self.mod.alg.families[y.a.family].weight
        self.q_of_phi = self._q_of_phi(order + self.top + 2)
        self.valuation = next((j for j, c in enumerate(self.q_of_phi) if c), None)
        if self.valuation is None:
            raise ContractError("q(phi) vanishes to the computed order")
        self._yy = {}
        self._products = {}

    def _poly(self):
        coeffs = [self.fld.one]
        for g in self.roots:
            root = self.fld.embed_power(g, 1)
            new = [self.fld.zero] * (len(coeffs) + 1)
            for r, c in enumerate(coeffs):
                new[r + 1] = new[r + 1] + c
                new[r] = new[r] - c * root
            coeffs = new
        return coeffs

    def _q_of_phi(self, order):
        out = [self.fld.zero] * (order + 1)
        for r, s in enumerate(self.poly):
            if s:
                for j, c in enumerate(phi_power(self.eps, r, order)):
                    if c:
                        out[j] = out[j] + s * self.fld(c)
        return out

    def yy(self, e1, e2, w):
        key = (e1, e2)
        hit = self._yy.get(key)
        if hit is None:
            hit = self.fields.act(self.u, e1, self.fields.act(self.v, e2, w))
            self._yy[key] = hit
        return hit

    def product_side(self, e1, e2, w) -> Vec:
        """Coefficient of z1^e1 z2^e2 in q(z1/z2) Y_W(u, z1) Y_W(v, z2) w."""
        out = Vec(self.fld)
        for r, s in enumerate(self.poly):
            if s:
                out.add_scaled(self.yy(e1 - r, e2 + r, w), s)
        return out

    def substituted(self, k, E, w, low1, low2) -> Vec:
        """Coefficient of z0^k z2^E after z1 = phi(z2, z0)."""
        out = Vec(self.fld)
        shift = k * (self.eps - 1)
        for e1 in range(low1, E - shift - low2 + 1):
            c = phi_power(self.eps, e1, max(k, 0))[k] if k >= 0 else 0
            if c:
                out.add_scaled(self.product_side(e1, E - e1 - shift, w), self.fld(c))
        return out

    def single(self, n):
        return self.env.vertex_coefficient(self.u, n, self.v)

    def iterate_side(self, k, E, w, products) -> Vec:
        """Coefficient of z0^k z2^E in q(phi(z2,z0)/z2) Y_W(Y(u,z0)v, z2) w.

        ``products(p, E, w)`` supplies Y_W(u_{-p-1} v)_E w.
        """
        out = Vec(self.fld)
        for j, qj in enumerate(self.q_of_phi):
            if not qj:
                continue
            n = j - k - 1
            if n >= self.top:
                continue
            Ej = E - j * (self.eps - 1)
            if n >= 0:
                out.add_scaled(self.fields.act(self.single(n), Ej, w), qj)
            else:
                out.add_scaled(products(-n - 1, Ej, w), qj)
        return out


def _auto_roots(alg: QVLA, x, y) -> list:
    """(x - lam)^(i+1) for every lam and delta-derivative order i in the bracket of x with y."""
    env = Envelope(alg)
    u, v = Vec.single(alg.field, (x,)), Vec.single(alg.field, (y,))
    top = alg.families[x.a.family].weight + alg.families[y.a.family].weight
    roots = []
    for lam in bracket_support(alg, x.a, x.alpha, y.a, y.alpha):
        ru = env.r_action(lam.inverse(), u)
        orders = [i for i in range(top) if env.vertex_coefficient(ru, i, v)]
        if orders:
            roots.extend([lam] * (max(orders) + 1))
    return roots


def check_phi_associativity(mod: InducedModule, x, y, roots=None, order: int = 4, mode_radius: int = 4,
                            samples: int = 3, degree: int = 2, seed: int = 0) -> Report:
    """Membership and the phi-substitution identity for the generator vectors x(-1)|0>, y(-1)|0>.

    ``roots`` lists the roots of q (group elements, with multiplicity); by
    default they are read off the bracket support.  Orders of z0 whose left
    side involves only u_n v with n >= 0 are compared directly; at the
    remaining orders the product fields defined by the identity for (u, v)
    are compared with those defined for (v, u) through skew-symmetry.
    Failures of the membership condition are keyed ``membership``.
    """
    alg = mod.alg
    env = Envelope(alg)
    fields = ModuleFields(mod, env)
    fld, eps = mod.field, mod.epsilon
    if roots is None:
        roots = _auto_roots(alg, x, y)
    swapped_roots = [g.inverse() for g in roots]
    rep = Report("phi-associativity", {
        "module": mod.name, "u": str(x), "v": str(y), "order": order, "mode_radius": mode_radius,
        "q_roots": " ".join(str(g) for g in roots) or "none", "samples": samples, "seed": seed})
    vectors = _samples(mod, samples, degree, seed)
    exps = range(-mode_radius, mode_radius + 1)
    span = order + 4
    for idx, w in enumerate(vectors):
        ab = _Associativity(fields, x, y, roots, order)
        ba = _Associativity(fields, y, x, swapped_roots, order)
        bound = mod.restriction_bound(w)
        low1 = eps - 1 - bound
        low2 = eps - 1 - bound - len(roots)

        # membership: no z1 exponent below low1, for every z2 exponent in the window
        clean = True
        for e2 in range(low2, low2 + span + 1):
            for e1 in range(low1 - span, low1):
                got = ab.product_side(e1, e2, w)
                ok = not got
                clean &= ok
                rep.record("membership w%d z1^%d z2^%d" % (idx, e1, e2), ok, pbw_str(got))
        if not clean:
            rep.notes.append("membership failure on w%d: q does not clear the poles" % idx)
            continue

        def products_for(pair, low1=low1, low2=low2, w=w):
            memo = {}

            def products(p, E, w_):
                key = (p, E)
                if key not in memo:
                    # solve for the lowest product term at order k
                    k = p + pair.valuation
                    target = pair.substituted(k, E + pair.valuation * (eps - 1), w_, low1, low2)
                    other = Vec(fld)
                    for j, qj in enumerate(pair.q_of_phi):
                        if not qj or j == pair.valuation:
                            continue
                        n = j - k - 1
                        if n >= pair.top:
                            continue
                        Ej = E + pair.valuation * (eps - 1) - j * (eps - 1)
                        if n >= 0:
                            other.add_scaled(fields.act(pair.single(n), Ej, w_), qj)
                        else:
                            other.add_scaled(products(-n - 1, Ej, w_), qj)
                    memo[key] = (target - other).scale(pair.q_of_phi[pair.valuation].inverse())
                return memo[key]

            return products

        prod_ab = products_for(ab)
        prod_ba = products_for(ba, low1=eps - 1 - bound, low2=eps - 1 - bound - len(roots))

        # singular orders: every term on the iterate side is a single-mode vector
        for k in range(-ab.top - 1, ab.valuation):
            for E in exps:
                lhs = ab.iterate_side(k, E, w, prod_ab)
                rhs = ab.substituted(k, E, w, low1, low2)
                rep.record("substitution w%d z0^%d z2^%d" % (idx, k, E), lhs == rhs, pbw_str(lhs - rhs))

        # regular orders: product fields from (u, v) against (v, u) via skew-symmetry
        for p in range(0, order + 1):
            for E in exps:
                lhs = prod_ab(p, E, w)
                rhs = Vec(fld)
                # u_{-p-1} v = sum_j (-1)^(j-p) D^(j) (v_{j-p-1} u)
                for j in range(0, p + ab.top + 1):
                    sign = (-1) ** ((j - p) % 2)
                    n = j - p - 1
                    base = E - j * (eps - 1)
                    dcoef = P(j, base, eps)
                    if not dcoef:
                        continue
                    scale = fld(sign * dcoef) / factorial(j)
                    if n < 0:
                        rhs.add_scaled(prod_ba(-n - 1, base, w), scale)
                    else:
                        vec = env.vertex_coefficient(ba.u, n, ba.v)
                        if vec:
                            rhs.add_scaled(fields.act(vec, base, w), scale)
                rep.record("skew-consistency w%d z0^%d z2^%d" % (idx, p, E), lhs == rhs, pbw_str(lhs - rhs))
    return rep


def failure_kinds(rep: Report) -> set:
    """Kinds of failed instances, read from the first word of their key."""
    return {inst.key.split()[0] for inst in rep.failures}
