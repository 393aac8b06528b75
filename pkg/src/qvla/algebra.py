"""Quasi vertex Lie algebras presented by structure data and current relations.

A :class:`QVLA` is described by

* generator families (possibly parameterized, possibly central),
* a structure function ``(a, b) -> [StructureEntry]`` encoding
  [a(z), b(w)] = sum (w^e d/dw)^j value(beta w) * delta(i, e, alpha),
* directed relations between scaled derivative currents,
* optionally a declared basis of the underlying Lie algebra (``g_reduce``),
  used as independent knowledge when checking the reconstruction map.

Mode-level objects are :class:`Mode` keys collected in :class:`~qvla.linear.Vec`
combinations ("Lie elements").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Callable

from .currents import (
    P,
    Q,
    ContractError,
    CurrentExpr,
    DeltaTerm,
    GeneratorIndex,
    collect_delta_coefficients,
    delta_normalize,
    expand_delta_terms,
)
from .linear import Echelon, Vec, format_combination
from .report import Report
from .scalars import Field, GroupElem, InvalidInput, associated_subgroup


class SchemaError(InvalidInput):
    """Undeclared generator or malformed structure data."""


class NonConfluentRelations(RuntimeError):
    """Relation rewriting did not terminate within the configured bound."""


@dataclass(frozen=True)
class Family:
    name: str
    arity: int = 0
    central: bool = False
    params: Callable[[int], list] | None = None
    weight: int | None = None

    def window(self, radius: int) -> list:
        if self.arity == 0:
            return [()]
        if self.params is not None:
            return sorted(self.params(radius))
        return list(itertools.product(range(-radius, radius + 1), repeat=self.arity))


@dataclass(frozen=True)
class StructureEntry:
    alpha: GroupElem
    beta: GroupElem
    i: int
    j: int
    value: Vec  # over GeneratorIndex


@dataclass(frozen=True)
class Rule:
    """A relation ``expr = 0`` used to rewrite its ``head`` term (a, alpha, n)."""

    head: tuple
    expr: CurrentExpr

    def head_coeff(self):
        return self.expr.vec[self.head]


@dataclass(frozen=True, order=True)
class Mode:
    a: GeneratorIndex
    alpha: GroupElem
    m: int
    twist: int

    def __str__(self):
        return "%s^{%s,%d}(%d)" % (self.a, self.alpha, self.twist, self.m)


def format_g(key) -> str:
    a, m = key
    return "%s(%d)" % (a, m)


def lie_str(e: Vec) -> str:
    return format_combination(e.items())


def g_str(e: Vec) -> str:
    return format_combination(e.items(), format_g)


@dataclass
class QVLA:
    name: str
    field: Field
    epsilon: int
    families: dict
    structure: Callable
    rules: Callable | None = None
    g_reduce_fn: Callable | None = None
    g_basis_fn: Callable | None = None
    central_rules: bool = True
    group_generators: list | None = None
    group_radius: int = 2
    max_rewrite_depth: int = 64
    _caches: dict = dc_field(default_factory=dict, repr=False, compare=False)

    # ---- schema --------------------------------------------------------
    def gen(self, family: str, *params) -> GeneratorIndex:
        a = GeneratorIndex(family, tuple(params))
        self.check_generator(a)
        return a

    def check_generator(self, a: GeneratorIndex):
        fam = self.families.get(a.family)
        if fam is None or len(a.params) != fam.arity:
            raise SchemaError("undeclared generator %s" % (a,))

    def is_central(self, a: GeneratorIndex) -> bool:
        return self.families[a.family].central

    def generators(self, radius: int) -> list:
        out = []
        for name in sorted(self.families):
            for params in self.families[name].window(radius):
                out.append(GeneratorIndex(name, tuple(params)))
        return out

    def cache(self, name: str) -> dict:
        return self._caches.setdefault(name, {})

    def variant(self, **changes) -> "QVLA":
        """A copy with some fields replaced and fresh caches (used for mutations)."""
        data = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "_caches"}
        data.update(changes)
        return QVLA(**data)

    # ---- structure data ------------------------------------------------
    def entries(self, a: GeneratorIndex, b: GeneratorIndex) -> list:
        memo = self.cache("entries")
        key = (a, b)
        hit = memo.get(key)
        if hit is None:
            self.check_generator(a)
            self.check_generator(b)
            if self.is_central(a) or self.is_central(b):
                hit = []
            else:
                hit = [e for e in self.structure(self, a, b) if e.value]
            hit.sort(key=lambda e: (e.alpha, e.beta, e.i, e.j))
            memo[key] = hit
        return hit

    # ---- relations -----------------------------------------------------
    def rules_for(self, a: GeneratorIndex, alpha: GroupElem) -> list:
        memo = self.cache("rules")
        key = (a, alpha)
        hit = memo.get(key)
        if hit is None:
            hit = list(self.rules(self, a, alpha)) if self.rules else []
            if self.central_rules and self.is_central(a):
                hit.extend(central_rules(self, a, alpha))
            for rule in hit:
                if rule.head[:2] != (a, alpha) or not rule.head_coeff():
                    raise SchemaError("rule head %r does not match (%s, %s)" % (rule.head, a, alpha))
            memo[key] = hit
        return hit

    # ---- declared Lie algebra --------------------------------------------
    def g_reduce(self, a: GeneratorIndex, m: int) -> Vec:
        memo = self.cache("g_reduce")
        key = (a, m)
        hit = memo.get(key)
        if hit is None:
            if self.g_reduce_fn is not None:
                hit = Vec(self.field, self.g_reduce_fn(self, a, m))
            elif self.is_central(a):
                hit = Vec.single(self.field, (a, m)) if m == self.epsilon - 1 else Vec(self.field)
            else:
                hit = Vec.single(self.field, (a, m))
            memo[key] = hit
        return hit

    def g_basis(self, family_radius: int, mode_radius: int) -> list:
        if self.g_basis_fn is not None:
            return sorted(self.g_basis_fn(self, family_radius, mode_radius))
        out = set()
        for a in self.generators(family_radius):
            for m in range(-mode_radius, mode_radius + 1):
                out.update(self.g_reduce(a, m).terms)
        return sorted(out)

    # ---- the group -----------------------------------------------------
    def group_gens(self) -> list:
        if self.group_generators is not None:
            return list(self.group_generators)
        memo = self.cache("group")
        if "gens" not in memo:
            memo["gens"] = associated_group(self)
        return memo["gens"]

    def group_window(self) -> list:
        memo = self.cache("group")
        if "window" in memo:
            return memo["window"]
        gens = self.group_gens()
        fld = self.field
        elems = {fld.identity()}
        for g in gens:
            order = self.field.T if not any(g.free) else None
            powers = range(order) if order else range(-self.group_radius, self.group_radius + 1)
            elems = {h * g**e for h in elems for e in powers}
        memo["window"] = sorted(elems)
        return memo["window"]


def central_rules(alg: QVLA, c: GeneratorIndex, alpha: GroupElem) -> list:
    """Constancy of a central current: c(alpha z) = c(z) and (z^e d/dz) c(z) = 0."""
    fld = alg.field
    eps = alg.epsilon
    one = fld.identity()
    if alpha != one:
        expr = CurrentExpr(fld, eps, {(c, alpha, 0): 1, (c, one, 0): -1})
        return [Rule((c, alpha, 0), expr)]
    return [Rule((c, one, 1), CurrentExpr(fld, eps, {(c, one, 1): 1}))]


def entry(fld: Field, alpha, beta, i, j, value) -> StructureEntry:
    """Convenience constructor; ``value`` is a dict or Vec over generators."""
    return StructureEntry(alpha, beta, i, j, value if isinstance(value, Vec) else Vec(fld, value))


# ---------------------------------------------------------------------------
# current-level brackets
# ---------------------------------------------------------------------------


def current_bracket(alg: QVLA, a, alpha, b, beta) -> list:
    """[a(alpha z), b(beta w)] as canonical delta terms (twist epsilon)."""
    fld, eps = alg.field, alg.epsilon
    raw = []
    for e in alg.entries(a, b):
        c = fld.embed_power(beta, (e.i + e.j) * (eps - 1))
        coeff = CurrentExpr(fld, eps, {(g, e.beta * beta, e.j): v * c for g, v in e.value.items()})
        raw.append(delta_normalize(coeff, e.i, alpha, e.alpha * beta, "w"))
    return [DeltaTerm(v, i, lam, eps) for (i, lam), v in collect_delta_coefficients(raw).items()]


def zeta_current_bracket(alg: QVLA, zeta: int, a, alpha, b, beta) -> list:
    """[a^{alpha,zeta}(z), b^{beta,zeta}(w)] in the canonical delta basis."""
    fld, eps = alg.field, alg.epsilon
    ratio = alpha / beta
    pre = fld.embed_power(alpha, eps - 1)
    raw = []
    for e in alg.entries(a, b):
        if e.alpha != ratio:
            continue
        c = pre * fld.embed_power(beta, (e.i + e.j) * (eps - 1))
        coeff = CurrentExpr(fld, zeta, {(g, e.beta * beta, e.j): v * c for g, v in e.value.items()})
        raw.append(DeltaTerm(coeff, e.i, fld.identity(), zeta))
    return [DeltaTerm(v, i, lam, zeta) for (i, lam), v in collect_delta_coefficients(raw).items()]


# ---------------------------------------------------------------------------
# relation reduction
# ---------------------------------------------------------------------------


def transcribe(expr: CurrentExpr, zeta: int, M: int) -> Vec:
    """Mode M of expr with every (z^e d/dz)^n a(alpha z) read as (z^zeta d/dz)^n a^{alpha,zeta}(z)."""
    out = Vec(expr.field)
    for (a, alpha, n), mu in expr.terms():
        p = M + n * (zeta - 1)
        c = Q(n, p, zeta)
        if c:
            out._accumulate(Mode(a, alpha, p, zeta), mu * c)
    return out


def _reduce_single(alg: QVLA, mode: Mode, depth: int) -> Vec:
    memo = alg.cache("reduce_mode")
    hit = memo.get(mode)
    if hit is not None:
        return hit
    if depth > alg.max_rewrite_depth:
        raise NonConfluentRelations("rewriting of %s did not terminate" % mode)
    zeta = mode.twist
    result = None
    for rule in alg.rules_for(mode.a, mode.alpha):
        a_h, al_h, n_h = rule.head
        rel = transcribe(rule.expr, zeta, mode.m - n_h * (zeta - 1))
        kappa = rel.terms.pop(mode, None)
        if kappa is None:
            continue
        result = Vec(alg.field)
        scale = -kappa.inverse()
        for other, c in rel.items():
            result.add_scaled(_reduce_single(alg, other, depth + 1), c * scale)
        break
    if result is None:
        result = Vec.single(alg.field, mode)
    memo[mode] = result
    return result


def reduce_mode(alg: QVLA, zeta: int, e: Vec) -> Vec:
    """Normal form of a Lie element modulo the transcribed relations."""
    out = Vec(alg.field)
    for mode, c in e.terms.items():
        if mode.twist != zeta:
            raise ContractError("mode %s does not have twist %d" % (mode, zeta))
        out.add_scaled(_reduce_single(alg, mode, 0), c)
    return out


def _reduce_current_term(alg: QVLA, key, depth: int) -> Vec:
    memo = alg.cache("reduce_current")
    hit = memo.get(key)
    if hit is not None:
        return hit
    if depth > alg.max_rewrite_depth:
        raise NonConfluentRelations("rewriting of current term %r did not terminate" % (key,))
    a, alpha, n = key
    result = None
    for rule in alg.rules_for(a, alpha):
        n_h = rule.head[2]
        if n_h > n:
            continue
        scale = -rule.head_coeff().inverse()
        result = Vec(alg.field)
        for (b, beta, k), mu in rule.expr.terms():
            if (b, beta, k) == rule.head:
                continue
            result.add_scaled(_reduce_current_term(alg, (b, beta, k + n - n_h), depth + 1), mu * scale)
        break
    if result is None:
        result = Vec.single(alg.field, key)
    memo[key] = result
    return result


def reduce_current(alg: QVLA, expr: CurrentExpr) -> CurrentExpr:
    """Exact normal form of a current expression (twist epsilon) modulo the relations."""
    if expr.twist != alg.epsilon:
        raise ContractError("current relations live at twist epsilon")
    out = Vec(alg.field)
    for key, c in expr.vec.terms.items():
        out.add_scaled(_reduce_current_term(alg, key, 0), c)
    return CurrentExpr(alg.field, alg.epsilon, out)


# ---------------------------------------------------------------------------
# mode brackets
# ---------------------------------------------------------------------------


def _raw_mode_bracket(alg: QVLA, zeta: int, x: Mode, y: Mode) -> Vec:
    fld, eps = alg.field, alg.epsilon
    out = Vec(fld)
    ratio = x.alpha / y.alpha
    pre = None
    for e in alg.entries(x.a, y.a):
        if e.alpha != ratio:
            continue
        if pre is None:
            pre = fld.embed_power(x.alpha, eps - 1)
        p = x.m + y.m + (e.i + e.j) * (zeta - 1)
        num = P(e.i, x.m, zeta) * Q(e.j, p, zeta)
        if not num:
            continue
        c = pre * fld.embed_power(y.alpha, (e.i + e.j) * (eps - 1)) * num / factorial(e.i)
        scale = e.beta * y.alpha
        for g, v in e.value.terms.items():
            out._accumulate(Mode(g, scale, p, zeta), v * c)
    return out


def zeta_mode_bracket(alg: QVLA, zeta: int, x: Mode, y: Mode) -> Vec:
    """[x, y] in g^zeta, reduced."""
    if x.twist != zeta or y.twist != zeta:
        raise ContractError("modes must have twist %d" % zeta)
    memo = alg.cache("zeta_bracket")
    key = (x, y)
    hit = memo.get(key)
    if hit is None:
        hit = reduce_mode(alg, zeta, _raw_mode_bracket(alg, zeta, x, y))
        memo[key] = hit
    return hit


def lie_bracket(alg: QVLA, zeta: int, X: Vec, Y: Vec) -> Vec:
    out = Vec(alg.field)
    for x, c in X.terms.items():
        for y, d in Y.terms.items():
            out.add_scaled(zeta_mode_bracket(alg, zeta, x, y), c * d)
    return out


def mode_bracket_oracle(alg: QVLA, zeta: int, x: Mode, y: Mode) -> Vec:
    """Mode bracket read off from a window expansion of the current bracket."""
    terms = zeta_current_bracket(alg, zeta, x.a, x.alpha, y.a, y.alpha)
    ew = -y.m + zeta - 1
    ez = -x.m + zeta - 1
    win = expand_delta_terms(terms, (ew, ew), (ez, ez))
    cell = win.cells.get((ew, ez))
    if cell is None:
        return Vec(alg.field)
    raw = cell.map_keys(lambda k: [(Mode(k[0], k[1], k[2], zeta), 1)])
    return reduce_mode(alg, zeta, raw)


# ---------------------------------------------------------------------------
# the Lie algebra g and the Gamma quotient
# ---------------------------------------------------------------------------


def _pi(alg: QVLA, e: Vec) -> Vec:
    """a^{alpha}(m) -> alpha^{-m+e-1} a^{1}(m)."""
    fld, eps = alg.field, alg.epsilon
    one = fld.identity()
    return e.map_keys(
        lambda md: [(Mode(md.a, one, md.m, md.twist), fld.embed_power(md.alpha, -md.m + eps - 1))]
    )


def _gamma_priority(alg: QVLA):
    def key(mode: Mode):
        img = alg.g_reduce(mode.a, mode.m)
        is_basis = len(img) == 1 and (mode.a, mode.m) in img.terms
        return (0 if is_basis else 1, mode.a, mode.m)

    return key


def _gamma_nf_single(alg: QVLA, mode: Mode, limit: int = 4000) -> Vec:
    memo = alg.cache("gamma_nf")
    hit = memo.get(mode)
    if hit is not None:
        return hit
    eps = alg.epsilon
    window = alg.group_window()
    ech = Echelon(alg.field, _gamma_priority(alg))
    seen = {(mode.a, mode.m)}
    queue = [(mode.a, mode.m)]
    while queue:
        b, p = queue.pop()
        for mu in window:
            x = Mode(b, mu, p, eps)
            rel = _pi(alg, Vec.single(alg.field, x)) - _pi(alg, reduce_mode(alg, eps, Vec.single(alg.field, x)))
            if not rel:
                continue
            ech.insert(rel)
            for k in rel.terms:
                if (k.a, k.m) not in seen:
                    seen.add((k.a, k.m))
                    queue.append((k.a, k.m))
                    if len(seen) > limit:
                        raise NonConfluentRelations("Gamma closure of %s exceeds %d modes" % (mode, limit))
    result = ech.reduce(Vec.single(alg.field, mode))
    memo[mode] = result
    return result


def gamma_normal_form(alg: QVLA, e: Vec) -> Vec:
    """Normal form in g^e[Gamma]: every mode rewritten in the a^{1,e}(m) basis."""
    out = Vec(alg.field)
    for mode, c in _pi(alg, e).terms.items():
        if mode.twist != alg.epsilon:
            raise ContractError("Gamma quotient is defined at twist epsilon")
        out.add_scaled(_gamma_nf_single(alg, mode), c)
    return out


def gamma_bracket(alg: QVLA, x: Mode, y: Mode) -> Vec:
    """[x, y]_Gamma = sum_lam lam^{-m+e-1} [a^{alpha/lam}(m), y], in Gamma normal form."""
    fld, eps = alg.field, alg.epsilon
    if x.twist != eps or y.twist != eps:
        raise ContractError("Gamma bracket is defined at twist epsilon")
    out = Vec(fld)
    for s in sorted({e.alpha for e in alg.entries(x.a, y.a)}):
        lam = x.alpha / (s * y.alpha)
        shifted = Mode(x.a, x.alpha / lam, x.m, eps)
        out.add_scaled(zeta_mode_bracket(alg, eps, shifted, y), fld.embed_power(lam, -x.m + eps - 1))
    return gamma_normal_form(alg, out)


def phi_gamma(alg: QVLA, e: Vec) -> Vec:
    """Reconstruction map into g: a^{alpha,e}(m) -> alpha^{-m+e-1} a(m), in the declared basis."""
    fld, eps = alg.field, alg.epsilon
    out = Vec(fld)
    for mode, c in e.terms.items():
        if mode.twist != eps:
            raise ContractError("reconstruction map is defined at twist epsilon")
        out.add_scaled(alg.g_reduce(mode.a, mode.m), c * fld.embed_power(mode.alpha, -mode.m + eps - 1))
    return out


def g_mode_bracket(alg: QVLA, x, y) -> Vec:
    """[a(m), b(n)] in g from the structure data (residues of the defining commutator)."""
    (a, m), (b, n) = x, y
    fld, eps = alg.field, alg.epsilon
    out = Vec(fld)
    for e in alg.entries(a, b):
        p = m + n + (e.i + e.j) * (eps - 1)
        num = P(e.i, m, eps) * Q(e.j, p, eps)
        if not num:
            continue
        c = fld.embed_power(e.alpha, m) * fld.embed_power(e.beta, -p + eps - 1) * num / factorial(e.i)
        for g, v in e.value.terms.items():
            out.add_scaled(alg.g_reduce(g, p), v * c)
    return out


def g_bracket(alg: QVLA, X: Vec, Y: Vec) -> Vec:
    out = Vec(alg.field)
    for x, c in X.terms.items():
        for y, d in Y.terms.items():
            out.add_scaled(g_mode_bracket(alg, x, y), c * d)
    return out


# ---------------------------------------------------------------------------
# group
# ---------------------------------------------------------------------------


def associated_group(alg: QVLA, radius: int = 2) -> list:
    """Generators of the group generated by all scales in nonzero structure entries."""
    elems = set()
    gens = alg.generators(radius)
    for a in gens:
        for b in gens:
            for e in alg.entries(a, b):
                elems.add(e.alpha)
                elems.add(e.beta)
    return associated_subgroup(sorted(elems), alg.field)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------


def _current_residual(alg: QVLA, expr: CurrentExpr) -> CurrentExpr:
    return reduce_current(alg, expr)


def skew_sides(alg: QVLA, a, b, lam: GroupElem, k: int):
    """Both sides of the skew-symmetry constraint for (a, b, lam, k)."""
    fld, eps = alg.field, alg.epsilon
    lhs = Vec(fld)
    inv = lam.inverse()
    for e in alg.entries(a, b):
        if e.alpha == inv and e.i == k:
            for g, v in e.value.terms.items():
                lhs._accumulate((g, e.beta, e.j), v)
    rhs = Vec(fld)
    pre = -fld.embed_power(lam, (1 - k) * (eps - 1))
    for e in alg.entries(b, a):
        if e.alpha != lam or e.i < k:
            continue
        i = e.i - k
        j = e.j + i
        c = pre * fld.embed_power(lam, -j * (eps - 1)) * (-1) ** (i + k) / factorial(i)
        for g, v in e.value.terms.items():
            rhs._accumulate((g, inv * e.beta, j), v * c)
    return CurrentExpr(fld, eps, lhs), CurrentExpr(fld, eps, rhs)


def check_skew_symmetry(alg: QVLA, family_radius: int = 3, pairs=None) -> Report:
    rep = Report("skew-symmetry", {"algebra": alg.name, "family_radius": family_radius, "scope": "exact currents"})
    gens = alg.generators(family_radius)
    pairs = pairs if pairs is not None else [(a, b) for a in gens for b in gens]
    for a, b in pairs:
        lams = {e.alpha.inverse() for e in alg.entries(a, b)} | {e.alpha for e in alg.entries(b, a)}
        top = max([e.i for e in alg.entries(a, b)] + [e.i for e in alg.entries(b, a)] + [0])
        for lam in sorted(lams):
            for k in range(top + 1):
                lhs, rhs = skew_sides(alg, a, b, lam, k)
                res = _current_residual(alg, lhs - rhs)
                rep.record("a=%s b=%s lam=%s k=%d" % (a, b, lam, k), not res, res)
    return rep


def jacobi_residuals(alg: QVLA, a, b, c) -> dict:
    """Residual current (left minus right) of the Jacobi constraint for each (lam, eta, i, k)."""
    fld, eps = alg.field, alg.epsilon
    acc = {}

    def add(key, g, scale, l, coeff):
        vec = acc.setdefault(key, Vec(fld))
        vec._accumulate((g, scale, l), coeff)

    def e1(X, Y):
        return alg.entries(X, Y)

    def binom_int(n, r):
        return factorial(n) // (factorial(r) * factorial(n - r))

    # a acting on (b_(lam, xi, k, j+s) c)
    for f in e1(b, c):
        lam, xi, k, J1 = f.alpha, f.beta, f.i, f.j
        for g, gv in f.value.terms.items():
            for h in e1(a, g):
                eta = h.alpha * xi
                for s in range(J1 + 1):
                    j = J1 - s
                    i = h.i + s
                    l = h.j + j
                    coeff = binom_int(j + s, s) * factorial(i) // factorial(i - s)
                    sc = gv * coeff * fld.embed_power(xi, (i + l - s - j) * (eps - 1))
                    for g2, v2 in h.value.terms.items():
                        add((lam, eta, i, k), g2, h.beta * xi, l, v2 * sc)
    # (a_(eta/lam, xi, i-s, j) b) acting on c
    for f in e1(a, b):
        xi = f.beta
        for g, gv in f.value.terms.items():
            for h in e1(g, c):
                lam = h.alpha * xi.inverse()
                eta = f.alpha * lam
                for s in range(h.i + f.j + 1):
                    i = f.i + s
                    k = h.i + f.j - s
                    coeff = binom_int(i, s) * (-1) ** f.j * factorial(h.i + f.j) // factorial(h.i)
                    sc = -gv * coeff * fld.embed_power(xi, eps - 1) * fld.embed_power(lam, (i + f.j - s) * (eps - 1))
                    for g2, v2 in h.value.terms.items():
                        add((lam, eta, i, k), g2, h.beta, h.j, v2 * sc)
    # b acting on (a_(eta, xi, i, j+s) c)
    for f in e1(a, c):
        eta, xi, i, J1 = f.alpha, f.beta, f.i, f.j
        for g, gv in f.value.terms.items():
            for h in e1(b, g):
                lam = h.alpha * xi
                for s in range(J1 + 1):
                    j = J1 - s
                    k = h.i + s
                    l = h.j + j
                    coeff = binom_int(j + s, s) * factorial(k) // factorial(k - s)
                    sc = -gv * coeff * fld.embed_power(xi, (k + l - s - j) * (eps - 1))
                    for g2, v2 in h.value.terms.items():
                        add((lam, eta, i, k), g2, h.beta * xi, l, v2 * sc)
    return {key: CurrentExpr(fld, eps, v) for key, v in acc.items()}


def check_jacobi(alg: QVLA, family_radius: int = 3, triples=None) -> Report:
    rep = Report("jacobi", {"algebra": alg.name, "family_radius": family_radius, "scope": "exact currents"})
    if triples is None:
        gens = [g for g in alg.generators(family_radius) if not alg.is_central(g)]
        triples = itertools.product(gens, repeat=3)
    for a, b, c in triples:
        for (lam, eta, i, k), expr in sorted(jacobi_residuals(alg, a, b, c).items(), key=lambda kv: kv[0]):
            res = _current_residual(alg, expr)
            rep.record("a=%s b=%s c=%s lam=%s eta=%s i=%d k=%d" % (a, b, c, lam, eta, i, k), not res, res)
    return rep


# ---------------------------------------------------------------------------
# reconstruction and maximality
# ---------------------------------------------------------------------------


def gamma_basis(alg: QVLA, family_radius: int, mode_radius: int) -> list:
    """Modes a^{1,e}(m) in the window that survive as their own Gamma normal form."""
    one = alg.field.identity()
    out = []
    for a in alg.generators(family_radius):
        for m in range(-mode_radius, mode_radius + 1):
            md = Mode(a, one, m, alg.epsilon)
            nf = _gamma_nf_single(alg, md)
            if len(nf) == 1 and md in nf.terms:
                out.append(md)
    return out


def _bijectivity(alg: QVLA, family_radius: int, mode_radius: int, rep: Report):
    basis = gamma_basis(alg, family_radius, mode_radius)
    ech = Echelon(alg.field)
    images = [phi_gamma(alg, Vec.single(alg.field, md)) for md in basis]
    rank = ech.extend(images)
    g_basis = alg.g_basis(family_radius, mode_radius)
    uncovered = [k for k in g_basis if ech.reduce(Vec.single(alg.field, k))]
    rep.record("injective (rank %d of %d modes)" % (rank, len(basis)), rank == len(basis),
               "kernel of dimension %d" % (len(basis) - rank))
    rep.record("surjective onto %d declared basis elements" % len(g_basis), not uncovered,
               "uncovered %s" % ", ".join(format_g(k) for k in uncovered[:5]))
    return basis


def check_reconstruction(alg: QVLA, family_radius: int = 1, mode_radius: int = 3, pairs=None) -> Report:
    rep = Report("reconstruction", {"algebra": alg.name, "family_radius": family_radius, "mode_radius": mode_radius})
    basis = _bijectivity(alg, family_radius, mode_radius, rep)
    if pairs is None:
        pairs = [(x, y) for x in basis for y in basis]
    for x, y in pairs:
        lhs = phi_gamma(alg, gamma_bracket(alg, x, y))
        rhs = g_bracket(alg, phi_gamma(alg, Vec.single(alg.field, x)), phi_gamma(alg, Vec.single(alg.field, y)))
        diff = lhs - rhs
        rep.record("[%s, %s]" % (x, y), not diff, g_str(diff))
    return rep


def check_maximality(alg: QVLA, family_radius: int = 1, mode_radius: int = 4) -> Report:
    rep = Report("maximality", {"algebra": alg.name, "family_radius": family_radius, "mode_radius": mode_radius})
    basis = gamma_basis(alg, family_radius, mode_radius)
    g_basis = alg.g_basis(family_radius, mode_radius)
    rep.record("rank %d vs declared %d" % (len(basis), len(g_basis)), len(basis) == len(g_basis),
               "surplus %d" % (len(basis) - len(g_basis)))
    _bijectivity(alg, family_radius, mode_radius, rep)
    return rep


# ---------------------------------------------------------------------------
# sampled Lie axioms of g^zeta
# ---------------------------------------------------------------------------


def sample_modes(alg: QVLA, zeta: int, count: int, rng, family_radius: int = 2, mode_radius: int = 4) -> list:
    gens = alg.generators(family_radius)
    window = alg.group_window()
    return [
        Mode(rng.choice(gens), rng.choice(window), rng.randint(-mode_radius, mode_radius), zeta)
        for _ in range(count)
    ]


def check_zeta_lie_axioms(alg: QVLA, zeta: int, triples: int = 200, pairs: int = 100, seed: int = 0,
                          family_radius: int = 2, mode_radius: int = 4) -> Report:
    """Antisymmetry, Jacobi and window-oracle agreement of the g^zeta bracket on samples."""
    import random

    rng = random.Random(seed)
    rep = Report("zeta-lie-axioms", {"algebra": alg.name, "zeta": zeta, "triples": triples, "pairs": pairs,
                                     "seed": seed, "family_radius": family_radius, "mode_radius": mode_radius})
    one = lambda md: Vec.single(alg.field, md)  # noqa: E731
    for _ in range(triples):
        x, y, z = sample_modes(alg, zeta, 3, rng, family_radius, mode_radius)
        anti = zeta_mode_bracket(alg, zeta, x, y) + zeta_mode_bracket(alg, zeta, y, x)
        rep.record("antisymmetry %s %s" % (x, y), not anti, lie_str(anti))
        X, Y, Z = one(x), one(y), one(z)
        jac = (
            lie_bracket(alg, zeta, X, lie_bracket(alg, zeta, Y, Z))
            + lie_bracket(alg, zeta, Y, lie_bracket(alg, zeta, Z, X))
            + lie_bracket(alg, zeta, Z, lie_bracket(alg, zeta, X, Y))
        )
        rep.record("jacobi %s %s %s" % (x, y, z), not jac, lie_str(jac))
    for _ in range(pairs):
        x, y = sample_modes(alg, zeta, 2, rng, family_radius, mode_radius)
        # bias toward interacting pairs: align scales with a structure entry when possible
        ents = alg.entries(x.a, y.a)
        if ents and rng.random() < 0.75:
            e = rng.choice(ents)
            x = Mode(x.a, e.alpha * y.alpha, x.m, zeta)
        diff = zeta_mode_bracket(alg, zeta, x, y) - mode_bracket_oracle(alg, zeta, x, y)
        rep.record("oracle %s %s" % (x, y), not diff, lie_str(diff))
    return rep
