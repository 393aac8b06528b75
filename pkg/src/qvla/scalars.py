"""Exact coefficient field Q(zeta_T)(q1, ..., qk) and the group it contains.

Scalars are reduced rational functions.  The denominator is kept free of the
cyclotomic generator (multiplying through by its Galois conjugates), the
numerator is reduced modulo the cyclotomic polynomial, common factors are
cancelled and the denominator is made monic in graded-lex order.  Under these
rules two scalars are equal exactly when their stored parts are equal.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import lru_cache
from math import gcd as igcd

from sympy import QQ, Symbol, cyclotomic_poly
from sympy.polys.rings import PolyRing, PolyElement


class InvalidInput(ValueError):
    """Raised for malformed or mathematically invalid input."""


def _grlex_key(monom):
    return (sum(monom), monom)


@lru_cache(maxsize=None)
def _field(torsion_order: int, num_params: int) -> "Field":
    return Field._create(torsion_order, num_params)


class Field:
    """The field Q(zeta_T)(q1..qk); obtain instances through :func:`field`."""

    def __init__(self, *_):
        raise TypeError("use scalars.field(T, k)")

    @classmethod
    def _create(cls, torsion_order: int, num_params: int) -> "Field":
        if torsion_order < 1 or num_params < 0:
            raise InvalidInput("need T >= 1 and k >= 0")
        self = object.__new__(cls)
        self.T = torsion_order
        self.k = num_params
        self.has_cyclotomic = torsion_order > 2
        names = ["q%d" % (i + 1) for i in range(num_params)]
        if self.has_cyclotomic:
            names = ["z"] + names
        if not names:
            names = ["_unit"]
        self.ring = PolyRing([Symbol(n) for n in names], QQ)
        self._offset = 1 if self.has_cyclotomic else 0
        if self.has_cyclotomic:
            x = self.ring.gens[0]
            coeffs = cyclotomic_poly(torsion_order, polys=True).all_coeffs()
            phi = self.ring.zero
            for c in coeffs:
                phi = phi * x + int(c)
            self._phi = phi
            self._phi_deg = len(coeffs) - 1
            self._conj_exps = [j for j in range(2, torsion_order) if igcd(j, torsion_order) == 1]
        self.zero = Scalar._raw(self, self.ring.zero, self.ring.one)
        self.one = Scalar._raw(self, self.ring.one, self.ring.one)
        self._power_cache = {}
        return self

    def __repr__(self):
        return "Field(T=%d, k=%d)" % (self.T, self.k)

    def __reduce__(self):
        return (_field, (self.T, self.k))

    # ---- constructors -------------------------------------------------
    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise InvalidInput("scalar from a different field")
            return value
        if isinstance(value, int):
            return Scalar._raw(self, self.ring(value), self.ring.one)
        if isinstance(value, str):
            return self.parse(value)
        try:
            num = QQ.convert(value)
        except Exception as exc:  # noqa: BLE001
            raise InvalidInput("cannot coerce %r to a scalar" % (value,)) from exc
        return Scalar._raw(self, self.ring(num), self.ring.one)

    def zeta(self) -> "Scalar":
        if self.T == 1:
            return self.one
        if self.T == 2:
            return -self.one
        return Scalar._raw(self, self.ring.gens[0], self.ring.one)

    def q(self, index: int) -> "Scalar":
        """The parameter q_index (1-based)."""
        if not 1 <= index <= self.k:
            raise InvalidInput("no parameter q%d" % index)
        return Scalar._raw(self, self.ring.gens[self._offset + index - 1], self.ring.one)

    # ---- normalization ------------------------------------------------
    def _reduce_cyclo(self, p: PolyElement) -> PolyElement:
        if not self.has_cyclotomic or p.is_ground:
            return p
        if p.degree(0) < self._phi_deg:
            return p
        return p.rem(self._phi)

    def _conjugate(self, p: PolyElement, j: int) -> PolyElement:
        terms = {}
        for monom, c in p.terms():
            key = ((monom[0] * j) % self.T,) + monom[1:]
            terms[key] = terms.get(key, 0) + c
        out = self.ring.from_dict({m: c for m, c in terms.items() if c})
        return self._reduce_cyclo(out)

    def normalize(self, num: PolyElement, den: PolyElement) -> "Scalar":
        if not den:
            raise InvalidInput("division by zero")
        num = self._reduce_cyclo(num)
        if not num:
            return self.zero
        if self.has_cyclotomic and den.degree(0) > 0:
            den = self._reduce_cyclo(den)
            if den.degree(0) > 0:
                cof = self.ring.one
                for j in self._conj_exps:
                    cof = self._reduce_cyclo(cof * self._conjugate(den, j))
                den = self._reduce_cyclo(den * cof)
                num = self._reduce_cyclo(num * cof)
        if den.is_ground:
            c = den.LC
            if c != 1:
                num = num.quo_ground(c)
            return Scalar._raw(self, num, self.ring.one)
        if len(den) == 1:
            num, den = _cancel_monomial(self.ring, num, den)
        else:
            g = num.gcd(den)
            if not g.is_ground:
                num = num.exquo(g)
                den = den.exquo(g)
        lead = max(den.monoms(), key=_grlex_key)
        c = dict(den.terms())[lead]
        if c != 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        return Scalar._raw(self, num, den)

    # ---- text form ----------------------------------------------------
    def parse(self, text: str) -> "Scalar":
        """Parse the textual grammar: integers, z, q1..qk, + - * / ^ and parentheses."""
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise InvalidInput("cannot parse scalar %r: %s" % (text, exc.msg)) from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return self(node.value)
        if isinstance(node, ast.Name):
            if node.id == "z":
                return self.zeta()
            if node.id.startswith("q") and node.id[1:].isdigit():
                return self.q(int(node.id[1:]))
            if node.id == "q" and self.k == 1:
                return self.q(1)
            raise InvalidInput("unknown symbol %r in %r" % (node.id, text))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                exp = _int_literal(node.right, text)
                return left**exp
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise InvalidInput("unsupported syntax in scalar %r" % text)

    # ---- group --------------------------------------------------------
    def group(self, torsion: int = 0, free=None) -> "GroupElem":
        free = tuple(free) if free is not None else (0,) * self.k
        if len(free) != self.k:
            raise InvalidInput("group element needs %d free exponents" % self.k)
        return GroupElem(torsion % self.T, free, self.T)

    def identity(self) -> "GroupElem":
        return self.group()

    def zeta_elem(self) -> "GroupElem":
        return self.group(1)

    def q_elem(self, index: int) -> "GroupElem":
        free = [0] * self.k
        free[index - 1] = 1
        return self.group(0, free)

    def embed_power(self, g: "GroupElem", n: int) -> "Scalar":
        key = (g, n)
        hit = self._power_cache.get(key)
        if hit is not None:
            return hit
        if g.T != self.T or len(g.free) != self.k:
            raise InvalidInput("group element does not belong to %r" % self)
        t = (g.torsion * n) % self.T
        if self.T == 2:
            num = self.ring(-1 if t else 1)
        elif self.has_cyclotomic:
            num = self.ring.gens[0] ** t
        else:
            num = self.ring.one
        den = self.ring.one
        for i, e in enumerate(g.free):
            e *= n
            if e > 0:
                num = num * self.ring.gens[self._offset + i] ** e
            elif e < 0:
                den = den * self.ring.gens[self._offset + i] ** (-e)
        value = Scalar._raw(self, self._reduce_cyclo(num), den)
        if len(self._power_cache) < 200000:
            self._power_cache[key] = value
        return value


def _int_literal(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _int_literal(node.operand, text)
    raise InvalidInput("exponent must be an integer literal in %r" % text)


def _cancel_monomial(ring, num, den):
    (dmon, dc), = den.terms()
    common = list(dmon)
    for monom in num.monoms():
        common = [min(a, b) for a, b in zip(common, monom)]
        if not any(common):
            return num, den
    shift = tuple(common)
    num = ring.from_dict({tuple(a - b for a, b in zip(m, shift)): c for m, c in num.terms()})
    den = ring.from_dict({tuple(a - b for a, b in zip(dmon, shift)): dc})
    return num, den


def field(torsion_order: int = 1, num_params: int = 0) -> Field:
    """Return the shared field Q(zeta_T)(q1..qk)."""
    return _field(int(torsion_order), int(num_params))


class Scalar:
    """An immutable element of a :class:`Field` in canonical form."""

    __slots__ = ("field", "num", "den", "_hash")

    @classmethod
    def _raw(cls, fld, num, den):
        self = object.__new__(cls)
        self.field = fld
        self.num = num
        self.den = den
        self._hash = None
        return self

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise InvalidInput("mixing scalars from different fields")
            return other
        if isinstance(other, int):
            return Scalar._raw(self.field, self.field.ring(other), self.field.ring.one)
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field is other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            # PolyElement caches its own hash, which goes stale if sympy mutates it in place
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __neg__(self):
        return Scalar._raw(self.field, -self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        fld = self.field
        if self.den == other.den:
            if self.den == 1:
                return Scalar._raw(fld, self.num + other.num, self.den)
            return fld.normalize(self.num + other.num, self.den)
        return fld.normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.field.zero
            if other == 1:
                return self
            return Scalar._raw(self.field, self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.field
        if not self.num or not other.num:
            return fld.zero
        if self.den == 1 and other.den == 1:
            return Scalar._raw(fld, fld._reduce_cyclo(self.num * other.num), self.den)
        return fld.normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise InvalidInput("division by zero")
        return self.field.normalize(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return "Scalar(%s)" % self

    def __str__(self):
        num = _poly_text(self.num, self.field)
        if self.den == 1:
            return num
        den = _poly_text(self.den, self.field)
        if len(self.num) > 1:
            num = "(" + num + ")"
        if len(self.den) > 1 or not _is_bare_monomial(self.den):
            den = "(" + den + ")"
        return num + "/" + den

    def sort_key(self):
        return str(self)


def _is_bare_monomial(p):
    if len(p) != 1:
        return False
    ((_, c),) = p.terms()
    return c == 1


def _poly_text(p: PolyElement, fld: Field) -> str:
    if not p:
        return "0"
    names = [str(s) for s in fld.ring.symbols]
    parts = []
    for monom, c in sorted(p.terms(), key=lambda t: _grlex_key(t[0]), reverse=True):
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append("%s^%d" % (name, e))
        c = QQ.to_sympy(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not factors:
            body = str(c)
        elif c == 1:
            body = "*".join(factors)
        elif c.q == 1:
            body = "%s*%s" % (c, "*".join(factors))
        else:
            body = "%s/%s*%s" % (c.p, c.q, "*".join(factors))
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += " %s %s" % (sign, body)
    return text


@dataclass(frozen=True, order=True)
class GroupElem:
    """zeta_T^torsion * q1^free[0] * ... * qk^free[k-1]."""

    torsion: int
    free: tuple
    T: int

    def __post_init__(self):
        if not 0 <= self.torsion < self.T:
            object.__setattr__(self, "torsion", self.torsion % self.T)

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(
            (self.torsion + other.torsion) % self.T,
            tuple(a + b for a, b in zip(self.free, other.free)),
            self.T,
        )

    def inverse(self) -> "GroupElem":
        return GroupElem((-self.torsion) % self.T, tuple(-a for a in self.free), self.T)

    def __truediv__(self, other: "GroupElem") -> "GroupElem":
        return self * other.inverse()

    def __pow__(self, n: int) -> "GroupElem":
        return GroupElem((self.torsion * n) % self.T, tuple(a * n for a in self.free), self.T)

    def is_identity(self) -> bool:
        return self.torsion == 0 and not any(self.free)

    def __str__(self):
        factors = []
        sign = ""
        if self.T == 2 and self.torsion:
            sign = "-"
        elif self.torsion:
            factors.append("z" if self.torsion == 1 else "z^%d" % self.torsion)
        for i, e in enumerate(self.free):
            if e == 1:
                factors.append("q%d" % (i + 1))
            elif e:
                factors.append("q%d^%d" % (i + 1, e))
        return sign + ("*".join(factors) if factors else "1")

    def __repr__(self):
        return "GroupElem(%s)" % self


def parse_group(fld: Field, text: str) -> GroupElem:
    """Parse a product of powers of z and q_i, e.g. ``z^2*q1^-1`` or ``1``."""
    text = text.strip().replace(" ", "")
    torsion = 0
    free = [0] * fld.k
    if text in ("1", ""):
        return fld.group()
    if text.startswith("-"):
        if fld.T % 2:
            raise InvalidInput("-1 is not in the group for T=%d" % fld.T)
        torsion += fld.T // 2
        text = text[1:]
    for factor in text.split("*"):
        base, _, exp = factor.partition("^")
        exp = exp.strip("()")
        try:
            e = int(exp) if exp else 1
        except ValueError as exc:
            raise InvalidInput("bad exponent in group element %r" % factor) from exc
        if base == "z":
            torsion += e
        elif base in ("q",) and fld.k == 1:
            free[0] += e
        elif base.startswith("q") and base[1:].isdigit() and 1 <= int(base[1:]) <= fld.k:
            free[int(base[1:]) - 1] += e
        elif base == "1":
            continue
        else:
            raise InvalidInput("unknown group factor %r" % factor)
    return fld.group(torsion, free)


def embed_power(g: GroupElem, n: int, fld: Field) -> Scalar:
    """The scalar g**n."""
    return fld.embed_power(g, n)


def associated_subgroup(elements, fld: Field) -> list:
    """Generators (in Hermite normal form) of the subgroup generated by ``elements``."""
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    rows = [[g.torsion] + list(g.free) for g in elements]
    rows.append([fld.T] + [0] * fld.k)
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    # column-style HNF of the transpose gives a lattice basis
    mat = Matrix(rows).T
    hnf = hermite_normal_form(mat)
    gens = []
    for col in range(hnf.shape[1]):
        vec = [int(v) for v in hnf[:, col]]
        g = fld.group(vec[0], vec[1:])
        if not g.is_identity():
            gens.append(g)
    return sorted(set(gens), key=lambda g: (g.free, g.torsion))
