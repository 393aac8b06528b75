"""Formal currents, twisted delta functions and their window expansions.

Notation used throughout the package:

* ``P(i, n, t)`` is the falling product prod_{s<i} (n + s(t-1)); applying
  (w^t d/dw)^i to w^n gives ``P(i, n, t) * w^(n + i(t-1))``.
* ``Q(j, p, t)`` is prod_{s<j} (-p + (s+1)(t-1)); it is the factor picked up
  by mode p when (z^t d/dz)^j acts on a current sum_m a(m) z^(-m+t-1).
* ``delta(i, t, lam)`` denotes (1/i!)(w^t d/dw)^i z^(t-1) delta(lam w / z),
  whose coefficient at w^(n+i(t-1)) z^(-n+t-1) is lam^n P(i, n, t) / i!.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .linear import Vec, format_combination
from .scalars import Field, GroupElem, InvalidInput, Scalar


class ContractError(ValueError):
    """Raised when an operation is applied outside its declared contract."""


def P(i: int, n: int, t: int) -> int:
    out = 1
    for s in range(i):
        out *= n + s * (t - 1)
    return out


def Q(j: int, p: int, t: int) -> int:
    out = 1
    for s in range(j):
        out *= -p + (s + 1) * (t - 1)
    return out


def binom(m: int, i: int) -> Scalar | int:
    """Generalized binomial coefficient m(m-1)...(m-i+1)/i! (an integer)."""
    if i < 0:
        return 0
    num = 1
    for s in range(i):
        num *= m - s
    return num // factorial(i)


@dataclass(frozen=True, order=True)
class GeneratorIndex:
    family: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.family
        return "%s[%s]" % (self.family, ",".join(str(p) for p in self.params))


class CurrentExpr:
    """sum of mu * (z^t d/dz)^n a(alpha z) over terms keyed by (a, alpha, n)."""

    __slots__ = ("vec", "twist")

    def __init__(self, fld: Field, twist: int, terms=None):
        self.vec = terms if isinstance(terms, Vec) else Vec(fld, terms)
        self.twist = twist

    @property
    def field(self):
        return self.vec.field

    @classmethod
    def current(cls, fld: Field, twist: int, a: GeneratorIndex, alpha: GroupElem, n: int = 0, mu=1):
        return cls(fld, twist, {(a, alpha, n): mu})

    def terms(self):
        """Sorted list of ((a, alpha, n), mu)."""
        return self.vec.items()

    def _check(self, other: "CurrentExpr"):
        if self.twist != other.twist:
            raise ContractError("current expressions with different twists")

    def __add__(self, other):
        self._check(other)
        return CurrentExpr(self.field, self.twist, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        return CurrentExpr(self.field, self.twist, self.vec - other.vec)

    def __neg__(self):
        return CurrentExpr(self.field, self.twist, -self.vec)

    def scale(self, c):
        return CurrentExpr(self.field, self.twist, self.vec.scale(c))

    def __bool__(self):
        return bool(self.vec)

    def __eq__(self, other):
        if not isinstance(other, CurrentExpr):
            return NotImplemented
        return self.twist == other.twist and self.vec == other.vec

    def __hash__(self):
        return hash((self.twist, self.vec))

    def derivative(self, twist: int, times: int = 1) -> "CurrentExpr":
        if twist != self.twist:
            raise ContractError("derivative twist %d does not match expression twist %d" % (twist, self.twist))
        if times == 0:
            return self
        return CurrentExpr(
            self.field, self.twist, self.vec.map_keys(lambda k: [((k[0], k[1], k[2] + times), 1)])
        )

    def mode(self, M: int):
        """Coefficient of z^(-M+t-1) as a list of ((a, alpha, p), scalar)."""
        t = self.twist
        out = []
        for (a, alpha, n), mu in self.vec.items():
            p = M + n * (t - 1)
            c = Q(n, p, t)
            if c:
                out.append(((a, alpha, p), mu * c))
        return out

    def __str__(self):
        def fmt(key):
            a, alpha, n = key
            body = "%s(%sz)" % (a, "" if alpha.is_identity() else "%s*" % alpha)
            return body if n == 0 else "D^%d %s" % (n, body)

        return format_combination(self.terms(), fmt)

    __repr__ = __str__


@dataclass(frozen=True)
class DeltaTerm:
    """coeff(w) * delta(i, twist, lam) in the canonical w-derivative basis."""

    coeff: CurrentExpr
    i: int
    lam: GroupElem
    twist: int

    def __str__(self):
        return "(%s) * Delta^(%d)_{w,%d}(z, %s*w)" % (self.coeff, self.i, self.twist, self.lam)


class LaurentWindow:
    """Finite table of Laurent coefficients with explicit ranges.

    Entries outside ``ranges`` are unknown, not zero.  ``cells`` maps exponent
    tuples to values (Scalars or Vecs); zero values are dropped.
    """

    __slots__ = ("variables", "ranges", "cells")

    def __init__(self, variables, ranges, cells=None):
        self.variables = tuple(variables)
        self.ranges = tuple(tuple(r) for r in ranges)
        self.cells = {}
        for key, v in (cells or {}).items():
            self.add(key, v)

    def contains(self, key) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(key, self.ranges))

    def add(self, key, value):
        if not self.contains(key):
            return
        old = self.cells.get(key)
        new = value if old is None else old + value
        if _is_zero(new):
            self.cells.pop(key, None)
        else:
            self.cells[key] = new

    def get(self, key, default=None):
        if not self.contains(key):
            raise KeyError("cell %r lies outside the window %r" % (key, self.ranges))
        return self.cells.get(key, default)

    def __add__(self, other):
        self._same_shape(other)
        out = LaurentWindow(self.variables, self.ranges, self.cells)
        for k, v in other.cells.items():
            out.add(k, v)
        return out

    def __sub__(self, other):
        self._same_shape(other)
        out = LaurentWindow(self.variables, self.ranges, self.cells)
        for k, v in other.cells.items():
            out.add(k, -v)
        return out

    def _same_shape(self, other):
        if self.variables != other.variables or self.ranges != other.ranges:
            raise ContractError("windows with different shapes")

    def restrict(self, ranges):
        ranges = tuple(tuple(r) for r in ranges)
        for (lo, hi), (olo, ohi) in zip(ranges, self.ranges):
            if lo < olo or hi > ohi:
                raise ContractError("restriction must lie inside the window")
        return LaurentWindow(self.variables, ranges, self.cells)

    def is_zero(self) -> bool:
        return not self.cells

    def __eq__(self, other):
        if not isinstance(other, LaurentWindow):
            return NotImplemented
        return self.variables == other.variables and self.ranges == other.ranges and self.cells == other.cells

    def items(self):
        return sorted(self.cells.items())

    def first_cell(self):
        items = self.items()
        return items[0] if items else None


def _is_zero(v) -> bool:
    if isinstance(v, (Scalar, Vec)):
        return not v
    return v == 0


def _span(lo, hi):
    return range(lo, hi + 1)


def raw_delta_expand(
    fld: Field, i: int, twist: int, alpha: GroupElem, beta: GroupElem, var: str, w_range, z_range
) -> LaurentWindow:
    """Window of (1/i!)(x^t d/dx)^i (alpha z)^(t-1) delta(beta w / (alpha z)), x = var."""
    win = LaurentWindow(("w", "z"), (w_range, z_range))
    fi = factorial(i)
    if var == "w":
        ns = [-ez + twist - 1 for ez in _span(*z_range)]
    elif var == "z":
        ns = list(_span(*w_range))
    else:
        raise InvalidInput("derivative variable must be 'w' or 'z'")
    for n in ns:
        if var == "w":
            c = P(i, n, twist)
            key = (n + i * (twist - 1), -n + twist - 1)
        else:
            c = Q(i, n, twist)
            key = (n, -n + twist - 1 + i * (twist - 1))
        if c and win.contains(key):
            base = fld.embed_power(beta, n) * fld.embed_power(alpha, -n + twist - 1)
            win.add(key, base * c / fi)
    return win


def delta_expand(fld: Field, i: int, twist: int, lam: GroupElem, w_range, z_range) -> LaurentWindow:
    """Window of delta(i, twist, lam) = (1/i!)(w^t d/dw)^i z^(t-1) delta(lam w / z)."""
    return raw_delta_expand(fld, i, twist, fld.identity(), lam, "w", w_range, z_range)


def delta_normalize(coeff: CurrentExpr, i: int, alpha: GroupElem, beta: GroupElem, var: str = "w") -> DeltaTerm:
    """Rewrite coeff * Delta^(i)_{var,t}(alpha z, beta w) into the canonical basis.

    The argument order does not matter: Delta(beta w, alpha z) is the same
    series as Delta(alpha z, beta w).
    """
    fld = coeff.field
    t = coeff.twist
    c = fld.one
    if var == "z":
        # Delta_z = (-1)^i (alpha/beta)^(-i(t-1)) Delta_w
        c = c * fld.embed_power(alpha / beta, -i * (t - 1)) * (-1) ** i
    elif var != "w":
        raise InvalidInput("derivative variable must be 'w' or 'z'")
    c = c * fld.embed_power(alpha, t - 1)
    return DeltaTerm(coeff.scale(c), i, beta / alpha, t)


def apply_zeta_derivative(target, twist: int, times: int, var_index: int = 0):
    """(x^t d/dx)^times applied to a window (in variable ``var_index``) or a CurrentExpr."""
    if isinstance(target, CurrentExpr):
        return target.derivative(twist, times)
    if times == 0:
        return target
    shift = twist - 1
    ranges = list(target.ranges)
    lo, hi = ranges[var_index]
    ranges[var_index] = (lo + shift, hi + shift)
    out = LaurentWindow(target.variables, ranges)
    for key, v in target.cells.items():
        e = key[var_index]
        if e == 0:
            continue
        new = list(key)
        new[var_index] = e + shift
        out.add(tuple(new), v * e if not isinstance(v, Vec) else v.scale(e))
    return apply_zeta_derivative(out, twist, times - 1, var_index)


def collect_delta_coefficients(terms: Iterable[DeltaTerm]) -> dict:
    """Merge terms with equal (i, lam); drop zero coefficients."""
    out = {}
    twist = None
    for term in terms:
        if twist is None:
            twist = term.twist
        elif term.twist != twist:
            raise ContractError("delta terms with different twists")
        key = (term.i, term.lam)
        out[key] = out[key] + term.coeff if key in out else term.coeff
    return {k: v for k, v in sorted(out.items()) if v}


def expand_delta_terms(terms: Iterable[DeltaTerm], w_range, z_range) -> LaurentWindow:
    """Expand sum coeff(w) * delta(i, t, lam) on a window.

    Cells are Vecs over formal mode symbols (a, alpha, p), where the current
    a^alpha(w) = sum_p a^alpha(p) w^(-p+t-1).
    """
    win = LaurentWindow(("w", "z"), (w_range, z_range))
    for term in terms:
        fld = term.coeff.field
        t = term.twist
        fi = factorial(term.i)
        for ez in _span(*z_range):
            n = -ez + t - 1
            dc = fld.embed_power(term.lam, n) * P(term.i, n, t) / fi
            if not dc:
                continue
            for ew in _span(*w_range):
                # coeff(w) must supply w^(ew - n - i(t-1)) = w^(-M+t-1)
                M = -(ew - n - term.i * (t - 1)) + t - 1
                modes = term.coeff.mode(M)
                if modes:
                    win.add((ew, ez), Vec(fld, modes).scale(dc))
    return win
