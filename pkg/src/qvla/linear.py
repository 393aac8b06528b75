"""Sparse exact vectors and incremental row echelon forms."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .scalars import Field, Scalar


class Vec:
    """Finite Scalar-combination of hashable, orderable keys."""

    __slots__ = ("field", "terms")

    def __init__(self, fld: Field, terms=None):
        self.field = fld
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                self._accumulate(key, c)

    def _accumulate(self, key, c):
        if not isinstance(c, Scalar):
            c = self.field(c)
        if not c:
            return
        old = self.terms.get(key)
        if old is None:
            self.terms[key] = c
        else:
            new = old + c
            if new:
                self.terms[key] = new
            else:
                del self.terms[key]

    @classmethod
    def single(cls, fld: Field, key, c=1) -> "Vec":
        v = cls(fld)
        v._accumulate(key, c)
        return v

    def copy(self) -> "Vec":
        v = Vec(self.field)
        v.terms = dict(self.terms)
        return v

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def keys(self):
        return sorted(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __getitem__(self, key) -> Scalar:
        return self.terms.get(key, self.field.zero)

    def __add__(self, other: "Vec") -> "Vec":
        v = self.copy()
        for key, c in other.terms.items():
            v._accumulate(key, c)
        return v

    def __sub__(self, other: "Vec") -> "Vec":
        v = self.copy()
        for key, c in other.terms.items():
            v._accumulate(key, -c)
        return v

    def __neg__(self) -> "Vec":
        v = Vec(self.field)
        v.terms = {k: -c for k, c in self.terms.items()}
        return v

    def scale(self, c) -> "Vec":
        if not isinstance(c, Scalar):
            c = self.field(c)
        if not c:
            return Vec(self.field)
        if c.is_one():
            return self.copy()
        v = Vec(self.field)
        v.terms = {k: x * c for k, x in self.terms.items()}
        return v

    def add_scaled(self, other: "Vec", c) -> None:
        """In-place ``self += c * other``."""
        if not isinstance(c, Scalar):
            c = self.field(c)
        if not c:
            return
        for key, x in other.terms.items():
            self._accumulate(key, x * c)

    def map_keys(self, fn: Callable) -> "Vec":
        """Apply ``fn(key) -> iterable of (new_key, scalar)`` linearly."""
        out = Vec(self.field)
        for key, c in self.terms.items():
            for new_key, d in fn(key):
                out._accumulate(new_key, c * d)
        return out

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "Vec(%s)" % self

    def __str__(self):
        return format_combination(self.items())


def format_combination(items, fmt_key=str) -> str:
    if not items:
        return "0"
    parts = []
    for key, c in items:
        text = str(c)
        key_text = fmt_key(key)
        if c.is_one():
            body = key_text
        elif c == -1:
            body = "-" + key_text
        else:
            if c.den != 1 or len(c.num) > 1:
                text = "(" + text + ")"
            body = "%s*%s" % (text, key_text)
        parts.append(body)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class Echelon:
    """Incrementally built echelon basis supporting normal forms.

    ``priority(key)`` orders keys; the pivot of each stored row is its key of
    highest priority, so high-priority keys are the ones eliminated.
    """

    def __init__(self, fld: Field, priority: Callable[[Hashable], object] = None):
        self.field = fld
        self.priority = priority or (lambda k: k)
        self.rows = {}

    def _pivot(self, v: Vec):
        return max(v.terms, key=self.priority)

    def reduce(self, v: Vec) -> Vec:
        v = v.copy()
        while True:
            hits = [k for k in v.terms if k in self.rows]
            if not hits:
                return v
            k = max(hits, key=self.priority)
            v.add_scaled(self.rows[k], -v.terms[k])

    def insert(self, v: Vec) -> bool:
        """Add ``v`` to the span; return True if the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        p = self._pivot(v)
        v = v.scale(v.terms[p].inverse())
        for key, row in list(self.rows.items()):
            c = row.terms.get(p)
            if c:
                row.add_scaled(v, -c)
        self.rows[p] = v
        return True

    def extend(self, vs: Iterable[Vec]) -> int:
        return sum(1 for v in vs if self.insert(v))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows, key=self.priority)
