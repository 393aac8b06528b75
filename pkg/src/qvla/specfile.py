"""Declarative algebra files (``qvla-spec v1``).

Grammar, one statement per line, ``#`` starts a comment::

    qvla-spec v1
    name <identifier>
    field T=<int> params=<int>
    epsilon <int>
    family <name> [arity=<k>] [window=<lo>..<hi>] [central] [weight=<w>]
    group <g> <g> ...
    structure <a> <b> <alpha> <beta> <i> <j> -> <scalar>: <gen>, <scalar>: <gen>, ...
    relation <scalar>: <term>, <scalar>: <term>, ...

A generator is ``name`` or ``name[p1,p2]``; a relation term is
``[D^n ]<gen>[@<group element>]`` and stands for (z^eps d/dz)^n gen(alpha z).
The first term of a relation is the one it rewrites.  A value of ``0`` is an
empty combination.  Families without ``weight=`` get weight 1.
"""

from __future__ import annotations

import itertools
import re
from pathlib import Path

from .algebra import QVLA, Family, Rule, SchemaError, entry
from .currents import CurrentExpr, GeneratorIndex
from .linear import Vec
from .scalars import InvalidInput, associated_subgroup, field, parse_group

HEADER = "qvla-spec v1"

_GEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\[([-0-9, ]*)\])?$")
_TERM = re.compile(r"^(?:D\^(\d+)\s+)?(\S+?)(?:@(\S+))?$")


class SpecError(InvalidInput):
    def __init__(self, line: int, column: int, message: str):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.name = "spec"
        self.fld = None
        self.epsilon = None
        self.families = {}
        self.windows = {}
        self.group = None
        self.structure = {}
        self.rules = {}

    def fail(self, lineno, line, token, message):
        col = line.find(token) + 1 if token and token in line else 1
        raise SpecError(lineno, col, message)

    def run(self) -> QVLA:
        body = [(i + 1, raw.split("#", 1)[0].rstrip()) for i, raw in enumerate(self.lines)]
        body = [(i, line) for i, line in body if line.strip()]
        if not body or body[0][1].strip() != HEADER:
            lineno = body[0][0] if body else 1
            raise SpecError(lineno, 1, "expected header %r" % HEADER)
        for lineno, line in body[1:]:
            keyword, _, rest = line.strip().partition(" ")
            handler = getattr(self, "do_" + keyword, None)
            if handler is None:
                self.fail(lineno, line, keyword, "unknown statement %r" % keyword)
            if keyword not in ("field", "name") and self.fld is None:
                self.fail(lineno, line, keyword, "the field statement must come first")
            handler(lineno, line, rest.strip())
        if self.fld is None or self.epsilon is None:
            raise SpecError(body[-1][0], 1, "field and epsilon are required")
        if not self.families:
            raise SpecError(body[-1][0], 1, "no families declared")
        return self.build()

    # ---- statements ----------------------------------------------------
    def do_name(self, lineno, line, rest):
        if not re.fullmatch(r"[A-Za-z0-9_.-]+", rest):
            self.fail(lineno, line, rest, "bad name")
        self.name = rest

    def do_field(self, lineno, line, rest):
        opts = self._options(lineno, line, rest)
        try:
            T, k = int(opts.pop("T")), int(opts.pop("params", 0))
        except (KeyError, ValueError):
            self.fail(lineno, line, rest, "field needs T=<int> [params=<int>]")
        if opts:
            self.fail(lineno, line, next(iter(opts)), "unknown field option")
        if T < 1 or k < 0:
            self.fail(lineno, line, rest, "T must be positive and params nonnegative")
        self.fld = field(T, k)

    def do_epsilon(self, lineno, line, rest):
        try:
            self.epsilon = int(rest)
        except ValueError:
            self.fail(lineno, line, rest, "epsilon must be an integer")

    def do_family(self, lineno, line, rest):
        name, _, tail = rest.partition(" ")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name == "D":
            self.fail(lineno, line, name, "bad family name %r" % name)
        if name in self.families:
            self.fail(lineno, line, name, "family %s declared twice" % name)
        central = False
        words = tail.split()
        if "central" in words:
            central = True
            words.remove("central")
        opts = self._options(lineno, line, " ".join(words))
        try:
            arity = int(opts.pop("arity", 0))
            weight = int(opts.pop("weight", 1))
        except ValueError:
            self.fail(lineno, line, tail, "arity and weight must be integers")
        window = None
        if "window" in opts:
            m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", opts.pop("window"))
            if not m:
                self.fail(lineno, line, "window", "window must be <lo>..<hi>")
            window = (int(m.group(1)), int(m.group(2)))
        if opts:
            self.fail(lineno, line, next(iter(opts)), "unknown family option")
        if arity and window is None:
            self.fail(lineno, line, name, "families with parameters need a finite window")
        params = None
        if arity:
            lo, hi = window
            points = list(itertools.product(range(lo, hi + 1), repeat=arity))
            params = lambda radius, points=points: points
            self.windows[name] = window
        self.families[name] = Family(name, arity, central, params, weight)

    def do_group(self, lineno, line, rest):
        gens = []
        for tok in rest.split():
            gens.append(self._group(lineno, line, tok))
        self.group = gens

    def do_structure(self, lineno, line, rest):
        head, arrow, value = rest.partition("->")
        if not arrow:
            self.fail(lineno, line, rest, "structure needs '->'")
        parts = head.split()
        if len(parts) != 6:
            self.fail(lineno, line, head, "structure needs <a> <b> <alpha> <beta> <i> <j>")
        a = self._gen(lineno, line, parts[0])
        b = self._gen(lineno, line, parts[1])
        alpha = self._group(lineno, line, parts[2])
        beta = self._group(lineno, line, parts[3])
        try:
            i, j = int(parts[4]), int(parts[5])
        except ValueError:
            self.fail(lineno, line, parts[4], "i and j must be integers")
        if i < 0 or j < 0:
            self.fail(lineno, line, parts[4], "i and j must be nonnegative")
        terms = {}
        for scalar, tok in self._combination(lineno, line, value):
            g = self._gen(lineno, line, tok)
            terms[g] = terms.get(g, self.fld.zero) + scalar
        self.structure.setdefault((a, b), []).append((lineno, line, alpha, beta, i, j, terms))

    def do_relation(self, lineno, line, rest):
        terms = {}
        head = None
        for scalar, tok in self._combination(lineno, line, rest):
            m = _TERM.match(tok)
            if not m:
                self.fail(lineno, line, tok, "bad relation term %r" % tok)
            n = int(m.group(1) or 0)
            g = self._gen(lineno, line, m.group(2))
            alpha = self._group(lineno, line, m.group(3)) if m.group(3) else self.fld.identity()
            key = (g, alpha, n)
            head = head or key
            terms[key] = terms.get(key, self.fld.zero) + scalar
        if head is None or not terms.get(head):
            self.fail(lineno, line, rest, "relation needs a nonzero leading term")
        if self.epsilon is None:
            self.fail(lineno, line, "relation", "epsilon must be declared before relations")
        expr = CurrentExpr(self.fld, self.epsilon, terms)
        self.rules.setdefault(head[:2], []).append(Rule(head, expr))

    # ---- tokens --------------------------------------------------------
    def _options(self, lineno, line, text):
        opts = {}
        for tok in text.split():
            key, eq, val = tok.partition("=")
            if not eq:
                self.fail(lineno, line, tok, "expected key=value, got %r" % tok)
            opts[key] = val
        return opts

    def _gen(self, lineno, line, tok):
        tok = tok.strip()
        m = _GEN.match(tok)
        if not m:
            self.fail(lineno, line, tok, "bad generator %r" % tok)
        name = m.group(1)
        fam = self.families.get(name)
        if fam is None:
            self.fail(lineno, line, tok, "undeclared family %r" % name)
        params = tuple(int(p) for p in m.group(2).split(",")) if m.group(2) else ()
        if len(params) != fam.arity:
            self.fail(lineno, line, tok, "%s takes %d parameters" % (name, fam.arity))
        if params:
            lo, hi = self.windows[name]
            if any(not lo <= p <= hi for p in params):
                self.fail(lineno, line, tok, "%s lies outside the declared window" % tok)
        return GeneratorIndex(name, params)

    def _group(self, lineno, line, tok):
        try:
            g = parse_group(self.fld, tok)
        except InvalidInput as exc:
            self.fail(lineno, line, tok, str(exc))
        if self.group is not None and not _in_subgroup(g, self.group, self.fld):
            self.fail(lineno, line, tok, "%s is not in the declared group" % tok)
        return g

    def _combination(self, lineno, line, text):
        text = text.strip()
        if text == "0":
            return []
        out = []
        for piece in _split_top(text):
            scalar, colon, tok = piece.rpartition(":")
            if not colon:
                self.fail(lineno, line, piece, "expected <scalar>: <symbol>")
            try:
                c = self.fld.parse(scalar.strip())
            except InvalidInput as exc:
                self.fail(lineno, line, scalar.strip(), str(exc))
            out.append((c, tok.strip()))
        return out

    # ---- assembly ------------------------------------------------------
    def build(self) -> QVLA:
        fld = self.fld
        table = {}
        for key, rows in self.structure.items():
            entries = []
            for lineno, line, alpha, beta, i, j, terms in rows:
                entries.append(entry(fld, alpha, beta, i, j, Vec(fld, terms)))
            table[key] = entries
        rules = dict(self.rules)
        for (a, _alpha), lst in rules.items():
            for rule in lst:
                if rule.expr.twist != self.epsilon:
                    raise SchemaError("relation twist does not match epsilon")
        return QVLA(
            name=self.name,
            field=fld,
            epsilon=self.epsilon,
            families=dict(self.families),
            structure=lambda alg, a, b: list(table.get((a, b), [])),
            rules=lambda alg, a, alpha: list(rules.get((a, alpha), [])),
            group_generators=self.group,
            group_radius=2,
        )


def _split_top(text: str) -> list:
    """Split on commas that are not inside parentheses or brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p for p in (s.strip() for s in out) if p]


def _in_subgroup(g, gens, fld) -> bool:
    return associated_subgroup(list(gens) + [g], fld) == associated_subgroup(list(gens), fld)


def parse_spec_text(text: str) -> QVLA:
    return _Parser(text).run()


def parse_spec(path) -> QVLA:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput("cannot read %s: %s" % (path, exc)) from exc
    return parse_spec_text(text)
