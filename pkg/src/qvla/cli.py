"""Command-line interface: ``qvla <command> [options]``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for input
errors.  Reports are plain text with one line per instance, or JSON with
``--json``; both are byte-identical across runs for identical inputs.
Independent checks run on up to ``QVLA_THREADS`` worker threads and are
reported in a fixed order.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from .algebra import (
    Mode,
    check_jacobi,
    check_maximality,
    check_reconstruction,
    check_skew_symmetry,
    check_zeta_lie_axioms,
    current_bracket,
    gamma_bracket,
    lie_str,
    zeta_mode_bracket,
)
from .currents import DeltaTerm
from .enveloping import Envelope, check_gamma_epsilon_axiom, check_vertex_axioms
from .families import example
from .isomorphisms import check_example_isomorphism
from .modules import (
    affine_induced_module,
    check_equi_commutator,
    check_equivariance,
    check_phi_associativity,
    fock_module,
)
from .scalars import InvalidInput
from .specfile import parse_spec

EXAMPLE_NAMES = ["abelian", "affine", "klein", "qheis", "qtorus", "vlike"]

DEFAULTS = """\b
Default windows (recorded in every report header):
  validate      family radius 3 (skew, Jacobi); maximality family radius 1, --window 4
  bracket       generator radius --window 1
  zeta, gamma   generator radius 1, mode radius --window 2
  envelope      PBW degree --depth 4 (vertex axioms), 3 (Gamma action), mode window --window 3
  module-check  mode window --window 4, z0-order --order 4 (qheis) or 3 (affine)
  iso-check     family and mode windows of each comparison, --window overrides the mode radius
"""


def threads() -> int:
    try:
        return max(1, int(os.environ.get("QVLA_THREADS", "1")))
    except ValueError:
        return 1


def run_all(tasks) -> list:
    """Run zero-argument callables, returning results in task order."""
    n = threads()
    if n == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda t: t(), tasks))


class Context:
    def __init__(self, example_name, spec, epsilon, as_json):
        self.example_name = example_name
        self.spec = spec
        self.epsilon = epsilon
        self.as_json = as_json

    def algebra(self):
        if bool(self.example_name) == bool(self.spec):
            raise InvalidInput("give exactly one of --example or --spec")
        if self.spec:
            return parse_spec(self.spec)
        return example(self.example_name, self.epsilon)


def emit(ctx: Context, reports, extra_lines=()):
    if ctx.as_json:
        payload = {"lines": list(extra_lines), "reports": [r.as_dict() for r in reports],
                   "passed": all(r.passed for r in reports)}
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        for line in extra_lines:
            click.echo(line)
        for r in reports:
            click.echo(r.text())
    return 0 if all(r.passed for r in reports) else 1


def common(f):
    f = click.option("--json", "as_json", is_flag=True, help="Emit a stable JSON document.")(f)
    f = click.option("--epsilon", type=int, default=None, help="Twist for examples that take one.")(f)
    f = click.option("--spec", "spec", type=click.Path(), default=None, help="Algebra file (qvla-spec v1).")(f)
    f = click.option("--example", "example_name", type=click.Choice(EXAMPLE_NAMES), default=None,
                     help="Built-in example.")(f)
    return f


def guarded(fn):
    """Map input errors to exit code 2 and verdicts to 0/1."""

    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except InvalidInput as exc:
            click.echo("error: %s" % exc, err=True)
            sys.exit(2)
        sys.exit(code)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group(epilog=DEFAULTS, context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Verification tool for quasi vertex Lie algebras and their twisted mode algebras."""


@main.command(epilog=DEFAULTS)
@common
@click.option("--window", type=int, default=4, show_default=True, help="Mode radius for maximality.")
@click.option("--family-radius", type=int, default=3, show_default=True, help="Family radius for skew and Jacobi.")
@guarded
def validate(example_name, spec, epsilon, as_json, window, family_radius):
    """Skew-symmetry, Jacobi identity and maximality of the relations."""
    ctx = Context(example_name, spec, epsilon, as_json)
    alg = ctx.algebra()
    reports = run_all([
        lambda: check_skew_symmetry(alg, family_radius),
        lambda: check_jacobi(alg, family_radius),
        lambda: check_maximality(alg, 1, window),
    ])
    return emit(ctx, reports)


def _delta_line(term: DeltaTerm) -> str:
    return "  + (%s) * Delta^(%d)(z, %s*w)" % (term.coeff, term.i, term.lam)


@main.command(epilog=DEFAULTS)
@common
@click.option("--window", type=int, default=1, show_default=True, help="Generator radius.")
@guarded
def bracket(example_name, spec, epsilon, as_json, window):
    """Structure entries and canonical delta decompositions of generator brackets."""
    ctx = Context(example_name, spec, epsilon, as_json)
    alg = ctx.algebra()
    one = alg.field.identity()
    lines = ["# brackets of %s [generator radius %d]" % (alg.name, window)]
    gens = alg.generators(window)
    for a in gens:
        for b in gens:
            entries = alg.entries(a, b)
            if not entries:
                continue
            lines.append("[%s(z), %s(w)]" % (a, b))
            for e in entries:
                lines.append("  entry alpha=%s beta=%s i=%d j=%d : %s" % (e.alpha, e.beta, e.i, e.j, lie_str(e.value)))
            for term in current_bracket(alg, a, one, b, one):
                lines.append(_delta_line(term))
    return emit(ctx, [], lines)


def _mode_lines(alg, zeta, window, bracket_fn, twist):
    one = alg.field.identity()
    lines = []
    gens = [a for a in alg.generators(1) if not alg.is_central(a)]
    for a in gens:
        for b in gens:
            for m in range(-window, window + 1):
                for n in range(-window, window + 1):
                    x, y = Mode(a, one, m, twist), Mode(b, one, n, twist)
                    value = bracket_fn(x, y)
                    if value:
                        lines.append("[%s, %s] = %s" % (x, y, lie_str(value)))
    return lines


@main.command(epilog=DEFAULTS)
@common
@click.option("--zeta", type=int, default=0, show_default=True)
@click.option("--window", type=int, default=2, show_default=True, help="Mode radius.")
@guarded
def zeta(example_name, spec, epsilon, as_json, zeta, window):
    """Mode brackets of g^zeta and their Lie axioms."""
    ctx = Context(example_name, spec, epsilon, as_json)
    alg = ctx.algebra()
    lines = ["# g^%d mode brackets of %s [mode radius %d]" % (zeta, alg.name, window)]
    lines += _mode_lines(alg, zeta, window, lambda x, y: zeta_mode_bracket(alg, zeta, x, y), zeta)
    return emit(ctx, [check_zeta_lie_axioms(alg, zeta)], lines)


@main.command(epilog=DEFAULTS)
@common
@click.option("--window", type=int, default=2, show_default=True, help="Mode radius.")
@guarded
def gamma(example_name, spec, epsilon, as_json, window):
    """Brackets of the Gamma quotient and the reconstruction check."""
    ctx = Context(example_name, spec, epsilon, as_json)
    alg = ctx.algebra()
    lines = ["# Gamma-quotient brackets of %s [mode radius %d]" % (alg.name, window)]
    lines += _mode_lines(alg, alg.epsilon, window, lambda x, y: gamma_bracket(alg, x, y), alg.epsilon)
    return emit(ctx, [check_reconstruction(alg, 1, window)], lines)


@main.command(epilog=DEFAULTS)
@common
@click.option("--depth", type=int, default=4, show_default=True, help="PBW degree of sampled vectors.")
@click.option("--window", type=int, default=3, show_default=True, help="Mode window |n|.")
@guarded
def envelope(example_name, spec, epsilon, as_json, depth, window):
    """Vertex algebra axioms of V_{g^0} and the (Gamma, epsilon) action."""
    ctx = Context(example_name, spec, epsilon, as_json)
    alg = ctx.algebra()
    reports = run_all([
        lambda: check_vertex_axioms(Envelope(alg), degree=depth, mode_radius=window),
        lambda: check_gamma_epsilon_axiom(Envelope(alg), degree=min(depth, 3), mode_radius=window),
    ])
    return emit(ctx, reports)


@main.command("module-check", epilog=DEFAULTS)
@common
@click.option("--window", type=int, default=4, show_default=True, help="Mode window.")
@click.option("--order", type=int, default=None, help="z0-order for associativity.")
@guarded
def module_check(example_name, spec, epsilon, as_json, window, order):
    """Equivariance, equi-commutator and phi-associativity on the built-in module."""
    ctx = Context(example_name, spec, epsilon, as_json)
    if spec or example_name not in ("qheis", "affine"):
        raise InvalidInput("module-check is available for --example qheis and --example affine")
    if example_name == "qheis":
        mod, default_order = fock_module(), 4
    else:
        mod, default_order = affine_induced_module(epsilon=0 if epsilon is None else epsilon), 3
    order = default_order if order is None else order
    one = mod.field.identity()
    gen = next(a for a in mod.alg.generators(0) if not mod.alg.is_central(a))
    x = Mode(gen, one, -1, 0)
    reports = run_all([
        lambda: check_equivariance(mod, mode_radius=window),
        lambda: check_equi_commutator(mod, mode_radius=window),
        lambda: check_phi_associativity(mod, x, x, order=order, mode_radius=window),
    ])
    return emit(ctx, reports)


@main.command("iso-check", epilog=DEFAULTS)
@common
@click.option("--zeta", type=int, default=0, show_default=True)
@click.option("--window", type=int, default=None, help="Mode radius of the comparison.")
@guarded
def iso_check(example_name, spec, epsilon, as_json, zeta, window):
    """Compare g^zeta of a built-in example with its explicit model."""
    ctx = Context(example_name, spec, epsilon, as_json)
    if spec or example_name not in ("affine", "qtorus", "qheis", "vlike", "klein"):
        raise InvalidInput("iso-check needs --example affine, qtorus, qheis, vlike or klein")
    opts = {}
    if window is not None:
        opts["mode_radius"] = window
    if epsilon is not None and example_name in ("affine", "qtorus"):
        opts["epsilon"] = epsilon
    return emit(ctx, [check_example_isomorphism(example_name, zeta, **opts)])


if __name__ == "__main__":
    main()
