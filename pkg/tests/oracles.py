"""Independent oracles for the delta calculus, shared by unit and acceptance tests."""

from math import factorial

from qvla.currents import CurrentExpr, DeltaTerm, GeneratorIndex, LaurentWindow, apply_zeta_derivative, expand_delta_terms

TWISTS = (-1, 0, 1, 2)
RADIUS = 6


def base_series(fld, t, outer, inner, ranges):
    """Window of outer^(t-1) delta(inner / outer) summed term by term.

    ``outer`` and ``inner`` are (variable index, group element) pairs; the
    result is the plain sum over n of inner^n outer^(-n+t-1).
    """
    (vo, go), (vi, gi) = outer, inner
    win = LaurentWindow(("w", "z"), ranges)
    lo, hi = ranges[vi]
    for n in range(lo, hi + 1):
        key = [0, 0]
        key[vi] = n
        key[vo] = -n + t - 1
        win.add(tuple(key), fld.embed_power(gi, n) * fld.embed_power(go, -n + t - 1))
    return win


def divided_derivative(win, t, i, var_index):
    out = apply_zeta_derivative(win, t, i, var_index)
    return LaurentWindow(out.variables, out.ranges, {k: v / factorial(i) for k, v in out.cells.items()})


def inner_window(t, i):
    # every derivative shifts one range by t-1; this box sits inside all shifts
    s = i * (t - 1)
    lo, hi = -RADIUS + max(0, s), RADIUS + min(0, s)
    return ((lo, hi), (lo, hi))


def wide():
    return ((-3 * RADIUS, 3 * RADIUS), (-3 * RADIUS, 3 * RADIUS))


def scaled(win, c):
    return LaurentWindow(win.variables, win.ranges, {k: v * c for k, v in win.cells.items()})


def group_samples(fld):
    q, one = fld.q_elem(1), fld.identity()
    z = fld.zeta_elem()
    gens = [one, q, z, q * z]
    return [(a, b) for a in gens for b in gens] + [(q ** 2, q.inverse())]


def random_terms(fld, rng, t, n):
    gens = [GeneratorIndex("u"), GeneratorIndex("v")]
    lams = [fld.identity(), fld.q_elem(1), fld.zeta_elem()]
    atoms = [fld.one, fld.q(1), fld.zeta(), fld(2)]
    out = []
    for _ in range(n):
        coeff = CurrentExpr(fld, t, {
            (rng.choice(gens), rng.choice(lams), rng.randrange(2)): rng.choice(atoms) * rng.choice([1, -1, 3]),
        })
        out.append(DeltaTerm(coeff, rng.randrange(3), rng.choice(lams), t))
    return out


def expand_map(mapping, t, ranges):
    return expand_delta_terms([DeltaTerm(c, i, lam, t) for (i, lam), c in mapping.items()], *ranges)
