"""Dict-based reference evaluation of both sides of the Stokes identity.

Works point by point with Octonion objects and never touches the package's
array kernels, Field operators or index-set machinery. Exact mode, h = 1.
"""
import itertools

from octo_stokes import Octonion, multiply

FANO = [{1, 2, 4}, {1, 3, 5}, {1, 6, 7}, {2, 3, 6}, {2, 5, 7}, {3, 4, 7}, {4, 5, 6}]
ZERO = Octonion.zero()
E = [Octonion.basis(i) for i in range(8)]


def _shift(m, j, s):
    return tuple(x + s if d == j else x for d, x in enumerate(m))


def _neighbourhood(*dicts):
    pts = set()
    for d in dicts:
        for m in d:
            pts.add(m)
            for j in range(8):
                pts.add(_shift(m, j, 1))
                pts.add(_shift(m, j, -1))
    return sorted(pts)


def lhs(g, f):
    """sum_m [(g D+)(m) f(m) + g(m)(D- f)(m)] for dicts m -> Octonion."""
    total = ZERO
    for m in _neighbourhood(g, f):
        gm, fm = g.get(m, ZERO), f.get(m, ZERO)
        g_dplus = ZERO
        dminus_f = ZERO
        for j in range(8):
            g_dplus = g_dplus + multiply(g.get(_shift(m, j, 1), ZERO) - gm, E[j])
            dminus_f = dminus_f + multiply(E[j], fm - f.get(_shift(m, j, -1), ZERO))
        total = total + multiply(g_dplus, fm) + multiply(gm, dminus_f)
    return total


def lhs_first_left_bracketed(g, f):
    """sum_m sum_{i,j,k} (forward_j g_i) f_k (e_i e_j) e_k, from Octonion products."""
    total = ZERO
    for m in _neighbourhood(g, f):
        gm, fm = g.get(m, ZERO), f.get(m, ZERO)
        for i, j, k in itertools.product(range(8), repeat=3):
            d = g.get(_shift(m, j, 1), ZERO)[i] - gm[i]
            c = d * fm[k]
            if c:
                total = total + c * multiply(multiply(E[i], E[j]), E[k])
    return total


def rhs(g, f):
    """2 sum_m sum_s sum_{i in I_s} sum_{j in I_s - i} sum_{k not in I_s} g_i (backward_j f_k) e_i(e_j e_k)."""
    total = ZERO
    for m in _neighbourhood(g, f):
        gm, fm = g.get(m, ZERO), f.get(m, ZERO)
        for line in FANO:
            for i in line:
                for j in line - {i}:
                    for k in set(range(1, 8)) - line:
                        c = gm[i] * (fm[k] - f.get(_shift(m, j, -1), ZERO)[k])
                        if c:
                            total = total + (2 * c) * multiply(E[i], multiply(E[j], E[k]))
    return total
