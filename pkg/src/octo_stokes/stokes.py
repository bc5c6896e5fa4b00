"""Both sides of the discrete octonionic Stokes identity on hZ^8.

For finitely supported fields g and f,

    sum_m [ (g D+)(m) f(m) + g(m) (D- f)(m) ] h^8
        = 2 sum_m sum_s sum_{i in I_s} sum_{j in I_s, j != i} sum_{k not in I_s}
              g_i(m) (backward_j f_k)(m) e_i (e_j e_k) h^8

where I_1..I_7 are the lines of the Fano plane of the multiplication table.

Three evaluators are kept deliberately separate so that a sign slip in one
cannot hide in another:

* ``stokes_lhs`` uses the difference operators and whole-octonion products.
* ``correction_term`` uses scalar components, the index sets and table lookups.
* ``correction_oracle`` uses the associator of basis elements and the
  associativity classification, never the index sets.
"""
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._scalars import Mode, max_abs, with_headroom, zeros
from .lattice import (
    DIM,
    backward_diff,
    cr_backward_left,
    cr_forward_right,
    forward_diff,
    pointwise_product,
    reduce_rows,
    volume_sum,
)
from .octonion import (
    Associativity,
    Octonion,
    associator,
    basis_product,
    classify_basis_triple,
    enumerate_fano_lines,
    norm_sq,
)

__all__ = [
    "INDEX_SETS",
    "IdentityViolation",
    "StokesResult",
    "correction_oracle",
    "correction_term",
    "index_sets",
    "lhs_component_expansion",
    "stokes_lhs",
    "stokes_residual",
]

INDEX_SETS = (
    frozenset({1, 2, 4}),
    frozenset({1, 3, 5}),
    frozenset({1, 6, 7}),
    frozenset({2, 3, 6}),
    frozenset({2, 5, 7}),
    frozenset({3, 4, 7}),
    frozenset({4, 5, 6}),
)


class IdentityViolation(AssertionError):
    """Two evaluators that must agree exactly did not."""


def index_sets():
    """The Fano lines of the table, ordered by their sorted members.

    Raises IdentityViolation if they differ from ``INDEX_SETS``.
    """
    lines = tuple(sorted(enumerate_fano_lines(), key=sorted))
    if set(lines) != set(INDEX_SETS):
        raise IdentityViolation(f"table lines {lines} differ from {INDEX_SETS}")
    return lines


def _check_pair(g, f):
    g._compatible(f)
    return g.mode, g.h


def stokes_lhs(g, f):
    """sum_m [ (g D+)(m) f(m) + g(m) (D- f)(m) ] h^8."""
    _check_pair(g, f)
    first = pointwise_product(cr_forward_right(g), f)
    second = pointwise_product(g, cr_backward_left(f))
    return volume_sum(first + second)


def _backward_at(f, points):
    """(N, 8, 8) array: [n, j, k] = backward difference along j of f_k at points[n]."""
    return np.stack([backward_diff(f, j).values_at(points) for j in range(DIM)], axis=1)


def correction_term(g, f):
    """Right-hand side: the associator correction summed over the Fano index sets."""
    mode, h = _check_pair(g, f)
    if len(g) == 0:
        return Octonion.zero(mode)
    G = g.values
    D = _backward_at(f, g.points)
    if mode is Mode.EXACT:
        G, D = with_headroom(2 * 168 * max_abs(G) * max_abs(D), G, D)
    out = zeros((len(G), DIM), mode, like=(G, D))
    for line in index_sets():
        for i in sorted(line):
            for j in sorted(line - {i}):
                for k in range(1, 8):
                    if k in line:
                        continue
                    jk = basis_product(j, k)
                    ijk = basis_product(i, jk.index)
                    out[:, ijk.index] += (2 * jk.sign * ijk.sign) * G[:, i] * D[:, j, k]
    return reduce_rows(out, h, mode)


def correction_oracle(g, f):
    """Correction term rebuilt from basis associators over anti-associative triples.

    On such a triple (e_i e_j) e_k = -e_i (e_j e_k), so the associator equals
    -2 e_i (e_j e_k) and the correction is minus the associator-weighted sum.
    """
    mode, h = _check_pair(g, f)
    if len(g) == 0:
        return Octonion.zero(mode)
    G = g.values
    D = _backward_at(f, g.points)
    if mode is Mode.EXACT:
        G, D = with_headroom(2 * 512 * max_abs(G) * max_abs(D), G, D)
    out = zeros((len(G), DIM), mode, like=(G, D))
    basis = [Octonion.basis(n) for n in range(DIM)]
    for i, j, k in itertools.product(range(DIM), repeat=3):
        if classify_basis_triple(i, j, k) is not Associativity.ANTI_ASSOCIATIVE:
            continue
        a = associator(basis[i], basis[j], basis[k])
        weight = G[:, i] * D[:, j, k]
        for n, c in enumerate(a.coeffs):
            if c:
                out[:, n] -= c * weight
    return reduce_rows(out, h, mode)


def lhs_component_expansion(g, f):
    """First left-hand term as the 512-term component sum with (e_i e_j) e_k bracketing."""
    mode, h = _check_pair(g, f)
    if len(f) == 0:
        return Octonion.zero(mode)
    F = f.values
    P = np.stack([forward_diff(g, j).values_at(f.points) for j in range(DIM)], axis=1)
    if mode is Mode.EXACT:
        P, F = with_headroom(512 * max_abs(P) * max_abs(F), P, F)
    out = zeros((len(F), DIM), mode, like=(P, F))
    for j in range(DIM):
        for i in range(DIM):
            ij = basis_product(i, j)
            for k in range(DIM):
                ijk = basis_product(ij.index, k)
                out[:, ijk.index] += (ij.sign * ijk.sign) * P[:, j, i] * F[:, k]
    return reduce_rows(out, h, mode)


def _magnitude(o):
    return math.sqrt(norm_sq(o))


@dataclass(frozen=True)
class StokesResult:
    lhs: Octonion
    correction: Octonion
    correction_oracle: Octonion
    residual: Octonion
    config: dict = field(default_factory=dict)
    oracle_agrees: bool = True

    @property
    def max_residual(self):
        return self.residual.max_abs()

    @property
    def relative_residual(self):
        """max |residual component| / (1 + |lhs|)."""
        return float(self.max_residual) / (1.0 + _magnitude(self.lhs))

    def is_exact_zero(self):
        return not self.residual


def stokes_residual(g, f, oracle_tol=1e-10, config=None, strict=True):
    """Evaluate both sides and the oracle; ``residual = lhs - correction``.

    The correction and its oracle must agree exactly in exact mode and to a
    relative ``oracle_tol`` in float mode. A disagreement raises
    IdentityViolation, or is only recorded in ``oracle_agrees`` when
    ``strict`` is false.
    """
    mode, h = _check_pair(g, f)
    lhs = stokes_lhs(g, f)
    corr = correction_term(g, f)
    oracle = correction_oracle(g, f)
    if mode is Mode.EXACT:
        agree = corr == oracle
    else:
        agree = (oracle - corr).max_abs() <= oracle_tol * (1.0 + _magnitude(corr))
    if strict and not agree:
        raise IdentityViolation(f"correction {corr} != oracle {oracle}")
    echo = {"h": h, "mode": mode.value}
    echo.update(config or {})
    return StokesResult(lhs, corr, oracle, lhs - corr, echo, bool(agree))
