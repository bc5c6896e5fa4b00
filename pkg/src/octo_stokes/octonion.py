"""Octonion arithmetic on the basis e0..e7 with e4 = e1e2, e5 = e1e3,
e6 = e2e3 and e7 = e4e3 = (e1e2)e3.

The multiplication table is hardcoded as seven oriented cyclic triples and
certified exhaustively when first built (see ``build_cayley_table``).
"""
import enum
import functools
import hashlib
import itertools
import json
from typing import NamedTuple

import numpy as np

from ._scalars import (
    Mode,
    ModeMismatchError,
    check_scalar,
    infer_mode,
    max_abs,
    with_headroom,
    zeros,
)

__all__ = [
    "Associativity",
    "CayleyTable",
    "Octonion",
    "SignedBasis",
    "TableConstructionError",
    "add",
    "associator",
    "basis_product",
    "build_cayley_table",
    "classification_census",
    "classify_basis_triple",
    "enumerate_fano_lines",
    "grouped_pair_count",
    "multiply",
    "multiply_arrays",
    "negate",
    "norm_sq",
    "scale",
]

# e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b for each oriented triple.
ORIENTED_TRIPLES = ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 3, 7), (6, 1, 7), (2, 5, 7), (5, 4, 6))

GENERATOR_IDENTITIES = {(1, 2): 4, (1, 3): 5, (2, 3): 6, (4, 3): 7}


class TableConstructionError(RuntimeError):
    """The hardcoded table failed its certificate; always an internal bug."""


class SignedBasis(NamedTuple):
    sign: int
    index: int

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}e{self.index}"


class Associativity(enum.Enum):
    ASSOCIATIVE = "associative"
    ANTI_ASSOCIATIVE = "anti-associative"


class CayleyTable:
    """Immutable 8x8 table of signed basis products ``table[i][j] = e_i e_j``."""

    __slots__ = ("_rows", "signs", "indices")

    def __init__(self, rows):
        self._rows = tuple(tuple(SignedBasis(*entry) for entry in row) for row in rows)
        signs = np.array([[e.sign for e in row] for row in self._rows], dtype=np.int64)
        indices = np.array([[e.index for e in row] for row in self._rows], dtype=np.int64)
        signs.setflags(write=False)
        indices.setflags(write=False)
        self.signs = signs
        self.indices = indices

    def __getitem__(self, i):
        return self._rows[i]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def to_list(self):
        return [[{"sign": e.sign, "index": e.index} for e in row] for row in self._rows]

    def certificate(self):
        """SHA-256 of the canonical JSON rendering of the table."""
        blob = json.dumps(self.to_list(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _closed_rows():
    rows = [[None] * 8 for _ in range(8)]
    for i in range(8):
        rows[0][i] = (1, i)
        rows[i][0] = (1, i)
    for i in range(1, 8):
        rows[i][i] = (-1, 0)
    for a, b, c in ORIENTED_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            rows[x][y] = (1, z)
            rows[y][x] = (-1, z)
    return rows


def _certify(table):
    """Check every structural property the rest of the package relies on."""
    problems = []
    t = table
    for i in range(8):
        if t[0][i] != (1, i) or t[i][0] != (1, i):
            problems.append(f"e0 is not neutral for e{i}")
    for i in range(1, 8):
        if t[i][i] != (-1, 0):
            problems.append(f"e{i}^2 != -1")
    for i, j in itertools.permutations(range(1, 8), 2):
        if t[i][j] != (-t[j][i].sign, t[j][i].index):
            problems.append(f"e{i}e{j} != -e{j}e{i}")
    for (i, j), k in GENERATOR_IDENTITIES.items():
        if t[i][j] != (1, k):
            problems.append(f"e{i}e{j} != +e{k}")

    def left(i, j, k):
        p = t[i][j]
        q = t[p.index][k]
        return p.sign * q.sign, q.index

    def right(i, j, k):
        p = t[j][k]
        q = t[i][p.index]
        return p.sign * q.sign, q.index

    anti = 0
    for i, j, k in itertools.product(range(8), repeat=3):
        (sl, il), (sr, ir) = left(i, j, k), right(i, j, k)
        if il != ir:
            problems.append(f"bracketings of e{i}e{j}e{k} differ in index")
            continue
        on_line = t[i][j].index == k
        expect_anti = 0 not in (i, j, k) and len({i, j, k}) == 3 and not on_line
        if expect_anti:
            anti += 1
            if sl != -sr:
                problems.append(f"(e{i}e{j})e{k} != -e{i}(e{j}e{k})")
        elif sl != sr:
            problems.append(f"(e{i}e{j})e{k} != e{i}(e{j}e{k})")
    if anti != 168:
        problems.append(f"{anti} anti-associative triples, expected 168")
    if problems:
        raise TableConstructionError("; ".join(problems[:10]))


@functools.lru_cache(maxsize=None)
def build_cayley_table():
    """Return the certified multiplication table (built once, then cached).

    Raises TableConstructionError if the hardcoded triples are inconsistent
    with e_i^2 = -1, anticommutativity, the generator identities, or the
    basis sign rule for triple products.
    """
    table = CayleyTable(_closed_rows())
    _certify(table)
    return table


def basis_product(i, j):
    return build_cayley_table()[i][j]


class Octonion:
    """An octonion with eight exact (int) or float coefficients.

    Equality is componentwise; use ``isclose`` for float comparisons.
    """

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs, mode=None):
        coeffs = tuple(coeffs)
        if len(coeffs) != 8:
            raise ValueError(f"an octonion has 8 coefficients, got {len(coeffs)}")
        mode = infer_mode(coeffs) if mode is None else Mode(mode)
        object.__setattr__(self, "coeffs", tuple(check_scalar(c, mode) for c in coeffs))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @classmethod
    def basis(cls, i, mode=Mode.EXACT):
        mode = Mode(mode)
        one = 1 if mode is Mode.EXACT else 1.0
        return cls([one if k == i else 0 * one for k in range(8)], mode)

    @classmethod
    def zero(cls, mode=Mode.EXACT):
        mode = Mode(mode)
        return cls([0 if mode is Mode.EXACT else 0.0] * 8, mode)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.mode is other.mode and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"Octonion({list(self.coeffs)}, mode={self.mode.value!r})"

    def __str__(self):
        terms = [
            f"{'+' if c > 0 else '-'}e{k}" if abs(c) == 1 else f"{c:+}*e{k}"
            for k, c in enumerate(self.coeffs)
            if c
        ]
        return " ".join(terms) if terms else "0"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return multiply(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def isclose(self, other, tol):
        _same_mode(self, other)
        return all(abs(a - b) <= tol for a, b in zip(self.coeffs, other.coeffs))

    def max_abs(self):
        return max(abs(c) for c in self.coeffs)


def _same_mode(*octs):
    modes = {o.mode for o in octs}
    if len(modes) > 1:
        raise ModeMismatchError(f"mixed scalar modes: {sorted(m.value for m in modes)}")
    return modes.pop()


def add(a, b):
    mode = _same_mode(a, b)
    return Octonion([x + y for x, y in zip(a.coeffs, b.coeffs)], mode)


def negate(a):
    return Octonion([-x for x in a.coeffs], a.mode)


def scale(s, a):
    s = check_scalar(s, a.mode)
    return Octonion([s * x for x in a.coeffs], a.mode)


def multiply(a, b):
    """Octonion product ``ab``, the bilinear extension of the basis table."""
    mode = _same_mode(a, b)
    table = build_cayley_table()
    out = [0] * 8 if mode is Mode.EXACT else [0.0] * 8
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        row = table[i]
        for j, y in enumerate(b.coeffs):
            if y:
                e = row[j]
                out[e.index] += e.sign * x * y
    return Octonion(out, mode)


def associator(a, b, c):
    """``(ab)c - a(bc)``."""
    return multiply(multiply(a, b), c) - multiply(a, multiply(b, c))


def norm_sq(a):
    return sum(x * x for x in a.coeffs)


def classify_basis_triple(i, j, k):
    if 0 in (i, j, k) or len({i, j, k}) < 3:
        return Associativity.ASSOCIATIVE
    if basis_product(i, j).index == k:
        return Associativity.ASSOCIATIVE
    return Associativity.ANTI_ASSOCIATIVE


def classification_census():
    """``(associative, anti_associative)`` counts over all 512 ordered basis triples."""
    anti = sum(
        classify_basis_triple(*t) is Associativity.ANTI_ASSOCIATIVE
        for t in itertools.product(range(8), repeat=3)
    )
    return 512 - anti, anti


def enumerate_fano_lines():
    """The seven sets {i, j, k} of imaginary units with e_i e_j = +-e_k."""
    return {
        frozenset((i, j, basis_product(i, j).index))
        for i, j in itertools.permutations(range(1, 8), 2)
    }


def grouped_pair_count():
    """Ordered pairs (i, j), i != j, lying on a common line, summed over lines."""
    return sum(len(line) * (len(line) - 1) for line in enumerate_fano_lines())


def multiply_arrays(a, b, mode=Mode.EXACT):
    """Row-wise octonion products of coefficient arrays.

    ``a`` and ``b`` have shape (..., 8) and broadcast against each other.
    Terms are accumulated in ascending (i, j) order.
    """
    mode = Mode(mode)
    a = np.asarray(a)
    b = np.asarray(b)
    if mode is Mode.EXACT:
        a, b = with_headroom(8 * max_abs(a) * max_abs(b), a, b)
    table = build_cayley_table()
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = zeros(shape, mode, like=(a, b))
    for i in range(8):
        ai = a[..., i]
        for j in range(8):
            e = table[i][j]
            if e.sign > 0:
                out[..., e.index] += ai * b[..., j]
            else:
                out[..., e.index] -= ai * b[..., j]
    return out
