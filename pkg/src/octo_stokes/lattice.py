"""Finitely supported octonion-valued fields on the lattice hZ^8.

A ``Field`` stores its support as an (N, 8) int64 array of multi-indices in
lexicographic order together with an (N, 8) array of octonion coefficients.
Zero values are never stored. All operators return new fields.
"""
import json
import math
import numbers

import numpy as np

from ._scalars import (
    INT64_SAFE,
    Mode,
    ModeMismatchError,
    as_exact,
    check_scalar,
    max_abs,
    to_python,
    with_headroom,
    zeros,
)
from .octonion import Octonion, multiply_arrays

__all__ = [
    "DIM",
    "Field",
    "FieldFormatError",
    "LatticeMismatchError",
    "backward_diff",
    "cr_backward_left",
    "cr_forward_left",
    "cr_forward_right",
    "field_from_entries",
    "forward_diff",
    "pointwise_product",
    "random_field",
    "read_field",
    "volume_sum",
    "write_field",
]

DIM = 8


class LatticeMismatchError(ValueError):
    """Fields with different lattice constants were combined."""


class FieldFormatError(ValueError):
    pass


def _check_h(h, mode):
    if isinstance(h, bool) or not isinstance(h, numbers.Real):
        raise TypeError("lattice constant must be a real number")
    if not h > 0 or not math.isfinite(h):
        raise ValueError(f"lattice constant must be positive and finite, got {h}")
    if mode is Mode.EXACT:
        if h != 1:
            raise ValueError("exact mode requires h = 1")
        return 1
    return float(h)


def _lex_order(points):
    return np.lexsort(points.T[::-1])


def _unit(j):
    step = np.zeros(DIM, dtype=np.int64)
    step[j] = 1
    return step


def _keys(*point_sets):
    """Order-preserving integer keys for several point arrays on one codec."""
    nonempty = [p for p in point_sets if len(p)]
    if not nonempty:
        return [np.zeros(0, dtype=np.int64) for _ in point_sets]
    stacked = np.concatenate(nonempty)
    lo = stacked.min(axis=0)
    extent = [int(x) for x in stacked.max(axis=0) - lo + 1]
    if math.prod(extent) < INT64_SAFE:
        strides = np.array([math.prod(extent[d + 1:]) for d in range(DIM)], dtype=np.int64)
        return [(p - lo) @ strides if len(p) else np.zeros(0, dtype=np.int64) for p in point_sets]
    # Rank within the lexicographic union; slower but unbounded.
    _, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    out, start = [], 0
    for p in point_sets:
        if len(p):
            out.append(inverse[start:start + len(p)].astype(np.int64))
            start += len(p)
        else:
            out.append(np.zeros(0, dtype=np.int64))
    return out


def _gather(keys, values, query_keys, mode):
    """Values stored at ``query_keys`` (zero rows where absent)."""
    out = zeros((len(query_keys), DIM), mode, like=(values,))
    if len(keys) == 0 or len(query_keys) == 0:
        return out
    pos = np.searchsorted(keys, query_keys)
    pos_c = np.minimum(pos, len(keys) - 1)
    hit = keys[pos_c] == query_keys
    out[hit] = values[pos_c[hit]]
    return out


class Field:
    """Octonion-valued function on hZ^8 with finite support.

    Parameters
    ----------
    points : array_like, shape (N, 8)
        Integer multi-indices m; the lattice point is m*h.
    values : array_like, shape (N, 8)
        Octonion coefficients at each point.
    h : float
        Lattice constant. Exact mode requires h = 1.
    mode : Mode or str
        ``"exact"`` (integers, arbitrary precision) or ``"float"``.
    """

    __slots__ = ("points", "values", "h", "mode")

    def __init__(self, points, values, h=1, mode=Mode.EXACT, *, _canonical=False):
        mode = Mode(mode)
        h = _check_h(h, mode)
        points = np.array(points, dtype=np.int64).reshape(-1, DIM)
        if mode is Mode.EXACT:
            values = as_exact(np.asarray(values).reshape(-1, DIM) if len(points) else np.zeros((0, DIM), dtype=np.int64))
        else:
            values = np.array(values, dtype=np.float64).reshape(-1, DIM)
            if not np.all(np.isfinite(values)):
                raise ValueError("non-finite coefficients in float mode")
        if len(points) != len(values):
            raise ValueError("points and values differ in length")
        if not _canonical:
            order = _lex_order(points)
            points, values = points[order], values[order]
            if len(points) > 1 and np.any(np.all(points[1:] == points[:-1], axis=1)):
                raise ValueError("duplicate multi-index in field entries")
        nonzero = np.any(values != 0, axis=1)
        if not nonzero.all():
            points, values = points[nonzero], values[nonzero]
        points.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def empty(cls, h=1, mode=Mode.EXACT):
        return cls(np.zeros((0, DIM), dtype=np.int64), np.zeros((0, DIM)), h, mode)

    def _like(self, points, values, canonical=True):
        return Field(points, values, self.h, self.mode, _canonical=canonical)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"Field(<{len(self)} points>, h={self.h}, mode={self.mode.value!r})"

    @property
    def support(self):
        return [tuple(int(x) for x in p) for p in self.points]

    def items(self):
        for p, v in zip(self.points, self.values):
            yield tuple(int(x) for x in p), Octonion([to_python(c, self.mode) for c in v], self.mode)

    def __getitem__(self, m):
        m = np.asarray(m, dtype=np.int64).reshape(1, DIM)
        keys, q = _keys(self.points, m)
        row = _gather(keys, self.values, q, self.mode)[0]
        return Octonion([to_python(c, self.mode) for c in row], self.mode)

    def values_at(self, points):
        """Coefficient rows at arbitrary multi-indices (zeros off support)."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, DIM)
        keys, q = _keys(self.points, points)
        return _gather(keys, self.values, q, self.mode)

    def _compatible(self, other):
        if self.mode is not other.mode:
            raise ModeMismatchError(f"{self.mode.value} field combined with {other.mode.value} field")
        if self.h != other.h:
            raise LatticeMismatchError(f"lattice constants differ: {self.h} vs {other.h}")

    def _align(self, other):
        self._compatible(other)
        ka, kb = _keys(self.points, other.points)
        union = np.union1d(ka, kb)
        pa = np.searchsorted(union, ka)
        pb = np.searchsorted(union, kb)
        points = np.zeros((len(union), DIM), dtype=np.int64)
        points[pa] = self.points
        points[pb] = other.points
        va = zeros((len(union), DIM), self.mode, like=(self.values, other.values))
        vb = va.copy()
        va[pa] = self.values
        vb[pb] = other.values
        return points, va, vb

    def __add__(self, other):
        points, va, vb = self._align(other)
        if self.mode is Mode.EXACT:
            va, vb = with_headroom(max_abs(va) + max_abs(vb), va, vb)
        return self._like(points, va + vb)

    def __neg__(self):
        return self._like(self.points, -self.values)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = check_scalar(s, self.mode)
        values = self.values
        if self.mode is Mode.EXACT:
            (values,) = with_headroom(abs(s) * max_abs(values), values)
        return self._like(self.points, s * values)

    def translate(self, shift):
        """The field m -> f(m + shift)."""
        shift = np.asarray(shift, dtype=np.int64).reshape(DIM)
        return self._like(self.points - shift, self.values)

    def real_part(self):
        """Keep only the e0 component."""
        values = zeros(self.values.shape, self.mode, like=(self.values,))
        values[:, 0] = self.values[:, 0]
        return self._like(self.points, values)

    def equals(self, other, tol=None):
        """Exact equality, or componentwise ``|a - b| <= tol`` when ``tol`` is given."""
        if self.mode is not other.mode or self.h != other.h:
            return False
        if tol is None:
            return (
                self.points.shape == other.points.shape
                and bool(np.all(self.points == other.points))
                and bool(np.all(self.values == other.values))
            )
        _, va, vb = self._align(other)
        return bool(np.all(np.abs(va - vb) <= tol))


def field_from_entries(h, pairs, mode=None):
    """Build a field from ``(multi_index, Octonion)`` pairs.

    The scalar mode is taken from the octonions unless given explicitly.
    """
    pairs = list(pairs)
    modes = {o.mode for _, o in pairs}
    if mode is not None:
        modes.add(Mode(mode))
    if len(modes) > 1:
        raise ModeMismatchError("entries mix exact and float octonions")
    mode = modes.pop() if modes else Mode.EXACT
    points = []
    for m, _ in pairs:
        m = tuple(m)
        if len(m) != DIM or not all(isinstance(x, numbers.Integral) for x in m):
            raise ValueError(f"multi-index must be 8 integers, got {m!r}")
        points.append(m)
    if len(set(points)) != len(points):
        raise ValueError("duplicate multi-index in field entries")
    if mode is Mode.EXACT:
        values = np.array([list(o.coeffs) for _, o in pairs], dtype=object).reshape(-1, DIM)
    else:
        values = np.array([list(o.coeffs) for _, o in pairs], dtype=np.float64).reshape(-1, DIM)
    return Field(np.array(points, dtype=np.int64).reshape(-1, DIM), values, h, mode)


def random_field(seed, radius, coeff_bound, h=1, mode=Mode.EXACT, max_points=None):
    """Random field on the box [-radius, radius]^8.

    Randomness comes from ``numpy.random.Generator(PCG64(seed))``; ``seed`` may
    be an int or a ``numpy.random.SeedSequence``. Box points are taken in
    lexicographic order; if ``max_points`` is given, that many distinct points
    are drawn first. Each point then gets 8 coefficients: integers uniform on
    [-c, c] in exact mode, reals uniform on [-c, c) in float mode.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be at least 1")
    mode = Mode(mode)
    rng = np.random.Generator(np.random.PCG64(seed))
    side = 2 * radius + 1
    points = np.indices((side,) * DIM, dtype=np.int64).reshape(DIM, -1).T - radius
    if max_points is not None and max_points < len(points):
        pick = np.sort(rng.choice(len(points), size=max_points, replace=False))
        points = points[pick]
    if mode is Mode.EXACT:
        values = rng.integers(-coeff_bound, coeff_bound, size=(len(points), DIM), endpoint=True)
    else:
        values = rng.uniform(-coeff_bound, coeff_bound, size=(len(points), DIM))
    return Field(points, values, h, mode, _canonical=True)


def forward_diff(f, j):
    """(f(m + e_j) - f(m)) / h."""
    d = f.translate(_unit(j)) - f
    return d if f.mode is Mode.EXACT else d._like(d.points, d.values / f.h)


def backward_diff(f, j):
    """(f(m) - f(m - e_j)) / h."""
    d = f - f.translate(-_unit(j))
    return d if f.mode is Mode.EXACT else d._like(d.points, d.values / f.h)


def _basis_row(j, mode):
    row = zeros((DIM,), mode)
    row[j] = 1
    return row


def _left_times_basis(j, f):
    return f._like(f.points, multiply_arrays(_basis_row(j, f.mode), f.values, f.mode))


def _right_times_basis(f, j):
    return f._like(f.points, multiply_arrays(f.values, _basis_row(j, f.mode), f.mode))


def _sum_fields(fields, template):
    """Sum of several fields with one shared alignment."""
    fields = list(fields)
    for term in fields:
        template._compatible(term)
    keys = _keys(*(t.points for t in fields))
    union, first = np.unique(np.concatenate(keys), return_index=True)
    points = np.concatenate([t.points for t in fields])[first]
    mode = template.mode
    if mode is Mode.EXACT:
        bound = sum(max_abs(t.values) for t in fields)
        parts = with_headroom(bound, *(t.values for t in fields))
    else:
        parts = [t.values for t in fields]
    total = zeros((len(union), DIM), mode, like=parts)
    for k, v in zip(keys, parts):
        total[np.searchsorted(union, k)] += v
    return template._like(points, total)


def cr_forward_left(f):
    """D+ f = sum_j e_j (forward difference of f along j)."""
    return _sum_fields((_left_times_basis(j, forward_diff(f, j)) for j in range(DIM)), f)


def cr_backward_left(f):
    """D- f = sum_j e_j (backward difference of f along j)."""
    return _sum_fields((_left_times_basis(j, backward_diff(f, j)) for j in range(DIM)), f)


def cr_forward_right(g):
    """g D+ = sum_j (forward difference of g along j) e_j."""
    return _sum_fields((_right_times_basis(forward_diff(g, j), j) for j in range(DIM)), g)


def pointwise_product(a, b):
    """The field m -> a(m) b(m) (octonion product at each point)."""
    a._compatible(b)
    ka, kb = _keys(a.points, b.points)
    common, ia, ib = np.intersect1d(ka, kb, assume_unique=True, return_indices=True)
    values = multiply_arrays(a.values[ia], b.values[ib], a.mode)
    return a._like(a.points[ia], values)


def reduce_rows(values, h, mode):
    """Sum coefficient rows in their stored order and apply the h^8 measure.

    Float sums are sequential (a cumulative sum), so the result depends only
    on the row order.
    """
    if len(values) == 0:
        return Octonion.zero(mode)
    if mode is Mode.EXACT:
        (values,) = with_headroom(len(values) * max_abs(values), values)
        total = values.sum(axis=0)
        return Octonion([int(c) for c in total], mode)
    total = np.cumsum(values, axis=0)[-1] * h**DIM
    return Octonion([float(c) for c in total], mode)


def volume_sum(f):
    """sum over the support of f(m) h^8, in lexicographic order."""
    return reduce_rows(f.values, f.h, f.mode)


def _encode_coeff(c, mode):
    if mode is Mode.FLOAT:
        return float(c)
    c = int(c)
    return c if abs(c) < 2**53 else str(c)


def _decode_coeff(c, mode):
    if mode is Mode.EXACT:
        if isinstance(c, str):
            try:
                return int(c)
            except ValueError as exc:
                raise FieldFormatError(f"bad exact coefficient {c!r}") from exc
        if isinstance(c, bool) or not isinstance(c, int):
            raise FieldFormatError(f"exact coefficient must be an integer, got {c!r}")
        return c
    if isinstance(c, bool) or not isinstance(c, (int, float)):
        raise FieldFormatError(f"float coefficient must be a number, got {c!r}")
    return float(c)


def write_field(fp, field):
    """Write ``field`` as line-delimited JSON to a path or text file object.

    The first line is a header ``{"h": ..., "mode": ...}``; each further line
    is ``{"m": [8 ints], "c": [8 coefficients]}`` in lexicographic order.
    Exact coefficients too large for a JSON double are written as strings.
    """
    if isinstance(fp, (str, bytes)) or hasattr(fp, "__fspath__"):
        with open(fp, "w", encoding="utf-8") as fh:
            return write_field(fh, field)
    fp.write(json.dumps({"h": field.h, "mode": field.mode.value}) + "\n")
    for p, v in zip(field.points, field.values):
        rec = {"m": [int(x) for x in p], "c": [_encode_coeff(c, field.mode) for c in v]}
        fp.write(json.dumps(rec) + "\n")


def read_field(fp):
    """Inverse of ``write_field``. Raises FieldFormatError on malformed input."""
    if isinstance(fp, (str, bytes)) or hasattr(fp, "__fspath__"):
        with open(fp, encoding="utf-8") as fh:
            return read_field(fh)
    lines = [ln for ln in fp.read().splitlines() if ln.strip()]
    if not lines:
        raise FieldFormatError("empty field file")
    try:
        header = json.loads(lines[0])
        mode = Mode(header["mode"])
        h = header["h"]
    except (ValueError, KeyError, TypeError) as exc:
        raise FieldFormatError(f"bad header: {lines[0]!r}") from exc
    points, values = [], []
    for n, line in enumerate(lines[1:], start=2):
        try:
            rec = json.loads(line)
            m, c = rec["m"], rec["c"]
        except (ValueError, KeyError, TypeError) as exc:
            raise FieldFormatError(f"line {n}: bad record") from exc
        if len(m) != DIM or len(c) != DIM:
            raise FieldFormatError(f"line {n}: need 8 indices and 8 coefficients")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in m):
            raise FieldFormatError(f"line {n}: multi-index entries must be integers")
        points.append(m)
        values.append([_decode_coeff(x, mode) for x in c])
    dtype = object if mode is Mode.EXACT else np.float64
    try:
        return Field(
            np.array(points, dtype=np.int64).reshape(-1, DIM),
            np.array(values, dtype=dtype).reshape(-1, DIM),
            h,
            mode,
        )
    except (ValueError, TypeError) as exc:
        raise FieldFormatError(str(exc)) from exc
