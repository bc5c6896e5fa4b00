import io
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octo_stokes import (
    Field,
    FieldFormatError,
    LatticeMismatchError,
    ModeMismatchError,
    Octonion,
    backward_diff,
    cr_backward_left,
    cr_forward_left,
    cr_forward_right,
    field_from_entries,
    forward_diff,
    multiply,
    pointwise_product,
    random_field,
    read_field,
    volume_sum,
    write_field,
)

from conftest import ORIGIN, delta, e, from_function, small_fields, unit

ZERO = Octonion.zero()


def sum_octs(octs):
    total = Octonion.zero()
    for o in octs:
        total = total + o
    return total


def interior(radius):
    return list(itertools.product(range(-radius + 1, radius), repeat=8))


# -- construction -------------------------------------------------------------


def test_from_entries_examples():
    f = field_from_entries(1, [(ORIGIN, e(3))])
    assert f.support == [ORIGIN]
    assert len(field_from_entries(1, [(ORIGIN, ZERO)])) == 0
    two = field_from_entries(1, [(ORIGIN, e(1)), (unit(0), -e(1))])
    assert len(two) == 2


def test_from_entries_errors():
    with pytest.raises(ValueError):
        field_from_entries(1, [(ORIGIN, e(1)), (ORIGIN, e(2))])
    with pytest.raises(ModeMismatchError):
        field_from_entries(1, [(ORIGIN, e(1)), (unit(1), e(2, "float"))])
    with pytest.raises(ValueError):
        field_from_entries(0, [(ORIGIN, e(1, "float"))])
    with pytest.raises(ValueError):
        field_from_entries(-1.0, [], mode="float")
    with pytest.raises(ValueError):
        field_from_entries(0.5, [(ORIGIN, e(1))])  # exact needs h = 1
    with pytest.raises(ValueError):
        field_from_entries(1, [((0, 0, 0), e(1))])


def test_support_is_lexicographic():
    pts = [(1,) + (0,) * 7, (0,) * 7 + (5,), (-1,) + (9,) * 7, (0,) * 8]
    f = field_from_entries(1, [(m, e(2)) for m in pts])
    assert f.support == sorted(pts)


def test_getitem_and_items():
    f = field_from_entries(1, [(ORIGIN, e(3)), (unit(2), e(1) + e(5))])
    assert f[ORIGIN] == e(3)
    assert f[unit(2)] == e(1) + e(5)
    assert f[unit(3)] == ZERO
    assert dict(f.items()) == {ORIGIN: e(3), unit(2): e(1) + e(5)}


def test_field_is_immutable():
    f = delta(e(1))
    with pytest.raises(AttributeError):
        f.h = 2
    with pytest.raises(ValueError):
        f.values[0, 0] = 7


def test_mixed_h_is_an_error():
    a = field_from_entries(1.0, [(ORIGIN, e(1, "float"))])
    b = field_from_entries(0.5, [(ORIGIN, e(1, "float"))])
    with pytest.raises(LatticeMismatchError):
        a + b
    with pytest.raises(ModeMismatchError):
        delta(e(1)) + a


def test_huge_coordinates_fall_back_to_ranked_keys():
    far = (10**15,) + (0,) * 7
    f = field_from_entries(1, [(ORIGIN, e(1)), (far, e(2))])
    g = f + field_from_entries(1, [((-(10**15),) + (1,) * 7, e(3))])
    assert len(g) == 3 and g[far] == e(2)
    assert volume_sum(g) == e(1) + e(2) + e(3)


# -- random fields ------------------------------------------------------------


def test_random_field_radius_zero():
    f = random_field(7, 0, 3)
    assert set(f.support) <= {ORIGIN}
    assert np.abs(f.values).max() <= 3


def test_random_field_is_deterministic():
    a = random_field(11, 1, 2)
    b = random_field(11, 1, 2)
    assert a.equals(b)
    assert not a.equals(random_field(12, 1, 2))


def test_random_field_box():
    f = random_field(3, 1, 1)
    assert len(f) <= 3**8
    assert all(max(abs(x) for x in m) <= 1 for m in f.support)
    assert set(np.unique(f.values)) <= {-1, 0, 1}


def test_random_field_max_points_and_float_mode():
    f = random_field(5, 2, 10, max_points=100)
    assert len(f) <= 100
    g = random_field(5, 1, 10, h=0.25, mode="float")
    assert g.h == 0.25 and g.values.dtype == np.float64
    assert np.abs(g.values).max() <= 10


def test_random_field_frozen_values():
    # the documented stream: Generator(PCG64(seed)).integers(-c, c, endpoint=True)
    stream = np.random.Generator(np.random.PCG64(0)).integers(-3, 3, size=(1, 8), endpoint=True)
    assert random_field(0, 0, 3).values.tolist() == stream.tolist()
    assert stream.tolist() == [[2, 1, 0, -2, -1, -3, -3, -3]]


def test_random_field_rejects_bad_arguments():
    with pytest.raises(ValueError):
        random_field(1, -1, 3)
    with pytest.raises(ValueError):
        random_field(1, 1, 0)


# -- differences ----------------------------------------------------------------


@pytest.mark.parametrize("j", range(8))
def test_forward_diff_of_delta(j):
    d = forward_diff(delta(e(0)), j)
    assert dict(d.items()) == {unit(j, -1): e(0), ORIGIN: -e(0)}


@pytest.mark.parametrize("j", range(8))
def test_backward_diff_of_delta(j):
    d = backward_diff(delta(e(3)), j)
    assert dict(d.items()) == {ORIGIN: e(3), unit(j): -e(3)}


def test_constant_and_linear_fields_interior():
    const = from_function(lambda m: e(0), 1)
    lin = from_function(lambda m: Octonion([m[2]] + [0] * 7), 1)
    for j in range(8):
        fd, bd = forward_diff(const, j), backward_diff(const, j)
        lf = forward_diff(lin, j)
        for m in interior(1):
            assert fd[m] == ZERO and bd[m] == ZERO
            assert lf[m] == (e(0) if j == 2 else ZERO)


def test_linear_field_float_h():
    h = 0.5
    lin = from_function(lambda m: Octonion([m[4] * h] + [0.0] * 7), 1, h=h, mode="float")
    d = forward_diff(lin, 4)
    assert d[ORIGIN].isclose(Octonion.basis(0, "float"), 1e-15)


@settings(max_examples=30)
@given(small_fields(), st.integers(0, 7))
def test_shift_identity_and_support_growth(f, j):
    fd, bd = forward_diff(f, j), backward_diff(f, j)
    for m in f.support:
        up = tuple(x + (d == j) for d, x in enumerate(m))
        assert fd[m] == bd[up]
    s = set(f.support)
    down = {tuple(x - (d == j) for d, x in enumerate(m)) for m in s}
    up = {tuple(x + (d == j) for d, x in enumerate(m)) for m in s}
    assert set(fd.support) <= s | down
    assert set(bd.support) <= s | up


# -- Cauchy-Riemann operators ---------------------------------------------------


def test_cr_forward_left_of_delta():
    r = cr_forward_left(delta(e(0)))
    assert r[ORIGIN] == -sum_octs(e(j) for j in range(8))


def test_cr_backward_left_of_delta():
    r = cr_backward_left(delta(e(3)))
    assert r[ORIGIN] == sum_octs(multiply(e(j), e(3)) for j in range(8))


def test_cr_forward_right_of_deltas():
    assert cr_forward_right(delta(e(0)))[ORIGIN] == -sum_octs(e(j) for j in range(8))
    expected = -sum_octs(multiply(e(1), e(j)) for j in range(8))
    assert cr_forward_right(delta(e(1)))[ORIGIN] == expected


def test_cr_on_constant_and_linear_interior():
    const = from_function(lambda m: e(5), 1)
    lin2 = from_function(lambda m: Octonion([m[2]] + [0] * 7), 1)
    lin0 = from_function(lambda m: Octonion([m[0]] + [0] * 7), 1)
    for m in interior(1):
        assert cr_forward_left(const)[m] == ZERO
        assert cr_backward_left(const)[m] == ZERO
        assert cr_forward_right(const)[m] == ZERO
        assert cr_forward_left(lin2)[m] == e(2)
        assert cr_backward_left(lin0)[m] == e(0)


@settings(max_examples=20)
@given(small_fields())
def test_left_and_right_agree_on_real_fields(f):
    r = f.real_part()
    assert cr_forward_left(r).equals(cr_forward_right(r))


@settings(max_examples=20)
@given(small_fields(), small_fields(), st.integers(-4, 4))
def test_operators_are_linear(a, b, s):
    for op in (cr_forward_left, cr_backward_left, cr_forward_right):
        assert op(a + b).equals(op(a) + op(b))
        assert op(a.scale(s)).equals(op(a).scale(s))


def test_cr_pointwise_definition_on_random_field():
    f = random_field(9, 1, 3, max_points=40)
    r = cr_backward_left(f)
    for m in f.support[:10]:
        expected = sum_octs(multiply(e(j), backward_diff(f, j)[m]) for j in range(8))
        assert r[m] == expected


# -- summation by parts -------------------------------------------------------


def scalar_field(seed, radius=1, max_points=200):
    return random_field(seed, radius, 4, max_points=max_points).real_part()


@pytest.mark.parametrize("seed", range(5))
def test_summation_by_parts(seed):
    u, v = scalar_field(2 * seed), scalar_field(2 * seed + 1)
    for j in range(8):
        left = volume_sum(pointwise_product(forward_diff(u, j), v))
        right = volume_sum(pointwise_product(u, backward_diff(v, j)))
        assert left == -right


# -- volume sums and products -------------------------------------------------


def test_volume_sum_examples():
    assert volume_sum(Field.empty()) == ZERO
    assert volume_sum(delta(e(5))) == e(5)
    assert volume_sum(field_from_entries(1, [(ORIGIN, e(1)), (unit(3), -e(1))])) == ZERO


def test_volume_sum_float_measure():
    f = field_from_entries(0.5, [(ORIGIN, Octonion.basis(2, "float"))])
    assert volume_sum(f) == Octonion([0, 0, 0.5**8, 0, 0, 0, 0, 0])


def test_exact_sums_do_not_overflow():
    big = 2**61
    f = field_from_entries(1, [(ORIGIN, Octonion([big] * 8)), (unit(1), Octonion([big] * 8))])
    assert volume_sum(f) == Octonion([2 * big] * 8)
    sq = pointwise_product(f, f)
    assert sq[ORIGIN] == multiply(Octonion([big] * 8), Octonion([big] * 8))


def test_pointwise_product_uses_common_support():
    a = field_from_entries(1, [(ORIGIN, e(1)), (unit(0), e(2))])
    b = field_from_entries(1, [(ORIGIN, e(2)), (unit(1), e(3))])
    p = pointwise_product(a, b)
    assert dict(p.items()) == {ORIGIN: e(4)}


def test_float_determinism():
    g = random_field(4, 1, 10, h=0.1, mode="float")
    a = volume_sum(cr_forward_right(g))
    b = volume_sum(cr_forward_right(random_field(4, 1, 10, h=0.1, mode="float")))
    assert a.coeffs == b.coeffs


# -- field files ----------------------------------------------------------------


@pytest.mark.parametrize("mode,h", [("exact", 1), ("float", 0.5)])
def test_field_file_round_trip(tmp_path, mode, h):
    f = random_field(1, 1, 3, h=h, mode=mode, max_points=30)
    path = tmp_path / "f.jsonl"
    write_field(path, f)
    assert read_field(path).equals(f)
    lines = path.read_text().splitlines()
    assert len(lines) == len(f) + 1


def test_field_file_big_integers_as_strings():
    big = 10**30
    f = field_from_entries(1, [(ORIGIN, Octonion([big, 0, 0, 0, 0, 0, 0, -1]))])
    buf = io.StringIO()
    write_field(buf, f)
    assert f'"{big}"' in buf.getvalue()
    assert read_field(io.StringIO(buf.getvalue())).equals(f)


@pytest.mark.parametrize(
    "text",
    [
        "",
        '{"h": 1}\n',
        '{"h": 1, "mode": "exact"}\n{"m": [0,0,0], "c": [1,0,0,0,0,0,0,0]}\n',
        '{"h": 1, "mode": "exact"}\n{"m": [0,0,0,0,0,0,0,0], "c": [0.5,0,0,0,0,0,0,0]}\n',
        '{"h": 2, "mode": "exact"}\n',
        '{"h": 1, "mode": "exact"}\nnot json\n',
        '{"h": 1, "mode": "exact"}\n{"m": [0,0,0,0,0,0,0,0], "c": [1,0,0,0,0,0,0,0]}\n'
        '{"m": [0,0,0,0,0,0,0,0], "c": [2,0,0,0,0,0,0,0]}\n',
    ],
)
def test_field_file_errors(text):
    with pytest.raises(FieldFormatError):
        read_field(io.StringIO(text))
