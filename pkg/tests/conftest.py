import pytest
from hypothesis import strategies as st

from octo_stokes import Octonion, field_from_entries

ORIGIN = (0,) * 8

ACCEPTANCE_LINES = []


def e(i, mode="exact"):
    return Octonion.basis(i, mode)


def unit(j, sign=1):
    return tuple(sign if d == j else 0 for d in range(8))


def delta(o, m=ORIGIN, h=1):
    """Field equal to ``o`` at ``m`` and zero elsewhere."""
    return field_from_entries(h, [(m, o)])


def box(radius):
    import itertools

    return list(itertools.product(range(-radius, radius + 1), repeat=8))


def from_function(fn, radius, h=1, mode="exact"):
    return field_from_entries(h, [(m, fn(m)) for m in box(radius)], mode=mode)


octonions = st.lists(st.integers(-20, 20), min_size=8, max_size=8).map(Octonion)

multi_indices = st.tuples(*[st.integers(-2, 2)] * 8)


@st.composite
def small_fields(draw, max_points=6):
    pts = draw(st.lists(multi_indices, min_size=0, max_size=max_points, unique=True))
    return field_from_entries(1, [(m, draw(octonions)) for m in pts], mode="exact")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record
