import math
import random

import pytest
from hypothesis import strategies as st

from prymcert.cover import CoveringMatrix


def all_ones(n, s):
    return CoveringMatrix((n,), ((1,),) * s)


def closure_order(moduli, columns):
    """Brute-force BFS closure of the column span; independent of the library's numpy route."""
    zero = (0,) * len(moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for col in columns:
                y = tuple((a + b) % n for a, b, n in zip(x, col, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def random_valid_matrix(rng, moduli_pool=(6, 10, 14), max_m=3, max_s=30, full_span=True):
    """Rejection sampler: random nonzero columns plus a balancing last column."""
    while True:
        m = rng.randint(1, max_m)
        moduli = tuple(rng.choice(moduli_pool) for _ in range(m))
        s = rng.randint(3, max_s)
        cols = []
        for _ in range(s - 1):
            col = tuple(rng.randrange(n) for n in moduli)
            if any(col):
                cols.append(col)
        last = tuple((-sum(c[k] for c in cols)) % n for k, n in enumerate(moduli))
        if not any(last) or len(cols) + 1 < 3:
            continue
        M = CoveringMatrix(moduli, tuple(cols) + (last,))
        if full_span and closure_order(moduli, M.columns) != math.prod(moduli):
            continue
        return M


@st.composite
def full_span_matrices(draw, moduli_pool=(6, 10, 14), max_m=3, max_extra=12):
    """Valid full-span matrices: unit columns guarantee the span, a final column balances sums."""
    m = draw(st.integers(1, max_m))
    moduli = tuple(draw(st.sampled_from(moduli_pool)) for _ in range(m))
    extra = draw(st.lists(
        st.tuples(*(st.integers(0, n - 1) for n in moduli)).filter(any),
        min_size=2, max_size=max_extra,
    ))
    units = [tuple(int(i == k) for i in range(m)) for k in range(m)]
    cols = extra + units
    last = tuple((-sum(c[k] for c in cols)) % n for k, n in enumerate(moduli))
    if any(last):
        cols.append(last)
    return CoveringMatrix(moduli, tuple(cols))


@pytest.fixture
def cyc10():
    return all_ones(10, 10)


@pytest.fixture
def cyc6():
    return all_ones(6, 6)


@pytest.fixture
def ab10_5():
    return CoveringMatrix.from_counts((10, 5), (10, 5))


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
