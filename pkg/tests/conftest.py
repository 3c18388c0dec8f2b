import itertools
from fractions import Fraction

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from toricwsr import CharacteristicPair

EXAMPLE_37 = ((-2, 1), (1, -2), (2, 1), (1, 2))
EXAMPLE_41 = ((-2, 1), (1, -2), (1, 0), (0, 1))
SMOOTH_4 = ((1, 0), (0, 1), (-1, 1), (0, -1))


@pytest.fixture
def ex37():
    return CharacteristicPair(EXAMPLE_37)


@pytest.fixture
def ex41():
    return CharacteristicPair(EXAMPLE_41)


@pytest.fixture
def smooth4():
    return CharacteristicPair(SMOOTH_4)


# --- oracles independent of toricwsr.lattice ------------------------------


def cofactor_det(M):
    M = [list(r) for r in M]
    if not M:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]])
        for j in range(len(M))
        if M[0][j]
    )


def sympy_lattice_key(rows, n):
    """Canonical key of the row lattice, via sympy's (column) HNF of the transpose."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return ()
    H = hermite_normal_form(Matrix(rows).T)
    return tuple(tuple(int(x) for x in H.col(j)) for j in range(H.cols))


def same_lattice(rows1, rows2, n):
    return sympy_lattice_key(rows1, n) == sympy_lattice_key(rows2, n)


def box(n, r):
    return itertools.product(range(-r, r + 1), repeat=n)


def rational_solve_in_span(rows, x):
    """Coefficients c (Fractions) with c @ rows == x, or None; rows independent."""
    k = len(rows)
    n = len(x)
    # normal equations over Q: (R R^T) c = R x
    G = [[Fraction(sum(rows[i][t] * rows[j][t] for t in range(n))) for j in range(k)] for i in range(k)]
    y = [Fraction(sum(rows[i][t] * x[t] for t in range(n))) for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if G[r][col] != 0)
        G[col], G[piv] = G[piv], G[col]
        y[col], y[piv] = y[piv], y[col]
        for r in range(k):
            if r != col and G[r][col]:
                f = G[r][col] / G[col][col]
                G[r] = [a - f * b for a, b in zip(G[r], G[col])]
                y[r] -= f * y[col]
    c = [y[i] / G[i][i] for i in range(k)]
    back = [sum(c[i] * rows[i][t] for i in range(k)) for t in range(n)]
    return c if back == list(x) else None


def integer_span_contains(rows, x):
    c = rational_solve_in_span(rows, x)
    return c is not None and all(v.denominator == 1 for v in c)


# --- acceptance report -----------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
