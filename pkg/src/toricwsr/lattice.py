"""Exact integer linear algebra over Z.

Matrices are tuples of row tuples of Python ints, so every entry is an
arbitrary-precision integer and every result is exact.  A matrix with no rows
cannot record its width, so functions that may see one take an explicit
``ncols``.

Conventions
-----------
* Hermite normal form is row-style: pivots strictly move right going down,
  every pivot is positive, and entries above a pivot lie in ``[0, pivot)``.
  Zero rows sit at the bottom.
* Smith normal form is ``U @ M @ V == S`` with a nonnegative diagonal
  ``d_1 | d_2 | ...`` and unimodular ``U``, ``V``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import DegenerateMatrix, DimensionMismatch, NotFullRank

__all__ = [
    "Lattice",
    "SnfResult",
    "as_matrix",
    "determinant",
    "hnf_rows",
    "identity",
    "invert_2x2",
    "kernel_basis",
    "lattice_index",
    "lattice_intersect",
    "lattice_member",
    "matmul",
    "matvec",
    "rank",
    "snf",
    "transpose",
    "xgcd",
]


def as_matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def _width(M, ncols):
    if ncols is not None:
        if any(len(row) != ncols for row in M):
            raise DimensionMismatch(f"expected rows of length {ncols}")
        return ncols
    if not M:
        raise DimensionMismatch("empty matrix needs an explicit ncols")
    n = len(M[0])
    if any(len(row) != n for row in M):
        raise DimensionMismatch("ragged matrix")
    return n


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M, ncols=None):
    n = _width(M, ncols)
    return tuple(tuple(row[j] for row in M) for j in range(n))


def matmul(A, B, ncols=None):
    """Product ``A @ B``; ``ncols`` is the width of ``B`` when ``B`` has no rows."""
    inner = len(B)
    n = _width(B, ncols) if B else (ncols or 0)
    if any(len(row) != inner for row in A):
        raise DimensionMismatch("inner dimensions differ")
    cols = transpose(B, n) if B else ((),) * n
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in A)


def matvec(M, x):
    if any(len(row) != len(x) for row in M):
        raise DimensionMismatch("vector length does not match matrix width")
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def xgcd(a, b):
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def determinant(M):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form


def _row_combine(A, r, i, x, y, c, d, start=0):
    # (row_r, row_i) <- (x*row_r + y*row_i, c*row_r + d*row_i)
    Ar, Ai = A[r], A[i]
    for j in range(start, len(Ar)):
        u, v = Ar[j], Ai[j]
        Ar[j] = x * u + y * v
        Ai[j] = c * u + d * v


def hnf_rows(M, ncols=None):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H``, ``U`` unimodular and ``H`` of the
    same shape as ``M``.  The nonzero rows of ``H`` are the canonical basis of
    the row lattice of ``M``.

    >>> hnf_rows([[0, 0, -7]])[0]
    ((0, 0, 7),)
    """
    n = _width(M, ncols)
    H = [list(row) for row in M]
    k = len(H)
    U = [list(row) for row in identity(k)]
    r = 0
    for j in range(n):
        if r == k:
            break
        for i in range(r + 1, k):
            b = H[i][j]
            if b == 0:
                continue
            a = H[r][j]
            if a == 0:
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
                continue
            x, y, g = xgcd(a, b)
            c, d = -b // g, a // g
            _row_combine(H, r, i, x, y, c, d, j)
            _row_combine(U, r, i, x, y, c, d)
        p = H[r][j]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
            p = -p
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[r])]
                U[i] = [u - q * v for u, v in zip(U[i], U[r])]
        r += 1
    return as_matrix(H), as_matrix(U)


def rank(M, ncols=None):
    H, _ = hnf_rows(M, ncols)
    return sum(1 for row in H if any(row))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    S: tuple
    U: tuple
    V: tuple

    @property
    def diagonal(self):
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.V))))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    @property
    def elementary_divisors(self):
        """Nonzero diagonal entries, in divisibility order."""
        return tuple(d for d in self.diagonal if d)


def snf(M, ncols=None):
    """Smith normal form with unimodular witnesses ``U @ M @ V == S``.

    >>> snf([[2, 4], [6, 8]]).diagonal
    (2, 4)
    """
    n = _width(M, ncols)
    S = [list(row) for row in M]
    k = len(S)
    U = [list(row) for row in identity(k)]
    V = [list(row) for row in identity(n)]

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in S:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        S[dst] = [u + q * v for u, v in zip(S[dst], S[src])]
        U[dst] = [u + q * v for u, v in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(k, n)):
        best = None
        for i in range(t, k):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            for i in range(t + 1, k):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
            # any nonzero remainder is smaller than |p|; bring it to the corner
            small = None
            for i in range(t + 1, k):
                if S[i][t] and (small is None or abs(S[i][t]) < small[0]):
                    small = (abs(S[i][t]), i, None)
            for j in range(t + 1, n):
                if S[t][j] and (small is None or abs(S[t][j]) < small[0]):
                    small = (abs(S[t][j]), None, j)
            if small is not None:
                if small[1] is not None:
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[2])
                continue
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
    return SnfResult(as_matrix(S), as_matrix(U), as_matrix(V))


def kernel_basis(M, ncols=None):
    """Basis of the saturated integer kernel ``{x : M @ x == 0}`` in HNF.

    Built from the columns of the Smith witness ``V`` that sit over zero
    diagonal entries, then canonicalized.
    """
    n = _width(M, ncols)
    if not M:
        return identity(n)
    res = snf(M, n)
    r = res.rank
    gens = [tuple(V_row[j] for V_row in res.V) for j in range(r, n)]
    if not gens:
        return ()
    H, _ = hnf_rows(gens, n)
    return tuple(row for row in H if any(row))


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^ambient_dim`` stored by its canonical HNF basis.

    Two lattices are equal as sets exactly when they compare equal.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def from_generators(cls, rows, ambient_dim=None):
        rows = as_matrix(rows)
        n = _width(rows, ambient_dim)
        if not rows:
            return cls(n, ())
        H, _ = hnf_rows(rows, n)
        return cls(n, tuple(row for row in H if any(row)))

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @property
    def rank(self):
        return len(self.basis)

    @property
    def pivots(self):
        """``(column, value)`` of each pivot, top to bottom."""
        out = []
        for row in self.basis:
            j = next(j for j, v in enumerate(row) if v)
            out.append((j, row[j]))
        return tuple(out)

    def __contains__(self, x):
        return lattice_member(self, x)


def lattice_member(L, x):
    """Decide ``x in L`` by back-substitution along the HNF pivots."""
    if len(x) != L.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(x)} in Z^{L.ambient_dim}")
    vec = [int(v) for v in x]
    for row, (j, p) in zip(L.basis, L.pivots):
        if any(vec[:j]):
            return False
        q, rem = divmod(vec[j], p)
        if rem:
            return False
        if q:
            vec = [u - q * v for u, v in zip(vec, row)]
    return not any(vec)


def lattice_intersect(L1, L2):
    """``L1 ∩ L2`` via the left kernel of the stacked basis ``[B1; -B2]``."""
    if L1.ambient_dim != L2.ambient_dim:
        raise DimensionMismatch("lattices live in different ambient spaces")
    n = L1.ambient_dim
    if L1.rank == 0 or L2.rank == 0:
        return Lattice(n, ())
    stacked = L1.basis + tuple(tuple(-v for v in row) for row in L2.basis)
    r1 = L1.rank
    # pairs (u, v) with u @ B1 == v @ B2 are the kernel of stacked^T
    left = kernel_basis(transpose(stacked, n), len(stacked))
    gens = [matvec(transpose(L1.basis, n), uv[:r1]) for uv in left]
    return Lattice.from_generators(gens, n)


def lattice_index(L):
    """``[Z^m : L]``, the product of the HNF pivots."""
    if L.rank != L.ambient_dim:
        raise NotFullRank(f"rank {L.rank} lattice in Z^{L.ambient_dim} has infinite index")
    return prod(p for _, p in L.pivots)


def invert_2x2(A):
    """Inverse of an integer 2x2 matrix as Fractions, via the adjugate."""
    (a, b), (c, d) = A
    det = a * d - b * c
    if det == 0:
        raise DegenerateMatrix(f"singular matrix {A!r}")
    return (
        (Fraction(d, det), Fraction(-b, det)),
        (Fraction(-c, det), Fraction(a, det)),
    )
