"""Degree-two part of the weighted Stanley-Reisner ring of a polygon.

A degree-two class ``sum c_i x_i`` is stored as its coefficient tuple
``(c_1, ..., c_m)``.  The module gives two independent ways to get the
lattice of such classes: the closed form ``Z a + Z b + phi(K)``
(:func:`wsr2_basis`) and the brute intersection of the per-vertex lattices
``L_1 ∩ ... ∩ L_m`` (:func:`intersection_oracle`).  Membership can be
decided three ways: by lattice membership, by per-vertex Cramer solves
(:func:`wsr2_member`) and by substitution (:func:`integrality_check`).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DimensionMismatch
from .lattice import (
    Lattice,
    determinant,
    identity,
    invert_2x2,
    kernel_basis,
    lattice_intersect,
    rank,
)
from .pair import det2, even_cohomology_check, vertex_chart


def _check_length(pair, vec):
    if len(vec) != pair.m:
        raise DimensionMismatch(f"expected {pair.m} coordinates, got {len(vec)}")


# ---------------------------------------------------------------------------
# lattices


def lattice_Li(pair, i):
    """Row lattice of the identity with the vertex-``i`` block spliced in."""
    pair.check_index(i)
    m = pair.m
    rows = [list(r) for r in identity(m)]
    (a1, b1), (a2, b2) = pair.vector(i), pair.vector(i + 1)
    r, s = i - 1, i % m  # 0-based positions of coordinates i and i + 1
    if i < m:
        rows[r][r], rows[r][s] = a1, a2
        rows[s][r], rows[s][s] = b1, b2
    else:
        # wraparound: a_1, a_m on the top corners, b_1, b_m on the bottom ones
        rows[0][0], rows[0][m - 1] = a2, a1
        rows[m - 1][0], rows[m - 1][m - 1] = b2, b1
    return Lattice.from_generators(rows, m)


def relation_lattice_K(pair):
    """Basis of the integer relations ``{t : sum t_i λ_i = 0}``, m - 2 rows."""
    return kernel_basis(pair.matrix, pair.m)


def phi(pair, t):
    """``w_1 = 0`` and ``w_i = sum_{j<i} det(λ_j, λ_i) t_j``."""
    _check_length(pair, t)
    vs = pair.lambdas
    return tuple(
        sum(det2(vs[j], vs[i]) * t[j] for j in range(i)) for i in range(pair.m)
    )


@dataclass(frozen=True)
class Wsr2Basis:
    a_form: tuple
    b_form: tuple
    kernel: tuple
    phi_images: tuple
    even_cohomology: bool

    @property
    def vectors(self):
        return (self.a_form, self.b_form) + self.phi_images

    def lattice(self):
        return Lattice.from_generators(self.vectors, len(self.a_form))

    def determinant(self):
        return determinant(self.vectors)


def wsr2_basis(pair):
    """Closed-form basis ``a, b, phi(κ_1), ..., phi(κ_{m-2})``.

    Computed for every valid pair; ``even_cohomology`` records whether the
    cohomological reading (odd cohomology vanishing) applies.
    """
    kernel = relation_lattice_K(pair)
    return Wsr2Basis(
        a_form=pair.a,
        b_form=pair.b,
        kernel=kernel,
        phi_images=tuple(phi(pair, k) for k in kernel),
        even_cohomology=even_cohomology_check(pair).even_cohomology,
    )


def wsr2_lattice(pair):
    return wsr2_basis(pair).lattice()


def intersection_oracle(pair):
    """``L_1 ∩ ... ∩ L_m`` by repeated generic intersection."""
    return reduce(lattice_intersect, (lattice_Li(pair, i) for i in range(1, pair.m + 1)))


def phi_rank(pair, kernel=None):
    if kernel is None:
        kernel = relation_lattice_K(pair)
    images = [phi(pair, k) for k in kernel]
    return rank(images, pair.m) if images else 0


# ---------------------------------------------------------------------------
# per-vertex membership


def wsr2_obstruction(pair, c):
    """First vertex where ``(c_i, c_{i+1})`` is not an integral combination.

    Returns ``None`` when ``c`` is in wSR^2, else ``(vertex, p, q)`` with the
    rational solution of ``c_i = a_i p + b_i q``, ``c_{i+1} = a_{i+1} p + b_{i+1} q``.
    """
    _check_length(pair, c)
    m = pair.m
    for i in range(1, m + 1):
        (a1, b1), (a2, b2) = pair.vector(i), pair.vector(i + 1)
        x, y = c[i - 1], c[i % m]
        d = a1 * b2 - a2 * b1
        p_num = x * b2 - y * b1
        q_num = a1 * y - a2 * x
        if p_num % d or q_num % d:
            return (i, Fraction(p_num, d), Fraction(q_num, d))
    return None


def wsr2_member(pair, c):
    return wsr2_obstruction(pair, c) is None


def is_face(pair, S):
    """Whether the edges in ``S`` (1-based) meet: empty, single, or adjacent."""
    S = set(S)
    m = pair.m
    for i in S:
        pair.check_index(i)
    if len(S) <= 1:
        return True
    if len(S) == 2:
        i, j = sorted(S)
        return j - i == 1 or (i == 1 and j == m)
    return False


# ---------------------------------------------------------------------------
# polynomials and the integrality condition


class SRPolynomial:
    """Polynomial in ``x_1..x_m`` with integer coefficients.

    ``terms`` maps exponent tuples to nonzero ints.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms, nvars=None):
        clean = {}
        for exp, coeff in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if nvars is None:
                nvars = len(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp}")
            coeff = clean.get(exp, 0) + int(coeff)
            if coeff:
                clean[exp] = coeff
            else:
                clean.pop(exp, None)
        if nvars is None:
            raise ValueError("zero polynomial needs nvars")
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def linear(cls, coeffs):
        m = len(coeffs)
        return cls(
            {tuple(int(k == j) for k in range(m)): c for j, c in enumerate(coeffs)}, m
        )

    @classmethod
    def monomial(cls, m, indices, coeff=1):
        """``coeff * prod x_i`` over the 1-based ``indices`` (repeats allowed)."""
        exp = [0] * m
        for i in indices:
            exp[i - 1] += 1
        return cls({tuple(exp): coeff}, m)

    def sorted_terms(self):
        # highest total degree first, then lexicographic exponent
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __add__(self, other):
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return SRPolynomial(out, self.nvars)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                out[exp] = out.get(exp, 0) + c1 * c2
        return SRPolynomial(out, self.nvars)

    def __eq__(self, other):
        return isinstance(other, SRPolynomial) and (self.nvars, self.terms) == (other.nvars, other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


# RatPoly2: dict {(e1, e2): Fraction} in u_1, u_2, zero coefficients dropped


def _rp_mul(p, q):
    out = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _rp_pow(p, e):
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _rp_mul(out, p)
    return out


def vertex_substitution(pair, i):
    """The m-tuple ``z^v`` at vertex ``i`` as polynomials in ``u_1, u_2``."""
    chart = vertex_chart(pair, i)
    inv = invert_2x2(chart.A)
    z = [{} for _ in range(pair.m)]
    for slot, row in zip((i - 1, i % pair.m), inv):
        z[slot] = {k: v for k, v in zip(((1, 0), (0, 1)), row) if v}
    return tuple(z)


def substitute(pair, f, i):
    """``f(z^v)`` at vertex ``i``."""
    if f.nvars != pair.m:
        raise DimensionMismatch(f"polynomial in {f.nvars} variables, pair has m = {pair.m}")
    z = vertex_substitution(pair, i)
    live = {i - 1, i % pair.m}
    out = {}
    for exp, coeff in f.terms.items():
        if any(e and j not in live for j, e in enumerate(exp)):
            continue
        term = {(0, 0): Fraction(coeff)}
        for j in sorted(live):
            if exp[j]:
                term = _rp_mul(term, _rp_pow(z[j], exp[j]))
        for k, v in term.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class IntegralityWitness:
    vertex: int
    monomial: tuple  # exponents (e1, e2) of u_1^e1 u_2^e2
    coefficient: Fraction


@dataclass(frozen=True)
class IntegralityResult:
    passed: bool
    witness: IntegralityWitness | None = None

    def __bool__(self):
        return self.passed


def integrality_check(pair, f):
    """Check ``f(z^v)`` has integer coefficients at every vertex, in order."""
    for i in range(1, pair.m + 1):
        sub = substitute(pair, f, i)
        for mono in sorted(sub):
            c = sub[mono]
            if c.denominator != 1:
                return IntegralityResult(False, IntegralityWitness(i, mono, c))
    return IntegralityResult(True)
