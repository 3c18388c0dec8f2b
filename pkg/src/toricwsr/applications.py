"""Ordinary cohomology and divisor data derived from the degree-two basis.

Passing from equivariant to ordinary cohomology divides out the linear
ideal J generated by ``sum a_i x_i`` and ``sum b_i x_i``.
"""

from dataclasses import dataclass, field

from .errors import CheckFailed, NotInStandardPosition
from .lattice import Lattice, lattice_member, snf
from .pair import even_cohomology_check
from .wsr import SRPolynomial, _check_length, integrality_check, phi, wsr2_basis


def ideal_J_generators(pair):
    return pair.a, pair.b


def _j_lattice(pair):
    return Lattice.from_generators(ideal_J_generators(pair), pair.m)


@dataclass(frozen=True)
class CosetClass:
    """A degree-two class modulo J.

    Equality compares ``canonical_rep`` only.  ``chart_rep`` is the
    representative supported on ``x_1..x_{m-2}``, present only when
    ``λ_{m-1} = (1, 0)`` and ``λ_m = (0, 1)``.
    """

    canonical_rep: tuple
    chart_rep: tuple | None = field(default=None, compare=False)

    @property
    def is_zero(self):
        return not any(self.canonical_rep)


def reduce_mod_J(pair, c):
    _check_length(pair, c)
    vec = [int(v) for v in c]
    J = _j_lattice(pair)
    for row, (j, p) in zip(J.basis, J.pivots):
        q = vec[j] // p
        if q:
            vec = [u - q * v for u, v in zip(vec, row)]
    chart = None
    if pair.in_standard_position():
        m = pair.m
        s, t = c[m - 2], c[m - 1]
        chart = tuple(c[k] - s * pair.a[k] - t * pair.b[k] for k in range(m - 2)) + (0, 0)
    return CosetClass(tuple(vec), chart)


def cellular_u(pair):
    """Chart coefficients of u_1..u_{m-2}: ``a_k b_i`` for k <= i, ``a_i b_k`` after."""
    m = pair.m
    a, b = pair.a, pair.b
    return tuple(
        tuple(a[k] * b[i] if k <= i else a[i] * b[k] for k in range(m - 2)) + (0, 0)
        for i in range(m - 2)
    )


def xi_basis(pair):
    """Relations ``e_i - a_i e_{m-1} - b_i e_m`` for i = 1..m-2."""
    m = pair.m
    return tuple(
        tuple(int(k == i) for k in range(m - 2)) + (-pair.a[i], -pair.b[i])
        for i in range(m - 2)
    )


@dataclass(frozen=True)
class CellularBasis:
    u: tuple
    v: SRPolynomial
    xi: tuple
    phi_xi: tuple


def cellular_basis(pair):
    """Algebraic cellular basis of a pair in standard position.

    Each ``u_i`` is checked against ``phi(xi_i)`` modulo J and against the
    integrality condition; a failure raises :class:`CheckFailed`.
    """
    if not pair.in_standard_position():
        raise NotInStandardPosition(
            f"need λ_(m-1) = (1, 0) and λ_m = (0, 1), got {pair.lambdas[-2:]}"
        )
    m = pair.m
    J = _j_lattice(pair)
    us = cellular_u(pair)
    xis = xi_basis(pair)
    images = tuple(phi(pair, xi) for xi in xis)
    for i, (u, w) in enumerate(zip(us, images), start=1):
        diff = tuple(x - y for x, y in zip(u, w))
        if not lattice_member(J, diff):
            raise CheckFailed(f"u_{i} - phi(xi_{i}) not in J", {"i": i, "difference": diff})
        res = integrality_check(pair, SRPolynomial.linear(u))
        if not res.passed:
            raise CheckFailed(f"u_{i} fails the integrality condition", res.witness)
    v = SRPolynomial.monomial(m, (m - 1, m))
    res = integrality_check(pair, v)
    if not res.passed:
        raise CheckFailed("x_(m-1) x_m fails the integrality condition", res.witness)
    return CellularBasis(u=us, v=v, xi=xis, phi_xi=images)


@dataclass(frozen=True)
class PicardReport:
    cartier_basis: tuple
    picard_basis: tuple
    class_free_rank: int
    class_torsion: tuple
    index: int
    hypothesis_satisfied: bool


def picard_report(pair):
    """Cartier divisors, Picard group, class group and ``[Cl : Pic]``.

    ``hypothesis_satisfied`` is False when the odd cohomology does not vanish;
    the numbers are still reported.
    """
    basis = wsr2_basis(pair)
    # Cl = coker(M -> Div), M -> Div being m |-> (<m, λ_i>)_i, i.e. Λ^T
    lam_t = tuple(zip(pair.a, pair.b))
    torsion = tuple(d for d in snf(lam_t).elementary_divisors if d > 1)
    return PicardReport(
        cartier_basis=basis.vectors,
        picard_basis=basis.phi_images,
        class_free_rank=pair.m - 2,
        class_torsion=torsion,
        index=abs(basis.determinant()),
        hypothesis_satisfied=even_cohomology_check(pair).even_cohomology,
    )
