"""Characteristic pairs of polygons and their basic invariants.

Edges and vertices are numbered from 1 the cyclic way round the polygon:
vertex ``i`` is where edge ``i`` meets edge ``i + 1`` and edge ``m + 1`` is
edge ``1``.
"""

import random
from dataclasses import dataclass
from math import gcd

from .errors import GenerationFailed, IndexOutOfRange, InvalidPair, NoSmoothVertex
from .lattice import invert_2x2, snf

MAX_RETRIES = 10_000


def det2(u, v):
    return u[0] * v[1] - v[0] * u[1]


@dataclass(frozen=True)
class Violation:
    kind: str  # TooFewEdges | Malformed | ZeroVector | NotPrimitive | DegenerateVertex
    index: int | None = None
    detail: str = ""

    def __str__(self):
        where = "" if self.index is None else f"({self.index})"
        return f"{self.kind}{where}" + (f": {self.detail}" if self.detail else "")


def _violations(raw):
    out = []
    vecs = []
    for k, entry in enumerate(raw, start=1):
        try:
            a, b = entry
            if isinstance(a, bool) or isinstance(b, bool):
                raise TypeError
            vec = (int(a), int(b))
            if vec != (a, b):
                raise ValueError
        except (TypeError, ValueError):
            out.append(Violation("Malformed", k, f"{entry!r} is not an integer pair"))
            vecs.append(None)
            continue
        vecs.append(vec)
        if vec == (0, 0):
            out.append(Violation("ZeroVector", k))
        elif gcd(*vec) != 1:
            out.append(Violation("NotPrimitive", k, f"gcd{vec} = {gcd(*vec)}"))
    m = len(vecs)
    if m < 3:
        out.append(Violation("TooFewEdges", None, f"m = {m}, need at least 3"))
        return out
    for i in range(m):
        u, v = vecs[i], vecs[(i + 1) % m]
        if u is not None and v is not None and det2(u, v) == 0:
            out.append(Violation("DegenerateVertex", i + 1, f"det(λ_{i + 1}, λ_{(i + 1) % m + 1}) = 0"))
    return out


@dataclass(frozen=True)
class CharacteristicPair:
    """An m-gon with a primitive vector ``λ_i = (a_i, b_i)`` on each edge.

    Construction raises :class:`InvalidPair` unless every vector is primitive
    and every pair of consecutive vectors is linearly independent.
    """

    lambdas: tuple

    def __post_init__(self):
        problems = _violations(self.lambdas)
        if problems:
            raise InvalidPair(problems)
        object.__setattr__(self, "lambdas", tuple((int(a), int(b)) for a, b in self.lambdas))

    @property
    def m(self):
        return len(self.lambdas)

    @property
    def a(self):
        return tuple(v[0] for v in self.lambdas)

    @property
    def b(self):
        return tuple(v[1] for v in self.lambdas)

    @property
    def matrix(self):
        """The 2 x m matrix with columns ``λ_1, ..., λ_m``."""
        return (self.a, self.b)

    def vector(self, i):
        """``λ_i`` for a 1-based, cyclic index."""
        return self.lambdas[(i - 1) % self.m]

    def check_index(self, i):
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"index {i} outside 1..{self.m}")

    def vertex_det(self, i):
        return det2(self.vector(i), self.vector(i + 1))

    def vertex_dets(self):
        return tuple(self.vertex_det(i) for i in range(1, self.m + 1))

    def is_smooth(self):
        return all(abs(d) == 1 for d in self.vertex_dets())

    def in_standard_position(self):
        return self.lambdas[-2:] == ((1, 0), (0, 1))


def validate(raw):
    """Return a :class:`CharacteristicPair`, or the list of every violation."""
    raw = list(raw)
    problems = _violations(raw)
    if problems:
        return problems
    return CharacteristicPair(tuple(raw))


@dataclass(frozen=True)
class TopologyReport:
    minor_gcd: int
    h3_invariants: tuple
    even_cohomology: bool


def minor_gcd(pair):
    g = 0
    vs = pair.lambdas
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            g = gcd(g, det2(vs[i], vs[j]))
    return g


def even_cohomology_check(pair):
    """Gcd of all 2x2 minors together with the torsion of ``Z^2 / span{λ_i}``.

    The two are computed separately (minors directly, torsion from the Smith
    form) so each can check the other.
    """
    g = minor_gcd(pair)
    torsion = tuple(d for d in snf(pair.matrix).elementary_divisors if d > 1)
    return TopologyReport(minor_gcd=g, h3_invariants=torsion, even_cohomology=g == 1)


@dataclass(frozen=True)
class VertexChart:
    index: int
    A: tuple  # columns λ_i, λ_{i+1}
    det: int

    def inverse(self):
        return invert_2x2(self.A)


def vertex_chart(pair, i):
    pair.check_index(i)
    (a1, b1), (a2, b2) = pair.vector(i), pair.vector(i + 1)
    return VertexChart(i, ((a1, a2), (b1, b2)), a1 * b2 - a2 * b1)


def vertex_charts(pair):
    return tuple(vertex_chart(pair, i) for i in range(1, pair.m + 1))


@dataclass(frozen=True)
class SmoothNormalization:
    """``pair`` is ``g`` applied to the input rotated left by ``rotation``.

    So ``pair.lambdas[k] == g @ original.lambdas[(k + rotation) % m]``.
    """

    pair: CharacteristicPair
    g: tuple
    rotation: int


def normalize_smooth(pair):
    """Move the first smooth vertex to ``λ_{m-1} = (1, 0)``, ``λ_m = (0, 1)``.

    Raises :class:`NoSmoothVertex` if every consecutive determinant is
    different from ±1.
    """
    m = pair.m
    for i in range(1, m + 1):
        if abs(pair.vertex_det(i)) == 1:
            break
    else:
        raise NoSmoothVertex(f"consecutive determinants {pair.vertex_dets()}")
    inv = invert_2x2(vertex_chart(pair, i).A)
    g = tuple(tuple(int(x) for x in row) for row in inv)
    rotation = (i + 1) % m
    rotated = pair.lambdas[rotation:] + pair.lambdas[:rotation]
    moved = tuple(
        (g[0][0] * a + g[0][1] * b, g[1][0] * a + g[1][1] * b) for a, b in rotated
    )
    return SmoothNormalization(CharacteristicPair(moved), g, rotation)


def random_pair(m, bound, seed):
    """Seeded random characteristic pair with entries in ``[-bound, bound]``.

    Each vector is rejection-sampled until it is primitive and independent of
    its predecessor (and, for the last one, of ``λ_1``), at most
    ``MAX_RETRIES`` draws per vector.
    """
    if m < 3 or bound < 1:
        raise ValueError("need m >= 3 and bound >= 1")
    rng = random.Random(seed)
    vecs = []
    for k in range(m):
        for _ in range(MAX_RETRIES):
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if gcd(*v) != 1:
                continue
            if vecs and det2(vecs[-1], v) == 0:
                continue
            if k == m - 1 and det2(v, vecs[0]) == 0:
                continue
            vecs.append(v)
            break
        else:
            raise GenerationFailed(f"no admissible vector for slot {k + 1} after {MAX_RETRIES} draws")
    return CharacteristicPair(tuple(vecs))
