"""Monomials, edge ideals of graphs, their powers and Newton polytope checks."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
import logging
from math import comb
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.solvers.simplex import InfeasibleLPError, linprog

from .config import DEFAULT_SETTINGS, Settings
from .errors import GuardExceeded, InvalidInput

_log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial x^a stored as its exponent vector (x_k at index k-1)."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise InvalidInput(f"negative exponent in {self.exponents}")

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def from_support(cls, n: int, variables: Iterable[int]) -> Monomial:
        """Product of the given variables (1-based), with repetition."""

        exponents = [0] * n
        for k in variables:
            if not 1 <= k <= n:
                raise InvalidInput(f"variable x{k} outside x1..x{n}")
            exponents[k - 1] += 1
        return cls(tuple(exponents))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def _check_same_ring(self, other: Monomial) -> None:
        if self.n != other.n:
            raise InvalidInput(f"monomials in {self.n} and {other.n} variables")

    def divides(self, other: Monomial) -> bool:
        self._check_same_ring(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        self._check_same_ring(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __mul__(self, other: Monomial) -> Monomial:
        self._check_same_ring(other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        factors = [
            f"x{k}" if e == 1 else f"x{k}^{e}"
            for k, e in enumerate(self.exponents, start=1)
            if e
        ]
        return "*".join(factors) or "1"


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices 1..vertex_count, optionally with a bipartition."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    bipartition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise InvalidInput("a graph needs at least one vertex")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= self.vertex_count:
                    raise InvalidInput(f"edge {u}{v} leaves vertices 1..{self.vertex_count}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

        if self.bipartition is not None:
            left, right = (frozenset(part) for part in self.bipartition)
            if left & right or left | right != frozenset(range(1, self.vertex_count + 1)):
                raise InvalidInput("bipartition must split the vertex set")
            for u, v in self.edges:
                if (u in left) == (v in left):
                    raise InvalidInput(f"edge {u}{v} lies inside one part")
            object.__setattr__(self, "bipartition", (left, right))

    @classmethod
    def path(cls, n: int) -> Graph:
        odd = frozenset(range(1, n + 1, 2))
        even = frozenset(range(2, n + 1, 2))
        return cls(n, frozenset((v, v + 1) for v in range(1, n)), (odd, even))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise InvalidInput("a cycle needs at least three vertices")
        edges = frozenset({(v, v + 1) for v in range(1, n)} | {(1, n)})
        parts = None
        if n % 2 == 0:
            parts = (frozenset(range(1, n + 1, 2)), frozenset(range(2, n + 1, 2)))
        return cls(n, edges, parts)


@dataclass(frozen=True)
class GeneratorSet:
    """Deduplicated monomial generators in lex order (x1 > x2 > ...)."""

    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        if any(g.n != self.n for g in self.gens):
            raise InvalidInput("generators live in different rings")
        ordered = tuple(sorted(set(self.gens), reverse=True))
        object.__setattr__(self, "gens", ordered)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def exponents(self) -> list[tuple[int, ...]]:
        return [g.exponents for g in self.gens]

    def is_minimal(self) -> bool:
        return not any(
            a.divides(b) for a in self.gens for b in self.gens if a != b
        )


@dataclass(frozen=True)
class LatticeReport:
    holds: bool
    lattice_points: int
    generators: int
    extra: tuple[tuple[int, ...], ...] = ()
    missing: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class DilationReport:
    holds: bool
    dilated_vertices: int
    generators: int
    outside: tuple[tuple[int, ...], ...] = ()


def edge_ideal_gens(g: Graph) -> GeneratorSet:
    if not g.edges:
        raise InvalidInput("empty ideal")
    return GeneratorSet(
        g.vertex_count,
        tuple(Monomial.from_support(g.vertex_count, edge) for edge in g.edges),
    )


def power_gens(
    gens: GeneratorSet, d: int, *, settings: Settings = DEFAULT_SETTINGS
) -> GeneratorSet:
    """All products of d generators, deduplicated."""

    if d < 1:
        raise InvalidInput(f"power d must be positive, got {d}")
    if d == 1:
        return gens
    candidates = comb(len(gens) + d - 1, d)
    if candidates > settings.product_limit:
        raise GuardExceeded("candidate products", candidates, settings.product_limit)

    products = set()
    for factors in combinations_with_replacement(gens.gens, d):
        monomial = factors[0]
        for factor in factors[1:]:
            monomial = monomial * factor
        products.add(monomial)
    _log.debug("expanded %s products into %s generators", candidates, len(products))
    return GeneratorSet(gens.n, tuple(products))


def lcm_of(ms: Iterable[Monomial]) -> Monomial:
    ms = list(ms)
    if not ms:
        raise InvalidInput("lcm of an empty set")
    result = ms[0]
    for m in ms[1:]:
        result = result.lcm(m)
    return result


def _is_feasible(columns: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Exact LP feasibility over the rationals: is there x >= 0 with A x = b?"""

    A = Matrix([list(row) for row in zip(*columns)])
    b = Matrix(list(target))
    # equality as a pair of inequalities; linprog pads b wrongly when only A_eq is given
    try:
        linprog([0] * len(columns), A=A.col_join(-A), b=b.col_join(-b))
    except InfeasibleLPError:
        return False
    return True


def hull_membership(
    p: Sequence[int],
    verts: Iterable[Sequence[int]],
    *,
    settings: Settings = DEFAULT_SETTINGS,
) -> bool:
    """Exact test of whether p is a convex combination of verts."""

    verts = [tuple(v) for v in verts]
    p = tuple(p)
    if len(verts) > settings.hull_vertex_limit:
        raise GuardExceeded("hull vertices", len(verts), settings.hull_vertex_limit)
    if any(len(v) != len(p) for v in verts):
        raise InvalidInput("lattice points of different dimensions")
    if not verts:
        return False
    if p in verts:
        return True
    columns = [v + (1,) for v in verts]
    return _is_feasible(columns, p + (1,))


def _check_lattice_guards(g: Graph, d: int, settings: Settings) -> None:
    if g.bipartition is None:
        raise InvalidInput("graph has no bipartition")
    if d < 1:
        raise InvalidInput(f"power d must be positive, got {d}")
    if g.vertex_count > settings.lattice_max_n:
        raise GuardExceeded("vertex count", g.vertex_count, settings.lattice_max_n)
    if d > settings.lattice_max_d:
        raise GuardExceeded("power", d, settings.lattice_max_d)


def verify_lattice_generators(
    g: Graph, d: int, *, settings: Settings = DEFAULT_SETTINGS
) -> LatticeReport:
    """Compare the lattice points of Newt(I_G^d) with the generators of I_G^d."""

    _check_lattice_guards(g, d, settings)
    verts = power_gens(edge_ideal_gens(g), d, settings=settings).exponents()
    n = g.vertex_count

    lattice = [
        point
        for point in product(range(d + 1), repeat=n)
        if sum(point) == 2 * d and hull_membership(point, verts, settings=settings)
    ]
    found, expected = set(lattice), set(verts)
    _log.info("graph on %s vertices, d=%s: %s lattice points", n, d, len(lattice))
    return LatticeReport(
        holds=found == expected,
        lattice_points=len(lattice),
        generators=len(verts),
        extra=tuple(sorted(found - expected)),
        missing=tuple(sorted(expected - found)),
    )


def verify_dilation(
    g: Graph, d: int, *, settings: Settings = DEFAULT_SETTINGS
) -> DilationReport:
    """Check Newt(I_G^d) = d * Newt(I_G) on vertex sets."""

    _check_lattice_guards(g, d, settings)
    base = edge_ideal_gens(g)
    powers = power_gens(base, d, settings=settings).exponents()
    dilated = [tuple(d * e for e in v) for v in base.exponents()]

    present = set(powers)
    outside = [v for v in dilated if v not in present]
    outside += [
        p for p in powers if not hull_membership(p, dilated, settings=settings)
    ]
    return DilationReport(
        holds=not outside,
        dilated_vertices=len(dilated),
        generators=len(powers),
        outside=tuple(sorted(set(outside))),
    )
