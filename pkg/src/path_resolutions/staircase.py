"""The staircase complex Y^d_n, stored as box diagrams of X_{d,d+n-2}.

A cell is a tuple of d nonempty rows; row i (1-based) holds elements of
[i, i+n-2] and every element of row i is below every element of row i+1.
Element j of row i is the box in column j-i+1, i.e. the edge (j-i+1)(j-i+2)
of the path P_n.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
import logging
from typing import Iterable, Iterator, Mapping

from .config import DEFAULT_SETTINGS, Settings
from .errors import GuardExceeded, InvalidInput
from .ideals import Monomial

_log = logging.getLogger(__name__)

LatticePoint = tuple[int, ...]


@dataclass(frozen=True)
class Cell:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(sorted(set(row))) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 2 or not rows:
            raise InvalidInput("a cell needs n >= 2 and at least one row")
        for i, row in enumerate(rows, start=1):
            if not row:
                raise InvalidInput(f"row {i} is empty")
            if row[0] < i or row[-1] > i + self.n - 2:
                raise InvalidInput(f"row {i} leaves [{i}, {i + self.n - 2}]")
        for upper, lower in zip(rows, rows[1:]):
            if upper[-1] >= lower[0]:
                raise InvalidInput(f"staircase violated between {upper} and {lower}")

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return sum(len(row) - 1 for row in self.rows)

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(j for row in self.rows for j in row)

    def columns(self, i: int) -> tuple[int, ...]:
        """Box columns of row i (1-based), i.e. the edges of P_n it uses."""

        return tuple(j - i + 1 for j in self.rows[i - 1])

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.flat, tuple(len(row) for row in self.rows)

    def __str__(self) -> str:
        return "x".join("{" + ",".join(map(str, row)) + "}" for row in self.rows)


@dataclass(frozen=True)
class ComplexYdn:
    """All cells of Y^d_n in canonical order; ids are positions in `cells`."""

    n: int
    d: int
    cells: tuple[Cell, ...]
    labels: tuple[Monomial, ...]
    boundaries: tuple[tuple[tuple[int, int], ...], ...]
    index: Mapping[Cell, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    def dim(self, cell_id: int) -> int:
        return self.cells[cell_id].dim

    @property
    def top_dimension(self) -> int:
        return max(cell.dim for cell in self.cells)

    def ids_of_dimension(self, k: int) -> list[int]:
        return [i for i, cell in enumerate(self.cells) if cell.dim == k]

    def vertex_ids(self) -> list[int]:
        return self.ids_of_dimension(0)


def covered_vertices(row: Iterable[int], i: int, n: int | None = None) -> frozenset[int]:
    """V(sigma_i): vertices of P_n covered by the boxes of row i."""

    row = tuple(row)
    if not row:
        raise InvalidInput("row is empty")
    upper = i + n - 2 if n is not None else None
    covered = set()
    for j in row:
        if j < i or (upper is not None and j > upper):
            raise InvalidInput(f"element {j} outside row {i}")
        covered.update((j - i + 1, j - i + 2))
    return frozenset(covered)


def cell_label(c: Cell) -> Monomial:
    exponents = [0] * c.n
    for i, row in enumerate(c.rows, start=1):
        for k in covered_vertices(row, i, c.n):
            exponents[k - 1] += 1
    return Monomial(tuple(exponents))


def vertex_realization(c: Cell) -> LatticePoint:
    if not c.is_vertex:
        raise InvalidInput(f"{c} is not a vertex")
    point = [0] * c.n
    for i, (a,) in enumerate(c.rows, start=1):
        point[a - i] += 1
        point[a - i + 1] += 1
    return tuple(point)


def boundary(c: Cell) -> list[tuple[Cell, int]]:
    """Facets with the product-of-simplices signs (Koszul prefix sign per row)."""

    facets = []
    prefix = 0
    for i, row in enumerate(c.rows):
        if len(row) >= 2:
            for t, element in enumerate(row):
                rows = list(c.rows)
                rows[i] = row[:t] + row[t + 1:]
                sign = (-1) ** (t + prefix)
                facets.append((Cell(c.n, tuple(rows)), sign))
        prefix += len(row) - 1
    return facets


def count_cells(n: int, d: int) -> int:
    """Number of cells of Y^d_n, by dynamic programming over rows."""

    m = d + n - 2
    ways: dict[int, int] = {0: 1}
    for r in range(1, d + 1):
        bound = m - (d - r)
        following: dict[int, int] = defaultdict(int)
        for last, count in ways.items():
            for low in range(last + 1, bound + 1):
                for high in range(low, bound + 1):
                    following[high] += count * 2 ** max(high - low - 1, 0)
        ways = following
    return sum(ways.values())


def _rows_between(start: int, bound: int) -> Iterator[tuple[int, ...]]:
    for low in range(start, bound + 1):
        yield (low,)
        for high in range(low + 1, bound + 1):
            inner = range(low + 1, high)
            for size in range(len(inner) + 1):
                for chosen in combinations(inner, size):
                    yield (low, *chosen, high)


def _staircases(n: int, d: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    m = d + n - 2

    def extend(prefix: tuple[tuple[int, ...], ...], last: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        r = len(prefix) + 1
        if r > d:
            yield prefix
            return
        for row in _rows_between(last + 1, m - (d - r)):
            yield from extend(prefix + (row,), row[-1])

    yield from extend((), 0)


def enumerate_cells(n: int, d: int, *, settings: Settings = DEFAULT_SETTINGS) -> ComplexYdn:
    if n < 2 or d < 1:
        raise InvalidInput(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    total = count_cells(n, d)
    if total > settings.cell_limit:
        raise GuardExceeded("cell count", total, settings.cell_limit)

    cells = sorted((Cell(n, rows) for rows in _staircases(n, d)), key=Cell.sort_key)
    index = {cell: i for i, cell in enumerate(cells)}
    labels = tuple(cell_label(cell) for cell in cells)
    boundaries = tuple(
        tuple((index[face], sign) for face, sign in boundary(cell)) for cell in cells
    )
    _log.info("Y^%s_%s: %s cells, top dimension %s", d, n, len(cells), n - 2)
    return ComplexYdn(n, d, tuple(cells), labels, boundaries, index)


def subcomplex_leq(X: ComplexYdn, alpha: Monomial) -> frozenset[int]:
    if alpha.n != X.n:
        raise InvalidInput(f"monomial in {alpha.n} variables, complex in {X.n}")
    return frozenset(i for i, label in enumerate(X.labels) if label.divides(alpha))


def f_vector(X: ComplexYdn) -> tuple[int, ...]:
    counts = Counter(cell.dim for cell in X.cells)
    return tuple(counts[k] for k in range(X.top_dimension + 1))


def euler_characteristic(X: ComplexYdn) -> int:
    return sum((-1) ** k * count for k, count in enumerate(f_vector(X)))


def label_collisions(X: ComplexYdn) -> list[tuple[int, int]]:
    """(face, cell) pairs of codimension one carrying the same label."""

    return [
        (face, cell_id)
        for cell_id, faces in enumerate(X.boundaries)
        for face, _ in faces
        if X.labels[face] == X.labels[cell_id]
    ]
