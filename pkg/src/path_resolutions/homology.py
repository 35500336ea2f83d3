"""Homology over a prime field, resolution support checks and the Taylor oracle."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
import logging
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import GF, isprime
from sympy.polys.matrices import DomainMatrix

from .config import DEFAULT_SETTINGS, Settings
from .errors import GuardExceeded, InvalidInput, NotAComplex
from .ideals import GeneratorSet, Monomial
from .staircase import ComplexYdn, subcomplex_leq

_log = logging.getLogger(__name__)

Column = Mapping[int, int]

# products of two residues must stay inside int64
DENSE_PRIME_LIMIT = 3_037_000_493


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_SETTINGS.prime

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise InvalidInput(f"{self.p} is not prime")


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Bases C_0..C_top given by their ranks; boundaries[k] lists the columns of D_k.

    Column c of D_k maps basis element c of C_k to a sparse combination of
    C_{k-1} basis elements. boundaries[0] is always empty.
    """

    field: PrimeField
    ranks: tuple[int, ...]
    boundaries: tuple[tuple[dict[int, int], ...], ...]

    @classmethod
    def build(
        cls,
        field: PrimeField,
        ranks: Sequence[int],
        columns: Mapping[int, Sequence[Column]],
    ) -> ChainComplex:
        p = field.p
        boundaries: list[tuple[dict[int, int], ...]] = [()]
        for k in range(1, len(ranks)):
            cols = columns.get(k, ())
            if len(cols) != ranks[k]:
                raise InvalidInput(f"D_{k} has {len(cols)} columns for rank {ranks[k]}")
            reduced = []
            for col in cols:
                entries = {row: value % p for row, value in col.items() if value % p}
                if any(not 0 <= row < ranks[k - 1] for row in entries):
                    raise InvalidInput(f"D_{k} refers outside C_{k - 1}")
                reduced.append(entries)
            boundaries.append(tuple(reduced))
        return cls(field, tuple(ranks), tuple(boundaries))

    @property
    def is_empty(self) -> bool:
        return not any(self.ranks)


def _dense_rank(columns: Sequence[Column], row_count: int, p: int) -> int:
    matrix = np.zeros((row_count, len(columns)), dtype=np.int64)
    for c, col in enumerate(columns):
        for r, value in col.items():
            matrix[r, c] = value % p

    rank = 0
    for c in range(matrix.shape[1]):
        if rank == row_count:
            break
        candidates = np.nonzero(matrix[rank:, c])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            matrix[[rank, pivot]] = matrix[[pivot, rank]]
        inverse = pow(int(matrix[rank, c]), -1, p)
        matrix[rank, c:] = (matrix[rank, c:] * inverse) % p
        below = rank + 1 + np.nonzero(matrix[rank + 1:, c])[0]
        if below.size:
            factors = matrix[below, c][:, None]
            matrix[below, c:] = (matrix[below, c:] - factors * matrix[rank, c:]) % p
        rank += 1
    return rank


def _sparse_rank(columns: Sequence[Column], row_count: int, p: int) -> int:
    domain = GF(p)
    rows: dict[int, dict[int, object]] = defaultdict(dict)
    for c, col in enumerate(columns):
        for r, value in col.items():
            rows[r][c] = domain(value)
    return DomainMatrix(dict(rows), (row_count, len(columns)), domain).rank()


def matrix_rank(
    columns: Sequence[Column],
    row_count: int,
    field: PrimeField,
    *,
    dense_column_limit: int = DEFAULT_SETTINGS.dense_column_limit,
) -> int:
    """Rank over GF(p): dense int64 elimination for narrow matrices and small p, sparse otherwise."""

    if not columns or row_count == 0 or not any(columns):
        return 0
    if len(columns) <= dense_column_limit and field.p <= DENSE_PRIME_LIMIT:
        return _dense_rank(columns, row_count, field.p)
    return _sparse_rank(columns, row_count, field.p)


def _check_squares_to_zero(C: ChainComplex) -> None:
    p = C.field.p
    for k in range(2, len(C.ranks)):
        lower = C.boundaries[k - 1]
        for c, col in enumerate(C.boundaries[k]):
            image: dict[int, int] = defaultdict(int)
            for mid, coefficient in col.items():
                for row, value in lower[mid].items():
                    image[row] = (image[row] + coefficient * value) % p
            if any(image.values()):
                raise NotAComplex(f"not a complex: D_{k - 1} D_{k} is nonzero on column {c}")


def homology_ranks(
    C: ChainComplex,
    reduced: bool = False,
    *,
    settings: Settings = DEFAULT_SETTINGS,
) -> list[int]:
    """dim H_k for k = 0..top; with `reduced`, C_0 is augmented onto the field.

    An empty complex reports zeros; callers that care about H_{-1} test
    `is_empty` first.
    """

    _check_squares_to_zero(C)
    top = len(C.ranks)
    ranks = [0] * (top + 1)
    for k in range(1, top):
        ranks[k] = matrix_rank(
            C.boundaries[k],
            C.ranks[k - 1],
            C.field,
            dense_column_limit=settings.dense_column_limit,
        )
    augmentation = 0
    if reduced and top and C.ranks[0]:
        p = C.field.p
        if top > 1 and any(sum(col.values()) % p for col in C.boundaries[1]):
            raise NotAComplex("not a complex: augmentation does not vanish on D_1")
        augmentation = 1
    ranks[0] = augmentation
    return [C.ranks[k] - ranks[k] - ranks[k + 1] for k in range(top)]


def chain_complex(
    X: ComplexYdn,
    ids: Iterable[int] | None = None,
    field: PrimeField = PrimeField(),
) -> ChainComplex:
    """Cellular chain complex of X, or of a downward-closed set of its cells."""

    selected = sorted(range(len(X)) if ids is None else set(ids))
    if not selected:
        return ChainComplex.build(field, (), {})
    by_dim: dict[int, list[int]] = defaultdict(list)
    for cell_id in selected:
        by_dim[X.dim(cell_id)].append(cell_id)
    top = max(by_dim)
    position = {cell_id: pos for cells in by_dim.values() for pos, cell_id in enumerate(cells)}

    columns: dict[int, list[dict[int, int]]] = {}
    for k in range(1, top + 1):
        columns[k] = []
        for cell_id in by_dim[k]:
            col = {}
            for face, sign in X.boundaries[cell_id]:
                if face not in position:
                    raise InvalidInput(f"cell set is not closed under faces at {X.cells[cell_id]}")
                col[position[face]] = sign
            columns[k].append(col)
    ranks = [len(by_dim[k]) for k in range(top + 1)]
    return ChainComplex.build(field, ranks, columns)


def lcm_closure(labels: Iterable[Monomial]) -> set[Monomial]:
    """All lcms of nonempty subsets, as the fixpoint of pairwise lcms."""

    closure = set(labels)
    frontier = set(closure)
    while frontier:
        new = {a.lcm(b) for a in frontier for b in closure} - closure
        closure |= new
        frontier = new
    return closure


@dataclass(frozen=True)
class SupportReport:
    holds: bool
    checked: int
    failures: tuple[Monomial, ...] = ()


def verify_supports_resolution(
    X: ComplexYdn,
    *,
    field: PrimeField | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> SupportReport:
    """Check that every (Y^d_n)_{<= alpha} is acyclic, alpha over the lcm lattice."""

    if len(X) > settings.cell_limit:
        raise GuardExceeded("cell count", len(X), settings.cell_limit)
    field = field or PrimeField(settings.prime)
    alphas = sorted(lcm_closure(X.labels[i] for i in X.vertex_ids()))
    failures = []
    for alpha in alphas:
        ids = subcomplex_leq(X, alpha)
        C = chain_complex(X, ids, field)
        if C.is_empty or any(homology_ranks(C, reduced=True, settings=settings)):
            failures.append(alpha)
    _log.info("checked %s subcomplexes of Y^%s_%s, %s failures", len(alphas), X.d, X.n, len(failures))
    return SupportReport(not failures, len(alphas), tuple(failures))


@dataclass(frozen=True)
class BettiTableMulti:
    """beta_{i,alpha}(S/I), nonzero entries only."""

    n: int
    entries: Mapping[tuple[int, Monomial], int]

    def graded(self) -> dict[tuple[int, int], int]:
        totals: dict[tuple[int, int], int] = defaultdict(int)
        for (i, alpha), value in self.entries.items():
            totals[i, alpha.degree] += value
        return dict(totals)

    def euler_sum(self) -> int:
        return sum((-1) ** i * value for (i, _), value in self.entries.items())


def taylor_betti(
    gens: GeneratorSet,
    field: PrimeField = PrimeField(),
    *,
    settings: Settings = DEFAULT_SETTINGS,
) -> BettiTableMulti:
    """Multigraded Betti numbers read off the Taylor complex, one multidegree at a time."""

    m = len(gens)
    if m > settings.taylor_generator_limit:
        raise GuardExceeded("generator count", m, settings.taylor_generator_limit)
    exponents = gens.exponents()
    one = (0,) * gens.n

    lcms: list[tuple[int, ...]] = [one] * (1 << m)
    by_lcm: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for mask in range(1, 1 << m):
        low = mask & -mask
        rest = lcms[mask ^ low]
        gen = exponents[low.bit_length() - 1]
        lcms[mask] = tuple(max(a, b) for a, b in zip(rest, gen))
        by_lcm[lcms[mask]].append(mask)

    entries: dict[tuple[int, Monomial], int] = {(0, Monomial(one)): 1}
    for alpha in sorted(by_lcm):
        by_size: dict[int, list[int]] = defaultdict(list)
        for mask in by_lcm[alpha]:
            by_size[mask.bit_count()].append(mask)
        top = max(by_size)
        position = {mask: pos for masks in by_size.values() for pos, mask in enumerate(masks)}

        columns: dict[int, list[dict[int, int]]] = {}
        for size in range(1, top + 1):
            columns[size] = []
            for mask in by_size[size]:
                col = {}
                bits = [b for b in range(m) if mask >> b & 1]
                for t, b in enumerate(bits):
                    sub = mask ^ (1 << b)
                    if sub and lcms[sub] == alpha:
                        col[position[sub]] = (-1) ** t
                columns[size].append(col)
        ranks = [0] + [len(by_size[size]) for size in range(1, top + 1)]
        C = ChainComplex.build(field, ranks, columns)
        for i, h in enumerate(homology_ranks(C, settings=settings)):
            if h:
                entries[i, Monomial(alpha)] = h
    _log.info("Taylor oracle over GF(%s): %s generators, %s multidegrees", field.p, m, len(by_lcm))
    return BettiTableMulti(gens.n, entries)
