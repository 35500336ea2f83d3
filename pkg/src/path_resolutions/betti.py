"""Graded Betti numbers of powers of path ideals, computed four independent ways.

closed-form  binomial formula in (n, d, i, j)
strings      enumeration of the 0/1 codes of critical-inducing cells
morse        critical cells of the assembled matching on Y^d_n
oracle       the Taylor complex of the generators
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
import logging
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .config import DEFAULT_SETTINGS, Settings
from .errors import GuardExceeded, InvalidInput
from .homology import PrimeField, taylor_betti
from .ideals import Graph, edge_ideal_gens, power_gens
from .morse import assemble_matching, fiber_decompose
from .staircase import Cell, ComplexYdn, enumerate_cells

_log = logging.getLogger(__name__)

METHODS = ("closed-form", "strings", "morse", "oracle")


def normalize_method(method: str) -> str:
    name = method.strip().lower().replace("_", "-")
    if name not in METHODS:
        raise InvalidInput(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    return name


def _binomial(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def _runs(columns: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive columns as (first column, length)."""

    runs: list[tuple[int, int]] = []
    for col in columns:
        if runs and runs[-1][0] + runs[-1][1] == col:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((col, 1))
    return runs


def _gap_of_one(columns: Sequence[int]) -> bool:
    return any(b - a == 2 for a, b in zip(columns, columns[1:]))


def is_label_maximal(c: Cell) -> bool:
    return not any(_gap_of_one(c.columns(i)) for i in range(1, c.d + 1))


def label_maximal_cells(X: ComplexYdn) -> list[int]:
    return sorted(group.max_cell for group in fiber_decompose(X))


@dataclass(frozen=True)
class CellStats:
    """Component statistics of a label-maximal cell.

    A counts boxes, N the components of the covered subgraphs (one per run of
    boxes within a row) and N2 the components on 2 mod 3 vertices. B, C and D
    exist only when no component has 1 mod 3 vertices.
    """

    d: int
    A: int
    N: int
    N2: int
    critical_inducing: bool
    B: int | None = None
    C: int | None = None
    D: int | None = None

    @property
    def critical_dimension(self) -> int | None:
        if not self.critical_inducing:
            return None
        return self.C - self.B - self.d

    @property
    def bidegree(self) -> tuple[int, int] | None:
        """(i, j) of the Betti number this cell contributes to."""

        if not self.critical_inducing:
            return None
        return self.C - self.B - self.d + 1, self.C


def cell_stats(c: Cell) -> CellStats:
    if not is_label_maximal(c):
        raise InvalidInput(f"{c} is not label-maximal: a row has a gap of one box")
    lengths = [
        length for i in range(1, c.d + 1) for _, length in _runs(c.columns(i))
    ]
    A = sum(lengths)
    N = len(lengths)
    N2 = sum(1 for length in lengths if length % 3 == 1)
    if any(length % 3 == 0 for length in lengths):
        return CellStats(c.d, A, N, N2, False)
    B, rest = divmod(N + N2 + A, 3)
    D, rest_d = divmod(A + N2 - 2 * N - 3, 3)
    if rest or rest_d:
        raise InvalidInput(f"statistics of {c} are not integral")
    return CellStats(c.d, A, N, N2, True, B, A + N, D)


@dataclass(frozen=True)
class StringCode:
    """Box diagram flattened row by row, rows of width n-1."""

    bits: str
    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.d < 1:
            raise InvalidInput(f"need n >= 2 and d >= 1, got n={self.n}, d={self.d}")
        if set(self.bits) - {"0", "1"}:
            raise InvalidInput(f"string {self.bits!r} is not over 0/1")
        if len(self.bits) != self.d * (self.n - 1):
            raise InvalidInput(
                f"string of length {len(self.bits)}, expected {self.d * (self.n - 1)}"
            )

    def rows(self) -> list[str]:
        width = self.n - 1
        return [self.bits[r * width:(r + 1) * width] for r in range(self.d)]

    def __str__(self) -> str:
        return self.bits


def encode_string(c: Cell) -> StringCode:
    if not is_label_maximal(c):
        raise InvalidInput(f"{c} is not label-maximal")
    width = c.n - 1
    bits = []
    for i in range(1, c.d + 1):
        columns = set(c.columns(i))
        bits.extend("1" if col in columns else "0" for col in range(1, width + 1))
    return StringCode("".join(bits), c.n, c.d)


def _interior_zero_runs(bits: str, floor: int) -> int:
    """Maximal runs of zeros, not touching either end, of length >= floor."""

    stripped = bits.strip("0")
    return sum(1 for run in stripped.split("1") if run and len(run) >= floor)


def decode_string(s: StringCode) -> Cell:
    columns = []
    for i, row in enumerate(s.rows(), start=1):
        cols = [col for col, bit in enumerate(row, start=1) if bit == "1"]
        if not cols:
            raise InvalidInput(f"row {i} of {s} is empty")
        if _gap_of_one(cols):
            raise InvalidInput(f"row {i} of {s} has a gap of one box")
        if columns and cols[0] < columns[-1][-1]:
            raise InvalidInput(f"rows {i - 1} and {i} of {s} break the staircase")
        columns.append(cols)
    # for n = 2 every boundary run has length zero and the count says nothing
    if s.n >= 3 and _interior_zero_runs(s.bits, s.n - 2) != s.d - 1:
        raise InvalidInput(f"{s} does not split into {s.d} rows by its zero runs")
    rows = tuple(tuple(col + i - 1 for col in cols) for i, cols in enumerate(columns, start=1))
    return Cell(s.n, rows)


def count_strings(n: int, d: int, N: int, B: int, C: int) -> int:
    """Critical-inducing label-maximal cells with N components and statistics B, C."""

    return (
        _binomial(N, 3 * B - C)
        * _binomial(N - 1, d - 1)
        * _binomial(n + 3 * d - C - 2, N)
        * _binomial(B - 1, N - 1)
    )


def count_by_BC(n: int, d: int, B: int, C: int) -> int:
    return (
        _binomial(n + 3 * d - C - 2, 3 * B - C)
        * _binomial(n + 2 * d - 2 * B - 2, C - 2 * B)
        * _binomial(B - 1, d - 1)
    )


def closed_form_betti(n: int, d: int, i: int, j: int) -> int:
    """beta_{i,j}(S/I(P_n)^d) for i >= 1."""

    if i < 1:
        return 0
    return (
        _binomial(n + 3 * d - j - 2, 2 * j - 3 * i - 3 * d + 3)
        * _binomial(n + 4 * d + 2 * i - 2 * j - 4, 2 * d + 2 * i - j - 2)
        * _binomial(j - i - d, d - 1)
    )


def _critical_rows(first: int, width: int) -> Iterator[tuple[int, ...]]:
    """Rows of label-maximal cells starting at column >= first, runs of length not 0 mod 3."""

    for start in range(first, width + 1):
        for length in range(1, width - start + 2):
            if length % 3 == 0:
                continue
            run = tuple(range(start, start + length))
            yield run
            for tail in _critical_rows(start + length + 2, width):
                yield run + tail


def critical_string_codes(
    n: int, d: int, *, settings: Settings = DEFAULT_SETTINGS
) -> Iterator[StringCode]:
    """0/1 codes of all critical-inducing label-maximal cells of Y^d_n."""

    if n < 2 or d < 1:
        raise InvalidInput(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    expected = sum(
        count_by_BC(n, d, B, C)
        for B in range(0, d * n + 1)
        for C in range(0, d * n + 1)
    )
    if expected > settings.cell_limit:
        raise GuardExceeded("critical strings", expected, settings.cell_limit)

    width = n - 1

    def extend(prefix: tuple[tuple[int, ...], ...], last: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(prefix) == d:
            yield prefix
            return
        for row in _critical_rows(max(last, 1), width):
            yield from extend(prefix + (row,), row[-1])

    for rows in extend((), 1):
        bits = "".join(
            "".join("1" if col in row else "0" for col in range(1, width + 1)) for row in rows
        )
        yield StringCode(bits, n, d)


@dataclass(frozen=True)
class BettiTable:
    """beta_{i,j}(S/I) for i >= 1, nonzero entries only."""

    n: int
    d: int
    method: str
    entries: Mapping[tuple[int, int], int]
    prime: int | None = None

    def __post_init__(self) -> None:
        cleaned = {key: value for key, value in sorted(self.entries.items()) if value}
        object.__setattr__(self, "entries", cleaned)

    def alternating_sum(self) -> int:
        """1 - beta_1 + beta_2 - ..., zero for any nonzero ideal."""

        return 1 + sum((-1) ** i * value for (i, _), value in self.entries.items())

    def same_numbers(self, other: BettiTable) -> bool:
        return dict(self.entries) == dict(other.entries)


def _closed_form_entries(n: int, d: int) -> dict[tuple[int, int], int]:
    return {
        (i, j): closed_form_betti(n, d, i, j)
        for i in range(1, n)
        for j in range(2 * d, d * n + 1)
    }


def _string_entries(n: int, d: int, settings: Settings) -> dict[tuple[int, int], int]:
    counts: Counter[tuple[int, int]] = Counter()
    for code in critical_string_codes(n, d, settings=settings):
        counts[cell_stats(decode_string(code)).bidegree] += 1
    return dict(counts)


def _morse_entries(n: int, d: int, settings: Settings) -> dict[tuple[int, int], int]:
    X = enumerate_cells(n, d, settings=settings)
    matching = assemble_matching(X)
    counts: Counter[tuple[int, int]] = Counter()
    for cell_id in matching.critical:
        counts[X.dim(cell_id) + 1, X.labels[cell_id].degree] += 1
    return dict(counts)


def _oracle_entries(
    n: int, d: int, field: PrimeField, settings: Settings
) -> dict[tuple[int, int], int]:
    gens = power_gens(edge_ideal_gens(Graph.path(n)), d, settings=settings)
    graded = taylor_betti(gens, field, settings=settings).graded()
    return {(i, j): value for (i, j), value in graded.items() if i >= 1}


def betti_table(
    n: int,
    d: int,
    method: str,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    field: PrimeField | None = None,
) -> BettiTable:
    if n < 2 or d < 1:
        raise InvalidInput(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    method = normalize_method(method)
    prime = None
    if method == "closed-form":
        entries = _closed_form_entries(n, d)
    elif method == "strings":
        entries = _string_entries(n, d, settings)
    elif method == "morse":
        entries = _morse_entries(n, d, settings)
    else:
        field = field or PrimeField(settings.prime)
        prime = field.p
        entries = _oracle_entries(n, d, field, settings)
    table = BettiTable(n, d, method, entries, prime)
    _log.info("betti table (%s, %s) by %s: %s nonzero entries", n, d, method, len(table.entries))
    return table


@dataclass(frozen=True)
class Agreement:
    holds: bool
    methods: tuple[str, ...]
    mismatches: tuple[tuple[str, str, tuple[int, int], int, int], ...] = ()
    findings: tuple[str, ...] = ()


def _differences(
    a: BettiTable, b: BettiTable
) -> list[tuple[str, str, tuple[int, int], int, int]]:
    keys = sorted(set(a.entries) | set(b.entries))
    return [
        (a.method, b.method, key, a.entries.get(key, 0), b.entries.get(key, 0))
        for key in keys
        if a.entries.get(key, 0) != b.entries.get(key, 0)
    ]


def compare_tables(
    tables: Sequence[BettiTable], informational: Iterable[BettiTable] = ()
) -> Agreement:
    """Check that all tables coincide with the first.

    Tables in `informational` (an oracle over another field, say) are compared
    too, but a difference there is only recorded as a finding.
    """

    if not tables:
        raise InvalidInput("nothing to compare")
    reference = tables[0]
    mismatches = []
    for table in tables[1:]:
        mismatches.extend(_differences(reference, table))

    findings = []
    for table in informational:
        if not reference.same_numbers(table):
            where = f"{table.method} over GF({table.prime})" if table.prime else table.method
            finding = f"{where} differs from {reference.method} at {len(_differences(reference, table))} entries"
            _log.warning("n=%s d=%s: %s", reference.n, reference.d, finding)
            findings.append(finding)
    return Agreement(
        not mismatches,
        tuple(table.method for table in tables),
        tuple(mismatches),
        tuple(findings),
    )


def four_way_agreement(
    n: int,
    d: int,
    *,
    settings: Settings = DEFAULT_SETTINGS,
    cross_field: bool = True,
) -> Agreement:
    tables = [betti_table(n, d, method, settings=settings) for method in METHODS]
    informational = []
    if cross_field and settings.prime != 2:
        informational.append(betti_table(n, d, "oracle", settings=settings, field=PrimeField(2)))
    return compare_tables(tables, informational)


def stats_census(n: int, d: int, *, settings: Settings = DEFAULT_SETTINGS) -> dict[tuple[int, int, int], int]:
    """Number of critical-inducing label-maximal cells per (N, B, C), by enumeration."""

    census: dict[tuple[int, int, int], int] = defaultdict(int)
    for code in critical_string_codes(n, d, settings=settings):
        stats = cell_stats(decode_string(code))
        census[stats.N, stats.B, stats.C] += 1
    return dict(census)
