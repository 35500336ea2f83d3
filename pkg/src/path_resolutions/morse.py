"""Acyclic matchings on covering complexes of paths and on the fibers of Y^d_n."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
import logging
from typing import Callable, Generic, Hashable, Iterable, Mapping, TypeVar

import networkx as nx

from .config import DEFAULT_SETTINGS, Settings
from .errors import GuardExceeded, MatchingError, StructureError
from .homology import ChainComplex, PrimeField
from .staircase import Cell, ComplexYdn, covered_vertices

_log = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)
Face = frozenset[int]


@dataclass(frozen=True)
class SimplicialFamily:
    """A simplicial complex given by all of its faces, the empty face included."""

    ground: tuple[int, ...]
    faces: frozenset[Face]

    def __post_init__(self) -> None:
        if frozenset() not in self.faces:
            raise StructureError("simplicial family without the empty face")
        for face in self.faces:
            if not face <= set(self.ground):
                raise StructureError(f"face {sorted(face)} leaves the ground set")
            if any(face - {v} not in self.faces for v in face):
                raise StructureError(f"face {sorted(face)} has a missing facet")


@dataclass(frozen=True)
class Matching(Generic[T]):
    """Matched (lower, upper) pairs plus the unmatched, critical elements."""

    pairs: tuple[tuple[T, T], ...]
    critical: frozenset[T]
    census: Mapping[tuple[int, tuple[int, ...]], int] = field(
        default_factory=dict, compare=False
    )

    def partners(self) -> dict[T, T]:
        result: dict[T, T] = {}
        for lower, upper in self.pairs:
            result[lower] = upper
            result[upper] = lower
        return result


@dataclass(frozen=True)
class FiberGroup:
    key: tuple[frozenset[int], ...]
    members: tuple[int, ...]
    max_cell: int


def audit_matching(
    nodes: Iterable[T],
    facets_of: Callable[[T], Iterable[T]],
    pairs: Iterable[tuple[T, T]],
    label_of: Callable[[T], Hashable] | None = None,
) -> None:
    """Raise MatchingError unless pairs form an acyclic matching on the face poset.

    The audit graph points from each element to its facets, except that matched
    facet/element pairs point upward.
    """

    matched: dict[T, T] = {}
    upward = set()
    for lower, upper in pairs:
        if lower in matched or upper in matched:
            raise MatchingError(f"element matched twice in pair {lower!r}, {upper!r}")
        if lower not in set(facets_of(upper)):
            raise MatchingError(f"{lower!r} is not a facet of {upper!r}")
        if label_of is not None and label_of(lower) != label_of(upper):
            raise MatchingError(f"pair {lower!r}, {upper!r} changes the label")
        matched[lower] = upper
        matched[upper] = lower
        upward.add((lower, upper))

    graph = nx.DiGraph()
    for node in nodes:
        graph.add_node(node)
        for facet in facets_of(node):
            if (facet, node) in upward:
                graph.add_edge(facet, node)
            else:
                graph.add_edge(node, facet)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return
    raise MatchingError("matching has a cycle", [edge[0] for edge in cycle])


def _facets(face: Face) -> list[Face]:
    return [face - {v} for v in face]


@lru_cache(maxsize=None)
def independence_faces(m: int) -> frozenset[Face]:
    """Faces of Ind(P_m): subsets of 1..m without two consecutive vertices."""

    faces: list[tuple[int, ...]] = [()]
    for v in range(1, m + 1):
        faces += [face + (v,) for face in faces if not face or face[-1] < v - 1]
    return frozenset(frozenset(face) for face in faces)


@lru_cache(maxsize=None)
def ind_path_matching(m: int) -> Matching[Face]:
    """Pivot matching on Ind(P_m): toggle pivots 1, 4, 7, ... in turn.

    At pivot p every residual face without p+1 is paired with its toggle at p;
    faces containing p+1 carry over to the next pivot. What is left at the end
    is critical: nothing when m = 1 mod 3, else {2, 5, 8, ...} up to m-1 or m.
    """

    faces = independence_faces(max(m, 0))
    residual = sorted(faces, key=lambda face: (len(face), sorted(face)))
    pairs: list[tuple[Face, Face]] = []
    pivot = 1
    while pivot <= m and residual:
        carried = []
        for face in residual:
            if pivot + 1 in face:
                carried.append(face)
            elif pivot not in face:
                pairs.append((face, face | {pivot}))
        residual = carried
        pivot += 3
    audit_matching(faces, _facets, pairs)
    return Matching(tuple(pairs), frozenset(residual))


@lru_cache(maxsize=None)
def _ind_partners(m: int) -> dict[Face, Face]:
    return ind_path_matching(m).partners()


def cov_path_faces(v: int) -> SimplicialFamily:
    """Cov(P_v) on edges named by their left endpoint, via Ind(P_{v-3})."""

    faces = frozenset(
        frozenset(i + 1 for i in face) for face in independence_faces(max(v - 3, 0))
    )
    return SimplicialFamily(tuple(range(1, v)), faces)


def cov_path_matching(v: int) -> Matching[Face]:
    """ind_path_matching(v-3) transported to Cov(P_v) along i -> edge (i+1)(i+2)."""

    def transport(face: Face) -> Face:
        return frozenset(i + 1 for i in face)

    matching = ind_path_matching(max(v - 3, 0))
    pairs = tuple((transport(lower), transport(upper)) for lower, upper in matching.pairs)
    family = cov_path_faces(v)
    audit_matching(family.faces, _facets, pairs)
    return Matching(pairs, frozenset(transport(face) for face in matching.critical))


def _components(vertices: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs [s, t] of consecutive vertices, left to right."""

    runs: list[tuple[int, int]] = []
    for v in sorted(vertices):
        if runs and runs[-1][1] == v - 1:
            runs[-1] = (runs[-1][0], v)
        else:
            runs.append((v, v))
    return runs


def _full_row(vertices: frozenset[int], i: int) -> tuple[int, ...]:
    return tuple(col + i - 1 for col in sorted(vertices) if col + 1 in vertices)


def fiber_decompose(X: ComplexYdn) -> list[FiberGroup]:
    """Group the cells of X by (V(sigma_1), ..., V(sigma_d))."""

    grouped: dict[tuple[frozenset[int], ...], list[int]] = defaultdict(list)
    for cell_id, cell in enumerate(X.cells):
        key = tuple(covered_vertices(row, i, X.n) for i, row in enumerate(cell.rows, start=1))
        grouped[key].append(cell_id)

    groups = []
    for key, members in grouped.items():
        max_rows = tuple(_full_row(vertices, i) for i, vertices in enumerate(key, start=1))
        max_id = X.index.get(Cell(X.n, max_rows))
        if max_id is None or max_id not in members:
            raise StructureError(f"fiber {key} has no maximal cell in the complex")
        top = X.cells[max_id]
        label = X.labels[max_id]
        for member in members:
            cell = X.cells[member]
            if X.labels[member] != label or any(
                not set(row) <= set(full) for row, full in zip(cell.rows, top.rows)
            ):
                raise StructureError(f"{cell} is not below {top} with the same label")
        groups.append(FiberGroup(key, tuple(members), max_id))
    _log.info("Y^%s_%s splits into %s fibers", X.d, X.n, len(groups))
    return groups


@dataclass(frozen=True)
class _Factor:
    row: int
    start: int
    size: int


def _factors(group: FiberGroup) -> list[_Factor]:
    return [
        _Factor(i, s, max(t - s - 2, 0))
        for i, vertices in enumerate(group.key, start=1)
        for s, t in _components(vertices)
    ]


def fiber_matching(X: ComplexYdn, group: FiberGroup) -> Matching[int]:
    """Product of the Ind matchings of the components, first non-critical factor wins."""

    factors = _factors(group)
    top = X.cells[group.max_cell]
    full_columns = [set(top.columns(i)) for i in range(1, X.d + 1)]

    def coordinates(cell: Cell) -> tuple[Face, ...]:
        coords = []
        for factor in factors:
            removed = full_columns[factor.row - 1] - set(cell.columns(factor.row))
            coords.append(frozenset(
                col - factor.start for col in removed if 1 <= col - factor.start <= factor.size
            ))
        return tuple(coords)

    def cell_at(coords: tuple[Face, ...]) -> int:
        removed: dict[int, set[int]] = defaultdict(set)
        for factor, face in zip(factors, coords):
            removed[factor.row].update(factor.start + k for k in face)
        rows = tuple(
            tuple(sorted(col + i - 1 for col in full_columns[i - 1] - removed[i]))
            for i in range(1, X.d + 1)
        )
        return X.index[Cell(X.n, rows)]

    pairs = set()
    critical = []
    for member in group.members:
        coords = coordinates(X.cells[member])
        for r, (factor, face) in enumerate(zip(factors, coords)):
            partner = _ind_partners(factor.size).get(face)
            if partner is None:
                continue
            other = cell_at(coords[:r] + (partner,) + coords[r + 1:])
            # a larger independent set removes more boxes, so it is the lower cell
            pairs.add((other, member) if len(partner) > len(face) else (member, other))
            break
        else:
            critical.append(member)
    if len(critical) > 1:
        raise StructureError(f"fiber {group.key} has {len(critical)} critical cells")
    return Matching(tuple(sorted(pairs)), frozenset(critical))


def _cell_facets(X: ComplexYdn) -> Callable[[int], list[int]]:
    return lambda cell_id: [face for face, _ in X.boundaries[cell_id]]


def assemble_matching(X: ComplexYdn) -> Matching[int]:
    """Union of the fiber matchings, audited for acyclicity and label equality."""

    pairs: list[tuple[int, int]] = []
    critical: set[int] = set()
    for group in fiber_decompose(X):
        matching = fiber_matching(X, group)
        pairs.extend(matching.pairs)
        critical |= matching.critical

    audit_matching(range(len(X)), _cell_facets(X), pairs, X.labels.__getitem__)
    census = Counter((X.dim(c), X.labels[c].exponents) for c in critical)
    _log.info(
        "Y^%s_%s: %s matched pairs, %s critical cells", X.d, X.n, len(pairs), len(critical)
    )
    return Matching(tuple(sorted(pairs)), frozenset(critical), dict(census))


def morse_boundary(
    X: ComplexYdn,
    M: Matching[int],
    *,
    settings: Settings = DEFAULT_SETTINGS,
) -> dict[int, list[tuple[int, int]]]:
    """Morse differential on critical cells, summed over gradient paths."""

    if len(X) > settings.morse_cell_limit:
        raise GuardExceeded("cell count", len(X), settings.morse_cell_limit)
    audit_matching(range(len(X)), _cell_facets(X), M.pairs)

    up = {lower: upper for lower, upper in M.pairs}
    down = {upper for _, upper in M.pairs}
    incidence = [dict(faces) for faces in X.boundaries]

    gradient = nx.DiGraph()
    gradient.add_nodes_from(range(len(X)))
    for lower, upper in up.items():
        gradient.add_edges_from((lower, face) for face in incidence[upper] if face != lower)

    flow: dict[int, dict[int, int]] = {}
    for cell_id in reversed(list(nx.topological_sort(gradient))):
        if cell_id in M.critical:
            flow[cell_id] = {cell_id: 1}
        elif cell_id in down:
            flow[cell_id] = {}
        else:
            upper = up[cell_id]
            through = incidence[upper][cell_id]
            chain: dict[int, int] = defaultdict(int)
            for face, sign in incidence[upper].items():
                if face == cell_id:
                    continue
                weight = -sign * through
                for target, coefficient in flow[face].items():
                    chain[target] += weight * coefficient
            flow[cell_id] = {k: v for k, v in chain.items() if v}

    result: dict[int, list[tuple[int, int]]] = {}
    for tau in sorted(M.critical):
        chain = defaultdict(int)
        for face, sign in incidence[tau].items():
            for target, coefficient in flow[face].items():
                chain[target] += sign * coefficient
        result[tau] = sorted((sigma, c) for sigma, c in chain.items() if c)
    return result


def morse_chain_complex(
    X: ComplexYdn,
    M: Matching[int],
    field: PrimeField = PrimeField(),
    *,
    settings: Settings = DEFAULT_SETTINGS,
) -> ChainComplex:
    differential = morse_boundary(X, M, settings=settings)
    by_dim: dict[int, list[int]] = defaultdict(list)
    for cell_id in sorted(M.critical):
        by_dim[X.dim(cell_id)].append(cell_id)
    top = max(by_dim, default=-1)
    position = {cell_id: pos for cells in by_dim.values() for pos, cell_id in enumerate(cells)}
    columns = {
        k: [{position[s]: c for s, c in differential[t]} for t in by_dim[k]]
        for k in range(1, top + 1)
    }
    return ChainComplex.build(field, [len(by_dim[k]) for k in range(top + 1)], columns)


def minimality_violations(
    X: ComplexYdn, differential: Mapping[int, list[tuple[int, int]]]
) -> list[tuple[int, int, int]]:
    """Nonzero Morse coefficients whose labels do not strictly drop."""

    return [
        (tau, sigma, coefficient)
        for tau, terms in differential.items()
        for sigma, coefficient in terms
        if X.labels[sigma] == X.labels[tau] or not X.labels[sigma].divides(X.labels[tau])
    ]
