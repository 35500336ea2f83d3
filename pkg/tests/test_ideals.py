from math import comb

import pytest

from path_resolutions.config import load_settings
from path_resolutions.errors import GuardExceeded, InvalidInput
from path_resolutions.ideals import (
    Graph,
    GeneratorSet,
    Monomial,
    edge_ideal_gens,
    hull_membership,
    lcm_of,
    power_gens,
    verify_dilation,
    verify_lattice_generators,
)


def test_monomial_arithmetic() -> None:
    a = Monomial((1, 1, 0))
    b = Monomial((0, 1, 1))

    assert a.lcm(b) == Monomial((1, 1, 1))
    assert (a * b).exponents == (1, 2, 1)
    assert a.divides(a * b)
    assert not a.divides(b)
    assert str(a * b) == "x1*x2^2*x3"
    assert str(Monomial.one(3)) == "1"


def test_monomial_rejects_negative_exponents() -> None:
    with pytest.raises(InvalidInput):
        Monomial((1, -1))


def test_monomials_from_different_rings_do_not_mix() -> None:
    with pytest.raises(InvalidInput):
        Monomial((1, 0)).lcm(Monomial((1, 0, 0)))


def test_edge_ideal_of_path() -> None:
    gens = edge_ideal_gens(Graph.path(4))

    assert [g.exponents for g in gens] == [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]
    assert gens.is_minimal()


def test_edge_ideal_needs_an_edge() -> None:
    with pytest.raises(InvalidInput, match="empty ideal"):
        edge_ideal_gens(Graph(3, frozenset()))


def test_graph_validation() -> None:
    with pytest.raises(InvalidInput):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(InvalidInput):
        Graph(3, frozenset({(1, 4)}))
    with pytest.raises(InvalidInput):
        Graph(3, frozenset({(1, 3)}), (frozenset({1, 3}), frozenset({2})))
    assert Graph.cycle(5).bipartition is None
    assert Graph.cycle(4).bipartition is not None


def test_power_of_p3_squared() -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(3)), 2)

    assert sorted(g.exponents for g in gens) == [(0, 2, 2), (1, 2, 1), (2, 2, 0)]


def test_power_keeps_generator_set_for_d_one() -> None:
    base = edge_ideal_gens(Graph.path(5))

    assert power_gens(base, 1) is base


def test_power_rejects_zero() -> None:
    with pytest.raises(InvalidInput):
        power_gens(edge_ideal_gens(Graph.path(3)), 0)


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("d", range(1, 6))
def test_generator_count_law(n: int, d: int) -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(n)), d)

    assert len(gens) == comb(n + d - 2, d)
    assert gens.is_minimal()


def test_power_guard() -> None:
    settings = load_settings(product_limit=10)

    with pytest.raises(GuardExceeded):
        power_gens(edge_ideal_gens(Graph.path(6)), 3, settings=settings)


def test_lcm_of() -> None:
    gens = edge_ideal_gens(Graph.path(3))

    assert lcm_of(gens) == Monomial((1, 1, 1))
    with pytest.raises(InvalidInput):
        lcm_of([])


def test_generator_set_deduplicates() -> None:
    m = Monomial((1, 1))

    assert len(GeneratorSet(2, (m, m))) == 1


def test_hull_membership() -> None:
    verts = power_gens(edge_ideal_gens(Graph.path(4)), 2).exponents()

    assert hull_membership((1, 2, 1, 0), verts)
    assert not hull_membership((2, 0, 0, 2), verts)
    assert hull_membership((1, 1, 1, 1), verts)


def test_hull_membership_dimension_mismatch() -> None:
    with pytest.raises(InvalidInput):
        hull_membership((1, 1), [(1, 1, 0)])


def test_hull_membership_guard() -> None:
    settings = load_settings(hull_vertex_limit=2)

    with pytest.raises(GuardExceeded):
        hull_membership((1, 1), [(2, 0), (0, 2), (1, 1)], settings=settings)


@pytest.mark.parametrize("n", range(3, 7))
@pytest.mark.parametrize("d", range(1, 4))
def test_lattice_points_are_generators_for_paths(n: int, d: int) -> None:
    report = verify_lattice_generators(Graph.path(n), d)

    assert report.holds
    assert report.lattice_points == comb(n + d - 2, d)


@pytest.mark.parametrize("d", [1, 2])
def test_lattice_points_of_four_cycle(d: int) -> None:
    report = verify_lattice_generators(Graph.cycle(4), d)

    assert report.holds
    assert report.lattice_points == {1: 4, 2: 9}[d]


def test_lattice_check_needs_bipartition() -> None:
    with pytest.raises(InvalidInput):
        verify_lattice_generators(Graph.cycle(5), 2)


def test_lattice_check_guard() -> None:
    with pytest.raises(GuardExceeded):
        verify_lattice_generators(Graph.path(9), 2)


@pytest.mark.parametrize("graph", [Graph.path(4), Graph.cycle(4)])
def test_dilation(graph: Graph) -> None:
    report = verify_dilation(graph, 2)

    assert report.holds
    assert not report.outside


def test_lcm_of_is_a_semilattice_join() -> None:
    gens = list(power_gens(edge_ideal_gens(Graph.path(4)), 2))
    top = lcm_of(gens)

    for a in gens:
        assert lcm_of([a, a]) == a
        assert a.divides(top)
        for b in gens:
            assert lcm_of([a, b]) == lcm_of([b, a])
            for c in gens[:3]:
                assert lcm_of([lcm_of([a, b]), c]) == lcm_of([a, lcm_of([b, c])])


@pytest.mark.parametrize("g", [Graph.path(4), Graph.path(5), Graph.cycle(4)])
def test_hull_contains_its_vertices(g: Graph) -> None:
    verts = power_gens(edge_ideal_gens(g), 2).exponents()

    assert all(hull_membership(v, verts) for v in verts)


def test_hull_membership_of_non_vertices() -> None:
    verts = [(2, 0, 0), (0, 2, 0), (0, 0, 2)]

    assert hull_membership((1, 1, 0), verts)
    assert hull_membership((0, 1, 1), verts[1:])
    assert not hull_membership((1, 1, 1), verts[:2])
    assert not hull_membership((3, 0, 0), verts)
