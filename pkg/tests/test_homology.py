import pytest

from path_resolutions.config import load_settings
from path_resolutions.errors import GuardExceeded, InvalidInput, NotAComplex
from path_resolutions.homology import (
    ChainComplex,
    PrimeField,
    chain_complex,
    homology_ranks,
    lcm_closure,
    matrix_rank,
    taylor_betti,
    verify_supports_resolution,
)
from path_resolutions.ideals import Graph, GeneratorSet, Monomial, edge_ideal_gens, power_gens
from path_resolutions.staircase import enumerate_cells

F = PrimeField()
# smallest prime above 2**32; products of residues overflow int64
LARGE_PRIME = 4294967311
GRID = [(2, 1), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (6, 1), (6, 2)]


def test_prime_field_validation() -> None:
    assert PrimeField(2).p == 2
    with pytest.raises(InvalidInput):
        PrimeField(9)


def test_matrix_rank_dense_and_sparse_agree() -> None:
    columns = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}, {0: 2, 1: 2}]

    assert matrix_rank(columns, 3, F) == 2
    assert matrix_rank(columns, 3, F, dense_column_limit=0) == 2
    assert matrix_rank(columns, 3, PrimeField(2)) == 2
    assert matrix_rank([], 3, F) == 0


def test_rank_depends_on_characteristic() -> None:
    columns = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]

    assert matrix_rank(columns, 3, F) == 3
    assert matrix_rank(columns, 3, PrimeField(2)) == 2


def test_hollow_triangle_has_a_loop() -> None:
    # vertices 0,1,2; edges 01, 12, 02
    C = ChainComplex.build(F, [3, 3], {1: [{0: -1, 1: 1}, {1: -1, 2: 1}, {0: -1, 2: 1}]})

    assert homology_ranks(C) == [1, 1]
    assert homology_ranks(C, reduced=True) == [0, 1]


def test_cone_is_acyclic() -> None:
    # cone over two points: vertices a, b, apex; edges a-apex, b-apex
    C = ChainComplex.build(F, [3, 2], {1: [{0: -1, 2: 1}, {1: -1, 2: 1}]})

    assert homology_ranks(C, reduced=True) == [0, 0]


def test_boundary_must_square_to_zero() -> None:
    C = ChainComplex.build(F, [1, 1, 1], {1: [{0: 1}], 2: [{0: 1}]})

    with pytest.raises(NotAComplex, match="not a complex"):
        homology_ranks(C)


def test_build_checks_shapes() -> None:
    with pytest.raises(InvalidInput):
        ChainComplex.build(F, [1, 2], {1: [{0: 1}]})
    with pytest.raises(InvalidInput):
        ChainComplex.build(F, [1, 1], {1: [{3: 1}]})


def test_empty_complex_reports_zeros() -> None:
    C = ChainComplex.build(F, (), {})

    assert C.is_empty
    assert homology_ranks(C, reduced=True) == []


@pytest.mark.parametrize(("n", "d"), [(3, 2), (4, 2), (4, 3), (6, 1)])
def test_whole_complex_is_contractible(n: int, d: int) -> None:
    X = enumerate_cells(n, d)

    assert not any(homology_ranks(chain_complex(X), reduced=True))


def test_chain_complex_rejects_open_sets() -> None:
    X = enumerate_cells(4, 2)
    top = X.ids_of_dimension(2)

    with pytest.raises(InvalidInput):
        chain_complex(X, top)


def test_lcm_closure() -> None:
    gens = list(edge_ideal_gens(Graph.path(3)))

    assert lcm_closure(gens) == {Monomial((1, 1, 0)), Monomial((0, 1, 1)), Monomial((1, 1, 1))}


@pytest.mark.parametrize(("n", "d"), [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_ydn_supports_a_resolution(n: int, d: int) -> None:
    report = verify_supports_resolution(enumerate_cells(n, d))

    assert report.holds
    assert report.checked > 0
    assert report.failures == ()


def test_support_check_guard() -> None:
    X = enumerate_cells(4, 2)

    with pytest.raises(GuardExceeded):
        verify_supports_resolution(X, settings=load_settings(cell_limit=10))


def test_taylor_betti_of_p4() -> None:
    betti = taylor_betti(edge_ideal_gens(Graph.path(4)))

    assert betti.graded() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert betti.euler_sum() == 0


def test_taylor_betti_of_p4_squared() -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(4)), 2)

    assert taylor_betti(gens).graded() == {(0, 0): 1, (1, 4): 6, (2, 5): 6, (3, 6): 1}


@pytest.mark.parametrize(("n", "d"), GRID)
def test_taylor_betti_over_two_fields(n: int, d: int) -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(n)), d)

    assert taylor_betti(gens, PrimeField(2)).entries == taylor_betti(gens).entries


def test_taylor_guard() -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(6)), 2)

    with pytest.raises(GuardExceeded):
        taylor_betti(gens, settings=load_settings(taylor_generator_limit=10))


def test_matrix_rank_with_large_prime() -> None:
    big = PrimeField(LARGE_PRIME)
    p = LARGE_PRIME
    full = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]
    deficient = [{0: p - 1, 1: p - 2}, {0: 2 * (p - 1), 1: 2 * (p - 2)}, {0: p - 3, 1: p - 5}]

    assert matrix_rank(full, 3, big) == 3
    assert matrix_rank(deficient, 2, big) == 2
    assert matrix_rank(deficient[:2], 2, big) == 1
    assert matrix_rank(deficient, 2, big) == matrix_rank(deficient, 2, big, dense_column_limit=0)


def test_ydn_is_acyclic_over_large_prime() -> None:
    C = chain_complex(enumerate_cells(5, 2), field=PrimeField(LARGE_PRIME))

    assert homology_ranks(C, reduced=True) == [0, 0, 0, 0]


def test_taylor_betti_over_large_prime() -> None:
    gens = power_gens(edge_ideal_gens(Graph.path(4)), 2)

    assert taylor_betti(gens, PrimeField(LARGE_PRIME)).entries == taylor_betti(gens).entries


def test_taylor_betti_of_p3_is_multigraded() -> None:
    betti = taylor_betti(edge_ideal_gens(Graph.path(3)))

    assert betti.entries == {
        (0, Monomial((0, 0, 0))): 1,
        (1, Monomial((1, 1, 0))): 1,
        (1, Monomial((0, 1, 1))): 1,
        (2, Monomial((1, 1, 1))): 1,
    }


def test_taylor_betti_of_one_generator() -> None:
    gens = GeneratorSet(2, (Monomial((1, 1)),))

    assert taylor_betti(gens).entries == {(0, Monomial((0, 0))): 1, (1, Monomial((1, 1))): 1}
