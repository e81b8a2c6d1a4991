"""Shared instances: lemma-scale disks, the two radius-8 suites, mutants."""

import pytest

import sysquad as sq

# five lemma-scale disks: two uniform degree-6, one degree-7, two mixed random
LEMMA_SPECS = (
    sq.DiskSpec(radius=6, degrees=6),
    sq.DiskSpec(radius=5, degrees=6),
    sq.DiskSpec(radius=4, degrees=7),
    sq.DiskSpec(radius=4, degrees=frozenset({6, 7}), seed=1),
    sq.DiskSpec(radius=3, degrees=frozenset({6, 7, 8}), seed=2),
)


@pytest.fixture(scope="session")
def lemma_disks():
    return tuple(sq.triangulated_disk(spec) for spec in LEMMA_SPECS)


@pytest.fixture(scope="session")
def disk6_r8():
    return sq.triangulated_disk(sq.DiskSpec(radius=8, degrees=6))


@pytest.fixture(scope="session")
def disk7_r8():
    return sq.triangulated_disk(sq.DiskSpec(radius=8, degrees=7))


@pytest.fixture(scope="session")
def squaring6(disk6_r8):
    return sq.squaring(sq.BasedComplex(disk6_r8.complex, disk6_r8.center))


@pytest.fixture(scope="session")
def squaring7(disk7_r8):
    return sq.squaring(sq.BasedComplex(disk7_r8.complex, disk7_r8.center))


@pytest.fixture(scope="session")
def small_disk():
    return sq.triangulated_disk(sq.DiskSpec(radius=2, degrees=6))


@pytest.fixture(scope="session")
def small_squaring(small_disk):
    return sq.squaring(sq.BasedComplex(small_disk.complex, small_disk.center))


def k23_graph():
    """K_{2,3}: sides {0, 1} and {2, 3, 4}."""
    return sq.Graph(range(5), [(u, m) for u in (0, 1) for m in (2, 3, 4)])


def rule_a_mutant():
    """Two squares over a K_{2,3}, outer square missing."""
    g = k23_graph()
    return sq.SquareComplex(g, [(0, 2, 1, 3), (0, 3, 1, 4)])


def rule_b_mutant():
    """Three squares around a hub whose hexagon has no chord."""
    # hub 0; hexagon 1 2 3 4 5 6 with corners 1, 3, 5 adjacent to the hub
    edges = [(0, 1), (0, 3), (0, 5),
             (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]
    g = sq.Graph(range(7), edges)
    squares = [(0, 1, 2, 3), (0, 3, 4, 5), (0, 5, 6, 1)]
    return sq.SquareComplex(g, squares)


def k23_complex_based():
    """Bare K_{2,3} square complex based at a 2-side vertex: non-flat interval."""
    return sq.BasedComplex(sq.SquareComplex(k23_graph(), []), 0)


@pytest.fixture
def mutants():
    return rule_a_mutant(), rule_b_mutant(), k23_complex_based()
