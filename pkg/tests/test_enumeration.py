from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicot.core import DASHED, SOLID, Loop, MonopoleDimerConfig, complete_dicot, config_weight, loop_weight, make_dicot
from dicot.enumeration import (
    DEFAULT_MAX_VERTICES,
    TooLarge,
    brute_force_partition_function,
    check_positivity,
    count_configs,
    enumerate_configs,
)
from dicot.families import grid_graph, grid_vert_dicot, wheel_dicot
from dicot.linalg import partition_function
from dicot.sampling import random_subdicot

S, D = SOLID, DASHED


def test_small_counts():
    assert count_configs(make_dicot([1], [], [])) == 1
    assert count_configs(make_dicot([1, 1], [(1, 2, 1)], [])) == 2
    assert count_configs(make_dicot([1, 1], [(1, 2, 1)], [(1, 2, 1)])) == 3


def test_d2_census():
    configs = list(enumerate_configs(complete_dicot(2)))
    assert len(configs) == 33
    shapes = Counter(tuple(sorted(len(l) for l in c.loops)) for c in configs)
    assert shapes == {(): 1, (2,): 8, (2, 2): 8, (4,): 16}


def test_known_unit_values():
    assert brute_force_partition_function(complete_dicot(2)) == 17
    assert brute_force_partition_function(grid_graph(2, 2)) == 9
    assert brute_force_partition_function(make_dicot([7], [], [])) == 7


def test_d4_exhaustive():
    d = complete_dicot(4)
    assert brute_force_partition_function(d) == partition_function(d) == 577


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_no_duplicates_valid_and_reversal_closed(seed, half):
    d = random_subdicot(random.Random(seed), half)
    configs = list(enumerate_configs(d))
    canon = [c.canonical() for c in configs]
    assert len(set(canon)) == len(canon)
    seen = set(canon)
    for c in configs:
        c.check_cover(d)
        for loop in c.loops:
            assert loop.dashed_count % 2 == 0
            if len(loop) > 2:
                others = tuple(l for l in c.loops if l is not loop)
                mirror = MonopoleDimerConfig(others + (loop.reversed(),), c.isolated).canonical()
                assert mirror in seen
                assert loop_weight(loop.reversed(), d) == loop_weight(loop, d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_adding_an_isolated_solid_edge_adds_one_configuration(seed, half):
    # An edge between two vertices that touch nothing else.
    d = random_subdicot(random.Random(seed), half)
    n = d.n
    extended = make_dicot(list(d.x) + [1, 1], list(d.solid) + [(n + 1, n + 2, 1)], d.dashed)
    assert count_configs(extended) == 2 * count_configs(d)
    empty = make_dicot([1] * n, [], [])
    assert count_configs(empty) == 1
    if n >= 2:
        assert count_configs(make_dicot([1] * n, [(1, 2, 1)], [])) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_oracle_equivalence(seed, half):
    d = random_subdicot(random.Random(seed), half)
    assert brute_force_partition_function(d) == partition_function(d)


def test_size_guard():
    big = complete_dicot(9)
    with pytest.raises(TooLarge) as err:
        next(enumerate_configs(big))
    assert err.value.limit == DEFAULT_MAX_VERTICES
    path17 = make_dicot([1] * 17, [(j, j + 1, 1) for j in range(1, 17)], [])
    with pytest.raises(TooLarge):
        brute_force_partition_function(path17)
    # Overriding the guard works; a path has Fibonacci-many configurations.
    assert count_configs(path17, max_vertices=17) == 2584


def test_positivity():
    ok, witness = check_positivity(complete_dicot(2))
    assert not ok
    assert config_weight(witness, complete_dicot(2)) == -1
    assert witness.loop_size == 4
    assert check_positivity(wheel_dicot(3)) == (True, None)


def test_vertical_grid_has_the_drawn_negative_configuration():
    d = grid_vert_dicot(4, 3)
    ok, witness = check_positivity(d)
    assert not ok and config_weight(witness, d) < 0
    drawn = MonopoleDimerConfig(
        (Loop((1, 8), (S, S)), Loop((3, 4, 5, 12, 11, 10, 7, 6), (S, D, D, S, S, S, S, S))), (2, 9)
    ).canonical()
    assert drawn in {c.canonical() for c in enumerate_configs(d)}
    assert witness.loop_size <= drawn.loop_size
