from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from dicot.core import DASHED, SOLID, Loop, make_dicot, loop_weight
from dicot.enumeration import enumerate_configs
from dicot.families import cycle_dicot, grid_coords, grid_dicot, grid_label
from dicot.planar import (
    CrossingEdges,
    DisconnectedGraph,
    NoKasteleynOrientation,
    NotPlanarDicot,
    VertexOnBoundary,
    enclosed_vertices,
    extract_faces,
    face_parity,
    is_planar_dicot,
    kasteleyn_orient,
    planar_loop_weight,
    validate_planar,
    verify_kasteleyn,
)

S, D = SOLID, DASHED
SQUARE = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}


def square(solid=((1, 2), (2, 3), (3, 4), (1, 4)), dashed=()):
    return make_dicot([1] * 4, [(u, v, 1) for u, v in solid], [(u, v, 1) for u, v in dashed])


def embed_grid(d, cols, rows):
    return extract_faces(d, grid_coords(cols, rows))


def grid_edges(cols, rows):
    out = []
    for k in range(1, rows + 1):
        for j in range(1, cols):
            out.append(tuple(sorted((grid_label(j, k, cols), grid_label(j + 1, k, cols)))))
    for j in range(1, cols + 1):
        for k in range(1, rows):
            out.append(tuple(sorted((grid_label(j, k, cols), grid_label(j, k + 1, cols)))))
    return out


def with_dashed(cols, rows, dashed_set):
    solid = [(u, v, 1) for u, v in grid_edges(cols, rows) if (u, v) not in dashed_set]
    dashed = [(u, v, 1) for u, v in grid_edges(cols, rows) if (u, v) in dashed_set]
    return make_dicot([1] * (cols * rows), solid, dashed)


def test_square_faces():
    pd = extract_faces(square(), SQUARE)
    assert len(pd.faces) == 1
    assert pd.faces[0].area2 == 2 and pd.outer.area2 == -2


def test_grid_of_the_vertical_dashed_figure():
    d = grid_dicot(4, 3, vertical="d")
    pd = embed_grid(d, 4, 3)
    assert d.n == 12 and len(d.solid) + len(d.dashed) == 17
    assert len(pd.faces) == 6
    assert is_planar_dicot(pd)
    assert verify_kasteleyn(pd)
    assert verify_kasteleyn(pd.with_dicot(d.reoriented(kasteleyn_orient(pd))))


def test_two_triangles_sharing_an_edge():
    d = make_dicot([1] * 4, [(1, 2, 1), (2, 3, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1)], [], bipartite=False)
    pd = extract_faces(d, {1: (0, 0), 2: (2, 0), 3: (1, 2), 4: (3, 2)})
    assert len(pd.faces) == 2


def test_cycle_dicot_is_not_planar_dicot():
    pd = extract_faces(cycle_dicot(2), SQUARE)
    assert not is_planar_dicot(pd)
    with pytest.raises(NotPlanarDicot):
        kasteleyn_orient(pd)
    assert is_planar_dicot(extract_faces(square(), SQUARE))


def test_doubled_pair_is_not_planar_dicot():
    d = make_dicot([1, 1], [(1, 2, 1)], [(1, 2, 1)])
    assert not is_planar_dicot(extract_faces(d, {1: (0, 0), 2: (1, 0)}))


def test_crossing_and_disconnected_inputs():
    crossing = make_dicot([1] * 4, [(1, 2, 1), (3, 4, 1)], [])
    with pytest.raises(CrossingEdges):
        extract_faces(crossing, {1: (0, 0), 2: (1, 1), 3: (1, 0), 4: (0, 1)})
    with pytest.raises(DisconnectedGraph):
        extract_faces(crossing, {1: (0, 0), 2: (1, 0), 3: (0, 1), 4: (1, 1)})
    through = make_dicot([1] * 3, [(1, 2, 1)], [(2, 3, 1)])
    with pytest.raises(CrossingEdges):
        extract_faces(through, {1: (0, 0), 2: (2, 0), 3: (1, 0)})


def test_square_orientation_parity():
    pd = extract_faces(square(), SQUARE)
    pairs = kasteleyn_orient(pd)
    oriented = square(solid=pairs)
    cw = sum(1 for u, v in pairs if (u, v) in {(2, 1), (3, 2), (4, 3), (1, 4)})
    assert cw in (1, 3)
    assert verify_kasteleyn(pd, pairs)
    for k in range(4):
        flipped = list(pairs)
        flipped[k] = flipped[k][::-1]
        assert not verify_kasteleyn(pd, flipped)
    assert face_parity(pd.faces[0], oriented) == 1


def test_clockwise_convention_does_not_matter_on_bipartite_faces():
    mirrored = {v: (x, -y) for v, (x, y) in SQUARE.items()}
    for pairs in itertools.product(*[[(u, v), (v, u)] for u, v in ((1, 2), (2, 3), (3, 4), (1, 4))]):
        d = square(solid=pairs)
        assert verify_kasteleyn(extract_faces(d, SQUARE)) == verify_kasteleyn(extract_faces(d, mirrored))


def test_all_solid_two_by_two_grid():
    d = grid_dicot(3, 3)
    pd = embed_grid(d, 3, 3)
    assert len(pd.faces) == 4
    assert verify_kasteleyn(pd.with_dicot(d.reoriented(kasteleyn_orient(pd))))


def test_sealed_dashed_face_has_no_orientation():
    pd = extract_faces(square(solid=(), dashed=((1, 2), (2, 3), (3, 4), (1, 4))), SQUARE)
    assert is_planar_dicot(pd)
    with pytest.raises(NoKasteleynOrientation):
        kasteleyn_orient(pd)


def _even_dashed_patterns(cols, rows, sample=None, seed=7):
    """Dashed-edge subsets of the grid leaving every face even; all of them, or ``sample`` at random."""
    edges = grid_edges(cols, rows)
    masks = range(1 << len(edges))
    if sample is not None:
        masks = random.Random(seed).sample(masks, len(masks))
    found = 0
    for mask in masks:
        dashed = {e for i, e in enumerate(edges) if mask >> i & 1}
        d = with_dashed(cols, rows, dashed)
        pd = embed_grid(d, cols, rows)
        if is_planar_dicot(pd):
            yield d, pd
            found += 1
            if sample is not None and found == sample:
                return


@pytest.mark.parametrize("cols,rows,sample", [(3, 2, None), (2, 3, None), (3, 3, 40)])
def test_orientation_exists_exactly_when_brute_force_finds_one(cols, rows, sample):
    checked = 0
    for d, pd in _even_dashed_patterns(cols, rows, sample):
        solid = [(u, v) for u, v, _ in d.solid]
        exists = any(
            verify_kasteleyn(pd, [(v, u) if bit else (u, v) for (u, v), bit in zip(solid, bits)])
            for bits in itertools.product((0, 1), repeat=len(solid))
        )
        try:
            pairs = kasteleyn_orient(pd)
        except NoKasteleynOrientation:
            assert not exists
        else:
            assert exists and verify_kasteleyn(pd, pairs)
        checked += 1
    assert checked >= 8


def test_boundary_loop_of_three_by_three_grid_encloses_centre():
    d = grid_dicot(3, 3)
    pd = embed_grid(d, 3, 3)
    oriented = pd.with_dicot(d.reoriented(kasteleyn_orient(pd)))
    ring = [grid_label(j, k, 3) for j, k in ((1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2))]
    loop = Loop(tuple(ring), (S,) * 8)
    assert enclosed_vertices(loop, oriented) == [grid_label(2, 2, 3)]
    assert planar_loop_weight(loop, oriented) == -1 == loop_weight(loop, oriented.dicot)
    assert planar_loop_weight(Loop((1, 2), (S, S)), oriented) == 1


def test_unit_face_loop_is_positive():
    d = grid_dicot(2, 2, a=3, b=5)
    pd = embed_grid(d, 2, 2)
    oriented = pd.with_dicot(d.reoriented(kasteleyn_orient(pd)))
    loop = Loop((1, 2, 3, 4), (S,) * 4)
    assert planar_loop_weight(loop, oriented) == 225 == loop_weight(loop, oriented.dicot)


def test_vertex_on_loop_boundary_rejected():
    d = make_dicot([1] * 5, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)], [], bipartite=True)
    coords = {1: (0, 0), 2: (2, 0), 3: (2, 2), 4: (0, 2), 5: (5, 5)}
    with pytest.raises(DisconnectedGraph):
        extract_faces(d, coords)
    d2 = make_dicot([1] * 5, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1), (1, 5, 1)], [])
    pd = extract_faces(d2, {1: (0, 0), 2: (2, 0), 3: (2, 2), 4: (0, 2), 5: (-1, 0)})
    assert enclosed_vertices(Loop((1, 2, 3, 4), (S,) * 4), pd) == []
    # Put vertex 5 on the segment 2 -> 3 of a loop that does not use it.
    fake = pd.__class__(pd.dicot, {**pd.coords, 5: (Fraction(2), Fraction(1))}, pd.faces, pd.outer)
    with pytest.raises(VertexOnBoundary):
        enclosed_vertices(Loop((1, 2, 3, 4), (S,) * 4), fake)


def _corollary_holds_on(pd):
    oriented = pd.with_dicot(pd.dicot.reoriented(kasteleyn_orient(pd)))
    d = oriented.dicot
    loops = 0
    for c in enumerate_configs(d):
        for loop in c.loops:
            assert planar_loop_weight(loop, oriented) == loop_weight(loop, d)
            loops += 1
    return loops


@pytest.mark.parametrize("cols,rows", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_enclosed_vertex_rule_on_grids(cols, rows):
    rng = random.Random(cols * 10 + rows)
    patterns = [
        grid_dicot(cols, rows, a=Fraction(2), b=Fraction(3, 2),
                   vertical_bands=[rng.choice("sd") for _ in range(rows - 1)],
                   horizontal_bands=[rng.choice("sd") for _ in range(cols - 1)])
        for _ in range(3)
    ] + [grid_dicot(cols, rows)]
    for d in patterns:
        pd = embed_grid(d, cols, rows)
        try:
            kasteleyn_orient(pd)
        except NoKasteleynOrientation:
            continue
        assert _corollary_holds_on(pd) > 0


def test_validate_planar_json_round_trip():
    d = grid_dicot(3, 2, vertical="d")
    pd = embed_grid(d, 3, 2)
    again = validate_planar(pd.to_json())
    assert again.dicot == d and len(again.faces) == len(pd.faces)
