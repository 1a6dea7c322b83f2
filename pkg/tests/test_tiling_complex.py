import os
import random
import sys
from dataclasses import replace

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from enumerator import SearchConfig, enumerate_tilings  # noqa: E402
from errors import DegenerateTileError, IntegrityError, InvalidParameterError  # noqa: E402
from tiling_complex import (  # noqa: E402
    Edge,
    Multiplicities,
    boundary_paths,
    boundary_signature,
    check_invariants,
    direction_angle_units,
    make_face,
    make_wires,
    mirror_complex,
    multiplicity_cap,
    relabel_complex,
    side_crossings,
    side_direction,
    slope_rank,
    zonogon_angles,
)

NO_PRUNE = SearchConfig(prune_pair_convex=False, prune_closure=False)


def tilings(k, m):
    return list(enumerate_tilings(Multiplicities(k, m), NO_PRUNE))


@pytest.fixture
def hexagon():
    return tilings(3, (1, 1, 1))[0]


def test_direction_angles_octagon():
    assert [direction_angle_units(i, 4) for i in range(1, 5)] == [0, 1, -2, -1]


def test_slope_rank_orders_by_angle():
    assert slope_rank(4).order == (3, 4, 1, 2)
    assert slope_rank(4).of(1) == 3
    assert slope_rank(3).order == (3, 1, 2)


def test_side_direction_wraps():
    assert side_direction(5, 4) == 1
    assert side_direction(8, 4) == 4


def test_multiplicity_cap_and_validation():
    assert multiplicity_cap(4) == 5
    with pytest.raises(InvalidParameterError):
        Multiplicities(4, (6, 1, 1, 1))
    assert Multiplicities(4, (6, 1, 1, 1), capped=False).n == 9
    with pytest.raises(InvalidParameterError):
        Multiplicities(3, (1, 1))
    with pytest.raises(InvalidParameterError):
        Multiplicities(3, (0, 1, 1))
    with pytest.raises(InvalidParameterError):
        Multiplicities(1, (1,))


def test_parse_multiplicities():
    assert Multiplicities.parse("1, 2,1", 3).m == (1, 2, 1)
    with pytest.raises(InvalidParameterError):
        Multiplicities.parse("1,a,1", 3)


def test_zonogon_angles():
    assert zonogon_angles({1, 2}, 3) == (2, 1, 2, 1)
    assert zonogon_angles({1, 2, 3}, 3) == (2,) * 6
    angles = zonogon_angles({1, 2, 4}, 4)
    assert sum(angles) == (6 - 2) * 4
    with pytest.raises(DegenerateTileError):
        zonogon_angles({2}, 3)


def test_wires_follow_slope_rank():
    wires = make_wires(Multiplicities(3, (1, 2, 1)))
    assert [w.dir for w in wires] == [3, 1, 2, 2]
    assert [w.class_index for w in wires] == [1, 1, 1, 2]
    initial, final = boundary_paths(Multiplicities(3, (1, 2, 1)))
    assert initial.vertex_ids == (0, 1, 2, 3, 4)
    assert final.dirs == (2, 2, 1, 3)
    assert final.vertex_ids == (0, 5, 6, 7, 4)


def test_hexagon_tiling_counts(hexagon):
    assert (len(hexagon.vertices), len(hexagon.edges), len(hexagon.faces)) == (7, 9, 3)
    assert all(face.size == 4 for face in hexagon.faces)
    assert boundary_signature(hexagon) == (1,) * 6
    assert len(hexagon.corner_vertices) == 6
    assert check_invariants(hexagon) == []


def test_required_angles(hexagon):
    interior = set(hexagon.vertices) - hexagon.boundary_vertices
    assert len(interior) == 1
    (center,) = interior
    assert hexagon.required_angle(center) == 6
    assert sum(a for _, a in hexagon.vertex_faces[center]) == 6
    corner = next(iter(hexagon.corner_vertices))
    assert hexagon.required_angle(corner) == 2


def test_side_crossings_are_monotone(hexagon):
    total = 0
    for side in range(1, 7):
        keys = [key for _, key in side_crossings(hexagon, side)]
        assert keys == sorted(keys, reverse=True)
        assert all(1 <= key <= 2 for key in keys)
        total += len(keys)
    assert total == 6


def test_invariants_hold_for_every_small_tiling():
    for m in [(1, 1, 1), (2, 1, 1), (2, 2, 1)]:
        for c in tilings(3, m):
            assert check_invariants(c, irreducible=False) == []


def test_invariants_report_broken_boundary(hexagon):
    shifted = hexagon.boundary_sides[1:] + hexagon.boundary_sides[:1]
    broken = replace(hexagon, boundary_sides=shifted)
    problems = check_invariants(broken)
    assert problems and problems[0].startswith("boundary")


def test_make_face_rejects_open_cycle():
    edges = {
        0: Edge(id=0, dir=1, wire=0, tail=0, head=1),
        1: Edge(id=1, dir=2, wire=1, tail=1, head=2),
        2: Edge(id=2, dir=1, wire=0, tail=3, head=4),
    }
    with pytest.raises(IntegrityError):
        make_face(0, {1, 2}, [0, 1, 2], edges, 3)
    with pytest.raises(IntegrityError):
        make_face(0, {1, 2}, [0, 1], edges, 3)


def test_mirror_complex_is_valid():
    for c in tilings(3, (1, 2, 1)):
        mirrored = mirror_complex(c)
        assert mirrored.mult.m == (1, 1, 2)
        assert check_invariants(mirrored, irreducible=False) == []
    for c in tilings(4, (2, 1, 1, 1)):
        assert check_invariants(mirror_complex(c), irreducible=False) == []


def test_relabel_complex_keeps_structure(hexagon):
    rng = random.Random(7)
    relabeled = relabel_complex(hexagon, rng)
    assert check_invariants(relabeled) == []
    assert len(relabeled.faces) == len(hexagon.faces)
    assert boundary_signature(relabeled) == boundary_signature(hexagon)


def test_dart_table_covers_every_edge(hexagon):
    darts = hexagon.darts
    assert len(darts.tail) == 2 * len(hexagon.edges)
    spokes = sorted(d for ds in darts.rotation.values() for d in ds)
    assert spokes == list(range(2 * len(hexagon.edges)))
    outer = [d for d in range(len(darts.tail)) if darts.left_face[d] < 0]
    assert len(outer) == 6
