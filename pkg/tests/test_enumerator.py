import os
import random
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from classify import type_string  # noqa: E402
from enumerator import (  # noqa: E402
    Move,
    SearchConfig,
    SearchStats,
    SweepState,
    admissible_moves,
    apply_move,
    brute_force_tilings,
    canonical_multiplicity_vectors,
    classes_for_vector,
    dihedral_images,
    enumerate_irreducible_classes,
    enumerate_tilings,
    tile_set_key,
    vertex_labels,
)
from errors import ContractViolation, InvalidParameterError  # noqa: E402
from tiling_complex import Multiplicities, boundary_signature, check_invariants  # noqa: E402

NO_PRUNE = SearchConfig(prune_pair_convex=False, prune_closure=False)


def tile_sets(complexes):
    return [tile_set_key(c) for c in complexes]


def small_vectors(k, limit):
    return [m for m in canonical_multiplicity_vectors(k) if sum(m) <= limit]


def test_sweep_state_moves_and_undo():
    state = SweepState(Multiplicities(3, (1, 1, 1)))
    assert state.candidate_moves() == [(0, 2), (0, 3), (1, 2)]
    face = state.apply(0, 3)
    assert face.size == 6
    assert state.is_final()
    assert state.snapshot().moves == ((0, 3),)
    state.undo()
    assert state.front == [0, 1, 2]
    assert state.front_vertices == [0, 1, 2, 3]
    assert state.next_vertex == 4
    assert state.faces == []


def test_sweep_state_rejects_bad_block():
    state = SweepState(Multiplicities(3, (1, 1, 1)))
    with pytest.raises(ContractViolation):
        state.apply(0, 1)
    state.apply(0, 2)
    with pytest.raises(ContractViolation):
        state.apply(0, 2)


def test_admissible_moves_match_state():
    state = SweepState(Multiplicities(4, (1, 1, 1, 1)))
    front = state.current_front()
    moves = admissible_moves(front, 4)
    assert len(moves) == len(state.candidate_moves())
    assert Move(start=0, dirs=frozenset({3, 4})) in moves
    new_front, face = apply_move(front, Move(start=0, dirs=frozenset({3, 4})), state)
    assert new_front.dirs[:2] == (4, 3)
    assert face.dirs == frozenset({3, 4})
    with pytest.raises(ContractViolation):
        apply_move(front, moves[0], state)


def test_hexagon_has_two_tilings():
    assert len(list(enumerate_tilings(Multiplicities(3, (1, 1, 1)), NO_PRUNE))) == 2
    assert len(list(enumerate_tilings(Multiplicities(3, (1, 1, 1))))) == 2


@pytest.mark.parametrize(
    "k,m", [(3, (2, 1, 1)), (3, (2, 2, 1)), (4, (1, 1, 1, 1)), (4, (2, 1, 1, 1))]
)
def test_sweep_matches_brute_force(k, m):
    mult = Multiplicities(k, m)
    swept = tile_sets(enumerate_tilings(mult, NO_PRUNE))
    assert len(swept) == len(set(swept))
    assert set(swept) == set(tile_sets(brute_force_tilings(mult)))


def test_rhombus_tilings_are_told_apart():
    mult = Multiplicities(3, (2, 1, 1))
    swept = list(enumerate_tilings(mult, NO_PRUNE))
    rhombic = [c for c in swept if all(f.size == 4 for f in c.faces)]
    assert len(rhombic) == 3
    assert len(set(tile_sets(rhombic))) == 3
    assert len(brute_force_tilings(mult)) == len(swept) == 5


def test_vertex_labels_follow_wire_steps():
    state = SweepState(Multiplicities(3, (1, 1, 1)))
    labels = vertex_labels(state.edges)
    assert labels == {0: set(), 1: {0}, 2: {0, 1}, 3: {0, 1, 2}}
    state.apply(0, 3)
    labels = vertex_labels(state.edges)
    assert labels[4] == {2}
    assert labels[5] == {1, 2}


def test_disjoint_moves_commute():
    rng = random.Random(11)
    vectors = [(3, (2, 2, 1)), (3, (3, 2, 1)), (4, (1, 1, 1, 1)), (4, (2, 1, 2, 1))]
    checked = 0
    for _ in range(60):
        k, m = rng.choice(vectors)
        state = SweepState(Multiplicities(k, m))
        for _ in range(rng.randrange(4)):
            moves = state.candidate_moves()
            if not moves:
                break
            state.apply(*rng.choice(moves))
        moves = state.candidate_moves()
        pairs = [(a, b) for a in moves for b in moves if a[0] + a[1] <= b[0]]
        if not pairs:
            continue
        a, b = rng.choice(pairs)
        state.apply(*a)
        state.apply(*b)
        forward = (list(state.front), tile_set_key(state))
        state.undo()
        state.undo()
        state.apply(*b)
        state.apply(*a)
        assert (list(state.front), tile_set_key(state)) == forward
        checked += 1
    assert checked > 0


def test_emitted_tilings_satisfy_invariants():
    cfg = SearchConfig(prune_pair_convex=False, prune_closure=False, check_invariants=True)
    for c in enumerate_tilings(Multiplicities(3, (2, 2, 1)), cfg):
        assert check_invariants(c, irreducible=False) == []


def test_max_solutions_and_stats():
    stats = SearchStats()
    cfg = SearchConfig(prune_pair_convex=False, prune_closure=False, max_solutions=1)
    found = list(enumerate_tilings(Multiplicities(3, (2, 1, 1)), cfg, stats))
    assert len(found) == 1
    assert stats.emitted == 1
    assert stats.multiplicities == (2, 1, 1)
    assert stats.nodes >= 1


def test_progress_hook_is_called():
    seen = []
    cfg = SearchConfig(progress_hook=seen.append, progress_every=1)
    list(enumerate_tilings(Multiplicities(3, (1, 1, 1)), cfg))
    assert seen
    assert all(isinstance(s, SearchStats) for s in seen)


def test_side_cap_is_enforced():
    with pytest.raises(InvalidParameterError):
        list(enumerate_tilings(Multiplicities(3, (4, 1, 1), capped=False)))


def test_dihedral_vectors():
    images = dihedral_images((1, 2, 3))
    assert len(set(images)) == 6
    assert (3, 2, 1) in images
    assert len(canonical_multiplicity_vectors(3)) == 10
    assert canonical_multiplicity_vectors(2) == [(1, 1)]
    with pytest.raises(InvalidParameterError):
        canonical_multiplicity_vectors(1)


def test_classes_for_vector_hexagon():
    classes, stats = classes_for_vector(3, (1, 1, 1), SearchConfig())
    assert len(classes) == 1
    assert stats.irreducible == 1
    assert stats.emitted == 2


def test_square_has_no_classes():
    assert enumerate_irreducible_classes(2) == {}


def test_hexagon_has_six_classes():
    done = []
    classes = enumerate_irreducible_classes(3, on_vector_done=done.append)
    assert len(classes) == 6
    assert len(done) == len(canonical_multiplicity_vectors(3))
    for c in classes.values():
        assert check_invariants(c) == []


def test_parallel_search_agrees():
    serial = enumerate_irreducible_classes(3)
    parallel = enumerate_irreducible_classes(3, jobs=2)
    assert set(serial) == set(parallel)


def test_prunes_do_not_change_classes():
    vectors = small_vectors(3, 6)
    pruned = enumerate_irreducible_classes(3, vectors=vectors)
    plain = enumerate_irreducible_classes(3, NO_PRUNE, vectors=vectors)
    assert set(pruned) == set(plain)


def test_class_side_types():
    types = sorted(
        type_string(boundary_signature(c), 3) for c in enumerate_irreducible_classes(3).values()
    )
    assert len(types) == 6
    assert "1/1/1" in types


def test_invalid_k_rejected():
    with pytest.raises(InvalidParameterError):
        enumerate_irreducible_classes(1)
