import os
import random
import sys
from collections import defaultdict

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from canon import (  # noqa: E402
    CanonicalCode,
    _pack,
    canonical_code,
    dedupe,
    merge_classes,
    representative_key,
    side_profile,
)
from classify import type_string  # noqa: E402
from enumerator import (  # noqa: E402
    SearchConfig,
    canonical_multiplicity_vectors,
    classes_for_vector,
    enumerate_tilings,
)
from errors import IntegrityError  # noqa: E402
from irreducible import is_irreducible  # noqa: E402
from tiling_complex import (  # noqa: E402
    Multiplicities,
    TilingComplex,
    boundary_signature,
    mirror_complex,
    relabel_complex,
)

NO_PRUNE = SearchConfig(prune_pair_convex=False, prune_closure=False)


@pytest.fixture(scope="module")
def rhombic_hexagons():
    return list(enumerate_tilings(Multiplicities(3, (1, 1, 1)), NO_PRUNE))


def test_both_rhombic_hexagons_share_a_code(rhombic_hexagons):
    first, second = rhombic_hexagons
    assert canonical_code(first) == canonical_code(second)
    assert len(dedupe(rhombic_hexagons)) == 1


def test_code_ignores_labels_and_reflection():
    rng = random.Random(3)
    for c in enumerate_tilings(Multiplicities(3, (2, 2, 1)), NO_PRUNE):
        code = canonical_code(c)
        assert canonical_code(relabel_complex(c, rng)) == code
        assert canonical_code(mirror_complex(c)) == code


def test_code_separates_side_types():
    types = defaultdict(set)
    for m in canonical_multiplicity_vectors(3):
        for c in enumerate_tilings(Multiplicities(3, m)):
            if is_irreducible(c)[0]:
                types[canonical_code(c)].add(type_string(boundary_signature(c), 3))
    assert len(types) == 6
    assert all(len(found) == 1 for found in types.values())


def test_code_hex_round_trip(rhombic_hexagons):
    code = canonical_code(rhombic_hexagons[0])
    assert CanonicalCode.fromhex(code.hex()) == code
    assert CanonicalCode(b"\x00") < CanonicalCode(b"\x01")


def test_code_words_hold_large_labels():
    assert len(_pack([70_000, 1])) == 8
    assert _pack([65_535]) < _pack([70_000]) < _pack([1 << 20])


def test_empty_complex_has_no_code():
    empty = TilingComplex(
        k=3,
        mult=Multiplicities(3, (1, 1, 1)),
        wires=(),
        vertices=(),
        edges=(),
        faces=(),
        boundary_sides=(),
    )
    with pytest.raises(IntegrityError):
        canonical_code(empty)


def test_dedupe_keeps_smallest_representative(rhombic_hexagons):
    kept = next(iter(dedupe(reversed(rhombic_hexagons)).values()))
    assert representative_key(kept) == min(representative_key(c) for c in rhombic_hexagons)


def test_merge_is_order_independent():
    cfg = SearchConfig()
    maps = [classes_for_vector(3, m, cfg)[0] for m in [(1, 1, 2), (1, 2, 2), (2, 2, 2)]]
    forward, backward = {}, {}
    for found in maps:
        merge_classes(forward, found)
    for found in reversed(maps):
        merge_classes(backward, found)
    assert forward.keys() == backward.keys()
    assert all(forward[code] is backward[code] for code in forward)


def test_side_profiles_follow_rotation(rhombic_hexagons):
    c = rhombic_hexagons[0]
    profiles = [side_profile(c, j) for j in range(1, 7)]
    for j in range(6):
        assert profiles[j].code == profiles[(j + 2) % 6].code
    with pytest.raises(IntegrityError):
        side_profile(c, 7)
