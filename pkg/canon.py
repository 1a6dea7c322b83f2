"""Canonical codes of tilings as planar maps.

Two decompositions are combinatorially equivalent when their face lattices
are isomorphic; for a disk this is isomorphism of the planar map with the
outer face marked, up to reflection. A code is the breadth-first encoding of
the rotation system from one root dart, minimised over every dart and both
orientations.
"""

import logging
import struct
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from errors import IntegrityError
from tiling_complex import DartTable, TilingComplex

logger = logging.getLogger(__name__)

DartFlags = Callable[[int, int], Sequence[int]]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def fromhex(cls, text: str) -> "CanonicalCode":
        return cls(bytes.fromhex(text))


@dataclass(frozen=True)
class SideProfile:
    """Code of the tiles meeting one side; ``mirrored`` when read backwards."""

    code: CanonicalCode
    mirrored: bool
    symmetric: bool


def _encode(
    darts: DartTable,
    rotation: Mapping[int, Tuple[int, ...]],
    root: int,
    orientation: int,
    flags: DartFlags,
) -> List[int]:
    labels = {darts.tail[root]: 0}
    queue = deque([(darts.tail[root], root)])
    out: List[int] = []
    while queue:
        v, entry = queue.popleft()
        spokes = rotation[v]
        first = spokes.index(entry)
        degree = len(spokes)
        out.append(degree)
        for step in range(degree):
            d = spokes[(first + orientation * step) % degree]
            w = darts.head[d]
            if w not in labels:
                labels[w] = len(labels)
                queue.append((w, d ^ 1))
            out.append(labels[w])
            out.extend(flags(d, orientation))
    return out


def _pack(values: Sequence[int]) -> bytes:
    return struct.pack(f">{len(values)}I", *values)


def canonical_code(c: TilingComplex) -> CanonicalCode:
    """Minimum encoding over all root darts and both orientations."""
    if not c.faces or not c.edges:
        raise IntegrityError("cannot encode an empty complex")
    try:
        darts = c.darts
    except KeyError as exc:
        raise IntegrityError(f"edge references unknown vertex {exc}") from exc

    def outer(d: int, orientation: int) -> Tuple[int]:
        left = darts.left_face[d] if orientation == 1 else darts.left_face[d ^ 1]
        return (1 if left < 0 else 0,)

    header = [len(c.vertices), len(c.edges), len(c.faces)]
    best = None
    for root in range(len(darts.tail)):
        for orientation in (1, -1):
            candidate = _pack(header + _encode(darts, darts.rotation, root, orientation, outer))
            if best is None or candidate < best:
                best = candidate
    return CanonicalCode(best)


def representative_key(c: TilingComplex) -> Tuple:
    """Total order used to pick one representative per class."""
    return (len(c.faces), c.mult.m, c.moves)


def merge_classes(
    into: Dict[CanonicalCode, TilingComplex], other: Mapping[CanonicalCode, TilingComplex]
) -> Dict[CanonicalCode, TilingComplex]:
    """Union of two class maps keeping the smaller representative; order-independent."""
    for code, c in other.items():
        held = into.get(code)
        if held is None or representative_key(c) < representative_key(held):
            into[code] = c
    return into


def dedupe(stream: Iterable[TilingComplex]) -> Dict[CanonicalCode, TilingComplex]:
    classes: Dict[CanonicalCode, TilingComplex] = {}
    for c in stream:
        merge_classes(classes, {canonical_code(c): c})
    return classes


def side_profile(c: TilingComplex, side: int) -> SideProfile:
    """Code of the sub-map formed by the tiles meeting side E_side.

    A tile meets the side when it shares at least one point with it. The code
    is rooted at the first side edge read counterclockwise, or at the last one
    read backwards in the mirror image, whichever is smaller.
    """
    if not 1 <= side <= 2 * c.k:
        raise IntegrityError(f"side {side} outside 1..{2 * c.k}")
    path = c.side_paths[side - 1]
    side_edges = set(c.boundary_sides[side - 1])
    tiles = {f for v in path for f, _ in c.vertex_faces[v]}
    darts = c.darts
    index_of = {e.id: i for i, e in enumerate(c.edges)}
    face_ids = [f.id for f in c.faces]

    kept = set()
    for f in tiles:
        for e in c.face_by_id[f].boundary:
            i = index_of[e]
            kept.update((2 * i, 2 * i + 1))
    rotation = {}
    for v, spokes in darts.rotation.items():
        sub = tuple(d for d in spokes if d in kept)
        if sub:
            rotation[v] = sub

    def flags(d: int, orientation: int) -> Tuple[int, int]:
        left = darts.left_face[d] if orientation == 1 else darts.left_face[d ^ 1]
        inside = 1 if left >= 0 and face_ids[left] in tiles else 0
        on_side = 1 if c.edges[d >> 1].id in side_edges else 0
        return inside, on_side

    def dart_from(vertex: int, edge_id: int) -> int:
        i = index_of[edge_id]
        return 2 * i if c.edges[i].tail == vertex else 2 * i + 1

    first_edges = c.boundary_sides[side - 1]
    forward_root = dart_from(path[0], first_edges[0])
    backward_root = dart_from(path[-1], first_edges[-1])
    forward = _pack(_encode(darts, rotation, forward_root, 1, flags))
    backward = _pack(_encode(darts, rotation, backward_root, -1, flags))
    if backward < forward:
        return SideProfile(CanonicalCode(backward), mirrored=True, symmetric=False)
    return SideProfile(CanonicalCode(forward), mirrored=False, symmetric=forward == backward)
