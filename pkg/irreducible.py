"""Irreducibility of decompositions via forced convex-closure growth.

A tile union is convex when it is simply connected and no boundary vertex of
the union collects more than k angle units. Starting from two adjacent tiles,
every tile around a reflex vertex and every tile inside a hole must belong to
any convex superset, so growing by those forced additions yields the unique
smallest convex union containing the seed.

The engine works on a ``TileView`` so that the sweep search can run it on a
partially placed tiling, where some vertices are still missing tiles.
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import (
    Deque,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Protocol,
    Sequence,
    Set,
    Tuple,
)

import networkx as nx

from errors import ContractViolation
from tiling_complex import Incidence, TilingComplex

logger = logging.getLogger(__name__)


class TileView(Protocol):
    """Read access to a (possibly partial) set of placed tiles."""

    k: int

    def face_ids(self) -> Iterable[int]: ...

    def face_count(self) -> int: ...

    def face_corners(self, f: int) -> Iterable[Tuple[int, int]]: ...

    def face_edges(self, f: int) -> Sequence[int]: ...

    def faces_at(self, v: int) -> Sequence[Incidence]: ...

    def faces_on(self, e: int) -> Sequence[int]: ...

    def vertex_complete(self, v: int) -> bool: ...

    def open_edges(self) -> Iterable[int]: ...

    def is_complete(self) -> bool: ...


class ComplexView:
    """TileView over a finished complex; every vertex is complete."""

    def __init__(self, c: TilingComplex) -> None:
        self.c = c
        self.k = c.k

    def face_ids(self) -> Iterable[int]:
        return self.c.face_by_id.keys()

    def face_count(self) -> int:
        return len(self.c.faces)

    def face_corners(self, f: int) -> Iterable[Tuple[int, int]]:
        face = self.c.face_by_id[f]
        return zip(face.vertices, face.angle_units)

    def face_edges(self, f: int) -> Sequence[int]:
        return self.c.face_by_id[f].boundary

    def faces_at(self, v: int) -> Sequence[Incidence]:
        return self.c.vertex_faces.get(v, ())

    def faces_on(self, e: int) -> Sequence[int]:
        return self.c.edge_faces.get(e, ())

    def vertex_complete(self, v: int) -> bool:
        return True

    def open_edges(self) -> Iterable[int]:
        return self.c.boundary_edge_ids

    def is_complete(self) -> bool:
        return True


@dataclass(frozen=True)
class ConvexClosureResult:
    tiles: FrozenSet[int]
    convex: bool
    is_whole: bool

    @property
    def is_witness(self) -> bool:
        """A convex, proper union of at least two tiles."""
        return self.convex and not self.is_whole and len(self.tiles) >= 2


def grow_closure(view: TileView, seed: Iterable[int]) -> Optional[ConvexClosureResult]:
    """Smallest convex tile union containing ``seed``, or None if undecided.

    The result is undecided when a forced addition lands on a vertex whose
    tiles are not all placed yet.
    """
    k = view.k
    tiles: Set[int] = set()
    sums: Dict[int, int] = defaultdict(int)
    edges: Set[int] = set()
    pending: Deque[int] = deque()

    def take(f: int) -> None:
        tiles.add(f)
        for v, angle in view.face_corners(f):
            sums[v] += angle
            pending.append(v)
        edges.update(view.face_edges(f))

    for f in seed:
        if f not in tiles:
            take(f)

    while True:
        while pending:
            v = pending.popleft()
            if sums[v] <= k:
                continue
            if not view.vertex_complete(v):
                return None
            for f, _ in view.faces_at(v):
                if f not in tiles:
                    take(f)
        if len(sums) - len(edges) + len(tiles) == 1:
            break
        enclosed = enclosed_faces(view, tiles)
        if not enclosed:
            break
        for f in enclosed:
            take(f)

    euler = len(sums) - len(edges) + len(tiles)
    whole = view.is_complete() and len(tiles) == view.face_count()
    return ConvexClosureResult(tiles=frozenset(tiles), convex=euler == 1, is_whole=whole)


def enclosed_faces(view: TileView, tiles: Set[int]) -> List[int]:
    """Tiles outside ``tiles`` that cannot reach the outer boundary without crossing it."""
    reached: Set[int] = set()
    queue: Deque[int] = deque()
    for e in view.open_edges():
        for f in view.faces_on(e):
            if f not in tiles and f not in reached:
                reached.add(f)
                queue.append(f)
    while queue:
        f = queue.popleft()
        for e in view.face_edges(f):
            for g in view.faces_on(e):
                if g not in tiles and g not in reached:
                    reached.add(g)
                    queue.append(g)
    return [f for f in view.face_ids() if f not in tiles and f not in reached]


def dual_graph(c: TilingComplex) -> nx.Graph:
    """Tiles as nodes, joined when they share an edge."""
    graph = nx.Graph()
    graph.add_nodes_from(f.id for f in c.faces)
    for e, faces in c.edge_faces.items():
        if len(faces) == 2:
            graph.add_edge(faces[0], faces[1], edge=e)
    return graph


def _convex_union(c: TilingComplex, tiles: FrozenSet[int]) -> bool:
    k = c.k
    sums: Dict[int, int] = defaultdict(int)
    edges: Set[int] = set()
    for f in tiles:
        face = c.face_by_id[f]
        for v, angle in zip(face.vertices, face.angle_units):
            sums[v] += angle
        edges.update(face.boundary)
    if len(sums) - len(edges) + len(tiles) != 1:
        return False
    for v, total in sums.items():
        if total <= k:
            continue
        if any(f not in tiles for f, _ in c.vertex_faces[v]):
            return False
    return True


def union_is_convex(c: TilingComplex, tiles: Iterable[int]) -> bool:
    """True iff the union of the given edge-connected tiles is a convex polygon."""
    chosen = frozenset(tiles)
    if not chosen:
        raise ContractViolation("union_is_convex needs at least one tile")
    unknown = chosen - set(c.face_by_id)
    if unknown:
        raise ContractViolation(f"unknown tiles {sorted(unknown)}")
    if not nx.is_connected(dual_graph(c).subgraph(chosen)):
        raise ContractViolation("tile set is not edge-connected")
    return _convex_union(c, chosen)


def shared_edge(c: TilingComplex, a: int, b: int) -> Optional[int]:
    common = set(c.face_by_id[a].boundary) & set(c.face_by_id[b].boundary)
    return min(common) if common else None


def convex_closure(c: TilingComplex, seed: Tuple[int, int]) -> ConvexClosureResult:
    """Minimal convex tile union containing two adjacent tiles."""
    a, b = seed
    if a not in c.face_by_id or b not in c.face_by_id:
        raise ContractViolation(f"unknown seed tiles {seed}")
    if a == b or shared_edge(c, a, b) is None:
        raise ContractViolation(f"seed tiles {seed} do not share an edge")
    result = grow_closure(ComplexView(c), (a, b))
    assert result is not None
    return result


def seed_pairs(c: TilingComplex) -> List[Tuple[int, int]]:
    """Adjacent tile pairs in a fixed order."""
    pairs = set()
    for faces in c.edge_faces.values():
        if len(faces) == 2:
            pairs.add(tuple(sorted(faces)))
    return sorted(pairs)


def is_irreducible(c: TilingComplex) -> Tuple[bool, Optional[FrozenSet[int]]]:
    """Return (irreducible, witness); the witness is a proper convex tile union."""
    if len(c.faces) < 2:
        raise ContractViolation("a decomposition needs at least two tiles")
    view = ComplexView(c)
    for pair in seed_pairs(c):
        result = grow_closure(view, pair)
        assert result is not None
        if result.is_witness:
            logger.debug("reducible: witness of %d tiles", len(result.tiles))
            return False, result.tiles
    return True, None


def connected_tile_subsets(graph: nx.Graph, max_size: int) -> Iterator[FrozenSet[int]]:
    """Every connected node subset of size <= max_size, each exactly once."""
    for root in sorted(graph.nodes):
        frontier = {u for u in graph[root] if u > root}
        yield from _extend_subset(graph, frozenset([root]), frontier, root, max_size)


def _extend_subset(
    graph: nx.Graph,
    subset: FrozenSet[int],
    extension: Set[int],
    root: int,
    max_size: int,
) -> Iterator[FrozenSet[int]]:
    yield subset
    if len(subset) == max_size:
        return
    neighbourhood = set(subset)
    for s in subset:
        neighbourhood.update(graph[s])
    remaining = sorted(extension)
    while remaining:
        w = remaining.pop()
        fresh = {u for u in graph[w] if u > root and u not in neighbourhood}
        yield from _extend_subset(
            graph, subset | {w}, set(remaining) | fresh, root, max_size
        )


def brute_force_irreducible(c: TilingComplex) -> Tuple[bool, Optional[FrozenSet[int]]]:
    """Exhaustive check over all edge-connected proper tile subsets."""
    if len(c.faces) < 2:
        raise ContractViolation("a decomposition needs at least two tiles")
    total = len(c.faces)
    for subset in connected_tile_subsets(dual_graph(c), total - 1):
        if len(subset) >= 2 and _convex_union(c, subset):
            return False, subset
    return True, None
