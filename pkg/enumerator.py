"""Exhaustive sweep generator for edge-to-edge decompositions of P.

A partial tiling is represented by its front, the left-to-right path of wire
steps separating the placed tiles from the rest of P. Placing a tile reverses
a block of consecutive steps with strictly increasing slope rank. Move
sequences that differ only by swapping disjoint moves give the same tiling, so
the search keeps only the lexicographic normal form of each sequence.
"""

import logging
import time
from collections import defaultdict, deque
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, replace
from itertools import chain, product
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from canon import CanonicalCode, dedupe, merge_classes
from errors import ContractViolation, InvalidParameterError
from irreducible import grow_closure, is_irreducible
from tiling_complex import (
    Edge,
    Face,
    Front,
    Incidence,
    Multiplicities,
    TilingComplex,
    check_invariants,
    direction_angle_units,
    make_wires,
    multiplicity_cap,
    slope_rank,
)
from utils import log_json

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50_000


@dataclass(frozen=True)
class Move:
    """Tile placement on the front block [start, start + len(dirs))."""

    start: int
    dirs: FrozenSet[int]

    @property
    def length(self) -> int:
        return len(self.dirs)


@dataclass
class SearchStats:
    multiplicities: Tuple[int, ...] = ()
    nodes: int = 0
    pruned_pair: int = 0
    pruned_closure: int = 0
    dead_ends: int = 0
    emitted: int = 0
    irreducible: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class SearchConfig:
    prune_pair_convex: bool = True
    prune_closure: bool = True
    max_solutions: Optional[int] = None
    progress_hook: Optional[Callable[[SearchStats], None]] = None
    progress_every: int = PROGRESS_EVERY
    check_invariants: bool = False


class SweepState:
    """Mutable partial tiling driven by apply/undo; also a closure TileView.

    Wire ids equal their positions on the initial front, the initial vertices
    are 0..n and the bottom edges 0..n-1. Face ids are placement indices.
    """

    def __init__(self, mult: Multiplicities) -> None:
        self.mult = mult
        self.k = k = mult.k
        rank = slope_rank(k)
        self.wires = make_wires(mult)
        self.n = n = len(self.wires)
        self.wire_rank = [rank.of(w.dir) for w in self.wires]
        self.wire_heading = [direction_angle_units(w.dir, k) % (2 * k) for w in self.wires]
        self.final = sorted(
            range(n), key=lambda w: (-self.wire_rank[w], self.wires[w].class_index)
        )
        self._final_prefix = [frozenset(self.final[:p]) for p in range(n + 1)]

        self.front: List[int] = list(range(n))
        self.front_vertices: List[int] = list(range(n + 1))
        self.front_edges: List[int] = list(range(n))
        self.front_position: Dict[int, int] = {v: v for v in range(n + 1)}
        self.edges: List[Edge] = [
            Edge(id=i, dir=self.wires[i].dir, wire=i, tail=i, head=i + 1)
            for i in range(n)
        ]
        self.edge_faces: List[List[int]] = [[] for _ in range(n)]
        self.faces: List[Face] = []
        self.vertex_faces: Dict[int, List[Incidence]] = {v: [] for v in range(n + 1)}
        self.next_vertex = n + 1
        self.moves: List[Tuple[int, int]] = []

    # ------------------------------------------------------------- front ops

    def current_front(self) -> Front:
        return Front(
            steps=tuple(self.wires[w] for w in self.front),
            vertex_ids=tuple(self.front_vertices),
        )

    def is_final(self) -> bool:
        return self.front == self.final

    def candidate_moves(self) -> List[Tuple[int, int]]:
        """All (start, length) blocks with strictly increasing rank."""
        ranks = [self.wire_rank[w] for w in self.front]
        n = self.n
        found = []
        for s in range(n - 1):
            end = s + 1
            while end < n and ranks[end] > ranks[end - 1]:
                end += 1
            found.extend((s, length) for length in range(2, end - s + 1))
        return found

    def apply(self, start: int, length: int) -> Face:
        k = self.k
        block = self.front[start:start + length]
        if length < 2 or len(block) != length or any(
            self.wire_rank[a] >= self.wire_rank[b] for a, b in zip(block, block[1:])
        ):
            raise ContractViolation(f"block ({start}, {length}) is not admissible")
        lower_edges = self.front_edges[start:start + length]
        lower_vertices = self.front_vertices[start:start + length + 1]
        fresh = list(range(self.next_vertex, self.next_vertex + length - 1))
        self.next_vertex += length - 1
        upper_vertices = [lower_vertices[0]] + fresh + [lower_vertices[-1]]

        face_id = len(self.faces)
        new_edges = []
        for j, w in enumerate(reversed(block)):
            edge = Edge(
                id=len(self.edges),
                dir=self.wires[w].dir,
                wire=w,
                tail=upper_vertices[j],
                head=upper_vertices[j + 1],
            )
            self.edges.append(edge)
            self.edge_faces.append([face_id])
            new_edges.append(edge.id)

        headings = [self.wire_heading[w] for w in block]
        headings += [(h + k) % (2 * k) for h in headings]
        angles = tuple(
            k - ((headings[j] - headings[j - 1]) % (2 * k)) for j in range(2 * length)
        )
        face = Face(
            id=face_id,
            dirs=frozenset(self.wires[w].dir for w in block),
            boundary=tuple(lower_edges) + tuple(reversed(new_edges)),
            vertices=tuple(lower_vertices[:-1]) + tuple(reversed(upper_vertices[1:])),
            angle_units=angles,
        )
        self.faces.append(face)
        for e in lower_edges:
            self.edge_faces[e].append(face_id)
        for v in fresh:
            self.vertex_faces[v] = []
        for v, angle in zip(face.vertices, angles):
            self.vertex_faces[v].append((face_id, angle))

        for v in lower_vertices[1:-1]:
            del self.front_position[v]
        for offset, v in enumerate(fresh, start=start + 1):
            self.front_position[v] = offset
        self.front[start:start + length] = block[::-1]
        self.front_edges[start:start + length] = new_edges
        self.front_vertices[start + 1:start + length] = fresh
        self.moves.append((start, length))
        return face

    def undo(self) -> None:
        start, length = self.moves.pop()
        face = self.faces.pop()
        for v in face.vertices:
            self.vertex_faces[v].pop()
        lower_edges = face.boundary[:length]
        for e in lower_edges:
            self.edge_faces[e].pop()
        for _ in range(length):
            self.edges.pop()
            self.edge_faces.pop()
        fresh = self.front_vertices[start + 1:start + length]
        for v in fresh:
            del self.vertex_faces[v]
            del self.front_position[v]
        restored = list(face.vertices[1:length])
        for offset, v in enumerate(restored, start=start + 1):
            self.front_position[v] = offset
        self.front[start:start + length] = self.front[start:start + length][::-1]
        self.front_edges[start:start + length] = lower_edges
        self.front_vertices[start + 1:start + length] = restored
        self.next_vertex -= length - 1

    def snapshot(self) -> TilingComplex:
        """Freeze the current (normally final) state into a TilingComplex."""
        k = self.k
        sides: List[List[int]] = [[] for _ in range(2 * k)]
        for e in range(self.n):
            sides[self.wire_heading[e]].append(e)
        for p in reversed(range(self.n)):
            w = self.front[p]
            sides[(self.wire_heading[w] + k) % (2 * k)].append(self.front_edges[p])
        return TilingComplex(
            k=k,
            mult=self.mult,
            wires=self.wires,
            vertices=tuple(range(self.next_vertex)),
            edges=tuple(self.edges),
            faces=tuple(self.faces),
            boundary_sides=tuple(tuple(s) for s in sides),
            moves=tuple(self.moves),
        )

    # ------------------------------------------------------------- TileView

    def face_ids(self) -> Iterable[int]:
        return range(len(self.faces))

    def face_count(self) -> int:
        return len(self.faces)

    def face_corners(self, f: int) -> Iterable[Tuple[int, int]]:
        face = self.faces[f]
        return zip(face.vertices, face.angle_units)

    def face_edges(self, f: int) -> Sequence[int]:
        return self.faces[f].boundary

    def faces_at(self, v: int) -> Sequence[Incidence]:
        return self.vertex_faces[v]

    def faces_on(self, e: int) -> Sequence[int]:
        return self.edge_faces[e]

    def vertex_complete(self, v: int) -> bool:
        p = self.front_position.get(v)
        if p is None:
            return True
        return frozenset(self.front[:p]) == self._final_prefix[p]

    def open_edges(self) -> Iterable[int]:
        return chain(range(self.n), self.front_edges)

    def is_complete(self) -> bool:
        return self.is_final()


# ----------------------------------------------------------------- moves


def admissible_moves(f: Front, k: int) -> List[Move]:
    """Blocks of length >= 2 with strictly increasing slope rank, left to right."""
    rank = slope_rank(k)
    ranks = [rank.of(w.dir) for w in f.steps]
    moves = []
    for s in range(len(ranks) - 1):
        end = s + 1
        while end < len(ranks) and ranks[end] > ranks[end - 1]:
            end += 1
        for length in range(2, end - s + 1):
            moves.append(Move(start=s, dirs=frozenset(w.dir for w in f.steps[s:s + length])))
    return moves


def apply_move(f: Front, mv: Move, state: SweepState) -> Tuple[Front, Face]:
    """Place the tile of ``mv`` on ``state`` whose front must be ``f``."""
    if tuple(w.id for w in f.steps) != tuple(state.front):
        raise ContractViolation("front does not match the sweep state")
    if mv not in admissible_moves(f, state.k):
        raise ContractViolation(f"move {mv} is not admissible")
    face = state.apply(mv.start, mv.length)
    return state.current_front(), face


def _lex_normal(moves: Sequence[Tuple[int, int]], start: int, length: int) -> bool:
    """Whether appending the move keeps the sequence in lexicographic normal form."""
    for prev_start, prev_length in reversed(moves):
        if prev_start + prev_length <= start or start + length <= prev_start:
            if prev_start > start:
                return False
        else:
            return True
    return True


def _pair_is_convex(state: SweepState, face: Face, other: int, edge: int) -> bool:
    k = state.k
    angles = dict(zip(face.vertices, face.angle_units))
    neighbour = state.faces[other]
    other_angles = dict(zip(neighbour.vertices, neighbour.angle_units))
    e = state.edges[edge]
    return all(angles[v] + other_angles[v] <= k for v in (e.tail, e.head))


def _prune(state: SweepState, face: Face, length: int, cfg: SearchConfig, stats: SearchStats) -> bool:
    if len(state.faces) == 2 and state.is_final():
        return False
    neighbours = [
        (state.edge_faces[e][0], e)
        for e in face.boundary[:length]
        if len(state.edge_faces[e]) == 2
    ]
    if cfg.prune_pair_convex:
        for other, e in neighbours:
            if _pair_is_convex(state, face, other, e):
                stats.pruned_pair += 1
                return True
    if cfg.prune_closure:
        for other in sorted({other for other, _ in neighbours}):
            result = grow_closure(state, (face.id, other))
            if result is not None and result.is_witness:
                stats.pruned_closure += 1
                return True
    return False


def _check_cap(mult: Multiplicities) -> None:
    cap = multiplicity_cap(mult.k)
    if any(x > cap for x in mult.m):
        raise InvalidParameterError(f"multiplicity cap 2k-3={cap} exceeded: {mult.m}")


def enumerate_tilings(
    mult: Multiplicities,
    cfg: Optional[SearchConfig] = None,
    stats: Optional[SearchStats] = None,
) -> Iterator[TilingComplex]:
    """Yield every tiling with at least two tiles, once per tile set.

    Prunes only drop branches whose completions are all reducible.
    """
    _check_cap(mult)
    cfg = cfg or SearchConfig()
    stats = stats if stats is not None else SearchStats()
    stats.multiplicities = mult.m
    started = time.time()
    state = SweepState(mult)
    stack = [iter(state.candidate_moves())]
    try:
        while stack:
            step = next(stack[-1], None)
            if step is None:
                stack.pop()
                if state.moves:
                    state.undo()
                continue
            start, length = step
            if not _lex_normal(state.moves, start, length):
                continue
            stats.nodes += 1
            if cfg.progress_hook and stats.nodes % cfg.progress_every == 0:
                stats.elapsed = time.time() - started
                cfg.progress_hook(stats)
            face = state.apply(start, length)
            if _prune(state, face, length, cfg, stats):
                state.undo()
                continue
            if state.is_final():
                if len(state.faces) >= 2:
                    complex_ = state.snapshot()
                    if cfg.check_invariants:
                        problems = check_invariants(complex_, irreducible=False)
                        assert not problems, problems
                    stats.emitted += 1
                    yield complex_
                    if cfg.max_solutions is not None and stats.emitted >= cfg.max_solutions:
                        return
                state.undo()
                continue
            moves = state.candidate_moves()
            if not moves:
                stats.dead_ends += 1
            stack.append(iter(moves))
    finally:
        stats.elapsed = time.time() - started


TileSetKey = FrozenSet[FrozenSet[FrozenSet[int]]]


def vertex_labels(edges: Iterable[Edge]) -> Dict[int, FrozenSet[int]]:
    """Wires separating each vertex from vertex 0, the left corner of a sweep."""
    neighbours: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for e in edges:
        neighbours[e.tail].append((e.head, e.wire))
        neighbours[e.head].append((e.tail, e.wire))
    labels: Dict[int, FrozenSet[int]] = {0: frozenset()}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u, wire in neighbours[v]:
            if u not in labels:
                labels[u] = labels[v] ^ {wire}
                queue.append(u)
    return labels


def tile_set_key(tiling: Union[TilingComplex, SweepState]) -> TileSetKey:
    """Tiles as sets of vertex labels; equal keys mean the same tiling.

    A tile's wire set is not enough: two crossing wires share exactly one
    tile in every tiling of the same polygon.
    """
    labels = vertex_labels(tiling.edges)
    return frozenset(frozenset(labels[v] for v in face.vertices) for face in tiling.faces)


def brute_force_tilings(mult: Multiplicities) -> List[TilingComplex]:
    """Every tiling with at least two tiles, by walking all move orders."""
    _check_cap(mult)
    state = SweepState(mult)
    seen: Set[TileSetKey] = set()
    found: List[TilingComplex] = []

    def walk() -> None:
        if state.is_final():
            key = tile_set_key(state)
            if len(state.faces) >= 2 and key not in seen:
                seen.add(key)
                found.append(state.snapshot())
            return
        for start, length in state.candidate_moves():
            state.apply(start, length)
            walk()
            state.undo()

    walk()
    return found


# ----------------------------------------------------------- class search


def dihedral_images(m: Sequence[int]) -> List[Tuple[int, ...]]:
    """All rotations and reflections of a cyclic multiplicity vector."""
    m = tuple(m)
    images = []
    for r in range(len(m)):
        rotated = m[r:] + m[:r]
        images.append(rotated)
        images.append(tuple(reversed(rotated)))
    return images


def canonical_multiplicity_vectors(k: int) -> List[Tuple[int, ...]]:
    """Lexicographically least vector of each dihedral orbit of {1..2k-3}^k."""
    if k < 2:
        raise InvalidParameterError(f"k must be >= 2, got {k}")
    cap = multiplicity_cap(k)
    return [
        m for m in product(range(1, cap + 1), repeat=k) if m == min(dihedral_images(m))
    ]


def classes_for_vector(
    k: int, m: Tuple[int, ...], cfg: SearchConfig
) -> Tuple[Dict[CanonicalCode, TilingComplex], SearchStats]:
    """Irreducible classes with multiplicities ``m``; runs inside pool workers."""
    stats = SearchStats()
    irreducible = (
        c for c in enumerate_tilings(Multiplicities(k, m), cfg, stats) if is_irreducible(c)[0]
    )
    classes = dedupe(irreducible)
    stats.irreducible = len(classes)
    return classes, stats


def enumerate_irreducible_classes(
    k: int,
    cfg: Optional[SearchConfig] = None,
    jobs: int = 1,
    vectors: Optional[Iterable[Tuple[int, ...]]] = None,
    on_vector_done: Optional[Callable[[SearchStats], None]] = None,
) -> Dict[CanonicalCode, TilingComplex]:
    """Combinatorial classes of irreducible decompositions of the 2k-gon.

    Multiplicity vectors are reduced by the dihedral symmetry of P unless
    ``vectors`` is given explicitly.
    """
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k!r}")
    cfg = cfg or SearchConfig()
    todo = list(vectors) if vectors is not None else canonical_multiplicity_vectors(k)
    log_json(logger, logging.INFO, "class search started", k=k, vectors=len(todo), jobs=jobs)
    classes: Dict[CanonicalCode, TilingComplex] = {}

    def absorb(found: Dict[CanonicalCode, TilingComplex], stats: SearchStats) -> None:
        merge_classes(classes, found)
        log_json(logger, logging.DEBUG, "vector searched", **stats.as_dict())
        if on_vector_done:
            on_vector_done(stats)

    if jobs <= 1:
        for m in todo:
            absorb(*classes_for_vector(k, tuple(m), cfg))
    else:
        # hooks stay in this process
        worker_cfg = replace(cfg, progress_hook=None)
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            future_to_vector = {
                executor.submit(classes_for_vector, k, tuple(m), worker_cfg): m for m in todo
            }
            for future in as_completed(future_to_vector):
                m = future_to_vector[future]
                try:
                    absorb(*future.result())
                except Exception as e:
                    logger.error("Search failed for a multiplicity vector")
                    log_json(logger, logging.DEBUG, "search error", m=m, error=str(e))
                    raise
    log_json(logger, logging.INFO, "class search finished", k=k, classes=len(classes))
    return classes
