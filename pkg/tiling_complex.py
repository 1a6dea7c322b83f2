"""Combinatorial model of an edge-to-edge decomposition of the regular 2k-gon.

All angles are integers in units of pi/k. Direction ``i`` (1..k) is the
undirected direction (i-1)*pi/k; an edge of direction ``i`` is stored with the
orientation whose angle lies in [-pi/2, pi/2), so walking an edge from
``tail`` to ``head`` heads at ``direction_angle_units(i, k)``.

Edge lengths never appear: every direction-i edge implicitly has length 1/m_i.
"""

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from errors import DegenerateTileError, IntegrityError, InvalidParameterError

logger = logging.getLogger(__name__)

# (face id, angle units) pairs incident to a vertex
Incidence = Tuple[int, int]


def multiplicity_cap(k: int) -> int:
    """Largest number of edges a side of P can carry in an irreducible tiling."""
    return 2 * k - 3


def direction_angle_units(i: int, k: int) -> int:
    """Representative angle of direction ``i`` in [-k/2, k/2) units of pi/k.

    The direction at exactly pi/2 (even k) is mapped to -pi/2, which realises
    the fixed infinitesimal rotation that makes it rank lowest.
    """
    a = i - 1
    return a if 2 * a < k else a - k


def side_direction(side: int, k: int) -> int:
    """Direction index of side E_side (1-based, counterclockwise from E_1)."""
    return (side - 1) % k + 1


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class Multiplicities:
    """Edge-class counts m_1..m_k, the side types of P."""

    k: int
    m: Tuple[int, ...]
    capped: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        _check_k(self.k)
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if len(self.m) != self.k:
            raise InvalidParameterError(
                f"expected {self.k} multiplicities, got {len(self.m)}"
            )
        if any(x < 1 for x in self.m):
            raise InvalidParameterError(f"multiplicities must be >= 1: {self.m}")
        if self.capped:
            cap = multiplicity_cap(self.k)
            if any(x > cap for x in self.m):
                raise InvalidParameterError(
                    f"multiplicity cap 2k-3={cap} exceeded: {self.m}"
                )

    @classmethod
    def parse(cls, text: str, k: int) -> "Multiplicities":
        try:
            values = tuple(int(part) for part in text.split(",") if part.strip())
        except ValueError as exc:
            raise InvalidParameterError(f"bad multiplicities {text!r}") from exc
        return cls(k, values)

    @property
    def n(self) -> int:
        """Total number of wires."""
        return sum(self.m)

    def of(self, i: int) -> int:
        return self.m[i - 1]


@dataclass(frozen=True)
class Wire:
    """One edge class: a chain of parallel edges crossing P."""

    id: int
    dir: int
    class_index: int


@dataclass(frozen=True)
class SlopeRank:
    """Position of every direction when sorted by representative angle."""

    k: int
    order: Tuple[int, ...]  # directions by ascending angle
    ranks: Tuple[int, ...]  # ranks[i - 1] = rank of direction i, 1..k

    def of(self, i: int) -> int:
        return self.ranks[i - 1]


def slope_rank(k: int) -> SlopeRank:
    """Sort the k directions by their angle in [-pi/2, pi/2)."""
    _check_k(k)
    order = tuple(sorted(range(1, k + 1), key=lambda i: direction_angle_units(i, k)))
    ranks = [0] * k
    for position, i in enumerate(order, start=1):
        ranks[i - 1] = position
    return SlopeRank(k=k, order=order, ranks=tuple(ranks))


@dataclass(frozen=True)
class Front:
    """A left-to-right path of wire steps between the extreme vertices of P."""

    steps: Tuple[Wire, ...]
    vertex_ids: Tuple[int, ...]

    @property
    def dirs(self) -> Tuple[int, ...]:
        return tuple(w.dir for w in self.steps)


def make_wires(mult: Multiplicities) -> Tuple[Wire, ...]:
    """Wires numbered in lower-boundary order: ascending rank, then class."""
    rank = slope_rank(mult.k)
    wires = []
    for i in rank.order:
        for c in range(1, mult.of(i) + 1):
            wires.append(Wire(id=len(wires), dir=i, class_index=c))
    return tuple(wires)


def boundary_paths(mult: Multiplicities) -> Tuple[Front, Front]:
    """Lower and upper boundary chains of P as fronts.

    The lower chain uses vertex ids 0..n. The upper chain shares the two
    extreme vertices 0 and n; its inner vertices get the nominal ids n+1..2n-1.
    """
    wires = make_wires(mult)
    n = len(wires)
    rank = slope_rank(mult.k)
    initial = Front(steps=wires, vertex_ids=tuple(range(n + 1)))
    final_steps = tuple(sorted(wires, key=lambda w: (-rank.of(w.dir), w.class_index)))
    final_ids = (0,) + tuple(range(n + 1, 2 * n)) + (n,) if n > 1 else (0, n)
    return initial, Front(steps=final_steps, vertex_ids=final_ids)


def zonogon_angles(dirs: Iterable[int], k: int) -> Tuple[int, ...]:
    """Interior angles of the zonogon spanned by one segment per direction.

    Edges are taken counterclockwise starting with the edge at angle 0 units;
    entry j is the angle at the vertex following edge j.
    """
    dset = sorted(set(dirs))
    if len(dset) < 2:
        raise DegenerateTileError(f"a tile needs at least two directions, got {dset}")
    if dset[0] < 1 or dset[-1] > k:
        raise InvalidParameterError(f"directions {dset} outside 1..{k}")
    headings = sorted([i - 1 for i in dset] + [i - 1 + k for i in dset])
    count = len(headings)
    return tuple(
        k - ((headings[(j + 1) % count] - headings[j]) % (2 * k))
        for j in range(count)
    )


@dataclass(frozen=True)
class Edge:
    id: int
    dir: int
    wire: int
    tail: int
    head: int


@dataclass(frozen=True)
class Face:
    """A tile; ``vertices[j]`` is the start of ``boundary[j]`` (counterclockwise)."""

    id: int
    dirs: FrozenSet[int]
    boundary: Tuple[int, ...]
    vertices: Tuple[int, ...]
    angle_units: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)


def traversal_heading(edge: Edge, start: int, k: int) -> int:
    """Heading (mod 2k) of ``edge`` when walked away from vertex ``start``."""
    u = direction_angle_units(edge.dir, k)
    if start == edge.tail:
        return u % (2 * k)
    return (u + k) % (2 * k)


def make_face(
    face_id: int,
    dirs: Iterable[int],
    boundary: Sequence[int],
    edge_by_id: Dict[int, Edge],
    k: int,
) -> Face:
    """Build a face from its counterclockwise edge cycle.

    Vertices are recovered from consecutive edges and the angles from the edge
    headings, so a malformed cycle surfaces as bad angles, not as a crash.
    """
    if len(boundary) < 3:
        raise IntegrityError(f"face {face_id} has fewer than three edges")
    try:
        edges = [edge_by_id[e] for e in boundary]
    except KeyError as exc:
        raise IntegrityError(f"face {face_id} references unknown edge {exc}") from exc
    count = len(edges)
    starts: List[int] = []
    for j in range(count):
        prev_edge, edge = edges[j - 1], edges[j]
        shared = {prev_edge.tail, prev_edge.head} & {edge.tail, edge.head}
        if len(shared) != 1:
            raise IntegrityError(
                f"face {face_id}: edges {prev_edge.id} and {edge.id} are not consecutive"
            )
        starts.append(shared.pop())
    for j in range(count):
        edge = edges[j]
        end = edge.head if starts[j] == edge.tail else edge.tail
        if end != starts[(j + 1) % count]:
            raise IntegrityError(f"face {face_id}: boundary is not a closed walk")
    headings = [traversal_heading(edges[j], starts[j], k) for j in range(count)]
    angles = tuple(
        k - ((headings[j] - headings[j - 1]) % (2 * k)) for j in range(count)
    )
    return Face(
        id=face_id,
        dirs=frozenset(dirs),
        boundary=tuple(boundary),
        vertices=tuple(starts),
        angle_units=angles,
    )


@dataclass(frozen=True)
class TilingComplex:
    """The CW complex of one decomposition of P.

    ``boundary_sides[j - 1]`` lists the edges of side E_j in counterclockwise
    order; E_1 is the side of direction 1 walked at angle 0. ``moves`` records
    the sweep that produced the complex, empty for complexes read from files.
    """

    k: int
    mult: Multiplicities
    wires: Tuple[Wire, ...]
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...]
    boundary_sides: Tuple[Tuple[int, ...], ...]
    moves: Tuple[Tuple[int, int], ...] = ()

    # ------------------------------------------------------------------ lookups

    @cached_property
    def edge_by_id(self) -> Dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_by_id(self) -> Dict[int, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def wire_by_id(self) -> Dict[int, Wire]:
        return {w.id: w for w in self.wires}

    @cached_property
    def edge_faces(self) -> Dict[int, Tuple[int, ...]]:
        table: Dict[int, List[int]] = {e.id: [] for e in self.edges}
        for face in self.faces:
            for e in face.boundary:
                table.setdefault(e, []).append(face.id)
        return {e: tuple(fs) for e, fs in table.items()}

    @cached_property
    def vertex_faces(self) -> Dict[int, Tuple[Incidence, ...]]:
        table: Dict[int, List[Incidence]] = {v: [] for v in self.vertices}
        for face in self.faces:
            for v, angle in zip(face.vertices, face.angle_units):
                table.setdefault(v, []).append((face.id, angle))
        return {v: tuple(inc) for v, inc in table.items()}

    @cached_property
    def vertex_edges(self) -> Dict[int, Tuple[int, ...]]:
        table: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            table.setdefault(e.tail, []).append(e.id)
            table.setdefault(e.head, []).append(e.id)
        return {v: tuple(es) for v, es in table.items()}

    @cached_property
    def boundary_edge_ids(self) -> FrozenSet[int]:
        return frozenset(e for side in self.boundary_sides for e in side)

    @cached_property
    def side_paths(self) -> Tuple[Tuple[int, ...], ...]:
        """Vertex path of every side in counterclockwise order.

        Raises IntegrityError when a side is not a path walked at its heading.
        """
        paths = []
        for j, side in enumerate(self.boundary_sides, start=1):
            heading = (j - 1) % (2 * self.k)
            path: List[int] = []
            for e in side:
                edge = self.edge_by_id.get(e)
                if edge is None:
                    raise IntegrityError(f"side E_{j} references unknown edge {e}")
                if direction_angle_units(edge.dir, self.k) % (2 * self.k) == heading:
                    start, end = edge.tail, edge.head
                elif (direction_angle_units(edge.dir, self.k) + self.k) % (2 * self.k) == heading:
                    start, end = edge.head, edge.tail
                else:
                    raise IntegrityError(f"edge {e} on side E_{j} has wrong direction")
                if path and path[-1] != start:
                    raise IntegrityError(f"side E_{j} is not a connected path")
                if not path:
                    path.append(start)
                path.append(end)
            if not path:
                raise IntegrityError(f"side E_{j} has no edges")
            paths.append(tuple(path))
        return tuple(paths)

    @cached_property
    def corner_vertices(self) -> FrozenSet[int]:
        return frozenset(path[0] for path in self.side_paths)

    @cached_property
    def boundary_vertices(self) -> FrozenSet[int]:
        return frozenset(v for path in self.side_paths for v in path)

    def required_angle(self, v: int) -> int:
        """Angle units that must meet at ``v``: corner k-1, side k, interior 2k."""
        if v in self.corner_vertices:
            return self.k - 1
        if v in self.boundary_vertices:
            return self.k
        return 2 * self.k

    # ------------------------------------------------------------ planar map

    @cached_property
    def darts(self) -> "DartTable":
        return DartTable.build(self)


@dataclass(frozen=True)
class DartTable:
    """Rotation system of a complex; dart 2i walks edges[i] tail->head, 2i+1 back."""

    tail: Tuple[int, ...]
    head: Tuple[int, ...]
    left_face: Tuple[int, ...]  # face index into complex.faces, -1 for the outside
    rotation: Dict[int, Tuple[int, ...]]  # counterclockwise darts out of a vertex

    @classmethod
    def build(cls, c: TilingComplex) -> "DartTable":
        k = c.k
        count = 2 * len(c.edges)
        tail = [0] * count
        head = [0] * count
        heading = [0] * count
        index_of_edge = {}
        for i, e in enumerate(c.edges):
            index_of_edge[e.id] = i
            u = direction_angle_units(e.dir, k)
            tail[2 * i], head[2 * i], heading[2 * i] = e.tail, e.head, u % (2 * k)
            tail[2 * i + 1], head[2 * i + 1] = e.head, e.tail
            heading[2 * i + 1] = (u + k) % (2 * k)
        left = [-1] * count
        for f_index, face in enumerate(c.faces):
            for start, e in zip(face.vertices, face.boundary):
                i = index_of_edge[e]
                dart = 2 * i if c.edges[i].tail == start else 2 * i + 1
                left[dart] = f_index
        spokes: Dict[int, List[int]] = {v: [] for v in c.vertices}
        for d in range(count):
            spokes.setdefault(tail[d], []).append(d)
        rotation = {}
        for v, ds in spokes.items():
            ds.sort(key=lambda d: heading[d])
            rotation[v] = tuple(ds)
        return cls(
            tail=tuple(tail),
            head=tuple(head),
            left_face=tuple(left),
            rotation=rotation,
        )


def build_complex(
    k: int,
    mult: Multiplicities,
    wires: Sequence[Wire],
    vertices: Sequence[int],
    edges: Sequence[Edge],
    faces: Sequence[Tuple[int, Iterable[int], Sequence[int]]],
    boundary_sides: Sequence[Sequence[int]],
    moves: Sequence[Tuple[int, int]] = (),
) -> TilingComplex:
    """Assemble a complex, deriving face vertices and angles from the edges.

    ``faces`` holds (id, dirs, counterclockwise edge ids) triples.
    """
    if len(boundary_sides) != 2 * k:
        raise IntegrityError(f"expected {2 * k} sides, got {len(boundary_sides)}")
    edge_by_id = {e.id: e for e in edges}
    if len(edge_by_id) != len(edges):
        raise IntegrityError("duplicate edge ids")
    built = tuple(make_face(fid, dirs, bnd, edge_by_id, k) for fid, dirs, bnd in faces)
    if len({f.id for f in built}) != len(built):
        raise IntegrityError("duplicate face ids")
    return TilingComplex(
        k=k,
        mult=mult,
        wires=tuple(wires),
        vertices=tuple(vertices),
        edges=tuple(edges),
        faces=built,
        boundary_sides=tuple(tuple(s) for s in boundary_sides),
        moves=tuple(tuple(mv) for mv in moves),
    )


def boundary_signature(c: TilingComplex) -> Tuple[int, ...]:
    """Number of edges on each side E_1..E_2k, counterclockwise."""
    if len(c.boundary_sides) != 2 * c.k:
        raise IntegrityError(
            f"complex has {len(c.boundary_sides)} sides, expected {2 * c.k}"
        )
    signature = tuple(len(side) for side in c.boundary_sides)
    if any(n == 0 for n in signature):
        raise IntegrityError("a side of P carries no edge")
    return signature


# ---------------------------------------------------------------- invariants


def side_crossings(c: TilingComplex, side: int) -> List[Tuple[int, int]]:
    """Edges meeting side E_side without lying on it, ordered along the side.

    Returns (edge id, slope key) pairs. The key is ``(dir - side dir) mod k``
    in 1..k-1; it is the slope of the edge in a frame where the side points
    straight down, so a tiling by convex tiles yields nonincreasing keys.
    """
    k = c.k
    path = c.side_paths[side - 1]
    base = side_direction(side, k)
    result: List[Tuple[int, int]] = []
    for v in path:
        here = []
        for e in c.vertex_edges[v]:
            if e in c.boundary_edge_ids:
                continue
            key = (c.edge_by_id[e].dir - base) % k
            here.append((e, key))
        here.sort(key=lambda item: -item[1])
        result.extend(here)
    return result


def check_invariants(c: TilingComplex, irreducible: bool = True) -> List[str]:
    """List every violated structural invariant; empty when the complex is sound.

    With ``irreducible`` the consequences of irreducibility are checked too:
    the side cap and the at-most-two rule for crossing slopes.
    """
    k = c.k
    problems: List[str] = []
    try:
        signature = boundary_signature(c)
        c.side_paths
    except IntegrityError as exc:
        return [f"boundary: {exc}"]

    for v, incidences in c.vertex_faces.items():
        total = sum(angle for _, angle in incidences)
        if total != c.required_angle(v):
            problems.append(
                f"angle sum at vertex {v} is {total}, expected {c.required_angle(v)}"
            )

    euler = len(c.vertices) - len(c.edges) + len(c.faces)
    if euler != 1:
        problems.append(f"Euler characteristic {euler}, expected 1")

    for e, faces in c.edge_faces.items():
        expected = 1 if e in c.boundary_edge_ids else 2
        if len(faces) != expected:
            problems.append(f"edge {e} bounds {len(faces)} faces, expected {expected}")

    for j in range(1, k + 1):
        if signature[j - 1] != signature[j - 1 + k]:
            problems.append(f"sides E_{j} and E_{j + k} differ in edge count")
        near = [c.edge_by_id[e].wire for e in c.boundary_sides[j - 1]]
        far = [c.edge_by_id[e].wire for e in c.boundary_sides[j - 1 + k]]
        if near != far[::-1]:
            problems.append(f"sides E_{j} and E_{j + k} are not mirrored")
        if signature[j - 1] != c.mult.of(side_direction(j, k)):
            problems.append(f"side E_{j} does not match the multiplicities")

    problems.extend(_edge_class_problems(c))

    for side in range(1, 2 * k + 1):
        keys = [key for _, key in side_crossings(c, side)]
        if any(a < b for a, b in zip(keys, keys[1:])):
            problems.append(f"crossing slopes along E_{side} increase")
        if irreducible:
            if signature[side - 1] > multiplicity_cap(k):
                problems.append(f"side E_{side} exceeds the cap 2k-3")
            for key in set(keys):
                if keys.count(key) > 2:
                    problems.append(f"slope {key} meets E_{side} more than twice")
    return problems


def _edge_class_problems(c: TilingComplex) -> List[str]:
    problems: List[str] = []
    by_wire: Dict[int, List[int]] = {}
    for e in c.edges:
        by_wire.setdefault(e.wire, []).append(e.id)
    links: Dict[int, List[int]] = {e.id: [] for e in c.edges}
    for face in c.faces:
        members: Dict[int, List[int]] = {}
        for e in face.boundary:
            members.setdefault(c.edge_by_id[e].wire, []).append(e)
        for wire, es in members.items():
            if len(es) != 2:
                problems.append(f"face {face.id} holds {len(es)} edges of wire {wire}")
                continue
            a, b = es
            links[a].append(b)
            links[b].append(a)
    for wire, es in by_wire.items():
        ends = [e for e in es if len(links[e]) == 1]
        on_boundary = [e for e in es if e in c.boundary_edge_ids]
        if len(es) == 1:
            ends = es
        if len(ends) != 2 or sorted(ends) != sorted(on_boundary):
            problems.append(f"wire {wire} is not a chain between two boundary edges")
            continue
        seen = {ends[0]}
        stack = [ends[0]]
        while stack:
            for nxt in links[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(es):
            problems.append(f"wire {wire} splits into several chains")
    return problems


# ------------------------------------------------------------- transformations


def mirror_complex(c: TilingComplex) -> TilingComplex:
    """Reflect the complex across the axis of P parallel to E_1."""
    k = c.k

    def flip_dir(i: int) -> int:
        return (k - (i - 1)) % k + 1

    edges = []
    for e in c.edges:
        reversed_orientation = direction_angle_units(e.dir, k) == -(k // 2) and k % 2 == 0
        tail, head = (e.head, e.tail) if reversed_orientation else (e.tail, e.head)
        edges.append(Edge(id=e.id, dir=flip_dir(e.dir), wire=e.wire, tail=tail, head=head))
    faces = [
        (f.id, {flip_dir(i) for i in f.dirs}, tuple(reversed(f.boundary)))
        for f in c.faces
    ]
    sides: List[Tuple[int, ...]] = [()] * (2 * k)
    for j, side in enumerate(c.boundary_sides, start=1):
        target = (k - j + 1) % (2 * k) + 1
        sides[target - 1] = tuple(reversed(side))
    m = [0] * k
    for i in range(1, k + 1):
        m[flip_dir(i) - 1] = c.mult.of(i)
    wires = [Wire(id=w.id, dir=flip_dir(w.dir), class_index=w.class_index) for w in c.wires]
    return build_complex(
        k,
        Multiplicities(k, tuple(m), capped=c.mult.capped),
        wires,
        c.vertices,
        edges,
        faces,
        sides,
    )


def relabel_complex(c: TilingComplex, rng: Optional[random.Random] = None) -> TilingComplex:
    """Rebuild ``c`` with shuffled identifiers and rotated face cycles."""
    rng = rng or random.Random()
    vmap = _shuffled_ids([v for v in c.vertices], rng)
    emap = _shuffled_ids([e.id for e in c.edges], rng)
    fmap = _shuffled_ids([f.id for f in c.faces], rng)
    edges = [
        Edge(id=emap[e.id], dir=e.dir, wire=e.wire, tail=vmap[e.tail], head=vmap[e.head])
        for e in c.edges
    ]
    rng.shuffle(edges)
    faces = []
    for f in c.faces:
        shift = rng.randrange(len(f.boundary))
        cycle = f.boundary[shift:] + f.boundary[:shift]
        faces.append((fmap[f.id], f.dirs, tuple(emap[e] for e in cycle)))
    rng.shuffle(faces)
    sides = [tuple(emap[e] for e in side) for side in c.boundary_sides]
    vertices = sorted(vmap.values())
    return build_complex(c.k, c.mult, c.wires, vertices, edges, faces, sides, c.moves)


def _shuffled_ids(ids: List[int], rng: random.Random) -> Dict[int, int]:
    fresh = list(range(len(ids)))
    rng.shuffle(fresh)
    return dict(zip(ids, fresh))
