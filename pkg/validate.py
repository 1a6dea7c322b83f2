"""Independent re-check of a complex against the definitions.

Nothing here trusts the generator: every check recomputes what it needs from
the raw vertex, edge and face tables. A failed check is a finding, not an
exception.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from errors import IntegrityError
from irreducible import is_irreducible
from tiling_complex import (
    TilingComplex,
    direction_angle_units,
    multiplicity_cap,
    side_crossings,
    side_direction,
)

logger = logging.getLogger(__name__)

CHECKS = (
    "face_closure",
    "face_shape",
    "edge_to_edge",
    "angle_sums",
    "euler",
    "boundary",
    "side_cap",
    "crossing_rule",
    "irreducible",
    "perpendicular_rule",
)


@dataclass(frozen=True)
class Finding:
    check: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    findings: List[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.findings)

    def failures(self) -> List[Finding]:
        return [f for f in self.findings if not f.passed]

    def add(self, check: str, problems: List[str]) -> bool:
        if problems:
            shown = "; ".join(problems[:5])
            if len(problems) > 5:
                shown += f"; ... {len(problems) - 5} more"
            self.findings.append(Finding(check, False, shown))
            return False
        self.findings.append(Finding(check, True))
        return True

    def lines(self) -> List[str]:
        return [
            f"{'PASS' if f.passed else 'FAIL'} {f.check}" + (f": {f.detail}" if f.detail else "")
            for f in self.findings
        ]


def _walk_signs(c: TilingComplex, face) -> List[Tuple[int, int]]:
    """(direction, +1/-1) of each boundary edge as the face walks it."""
    steps = []
    for start, e in zip(face.vertices, face.boundary):
        edge = c.edge_by_id[e]
        steps.append((edge.dir, 1 if start == edge.tail else -1))
    return steps


def _face_closure(c: TilingComplex) -> List[str]:
    problems = []
    for face in c.faces:
        net: Dict[int, int] = defaultdict(int)
        for d, sign in _walk_signs(c, face):
            net[d] += sign
        if any(net.values()):
            problems.append(f"face {face.id} does not close")
    return problems


def _face_shape(c: TilingComplex) -> List[str]:
    k = c.k
    problems = []
    for face in c.faces:
        size = face.size
        dirs = [c.edge_by_id[e].dir for e in face.boundary]
        if size % 2 or size < 4:
            problems.append(f"face {face.id} has {size} sides")
            continue
        half = size // 2
        if any(not 1 <= a <= k - 1 for a in face.angle_units):
            problems.append(f"face {face.id} is not strictly convex")
        if sum(face.angle_units) != (size - 2) * k:
            problems.append(f"face {face.id} winds incorrectly")
        if any(dirs[j] != dirs[j + half] for j in range(half)):
            problems.append(f"face {face.id} has non-parallel opposite sides")
        if any(face.angle_units[j] != face.angle_units[j + half] for j in range(half)):
            problems.append(f"face {face.id} is not centrally symmetric")
        if len(set(dirs[:half])) != half or set(dirs) != set(face.dirs):
            problems.append(f"face {face.id} repeats or misstates its directions")
    return problems


def _edge_to_edge(c: TilingComplex) -> List[str]:
    problems = []
    ends = Counter(frozenset((e.tail, e.head)) for e in c.edges)
    for pair, count in ends.items():
        if count > 1 or len(pair) != 2:
            problems.append(f"edges between {sorted(pair)} are degenerate or repeated")
    for face in c.faces:
        repeated = [e for e, n in Counter(face.boundary).items() if n > 1]
        if repeated:
            problems.append(f"face {face.id} uses edges {repeated} twice")
    for e, faces in c.edge_faces.items():
        expected = 1 if e in c.boundary_edge_ids else 2
        if len(faces) != expected:
            problems.append(f"edge {e} bounds {len(faces)} faces, expected {expected}")
    problems.extend(_wire_problems(c))
    return problems


def _wire_problems(c: TilingComplex) -> List[str]:
    problems = []
    for face in c.faces:
        by_dir: Dict[int, List[int]] = defaultdict(list)
        for e in face.boundary:
            by_dir[c.edge_by_id[e].dir].append(c.edge_by_id[e].wire)
        for d, wires in by_dir.items():
            if len(wires) == 2 and wires[0] != wires[1]:
                problems.append(f"face {face.id} joins wires {wires} of direction {d}")
    wire_dirs: Dict[int, set] = defaultdict(set)
    for e in c.edges:
        wire_dirs[e.wire].add(e.dir)
    for w, dirs in wire_dirs.items():
        if len(dirs) != 1:
            problems.append(f"wire {w} changes direction")
    return problems


def _angle_sums(c: TilingComplex) -> List[str]:
    problems = []
    try:
        c.corner_vertices
    except IntegrityError as exc:
        return [f"corners unknown: {exc}"]
    for v in c.vertices:
        total = sum(angle for _, angle in c.vertex_faces.get(v, ()))
        if total != c.required_angle(v):
            problems.append(f"vertex {v}: {total} units, expected {c.required_angle(v)}")
    used = {x for e in c.edges for x in (e.tail, e.head)}
    missing = used - set(c.vertices)
    if missing:
        problems.append(f"edges use unlisted vertices {sorted(missing)}")
    return problems


def _euler(c: TilingComplex) -> List[str]:
    euler = len(c.vertices) - len(c.edges) + len(c.faces)
    return [] if euler == 1 else [f"V - E + F = {euler}"]


def _boundary(c: TilingComplex) -> List[str]:
    k = c.k
    problems = []
    if len(c.boundary_sides) != 2 * k:
        return [f"{len(c.boundary_sides)} sides listed, expected {2 * k}"]
    try:
        paths = c.side_paths
    except IntegrityError as exc:
        return [str(exc)]
    for j in range(2 * k):
        if paths[j][-1] != paths[(j + 1) % (2 * k)][0]:
            problems.append(f"sides E_{j + 1} and E_{(j + 1) % (2 * k) + 1} do not meet")
    listed = [e for side in c.boundary_sides for e in side]
    if len(listed) != len(set(listed)):
        problems.append("an edge is listed on two sides")
    single = {e for e, faces in c.edge_faces.items() if len(faces) == 1}
    if single != set(listed):
        problems.append("edges with one face differ from the listed sides")
    for j in range(1, k + 1):
        near = [c.edge_by_id[e].wire for e in c.boundary_sides[j - 1]]
        far = [c.edge_by_id[e].wire for e in c.boundary_sides[j - 1 + k]]
        if near != far[::-1]:
            problems.append(f"sides E_{j} and E_{j + k} are not mirrored")
        if len(near) != c.mult.of(side_direction(j, k)):
            problems.append(f"side E_{j} carries {len(near)} edges, multiplicity says {c.mult.of(j)}")
    return problems


def _side_cap(c: TilingComplex) -> List[str]:
    cap = multiplicity_cap(c.k)
    return [
        f"side E_{j} carries {len(side)} > {cap} edges"
        for j, side in enumerate(c.boundary_sides, start=1)
        if len(side) > cap
    ]


def _crossing_rule(c: TilingComplex) -> List[str]:
    problems = []
    for side in range(1, 2 * c.k + 1):
        keys = [key for _, key in side_crossings(c, side)]
        for key, count in Counter(keys).items():
            if count > 2:
                problems.append(f"{count} parallel edges (slope {key}) meet E_{side}")
        if any(a < b for a, b in zip(keys, keys[1:])):
            problems.append(f"crossing slopes along E_{side} are not monotone")
    return problems


def _perpendicular_rule(c: TilingComplex) -> List[str]:
    """Perpendicular edges at a vertex share a rectangle or hexagon."""
    k = c.k
    problems = []
    faces_of_edge = c.edge_faces
    for v, edges in c.vertex_edges.items():
        for i, a in enumerate(edges):
            for b in edges[i + 1:]:
                da, db = c.edge_by_id[a].dir, c.edge_by_id[b].dir
                if (da - db) % k != k // 2:
                    continue
                common = set(faces_of_edge[a]) & set(faces_of_edge[b])
                if not any(c.face_by_id[f].size in (4, 6) for f in common):
                    problems.append(f"perpendicular edges {a}, {b} at vertex {v} share no small tile")
    return problems


def validate_complex(c: TilingComplex) -> ValidationReport:
    report = ValidationReport()
    structural = [
        report.add("face_closure", _face_closure(c)),
        report.add("face_shape", _face_shape(c)),
        report.add("edge_to_edge", _edge_to_edge(c)),
        report.add("angle_sums", _angle_sums(c)),
        report.add("euler", _euler(c)),
        report.add("boundary", _boundary(c)),
    ]
    report.add("side_cap", _side_cap(c))
    sound = all(structural)
    if sound:
        report.add("crossing_rule", _crossing_rule(c))
        if len(c.faces) < 2:
            report.add("irreducible", ["a single tile is not a decomposition"])
        else:
            irreducible, witness = is_irreducible(c)
            report.add(
                "irreducible",
                [] if irreducible else [f"tiles {sorted(witness)} have a convex union"],
            )
    else:
        for check in ("crossing_rule", "irreducible"):
            report.findings.append(Finding(check, False, "skipped: complex is malformed"))
    if c.k == 4 and sound:
        report.add("perpendicular_rule", _perpendicular_rule(c))
    else:
        report.findings.append(
            Finding("perpendicular_rule", True, "not applicable")
            if c.k != 4
            else Finding("perpendicular_rule", False, "skipped: complex is malformed")
        )
    if not report.ok:
        logger.debug("validation failed: %s", [f.check for f in report.failures()])
    return report
