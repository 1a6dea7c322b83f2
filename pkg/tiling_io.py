"""Tiling documents (JSON), SVG rendering and run summaries."""

import json
import logging
import math
from collections import deque
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import drawsvg as draw

from errors import IntegrityError, InvalidParameterError, ParseError
from tiling_complex import (
    Edge,
    Multiplicities,
    TilingComplex,
    Wire,
    build_complex,
    direction_angle_units,
)
from utils import ensure_directory_exists

logger = logging.getLogger(__name__)

SCALE = 240.0
MARGIN = 20.0
TILE_COLOURS = {4: "#f2d49b", 6: "#9bc8f2", 8: "#b9e3a1"}
DEFAULT_COLOUR = "#d9b3e6"

Point = Tuple[float, float]


def complex_to_document(c: TilingComplex) -> Dict[str, Any]:
    return {
        "k": c.k,
        "multiplicities": list(c.mult.m),
        "vertices": list(c.vertices),
        "edges": [
            {"id": e.id, "dir": e.dir, "wire": e.wire, "v": [e.tail, e.head]} for e in c.edges
        ],
        "faces": [
            {"id": f.id, "dirs": sorted(f.dirs), "boundary": list(f.boundary)} for f in c.faces
        ],
        "boundary_sides": [list(side) for side in c.boundary_sides],
        "wires": [{"id": w.id, "dir": w.dir, "class": w.class_index} for w in c.wires],
        "moves": [list(mv) for mv in c.moves],
    }


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value: Any, what: str) -> List[int]:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be a list")
    return [_int(x, what) for x in value]


def _wires_from_edges(edges: Sequence[Edge]) -> Tuple[Wire, ...]:
    dirs: Dict[int, int] = {}
    for e in edges:
        dirs.setdefault(e.wire, e.dir)
    seen: Dict[int, int] = {}
    wires = []
    for w in sorted(dirs):
        seen[dirs[w]] = seen.get(dirs[w], 0) + 1
        wires.append(Wire(id=w, dir=dirs[w], class_index=seen[dirs[w]]))
    return tuple(wires)


def document_to_complex(doc: Mapping[str, Any]) -> TilingComplex:
    """Rebuild a complex; any malformation raises ParseError."""
    if not isinstance(doc, Mapping):
        raise ParseError("tiling document must be a JSON object")
    try:
        k = _int(doc["k"], "k")
        mult = Multiplicities(k, _int_list(doc["multiplicities"], "multiplicities"), capped=False)
        vertices = _int_list(doc["vertices"], "vertices")
        edges = []
        for raw in doc["edges"]:
            ends = _int_list(raw["v"], "edge endpoints")
            if len(ends) != 2:
                raise ParseError(f"edge {raw.get('id')} needs two endpoints")
            direction = _int(raw["dir"], "edge direction")
            if not 1 <= direction <= k:
                raise ParseError(f"edge direction {direction} outside 1..{k}")
            edges.append(
                Edge(
                    id=_int(raw["id"], "edge id"),
                    dir=direction,
                    wire=_int(raw["wire"], "wire"),
                    tail=ends[0],
                    head=ends[1],
                )
            )
        faces = []
        for index, raw in enumerate(doc["faces"]):
            dirs = _int_list(raw["dirs"], "face directions")
            if any(not 1 <= d <= k for d in dirs):
                raise ParseError(f"face directions {dirs} outside 1..{k}")
            faces.append(
                (_int(raw.get("id", index), "face id"), dirs, _int_list(raw["boundary"], "face boundary"))
            )
        sides = [_int_list(side, "boundary side") for side in doc["boundary_sides"]]
        if "wires" in doc:
            wires = tuple(
                Wire(id=_int(w["id"], "wire id"), dir=_int(w["dir"], "wire dir"), class_index=_int(w["class"], "class"))
                for w in doc["wires"]
            )
        else:
            wires = _wires_from_edges(edges)
        moves = [tuple(_int_list(mv, "move")) for mv in doc.get("moves", [])]
        return build_complex(k, mult, wires, vertices, edges, faces, sides, moves)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed tiling document: {exc!r}") from exc
    except (IntegrityError, InvalidParameterError) as exc:
        raise ParseError(str(exc)) from exc


def write_tiling(c: TilingComplex, path: Path) -> Path:
    path = Path(path)
    ensure_directory_exists(str(path.parent))
    with path.open("w", encoding="utf-8") as fh:
        json.dump(complex_to_document(c), fh, indent=1)
    return path


def read_tiling(path: Path) -> TilingComplex:
    try:
        with Path(path).open("r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc.msg})") from exc
    return document_to_complex(doc)


# ------------------------------------------------------------------ geometry


def vertex_positions(c: TilingComplex) -> Dict[int, Point]:
    """Plane embedding with direction-i edges of length 1/m_i."""
    k = c.k
    steps: Dict[int, List[Tuple[int, Point]]] = {v: [] for v in c.vertices}
    for e in c.edges:
        angle = direction_angle_units(e.dir, k) * math.pi / k
        length = 1.0 / c.mult.of(e.dir)
        dx, dy = length * math.cos(angle), length * math.sin(angle)
        steps.setdefault(e.tail, []).append((e.head, (dx, dy)))
        steps.setdefault(e.head, []).append((e.tail, (-dx, -dy)))
    start = c.side_paths[0][0]
    positions = {start: (0.0, 0.0)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        x, y = positions[v]
        for w, (dx, dy) in steps[v]:
            if w not in positions:
                positions[w] = (x + dx, y + dy)
                queue.append(w)
    return positions


def face_polygons(c: TilingComplex) -> Dict[int, List[Point]]:
    positions = vertex_positions(c)
    return {f.id: [positions[v] for v in f.vertices] for f in c.faces}


def render_svg(c: TilingComplex, path: Path) -> Path:
    polygons = face_polygons(c)
    xs = [x for poly in polygons.values() for x, _ in poly]
    ys = [y for poly in polygons.values() for _, y in poly]
    min_x, max_y = min(xs), max(ys)
    width = (max(xs) - min_x) * SCALE + 2 * MARGIN
    height = (max_y - min(ys)) * SCALE + 2 * MARGIN
    d = draw.Drawing(width, height)
    d.append(draw.Rectangle(0, 0, width, height, fill="white"))
    for face in c.faces:
        coords = []
        for x, y in polygons[face.id]:
            # SVG y axis points down
            coords.extend(((x - min_x) * SCALE + MARGIN, (max_y - y) * SCALE + MARGIN))
        d.append(
            draw.Lines(
                *coords,
                close=True,
                fill=TILE_COLOURS.get(face.size, DEFAULT_COLOUR),
                stroke="black",
                stroke_width=1.5,
            )
        )
    path = Path(path)
    ensure_directory_exists(str(path.parent))
    d.save_svg(str(path))
    return path


# ------------------------------------------------------------------ summary


def write_summary(path: Path, k: int, classes: Sequence[Mapping[str, Any]], **extra: Any) -> Path:
    """Summary of a class run; entries are sorted by code for stable diffs."""
    ordered = sorted(classes, key=lambda entry: entry["code"])
    data = {
        "k": k,
        "class_count": len(ordered),
        **extra,
        "classes": ordered,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    path = Path(path)
    ensure_directory_exists(str(path.parent))
    with path.open("w", encoding="utf-8") as fh:
        json.dump(data, fh, ensure_ascii=False, indent=2)
    return path
