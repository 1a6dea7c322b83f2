"""Per-class reports: side types, octagon case labels, tile census, side profiles."""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from canon import CanonicalCode, SideProfile, canonical_code, side_profile
from enumerator import dihedral_images
from errors import IntegrityError, InvalidParameterError
from tiling_complex import TilingComplex, boundary_signature

logger = logging.getLogger(__name__)

CASE_BY_TYPES = {
    frozenset({1}): "III",
    frozenset({2}): "IV",
    frozenset({3}): "V",
    frozenset({1, 2}): "VI",
    frozenset({1, 3}): "VII",
    frozenset({2, 3}): "VIII",
    frozenset({1, 2, 3}): "IX",
}
CASE_ORDER = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")


@dataclass(frozen=True)
class ClassReport:
    code: CanonicalCode
    type_string: str
    case_label: Optional[str]
    census: Dict[int, int]
    signature: Tuple[int, ...]
    side_profiles: Tuple[SideProfile, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "code": self.code.hex(),
            "type": self.type_string,
            "case": self.case_label,
            "census": {str(size): count for size, count in sorted(self.census.items())},
            "signature": list(self.signature),
        }


def _half_signature(signature: Sequence[int], k: int) -> Tuple[int, ...]:
    sig = tuple(signature)
    if len(sig) == k:
        return sig
    if len(sig) == 2 * k:
        if sig[:k] != sig[k:]:
            raise IntegrityError(f"signature {sig} is not mirrored")
        return sig[:k]
    raise IntegrityError(f"signature {sig} has neither {k} nor {2 * k} entries")


def type_string(signature: Sequence[int], k: int) -> str:
    """Side types as "k1/k2/...", the least rotation or reflection of the cycle.

    ``signature`` holds either the k multiplicities or all 2k side counts.
    """
    half = _half_signature(signature, k)
    return "/".join(str(x) for x in min(dihedral_images(half)))


def case_of(signature: Sequence[int], k: int = 4) -> str:
    """Case label I..IX of an octagon decomposition from its side types."""
    if k != 4:
        raise InvalidParameterError("cases I..IX are defined for octagons only")
    types = set(_half_signature(signature, k))
    if 5 in types:
        return "I"
    if 4 in types:
        return "II"
    try:
        return CASE_BY_TYPES[frozenset(types)]
    except KeyError as exc:
        raise IntegrityError(f"side types {sorted(types)} fit no case") from exc


def tile_census(c: TilingComplex) -> Dict[int, int]:
    """Number of tiles with 4, 6, ..., 2k sides."""
    counts = Counter(face.size for face in c.faces)
    return {size: counts.get(size, 0) for size in range(4, 2 * c.k + 1, 2)}


def class_report(c: TilingComplex, code: Optional[CanonicalCode] = None) -> ClassReport:
    signature = boundary_signature(c)
    return ClassReport(
        code=code if code is not None else canonical_code(c),
        type_string=type_string(signature, c.k),
        case_label=case_of(signature, c.k) if c.k == 4 else None,
        census=tile_census(c),
        signature=signature,
        side_profiles=tuple(side_profile(c, j) for j in range(1, 2 * c.k + 1)),
    )


def case_counts(reports: Iterable[ClassReport]) -> Dict[str, int]:
    counts = Counter(r.case_label for r in reports if r.case_label)
    return {label: counts.get(label, 0) for label in CASE_ORDER}


def profile_labels(reports: Iterable[ClassReport]) -> Dict[CanonicalCode, str]:
    """Name every distinct side profile "<edges>.<n>", numbered in code order."""
    by_size: Dict[int, Set[CanonicalCode]] = defaultdict(set)
    for r in reports:
        for edges, profile in zip(r.signature, r.side_profiles):
            by_size[edges].add(profile.code)
    labels = {}
    for edges, codes in by_size.items():
        for n, code in enumerate(sorted(codes), start=1):
            labels[code] = f"{edges}.{n}"
    return labels


def profile_census(reports: Iterable[ClassReport]) -> Dict[int, int]:
    """Number of distinct side profiles per side edge count."""
    by_size: Dict[int, Set[CanonicalCode]] = defaultdict(set)
    for r in reports:
        for edges, profile in zip(r.signature, r.side_profiles):
            by_size[edges].add(profile.code)
    return {edges: len(codes) for edges, codes in sorted(by_size.items())}


@dataclass(frozen=True, order=True)
class NeighborRow:
    profile: str
    before: str
    after: str


def neighbor_table(reports: Sequence[ClassReport], min_edges: int = 3) -> Dict[NeighborRow, int]:
    """Observed (side profile, neighbouring side types) combinations with counts.

    Neighbours are named by edge count, or by profile label when they carry at
    least ``min_edges`` edges. They are listed in the profile's reading
    direction; for a symmetric profile the pair is sorted.
    """
    labels = profile_labels(reports)
    table: Counter = Counter()
    for r in reports:
        sides = len(r.signature)
        for j, (edges, profile) in enumerate(zip(r.signature, r.side_profiles)):
            if edges < min_edges:
                continue
            names = []
            for other in ((j - 1) % sides, (j + 1) % sides):
                count = r.signature[other]
                names.append(labels[r.side_profiles[other].code] if count >= min_edges else str(count))
            before, after = names
            if profile.mirrored:
                before, after = after, before
            if profile.symmetric:
                before, after = sorted((before, after))
            table[NeighborRow(labels[profile.code], before, after)] += 1
    return dict(sorted(table.items()))


def format_reports(reports: Sequence[ClassReport]) -> List[str]:
    """Plain text table, one line per class."""
    lines = []
    for n, r in enumerate(sorted(reports, key=lambda r: r.code), start=1):
        census = " ".join(f"#{size}={count}" for size, count in sorted(r.census.items()))
        case = f" case {r.case_label}" if r.case_label else ""
        lines.append(f"{n:3d} {r.type_string:<12}{case:<10} {census} {r.code.hex()[:16]}")
    return lines
