import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from classify import (  # noqa: E402
    CASE_ORDER,
    NeighborRow,
    case_counts,
    case_of,
    class_report,
    format_reports,
    neighbor_table,
    profile_census,
    profile_labels,
    tile_census,
    type_string,
)
from enumerator import SearchConfig, classes_for_vector, enumerate_irreducible_classes  # noqa: E402
from errors import IntegrityError, InvalidParameterError  # noqa: E402


@pytest.fixture(scope="module")
def hexagon_reports():
    return [class_report(c, code) for code, c in enumerate_irreducible_classes(3).items()]


def test_type_string_is_dihedral_minimum():
    assert type_string((1, 2, 1), 3) == "1/1/2"
    assert type_string((3, 1, 2, 3, 1, 2), 3) == "1/2/3"
    assert type_string((2, 1, 1, 3), 4) == "1/1/2/3"
    with pytest.raises(IntegrityError):
        type_string((1, 2, 1, 2, 1, 1), 3)
    with pytest.raises(IntegrityError):
        type_string((1, 2), 3)


@pytest.mark.parametrize(
    "signature,label",
    [
        ((5, 1, 1, 1), "I"),
        ((4, 2, 1, 3), "II"),
        ((1, 1, 1, 1), "III"),
        ((2, 2, 2, 2), "IV"),
        ((3, 3, 3, 3), "V"),
        ((1, 2, 1, 2), "VI"),
        ((3, 1, 3, 1), "VII"),
        ((2, 3, 3, 2), "VIII"),
        ((1, 2, 3, 1), "IX"),
    ],
)
def test_case_labels(signature, label):
    assert case_of(signature) == label


def test_case_of_octagon_only():
    with pytest.raises(InvalidParameterError):
        case_of((1, 1, 1), k=3)


def test_hexagon_reports(hexagon_reports):
    assert len(hexagon_reports) == 6
    rhombic = next(r for r in hexagon_reports if r.type_string == "1/1/1")
    assert rhombic.case_label is None
    assert rhombic.census == {4: 3, 6: 0}
    assert len(rhombic.side_profiles) == 6
    data = rhombic.to_dict()
    assert data["code"] == rhombic.code.hex()
    assert data["census"] == {"4": 3, "6": 0}
    assert data["signature"] == [1] * 6


def test_tile_census_counts_all_faces(hexagon_reports):
    for r in hexagon_reports:
        assert sum(r.census.values()) > 1


def test_case_counts_for_octagon_all_ones():
    classes, _ = classes_for_vector(4, (1, 1, 1, 1), SearchConfig())
    reports = [class_report(c, code) for code, c in classes.items()]
    counts = case_counts(reports)
    assert list(counts) == list(CASE_ORDER)
    assert counts["III"] == len(reports) == 1
    assert tile_census(next(iter(classes.values())))[8] == 0


def test_profile_labels_and_census(hexagon_reports):
    labels = profile_labels(hexagon_reports)
    census = profile_census(hexagon_reports)
    assert sum(census.values()) == len(set(labels))
    for r in hexagon_reports:
        for edges, profile in zip(r.signature, r.side_profiles):
            assert labels[profile.code].startswith(f"{edges}.")


def test_neighbor_table_counts_every_side(hexagon_reports):
    table = neighbor_table(hexagon_reports, min_edges=1)
    assert all(isinstance(row, NeighborRow) for row in table)
    assert sum(table.values()) == 6 * len(hexagon_reports)
    wide = neighbor_table(hexagon_reports, min_edges=3)
    wide_sides = sum(1 for r in hexagon_reports for n in r.signature if n >= 3)
    assert sum(wide.values()) == wide_sides


def test_format_reports(hexagon_reports):
    lines = format_reports(hexagon_reports)
    assert len(lines) == 6
    assert lines[0].strip().startswith("1 ")
