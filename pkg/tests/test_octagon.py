"""Full octagon reproduction; takes a long time, run with ZONOTILE_RUN_SLOW=1."""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from classify import CASE_ORDER, case_counts, class_report, profile_census  # noqa: E402
from enumerator import enumerate_irreducible_classes  # noqa: E402
from irreducible import brute_force_irreducible  # noqa: E402
from tiling_complex import check_invariants  # noqa: E402
from validate import validate_complex  # noqa: E402

pytestmark = pytest.mark.skipif(
    os.getenv("ZONOTILE_RUN_SLOW") != "1", reason="set ZONOTILE_RUN_SLOW=1"
)


@pytest.fixture(scope="module")
def octagon_classes():
    return enumerate_irreducible_classes(4, jobs=os.cpu_count() or 1)


@pytest.fixture(scope="module")
def octagon_reports(octagon_classes):
    return [class_report(c, code) for code, c in octagon_classes.items()]


def test_class_count(octagon_classes):
    assert len(octagon_classes) == 111


def test_case_breakdown(octagon_reports):
    expected = dict(zip(CASE_ORDER, (20, 25, 1, 4, 2, 13, 5, 29, 12)))
    assert case_counts(octagon_reports) == expected


def test_every_class_validates(octagon_classes):
    for c in octagon_classes.values():
        assert check_invariants(c) == []
        report = validate_complex(c)
        assert report.ok, report.lines()


def test_side_profile_census(octagon_reports):
    census = profile_census(octagon_reports)
    assert census[5] == 1
    assert census[4] == 2
    assert census[3] == 5


def test_closure_matches_brute_force_on_small_classes(octagon_classes):
    for c in octagon_classes.values():
        if len(c.faces) <= 18:
            assert brute_force_irreducible(c) == (True, None)
