import logging
import os
import sys

import mpmath
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from bounds import (  # noqa: E402
    asymptotic_estimate,
    bound_report,
    certified_floor,
    edge_bounds,
    log10_int,
    loopless_map_count,
    theorem_bound,
)
from errors import InvalidParameterError  # noqa: E402


def test_octagon_edge_bounds():
    exact, n = edge_bounds(4)
    assert n == 553
    assert abs(float(exact) - 341.4213562) < 1e-6


def test_small_loopless_map_counts():
    assert [loopless_map_count(n) for n in range(4)] == [1, 1, 3, 13]


def test_map_count_formula_is_integral():
    for n in range(0, 1001):
        assert loopless_map_count(n) > 0


def test_map_count_rejects_negative():
    with pytest.raises(InvalidParameterError):
        loopless_map_count(-1)


def test_theorem_bound_exceeds_class_count():
    assert theorem_bound(4) >= 111
    assert theorem_bound(4) == 553 * loopless_map_count(553)


def test_asymptotic_estimate():
    assert abs(float(asymptotic_estimate(1)) - 0.5891) < 1e-3
    values = [asymptotic_estimate(n) for n in range(1, 30)]
    assert all(a < b for a, b in zip(values, values[1:]))
    gap = abs(log10_int(200 * loopless_map_count(200)) - asymptotic_estimate(200))
    assert gap < 0.01
    with pytest.raises(InvalidParameterError):
        asymptotic_estimate(0)


def test_certified_floor():
    assert certified_floor(lambda: mpmath.mpf(7) / 2)[0] == 3
    assert certified_floor(lambda: mpmath.sqrt(2) * 1000)[0] == 1414
    assert certified_floor(lambda: -mpmath.mpf(1) / 3)[0] == -1


def test_certified_floor_gives_up_on_exact_integers():
    with pytest.raises(ArithmeticError, match="may be an integer"):
        certified_floor(lambda: mpmath.mpf(3))


def test_edge_count_bound_grows_with_k():
    counts = [edge_bounds(k)[1] for k in range(4, 21)]
    assert all(later > earlier for earlier, later in zip(counts, counts[1:]))


def test_edge_bounds_warn_below_octagon(caplog):
    with caplog.at_level(logging.WARNING):
        edge_bounds(3)
    assert any("k >= 4" in record.getMessage() for record in caplog.records)
    with pytest.raises(InvalidParameterError):
        edge_bounds(1)


def test_bound_report_lines():
    report = bound_report(4)
    lines = report.lines()
    assert "N = 553" in lines
    assert report.t_N == loopless_map_count(553)
    digits = next(line for line in lines if line.startswith("t_N digits"))
    assert f"= {len(str(report.t_N))}," in digits
