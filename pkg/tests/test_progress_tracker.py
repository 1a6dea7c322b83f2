import json
import logging
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from enumerator import SearchStats  # noqa: E402
from progress_tracker import EnumerationProgressTracker  # noqa: E402


def test_vector_done_accumulates(caplog):
    tracker = EnumerationProgressTracker(total_vectors=2)
    with caplog.at_level(logging.INFO, logger="progress_tracker"):
        tracker.vector_done(SearchStats(multiplicities=(1, 1, 1), nodes=10, emitted=2, irreducible=1))
    data = json.loads(caplog.records[-1].getMessage())
    assert data["message"] == "progress"
    assert data["m"] == [1, 1, 1]
    assert data["percent"] == 50
    summary = tracker.summary()
    assert summary["done"] == 1
    assert summary["tilings"] == 2
    assert summary["irreducible"] == 1
    assert summary["nodes"] == 10


def test_eta_reaches_zero():
    tracker = EnumerationProgressTracker(total_vectors=1)
    tracker.vector_done(SearchStats(multiplicities=(1, 1)))
    summary = tracker.summary()
    assert summary["percent"] == 100
    assert summary["eta_sec"] == 0


def test_empty_search():
    assert EnumerationProgressTracker(total_vectors=0).summary()["percent"] == 100


def test_heartbeat_logs_at_debug(caplog):
    tracker = EnumerationProgressTracker(total_vectors=1)
    with caplog.at_level(logging.DEBUG, logger="progress_tracker"):
        tracker.search_heartbeat(SearchStats(multiplicities=(2, 1, 1), nodes=5, elapsed=1.25))
    data = json.loads(caplog.records[-1].getMessage())
    assert data["nodes"] == 5
    assert data["message"] == "searching"
