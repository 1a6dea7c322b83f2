import io
import json
import logging
import os
import stat
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

os.environ.setdefault("ZONOTILE_LOG_DIR", "/tmp/zonotile_logs")

from utils import configure_logging, log_json, sanitize_text, set_log_level  # noqa: E402


def test_sanitize_text_strips_control_chars():
    assert sanitize_text("vector\n(1,2)\r") == "vector(1,2)"


def test_log_json_sanitizes_fields(caplog):
    logger = logging.getLogger("test_utils")
    with caplog.at_level(logging.INFO):
        log_json(logger, logging.INFO, "progress", note="a\nb", m=[1, 2])
    record = caplog.records[-1]
    assert "\n" not in record.getMessage()
    data = json.loads(record.getMessage())
    assert data == {"message": "progress", "note": "ab", "m": [1, 2]}


def test_configure_logging_sets_strict_permissions(tmp_path, monkeypatch):
    monkeypatch.setenv("ZONOTILE_ENV", "development")
    log_path = configure_logging(log_dir=str(tmp_path))
    assert log_path is not None
    mode = stat.S_IMODE(os.stat(log_path).st_mode)
    assert mode == 0o600


def test_console_goes_to_given_stream(tmp_path):
    stream = io.StringIO()
    configure_logging(log_dir=str(tmp_path), log_level=logging.INFO, stream=stream)
    logging.getLogger("test_utils").info("hello")
    assert "hello" in stream.getvalue()
    set_log_level("WARNING")
    logging.getLogger("test_utils").info("hidden")
    assert "hidden" not in stream.getvalue()
    assert logging.getLogger().level == logging.WARNING
