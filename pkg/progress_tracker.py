import logging
import threading
from time import time
from typing import Any, Dict

from enumerator import SearchStats
from utils import log_json

logger = logging.getLogger(__name__)


class EnumerationProgressTracker:
    """Thread-safe progress tracker for a class search over multiplicity vectors."""

    def __init__(self, total_vectors: int) -> None:
        self.total_vectors = total_vectors
        self.completed_vectors = 0
        self.tilings = 0
        self.irreducible = 0
        self.nodes = 0
        self.start_time = time()
        self._lock = threading.Lock()

    def vector_done(self, stats: SearchStats) -> None:
        """Record one finished multiplicity vector."""
        with self._lock:
            self.completed_vectors += 1
            self.tilings += stats.emitted
            self.irreducible += stats.irreducible
            self.nodes += stats.nodes
            snapshot = self._overall()
        log_json(logger, logging.INFO, "progress", m=list(stats.multiplicities), **snapshot)

    def search_heartbeat(self, stats: SearchStats) -> None:
        """Progress hook for long single-vector searches."""
        log_json(
            logger,
            logging.DEBUG,
            "searching",
            m=list(stats.multiplicities),
            nodes=stats.nodes,
            emitted=stats.emitted,
            elapsed=round(stats.elapsed, 1),
        )

    def _overall(self) -> Dict[str, Any]:
        """Recompute global statistics."""
        if self.total_vectors == 0:
            return {"percent": 100}
        completion_pct = int((self.completed_vectors / self.total_vectors) * 100)
        elapsed = max(time() - self.start_time, 1)
        speed = (self.completed_vectors / elapsed) * 60  # vectors per minute
        remaining = self.total_vectors - self.completed_vectors
        eta = (remaining / speed) * 60 if speed else None
        return {
            "percent": completion_pct,
            "done": self.completed_vectors,
            "total": self.total_vectors,
            "speed_per_min": round(speed, 2),
            "eta_sec": round(eta, 1) if eta is not None else None,
        }

    def summary(self) -> Dict[str, Any]:
        with self._lock:
            return {
                **self._overall(),
                "tilings": self.tilings,
                "irreducible": self.irreducible,
                "nodes": self.nodes,
            }
