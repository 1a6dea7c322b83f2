"""Upper bound on the number of irreducible classes and its asymptotics.

Real quantities are evaluated with mpmath; integer parts are certified by
widening the result by a generous rounding margin and raising the working
precision until the widened value no longer straddles an integer.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import mpmath
from mpmath import mp
from sympy import factorial

from errors import InvalidParameterError

logger = logging.getLogger(__name__)

START_DPS = 50
MAX_DPS = 10_000
# digits of the working precision treated as possibly lost to rounding
GUARD_DIGITS = 10


@dataclass(frozen=True)
class BoundReport:
    k: int
    exact_edge_bound: mpmath.mpf
    relaxed_edge_bound: mpmath.mpf
    N: int
    t_N: int
    theorem_bound: int
    log10_asymptotic: mpmath.mpf

    def lines(self) -> List[str]:
        t_digits = str(self.t_N)
        bound_digits = str(self.theorem_bound)
        return [
            f"k = {self.k}",
            f"exact edge bound = {mpmath.nstr(self.exact_edge_bound, 20)}",
            f"relaxed edge bound = {mpmath.nstr(self.relaxed_edge_bound, 20)}",
            f"N = {self.N}",
            f"t_N digits = {len(t_digits)}, leading digits = {t_digits[:20]}",
            f"theorem bound digits = {len(bound_digits)}, leading digits = {bound_digits[:20]}",
            f"log10 asymptotic = {mpmath.nstr(self.log10_asymptotic, 15)}",
        ]


def certified_floor(expr: Callable[[], mpmath.mpf], dps: int = START_DPS) -> Tuple[int, mpmath.mpf]:
    """Floor of ``expr()`` with the precision raised until it is unambiguous.

    Only values that are not integers can be certified: the margin around an
    exact integer always straddles it, which ends in ArithmeticError.
    """
    while dps <= MAX_DPS:
        with mp.workdps(dps):
            value = expr()
            margin = abs(value) * mpmath.mpf(10) ** (GUARD_DIGITS - dps) + mpmath.mpf(10) ** (-dps)
            low = int(mpmath.floor(value - margin))
            high = int(mpmath.floor(value + margin))
            if low == high:
                return low, +value
        logger.debug("floor ambiguous at %d digits, retrying", dps)
        dps *= 2
    raise ArithmeticError(
        f"could not certify the integer part within {MAX_DPS} digits; the value may be an integer"
    )


def _exact_edge_bound(k: int) -> mpmath.mpf:
    return mpmath.mpf(k) * (2 * k - 3) ** 2 / (2 * mpmath.sin(mp.pi / (2 * k)) ** 2)


def _relaxed_edge_bound(k: int) -> mpmath.mpf:
    return mpmath.mpf(2 * k**3 * (2 * k - 3) ** 2) / ((2 - mpmath.sqrt(2)) * mp.pi**2)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k!r}")
    if k < 4:
        logger.warning("the edge bound is proved for k >= 4; evaluating k=%d anyway", k)


def edge_bounds(k: int) -> Tuple[mpmath.mpf, int]:
    """(exact edge-count bound of a class, N from the relaxed bound)."""
    _check_k(k)
    with mp.workdps(START_DPS):
        exact = +_exact_edge_bound(k)
    n, _ = certified_floor(lambda: _relaxed_edge_bound(k))
    return exact, n


def loopless_map_count(n: int) -> int:
    """Number of rooted loopless planar maps with n edges."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"N must be a non-negative integer, got {n!r}")
    numerator = 6 * factorial(4 * n + 1)
    denominator = factorial(n) * factorial(3 * n + 3)
    quotient, remainder = divmod(int(numerator), int(denominator))
    if remainder:
        raise ArithmeticError(f"t_N formula is not integral at N={n}")
    return quotient


def theorem_bound(k: int) -> int:
    """N * t_N for the N belonging to k."""
    _, n = edge_bounds(k)
    return n * loopless_map_count(n)


def asymptotic_estimate(n: int) -> mpmath.mpf:
    """log10 of the asymptotic form of N * t_N."""
    if n < 1:
        raise InvalidParameterError(f"N must be >= 1, got {n}")
    with mp.workdps(START_DPS):
        value = (
            mpmath.log10(mpmath.mpf(8) / 27)
            + mpmath.log10(6 / mp.pi) / 2
            - mpmath.mpf(3) / 2 * mpmath.log10(n)
            + n * mpmath.log10(mpmath.mpf(256) / 27)
        )
        return +value


def log10_int(value: int) -> mpmath.mpf:
    with mp.workdps(START_DPS):
        return +mpmath.log10(mpmath.mpf(value))


def bound_report(k: int) -> BoundReport:
    exact, n = edge_bounds(k)
    with mp.workdps(START_DPS):
        relaxed = +_relaxed_edge_bound(k)
    t_n = loopless_map_count(n)
    return BoundReport(
        k=k,
        exact_edge_bound=exact,
        relaxed_edge_bound=relaxed,
        N=n,
        t_N=t_n,
        theorem_bound=n * t_n,
        log10_asymptotic=asymptotic_estimate(n),
    )
