"""
Bracketed scalar root finding.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from scipy import optimize

from .exceptions import NumericalFailureError

logger = logging.getLogger(__name__)

# func(x) -> (f(x), f'(x))
ValueAndSlope = Callable[[float], tuple[float, float]]


@dataclass(frozen=True)
class RootResult:
    root: float
    value: float
    iterations: int


def _collapsed(xlo: float, xhi: float, xtol: float) -> bool:
    """True once the bracket is narrower than xtol or a few float spacings."""
    spacing = 4 * math.ulp(max(abs(xlo), abs(xhi)))
    return abs(xhi - xlo) <= max(xtol, spacing)


def safeguarded_newton(  # noqa: PLR0913
    func: ValueAndSlope,
    lo: float,
    hi: float,
    *,
    ftol: float,
    xtol: float = 0.0,
    maxiter: int = 200,
) -> RootResult:
    """
    Newton-Raphson kept inside a shrinking bracket [lo, hi].

    A Newton step that leaves the bracket, or does not at least halve the
    previous step, is replaced by bisection. The sign change of func on the
    bracket is maintained after every evaluation. Stops when |f| <= ftol or
    the bracket is narrower than xtol.

    Raises:
        NumericalFailureError: If func does not change sign over [lo, hi].
    """
    f_lo, _ = func(lo)
    if f_lo == 0:
        return RootResult(lo, 0.0, 0)
    f_hi, _ = func(hi)
    if f_hi == 0:
        return RootResult(hi, 0.0, 0)
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        msg = "Root is not bracketed"
        raise NumericalFailureError(msg, bracket=(lo, hi))
    # orient so that f(xlo) < 0 < f(xhi)
    xlo, xhi = (lo, hi) if f_lo < 0 else (hi, lo)

    x = 0.5 * (lo + hi)
    step_old = abs(hi - lo)
    step = step_old
    f, df = func(x)
    for iteration in range(1, maxiter + 1):
        if abs(f) <= ftol:
            return RootResult(x, f, iteration)
        newton_leaves = ((x - xhi) * df - f) * ((x - xlo) * df - f) >= 0.0
        if newton_leaves or df == 0 or abs(2.0 * f) > abs(step_old * df):
            step_old = step
            step = 0.5 * (xhi - xlo)
            x = xlo + step
        else:
            step_old = step
            step = f / df
            x -= step
        f, df = func(x)
        if f < 0.0:
            xlo = x
        else:
            xhi = x
        if _collapsed(xlo, xhi, xtol):
            return RootResult(x, f, iteration)

    if abs(f) <= ftol or _collapsed(xlo, xhi, xtol):
        return RootResult(x, f, maxiter)
    msg = f"Safeguarded Newton did not converge in {maxiter} iterations"
    raise NumericalFailureError(msg, bracket=(min(xlo, xhi), max(xlo, xhi)))


def bisection(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float,
    maxiter: int = 400,
) -> RootResult:
    """
    Plain bisection on [lo, hi], via scipy.

    Raises:
        NumericalFailureError: If func does not change sign over [lo, hi].
    """
    try:
        root, info = optimize.bisect(
            func,
            lo,
            hi,
            xtol=xtol,
            rtol=4 * math.ulp(1.0),
            maxiter=maxiter,
            full_output=True,
        )
    except ValueError as e:
        msg = f"Bisection failed: {e}"
        raise NumericalFailureError(msg, bracket=(lo, hi)) from e
    except RuntimeError as e:
        msg = f"Bisection did not converge: {e}"
        raise NumericalFailureError(msg, bracket=(lo, hi)) from e
    logger.debug("Bisection converged in %d iterations", info.iterations)
    return RootResult(root, func(root), info.iterations)
