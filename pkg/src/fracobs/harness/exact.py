import numpy as np
from scipy.special import gamma as Gamma

from ..errors import InvalidArgumentError


def getoor_prefactor(s, n=1):
    return 2.0 ** (-2.0 * s) * Gamma(0.5 * n) / (Gamma(0.5 * n + s) * Gamma(1.0 + s))


def getoor_solution(x, s, n=1):
    """Solution of (-Delta)^s u = 1 in the unit ball with u = 0 outside.

    u(x) = 2^{-2s} Gamma(n/2) / (Gamma(n/2 + s) Gamma(1 + s)) (1 - |x|^2)_+^s
    """
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {s}")
    x = np.asarray(x, dtype=float)
    value = getoor_prefactor(s, n) * np.maximum(1.0 - x * x, 0.0) ** s
    if value.ndim == 0:
        return float(value)
    return value
