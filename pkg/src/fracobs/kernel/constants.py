import math
from dataclasses import dataclass

from scipy.special import gamma as Gamma

from ..errors import InvalidArgumentError


def _check_order(s):
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {s}")


@dataclass(frozen=True)
class FractionalOrder:
    s: float
    n: int = 1

    def __post_init__(self):
        _check_order(self.s)
        if self.n < 1:
            raise InvalidArgumentError(f"dimension must be >= 1, got {self.n}")

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        return cls(s=float(value))

    def to_dict(self):
        return {"s": self.s, "n": self.n}


def normalization_constant(n, s):
    """C_{n,s} = 2^{2s} s Gamma(s + n/2) / (pi^{n/2} Gamma(1 - s))."""
    _check_order(s)
    if n < 1:
        raise InvalidArgumentError(f"dimension must be >= 1, got {n}")
    return float(2.0 ** (2.0 * s) * s * Gamma(s + 0.5 * n) / (math.pi ** (0.5 * n) * Gamma(1.0 - s)))


def singular_coefficient(s):
    """kappa = C_{1,s} / (2 - 2s).

    Chosen so that -kappa (u(x+H) - 2u(x) + u(x-H)) / H^{2s} equals the
    normalized principal-value integral over [x-H, x+H] for every quadratic u.
    """
    _check_order(s)
    return normalization_constant(1, s) / (2.0 - 2.0 * s)


@dataclass(frozen=True)
class KernelConstants:
    C: float
    kappa: float

    @classmethod
    def for_order(cls, order):
        order = FractionalOrder.coerce(order)
        return cls(C=normalization_constant(order.n, order.s), kappa=singular_coefficient(order.s))

    def to_dict(self):
        return {"C": self.C, "kappa": self.kappa}
