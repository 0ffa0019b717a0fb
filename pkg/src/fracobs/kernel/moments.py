import numpy as np

from ..errors import InvalidArgumentError


def power_integral(lo, hi, c):
    """Integral of t^(c-1) over [lo, hi], 0 < lo <= hi.

    Written through expm1 so the c -> 0 limit (log branch, s = 1/2 for the
    t^{-2s} moment) is reached without cancellation; c == 0 is exact.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    log_ratio = np.log(hi / lo)
    if c == 0.0:
        return log_ratio
    return lo ** c * np.expm1(c * log_ratio) / c


def _moments(x_i, lo, hi, s):
    right = lo >= x_i
    near = np.where(right, lo - x_i, x_i - hi)
    far = np.where(right, hi - x_i, x_i - lo)
    m0 = power_integral(near, far, -2.0 * s)
    first = power_integral(near, far, 1.0 - 2.0 * s)
    # (y - lo) is t - near on the right of x_i and far - t on the left
    m1 = np.where(right, first - near * m0, far * m0 - first)
    return m0, m1


def segment_kernel_moments(x_i, a, b, s):
    """Return (m0, m1) with m0 = int_a^b |x_i - y|^{-1-2s} dy and
    m1 = int_a^b (y - a) |x_i - y|^{-1-2s} dy, in closed form.

    Accepts scalars or arrays for a and b.
    """
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {s}")
    lo = np.asarray(a, dtype=float)
    hi = np.asarray(b, dtype=float)
    if np.any(lo >= hi):
        raise InvalidArgumentError("segment endpoints must satisfy a < b")
    if np.any((lo <= x_i) & (x_i <= hi)):
        raise InvalidArgumentError(
            f"segment contains x_i = {x_i}; split at x_i +/- H_i before integrating"
        )
    m0, m1 = _moments(x_i, lo, hi, s)
    if m0.ndim == 0:
        return float(m0), float(m1)
    return m0, m1


def exterior_tail_weight(x_i, a, b, H_i, s):
    """Kernel mass of the unbounded complement of [a, b] seen from x_i."""
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"fractional order must lie in (0, 1), got {s}")
    if not a < x_i < b:
        raise InvalidArgumentError(f"x_i = {x_i} must lie strictly inside ({a}, {b})")
    if not 0.0 < H_i <= min(x_i - a, b - x_i):
        raise InvalidArgumentError(f"H_i = {H_i} must lie in (0, dist(x_i, boundary)]")
    return ((x_i - a) ** (-2.0 * s) + (b - x_i) ** (-2.0 * s)) / (2.0 * s)
