"""
Bessel functions of the first kind, orders 0, 1 and 2, for real and complex arguments.

Two evaluation paths share the work:
-   the ascending power series
        J_n(z) = sum_k (-1)^k (z/2)^(2k+n) / (k! (k+n)!)
    for |z| <= NEAR_REAL_SERIES_RADIUS, and up to SERIES_RADIUS when |Im z| > COSINE_NORMALIZATION_THRESHOLD
-   everywhere else up to MAX_ARGUMENT, Miller's backward recurrence
        J_(m-1)(z) = (2m/z) J_m(z) - J_(m+1)(z)
    started far above |z| with an arbitrary seed and normalized afterwards, either with
        1 = J_0 + 2 (J_2 + J_4 + ...)
    or, when |Im z| is large enough for that sum to cancel badly, with
        cos z = J_0 + 2 (-J_2 + J_4 - ...)
"""
import cmath
import math
import typing as ty

from torsion_project.exceptions import DomainError

SUPPORTED_ORDERS = (0, 1, 2)
MAX_ARGUMENT = 50.0
SERIES_RADIUS = 12.0
#   the series loses about e^|z| eps to cancellation on the real axis; past this radius near-real arguments recur
NEAR_REAL_SERIES_RADIUS = 6.0
#   enough terms for the series to reach machine precision anywhere on |z| <= SERIES_RADIUS
SERIES_TERMS = 48
#   the recurrence starts this far above |z|
RECURRENCE_HEADROOM = 60
#   |Im z| above which the cosine normalization is used
COSINE_NORMALIZATION_THRESHOLD = 2.0
_RECURRENCE_SEED = 1e-30
_RESCALE_LIMIT = 1e200

Number = ty.Union[complex, float, int]


def _check_domain(order: int, z: complex):
    if order not in SUPPORTED_ORDERS:
        raise DomainError(f"Bessel order must be one of {SUPPORTED_ORDERS}, got {order}")
    if not (cmath.isfinite(z) and abs(z) <= MAX_ARGUMENT):
        raise DomainError(f"Bessel argument |z| = {abs(z):g} is outside the supported range |z| <= {MAX_ARGUMENT:g}")


def _ascending_series(order: int, z: complex) -> complex:
    half = z / 2
    step = -half * half
    term = half ** order / math.factorial(order)
    total = term
    for k in range(1, SERIES_TERMS):
        term *= step / (k * (k + order))
        total += term
    return total


def _backward_recurrence(order: int, z: complex) -> complex:
    start = 2 * ((int(abs(z)) + RECURRENCE_HEADROOM) // 2)
    j_above = 0j
    j_here = complex(_RECURRENCE_SEED)
    unit_sum = 0j
    cosine_sum = 0j
    low_orders = {}

    for m in range(start, -1, -1):
        if m in SUPPORTED_ORDERS:
            low_orders[m] = j_here
        if m == 0:
            unit_sum += j_here
            cosine_sum += j_here
        elif m % 2 == 0:
            unit_sum += 2 * j_here
            cosine_sum += (2 if (m // 2) % 2 == 0 else -2) * j_here

        if m > 0:
            j_below = (2 * m / z) * j_here - j_above
            j_above, j_here = j_here, j_below
            #   Keep the unnormalized sequence inside the floating point range
            if abs(j_here) > _RESCALE_LIMIT:
                j_above /= _RESCALE_LIMIT
                j_here /= _RESCALE_LIMIT
                unit_sum /= _RESCALE_LIMIT
                cosine_sum /= _RESCALE_LIMIT
                low_orders = {key: value / _RESCALE_LIMIT for key, value in low_orders.items()}

    if abs(z.imag) <= COSINE_NORMALIZATION_THRESHOLD:
        return low_orders[order] / unit_sum
    return low_orders[order] * cmath.cos(z) / cosine_sum


def bessel_j(order: int, z: Number) -> complex:
    """
    :param order: 0, 1 or 2
    :param z: real or complex argument with |z| <= MAX_ARGUMENT
    :return: J_order(z) as a complex number (zero imaginary part for real z)
    """
    z = complex(z)
    _check_domain(order, z)
    if abs(z) <= NEAR_REAL_SERIES_RADIUS:
        return _ascending_series(order, z)
    if abs(z) <= SERIES_RADIUS and abs(z.imag) > COSINE_NORMALIZATION_THRESHOLD:
        return _ascending_series(order, z)
    return _backward_recurrence(order, z)


def bessel_j1_prime(z: Number) -> complex:
    """
    :param z: real or complex argument with |z| <= MAX_ARGUMENT
    :return: dJ1/dz = J0(z) - J1(z)/z, with the removable singularity J1'(0) = 1/2
    """
    z = complex(z)
    if z == 0:
        _check_domain(1, z)
        return complex(0.5)
    return bessel_j(0, z) - bessel_j(1, z) / z
