"""Special functions behind the p-values."""

import math

from ..errors import DomainError

_EPS = 1e-16
_BIG = 4503599627370496.0
_MAXITER = 1_000_000


def erfc(x: float) -> float:
    return math.erfc(x)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _log_prefactor(a: float, x: float) -> float:
    return a * math.log(x) - x - math.lgamma(a)


def igam(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if not (a > 0) or not (x >= 0) or math.isinf(a):
        raise DomainError(f"igam needs a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0:
        return 0.0
    if x > 1.0 and x > a:
        return 1.0 - igamc(a, x)
    return _series(a, x)


def igamc(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).

    Power series below ``max(a, 1)``, continued fraction above it.
    """
    if not (a > 0) or not (x >= 0) or math.isinf(a):
        raise DomainError(f"igamc needs a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < 1.0 or x < a:
        return 1.0 - _series(a, x)
    return _continued_fraction(a, x)


def _series(a: float, x: float) -> float:
    log_ax = _log_prefactor(a, x)
    if log_ax < -745.0:
        return 0.0
    r, c, total = a, 1.0, 1.0
    for _ in range(_MAXITER):
        r += 1.0
        c *= x / r
        total += c
        if c <= total * _EPS:
            break
    return min(1.0, total * math.exp(log_ax) / a)


def _continued_fraction(a: float, x: float) -> float:
    log_ax = _log_prefactor(a, x)
    if log_ax < -745.0:
        return 0.0
    y = 1.0 - a
    z = x + y + 1.0
    c = 0.0
    pkm2, qkm2 = 1.0, x
    pkm1, qkm1 = x + 1.0, z * x
    ans = pkm1 / qkm1
    for _ in range(_MAXITER):
        c += 1.0
        y += 1.0
        z += 2.0
        yc = y * c
        pk = pkm1 * z - pkm2 * yc
        qk = qkm1 * z - qkm2 * yc
        if qk != 0:
            r = pk / qk
            t = abs((ans - r) / r)
            ans = r
        else:
            t = 1.0
        pkm2, pkm1 = pkm1, pk
        qkm2, qkm1 = qkm1, qk
        if abs(pk) > _BIG:
            pkm2 /= _BIG
            pkm1 /= _BIG
            qkm2 /= _BIG
            qkm1 /= _BIG
        if t <= _EPS:
            break
    return min(1.0, ans * math.exp(log_ax))
