"""Airy function Ai and Ai' on the real line, zeros of Ai, normalization integrals.

Ai is evaluated by its Maclaurin series for ``|z| <= Z_SWITCH`` and by the
large-argument asymptotic expansions beyond.  The series is summed in 40-digit
decimal arithmetic: on the positive axis Ai is the small difference of two
growing series, and double precision would lose about 15 digits near the seam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from scipy import integrate

from .constants import Constants

__all__ = [
    "Z_SWITCH",
    "AiryZero",
    "ai",
    "ai_prime",
    "ai_maclaurin",
    "ai_asymptotic",
    "airy_zero",
    "airy_prime_zero",
    "zero_seed",
    "tail_integral",
    "normalization_integral",
    "normalization",
]

Z_SWITCH = 8.5

_PREC = 40
_AI0 = Decimal("0.35502805388781723926006318600418317639797917419918")
_AIP0 = Decimal("-0.25881940379280679840518356018920396347909113835493")


def ai_maclaurin(z: float) -> tuple[float, float]:
    """(Ai(z), Ai'(z)) from the power series about 0."""
    with localcontext() as ctx:
        ctx.prec = _PREC
        zd = Decimal(z)
        z3 = zd * zd * zd
        tiny = Decimal(10) ** (-_PREC - 5)
        # f = sum 3^k (1/3)_k z^3k/(3k)!, g = sum 3^k (2/3)_k z^(3k+1)/(3k+1)!
        f_term, g_term = Decimal(1), zd
        fp_term, gp_term = zd * zd / 2, Decimal(1)
        f, g, fp, gp = f_term, g_term, fp_term, gp_term
        scale = Decimal(1)
        k = 0
        while True:
            f_term = f_term * z3 / ((3 * k + 2) * (3 * k + 3))
            g_term = g_term * z3 / ((3 * k + 3) * (3 * k + 4))
            fp_term = fp_term * z3 / ((3 * k + 3) * (3 * k + 5))
            gp_term = gp_term * z3 / ((3 * k + 1) * (3 * k + 3))
            f += f_term
            g += g_term
            fp += fp_term
            gp += gp_term
            scale = max(scale, abs(f_term), abs(g_term), abs(fp_term), abs(gp_term))
            k += 1
            if max(abs(f_term), abs(g_term), abs(fp_term), abs(gp_term)) < tiny * scale:
                break
        a = _AI0 * f + _AIP0 * g
        ap = _AI0 * fp + _AIP0 * gp
        return float(a), float(ap)


def _uv(kmax: int = 80) -> tuple[list[float], list[float]]:
    u, v = [1.0], [1.0]
    for k in range(1, kmax):
        # u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!), via the ratio u_k / u_{k-1}
        ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        u.append(u[-1] * ratio)
        v.append(-(6 * k + 1) / (6 * k - 1) * u[-1])
    return u, v


_U, _V = _uv()


def _asym_sum(coeffs, zeta: float, parity: int | None = None) -> float:
    """sum (-1)^j c_k zeta^-k, truncated at the smallest term.

    With ``parity`` 0/1 only even/odd k enter and j = k // 2; otherwise j = k.
    """
    total = 0.0
    prev = math.inf
    ks = range(len(coeffs)) if parity is None else range(parity, len(coeffs), 2)
    for k in ks:
        t = abs(coeffs[k]) * zeta ** (-k)
        if t > prev:
            break
        sign = -1.0 if ((k if parity is None else k // 2) % 2) else 1.0
        total += sign * coeffs[k] * zeta ** (-k)
        if t < 1e-17 * abs(total):
            break
        prev = t
    return total


def ai_asymptotic(z: float) -> tuple[float, float]:
    """(Ai(z), Ai'(z)) from the large-|z| expansions; poor for small |z|."""
    if z > 0:
        zeta = 2.0 / 3.0 * z**1.5
        e = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
        a = e / z**0.25 * _asym_sum(_U, zeta)
        ap = -e * z**0.25 * _asym_sum(_V, zeta)
        return a, ap
    x = -z
    zeta = 2.0 / 3.0 * x**1.5
    c, s = math.cos(zeta - math.pi / 4), math.sin(zeta - math.pi / 4)
    norm = 1.0 / math.sqrt(math.pi)
    a = norm / x**0.25 * (c * _asym_sum(_U, zeta, 0) + s * _asym_sum(_U, zeta, 1))
    ap = norm * x**0.25 * (s * _asym_sum(_V, zeta, 0) - c * _asym_sum(_V, zeta, 1))
    return a, ap


def _ai_both(z: float) -> tuple[float, float]:
    if not math.isfinite(z):
        raise ValueError(f"Ai needs a finite argument, got {z}")
    if abs(z) <= Z_SWITCH:
        return ai_maclaurin(z)
    return ai_asymptotic(z)


def ai(z: float) -> float:
    return _ai_both(z)[0]


def ai_prime(z: float) -> float:
    return _ai_both(z)[1]


@dataclass(frozen=True)
class AiryZero:
    n: int
    r_n: float
    residual: float


def zero_seed(n: int, derivative: bool = False) -> float:
    """Leading asymptotic location of the n-th zero of Ai (or Ai')."""
    q = 4 * n - 3 if derivative else 4 * n - 1
    return -((3 * math.pi * q / 8) ** (2 / 3))


def _polish(f, fprime, seed: float, half_width: float = 0.2) -> float:
    lo, hi = seed - half_width, seed + half_width
    z = seed
    for _ in range(60):
        fz = f(z)
        dz = fz / fprime(z)
        z_new = z - dz
        if not lo <= z_new <= hi:
            return _bisect(f, lo, hi)
        if abs(z_new - z) <= 4e-16 * abs(z_new):
            return z_new
        z = z_new
    return z


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ArithmeticError(f"no sign change in [{lo}, {hi}]")
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid


def airy_zero(n: int) -> AiryZero:
    """n-th negative zero of Ai, Newton from the asymptotic seed."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"zero index must be a positive integer, got {n!r}")
    r = _polish(ai, ai_prime, zero_seed(n))
    res = abs(ai(r))
    if res > 1e-12:
        raise ArithmeticError(f"Airy zero {n} did not converge (|Ai| = {res:.3e})")
    return AiryZero(n, r, res)


def airy_prime_zero(n: int) -> float:
    """n-th negative zero of Ai'; uses Ai'' = z Ai."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"zero index must be a positive integer, got {n!r}")
    return _polish(ai_prime, lambda z: z * ai(z), zero_seed(n, derivative=True))


def tail_integral(z: float) -> float:
    """Closed form of the integral of Ai^2 from z to infinity: Ai'(z)^2 - z Ai(z)^2."""
    a, ap = _ai_both(z)
    return ap * ap - z * a * a


def normalization_integral(n: int, span: float = 40.0) -> tuple[float, float]:
    """Integral of Ai^2 over [r_n, inf) by adaptive quadrature, and Ai'(r_n)^2.

    The quadrature covers [r_n, r_n + span]; the remaining tail comes from the
    closed form at the far end and is far below double precision for span 40.
    """
    r = airy_zero(n).r_n
    b = r + span
    cuts = [r]
    z = r
    while z + 2.0 < min(b, 0.0):
        z += 2.0
        cuts.append(z)
    cuts.append(b)
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, _ = integrate.quad(lambda t: ai(t) ** 2, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
        total += val
    total += max(tail_integral(b), 0.0)
    return total, ai_prime(r) ** 2


def normalization(n: int, c: Constants | None = None) -> float:
    """Amplitude alpha_n in m^(-1/2) normalizing alpha_n Ai(z) on x >= 0."""
    c = c or Constants()
    integral, closed = normalization_integral(n)
    if abs(integral - closed) > 1e-8 * closed:
        raise ArithmeticError(
            f"normalization integral {integral!r} disagrees with Ai'(r_n)^2 = {closed!r}"
        )
    return (c.length_scale * integral) ** -0.5
