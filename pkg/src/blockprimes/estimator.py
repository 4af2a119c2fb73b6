"""Bateman-Horn estimates E(x) in Li's form and the classic form, plus Li(x)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .hlconstant import HLConstant
from .polynomial import IntPolynomial
from .quadrature import QuadratureError, integrate

DEFAULT_TOLERANCE = 1e-9
MAX_INTERVALS = 10**6


class SingularityError(ValueError):
    """Some f_i(t) <= 1 inside the integration range."""


def _breakpoints(a: float, b: float) -> int:
    return max(1, int(math.log10(max(b / a, 10.0))))


def _min_on_interval(f: IntPolynomial, a: int, x: int) -> float:
    """Minimum of f over the real interval [a, x]."""
    cands = [Fraction(a), Fraction(x)]
    if f.degree == 2:
        c, b, lead = f.coeffs
        cands.append(Fraction(-b, 2 * lead))
    elif f.degree > 2:
        deriv = [i * c for i, c in enumerate(f.coeffs)][1:]
        for root in np.roots(list(reversed(deriv))):
            if abs(root.imag) < 1e-9:
                cands.append(Fraction(float(root.real)))
    vals = []
    for t in cands:
        if a <= t <= x:
            vals.append(sum(Fraction(cf) * t**i for i, cf in enumerate(f.coeffs)))
    return float(min(vals))


@dataclass(frozen=True)
class EstimateRequest:
    fs: tuple[IntPolynomial, ...]
    constant: Union[HLConstant, float]
    x: int
    a: int = 2
    tolerance: float = DEFAULT_TOLERANCE

    def __init__(self, fs, constant, x, a=2, tolerance=DEFAULT_TOLERANCE):
        if isinstance(fs, IntPolynomial):
            fs = (fs,)
        object.__setattr__(self, "fs", tuple(fs))
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "tolerance", tolerance)
        if not self.fs:
            raise ValueError("need at least one polynomial")
        if a < 2:
            raise ValueError("lower limit must be at least 2")
        if x < a:
            raise ValueError(f"upper limit x={x} is below the lower limit a={a}")
        if isinstance(constant, HLConstant):
            keys = tuple(f.key for f in self.fs)
            if constant.poly_keys != keys:
                raise ValueError(f"constant was computed for {constant.poly_keys}, not {keys}")

    @property
    def C(self) -> float:
        return self.constant.value if isinstance(self.constant, HLConstant) else float(self.constant)


def _integrand_li(fs: Sequence[IntPolynomial]):
    coeff_lists = [np.array(list(reversed(f.coeffs)), dtype=float) for f in fs]

    def g(t: np.ndarray) -> np.ndarray:
        denom = np.ones_like(t)
        for cs in coeff_lists:
            denom = denom * np.log(np.polyval(cs, t))
        return 1.0 / denom

    return g


def _run(g, a, x, tol) -> float:
    value, _ = integrate(g, float(a), float(x), rel_tol=tol, max_intervals=MAX_INTERVALS,
                         breakpoints=_breakpoints(a, x))
    return value


def estimate_E(req: EstimateRequest) -> float:
    """C * integral_a^x dt / prod ln f_i(t)."""
    for f in req.fs:
        if _min_on_interval(f, req.a, req.x) <= 1:
            raise SingularityError(f"{f.key} drops to <= 1 on [{req.a}, {req.x}]")
    return req.C * _run(_integrand_li(req.fs), req.a, req.x, req.tolerance)


def estimate_E_classic(req: EstimateRequest) -> float:
    """C / prod(deg f_i) * integral_a^x dt / (ln t)^k."""
    k = len(req.fs)
    integral = _run(lambda t: np.log(t) ** -k, req.a, req.x, req.tolerance)
    return req.C / math.prod(f.degree for f in req.fs) * integral


def li_offset(x: float, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Offset logarithmic integral, integral_2^x dt / ln t."""
    if x < 2:
        raise ValueError("Li(x) is defined here for x >= 2")
    if x == 2:
        return 0.0
    return _run(lambda t: 1.0 / np.log(t), 2.0, x, tolerance)


__all__ = [
    "EstimateRequest",
    "QuadratureError",
    "SingularityError",
    "estimate_E",
    "estimate_E_classic",
    "li_offset",
]
