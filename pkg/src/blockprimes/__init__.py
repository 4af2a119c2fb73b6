"""Prime and prime-power values of the quadratics f_{n,r} behind a family of block designs.

f_{n,r}(t) = 8n^2 t^2 + 2n(2r-1) t + r(r-1)/2 - n, with r < 4n and
r(r-1)/2 = n + 1 (mod 2n). The package counts prime values exactly, computes
truncated Bateman-Horn constants and estimates, scans for proper prime
powers, and turns prime-power values into design parameters.
"""

from .counter import EstimateReport, PrimePowerHit, compare, count_Q, first_hits, scan_prime_powers
from .designs import DesignParams, design_params, realize_even_power, reducible_t0_classify, t0_classify
from .estimator import EstimateRequest, estimate_E, estimate_E_classic, li_offset
from .hlconstant import HLConstant, compute_constant, convergence_trace, ledger_get_or_compute
from .polynomial import IntPolynomial, bunyakovsky_check, enumerate_pairs, factor_family, family
from .primes import ValueClass, classify_value, count_pi_and_Pi, is_prime, sieve_upto

__version__ = "0.1.0"

__all__ = [
    "DesignParams",
    "EstimateReport",
    "EstimateRequest",
    "HLConstant",
    "IntPolynomial",
    "PrimePowerHit",
    "ValueClass",
    "bunyakovsky_check",
    "classify_value",
    "compare",
    "compute_constant",
    "convergence_trace",
    "count_Q",
    "count_pi_and_Pi",
    "design_params",
    "enumerate_pairs",
    "estimate_E",
    "estimate_E_classic",
    "factor_family",
    "family",
    "first_hits",
    "is_prime",
    "ledger_get_or_compute",
    "li_offset",
    "realize_even_power",
    "reducible_t0_classify",
    "scan_prime_powers",
    "sieve_upto",
    "t0_classify",
]
