"""Binomial infection-risk estimation from inbox code counts.

With N distinct codes in the inbox and per-contact transmission
probability p, the number of successful transmissions X is Binomial(N, p);
the headline risk is P(X >= 1) = 1 - (1-p)^N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Probability outside [0, 1] or negative count."""


@dataclass(frozen=True)
class RiskEstimate:
    client_id: str
    n_codes: int
    p_per_contact: float
    pmf: tuple[float, ...]
    risk: float  # P(X >= 1) = 1 - pmf[0]


# beyond this, binomial coefficients overflow float range; switch to logs
_DIRECT_N = 64


def risk_pmf(n: int, p: float) -> list[float]:
    """P(X = x) for x = 0..n; log-space beyond small n so it stays
    finite and normalized up to n ~ 1e4."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must be in [0, 1], got {p}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    q = 1.0 - p
    if n == 0:
        return [1.0]
    if p == 0.0:
        return [1.0] + [0.0] * n
    if p == 1.0:
        return [0.0] * n + [1.0]
    if n <= _DIRECT_N:
        return [math.comb(n, x) * p**x * q ** (n - x) for x in range(n + 1)]
    log_p, log_q = math.log(p), math.log(q)
    lg = math.lgamma
    out = []
    for x in range(n + 1):
        log_coeff = lg(n + 1) - lg(x + 1) - lg(n - x + 1)
        out.append(math.exp(log_coeff + x * log_p + (n - x) * log_q))
    return out


def infection_risk(n: int, p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must be in [0, 1], got {p}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return 1.0 - (1.0 - p) ** n


def estimate(client_id: str, n_codes: int, p: float) -> RiskEstimate:
    pmf = risk_pmf(n_codes, p)
    return RiskEstimate(
        client_id=client_id,
        n_codes=n_codes,
        p_per_contact=p,
        pmf=tuple(pmf),
        risk=1.0 - pmf[0],
    )
