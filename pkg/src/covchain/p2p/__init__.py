"""Simulated P2P citizen clients: delivery, verification, risk, warnings."""

from .fleet import (
    ClientFleet,
    ClientInbox,
    ClusterTooSmall,
    DEFAULT_P_PER_CONTACT,
    DeliveryRecord,
    WarningMessage,
)
from .risk import DomainError, RiskEstimate, estimate, infection_risk, risk_pmf
from .verify import CodeVerifier, InfectionDetail

__all__ = [
    "ClientFleet",
    "ClientInbox",
    "ClusterTooSmall",
    "CodeVerifier",
    "DEFAULT_P_PER_CONTACT",
    "DeliveryRecord",
    "DomainError",
    "InfectionDetail",
    "RiskEstimate",
    "WarningMessage",
    "estimate",
    "infection_risk",
    "risk_pmf",
]
