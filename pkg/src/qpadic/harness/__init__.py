"""Verification campaigns and main-inequality certificates."""

from .campaigns import CAMPAIGNS, run_campaign
from .maininequality import (
    MainIneqConfig,
    PreconditionError,
    main_inequality_asymptotic,
    main_inequality_exact,
    verify_certificate,
)

__all__ = [
    "CAMPAIGNS",
    "MainIneqConfig",
    "PreconditionError",
    "main_inequality_asymptotic",
    "main_inequality_exact",
    "run_campaign",
    "verify_certificate",
]
