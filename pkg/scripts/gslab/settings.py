"""
Runtime Settings

Numeric tolerances and resource limits shared by both engines, plus the
qubit cap lookup (CLI flag > GSLAB_CAP environment variable > default).
"""

import math
import os
import logging

logger = logging.getLogger(__name__)

# 2^24 complex128 amplitudes = 256 MiB
DEFAULT_QUBIT_CAP = 24
CAP_ENV_VAR = 'GSLAB_CAP'

NORM_ATOL = 1e-12
ZERO_PROBABILITY = 1e-12
ATOL_ORACLE = 1e-9
ATOL_CLOSED_FORM = 1e-10

GENUINE_PHI = math.pi


class CapExceededError(ValueError):
    """Raised when a statevector would exceed the configured qubit cap."""


def get_qubit_cap(override=None):
    """
    Resolve the qubit cap.

    Args:
        override: Explicit cap (e.g. from --cap); wins over the environment

    Returns:
        int: Maximum number of qubits the exact engine will allocate

    Raises:
        ValueError: If the environment value is not a positive integer
    """
    if override is not None:
        cap = int(override)
    else:
        raw = os.getenv(CAP_ENV_VAR)
        if raw is None or not raw.strip():
            return DEFAULT_QUBIT_CAP
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"{CAP_ENV_VAR} must be an integer, got '{raw}'")
        logger.info(f"Qubit cap taken from {CAP_ENV_VAR}: {cap}")

    if cap < 1:
        raise ValueError(f"Qubit cap must be positive, got {cap}")
    return cap


def check_cap(n, cap=None):
    """
    Fail fast if n qubits exceed the cap.

    Raises:
        CapExceededError: If n > cap
    """
    limit = get_qubit_cap(cap)
    if n > limit:
        raise CapExceededError(
            f"{n} qubits exceed the qubit cap of {limit} "
            f"(raise it with --cap or {CAP_ENV_VAR})"
        )
