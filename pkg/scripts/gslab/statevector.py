"""
Dense Statevector Oracle

Builds pseudo graph states |G(phi)> amplitude by amplitude, evaluates Pauli
expectations, simulates projective measurement and computes single-qubit
entanglement quantities. This is the exponential-cost ground truth the
analytic engine is checked against.

Amplitude ordering: qubit 0 is the least significant bit of the basis
index; bit value 0 is the +1 eigenstate of Z.
"""

import math
import logging
from dataclasses import dataclass

import numpy as np

from .pauli import PauliString
from .settings import NORM_ATOL, ZERO_PROBABILITY, check_cap

logger = logging.getLogger(__name__)

DUMP_MAGIC = 'PGSV1'


@dataclass(frozen=True, eq=False)
class StateVector:
    """n-qubit pure state; amps holds 2^n complex128 amplitudes."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (1 << self.n,):
            raise ValueError(f"Expected {1 << self.n} amplitudes for {self.n} qubits, got {self.amps.shape}")
        norm = float(np.linalg.norm(self.amps))
        if abs(norm - 1.0) > NORM_ATOL * max(1, self.n):
            raise ValueError(f"State is not normalized (norm {norm})")
        self.amps.setflags(write=False)


@dataclass(frozen=True)
class MeasurementOutcome:
    observable: PauliString
    outcome: int
    probability: float
    post_state: StateVector


def _basis_indices(n):
    return np.arange(1 << n, dtype=np.int64)


def _bit(indices, q):
    return (indices >> q) & 1


def _check_same_size(s, n, what):
    if s.n != n:
        raise ValueError(f"{what} acts on {n} qubits but the state has {s.n}")


def product_state(n, minus=(), cap=None):
    """
    |+>^n with the qubits listed in minus set to |->.

    Raises:
        CapExceededError: If n exceeds the qubit cap
    """
    check_cap(n, cap)
    idx = _basis_indices(n)
    signs = np.ones(1 << n)
    for q in minus:
        signs = signs * (1 - 2 * _bit(idx, q))
    return StateVector(n, signs.astype(np.complex128) / math.sqrt(1 << n))


def build_pgs(g, phi, edge_phis=None, cap=None):
    """
    Pseudo graph state |G(phi)> = prod_{(a,b) in E} U_ab(phi) |+>^V.

    U_ab(phi) is diagonal with phase e^{-i phi} on |11>_ab and 1 elsewhere
    (its e^{-i phi/4} prefactor included), so edges commute and are applied
    as one accumulated phase per basis state.

    Args:
        g: Graph
        phi: Interaction strength in radians
        edge_phis: Optional {(a, b): phi_ab} overriding phi on given edges
        cap: Qubit cap override

    Returns:
        StateVector: The pseudo graph state

    Raises:
        CapExceededError: If g.n exceeds the qubit cap
    """
    check_cap(g.n, cap)
    idx = _basis_indices(g.n)
    angle = np.zeros(1 << g.n)
    for a, b in g.edges():
        strength = phi
        if edge_phis:
            strength = edge_phis.get((a, b), edge_phis.get((b, a), phi))
        angle += strength * (_bit(idx, a) & _bit(idx, b))
    amps = np.exp(-1j * angle) / math.sqrt(1 << g.n)
    return StateVector(g.n, amps)


def apply_link(s, a, b, phi):
    """Apply a single U_ab(phi) to s."""
    if a == b or not (0 <= a < s.n and 0 <= b < s.n):
        raise ValueError(f"Invalid link ({a}, {b}) for {s.n} qubits")
    idx = _basis_indices(s.n)
    phase = np.exp(-1j * phi * (_bit(idx, a) & _bit(idx, b)))
    return StateVector(s.n, s.amps * phase)


def _pauli_action(p, n):
    """Return (x_mask, per-index coefficient) with P|i> = coeff[i] |i ^ x_mask>."""
    idx = _basis_indices(n)
    x_mask = 0
    parity = np.zeros(1 << n, dtype=np.int64)
    n_y = 0
    for q, letter in enumerate(p.letters):
        if letter in 'XY':
            x_mask |= 1 << q
        if letter in 'ZY':
            parity ^= _bit(idx, q)
        if letter == 'Y':
            n_y += 1
    # Y = i X Z per site
    coeff = p.coefficient * (1j ** n_y) * (1 - 2 * parity)
    return x_mask, idx, coeff


def apply_pauli(s, p):
    """Return the (unit-norm) vector P|s> as a raw amplitude array."""
    _check_same_size(s, p.n, 'Pauli string')
    x_mask, idx, coeff = _pauli_action(p, s.n)
    out = np.empty_like(s.amps)
    out[idx ^ x_mask] = coeff * s.amps
    return out


def expectation(s, p):
    """
    <s|P|s> including P's phase.

    Raises:
        ValueError: If P and s have different sizes
    """
    _check_same_size(s, p.n, 'Pauli string')
    x_mask, idx, coeff = _pauli_action(p, s.n)
    value = np.sum(np.conj(s.amps[idx ^ x_mask]) * coeff * s.amps)
    return complex(value)


def hermitian_expectation(s, p):
    """Real expectation of a hermitian P; the imaginary part must vanish."""
    if not p.is_hermitian():
        raise ValueError(f"Observable {p} is not hermitian")
    value = expectation(s, p)
    if abs(value.imag) > 1e-9:
        raise ValueError(f"Hermitian observable {p} has complex expectation {value}")
    return value.real


def project(s, p, outcome):
    """
    Normalized (I + outcome·P)/2 |s>.

    Returns:
        tuple: (post_state, probability)

    Raises:
        ValueError: If P is not hermitian, outcome is not ±1, or the branch
            has probability below the zero-probability threshold
    """
    if not p.is_hermitian():
        raise ValueError(f"Cannot project onto eigenspaces of non-hermitian {p}")
    if outcome not in (1, -1):
        raise ValueError(f"Outcome must be +1 or -1, got {outcome}")
    projected = 0.5 * (s.amps + outcome * apply_pauli(s, p))
    probability = float(np.vdot(projected, projected).real)
    if probability < ZERO_PROBABILITY:
        raise ValueError(f"Outcome {outcome:+d} of {p} has zero probability ({probability:.3e})")
    return StateVector(s.n, projected / math.sqrt(probability)), probability


def measure_pauli(s, p, rng):
    """
    Sample a projective measurement of hermitian P with Born probabilities.

    Args:
        s: StateVector
        p: Hermitian PauliString
        rng: numpy Generator

    Returns:
        MeasurementOutcome: Sampled outcome, its probability and post-state
    """
    if not p.is_hermitian():
        raise ValueError(f"Cannot measure non-hermitian observable {p}")
    p_plus = min(1.0, max(0.0, 0.5 * (1.0 + hermitian_expectation(s, p))))
    outcome = 1 if rng.random() < p_plus else -1
    post_state, probability = project(s, p, outcome)
    return MeasurementOutcome(p, outcome, probability, post_state)


def measure_z(s, v, rng):
    return measure_pauli(s, PauliString.single_site(s.n, v, 'Z'), rng)


def bloch_vector(s, v):
    """(<X_v>, <Y_v>, <Z_v>) as a numpy array."""
    if not 0 <= v < s.n:
        raise ValueError(f"Qubit {v} out of range for {s.n} qubits")
    return np.array([
        hermitian_expectation(s, PauliString.single_site(s.n, v, letter))
        for letter in 'XYZ'
    ])


def entanglement_distance(s, v):
    """1 - |r_v|^2, clipped into [0, 1]."""
    r = bloch_vector(s, v)
    return float(min(1.0, max(0.0, 1.0 - float(r @ r))))


def total_entanglement(s):
    return sum(entanglement_distance(s, v) for v in range(s.n))


def reduced_density_matrix(s, v):
    """2x2 reduced state of qubit v by partial trace over the rest."""
    if not 0 <= v < s.n:
        raise ValueError(f"Qubit {v} out of range for {s.n} qubits")
    # C-order reshape: last axis is the low bits, so qubit v sits in the middle
    psi = s.amps.reshape(1 << (s.n - 1 - v), 2, 1 << v)
    return np.einsum('aib,ajb->ij', psi, np.conj(psi))


def entropy_of_entanglement(s, v):
    """Von Neumann entropy (bits) of qubit v's reduced state."""
    eigenvalues = np.linalg.eigvalsh(reduced_density_matrix(s, v))
    eigenvalues = eigenvalues[eigenvalues > 1e-15]
    return float(min(1.0, max(0.0, -np.sum(eigenvalues * np.log2(eigenvalues)))))


def fidelity(a, b):
    """|<a|b>|^2."""
    if a.n != b.n:
        raise ValueError(f"Cannot compare states on {a.n} and {b.n} qubits")
    return float(min(1.0, abs(np.vdot(a.amps, b.amps)) ** 2))


def from_amplitudes(amps, normalize=True):
    """Wrap a raw amplitude array, optionally renormalizing it."""
    amps = np.array(amps, dtype=np.complex128).ravel()
    n = int(amps.size).bit_length() - 1
    if amps.size != 1 << n:
        raise ValueError(f"Amplitude count {amps.size} is not a power of two")
    if normalize:
        norm = float(np.linalg.norm(amps))
        if norm < ZERO_PROBABILITY:
            raise ValueError("Cannot normalize a zero vector")
        amps = amps / norm
    return StateVector(n, amps)


def dump_state(s, path):
    """Write the 'PGSV1 n=<n>' header line then little-endian (re, im) doubles."""
    with open(path, 'wb') as f:
        f.write(f"{DUMP_MAGIC} n={s.n}\n".encode('ascii'))
        f.write(s.amps.astype('<c16').tobytes())


def load_state(path):
    """
    Read a state written by dump_state.

    Raises:
        ValueError: On a bad header or truncated payload
    """
    with open(path, 'rb') as f:
        header = f.readline().decode('ascii', errors='replace').strip()
        payload = f.read()

    parts = header.split()
    if len(parts) != 2 or parts[0] != DUMP_MAGIC or not parts[1].startswith('n='):
        raise ValueError(f"Bad state dump header '{header}'")
    n = int(parts[1][2:])
    expected = (1 << n) * 16
    if len(payload) != expected:
        raise ValueError(f"State dump payload is {len(payload)} bytes, expected {expected}")
    amps = np.frombuffer(payload, dtype='<c16').astype(np.complex128)
    return StateVector(n, amps)


def correlator_sweep(g, p, phis, cap=None):
    """Oracle <G(phi)|P|G(phi)> for each phi, as a list of floats."""
    return [hermitian_expectation(build_pgs(g, phi, cap=cap), p) for phi in phis]


def quasi_gs_deviation(g, p, deltas, cap=None):
    """
    |<G(pi + d)|P|G(pi + d)> - <G|P|G>| for each offset d.

    Returns:
        list: One absolute deviation per entry of deltas
    """
    reference = hermitian_expectation(build_pgs(g, math.pi, cap=cap), p)
    return [abs(value - reference) for value in correlator_sweep(g, p, [math.pi + d for d in deltas], cap)]
