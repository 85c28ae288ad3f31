"""
Pauli Strings

Multi-qubit Pauli operators with an exact global phase i^k, k in 0..3.
Both engines speak this type: the exact engine applies it to amplitudes,
the analytic engine rewrites it through the graph-state unitary.
"""

import math
import re
import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)

LETTERS = 'IXYZ'

# (left, right) -> (product letter, exponent of i)
_SITE_PRODUCT = {
    ('I', 'I'): ('I', 0), ('I', 'X'): ('X', 0), ('I', 'Y'): ('Y', 0), ('I', 'Z'): ('Z', 0),
    ('X', 'I'): ('X', 0), ('X', 'X'): ('I', 0), ('X', 'Y'): ('Z', 1), ('X', 'Z'): ('Y', 3),
    ('Y', 'I'): ('Y', 0), ('Y', 'X'): ('Z', 3), ('Y', 'Y'): ('I', 0), ('Y', 'Z'): ('X', 1),
    ('Z', 'I'): ('Z', 0), ('Z', 'X'): ('Y', 1), ('Z', 'Y'): ('X', 3), ('Z', 'Z'): ('I', 0),
}

_PHASE_TEXT = {0: '+', 1: '+i', 2: '-', 3: '-i'}
_PHASE_VALUE = {0: 1, 1: 1j, 2: -1, 3: -1j}

_TOKEN = re.compile(r'([IXYZ])(\d+)$')
_PREFIX = re.compile(r'^\s*([+-]?)(i?)\s*')


@dataclass(frozen=True)
class PauliString:
    """letters[v] is the Pauli acting on qubit v; the operator is i^phase ⊗ letters."""

    letters: str
    phase: int = 0

    def __post_init__(self):
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise ValueError(f"Invalid Pauli letters {sorted(bad)} in '{self.letters}'")
        object.__setattr__(self, 'phase', self.phase % 4)

    @classmethod
    def identity(cls, n):
        return cls('I' * n)

    @classmethod
    def single_site(cls, n, v, letter):
        if not 0 <= v < n:
            raise ValueError(f"Qubit {v} out of range for {n} qubits")
        letter = letter.upper()
        return cls('I' * v + letter + 'I' * (n - v - 1))

    @classmethod
    def from_sites(cls, n, sites, phase=0):
        """Build from a {qubit: letter} mapping."""
        letters = ['I'] * n
        for v, letter in sites.items():
            if not 0 <= v < n:
                raise ValueError(f"Qubit {v} out of range for {n} qubits")
            letters[v] = letter.upper()
        return cls(''.join(letters), phase)

    @property
    def n(self):
        return len(self.letters)

    @property
    def coefficient(self):
        return _PHASE_VALUE[self.phase]

    def support(self):
        return [v for v, c in enumerate(self.letters) if c != 'I']

    def sites(self, letter):
        return [v for v, c in enumerate(self.letters) if c == letter]

    def is_hermitian(self):
        return self.phase % 2 == 0

    def weight(self):
        return len(self.support())

    def with_phase(self, phase):
        return PauliString(self.letters, phase)

    def commutes_with(self, other):
        _check_sizes(self, other)
        clashes = sum(
            1 for a, b in zip(self.letters, other.letters)
            if a != 'I' and b != 'I' and a != b
        )
        return clashes % 2 == 0

    def __mul__(self, other):
        return compose(self, other)

    def __str__(self):
        return render(self)


def _check_sizes(p, q):
    if p.n != q.n:
        raise ValueError(f"Mismatched Pauli string sizes: {p.n} vs {q.n}")


def compose(p, q):
    """
    Operator product p·q with the phase tracked site by site.

    Raises:
        ValueError: If p and q act on different numbers of qubits
    """
    _check_sizes(p, q)
    phase = p.phase + q.phase
    letters = []
    for a, b in zip(p.letters, q.letters):
        letter, k = _SITE_PRODUCT[a, b]
        letters.append(letter)
        phase += k
    return PauliString(''.join(letters), phase)


def z_string(s):
    """Z on every vertex of the VertexSet s, phase +1."""
    return PauliString(''.join('Z' if v in s else 'I' for v in range(s.n)))


def render(p):
    """Text form '±[i]X0 Z3 Y5'; the identity renders as '+I'."""
    body = ' '.join(f"{c}{v}" for v, c in enumerate(p.letters) if c != 'I')
    return f"{_PHASE_TEXT[p.phase]}{body or 'I'}"


def parse_pauli(text, n):
    """
    Parse the rendered grammar back into a PauliString on n qubits.

    Raises:
        ValueError: On malformed tokens, repeated qubits or out-of-range qubits
    """
    m = _PREFIX.match(text)
    sign, imag = m.group(1), m.group(2)
    phase = (2 if sign == '-' else 0) + (1 if imag else 0)
    body = text[m.end():].strip()

    sites = {}
    if body not in ('', 'I'):
        for token in body.split():
            tm = _TOKEN.match(token)
            if not tm:
                raise ValueError(f"Malformed Pauli token '{token}' in '{text}'")
            letter, v = tm.group(1), int(tm.group(2))
            if v in sites:
                raise ValueError(f"Qubit {v} appears twice in '{text}'")
            sites[v] = letter
    return PauliString.from_sites(n, sites, phase)


@dataclass(frozen=True)
class MeasurementDirection:
    """Real unit vector selecting the observable v·σ on one qubit."""

    vx: float
    vy: float
    vz: float

    def __post_init__(self):
        norm = math.sqrt(self.vx ** 2 + self.vy ** 2 + self.vz ** 2)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"Measurement direction must be a unit vector, norm is {norm}")

    @classmethod
    def axis(cls, letter):
        return {
            'X': cls(1.0, 0.0, 0.0),
            'Y': cls(0.0, 1.0, 0.0),
            'Z': cls(0.0, 0.0, 1.0),
        }[letter.upper()]

    @classmethod
    def normalized(cls, vx, vy, vz):
        norm = math.sqrt(vx * vx + vy * vy + vz * vz)
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(vx / norm, vy / norm, vz / norm)

    @classmethod
    def random(cls, rng):
        """Uniform on the sphere, drawn from a numpy Generator."""
        while True:
            v = rng.normal(size=3)
            norm = float(math.sqrt(float(v @ v)))
            if norm > 1e-6:
                return cls.normalized(*(float(c) for c in v))

    def components(self):
        return {'X': self.vx, 'Y': self.vy, 'Z': self.vz}
