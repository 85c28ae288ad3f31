"""
Command Implementations

The four user-facing commands as plain functions returning rows or
reports, shared by the CLI script and the HTTP API:
- ed_curve: entanglement distance over a phi grid (analytic vs oracle)
- correlators: two-point correlator table with rule tags
- probe: sampled verification of a hypothesis graph
- compliance: sign audit of the topological correlators
"""

import csv
import io
import json
import math
import re
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import analytic
from .analytic import OracleMismatchError
from .corpus_configs import build_graph, list_configs
from .pauli import PauliString
from .prober import ConnectivityProber, SampleBudget, build_probe_state
from .settings import ATOL_CLOSED_FORM, ATOL_ORACLE, get_qubit_cap
from . import statevector as sv

logger = logging.getLogger(__name__)

ED_CURVE_COLUMNS = ['phi', 'vertex', 'n_nu', 'ed_analytic', 'ed_oracle', 'entropy_oracle', 'label']
CORRELATOR_COLUMNS = ['nu', 'mu', 'axes', 'predicted', 'rule', 'sign_provenance', 'oracle', 'agree',
                      'nu_label', 'mu_label']
COMPLIANCE_COLUMNS = ['graph', 'axis', 'n', 'edges', 'condition', 'stated_value', 'bookkeeping_value',
                      'oracle_value', 'magnitude_agree', 'bookkeeping_matches_oracle', 'flagged',
                      'explained_by_edge_parity']

RULE_ORACLE_ONLY = 'oracle-only'
RULE_CLOSED_FORM = 'closed-form'

_PI_SUFFIX = re.compile(r'^\s*([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*pi\s*$')


@dataclass(frozen=True)
class RunConfig:
    """Resolved options for one command invocation."""

    command: str
    graph_path: str = None
    phis: tuple = (math.pi,)
    epsilon: float = 2.0 ** -10
    seed: int = 0
    cap: int = None
    output_format: str = 'csv'
    out_path: str = None

    def __post_init__(self):
        if not self.phis:
            raise ValueError("phi grid must not be empty")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.output_format not in ('csv', 'json'):
            raise ValueError(f"Unknown output format '{self.output_format}'")
        object.__setattr__(self, 'cap', get_qubit_cap(self.cap))


def parse_phi(text):
    """
    Parse one angle: radians ('1.57') or a multiple of pi ('0.5pi', '-pi').

    Raises:
        ValueError: If the text is not a number
    """
    m = _PI_SUFFIX.match(text)
    if m:
        factor = m.group(1)
        if factor in ('', '+'):
            return math.pi
        if factor == '-':
            return -math.pi
        return float(factor) * math.pi
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"Cannot parse angle '{text}' (use radians or a 'pi' suffix)")


def parse_phi_grid(text):
    """
    Parse 'a,b,c' or an inclusive 'start:stop:count' grid into radians.

    Raises:
        ValueError: On malformed or empty grids
    """
    text = text.strip()
    if ':' in text:
        parts = text.split(':')
        if len(parts) != 3:
            raise ValueError(f"Grid '{text}' must be start:stop:count")
        start, stop = parse_phi(parts[0]), parse_phi(parts[1])
        try:
            num = int(parts[2])
        except ValueError:
            raise ValueError(f"Grid count '{parts[2]}' is not an integer")
        if num < 1:
            raise ValueError(f"Grid count must be at least 1, got {num}")
        return tuple(float(x) for x in np.linspace(start, stop, num))

    phis = tuple(parse_phi(p) for p in text.split(',') if p.strip())
    if not phis:
        raise ValueError("phi grid must not be empty")
    return phis


def is_genuine(phi):
    return abs(phi - math.pi) < 1e-12


def ed_curve(loaded, phis, cap):
    """
    Rows of (phi, vertex, n_nu, ed_analytic, ed_oracle, entropy_oracle).

    Oracle columns are None above the cap.

    Returns:
        tuple: (rows, max_abs_diff) with max_abs_diff None when no oracle ran
    """
    g = loaded.graph
    use_oracle = g.n <= cap
    if not use_oracle:
        logger.warning(f"{g.n} qubits exceed cap {cap}; oracle columns omitted")

    rows = []
    max_diff = 0.0 if use_oracle else None
    for phi in phis:
        state = sv.build_pgs(g, phi, cap=cap) if use_oracle else None
        for v in range(g.n):
            stats = analytic.pgs_point_stats(g, v, phi)
            row = {
                'phi': phi,
                'vertex': v,
                'n_nu': len(g.adj[v]),
                'ed_analytic': stats.ed,
                'ed_oracle': None,
                'entropy_oracle': None,
                'label': loaded.labels[v],
            }
            if use_oracle:
                row['ed_oracle'] = sv.entanglement_distance(state, v)
                row['entropy_oracle'] = sv.entropy_of_entanglement(state, v)
                max_diff = max(max_diff, abs(row['ed_oracle'] - stats.ed))
            rows.append(row)

    logger.info(f"ED curve: {len(phis)} phi values x {g.n} vertices = {len(rows)} rows")
    return rows, max_diff


def correlators(loaded, phi, cap, single_site=False):
    """
    Two-point correlator table for every vertex pair and axis pair.

    At phi = pi predictions come from the analytic engine; elsewhere
    two-point rows are oracle-only. With single_site, closed-form one-qubit
    expectations are added at any phi.

    Returns:
        tuple: (rows, mismatches) where mismatches lists disagreeing rows
    """
    g = loaded.graph
    genuine = is_genuine(phi)
    state = sv.build_pgs(g, phi, cap=cap) if g.n <= cap else None
    if state is None:
        logger.warning(f"{g.n} qubits exceed cap {cap}; oracle columns omitted")
    if not genuine:
        logger.info(f"phi={phi} is not pi: two-point correlators served by the oracle only")

    rows = []
    mismatches = []

    def add(row, tolerance):
        if row['predicted'] is not None and row['oracle'] is not None:
            row['agree'] = abs(row['predicted'] - row['oracle']) <= tolerance
            if not row['agree']:
                mismatches.append(row)
        rows.append(row)

    if single_site:
        for v in range(g.n):
            stats = analytic.pgs_point_stats(g, v, phi)
            for axis, predicted in zip('xyz', (stats.ex, stats.ey, stats.ez)):
                p = PauliString.single_site(g.n, v, axis)
                add({
                    'nu': v, 'mu': None, 'axes': axis, 'predicted': predicted,
                    'rule': RULE_CLOSED_FORM, 'sign_provenance': analytic.CLOSED_FORM_STATED,
                    'oracle': sv.hermitian_expectation(state, p) if state is not None else None,
                    'agree': None, 'nu_label': loaded.labels[v], 'mu_label': None,
                }, ATOL_CLOSED_FORM)

    for nu, mu in combinations(range(g.n), 2):
        for i in 'xyz':
            for j in 'xyz':
                p = analytic.two_point(g, nu, mu, i, j)
                row = {
                    'nu': nu, 'mu': mu, 'axes': i + j, 'predicted': None,
                    'rule': RULE_ORACLE_ONLY, 'sign_provenance': None,
                    'oracle': sv.hermitian_expectation(state, p) if state is not None else None,
                    'agree': None, 'nu_label': loaded.labels[nu], 'mu_label': loaded.labels[mu],
                }
                if genuine:
                    prediction = analytic.predict_correlator(g, p)
                    row.update(predicted=prediction.value, rule=prediction.rule,
                               sign_provenance=prediction.sign_provenance)
                add(row, ATOL_ORACLE)

    nonzero = sum(1 for r in rows if r['predicted'] not in (None, 0) and r['rule'] != RULE_CLOSED_FORM)
    logger.info(f"Correlators: {len(rows)} rows, {nonzero} nonzero predictions, {len(mismatches)} mismatches")
    return rows, mismatches


def probe(hypothesis, epsilon, seed, cap, state_graph=None, jitter=0.0, localize=True):
    """
    Verify hypothesis against a state built from state_graph (default: itself).

    Returns:
        GraphHypothesisReport: The verification report

    Raises:
        ValueError: On size mismatches
        CapExceededError: If the graph exceeds the cap
    """
    state_graph = hypothesis.graph if state_graph is None else state_graph
    if state_graph.n != hypothesis.graph.n:
        raise ValueError(
            f"State graph has {state_graph.n} vertices, hypothesis has {hypothesis.graph.n}"
        )
    state = build_probe_state(state_graph, jitter=jitter, seed=seed, cap=cap)
    prober = ConnectivityProber(SampleBudget(epsilon, seed))
    return prober.verify_graph(state, hypothesis.graph, localize=localize)


def compliance(names=None, cap=None):
    """
    Topological correlator audit over the built-in corpus.

    Returns:
        tuple: (rows, problems) where problems lists rows whose magnitude or
            bookkeeping sign disagrees with the oracle
    """
    names = list_configs() if names is None else names
    cap = get_qubit_cap(cap)
    rows = []
    problems = []

    for name in names:
        g = build_graph(name)
        state = sv.build_pgs(g, math.pi, cap=cap) if g.n <= cap else None
        for axis in 'XY':
            prediction = analytic.predict_topological(g, axis)
            oracle = None
            if state is not None:
                oracle = int(round(sv.hermitian_expectation(state, PauliString(axis * g.n))))
            row = {
                'graph': name,
                'axis': axis,
                'n': g.n,
                'edges': g.edge_count,
                'condition': prediction.condition_holds,
                'stated_value': prediction.stated_value,
                'bookkeeping_value': prediction.value,
                'oracle_value': oracle,
                'magnitude_agree': abs(prediction.stated_value) == abs(prediction.value),
                'bookkeeping_matches_oracle': None if oracle is None else oracle == prediction.value,
                'flagged': prediction.flagged,
                'explained_by_edge_parity': prediction.explained_by_edge_parity,
            }
            if not row['magnitude_agree'] or row['bookkeeping_matches_oracle'] is False:
                problems.append(row)
            rows.append(row)

    flagged = sum(1 for r in rows if r['flagged'])
    logger.info(f"Compliance: {len(rows)} entries, {flagged} sign divergences, {len(problems)} problems")
    return rows, problems


def _format_cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_table(rows, columns, output_format):
    """Render rows as CSV (stable column order) or a JSON array."""
    if output_format == 'json':
        return json.dumps([{c: row.get(c) for c in columns} for row in rows], indent=2) + '\n'

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def check_mismatches(mismatches, what):
    """
    Raises:
        OracleMismatchError: If any mismatch was recorded
    """
    if mismatches:
        first = mismatches[0]
        raise OracleMismatchError(f"{len(mismatches)} {what} rows disagree with the oracle, first: {first}")


def format_report(report, labels=None):
    """Probe report as indented JSON with a trailing newline."""
    return json.dumps(report.to_dict(labels), indent=2) + '\n'
