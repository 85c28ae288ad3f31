"""
Connectivity Prober

Verifies a hypothesized graph against a prepared graph state using only
sampled Pauli measurements:
1. Probe every vertex with X_v Z^{N(v)} (neighbourhood probing)
2. Decide each observable with the stop-at-first-disagreement rule
3. On failure, z-measure everything else and probe Y_a Y_b on suspect
   pairs to localize the faulty links
"""

import math
import logging
from dataclasses import dataclass, field
from itertools import combinations, count

import numpy as np

from .graph import VertexSet, neighbors
from .pauli import PauliString, render
from .analytic import neighborhood_probe_observable
from .statevector import build_pgs, measure_pauli, measure_z
from .settings import GENUINE_PHI

logger = logging.getLogger(__name__)

LINK_PROBE_OFFSET = 1_000_000


@dataclass(frozen=True)
class SampleBudget:
    """Confidence target epsilon and the replay seed."""

    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @property
    def max_samples(self):
        """M = ceil(-log2 epsilon), at least 1."""
        return max(1, math.ceil(-math.log2(self.epsilon) - 1e-12))

    def shot_rng(self, probe_index, shot):
        """Independent generator per (probe, shot) so replays are exact."""
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(probe_index, shot)))


@dataclass(frozen=True)
class ProbeVerdict:
    observable: PauliString
    decided_value: int
    samples_used: int
    confidence: float

    def to_dict(self):
        return {
            'observable': render(self.observable),
            'decided_value': self.decided_value,
            'samples_used': self.samples_used,
            'confidence': self.confidence,
        }


@dataclass
class GraphHypothesisReport:
    vertex_verdicts: list
    link_verdicts: list = field(default_factory=list)
    suspect_edges: list = field(default_factory=list)
    shots_total: int = 0
    epsilon: float = 0.0
    seed: int = 0

    @property
    def passed(self):
        return all(v['verdict'].decided_value == 1 for v in self.vertex_verdicts)

    @property
    def failing_vertices(self):
        return [v['vertex'] for v in self.vertex_verdicts if v['verdict'].decided_value != 1]

    def to_dict(self, labels=None):
        def name(v):
            return labels[v] if labels else str(v)

        return {
            'verdicts': [
                {'vertex': name(v['vertex']), 'guess': [name(u) for u in v['guess']], **v['verdict'].to_dict()}
                for v in self.vertex_verdicts
            ],
            'links': [
                {
                    'a': name(link['a']),
                    'b': name(link['b']),
                    'edge_present': link['edge_present'],
                    'hypothesized': link['hypothesized'],
                    **link['verdict'].to_dict(),
                }
                for link in self.link_verdicts
            ],
            'failing_vertices': [name(v) for v in self.failing_vertices],
            'suspect_edges': [
                {'a': name(e['a']), 'b': name(e['b']), 'kind': e['kind']} for e in self.suspect_edges
            ],
            'shots_total': self.shots_total,
            'epsilon': self.epsilon,
            'seed': self.seed,
            'pass': self.passed,
        }


def sequential_decide(outcomes, budget, observable=None):
    """
    Decide a {-1, 0, +1} correlator from a stream of ±1 outcomes.

    Returns 0 at the first outcome that disagrees with the earlier ones,
    otherwise the common sign after M unanimous outcomes.

    Args:
        outcomes: Iterable of ±1 (consumed lazily)
        budget: SampleBudget
        observable: PauliString recorded on the verdict

    Returns:
        ProbeVerdict: Decision, samples consumed and confidence

    Raises:
        ValueError: If the stream is empty, holds a value other than ±1, or
            ends before M unanimous outcomes
    """
    m = budget.max_samples
    first = None
    used = 0

    for outcome in outcomes:
        if outcome not in (1, -1):
            raise ValueError(f"Measurement outcomes must be ±1, got {outcome}")
        used += 1
        if first is None:
            first = outcome
        elif outcome != first:
            return ProbeVerdict(observable, 0, used, 1.0)
        if used == m:
            return ProbeVerdict(observable, first, used, 1.0 - 2.0 ** (-m))

    if used == 0:
        raise ValueError("Cannot decide from an empty outcome stream")
    raise ValueError(f"Outcome stream ended after {used} of {m} unanimous samples")


def simulate_decision_errors(true_value, budget, trials):
    """
    Monte Carlo count of wrong verdicts for an ideal correlator.

    For true_value ±1 every outcome equals it; for 0 outcomes are fair coin
    flips. Trial t draws from the budget's (0, t) substream.

    Returns:
        int: Number of trials whose verdict differs from true_value
    """
    if true_value not in (-1, 0, 1):
        raise ValueError(f"Ideal correlators take values in {{-1, 0, 1}}, got {true_value}")

    wrong = 0
    for trial in range(trials):
        rng = budget.shot_rng(0, trial)
        if true_value == 0:
            stream = (1 if rng.random() < 0.5 else -1 for _ in count())
        else:
            stream = (true_value for _ in count())
        if sequential_decide(stream, budget).decided_value != true_value:
            wrong += 1
    return wrong


def build_probe_state(graph, phi=GENUINE_PHI, jitter=0.0, seed=0, cap=None):
    """
    Prepare the state a device would hold for graph.

    Args:
        graph: Graph actually implemented
        phi: Nominal interaction strength
        jitter: Per-edge strength error drawn uniformly from [-jitter, jitter]
        seed: Seed for the jitter draw
        cap: Qubit cap override

    Returns:
        StateVector: The prepared state
    """
    edge_phis = None
    if jitter > 0:
        rng = np.random.default_rng(seed)
        edge_phis = {edge: phi + float(rng.uniform(-jitter, jitter)) for edge in graph.edges()}
        logger.info(f"Applying per-edge phi jitter up to {jitter} on {len(edge_phis)} edges")
    return build_pgs(graph, phi, edge_phis=edge_phis, cap=cap)


class ConnectivityProber:
    """Sample-based verification of a graph hypothesis against a state."""

    def __init__(self, budget):
        """
        Initialize the prober.

        Args:
            budget: SampleBudget shared by every observable
        """
        self.budget = budget

    def verify_neighborhood(self, state, v, guess, probe_index=None):
        """
        Probe X_v Z^{guess}; +1 means guess is the neighbourhood of v.

        Raises:
            ValueError: If v is in guess or sizes mismatch
        """
        if guess.n != state.n:
            raise ValueError(f"Guess universe {guess.n} does not match {state.n} qubits")
        observable = neighborhood_probe_observable(v, guess)
        index = v if probe_index is None else probe_index

        def shots():
            for shot in count():
                yield measure_pauli(state, observable, self.budget.shot_rng(index, shot)).outcome

        return sequential_decide(shots(), self.budget, observable)

    def probe_link(self, state, a, b, mask, hypothesis, probe_index=None):
        """
        Test link (a, b) by z-measuring mask, then measuring Y_a Y_b.

        Each Y_a Y_b outcome is multiplied by (-1) per z = -1 outcome on
        mask ∩ (N(a) △ N(b)) of the hypothesis, which cancels the Z byproducts
        left by the z-measurements. The corrected stream is unanimous +1 for
        an edge and unbiased for a non-edge.

        Args:
            state: Prepared StateVector (never modified)
            a: First endpoint
            b: Second endpoint
            mask: VertexSet of vertices to z-measure first
            hypothesis: Graph supplying the neighbourhoods for the correction
            probe_index: Substream index (defaults to a pair-derived value)

        Returns:
            ProbeVerdict: +1 for an edge, 0 for no edge

        Raises:
            ValueError: If mask contains a or b, or a == b
        """
        if a == b:
            raise ValueError(f"Link probe needs two distinct vertices, got {a} twice")
        if a in mask or b in mask:
            raise ValueError(f"Mask {mask.members()} overlaps the probed pair ({a}, {b})")

        correction = mask & (neighbors(hypothesis, a) ^ neighbors(hypothesis, b))
        observable = PauliString.from_sites(state.n, {a: 'Y', b: 'Y'})
        index = LINK_PROBE_OFFSET + a * state.n + b if probe_index is None else probe_index
        order = mask.members()

        def shots():
            for shot in count():
                rng = self.budget.shot_rng(index, shot)
                current = state
                flips = 0
                for m in order:
                    result = measure_z(current, m, rng)
                    current = result.post_state
                    if result.outcome == -1 and m in correction:
                        flips += 1
                outcome = measure_pauli(current, observable, rng).outcome
                yield outcome if flips % 2 == 0 else -outcome

        verdict = sequential_decide(shots(), self.budget, observable)
        if verdict.decided_value == -1:
            logger.warning(f"Link ({a}, {b}) decided -1; neighbourhood correction does not match the state")
        return verdict

    def verify_graph(self, state, hypothesis, localize=True):
        """
        Check every hypothesized neighbourhood, then localize failures.

        Link probes correct their Z byproducts with hypothesis neighbourhoods,
        so localization is exact for a single flipped edge only. Two faults
        that share a vertex leave the shared probe stream mixed, and the
        report can miss one of them; a warning is logged when more than two
        vertices fail.

        Args:
            state: Prepared StateVector
            hypothesis: Graph expected to underlie the state
            localize: Probe links between failing vertices on failure

        Returns:
            GraphHypothesisReport: Per-vertex and per-link verdicts

        Raises:
            ValueError: If hypothesis.n differs from the state size
        """
        if hypothesis.n != state.n:
            raise ValueError(f"Hypothesis has {hypothesis.n} vertices but the state has {state.n} qubits")

        logger.info("=" * 70)
        logger.info(f"VERIFYING GRAPH HYPOTHESIS: {hypothesis.n} vertices, {hypothesis.edge_count} edges")
        logger.info("=" * 70)
        logger.info(f"epsilon={self.budget.epsilon}, M={self.budget.max_samples}, seed={self.budget.seed}")

        report = GraphHypothesisReport([], epsilon=self.budget.epsilon, seed=self.budget.seed)
        for v in range(hypothesis.n):
            guess = neighbors(hypothesis, v)
            verdict = self.verify_neighborhood(state, v, guess)
            report.vertex_verdicts.append({'vertex': v, 'guess': guess.members(), 'verdict': verdict})
            report.shots_total += verdict.samples_used
            status = 'OK' if verdict.decided_value == 1 else 'FAIL'
            logger.info(f"  vertex {v}: {render(verdict.observable)} -> {verdict.decided_value:+d} "
                        f"after {verdict.samples_used} shots [{status}]")

        failing = report.failing_vertices
        if failing and localize:
            if len(failing) > 2:
                logger.warning(f"{len(failing)} failing vertices; link verdicts assume a single flipped edge "
                               "and may miss faults that share a vertex")
            logger.info(f"Localizing faults among {len(failing)} failing vertices...")
            everything = VertexSet.full(hypothesis.n)
            for a, b in combinations(failing, 2):
                mask = everything.without_vertex(a).without_vertex(b)
                verdict = self.probe_link(state, a, b, mask, hypothesis)
                report.shots_total += verdict.samples_used
                present = verdict.decided_value != 0
                hypothesized = b in neighbors(hypothesis, a)
                report.link_verdicts.append({
                    'a': a, 'b': b, 'edge_present': present, 'hypothesized': hypothesized, 'verdict': verdict,
                })
                if present != hypothesized:
                    kind = 'unexpected' if present else 'missing'
                    report.suspect_edges.append({'a': a, 'b': b, 'kind': kind})
                    logger.info(f"  link ({a}, {b}) is {kind}")

        logger.info(f"Result: {'PASS' if report.passed else 'FAIL'} using {report.shots_total} shots")
        return report

