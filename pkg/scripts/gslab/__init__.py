"""
Graph-State Lab

Pseudo graph states, their entanglement and Pauli correlators computed
two ways (dense statevector oracle and polynomial-time graph rules), plus
a sampling protocol that verifies graph connectivity from measurements.
"""

from .graph import Graph, VertexSet, PairRelation
from .graph_io import GraphFileParser, LoadedGraph, load_graph
from .pauli import PauliString, MeasurementDirection, compose, z_string
from .statevector import StateVector, build_pgs
from .prober import ConnectivityProber, SampleBudget
from .corpus_configs import CORPUS_CONFIGS, list_configs, get_config, build_graph

__all__ = [
    'Graph',
    'VertexSet',
    'PairRelation',
    'GraphFileParser',
    'LoadedGraph',
    'load_graph',
    'PauliString',
    'MeasurementDirection',
    'compose',
    'z_string',
    'StateVector',
    'build_pgs',
    'ConnectivityProber',
    'SampleBudget',
    'CORPUS_CONFIGS',
    'list_configs',
    'get_config',
    'build_graph',
]
