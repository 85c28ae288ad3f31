"""
Built-in Graph Corpus

Named graphs used by the compliance report, the HTTP API and the test
suite, including:
- paths, cycles and stars
- complete graphs
- Petersen and lattice patches
- seeded random graphs

Graphs are built with networkx and converted to the bitset Graph.
"""

import logging

import networkx as nx
import numpy as np

from .graph import Graph

logger = logging.getLogger(__name__)


CORPUS_CONFIGS = {
    'P2': {'builder': nx.path_graph, 'args': (2,), 'description': 'Path on 2 vertices (single edge)'},
    'P3': {'builder': nx.path_graph, 'args': (3,), 'description': 'Path on 3 vertices'},
    'P4': {'builder': nx.path_graph, 'args': (4,), 'description': 'Path on 4 vertices'},
    'P5': {'builder': nx.path_graph, 'args': (5,), 'description': 'Path on 5 vertices'},
    'C3': {'builder': nx.cycle_graph, 'args': (3,), 'description': 'Triangle'},
    'C4': {'builder': nx.cycle_graph, 'args': (4,), 'description': 'Square ring'},
    'C5': {'builder': nx.cycle_graph, 'args': (5,), 'description': 'Pentagon ring'},
    'C6': {'builder': nx.cycle_graph, 'args': (6,), 'description': 'Hexagon ring'},
    'K1,1': {'builder': nx.star_graph, 'args': (1,), 'description': 'Star with 1 leaf'},
    'K1,2': {'builder': nx.star_graph, 'args': (2,), 'description': 'Star with 2 leaves'},
    'K1,3': {'builder': nx.star_graph, 'args': (3,), 'description': 'Star with 3 leaves'},
    'K1,4': {'builder': nx.star_graph, 'args': (4,), 'description': 'Star with 4 leaves'},
    'K1,5': {'builder': nx.star_graph, 'args': (5,), 'description': 'Star with 5 leaves'},
    'K2': {'builder': nx.complete_graph, 'args': (2,), 'description': 'Complete graph on 2 vertices'},
    'K3': {'builder': nx.complete_graph, 'args': (3,), 'description': 'Complete graph on 3 vertices'},
    'K4': {'builder': nx.complete_graph, 'args': (4,), 'description': 'Complete graph on 4 vertices'},
    'petersen': {'builder': nx.petersen_graph, 'args': (), 'description': 'Petersen graph (3-regular, 10 vertices)'},
    'grid3x3': {'builder': nx.grid_2d_graph, 'args': (3, 3), 'description': 'Open 3x3 square lattice patch'},
    'torus3x3': {'builder': nx.grid_2d_graph, 'args': (3, 3, True), 'description': 'Periodic 3x3 square lattice'},
}


def get_config(name):
    """
    Get a corpus entry by name.

    Args:
        name: Corpus graph name (e.g. 'C4', 'K1,3')

    Returns:
        dict: Configuration dictionary

    Raises:
        KeyError: If name doesn't exist
    """
    if name not in CORPUS_CONFIGS:
        available = ', '.join(CORPUS_CONFIGS.keys())
        raise KeyError(f"Unknown graph '{name}'. Available: {available}")

    return CORPUS_CONFIGS[name]


def list_configs():
    """
    List all corpus graph names.

    Returns:
        list: List of configuration names
    """
    return list(CORPUS_CONFIGS.keys())


def build_graph(name):
    config = get_config(name)
    return Graph.from_networkx(config['builder'](*config['args']))


def random_graphs(count, max_n=10, seed=0, min_n=2):
    """
    Seeded G(n, p) graphs with n in [min_n, max_n] and p in [0.2, 0.8].

    Returns:
        list: List of (name, Graph) tuples
    """
    rng = np.random.default_rng(seed)
    graphs = []
    for i in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        p = float(rng.uniform(0.2, 0.8))
        nx_graph = nx.gnp_random_graph(n, p, seed=int(rng.integers(2 ** 31)))
        graphs.append((f"gnp{i}_n{n}", Graph.from_networkx(nx_graph)))
    return graphs
