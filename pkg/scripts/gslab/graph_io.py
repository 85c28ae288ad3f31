"""
Graph File Parser

Reads graphs from JSON ({"n": int, "edges": [[a, b], ...]}) or plain
edge-list text, maps arbitrary vertex labels onto 0..n-1, and writes them
back with edges sorted.
"""

import json
import logging
import os
from dataclasses import dataclass

from .graph import Graph, handshake_parity_holds, odd_degree_vertices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoadedGraph:
    """A parsed graph plus the original label of each vertex index."""

    graph: Graph
    labels: tuple

    def label_mapping(self):
        return {label: i for i, label in enumerate(self.labels)}

    def index_of(self, label):
        mapping = self.label_mapping()
        if str(label) not in mapping:
            raise KeyError(f"Unknown vertex label '{label}'")
        return mapping[str(label)]


class GraphFileParser:
    """Parse and serialize graph files."""

    def parse_json(self, text):
        """
        Parse the JSON graph format.

        Vertices are the integers 0..n-1; labels are their decimal strings.

        Args:
            text: JSON document

        Returns:
            LoadedGraph: Parsed graph

        Raises:
            ValueError: On malformed JSON, bad edges, self-loops or repeated edges
        """
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid graph JSON: {e}")

        if not isinstance(doc, dict) or 'n' not in doc or 'edges' not in doc:
            raise ValueError("Graph JSON must be an object with keys 'n' and 'edges'")

        n = doc['n']
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError(f"'n' must be a non-negative integer, got {n!r}")

        edges = []
        for i, edge in enumerate(doc['edges']):
            if (not isinstance(edge, list) or len(edge) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in edge)):
                raise ValueError(f"Edge {i} must be a pair of integers, got {edge!r}")
            edges.append((edge[0], edge[1]))

        graph = self._build(n, edges)
        logger.info(f"Parsed JSON graph: {n} vertices, {graph.edge_count} edges")
        return LoadedGraph(graph, tuple(str(v) for v in range(n)))

    def parse_edge_list(self, text):
        """
        Parse the plain edge-list format.

        One "a b" pair per line; a line with a single label declares an
        isolated vertex; blank lines and '#' comments are ignored. Labels
        that are all integers are ordered numerically, otherwise by first
        appearance.

        Args:
            text: Edge-list text

        Returns:
            LoadedGraph: Parsed graph with the label mapping

        Raises:
            ValueError: On malformed lines, self-loops or repeated edges
        """
        seen = []
        seen_set = set()
        raw_edges = []

        for line_no, line in enumerate(text.splitlines(), start=1):
            content = line.split('#', 1)[0].strip()
            if not content:
                continue
            tokens = content.split()
            if len(tokens) > 2:
                raise ValueError(f"Line {line_no}: expected 'a b', got '{content}'")
            for token in tokens:
                if token not in seen_set:
                    seen_set.add(token)
                    seen.append(token)
            if len(tokens) == 2:
                raw_edges.append((line_no, tokens[0], tokens[1]))

        if all(self._is_int(label) for label in seen):
            labels = sorted(seen, key=int)
        else:
            labels = seen

        index = {label: i for i, label in enumerate(labels)}
        edges = []
        for line_no, a, b in raw_edges:
            if a == b:
                raise ValueError(f"Line {line_no}: self-loop on vertex '{a}'")
            edges.append((index[a], index[b]))

        graph = self._build(len(labels), edges)
        logger.info(f"Parsed edge list: {graph.n} vertices, {graph.edge_count} edges")
        return LoadedGraph(graph, tuple(labels))

    def load(self, path):
        """
        Load a graph file, choosing the format by extension then content.

        Raises:
            ValueError: If the file cannot be parsed
        """
        with open(path, encoding='utf-8') as f:
            text = f.read()

        ext = os.path.splitext(path)[1].lower()
        if ext == '.json' or (ext not in ('.txt', '.edges', '.el') and text.lstrip().startswith('{')):
            loaded = self.parse_json(text)
        else:
            loaded = self.parse_edge_list(text)

        self.validate_graph(loaded.graph)
        return loaded

    def validate_graph(self, graph):
        """
        Sanity-check a parsed graph (handshaking parity).

        Raises:
            ValueError: If the number of odd-degree vertices is odd
        """
        if not handshake_parity_holds(graph):
            raise ValueError(
                f"Odd number of odd-degree vertices {odd_degree_vertices(graph)}; "
                "adjacency is corrupt"
            )
        return True

    def to_json(self, graph):
        return json.dumps({'n': graph.n, 'edges': [list(e) for e in graph.edges()]})

    def to_edge_list(self, loaded):
        """
        Serialize with sorted edges.

        Integer labels in numeric order need no help: isolated vertices get
        their own line after the edges. Any other labelling is preceded by
        one declaration line per vertex in index order, so re-parsing by
        first appearance restores the same indices.
        """
        graph, labels = loaded.graph, loaded.labels
        edge_lines = [f"{labels[a]} {labels[b]}" for a, b in graph.edges()]
        if self._numeric_order(labels):
            lines = edge_lines + [labels[v] for v in range(graph.n) if not graph.adj[v]]
        else:
            lines = list(labels) + edge_lines
        return '\n'.join(lines) + '\n'

    def get_summary(self, loaded):
        graph = loaded.graph
        degrees = [len(row) for row in graph.adj]
        return {
            'vertices': graph.n,
            'edges': graph.edge_count,
            'degree_range': (min(degrees), max(degrees)) if degrees else (None, None),
            'labels': list(loaded.labels),
        }

    def _build(self, n, edges):
        try:
            return Graph.from_edges(n, edges)
        except ValueError as e:
            raise ValueError(f"Invalid graph: {e}")

    @classmethod
    def _numeric_order(cls, labels):
        if not all(cls._is_int(label) for label in labels):
            return False
        return list(labels) == sorted(labels, key=int)

    @staticmethod
    def _is_int(label):
        try:
            int(label)
            return True
        except ValueError:
            return False


def load_graph(path):
    return GraphFileParser().load(path)
