#!/usr/bin/env python3
"""
Flask backend for the Graph-State Lab.
Provides JSON API endpoints over the built-in graph corpus for plotting
entanglement curves, correlator tables, probe reports and the sign audit.
"""

from flask import Flask, jsonify, request
from flask_cors import CORS
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'scripts'))

from gslab import commands
from gslab.corpus_configs import CORPUS_CONFIGS, build_graph
from gslab.graph_io import LoadedGraph
from gslab.settings import get_qubit_cap

app = Flask(__name__)
CORS(app)


def load_corpus_graph(name):
    """Corpus graph wrapped with decimal labels; KeyError for unknown names."""
    graph = build_graph(name)
    return LoadedGraph(graph, tuple(str(v) for v in range(graph.n)))


def error_response(e):
    status = 400 if isinstance(e, (ValueError, KeyError)) else 500
    message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
    return jsonify({'error': message}), status


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@app.route('/api/graphs', methods=['GET'])
def get_graphs():
    """Get list of all built-in corpus graphs."""
    try:
        graphs = []
        for name, config in CORPUS_CONFIGS.items():
            graph = build_graph(name)
            graphs.append({
                'name': name,
                'description': config['description'],
                'vertices': graph.n,
                'edges': graph.edge_count,
            })
        return jsonify(graphs)

    except Exception as e:
        return error_response(e)


@app.route('/api/ed_curve', methods=['GET'])
def get_ed_curve():
    """
    Entanglement distance rows for one corpus graph.

    Query parameters:
        graph: Corpus graph name (required)
        phi: Angle grid (optional, default 0:2pi:51)
    """
    try:
        name = request.args.get('graph')
        if not name:
            return jsonify({'error': 'graph parameter is required'}), 400

        phis = commands.parse_phi_grid(request.args.get('phi', '0:2pi:51'))
        rows, max_diff = commands.ed_curve(load_corpus_graph(name), phis, get_qubit_cap())

        return jsonify({
            'graph': name,
            'columns': commands.ED_CURVE_COLUMNS,
            'max_abs_diff': max_diff,
            'rows': [{c: _finite(row[c]) for c in commands.ED_CURVE_COLUMNS} for row in rows]
        })

    except Exception as e:
        return error_response(e)


@app.route('/api/correlators', methods=['GET'])
def get_correlators():
    """
    Two-point correlator table for one corpus graph.

    Query parameters:
        graph: Corpus graph name (required)
        phi: Single angle (optional, default pi)
        single_site: 'true' to add closed-form single-qubit rows
    """
    try:
        name = request.args.get('graph')
        if not name:
            return jsonify({'error': 'graph parameter is required'}), 400

        phi = commands.parse_phi(request.args.get('phi', 'pi'))
        single_site = request.args.get('single_site', 'false').lower() == 'true'
        rows, mismatches = commands.correlators(load_corpus_graph(name), phi, get_qubit_cap(), single_site)

        return jsonify({
            'graph': name,
            'phi': phi,
            'columns': commands.CORRELATOR_COLUMNS,
            'mismatches': len(mismatches),
            'rows': [{c: row.get(c) for c in commands.CORRELATOR_COLUMNS} for row in rows]
        })

    except Exception as e:
        return error_response(e)


@app.route('/api/compliance', methods=['GET'])
def get_compliance():
    """
    Topological correlator sign audit.

    Query parameters:
        graphs: Comma-separated corpus names (optional, defaults to all)
    """
    try:
        names = request.args.get('graphs', '').split(',') if request.args.get('graphs') else None
        rows, problems = commands.compliance(names, get_qubit_cap())

        return jsonify({
            'columns': commands.COMPLIANCE_COLUMNS,
            'problems': len(problems),
            'rows': rows
        })

    except Exception as e:
        return error_response(e)


@app.route('/api/probe', methods=['GET'])
def get_probe():
    """
    Verify a corpus graph against its own (optionally corrupted) state.

    Query parameters:
        graph: Corpus graph name (required)
        epsilon: Confidence target (optional, default 2^-10)
        seed: Sampling seed (optional, default 0)
        flip: Comma-separated 'a-b' edges toggled in the prepared state (optional)
        jitter: Per-edge phi error amplitude (optional, default 0)
    """
    try:
        name = request.args.get('graph')
        if not name:
            return jsonify({'error': 'graph parameter is required'}), 400

        hypothesis = load_corpus_graph(name)
        epsilon = float(request.args.get('epsilon', 2.0 ** -10))
        seed = int(request.args.get('seed', 0))
        jitter = float(request.args.get('jitter', 0.0))

        state_graph = hypothesis.graph
        for token in filter(None, request.args.get('flip', '').split(',')):
            a, sep, b = token.partition('-')
            if not sep:
                raise ValueError(f"Edge '{token}' must be written as a-b")
            state_graph = state_graph.with_edge_flipped(hypothesis.index_of(a), hypothesis.index_of(b))

        report = commands.probe(hypothesis, epsilon, seed, get_qubit_cap(), state_graph=state_graph, jitter=jitter)
        return jsonify(report.to_dict(hypothesis.labels))

    except Exception as e:
        return error_response(e)


if __name__ == '__main__':
    print("=" * 60)
    print("Graph-State Lab API")
    print("=" * 60)
    print(f"Corpus graphs: {len(CORPUS_CONFIGS)}")
    print(f"Qubit cap: {get_qubit_cap()}")
    print("Starting server at http://localhost:5000")
    print("=" * 60)

    app.run(debug=True, port=5000)
