#!/usr/bin/env python3
"""
Graph-State Lab - Command Line Tool

Usage:
    # Entanglement distance of every vertex over a phi grid
    python scripts/gslab_run.py ed-curve --graph graphs/star4.txt --phi 0:2pi:51

    # Two-point correlator table of the genuine graph state
    python scripts/gslab_run.py correlators --graph graphs/c4.json --out c4.csv

    # Closed-form single-site expectations at phi = pi/2
    python scripts/gslab_run.py correlators --graph graphs/c4.json --phi 0.5pi --single-site

    # Verify a hypothesis graph against its own state (ε = 2^-10)
    python scripts/gslab_run.py probe --graph graphs/p5.txt --epsilon 0.0009765625 --seed 7

    # Same, but the prepared state is missing edge (1, 2)
    python scripts/gslab_run.py probe --graph graphs/p5.txt --flip-edge 1 2

    # Topological correlator sign audit over the built-in corpus
    python scripts/gslab_run.py compliance

Exit codes: 0 success/pass, 1 verification fail, 2 usage error,
3 analytic/oracle mismatch.
"""

import argparse
import logging
import sys
import os
from gslab import commands, list_configs, load_graph
from gslab.analytic import OracleMismatchError
from gslab.commands import RunConfig
from gslab.settings import ATOL_CLOSED_FORM

# Ensure logs directory exists (relative to project root)
log_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'logs')
os.makedirs(log_dir, exist_ok=True)

# Set up logging; stdout carries the tables
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(os.path.join(log_dir, 'gslab.log')),
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

# probe and compliance always run at phi = pi and take no --phi
DEFAULT_PHI = {
    'ed-curve': '0:2pi:51',
    'correlators': 'pi',
}


def build_parser():
    parser = argparse.ArgumentParser(
        description='Pseudo graph states: entanglement, correlators and connectivity probing',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )

    parser.add_argument(
        'command',
        nargs='?',
        choices=['ed-curve', 'correlators', 'probe', 'compliance'],
        help='Command to run'
    )

    parser.add_argument(
        '--graph',
        metavar='PATH',
        help='Graph file (JSON {"n", "edges"} or edge list)'
    )

    parser.add_argument(
        '--phi',
        metavar='GRID',
        help="ed-curve, correlators: angle(s) '0.5pi', '1.2,pi' or inclusive 'start:stop:count'"
    )

    parser.add_argument(
        '--epsilon',
        type=float,
        default=2.0 ** -10,
        metavar='E',
        help='Probe confidence target in (0, 1) (default: 2^-10)'
    )

    parser.add_argument(
        '--seed',
        type=int,
        default=0,
        metavar='S',
        help='Seed for shot sampling and jitter (default: 0)'
    )

    parser.add_argument(
        '--cap',
        type=int,
        metavar='N',
        help='Maximum qubits for the statevector oracle (default: $GSLAB_CAP or 24)'
    )

    parser.add_argument(
        '--format',
        choices=['csv', 'json'],
        default='csv',
        help='Table output format (probe reports are always JSON)'
    )

    parser.add_argument(
        '--out',
        metavar='PATH',
        help='Write output to PATH instead of stdout'
    )

    parser.add_argument(
        '--single-site',
        action='store_true',
        help='correlators: also emit closed-form single-qubit expectations'
    )

    parser.add_argument(
        '--state-graph',
        metavar='PATH',
        help='probe: graph actually prepared (default: the hypothesis itself)'
    )

    parser.add_argument(
        '--flip-edge',
        nargs=2,
        action='append',
        metavar=('A', 'B'),
        help='probe: toggle edge A-B in the prepared state (repeatable, labels as in the graph file)'
    )

    parser.add_argument(
        '--jitter',
        type=float,
        default=0.0,
        help='probe: uniform per-edge phi error amplitude in radians'
    )

    parser.add_argument(
        '--no-localize',
        action='store_true',
        help='probe: skip link probing of failing vertices'
    )

    parser.add_argument(
        '--corpus',
        action='append',
        metavar='NAME',
        help='compliance: restrict to the named built-in graphs (repeatable)'
    )

    parser.add_argument(
        '--list',
        action='store_true',
        help='List built-in corpus graphs and exit'
    )

    return parser


def write_output(text, out_path):
    if out_path:
        with open(out_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"Wrote {out_path}")
    else:
        sys.stdout.write(text)


def resolve_state_graph(hypothesis, state_graph_path, flips):
    """Graph actually prepared for a probe run, with requested edges toggled."""
    if state_graph_path:
        state = load_graph(state_graph_path)
        if state.labels != hypothesis.labels:
            raise ValueError(f"State graph {state_graph_path} uses different vertex labels than the hypothesis")
        graph = state.graph
    else:
        graph = hypothesis.graph

    for a, b in flips or []:
        graph = graph.with_edge_flipped(hypothesis.index_of(a), hypothesis.index_of(b))
        logger.info(f"Prepared state toggles edge ({a}, {b})")
    return graph


def run(config, args):
    """
    Execute one command.

    Returns:
        int: Exit code
    """
    loaded = None
    if config.command != 'compliance':
        if not config.graph_path:
            raise ValueError(f"{config.command} requires --graph")
        loaded = load_graph(config.graph_path)
        logger.info(f"Loaded {config.graph_path}: {loaded.graph.n} vertices, {loaded.graph.edge_count} edges")

    if config.command == 'ed-curve':
        rows, max_diff = commands.ed_curve(loaded, config.phis, config.cap)
        write_output(commands.format_table(rows, commands.ED_CURVE_COLUMNS, config.output_format), config.out_path)
        if max_diff is not None:
            logger.info(f"Max |ed_analytic - ed_oracle| = {max_diff:.3e}")
            if max_diff > ATOL_CLOSED_FORM:
                raise OracleMismatchError(f"Entanglement distance differs from the oracle by {max_diff:.3e}")
        return EXIT_OK

    if config.command == 'correlators':
        if len(config.phis) != 1:
            raise ValueError(f"correlators takes a single phi, got {len(config.phis)}")
        rows, mismatches = commands.correlators(loaded, config.phis[0], config.cap, single_site=args.single_site)
        write_output(commands.format_table(rows, commands.CORRELATOR_COLUMNS, config.output_format), config.out_path)
        commands.check_mismatches(mismatches, 'correlator')
        return EXIT_OK

    if config.command == 'probe':
        state_graph = resolve_state_graph(loaded, args.state_graph, args.flip_edge)
        report = commands.probe(
            loaded,
            config.epsilon,
            config.seed,
            config.cap,
            state_graph=state_graph,
            jitter=args.jitter,
            localize=not args.no_localize,
        )
        write_output(commands.format_report(report, loaded.labels), config.out_path)
        return EXIT_OK if report.passed else EXIT_FAIL

    rows, problems = commands.compliance(args.corpus, config.cap)
    write_output(commands.format_table(rows, commands.COMPLIANCE_COLUMNS, config.output_format), config.out_path)
    commands.check_mismatches(problems, 'compliance')
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    # List configs and exit
    if args.list:
        print("Available corpus graphs:")
        for name in list_configs():
            print(f"  - {name}")
        return EXIT_OK

    if not args.command:
        parser.error("Must specify a command")

    try:
        if args.command not in DEFAULT_PHI and args.phi:
            raise ValueError(f"--phi does not apply to {args.command}")
        phi_text = args.phi or DEFAULT_PHI.get(args.command, 'pi')

        config = RunConfig(
            command=args.command,
            graph_path=args.graph,
            phis=commands.parse_phi_grid(phi_text),
            epsilon=args.epsilon,
            seed=args.seed,
            cap=args.cap,
            output_format=args.format,
            out_path=args.out,
        )
        return run(config, args)

    except OracleMismatchError as e:
        logger.error(f"Oracle mismatch: {e}")
        return EXIT_MISMATCH
    except (ValueError, KeyError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
