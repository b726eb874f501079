#!/usr/bin/env python3
"""
ramsey-forge command line
Main CLI runner for enumeration, axiom checks and Ramsey searches
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

import yaml

from ramsey_forge.common.logging import ForgeLogger, configure_console
from ramsey_forge.common.output import render
from ramsey_forge.config import CRITERIA, OUTPUT_MODES, RunConfig, get_default_config
from ramsey_forge.errors import (BudgetExhaustedError, CapExceededError, ForgeError, UsageError)
from ramsey_forge.framework import (build_tree_instance, build_tree_space, check_domain_axioms,
                                    check_space_axioms, check_theorem, fragment_to_json)
from ramsey_forge.fullsets import fs_instance_check
from ramsey_forge.maps import (enumerate_embeddings, enumerate_rigid_surjections, format_map,
                               is_sealed)
from ramsey_forge.moore import moore_check
from ramsey_forge.trees import decode, encode, enumerate_trees
from ramsey_forge.witness import (KINDS, PARTITION_KINDS, build_instance, decide_witness,
                                  naive_oracle, search_min_witness)

logger = logging.getLogger("ramsey_forge.run")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2

MAP_KINDS = ('rigid', 'embedding')

# applied after --file is merged, so a file can still set them
LATE_DEFAULTS = {'colors': 2, 'kind': 'rigid'}

FLAGS = ('sealed', 'space_only', 'theorem', 'dump', 'oracle', 'check_swap', 'all', 'verbose')
INTEGERS = ('k', 'l', 'm', 'n', 'colors', 'max_nodes', 'binary_leaves', 'max_size', 'workers', 'budget',
            'cap', 'criterion')
STRINGS = ('S', 'T', 'U', 'source', 'target', 'kind', 'instance', 'output', 'artifacts')
CHOICES = {'kind': MAP_KINDS, 'instance': KINDS, 'output': OUTPUT_MODES, 'criterion': tuple(CRITERIA)}


class ForgeArgumentParser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so the caller picks the exit code"""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _instance_objects(args: argparse.Namespace, with_u: bool = True) -> Tuple[Any, Any, Any]:
    if args.instance in PARTITION_KINDS:
        names = ("k", "l", "m") if with_u else ("k", "l")
        missing = [f"--{n}" for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"--instance {args.instance} requires {', '.join(missing)}")
        return args.k, args.l, getattr(args, "m", None)
    names = ("S", "T", "U") if with_u else ("S", "T")
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--instance {args.instance} requires {', '.join(missing)}")
    return decode(args.S), decode(args.T), decode(args.U) if with_u else None


def cmd_trees_enumerate(args, config, run_logger) -> Dict[str, Any]:
    trees = list(enumerate_trees(args.max_nodes, binary_leaves=args.binary_leaves))
    return {
        "max_nodes": args.max_nodes,
        "count": len(trees),
        "rows": [{"index": i, "nodes": t.size, "tree": encode(t)} for i, t in enumerate(trees)],
    }


def cmd_maps_enumerate(args, config, run_logger) -> Dict[str, Any]:
    if args.source is None or args.target is None:
        raise UsageError("maps enumerate requires --source and --target")
    source, target = decode(args.source), decode(args.target)
    if args.kind == "embedding":
        maps = list(enumerate_embeddings(source, target))
    else:
        maps = list(enumerate_rigid_surjections(source, target, sealed_only=args.sealed))
    return {
        "kind": args.kind,
        "count": len(maps),
        "rows": [{"map": format_map(f), "sealed": is_sealed(f)} for f in maps],
    }


def cmd_axioms_check(args, config, run_logger) -> Dict[str, Any]:
    if args.space_only:
        space, _ = build_tree_space(args.max_nodes)
        return {"max_nodes": args.max_nodes, "points": len(space.A_elems),
                "space": check_space_axioms(space).to_json()}
    space, domain = build_tree_instance(args.max_nodes, config.fragment_set_cap)
    payload: Dict[str, Any] = {
        "max_nodes": args.max_nodes,
        "points": len(space.A_elems),
        "sets": len(domain.P_sets),
        "space": check_space_axioms(space).to_json(),
        "domain": check_domain_axioms(domain).to_json(),
    }
    if args.theorem:
        payload["theorem"] = check_theorem(domain, args.colors, config.node_budget).to_json()
    if args.dump:
        payload["fragment"] = fragment_to_json(space, domain)
    return payload


def cmd_witness_check(args, config, run_logger) -> Dict[str, Any]:
    S, T, U = _instance_objects(args)
    inst = build_instance(args.instance, S, T, U, args.colors, sealed=args.sealed)
    if args.oracle:
        verdict = naive_oracle(inst, config.oracle_cap)
    else:
        verdict = decide_witness(inst, config.node_budget, config.workers, config.split_depth)
    payload = verdict.to_json()
    payload["instance"] = {"kind": inst.kind, "colors": inst.colors,
                           "smalls": len(inst.smalls), "placements": len(inst.placements)}
    return payload


def cmd_witness_search(args, config, run_logger) -> Dict[str, Any]:
    if args.max_size is None:
        raise UsageError("witness search requires --max-size")
    S, T, _ = _instance_objects(args, with_u=False)
    outcome = search_min_witness(args.instance, S, T, args.colors, args.max_size, config.node_budget,
                                 config.workers, config.split_depth, sealed=args.sealed,
                                 run_logger=run_logger)
    payload = outcome.to_json()
    payload["rejected"] = [{"candidate": label, "bad_coloring": list(bad) if bad else None}
                           for label, bad in outcome.rejected]
    return payload


def cmd_moore_check(args, config, run_logger) -> Dict[str, Any]:
    if args.m is None or args.n is None:
        raise UsageError("moore check requires --m and --n")
    return moore_check(args.m, args.n, config.coloring_cap, config.workers, args.check_swap).to_json()


def _parse_factor(text: str) -> Tuple[int, int, int]:
    try:
        p, l, n = (int(x) for x in str(text).split(","))
    except ValueError:
        raise UsageError(f"--factor expects p,l,n, got {text!r}")
    return p, l, n


def cmd_fullsets_check(args, config, run_logger) -> Dict[str, Any]:
    if not args.factor:
        raise UsageError("fullsets check requires at least one --factor p,l,n")
    params = [_parse_factor(f) for f in args.factor]
    return fs_instance_check(params, args.colors, config.coloring_cap, config.workers).to_json()


def cmd_acceptance(args, config, run_logger) -> Dict[str, Any]:
    from ramsey_forge.acceptance.runner import run_all_criteria, run_single_criterion
    from ramsey_forge.common.scoreboard import generate_scoreboard

    if not args.all and args.criterion is None:
        raise UsageError("acceptance requires --all or --criterion N")
    if args.all:
        results = run_all_criteria(config)
    else:
        results = [run_single_criterion(args.criterion, config)]
    generate_scoreboard(results, config.artifacts_dir or "artifacts")
    if run_logger is not None:
        for r in results:
            run_logger.log_result(f"criterion_{r.get('criterion')}", r)
    return {
        "passed": all(r.get("passed") for r in results),
        "rows": [{"criterion": r.get("criterion"), "name": r.get("name"), "metric": r.get("metric"),
                  "value": r.get("value", "ERROR"), "passed": bool(r.get("passed"))} for r in results],
    }


def _common_flags() -> argparse.ArgumentParser:
    common = ForgeArgumentParser(add_help=False)
    common.add_argument('--output', choices=OUTPUT_MODES, help='Output mode (default: json)')
    common.add_argument('--workers', type=int, help='Worker processes for parallel splits')
    common.add_argument('--budget', type=int, help='Search budget in search-tree nodes')
    common.add_argument('--cap', type=int, help='Cap on exhaustively enumerated colorings')
    common.add_argument('--file', help='YAML file supplying argument values, e.g. "S: (()())"')
    common.add_argument('--artifacts', help='Directory for run logs and scoreboards')
    common.add_argument('--verbose', action='store_true', help='Log progress to stderr')
    return common


def _instance_flags(p: argparse.ArgumentParser):
    p.add_argument('--instance', choices=KINDS, required=True, help='Theorem shape')
    p.add_argument('--S', help='Small tree (canonical string)')
    p.add_argument('--T', help='Placement tree (canonical string)')
    p.add_argument('--k', type=int, help='Blocks of the colored partitions')
    p.add_argument('--l', type=int, help='Blocks of the placed partitions')
    p.add_argument('-c', '--colors', type=int, help='Number of colors (default: 2)')
    p.add_argument('--sealed', action='store_true', help='Use sealed rigid surjections only (dual-tree)')


def build_parser() -> ForgeArgumentParser:
    common = _common_flags()
    parser = ForgeArgumentParser(
        prog="ramsey_forge.run",
        description="Finite Ramsey theory: ordered trees, rigid surjections and exhaustive witness search",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m ramsey_forge.run trees enumerate --max-nodes 4
  python -m ramsey_forge.run maps enumerate --source "(()())" --target "(())"
  python -m ramsey_forge.run axioms check --max-nodes 3 --theorem
  python -m ramsey_forge.run witness check --instance gr --k 2 --l 3 --m 3 -c 2
  python -m ramsey_forge.run witness search --instance dual-tree --S "(())" --T "(()())" --max-size 5
  python -m ramsey_forge.run moore check --m 3 --n 4
  python -m ramsey_forge.run fullsets check --factor 2,1,2 -c 2
  python -m ramsey_forge.run acceptance --all --artifacts artifacts
        """,
    )
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')

    trees = commands.add_parser('trees').add_subparsers(dest='action', metavar='ACTION')
    p = trees.add_parser('enumerate', parents=[common], help='List ordered trees in canonical order')
    p.add_argument('--max-nodes', type=int, required=True)
    p.add_argument('--binary-leaves', type=int, help='Keep only binary trees with this many leaves')
    p.set_defaults(handler=cmd_trees_enumerate)

    maps = commands.add_parser('maps').add_subparsers(dest='action', metavar='ACTION')
    p = maps.add_parser('enumerate', parents=[common], help='List maps between two trees')
    p.add_argument('--source', help='Domain tree')
    p.add_argument('--target', help='Codomain tree')
    p.add_argument('--kind', choices=MAP_KINDS, help='Map family (default: rigid)')
    p.add_argument('--sealed', action='store_true')
    p.set_defaults(handler=cmd_maps_enumerate)

    axioms = commands.add_parser('axioms').add_subparsers(dest='action', metavar='ACTION')
    p = axioms.add_parser('check', parents=[common], help='Check axioms on the sealed tree fragment')
    p.add_argument('--max-nodes', type=int, required=True)
    p.add_argument('--space-only', action='store_true', help='Skip the set-level fragment')
    p.add_argument('--theorem', action='store_true', help='Also sweep (LP) and (R) over the fragment')
    p.add_argument('-c', '--colors', type=int, help='Number of colors (default: 2)')
    p.add_argument('--dump', action='store_true', help='Include the fragment tables')
    p.set_defaults(handler=cmd_axioms_check)

    witness = commands.add_parser('witness').add_subparsers(dest='action', metavar='ACTION')
    p = witness.add_parser('check', parents=[common], help='Decide whether U is a witness')
    _instance_flags(p)
    p.add_argument('--U', help='Candidate witness tree (canonical string)')
    p.add_argument('--m', type=int, help='Size of the ground set [m]')
    p.add_argument('--oracle', action='store_true', help='Decide by enumerating every coloring')
    p.set_defaults(handler=cmd_witness_check)
    p = witness.add_parser('search', parents=[common], help='Find the first witness in canonical order')
    _instance_flags(p)
    p.add_argument('--max-size', type=int, help='Largest candidate: node count, or m for partitions')
    p.set_defaults(handler=cmd_witness_search)

    moore = commands.add_parser('moore').add_subparsers(dest='action', metavar='ACTION')
    p = moore.add_parser('check', parents=[common], help='Sweep every 2-coloring of the n-leaf binary trees')
    p.add_argument('--m', type=int)
    p.add_argument('--n', type=int)
    p.add_argument('--check-swap', action='store_true', help='Also decide each complement coloring')
    p.set_defaults(handler=cmd_moore_check)

    fullsets = commands.add_parser('fullsets').add_subparsers(dest='action', metavar='ACTION')
    p = fullsets.add_parser('check', parents=[common], help='Sweep colorings of a product of partial-vector spaces')
    p.add_argument('--factor', action='append', help='One factor as p,l,n (repeatable)')
    p.add_argument('-c', '--colors', type=int, help='Number of colors (default: 2)')
    p.set_defaults(handler=cmd_fullsets_check)

    p = commands.add_parser('acceptance', parents=[common], help='Run the acceptance criteria')
    p.add_argument('--all', action='store_true', help='Run every criterion')
    p.add_argument('--criterion', type=int, choices=sorted(CRITERIA), help='Run one criterion')
    p.set_defaults(handler=cmd_acceptance)

    return parser


def _apply_file(args: argparse.Namespace):
    with open(args.file, "r") as f:
        values = yaml.safe_load(f) or {}
    if not isinstance(values, dict):
        raise UsageError(f"--file {args.file} must hold a mapping of argument names to values")
    for key, value in values.items():
        name = str(key).replace("-", "_")
        if not hasattr(args, name) or name not in FLAGS + INTEGERS + STRINGS + ('factor',):
            raise UsageError(f"--file {args.file}: unknown argument {key!r}")
        if getattr(args, name) in (None, False, []):
            setattr(args, name, _file_value(args.file, name, value))


def _file_value(path: str, name: str, value: Any) -> Any:
    """Convert a YAML value to what the matching flag would have parsed"""
    bad = UsageError(f"--file {path}: invalid value {value!r} for {name!r}")
    if name in FLAGS:
        if not isinstance(value, bool):
            raise bad
        return value
    if name == 'factor':
        items = value if isinstance(value, list) else [value]
        if any(isinstance(v, (dict, list)) for v in items):
            raise bad
        return [str(v) for v in items]
    if isinstance(value, (bool, dict, list)) or value is None:
        raise bad
    if name in INTEGERS:
        if isinstance(value, float):
            raise bad
        try:
            value = int(value)
        except ValueError:
            raise bad
    else:
        value = str(value)
    if name in CHOICES and value not in CHOICES[name]:
        raise bad
    return value


def _fill_defaults(args: argparse.Namespace):
    for name, value in LATE_DEFAULTS.items():
        if getattr(args, name, value) is None:
            setattr(args, name, value)


def _configure(args: argparse.Namespace) -> RunConfig:
    config = get_default_config()
    if args.output is not None:
        config.output = args.output
    if args.workers is not None:
        config.workers = args.workers
    if args.budget is not None:
        config.node_budget = args.budget
    if args.cap is not None:
        config.coloring_cap = args.cap
        config.oracle_cap = args.cap
    if args.artifacts is not None:
        config.artifacts_dir = args.artifacts
    config.validate()
    return config


def run(argv: List[str]) -> int:
    """Parse argv, execute one command, print its result; returns the exit code"""
    parser = build_parser()
    run_logger: Optional[ForgeLogger] = None
    try:
        args = parser.parse_args(argv)
        if getattr(args, 'handler', None) is None:
            raise UsageError("missing command; see --help")
        if args.file:
            _apply_file(args)
        _fill_defaults(args)
        configure_console(args.verbose)
        config = _configure(args)
        command = " ".join(x for x in (args.command, getattr(args, 'action', None)) if x)
        if config.artifacts_dir and args.command != 'acceptance':
            run_logger = ForgeLogger(config.artifacts_dir, command.replace(" ", "_"))
        logger.info(f"running {command}")
        payload = args.handler(args, config, run_logger)
        if run_logger is not None:
            run_logger.log_verdict(command, payload)
        print(render(payload, config.output))
        if args.command == 'acceptance' and not payload["passed"]:
            return EXIT_FAILED
        return EXIT_OK
    except (BudgetExhaustedError, CapExceededError) as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ForgeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if run_logger is not None:
            run_logger.save_results()


def main():
    """Main CLI entry point"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
