"""
Acceptance evaluations, one function per criterion

Each returns {"value", "passed", "notes"}; the runner adds name, metric and
timing from config.CRITERIA.
"""
import contextlib
import io
import itertools
import logging
import random
from typing import Any, Dict, List

from ramsey_forge.config import RunConfig
from ramsey_forge.errors import InstanceError
from ramsey_forge.framework import build_tree_instance, check_domain_axioms, check_space_axioms, check_theorem
from ramsey_forge.fullsets import (enumerate_space, fs_instance_check, is_full, restrict, translate,
                                   validate_certificate)
from ramsey_forge.lp import fourier_motzkin_feasible
from ramsey_forge.maps import (GaloisPair, TreeMap, enumerate_rigid_surjections, galois_verify,
                               is_morphism, rigid_adjoint)
from ramsey_forge.moore import coloring_from_int, convex_lp, feasibility, moore_check, verify_alpha
from ramsey_forge.partitions import enumerate_partitions, from_rigid_surjection, stirling2, to_rigid_surjection
from ramsey_forge.trees import (Order, binary_trees, enumerate_trees, lex_compare, lex_leq_by_definition,
                                path_tree)
from ramsey_forge.witness import (build_instance, decide_witness, naive_oracle, verify_bad_coloring, with_colors,
                                  without_placement)

logger = logging.getLogger("ramsey_forge.acceptance")

CATALAN = [1, 1, 2, 5, 14]
MONOTONICITY_SAMPLES = 40


def _result(value: int, notes: str = "") -> Dict[str, Any]:
    return {"value": value, "passed": value == 0, "notes": notes}


def enumeration_counts(config: RunConfig) -> Dict[str, Any]:
    mismatches = 0
    all_trees = list(enumerate_trees(5))
    for n in range(1, 6):
        if sum(1 for t in all_trees if t.size == n) != CATALAN[n - 1]:
            mismatches += 1
        if len(binary_trees(n)) != CATALAN[n - 1]:
            mismatches += 1
    for m in range(1, 7):
        for k in range(1, m + 1):
            if sum(1 for _ in enumerate_partitions(m, k)) != stirling2(m, k):
                mismatches += 1
    return _result(mismatches, "trees and binary trees to 5, partitions of [m] for m <= 6")


def order_agreement(config: RunConfig) -> Dict[str, Any]:
    mismatches = 0
    pairs = 0
    for t in enumerate_trees(6):
        for v in range(t.size):
            for w in range(t.size):
                pairs += 1
                if (lex_compare(t, v, w) != Order.GREATER) != lex_leq_by_definition(t, v, w):
                    mismatches += 1
    return _result(mismatches, f"{pairs} node pairs compared")


def path_surjections(config: RunConfig) -> Dict[str, Any]:
    mismatches = 0
    expected = {(3, 2): 3, (4, 2): 7, (4, 3): 6}
    for (m, k), count in expected.items():
        if len(list(enumerate_rigid_surjections(path_tree(m), path_tree(k)))) != count:
            mismatches += 1
    for m in range(1, 6):
        for k in range(1, m + 1):
            maps = list(enumerate_rigid_surjections(path_tree(m), path_tree(k)))
            parts = list(enumerate_partitions(m, k))
            if {from_rigid_surjection(f) for f in maps} != set(parts) or len(maps) != len(parts):
                mismatches += 1
            if any(from_rigid_surjection(to_rigid_surjection(p)) != p for p in parts):
                mismatches += 1
    return _result(mismatches, "paths [m] -> [k] for m <= 5")


def galois_laws(config: RunConfig) -> Dict[str, Any]:
    violations = 0
    checked = 0
    sources = list(enumerate_trees(5))
    targets = list(enumerate_trees(4))
    for t in sources:
        for s in targets:
            for f in enumerate_rigid_surjections(t, s):
                checked += 1
                pair = rigid_adjoint(f)
                if pair is None or not galois_verify(pair):
                    violations += 1
                    continue
                adjoints = []
                for image in itertools.product(range(t.size), repeat=s.size):
                    e = TreeMap(s, t, image)
                    if is_morphism(e) and galois_verify(GaloisPair(f, e)):
                        adjoints.append(e)
                if adjoints != [pair.e]:
                    violations += 1
    return _result(violations, f"{checked} rigid surjections with |T| <= 5, |S| <= 4")


def tree_instance_axioms(config: RunConfig) -> Dict[str, Any]:
    space, domain = build_tree_instance(3, config.fragment_set_cap)
    reports = [check_space_axioms(space), check_domain_axioms(domain)]
    failures = [r.name for report in reports for r in report.results if not r.passed]
    return _result(len(failures), ", ".join(failures) or f"{len(space.A_elems)} points, {len(domain.P_sets)} sets")


def pigeonhole_implies_ramsey(config: RunConfig) -> Dict[str, Any]:
    _, domain = build_tree_instance(3, config.fragment_set_cap)
    report = check_theorem(domain, 2, config.node_budget)
    value = len(report.counterexamples) + (0 if report.implication_holds else 1)
    return _result(value, f"(LP) fails at {len(report.lp_failures)} fibers, (R) at {len(report.r_failures)} sets")


def _engine_instances(config: RunConfig) -> List:
    small = list(enumerate_trees(3))
    hosts = list(enumerate_trees(4))
    specs = []
    for S, T, U in itertools.product(small, small, hosts):
        specs.append(("dual-tree", S, T, U))
        specs.append(("leeb", S, T, U))
    for k, l, m in itertools.product(range(1, 6), repeat=3):
        if k <= l <= m:
            specs.append(("gr", k, l, m))
            specs.append(("gr-homogeneous", k, l, m))
    instances = []
    for kind, S, T, U in specs:
        for c in (1, 2):
            try:
                inst = build_instance(kind, S, T, U, c)
            except InstanceError:
                continue
            if c ** len(inst.smalls) <= config.oracle_cap:
                instances.append(inst)
    return instances


def _monotonicity_violations(instances: List, config: RunConfig) -> int:
    """Sampled check: bad colorings stay bad with one placement fewer or one color more"""
    rng = random.Random(config.seed)
    verdicts = [(inst, decide_witness(inst, config.node_budget)) for inst in instances]
    losing = [(inst, v.bad_coloring) for inst, v in verdicts if not v.is_witness]
    violations = 0
    for inst, bad in rng.sample(losing, min(MONOTONICITY_SAMPLES, len(losing))):
        if inst.placements:
            smaller = without_placement(inst, rng.randrange(len(inst.placements)))
            if not verify_bad_coloring(smaller, bad) or decide_witness(smaller, config.node_budget).is_witness:
                violations += 1
        wider = with_colors(inst, inst.colors + 1)
        if not verify_bad_coloring(wider, bad) or decide_witness(wider, config.node_budget).is_witness:
            violations += 1
    return violations


def engine_vs_oracle(config: RunConfig) -> Dict[str, Any]:
    disagreements = 0
    instances = _engine_instances(config)
    for inst in instances:
        fast = decide_witness(inst, config.node_budget)
        slow = naive_oracle(inst, config.oracle_cap)
        if (fast.verdict, fast.bad_coloring) != (slow.verdict, slow.bad_coloring):
            disagreements += 1
            logger.warning(f"engine and oracle disagree on a {inst.kind} instance")
    if decide_witness(build_instance("gr", 2, 3, 3, 2), config.node_budget).is_witness:
        disagreements += 1
    for t in enumerate_trees(3):
        if not decide_witness(build_instance("dual-tree", t, t, t, 2), config.node_budget).is_witness:
            disagreements += 1
    disagreements += _monotonicity_violations(instances, config)
    return _result(disagreements, f"{len(instances)} instances within the oracle cap")


def convex_sweep(config: RunConfig) -> Dict[str, Any]:
    disagreements = 0
    for n in range(2, 5):
        if not moore_check(2, n, config.coloring_cap).holds:
            disagreements += 1
    size = len(binary_trees(4))
    for x in range(1 << size):
        coloring = coloring_from_int(x, size)
        result = feasibility(coloring, 3, 4)
        lp, _ = convex_lp(coloring, 3, 4)
        if result.feasible != fourier_motzkin_feasible(lp):
            disagreements += 1
        if result.feasible and not verify_alpha(coloring, 3, 4, result.alpha):
            disagreements += 1
    sweep = moore_check(3, 4, config.coloring_cap)
    return _result(disagreements, f"moore(3,4): {'holds' if sweep.holds else 'fails at ' + str(sweep.counterexample)}")


def _full_by_definition(L, n: int, l: int, p: int) -> bool:
    members = set(L)
    for h in itertools.product(range(p), repeat=n):
        for a in range(1 << n):
            if bin(a).count("1") != n - l:
                continue
            if all(any(restrict(translate(h, r, p), ar) in members
                       for ar in range(1 << n) if ar & a == a)
                   for r in range(p)):
                return True
    return False


def full_sets(config: RunConfig) -> Dict[str, Any]:
    disagreements = 0
    space = list(enumerate_space(2, 1, 2))
    for bits in range(1 << len(space)):
        L = [x for i, x in enumerate(space) if bits >> i & 1]
        cert = is_full(L, 2, 1, 2)
        if (cert is not None) != _full_by_definition(L, 2, 1, 2):
            disagreements += 1
        if cert is not None and not validate_certificate(L, cert, 2, 1, 2):
            disagreements += 1
    verdicts = []
    for n in (1, 2):
        result = fs_instance_check([(2, 1, n)], 2, config.coloring_cap)
        if result.holds and not result.sample_box:
            disagreements += 1
        verdicts.append(f"n={n}: {'holds' if result.holds else 'fails'} ({result.colorings_checked} colorings)")
    return _result(disagreements, "; ".join(verdicts))


DETERMINISM_COMMANDS = [
    ["trees", "enumerate", "--max-nodes", "4"],
    ["maps", "enumerate", "--source", "((()))", "--target", "(())"],
    ["axioms", "check", "--max-nodes", "2"],
    ["witness", "check", "--instance", "gr", "--k", "2", "--l", "3", "--m", "3", "-c", "2"],
    ["witness", "check", "--instance", "dual-tree", "--S", "(())", "--T", "(()())", "--U", "(()(()))"],
    ["witness", "search", "--instance", "gr", "--k", "1", "--l", "2", "--max-size", "3"],
    ["moore", "check", "--m", "3", "--n", "4"],
    ["fullsets", "check", "--factor", "2,1,1", "-c", "2"],
]


def _capture(argv: List[str]) -> str:
    from ramsey_forge.run import run

    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = run(argv)
    return f"{code}\n{out.getvalue()}"


def determinism(config: RunConfig) -> Dict[str, Any]:
    differing = 0
    for argv in DETERMINISM_COMMANDS:
        first = _capture(argv)
        if _capture(argv) != first or _capture(argv + ["--workers", "2"]) != first:
            differing += 1
            logger.warning(f"output differs across runs: {' '.join(argv)}")
    return _result(differing, f"{len(DETERMINISM_COMMANDS)} commands, workers 1 and 2")


EVALUATIONS = {
    1: enumeration_counts,
    2: order_agreement,
    3: path_surjections,
    4: galois_laws,
    5: tree_instance_axioms,
    6: pigeonhole_implies_ramsey,
    7: engine_vs_oracle,
    8: convex_sweep,
    9: full_sets,
    10: determinism,
}
