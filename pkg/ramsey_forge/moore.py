"""
Convex Ramsey statement for binary trees under grafting

For a 2-coloring of the binary trees with n leaves, ask for non-negative
rationals α over all m-tuples of binary trees with n leaves in total,
summing to 1, such that Σ_U α_U·color(graft(T, U)) is the same for every
binary tree T with m leaves.
"""
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ramsey_forge.common.pool import ordered_map
from ramsey_forge.errors import ArityError, CapExceededError
from ramsey_forge.lp import RationalLP, simplex_feasible
from ramsey_forge.trees import OrderedTree, binary_trees, decode, encode, is_binary

logger = logging.getLogger("ramsey_forge.moore")

SWEEP_CHUNK = 64


@dataclass(frozen=True)
class GraftTuple:
    parts: Tuple[OrderedTree, ...]

    def __post_init__(self):
        if not self.parts:
            raise ArityError("a graft tuple has at least one part")
        for u in self.parts:
            if not is_binary(u):
                raise ArityError(f"graft part {encode(u)} is not binary")

    @property
    def total_leaves(self) -> int:
        return sum(len(u.leaves()) for u in self.parts)

    def __str__(self) -> str:
        return "[" + ", ".join(encode(u) for u in self.parts) + "]"


def graft(t: OrderedTree, u: GraftTuple) -> OrderedTree:
    """Identify the root of the i-th part with the i-th leaf of t (leaves in preorder)"""
    if not is_binary(t):
        raise ArityError(f"{encode(t)} is not binary")
    text = encode(t)
    # in canonical text every "()" is a leaf, met in preorder
    pieces = text.split("()")
    if len(pieces) - 1 != len(u.parts):
        raise ArityError(f"{encode(t)} has {len(pieces) - 1} leaves but the tuple has {len(u.parts)} parts")
    out = [pieces[0]]
    for part, piece in zip(u.parts, pieces[1:]):
        out.append(encode(part))
        out.append(piece)
    return decode("".join(out))


def compositions(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of n into m positive parts, lexicographically"""
    if m == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - m + 2):
        for rest in compositions(n - first, m - 1):
            yield (first,) + rest


def graft_tuples(m: int, n: int) -> List[GraftTuple]:
    """Every m-tuple of binary trees with n leaves in total, in variable order"""
    out: List[GraftTuple] = []
    for comp in compositions(n, m):
        choices = [binary_trees(k) for k in comp]

        def build(i: int, acc: Tuple[OrderedTree, ...]):
            if i == len(choices):
                out.append(GraftTuple(acc))
                return
            for u in choices[i]:
                build(i + 1, acc + (u,))

        build(0, ())
    return out


def coloring_from_int(x: int, size: int) -> Tuple[int, ...]:
    """Bit i of x is the color of the i-th tree"""
    return tuple((x >> i) & 1 for i in range(size))


def bitstring(coloring: Sequence[int]) -> str:
    return "".join(str(v) for v in coloring)


def convex_lp(coloring: Sequence[int], m: int, n: int) -> Tuple[RationalLP, List[GraftTuple]]:
    """Variables α_U per tuple plus the common value z; one row per T and Σα = 1"""
    targets = binary_trees(n)
    if len(coloring) != len(targets):
        raise ArityError(f"coloring has {len(coloring)} entries for {len(targets)} trees")
    color = {encode(t): c for t, c in zip(targets, coloring)}
    tuples = graft_tuples(m, n)
    lp = RationalLP([str(u) for u in tuples] + ["z"])
    for t in binary_trees(m):
        lp.add_equality([color[encode(graft(t, u))] for u in tuples] + [-1], 0)
    lp.add_equality([1] * len(tuples) + [0], 1)
    return lp, tuples


@dataclass
class Feasibility:
    feasible: bool
    alpha: Optional[List[Fraction]] = None
    value: Optional[Fraction] = None
    reason: Optional[str] = None

    def to_json(self) -> Dict:
        return {
            "feasible": self.feasible,
            "alpha": [str(a) for a in self.alpha] if self.alpha is not None else None,
            "value": str(self.value) if self.value is not None else None,
            "reason": self.reason,
        }


def feasibility(coloring: Sequence[int], m: int, n: int) -> Feasibility:
    if n < m:
        return Feasibility(False, reason=f"n={n} < m={m}: no graft tuples")
    lp, tuples = convex_lp(coloring, m, n)
    x = simplex_feasible(lp)
    if x is None:
        return Feasibility(False, reason="constancy constraints are infeasible")
    return Feasibility(True, alpha=x[:len(tuples)], value=x[-1])


def verify_alpha(coloring: Sequence[int], m: int, n: int, alpha: Sequence[Fraction]) -> bool:
    """Substitute α back: non-negative, summing to 1, equal sums across every T"""
    tuples = graft_tuples(m, n)
    if len(alpha) != len(tuples) or any(a < 0 for a in alpha) or sum(alpha) != 1:
        return False
    color = {encode(t): c for t, c in zip(binary_trees(n), coloring)}
    sums = {sum((a * color[encode(graft(t, u))] for a, u in zip(alpha, tuples)), Fraction(0))
            for t in binary_trees(m)}
    return len(sums) == 1


@dataclass
class _ChunkResult:
    checked: int
    failing: Optional[int] = None
    swap_mismatch: Optional[int] = None


def _sweep_chunk(m: int, n: int, size: int, check_swap: bool, bounds: Tuple[int, int]) -> _ChunkResult:
    lo, hi = bounds
    full = (1 << size) - 1
    checked = 0
    for x in range(lo, hi):
        checked += 1
        verdict = feasibility(coloring_from_int(x, size), m, n).feasible
        if check_swap and feasibility(coloring_from_int(x ^ full, size), m, n).feasible != verdict:
            return _ChunkResult(checked, swap_mismatch=x)
        if not verdict:
            return _ChunkResult(checked, failing=x)
    return _ChunkResult(checked)


@dataclass
class MooreResult:
    m: int
    n: int
    colorings_checked: int
    holds: bool
    counterexample: Optional[str]
    sample_alpha: List[str]
    wall_time: float = 0.0

    def to_json(self) -> Dict:
        return {
            "m": self.m,
            "n": self.n,
            "colorings_checked": self.colorings_checked,
            "verdict": "holds" if self.holds else "fails",
            "counterexample": self.counterexample,
            "sample_alpha": self.sample_alpha,
        }


def moore_check(m: int, n: int, cap: int, workers: int = 1, check_swap: bool = False) -> MooreResult:
    """Sweep every 2-coloring of the n-leaf binary trees, one per complement pair

    Colorings are integers in ascending order; the top bit is kept 0 since a
    coloring and its complement are decided alike. The counterexample is the
    least failing coloring.
    """
    if m < 1 or n < m:
        raise ArityError(f"need 1 <= m <= n, got m={m}, n={n}")
    start = time.time()
    size = len(binary_trees(n))
    required = 1 << size
    if required > cap:
        raise CapExceededError(cap, required)
    limit = 1 << (size - 1)
    chunks = [(lo, min(lo + SWEEP_CHUNK, limit)) for lo in range(0, limit, SWEEP_CHUNK)]
    first = feasibility(coloring_from_int(0, size), m, n)
    sample = [str(a) for a in first.alpha] if first.alpha is not None else []
    checked = 0
    run = partial(_sweep_chunk, m, n, size, check_swap)
    for result in ordered_map(run, chunks, workers):
        checked += result.checked
        if result.swap_mismatch is not None:
            raise ArithmeticError(f"coloring {result.swap_mismatch} and its complement are decided differently")
        if result.failing is not None:
            logger.info(f"coloring {result.failing} of the {n}-leaf trees is infeasible for m={m}")
            return MooreResult(m, n, checked, False, bitstring(coloring_from_int(result.failing, size)),
                               sample, time.time() - start)
    return MooreResult(m, n, checked, True, None, sample, time.time() - start)
