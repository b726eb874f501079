"""
Ramsey witness decision engine

An instance lists small objects, placements, and for every placement the set
of small objects it induces. It is a witness for c colors when every
c-coloring of the small objects leaves some placement's induced set
monochromatic. The engine searches for a bad coloring (one leaving every
placement polychromatic); failing to find one proves the witness property.
"""
import itertools
import logging
import time
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ramsey_forge.common.pool import ordered_map
from ramsey_forge.errors import BudgetExhaustedError, CapExceededError, EmptyPlacementsError, InstanceError
from ramsey_forge.maps import (TreeMap, compose, copies, enumerate_embeddings, enumerate_rigid_surjections,
                               format_map)
from ramsey_forge.partitions import from_rigid_surjection
from ramsey_forge.trees import OrderedTree, encode, enumerate_trees, path_tree

logger = logging.getLogger("ramsey_forge.witness")

KINDS = ("dual-tree", "leeb", "gr", "gr-homogeneous")
PARTITION_KINDS = ("gr", "gr-homogeneous")

WITNESS = "witness"
NOT_WITNESS = "not_witness"

DEAD = -2


@dataclass(frozen=True)
class ColoringInstance:
    kind: str
    smalls: Tuple[str, ...]
    placements: Tuple[str, ...]
    induced: Tuple[Tuple[int, ...], ...]
    colors: int

    def __post_init__(self):
        if self.colors < 1:
            raise InstanceError(f"need at least one color, got {self.colors}")
        if len(self.induced) != len(self.placements):
            raise InstanceError("one induced set is required per placement")
        for i, members in enumerate(self.induced):
            if not members:
                raise InstanceError(f"placement {self.placements[i]} induces no small object")
            if any(not 0 <= s < len(self.smalls) for s in members):
                raise InstanceError(f"placement {self.placements[i]} induces an index out of range")


@dataclass
class WitnessVerdict:
    verdict: str
    bad_coloring: Optional[Tuple[int, ...]]
    nodes: int
    wall_time: float = 0.0
    candidates_tried: int = 0

    @property
    def is_witness(self) -> bool:
        return self.verdict == WITNESS

    def to_json(self) -> Dict:
        return {
            "verdict": self.verdict,
            "bad_coloring": list(self.bad_coloring) if self.bad_coloring is not None else None,
            "nodes": self.nodes,
            "candidates_tried": self.candidates_tried,
        }


def _dual_maps(S: OrderedTree, T: OrderedTree, U: OrderedTree, sealed: bool
               ) -> Tuple[List[TreeMap], List[TreeMap], Tuple[Tuple[int, ...], ...]]:
    patterns = list(enumerate_rigid_surjections(T, S, sealed_only=sealed))
    if not patterns:
        raise InstanceError(f"no rigid surjection {encode(T)} -> {encode(S)}; induced sets would be empty")
    placements = list(enumerate_rigid_surjections(U, T, sealed_only=sealed))
    if not placements:
        raise EmptyPlacementsError(f"no rigid surjection {encode(U)} -> {encode(T)}")
    smalls = list(enumerate_rigid_surjections(U, S, sealed_only=sealed))
    where = {g.image: i for i, g in enumerate(smalls)}
    induced = tuple(tuple(sorted({where[compose(f, g0).image] for f in patterns})) for g0 in placements)
    return smalls, placements, induced


def _dual_tree(S: OrderedTree, T: OrderedTree, U: OrderedTree, c: int, sealed: bool) -> ColoringInstance:
    smalls, placements, induced = _dual_maps(S, T, U, sealed)
    return ColoringInstance("dual-tree", tuple(format_map(g) for g in smalls),
                            tuple(format_map(g) for g in placements), induced, c)


def _leeb(S: OrderedTree, T: OrderedTree, U: OrderedTree, c: int) -> ColoringInstance:
    inner = list(enumerate_embeddings(S, T))
    if not inner:
        raise InstanceError(f"{encode(S)} has no copy in {encode(T)}; induced sets would be empty")
    outer = list(enumerate_embeddings(T, U))
    if not outer:
        raise EmptyPlacementsError(f"{encode(T)} has no copy in {encode(U)}")
    smalls = copies(S, U)
    where = {image: i for i, image in enumerate(smalls)}
    induced = tuple(tuple(sorted(where[compose(e, d).image] for d in inner)) for e in outer)
    label = lambda image: ",".join(str(v) for v in image)
    return ColoringInstance("leeb", tuple(label(s) for s in smalls),
                            tuple(label(e.image) for e in outer), induced, c)


def _graham_rothschild(k: int, l: int, m: int, c: int, homogeneous: bool) -> ColoringInstance:
    if not 1 <= k <= l:
        raise InstanceError(f"need 1 <= k <= l, got k={k}, l={l}")
    if homogeneous and l % k:
        raise InstanceError(f"a homogeneous {l}-partition has no homogeneous {k}-subpartition unless {k} divides {l}")
    # partitions of [m] are the rigid surjections between path trees
    smalls, placements, induced = _dual_maps(path_tree(k), path_tree(l), path_tree(m), sealed=False)
    parts = [from_rigid_surjection(g) for g in smalls]
    quotients = [from_rigid_surjection(g) for g in placements]
    if not homogeneous:
        return ColoringInstance("gr", tuple(str(p) for p in parts), tuple(str(q) for q in quotients),
                                induced, c)
    keep = [i for i, p in enumerate(parts) if p.is_homogeneous()]
    renumber = {old: new for new, old in enumerate(keep)}
    kept_placements, kept_induced = [], []
    for q, members in zip(quotients, induced):
        if not q.is_homogeneous():
            continue
        kept_placements.append(str(q))
        kept_induced.append(tuple(renumber[s] for s in members if s in renumber))
    if not kept_placements:
        raise EmptyPlacementsError(f"no homogeneous {l}-partition of [{m}]")
    return ColoringInstance("gr-homogeneous", tuple(str(parts[i]) for i in keep),
                            tuple(kept_placements), tuple(kept_induced), c)


def build_instance(kind: str, S: Union[OrderedTree, int], T: Union[OrderedTree, int],
                   U: Union[OrderedTree, int], c: int, sealed: bool = False) -> ColoringInstance:
    """Build the coloring instance of one theorem shape

    dual-tree: smalls RS(U,S), placements RS(U,T), induced {f∘g0 : f ∈ RS(T,S)}
    leeb:      smalls copies of S in U, placements copies T' of T, induced copies of S in T'
    gr:        S, T, U are k, l, m; partitions of [m] with the subpartition relation
    gr-homogeneous: gr restricted to homogeneous partitions at both levels
    """
    if kind == "dual-tree":
        return _dual_tree(S, T, U, c, sealed)
    if kind == "leeb":
        return _leeb(S, T, U, c)
    if kind in PARTITION_KINDS:
        return _graham_rothschild(int(S), int(T), int(U), c, homogeneous=(kind == "gr-homogeneous"))
    raise InstanceError(f"unknown instance kind {kind!r}; expected one of {KINDS}")


def with_colors(inst: ColoringInstance, c: int) -> ColoringInstance:
    return replace(inst, colors=c)


def without_placement(inst: ColoringInstance, index: int) -> ColoringInstance:
    return replace(inst,
                   placements=inst.placements[:index] + inst.placements[index + 1:],
                   induced=inst.induced[:index] + inst.induced[index + 1:])


def extend_coloring(inst: ColoringInstance, coloring: Sequence[int],
                    colors: int) -> Tuple[ColoringInstance, Tuple[int, ...]]:
    """Carry a bad coloring over to the same instance with more colors available"""
    if colors < inst.colors:
        raise InstanceError(f"cannot shrink the palette from {inst.colors} to {colors} colors")
    wider = with_colors(inst, colors)
    if not verify_bad_coloring(wider, coloring):
        raise InstanceError("coloring is not bad for this instance")
    return wider, tuple(coloring)


def verify_bad_coloring(inst: ColoringInstance, coloring: Sequence[int]) -> bool:
    """Independent re-check: every placement sees at least two colors"""
    if len(coloring) != len(inst.smalls):
        return False
    if any(not 0 <= x < inst.colors for x in coloring):
        return False
    return all(len({coloring[s] for s in members}) >= 2 for members in inst.induced)


class _ColoringSearch:
    """Depth-first search for a bad coloring with color-permutation symmetry breaking"""

    def __init__(self, inst: ColoringInstance, budget: int, in_index_order: bool = False):
        self.inst = inst
        self.budget = budget
        self.in_index_order = in_index_order
        self.nodes = 0
        self.containing: List[List[int]] = [[] for _ in inst.smalls]
        for p, members in enumerate(inst.induced):
            for s in members:
                self.containing[s].append(p)
        self.colors = [-1] * len(inst.smalls)
        self.seen = [-1] * len(inst.placements)
        self.open = [len(members) for members in inst.induced]
        self.live = len(inst.placements)

    def assign(self, s: int, x: int) -> Tuple[bool, List[Tuple[int, int]]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhaustedError(self.budget, self.nodes)
        self.colors[s] = x
        trail: List[Tuple[int, int]] = []
        conflict = False
        for p in self.containing[s]:
            self.open[p] -= 1
            prev = self.seen[p]
            if prev == -1:
                self.seen[p] = x
                trail.append((p, prev))
            elif prev >= 0 and prev != x:
                self.seen[p] = DEAD
                self.live -= 1
                trail.append((p, prev))
            if self.open[p] == 0 and self.seen[p] >= 0:
                conflict = True
        return conflict, trail

    def undo(self, s: int, trail: List[Tuple[int, int]]):
        for p in self.containing[s]:
            self.open[p] += 1
        for p, prev in reversed(trail):
            if self.seen[p] == DEAD:
                self.live += 1
            self.seen[p] = prev
        self.colors[s] = -1

    def replay(self, prefix: Sequence[Tuple[int, int]]):
        for s, x in prefix:
            self.colors[s] = x
            for p in self.containing[s]:
                self.open[p] -= 1
                prev = self.seen[p]
                if prev == -1:
                    self.seen[p] = x
                elif prev >= 0 and prev != x:
                    self.seen[p] = DEAD
                    self.live -= 1

    def choose(self) -> Optional[int]:
        """Unassigned small object in the most live placements; ties to the smallest index

        In index order the smallest unassigned index is taken, so the first
        bad coloring reached is the lexicographically least one.
        """
        if self.in_index_order:
            return next((s for s, x in enumerate(self.colors) if x == -1), None)
        best, best_score = None, -1
        for s, x in enumerate(self.colors):
            if x != -1:
                continue
            score = sum(1 for p in self.containing[s] if self.seen[p] != DEAD)
            if score > best_score:
                best, best_score = s, score
        return best

    def completed(self) -> Tuple[int, ...]:
        return tuple(x if x != -1 else 0 for x in self.colors)

    def color_choices(self, top: int) -> range:
        return range(min(top + 1, self.inst.colors - 1) + 1)

    def dfs(self, top: int) -> Optional[Tuple[int, ...]]:
        if self.live == 0:
            return self.completed()
        s = self.choose()
        if s is None:
            return None
        for x in self.color_choices(top):
            conflict, trail = self.assign(s, x)
            found = None if conflict else self.dfs(max(top, x))
            self.undo(s, trail)
            if found is not None:
                return found
        return None

    def frontier(self, depth: int) -> List[Tuple[Tuple[Tuple[int, int], ...], int]]:
        """Non-conflicting partial colorings at the given depth, in search order

        Each entry is (assignments, highest color used). A prefix that is
        already a bad coloring is kept whole as its own entry.
        """
        out: List[Tuple[Tuple[Tuple[int, int], ...], int]] = []
        path: List[Tuple[int, int]] = []

        def walk(top: int):
            if self.live == 0 or len(path) == depth:
                out.append((tuple(path), top))
                return
            s = self.choose()
            if s is None:
                return
            for x in self.color_choices(top):
                conflict, trail = self.assign(s, x)
                if not conflict:
                    path.append((s, x))
                    walk(max(top, x))
                    path.pop()
                self.undo(s, trail)

        walk(-1)
        return out


@dataclass
class _SubtreeResult:
    nodes: int
    coloring: Optional[Tuple[int, ...]] = None
    exhausted: bool = False


def _run_subtree(inst: ColoringInstance, budget: int,
                 entry: Tuple[Tuple[Tuple[int, int], ...], int]) -> _SubtreeResult:
    prefix, top = entry
    search = _ColoringSearch(inst, budget)
    search.replay(prefix)
    try:
        found = search.dfs(top)
    except BudgetExhaustedError:
        return _SubtreeResult(search.nodes, exhausted=True)
    return _SubtreeResult(search.nodes, found)


def decide_witness(inst: ColoringInstance, budget: int, workers: int = 1,
                   split_depth: int = 0) -> WitnessVerdict:
    """Decide the witness property, or raise BudgetExhaustedError

    The search tree is cut at split_depth into subtrees handled in order; with
    workers > 1 they are computed ahead in parallel. Once some subtree holds a
    bad coloring, a search in small-index order fetches the lexicographically
    least one, which is what gets reported. The verdict, the bad coloring and
    the node count depend only on the instance, budget and split depth.
    """
    start = time.time()
    root = _ColoringSearch(inst, budget)
    entries = root.frontier(split_depth)
    nodes = root.nodes
    run = partial(_run_subtree, inst, budget - nodes)
    for result in ordered_map(run, entries, workers):
        nodes += result.nodes
        if result.exhausted or nodes > budget:
            raise BudgetExhaustedError(budget, nodes, inst.kind)
        if result.coloring is not None:
            least, nodes = _least_bad_coloring(inst, budget, nodes)
            if not verify_bad_coloring(inst, least):
                raise AssertionError(f"search returned a coloring that re-verification rejects: {least}")
            return WitnessVerdict(NOT_WITNESS, least, nodes, time.time() - start)
    return WitnessVerdict(WITNESS, None, nodes, time.time() - start)


def _least_bad_coloring(inst: ColoringInstance, budget: int, nodes: int) -> Tuple[Tuple[int, ...], int]:
    """Lexicographically least bad coloring of an instance known to have one"""
    search = _ColoringSearch(inst, budget - nodes, in_index_order=True)
    try:
        found = search.dfs(-1)
    except BudgetExhaustedError:
        raise BudgetExhaustedError(budget, nodes + search.nodes, inst.kind)
    if found is None:
        raise AssertionError("index-order search missed a bad coloring the split search found")
    return found, nodes + search.nodes


def naive_oracle(inst: ColoringInstance, cap: int) -> WitnessVerdict:
    """Enumerate all colorings outright; same semantics as decide_witness"""
    start = time.time()
    required = inst.colors ** len(inst.smalls)
    if required > cap:
        raise CapExceededError(cap, required)
    tried = 0
    for coloring in itertools.product(range(inst.colors), repeat=len(inst.smalls)):
        tried += 1
        if verify_bad_coloring(inst, coloring):
            return WitnessVerdict(NOT_WITNESS, tuple(coloring), tried, time.time() - start)
    return WitnessVerdict(WITNESS, None, tried, time.time() - start)


@dataclass
class SearchOutcome:
    witness: Optional[str]
    verdict: Optional[WitnessVerdict]
    candidates_tried: int
    rejected: List[Tuple[str, Optional[Tuple[int, ...]]]] = field(default_factory=list)

    def to_json(self) -> Dict:
        body = self.verdict.to_json() if self.verdict else {
            "verdict": NOT_WITNESS, "bad_coloring": None, "nodes": 0}
        body["candidates_tried"] = self.candidates_tried
        body["witness"] = self.witness
        return body


def _candidates(kind: str, max_size: int) -> Iterator[Union[OrderedTree, int]]:
    if kind in PARTITION_KINDS:
        yield from range(1, max_size + 1)
    else:
        yield from enumerate_trees(max_size)


def search_min_witness(kind: str, S: Union[OrderedTree, int], T: Union[OrderedTree, int], c: int,
                       max_size: int, budget: int, workers: int = 1, split_depth: int = 0,
                       sealed: bool = False, run_logger=None) -> SearchOutcome:
    """First witness U in canonical order (node count, then string; or m ascending)"""
    outcome = SearchOutcome(None, None, 0)
    for U in _candidates(kind, max_size):
        label = str(U) if kind in PARTITION_KINDS else encode(U)
        try:
            inst = build_instance(kind, S, T, U, c, sealed=sealed)
        except EmptyPlacementsError as e:
            logger.info(f"candidate {label} rejected: {e}")
            outcome.rejected.append((label, None))
            continue
        outcome.candidates_tried += 1
        verdict = decide_witness(inst, budget, workers, split_depth)
        verdict.candidates_tried = outcome.candidates_tried
        if run_logger is not None:
            run_logger.log_candidate(label, verdict.verdict, list(verdict.bad_coloring or []) or None)
        if verdict.is_witness:
            outcome.witness = label
            outcome.verdict = verdict
            return outcome
        logger.info(f"candidate {label} is not a witness; bad coloring {verdict.bad_coloring}")
        outcome.rejected.append((label, verdict.bad_coloring))
        outcome.verdict = verdict
    if outcome.verdict is not None:
        outcome.verdict.candidates_tried = outcome.candidates_tried
    return outcome
