"""
Finite fragments of normed composition spaces and Ramsey domains

Every operation is stored as an explicit table; an absent key means the
operation is undefined there. Point and set ids are opaque strings. The tree
instance of sealed rigid surjections is built by build_tree_instance.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from ramsey_forge.config import RunConfig
from ramsey_forge.errors import CapExceededError, EmptyPlacementsError, FiberError
from ramsey_forge.maps import (TreeMap, compose, enumerate_rigid_surjections, format_map,
                               truncate_map)
from ramsey_forge.trees import OrderedTree, encode, enumerate_trees, norm_leq, NormPoint
from ramsey_forge.witness import ColoringInstance, WitnessVerdict, decide_witness

logger = logging.getLogger("ramsey_forge.framework")

Pair = Tuple[str, str]


@dataclass(frozen=True)
class CompositionSpaceFragment:
    A_elems: Tuple[str, ...]
    X_elems: Tuple[str, ...]
    mult: Dict[Pair, str]
    act: Dict[Pair, str]
    trunc: Dict[str, str]
    norm: Dict[str, str]
    norm_order: FrozenSet[Pair]

    def leq(self, m: str, n: str) -> bool:
        return m == n or (m, n) in self.norm_order


@dataclass(frozen=True)
class RamseyDomainFragment:
    space: CompositionSpaceFragment
    F_sets: Tuple[str, ...]
    P_sets: Tuple[str, ...]
    members: Dict[str, FrozenSet[str]]
    set_mult: Dict[Pair, str]
    set_act: Dict[Pair, str]
    # ∂P, stored per P like every other operation
    set_trunc: Dict[str, str] = field(default_factory=dict)


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: Optional[Tuple[Any, ...]] = None

    def to_json(self) -> Dict[str, Any]:
        return {"axiom": self.name, "passed": self.passed,
                "witness": list(self.witness) if self.witness is not None else None}


@dataclass
class AxiomReport:
    results: List[AxiomResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def get(self, name: str) -> AxiomResult:
        return next(r for r in self.results if r.name == name)

    def to_json(self) -> Dict[str, Any]:
        return {"all_passed": self.all_passed, "axioms": [r.to_json() for r in self.results]}


def check_space_axioms(s: CompositionSpaceFragment) -> AxiomReport:
    """Action law and axioms (i)-(iii), each with the first violating tuple"""
    return AxiomReport([
        _check_action_law(s),
        _check_trunc_commutes(s),
        _check_trunc_norm(s),
        _check_norm_action(s),
    ])


def _check_action_law(s: CompositionSpaceFragment) -> AxiomResult:
    for (b, x), bx in s.act.items():
        for a in s.A_elems:
            left = s.act.get((a, bx))
            ab = s.mult.get((a, b))
            if left is None or ab is None:
                continue
            right = s.act.get((ab, x))
            if right is not None and left != right:
                return AxiomResult("action_law", False, (a, b, x))
    return AxiomResult("action_law", True)


def _check_trunc_commutes(s: CompositionSpaceFragment) -> AxiomResult:
    for (a, x), ax in s.act.items():
        adx = s.act.get((a, s.trunc[x]))
        if adx is not None and s.trunc[ax] != adx:
            return AxiomResult("i", False, (a, x))
    return AxiomResult("i", True)


def _check_trunc_norm(s: CompositionSpaceFragment) -> AxiomResult:
    for x in s.X_elems:
        if not s.leq(s.norm[s.trunc[x]], s.norm[x]):
            return AxiomResult("ii", False, (x,))
    return AxiomResult("ii", True)


def _check_norm_action(s: CompositionSpaceFragment) -> AxiomResult:
    for (a, y), ay in s.act.items():
        for x in s.X_elems:
            if not s.leq(s.norm[x], s.norm[y]):
                continue
            ax = s.act.get((a, x))
            if ax is None or not s.leq(s.norm[ax], s.norm[ay]):
                return AxiomResult("iii", False, (a, x, y))
    return AxiomResult("iii", True)


def extends(s: CompositionSpaceFragment, b: str, a: str) -> bool:
    """b extends a: wherever a·x is defined, b·x is defined and equal"""
    return all(s.act.get((b, x)) == s.act[(a, x)] for x in s.X_elems if (a, x) in s.act)


def check_domain_axioms(d: RamseyDomainFragment) -> AxiomReport:
    """Axioms (a)-(c), vanishing, linear and the pointwise law"""
    return AxiomReport([
        _check_pointwise(d),
        _check_associative_definedness(d),
        _check_trunc_closed(d),
        _check_extension(d),
        _check_vanishing(d),
        _check_linear(d),
    ])


def _pointwise_act(s: CompositionSpaceFragment, fs: FrozenSet[str], xs: FrozenSet[str]) -> Optional[Set[str]]:
    out = set()
    for f in fs:
        for x in xs:
            fx = s.act.get((f, x))
            if fx is None:
                return None
            out.add(fx)
    return out


def _check_pointwise(d: RamseyDomainFragment) -> AxiomResult:
    s = d.space
    for (F, G), H in sorted(d.set_mult.items()):
        got = set()
        for f in d.members[F]:
            for g in d.members[G]:
                fg = s.mult.get((f, g))
                if fg is None:
                    return AxiomResult("pointwise", False, ("mult", F, G, f, g))
                got.add(fg)
        if got != d.members[H]:
            return AxiomResult("pointwise", False, ("mult", F, G))
    for (F, P), Q in sorted(d.set_act.items()):
        if _pointwise_act(s, d.members[F], d.members[P]) != d.members[Q]:
            return AxiomResult("pointwise", False, ("act", F, P))
    return AxiomResult("pointwise", True)


def _check_associative_definedness(d: RamseyDomainFragment) -> AxiomResult:
    by_target: Dict[str, List[Pair]] = {}
    for (F, Q), R in d.set_act.items():
        by_target.setdefault(Q, []).append((F, R))
    for (G, P), Q in sorted(d.set_act.items()):
        for F, _ in sorted(by_target.get(Q, [])):
            FG = d.set_mult.get((F, G))
            if FG is None or (FG, P) not in d.set_act:
                return AxiomResult("a", False, (F, G, P))
    return AxiomResult("a", True)


def _check_trunc_closed(d: RamseyDomainFragment) -> AxiomResult:
    s = d.space
    for P in d.P_sets:
        dP = d.set_trunc.get(P)
        if dP is None or d.members[dP] != frozenset(s.trunc[x] for x in d.members[P]):
            return AxiomResult("b", False, (P,))
    return AxiomResult("b", True)


def _check_extension(d: RamseyDomainFragment) -> AxiomResult:
    s = d.space
    for P in d.P_sets:
        dP = d.set_trunc.get(P)
        for F in d.F_sets:
            if dP is None or (F, dP) not in d.set_act:
                continue
            ok = any((G, P) in d.set_act
                     and all(any(extends(s, g, f) for g in d.members[G]) for f in d.members[F])
                     for G in d.F_sets)
            if not ok:
                return AxiomResult("c", False, (F, P))
    return AxiomResult("c", True)


def vanishing_depth(d: RamseyDomainFragment, P: str) -> Optional[int]:
    """Least t with ∂^t P a singleton, or None when truncation stalls first"""
    s = d.space
    current = frozenset(d.members[P])
    t = 0
    seen = set()
    while len(current) > 1:
        if current in seen:
            return None
        seen.add(current)
        current = frozenset(s.trunc[x] for x in current)
        t += 1
    return t


def _check_vanishing(d: RamseyDomainFragment) -> AxiomResult:
    deepest = 0
    for P in d.P_sets:
        t = vanishing_depth(d, P)
        if t is None:
            return AxiomResult("vanishing", False, (P,))
        deepest = max(deepest, t)
    return AxiomResult("vanishing", True, (deepest,))


def _check_linear(d: RamseyDomainFragment) -> AxiomResult:
    s = d.space
    for P in d.P_sets:
        pts = sorted(d.members[P])
        for x, y in itertools.combinations(pts, 2):
            m, n = s.norm[x], s.norm[y]
            if not (s.leq(m, n) or s.leq(n, m)):
                return AxiomResult("linear", False, (P, x, y))
    return AxiomResult("linear", True)


@dataclass
class ConditionResult:
    holds_with: Optional[Tuple[str, ...]]
    tried: int = 0
    verdicts: List[WitnessVerdict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.holds_with is not None

    def to_json(self) -> Dict[str, Any]:
        return {"holds": self.holds, "holds_with": list(self.holds_with) if self.holds else None,
                "tried": self.tried}


def condition_instance(d: RamseyDomainFragment, fs: List[str], xs: FrozenSet[str],
                       kind: str, c: int) -> ColoringInstance:
    """Colorings of F⦁P where each f ∈ F places the set f⦁P"""
    s = d.space
    if not fs:
        raise EmptyPlacementsError("no f to place")
    images = [sorted({s.act[(f, x)] for x in xs}) for f in fs]
    smalls = sorted({y for img in images for y in img})
    where = {y: i for i, y in enumerate(smalls)}
    induced = tuple(tuple(where[y] for y in img) for img in images)
    return ColoringInstance(kind, tuple(smalls), tuple(fs), induced, c)


def check_R(d: RamseyDomainFragment, c: int, P: str, budget: int = RunConfig.node_budget,
            workers: int = 1, split_depth: int = 0) -> ConditionResult:
    """First F (fragment order) with F⦁P defined whose every c-coloring has a monochromatic f⦁P"""
    result = ConditionResult(None)
    for F in d.F_sets:
        if (F, P) not in d.set_act:
            continue
        result.tried += 1
        inst = condition_instance(d, sorted(d.members[F]), d.members[P], "R", c)
        verdict = decide_witness(inst, budget, workers, split_depth)
        result.verdicts.append(verdict)
        if verdict.is_witness:
            result.holds_with = (F,)
            return result
    return result


def fiber(d: RamseyDomainFragment, P: str, y: str) -> FrozenSet[str]:
    """P_y = {x ∈ P : ∂x = y}"""
    s = d.space
    out = frozenset(x for x in d.members[P] if s.trunc[x] == y)
    if not out:
        raise FiberError(f"{y} is not in the truncation of {P}")
    return out


def check_LP(d: RamseyDomainFragment, c: int, P: str, y: str, budget: int = RunConfig.node_budget,
             workers: int = 1, split_depth: int = 0) -> ConditionResult:
    """First (F, a) with F⦁P and a·y defined and F_a⦁P_y witnessing c colors"""
    s = d.space
    Py = fiber(d, P, y)
    result = ConditionResult(None)
    admissible = [a for a in s.A_elems if (a, y) in s.act]
    for F in d.F_sets:
        if (F, P) not in d.set_act:
            continue
        for a in admissible:
            Fa = sorted(f for f in d.members[F] if extends(s, f, a))
            if not Fa:
                continue
            result.tried += 1
            inst = condition_instance(d, Fa, Py, "LP", c)
            verdict = decide_witness(inst, budget, workers, split_depth)
            result.verdicts.append(verdict)
            if verdict.is_witness:
                result.holds_with = (F, a)
                return result
    return result


@dataclass
class TheoremReport:
    c: int
    linear: bool
    vanishing: bool
    lp_failures: List[Pair]
    r_failures: List[str]
    counterexamples: List[Dict[str, Any]]

    @property
    def lp_everywhere(self) -> bool:
        return not self.lp_failures

    @property
    def implication_holds(self) -> bool:
        return not (self.linear and self.vanishing and self.lp_everywhere and self.r_failures)

    def to_json(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "linear": self.linear,
            "vanishing": self.vanishing,
            "lp_everywhere": self.lp_everywhere,
            "lp_failures": [list(p) for p in self.lp_failures],
            "r_failures": list(self.r_failures),
            "implication_holds": self.implication_holds,
            "counterexamples": self.counterexamples,
        }


def check_theorem(d: RamseyDomainFragment, c: int, budget: int = RunConfig.node_budget) -> TheoremReport:
    """Sweep (LP) over every (P, y ∈ ∂P) and (R) over every P

    A counterexample is a P failing (R) while (LP) holds at each of its
    fibers; it lists what was never defined so a closure gap in the fragment
    can be told apart from a genuine failure.
    """
    axioms = check_domain_axioms(d)
    s = d.space
    lp_failures: List[Pair] = []
    r_failures: List[str] = []
    counterexamples: List[Dict[str, Any]] = []
    for P in d.P_sets:
        lp_here = True
        for y in sorted({s.trunc[x] for x in d.members[P]}):
            if not check_LP(d, c, P, y, budget).holds:
                lp_failures.append((P, y))
                lp_here = False
        if check_R(d, c, P, budget).holds:
            continue
        r_failures.append(P)
        if lp_here:
            unmet = []
            if not any((F, P) in d.set_act for F in d.F_sets):
                unmet.append(f"no F with F⦁{P} defined")
            counterexamples.append({"P": P, "unmet_definedness": unmet})
            logger.warning(f"(R) fails at {P} although (LP) holds at every fiber")
    return TheoremReport(c, axioms.get("linear").passed, axioms.get("vanishing").passed,
                         lp_failures, r_failures, counterexamples)


def one_point_fragment() -> Tuple[CompositionSpaceFragment, RamseyDomainFragment]:
    space = CompositionSpaceFragment(("e",), ("e",), {("e", "e"): "e"}, {("e", "e"): "e"},
                                     {"e": "e"}, {"e": "n"}, frozenset())
    members = {"E": frozenset({"e"})}
    domain = RamseyDomainFragment(space, ("E",), ("E",), members, {("E", "E"): "E"},
                                  {("E", "E"): "E"}, {"E": "E"})
    return space, domain


def tree_action(g: TreeMap, f: TreeMap) -> Optional[TreeMap]:
    """g·f = f ∘ g^y when f's domain is T^y for the target T of g"""
    y = f.source.size - 1
    if not norm_leq(NormPoint(f.source), NormPoint(g.target)):
        return None
    return compose(f, truncate_map(g, y))


def tree_truncation(f: TreeMap) -> TreeMap:
    """f itself on a one-node image, else f^v at the second <=-largest image node"""
    if f.target.size == 1:
        return f
    return truncate_map(f, f.target.last - 1)


def sealed_points(max_nodes: int) -> List[TreeMap]:
    """All sealed rigid surjections between trees with at most max_nodes nodes"""
    trees = list(enumerate_trees(max_nodes))
    points = []
    for source in trees:
        for target in trees:
            points.extend(enumerate_rigid_surjections(source, target, sealed_only=True))
    return points


def build_tree_space(max_nodes: int) -> Tuple[CompositionSpaceFragment, Dict[str, TreeMap]]:
    points = sealed_points(max_nodes)
    ids = {format_map(f): f for f in points}
    order = tuple(format_map(f) for f in points)
    table: Dict[Pair, str] = {}
    for g in points:
        for f in points:
            gf = tree_action(g, f)
            if gf is not None:
                table[(format_map(g), format_map(f))] = format_map(gf)
    trunc = {format_map(f): format_map(tree_truncation(f)) for f in points}
    norm = {format_map(f): encode(f.source) for f in points}
    trees = list(enumerate_trees(max_nodes))
    norm_order = frozenset((encode(a), encode(b)) for a in trees for b in trees
                           if a != b and norm_leq(NormPoint(a), NormPoint(b)))
    space = CompositionSpaceFragment(order, order, table, table, trunc, norm, norm_order)
    return space, ids


def set_id(d: OrderedTree, r: OrderedTree, elems: Tuple[str, ...]) -> str:
    return f"K[{encode(d)} -> {encode(r)}]{{" + "; ".join(elems) + "}"


def _subsets(elems: List[str]) -> Iterator[Tuple[str, ...]]:
    for size in range(1, len(elems) + 1):
        yield from itertools.combinations(elems, size)


def build_tree_instance(max_nodes: int, set_cap: int = RunConfig.fragment_set_cap
                        ) -> Tuple[CompositionSpaceFragment, RamseyDomainFragment]:
    """The space of sealed rigid surjections and its Ramsey domain of sets

    A set K carries d(K), the tree its domains sit in as initial segments,
    and r(K), the common image. Trees are canonical, so the families used
    for sets and for norms coincide and every set lies in both 𝓕 and 𝓟.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    space, points = build_tree_space(max_nodes)
    trees = list(enumerate_trees(max_nodes))
    groups: List[Tuple[OrderedTree, OrderedTree, List[str]]] = []
    for d in trees:
        for r in trees:
            elems = [i for i in space.A_elems
                     if points[i].target == r and norm_leq(NormPoint(points[i].source), NormPoint(d))]
            if elems:
                groups.append((d, r, elems))
    required = sum((1 << len(elems)) - 1 for _, _, elems in groups)
    if required > set_cap:
        raise CapExceededError(set_cap, required, "fragment sets")

    members: Dict[str, FrozenSet[str]] = {}
    tags: Dict[str, Tuple[str, str]] = {}
    index: Dict[Tuple[str, str, FrozenSet[str]], str] = {}
    order: List[str] = []
    for d, r, elems in groups:
        for chosen in _subsets(elems):
            sid = set_id(d, r, chosen)
            members[sid] = frozenset(chosen)
            tags[sid] = (encode(d), encode(r))
            index[(encode(d), encode(r), frozenset(chosen))] = sid
            order.append(sid)

    def pointwise(F: str, G: str) -> Optional[str]:
        out = _pointwise_act(space, members[F], members[G])
        if out is None:
            return None
        r = next(iter(points[x].target for x in out))
        return index.get((tags[F][0], encode(r), frozenset(out)))

    set_mult: Dict[Pair, str] = {}
    for F in order:
        for G in order:
            if tags[G][0] == tags[F][1]:
                H = pointwise(F, G)
                if H is not None:
                    set_mult[(F, G)] = H
    set_trunc: Dict[str, str] = {}
    for P in order:
        image = frozenset(space.trunc[x] for x in members[P])
        r = next(iter(points[x].target for x in image))
        dP = index.get((tags[P][0], encode(r), image))
        if dP is not None:
            set_trunc[P] = dP
    logger.info(f"tree fragment up to {max_nodes} nodes: {len(space.A_elems)} points, {len(order)} sets")
    domain = RamseyDomainFragment(space, tuple(order), tuple(order), members,
                                  set_mult, dict(set_mult), set_trunc)
    return space, domain


def fragment_to_json(space: CompositionSpaceFragment,
                     domain: Optional[RamseyDomainFragment] = None) -> Dict[str, Any]:
    """Deterministic dump: sorted ids, tables as sorted triples"""
    out: Dict[str, Any] = {
        "A": sorted(space.A_elems),
        "X": sorted(space.X_elems),
        "mult": sorted([a, b, v] for (a, b), v in space.mult.items()),
        "act": sorted([a, x, v] for (a, x), v in space.act.items()),
        "trunc": sorted([x, v] for x, v in space.trunc.items()),
        "norm": sorted([x, n] for x, n in space.norm.items()),
        "norm_order": sorted([m, n] for m, n in space.norm_order),
    }
    if domain is not None:
        out["F"] = sorted(domain.F_sets)
        out["P"] = sorted(domain.P_sets)
        out["members"] = {k: sorted(v) for k, v in sorted(domain.members.items())}
        out["set_mult"] = sorted([a, b, v] for (a, b), v in domain.set_mult.items())
        out["set_act"] = sorted([a, b, v] for (a, b), v in domain.set_act.items())
        out["set_trunc"] = sorted([p, v] for p, v in domain.set_trunc.items())
    return out
