"""
Finite ordered trees in canonical preorder form

A tree on n nodes is stored as its parent array in depth-first preorder:
node 0 is the root and every other node's parent has a smaller index. The
children of a node, listed by increasing index, are its immediate successors
in their fixed linear order, so the parent array alone determines the
ordered tree and two trees are equal iff their canonical strings match.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from ramsey_forge.errors import NodeIndexError, TreeParseError


class Order(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class OrderedTree:
    parents: Tuple[int, ...]
    children: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    depths: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parents = tuple(self.parents)
        if not parents:
            raise ValueError("trees are non-empty")
        if parents[0] != -1:
            raise ValueError("node 0 must be the root (parent -1)")
        kids: List[List[int]] = [[] for _ in parents]
        depths = [0] * len(parents)
        for v in range(1, len(parents)):
            p = parents[v]
            if not 0 <= p < v:
                raise ValueError(f"parent of node {v} must precede it in preorder, got {p}")
            # preorder: p's subtree must still be open, i.e. p is on the rightmost branch
            last = v - 1
            while last != p and last != -1:
                last = parents[last]
            if last != p:
                raise ValueError(f"node {v} is not in preorder position under parent {p}")
            kids[p].append(v)
            depths[v] = depths[p] + 1
        object.__setattr__(self, "parents", parents)
        object.__setattr__(self, "children", tuple(tuple(k) for k in kids))
        object.__setattr__(self, "depths", tuple(depths))

    @property
    def size(self) -> int:
        return len(self.parents)

    @property
    def last(self) -> int:
        """The <=_T-largest node"""
        return len(self.parents) - 1

    def check(self, v: int) -> int:
        if not 0 <= v < len(self.parents):
            raise NodeIndexError(f"node {v} out of range for tree with {self.size} nodes")
        return v

    def leaves(self) -> Tuple[int, ...]:
        return tuple(v for v, kids in enumerate(self.children) if not kids)

    def immediate_successors(self, v: int) -> Tuple[int, ...]:
        return self.children[self.check(v)]

    def ancestors(self, v: int) -> List[int]:
        """Predecessors of v from v itself up to the root"""
        chain = [self.check(v)]
        while self.parents[chain[-1]] != -1:
            chain.append(self.parents[chain[-1]])
        return chain

    def __str__(self) -> str:
        return encode(self)


def encode(t: OrderedTree) -> str:
    out: List[str] = []

    def walk(v: int):
        out.append("(")
        for c in t.children[v]:
            walk(c)
        out.append(")")

    walk(0)
    return "".join(out)


def decode(s: str) -> OrderedTree:
    if not s:
        raise TreeParseError("empty tree string", 0)
    if s[0] != "(":
        raise TreeParseError(f"expected '(' but found {s[0]!r}", 0)
    parents: List[int] = []
    stack: List[int] = []
    for pos, ch in enumerate(s):
        if ch == "(":
            if not stack and parents:
                raise TreeParseError("more than one outer pair", pos)
            parents.append(stack[-1] if stack else -1)
            stack.append(len(parents) - 1)
        elif ch == ")":
            if not stack:
                raise TreeParseError("unbalanced ')'", pos)
            stack.pop()
        else:
            raise TreeParseError(f"unexpected character {ch!r}", pos)
    if stack:
        raise TreeParseError("unclosed '('", len(s))
    return OrderedTree(tuple(parents))


def path_tree(m: int) -> OrderedTree:
    """The m-node path [m], a chain with trivially ordered successors"""
    if m < 1:
        raise ValueError("path trees need at least one node")
    return OrderedTree((-1,) + tuple(range(m - 1)))


def is_ancestor(t: OrderedTree, v: int, w: int) -> bool:
    """v ⊑_T w: v is a predecessor of w (every node is its own predecessor)"""
    t.check(v)
    t.check(w)
    while w > v:
        w = t.parents[w]
    return w == v


def meet(t: OrderedTree, v: int, w: int) -> int:
    t.check(v)
    t.check(w)
    while v != w:
        if t.depths[v] >= t.depths[w]:
            v = t.parents[v]
        else:
            w = t.parents[w]
    return v


def lex_compare(t: OrderedTree, v: int, w: int) -> Order:
    """Compare two nodes in <=_T; equals comparison of preorder indices"""
    t.check(v)
    t.check(w)
    if v == w:
        return Order.EQUAL
    return Order.LESS if v < w else Order.GREATER


def lex_leq_by_definition(t: OrderedTree, v: int, w: int) -> bool:
    """Case-based <=_T, evaluated without reference to preorder indices"""
    if is_ancestor(t, v, w):
        return True
    if is_ancestor(t, w, v):
        return False
    m = meet(t, v, w)
    branch_v = next(u for u in t.ancestors(v) if t.parents[u] == m)
    branch_w = next(u for u in t.ancestors(w) if t.parents[u] == m)
    order = t.children[m]
    return order.index(branch_v) <= order.index(branch_w)


def initial_segment(t: OrderedTree, w: int) -> OrderedTree:
    """T^w = {v : v <=_T w}, the preorder prefix ending at w"""
    t.check(w)
    return OrderedTree(t.parents[:w + 1])


@lru_cache(maxsize=None)
def _strings_with(n: int) -> Tuple[str, ...]:
    """Canonical strings of all ordered trees with exactly n nodes, sorted"""
    if n == 1:
        return ("()",)
    found: List[str] = []
    for forest in _forests(n - 1):
        found.append("(" + forest + ")")
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def _forests(n: int) -> Tuple[str, ...]:
    if n == 0:
        return ("",)
    found: List[str] = []
    for first in range(1, n + 1):
        for head in _strings_with(first):
            for tail in _forests(n - first):
                found.append(head + tail)
    return tuple(found)


def enumerate_trees(max_nodes: int, binary_leaves: Optional[int] = None) -> Iterator[OrderedTree]:
    """Every ordered tree with at most max_nodes nodes, once per isomorphism class

    Ordered by (node count, canonical string). With binary_leaves=n only
    binary trees with n leaves are kept.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    for n in range(1, max_nodes + 1):
        if binary_leaves is not None and n != 2 * binary_leaves - 1:
            continue
        for s in _strings_with(n):
            t = decode(s)
            if binary_leaves is None or is_binary(t):
                yield t


def is_binary(t: OrderedTree) -> bool:
    return all(len(kids) in (0, 2) for kids in t.children)


def binary_trees(n: int) -> List[OrderedTree]:
    """𝕋_n: binary trees with n leaves, in canonical order"""
    if n < 1:
        raise ValueError("binary trees have at least one leaf")
    return list(enumerate_trees(2 * n - 1, binary_leaves=n))


@dataclass(frozen=True)
class NormPoint:
    tree: OrderedTree

    def __str__(self) -> str:
        return encode(self.tree)


def norm_leq(a: NormPoint, b: NormPoint) -> bool:
    """a is below b iff a = b^w for some w; only w = |a| - 1 can work"""
    if a.tree.size > b.tree.size:
        return False
    return b.tree.parents[:a.tree.size] == a.tree.parents
