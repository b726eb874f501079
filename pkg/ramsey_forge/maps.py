"""
Maps between ordered trees: morphisms, embeddings and rigid surjections

A rigid surjection f: T -> S is a map admitting a morphism e: S -> T with

    e∘f ⊑_T id_T   and   f∘e = id_S

The adjoint is forced: e(v) has to be the <=_T-least node of the fiber
f⁻¹(v), so existence is decided by building that candidate and checking it.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from ramsey_forge.errors import NotRigidSurjectionError, TreeParseError
from ramsey_forge.trees import OrderedTree, decode, encode, initial_segment, is_ancestor, meet


@dataclass(frozen=True)
class TreeMap:
    source: OrderedTree
    target: OrderedTree
    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if len(image) != self.source.size:
            raise ValueError(f"map lists {len(image)} images for {self.source.size} source nodes")
        for v in image:
            self.target.check(v)
        object.__setattr__(self, "image", image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __str__(self) -> str:
        return format_map(self)


@dataclass(frozen=True)
class GaloisPair:
    f: TreeMap
    e: TreeMap


def identity(t: OrderedTree) -> TreeMap:
    return TreeMap(t, t, tuple(range(t.size)))


def compose(g: TreeMap, f: TreeMap) -> TreeMap:
    """g∘f, defined when f's target is g's source"""
    if f.target != g.source:
        raise ValueError("maps are not composable: target of f differs from source of g")
    return TreeMap(f.source, g.target, tuple(g.image[v] for v in f.image))


def format_map(f: TreeMap) -> str:
    return f"{encode(f.source)} -> {encode(f.target)} : " + ",".join(str(v) for v in f.image)


def is_surjective(f: TreeMap) -> bool:
    return len(set(f.image)) == f.target.size


def parse_map(text: str) -> TreeMap:
    try:
        head, body = text.split(" : ")
        src, dst = head.split(" -> ")
    except ValueError:
        raise TreeParseError("map text must read 'T -> S : i0,i1,...'", 0)
    try:
        image = tuple(int(x) for x in body.split(","))
    except ValueError:
        raise TreeParseError("image list must be comma-separated integers", len(head) + 3)
    return TreeMap(decode(src), decode(dst), image)


def is_morphism(e: TreeMap) -> bool:
    s, t = e.source, e.target
    if e.image[0] != 0:
        return False
    # <= is preorder order, so monotonicity means a non-decreasing image
    if any(e.image[v] > e.image[v + 1] for v in range(s.size - 1)):
        return False
    for v in range(s.size):
        for w in range(v + 1, s.size):
            if e.image[meet(s, v, w)] != meet(t, e.image[v], e.image[w]):
                return False
    return True


def is_embedding(e: TreeMap) -> bool:
    return len(set(e.image)) == e.source.size and is_morphism(e)


def enumerate_embeddings(s: OrderedTree, t: OrderedTree) -> Iterator[TreeMap]:
    """Every embedding s -> t, in lexicographic order of image tuples"""
    image: List[int] = [0]

    def extend(v: int) -> Iterator[TreeMap]:
        if v == s.size:
            yield TreeMap(s, t, tuple(image))
            return
        # injective and monotone means strictly increasing; leave room for the rest
        for x in range(image[-1] + 1, t.size - (s.size - 1 - v)):
            if all(image[meet(s, u, v)] == meet(t, image[u], x) for u in range(v)):
                image.append(x)
                yield from extend(v + 1)
                image.pop()

    if s.size <= t.size:
        yield from extend(1)


def copies(s: OrderedTree, t: OrderedTree) -> List[Tuple[int, ...]]:
    """Copies of s in t: images of embeddings, each a sorted node tuple"""
    return [e.image for e in enumerate_embeddings(s, t)]


def candidate_adjoint(f: TreeMap) -> Optional[TreeMap]:
    """e(v) := the <=_T-least preimage of v; absent when f is not onto"""
    first: Dict[int, int] = {}
    for w, v in enumerate(f.image):
        first.setdefault(v, w)
    if len(first) != f.target.size:
        return None
    return TreeMap(f.target, f.source, tuple(first[v] for v in range(f.target.size)))


def galois_verify(p: GaloisPair) -> bool:
    f, e = p.f, p.e
    if f.source != e.target or f.target != e.source:
        return False
    if any(f.image[e.image[v]] != v for v in range(f.target.size)):
        return False
    return all(is_ancestor(f.source, e.image[f.image[w]], w) for w in range(f.source.size))


def rigid_adjoint(f: TreeMap) -> Optional[GaloisPair]:
    e = candidate_adjoint(f)
    if e is None:
        return None
    pair = GaloisPair(f, e)
    if galois_verify(pair) and is_morphism(e):
        return pair
    return None


def is_rigid_surjection(f: TreeMap) -> bool:
    return rigid_adjoint(f) is not None


def is_sealed(f: TreeMap) -> bool:
    """The fiber over the last target node is exactly the last source node"""
    fiber = [w for w, v in enumerate(f.image) if v == f.target.last]
    return fiber == [f.source.last]


def enumerate_rigid_surjections(t: OrderedTree, s: OrderedTree,
                                sealed_only: bool = False) -> Iterator[TreeMap]:
    """Every rigid surjection t -> s, in lexicographic order of image tuples

    Images are assigned in preorder. A target node may be used for the first
    time only in increasing order (the adjoint must be monotone); a reused
    target v needs e(v) ⊑ w; a fresh target must keep e meet-preserving.
    """
    if s.size > t.size:
        return
    last_t, last_s = t.last, s.last
    image: List[int] = [0]
    adjoint: List[int] = [0]

    def extend(w: int) -> Iterator[TreeMap]:
        if w == t.size:
            if len(adjoint) == s.size:
                yield TreeMap(t, s, tuple(image))
            return
        fresh = len(adjoint)
        # remaining nodes must still cover the unused targets
        if s.size - fresh > t.size - w:
            return
        for v in range(min(fresh, s.size - 1) + 1):
            if sealed_only and (v == last_s) != (w == last_t):
                continue
            if v < fresh:
                if not is_ancestor(t, adjoint[v], w):
                    continue
                image.append(v)
                yield from extend(w + 1)
                image.pop()
            else:
                if any(adjoint[meet(s, u, v)] != meet(t, adjoint[u], w) for u in range(fresh)):
                    continue
                image.append(v)
                adjoint.append(w)
                yield from extend(w + 1)
                adjoint.pop()
                image.pop()

    if t.size == 1:
        yield TreeMap(t, s, (0,))
        return
    yield from extend(1)


def naive_rigid_surjections(t: OrderedTree, s: OrderedTree,
                            sealed_only: bool = False) -> Iterator[TreeMap]:
    """Filter all |S|^|T| maps through rigid_adjoint; the enumeration's oracle"""
    for image in itertools.product(range(s.size), repeat=t.size):
        f = TreeMap(t, s, image)
        if not is_surjective(f) or rigid_adjoint(f) is None:
            continue
        if sealed_only and not is_sealed(f):
            continue
        yield f


def truncate_map(f: TreeMap, v: int) -> TreeMap:
    """f^v = f restricted to T^{e(v)}, landing in S^v"""
    pair = rigid_adjoint(f)
    if pair is None:
        raise NotRigidSurjectionError(f"{format_map(f)} is not a rigid surjection")
    f.target.check(v)
    w = pair.e.image[v]
    return TreeMap(initial_segment(f.source, w), initial_segment(f.target, v), f.image[:w + 1])


def projection_of(e: TreeMap) -> TreeMap:
    """The map sending w to the v whose image e(v) is the deepest image node ⊑ w"""
    t = e.target
    where = {x: v for v, x in enumerate(e.image)}
    image = []
    for w in range(t.size):
        image.append(next(where[u] for u in t.ancestors(w) if u in where))
    return TreeMap(t, e.source, tuple(image))
