"""
Set partitions of [m] and their rigid-surjection encoding
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from ramsey_forge.errors import TreeParseError
from ramsey_forge.maps import TreeMap, is_rigid_surjection
from ramsey_forge.trees import path_tree

logger = logging.getLogger("ramsey_forge.partitions")


@dataclass(frozen=True)
class SetPartition:
    ground: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be non-empty")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        seen = sorted(x for b in blocks for x in b)
        if seen != list(range(1, self.ground + 1)):
            raise ValueError(f"blocks must be disjoint and cover [{self.ground}]")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> int:
        """Index (0-based) of the block holding x"""
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise ValueError(f"{x} is not in [{self.ground}]")

    def is_homogeneous(self) -> bool:
        return len({len(b) for b in self.blocks}) == 1

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(p: SetPartition) -> str:
    return "|".join(",".join(str(x) for x in b) for b in p.blocks)


def parse_partition(text: str) -> SetPartition:
    try:
        blocks = [tuple(int(x) for x in part.split(",")) for part in text.split("|")]
    except ValueError:
        raise TreeParseError(f"partition text {text!r} must be '|'-joined integer lists", 0)
    ground = sum(len(b) for b in blocks)
    return SetPartition(ground, tuple(blocks))


def from_labels(labels: Tuple[int, ...]) -> SetPartition:
    """Partition of [m] from a restricted growth string (block index per element)"""
    blocks: List[List[int]] = []
    for x, i in enumerate(labels, start=1):
        if i == len(blocks):
            blocks.append([])
        blocks[i].append(x)
    return SetPartition(len(labels), tuple(tuple(b) for b in blocks))


def homogeneous_possible(m: int, k: int) -> bool:
    return m % k == 0


def enumerate_partitions(m: int, k: int, homogeneous: bool = False) -> Iterator[SetPartition]:
    """All k-partitions of [m], ordered lexicographically by block labels"""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    if homogeneous and not homogeneous_possible(m, k):
        logger.warning(f"no homogeneous {k}-partition of [{m}] exists: {k} does not divide {m}")
        return
    size = m // k
    labels: List[int] = []
    counts: List[int] = []

    def extend() -> Iterator[SetPartition]:
        x = len(labels)
        if x == m:
            if len(counts) == k:
                yield from_labels(tuple(labels))
            return
        if k - len(counts) > m - x:
            return
        for i in range(min(len(counts), k - 1) + 1):
            if i == len(counts):
                counts.append(0)
            if homogeneous and counts[i] == size:
                continue
            counts[i] += 1
            labels.append(i)
            yield from extend()
            labels.pop()
            counts[i] -= 1
            if counts[i] == 0:
                counts.pop()

    yield from extend()


def is_subpartition(p: SetPartition, q: SetPartition) -> bool:
    """Every block of p is a union of blocks of q"""
    if p.ground != q.ground:
        raise ValueError(f"ground sets differ: [{p.ground}] vs [{q.ground}]")
    return all(len({p.block_of(x) for x in b}) == 1 for b in q.blocks)


def to_rigid_surjection(p: SetPartition) -> TreeMap:
    """f_P: [m] -> [k], x maps to the index of its block (0-based nodes)"""
    image = tuple(p.block_of(x) for x in range(1, p.ground + 1))
    return TreeMap(path_tree(p.ground), path_tree(p.k), image)


def from_rigid_surjection(f: TreeMap) -> SetPartition:
    return from_labels(f.image)


def coarsen_factor(p: SetPartition, q: SetPartition) -> Optional[TreeMap]:
    """The r: [l] -> [k] with f_p = r ∘ f_q, if f_p factors through f_q that way"""
    image: List[Optional[int]] = [None] * q.k
    for j, b in enumerate(q.blocks):
        targets = {p.block_of(x) for x in b}
        if len(targets) != 1:
            return None
        image[j] = targets.pop()
    r = TreeMap(path_tree(q.k), path_tree(p.k), tuple(image))
    return r if is_rigid_surjection(r) else None


@lru_cache(maxsize=None)
def stirling2(m: int, k: int) -> int:
    if m == k:
        return 1
    if k == 0 or k > m:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)
