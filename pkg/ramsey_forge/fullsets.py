"""
Partial vectors over Z/p and full sets

(Z/p)^{n:l} holds the partial functions [n] -> Z/p defined on at least n - l
coordinates. A set L of them is full when some total h and some (n - l)-set a
give, for each r in Z/p, an a_r ⊇ a with (r + h)↾a_r in L. Every full set
therefore contains one of these witness sets, and every witness set is full.
"""
import itertools
import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ramsey_forge.common.pool import ordered_map
from ramsey_forge.errors import CapExceededError, InstanceError, NotPrimeError, TreeParseError

logger = logging.getLogger("ramsey_forge.fullsets")

UNDEFINED = "·"
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
SWEEP_CHUNK = 64


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise NotPrimeError(f"modulus {p} is not prime")
    return p


@dataclass(frozen=True)
class PartialVector:
    p: int
    entries: Tuple[Optional[int], ...]

    def __post_init__(self):
        for v in self.entries:
            if v is not None and not 0 <= v < self.p:
                raise ValueError(f"value {v} is outside Z/{self.p}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def mask(self) -> int:
        """Domain as a bitmask; coordinate i+1 is bit i"""
        return sum(1 << i for i, v in enumerate(self.entries) if v is not None)

    def domain(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.entries) if v is not None)

    def __str__(self) -> str:
        return format_vector(self)


def format_vector(x: PartialVector) -> str:
    return "".join(UNDEFINED if v is None else DIGITS[v] for v in x.entries)


def parse_vector(text: str, p: int) -> PartialVector:
    entries: List[Optional[int]] = []
    for pos, ch in enumerate(text):
        if ch == UNDEFINED:
            entries.append(None)
            continue
        v = DIGITS.find(ch)
        if not 0 <= v < p:
            raise TreeParseError(f"{ch!r} is not a value in Z/{p}", pos)
        entries.append(v)
    return PartialVector(p, tuple(entries))


def restrict(x: PartialVector, mask: int) -> PartialVector:
    return PartialVector(x.p, tuple(v if mask >> i & 1 else None for i, v in enumerate(x.entries)))


def translate(h: Sequence[int], r: int, p: int) -> PartialVector:
    """The total vector r + h"""
    return PartialVector(p, tuple((r + v) % p for v in h))


def shift(x: PartialVector, s: Sequence[int]) -> PartialVector:
    """(x + s)↾dom(x) for a total shift s"""
    return PartialVector(x.p, tuple(None if v is None else (v + t) % x.p for v, t in zip(x.entries, s)))


def _masks_with(n: int, size: int) -> List[int]:
    return [m for m in range(1 << n) if bin(m).count("1") == size]


def _check_params(n: int, l: int, p: int):
    require_prime(p)
    if not 0 <= l <= n:
        raise InstanceError(f"need 0 <= l <= n, got l={l}, n={n}")


def enumerate_space(n: int, l: int, p: int) -> Iterator[PartialVector]:
    """(Z/p)^{n:l}, ordered by domain bitmask then values"""
    _check_params(n, l, p)
    for mask in range(1 << n):
        coords = [i for i in range(n) if mask >> i & 1]
        if len(coords) < n - l:
            continue
        for values in itertools.product(range(p), repeat=len(coords)):
            entries: List[Optional[int]] = [None] * n
            for i, v in zip(coords, values):
                entries[i] = v
            yield PartialVector(p, tuple(entries))


@dataclass(frozen=True)
class FullnessCertificate:
    h: Tuple[int, ...]
    a: int
    a_r: Tuple[int, ...]

    def to_json(self) -> Dict:
        bits = lambda mask: [i + 1 for i in range(len(self.h)) if mask >> i & 1]
        return {"h": list(self.h), "a": bits(self.a), "a_r": [bits(m) for m in self.a_r]}


def validate_certificate(L: Iterable[PartialVector], cert: FullnessCertificate, n: int, l: int, p: int) -> bool:
    members = set(L)
    if len(cert.h) != n or len(cert.a_r) != p:
        return False
    if bin(cert.a).count("1") != n - l:
        return False
    for r, mask in enumerate(cert.a_r):
        if mask & cert.a != cert.a:
            return False
        if restrict(translate(cert.h, r, p), mask) not in members:
            return False
    return True


def _supersets(n: int, a: int) -> List[int]:
    return [m for m in range(1 << n) if m & a == a]


def is_full(L: Iterable[PartialVector], n: int, l: int, p: int) -> Optional[FullnessCertificate]:
    """Search h lexicographically, a by ascending bitmask, each a_r smallest first"""
    _check_params(n, l, p)
    members = set(L)
    for h in itertools.product(range(p), repeat=n):
        totals = [translate(h, r, p) for r in range(p)]
        for a in _masks_with(n, n - l):
            chosen: List[int] = []
            for r in range(p):
                mask = next((m for m in _supersets(n, a) if restrict(totals[r], m) in members), None)
                if mask is None:
                    break
                chosen.append(mask)
            else:
                cert = FullnessCertificate(tuple(h), a, tuple(chosen))
                if not validate_certificate(members, cert, n, l, p):
                    raise AssertionError(f"certificate {cert} does not re-validate")
                return cert
    return None


def minimal_full_sets(n: int, l: int, p: int) -> List[FrozenSet[PartialVector]]:
    """Inclusion-minimal witness sets {(r + h)↾a_r : r ∈ Z/p}; a set is full iff it contains one"""
    _check_params(n, l, p)
    found = set()
    for h in itertools.product(range(p), repeat=n):
        totals = [translate(h, r, p) for r in range(p)]
        for a in _masks_with(n, n - l):
            options = _supersets(n, a)
            for masks in itertools.product(options, repeat=p):
                found.add(frozenset(restrict(totals[r], m) for r, m in enumerate(masks)))
    ordered = sorted(found, key=lambda s: (len(s), sorted((x.mask, str(x)) for x in s)))
    minimal: List[FrozenSet[PartialVector]] = []
    for s in ordered:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    return minimal


@dataclass
class _Factor:
    p: int
    l: int
    n: int
    space: List[PartialVector]
    witnesses: List[Tuple[int, ...]]


def _factor(p: int, l: int, n: int) -> _Factor:
    space = list(enumerate_space(n, l, p))
    where = {x: i for i, x in enumerate(space)}
    witnesses = [tuple(sorted(where[x] for x in s)) for s in minimal_full_sets(n, l, p)]
    return _Factor(p, l, n, space, witnesses)


Box = Tuple[FrozenSet[PartialVector], FullnessCertificate]


@lru_cache(maxsize=None)
def _certify(n: int, l: int, p: int, members: FrozenSet[PartialVector]) -> FullnessCertificate:
    cert = is_full(members, n, l, p)
    if cert is None:
        raise AssertionError(f"witness set {sorted(map(str, members))} is not full in ({p}, {l}, {n})")
    return cert


def _coloring_from_index(x: int, c: int, size: int) -> Tuple[int, ...]:
    """Digit i (most significant first) is the color of product element i"""
    digits = [0] * size
    for i in range(size - 1, -1, -1):
        x, digits[i] = divmod(x, c)
    return tuple(digits)


def _monochromatic_box(factors: List[_Factor], strides: List[int],
                       coloring: Sequence[int]) -> Optional[List[Box]]:
    """First product of witness sets the coloring leaves monochromatic, each re-certified full"""
    for choice in itertools.product(*(f.witnesses for f in factors)):
        colors = set()
        for point in itertools.product(*choice):
            colors.add(coloring[sum(i * s for i, s in zip(point, strides))])
            if len(colors) > 1:
                break
        if len(colors) == 1:
            boxes = []
            for f, chosen in zip(factors, choice):
                members = frozenset(f.space[i] for i in chosen)
                boxes.append((members, _certify(f.n, f.l, f.p, members)))
            return boxes
    return None


def _box_to_json(boxes: List[Box]) -> List[Dict]:
    return [{"set": sorted(format_vector(x) for x in members), "certificate": cert.to_json()}
            for members, cert in boxes]


@dataclass
class _ChunkResult:
    checked: int
    failing: Optional[int] = None


def _sweep_chunk(factors: List[_Factor], strides: List[int], c: int, size: int,
                 bounds: Tuple[int, int]) -> _ChunkResult:
    lo, hi = bounds
    for x in range(lo, hi):
        if _monochromatic_box(factors, strides, _coloring_from_index(x, c, size)) is None:
            return _ChunkResult(x - lo + 1, x)
    return _ChunkResult(hi - lo)


@dataclass
class FullSetsResult:
    params: List[Tuple[int, int, int]]
    c: int
    colorings_checked: int
    holds: bool
    counterexample: Optional[Tuple[int, ...]]
    sample_box: List[Dict] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> Dict:
        return {
            "params": [list(t) for t in self.params],
            "c": self.c,
            "colorings_checked": self.colorings_checked,
            "verdict": "holds" if self.holds else "fails",
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "sample_box": self.sample_box,
        }


def fs_instance_check(params: Sequence[Tuple[int, int, int]], c: int, cap: int,
                      workers: int = 1) -> FullSetsResult:
    """Sweep every c-coloring of the product of (Z/p_i)^{n_i:l_i}

    Each coloring must admit full L_i with L_1 × ... × L_k monochromatic; it
    is enough to try the minimal witness sets of each factor. A chosen witness
    set only counts once is_full has certified it again. The product found for
    the all-zero coloring is reported as sample_box.
    """
    if c < 1:
        raise InstanceError(f"need at least one color, got {c}")
    if not params:
        raise InstanceError("at least one factor (p, l, n) is required")
    start = time.time()
    factors = [_factor(p, l, n) for p, l, n in params]
    sizes = [len(f.space) for f in factors]
    size = 1
    for s in sizes:
        size *= s
    required = c ** size
    if required > cap:
        raise CapExceededError(cap, required)
    # product elements in itertools.product order: the last factor varies fastest
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    chunks = [(lo, min(lo + SWEEP_CHUNK, required)) for lo in range(0, required, SWEEP_CHUNK)]
    first = _monochromatic_box(factors, strides, _coloring_from_index(0, c, size))
    sample = _box_to_json(first) if first is not None else []
    run = partial(_sweep_chunk, factors, strides, c, size)
    checked = 0
    for result in ordered_map(run, chunks, workers):
        checked += result.checked
        if result.failing is not None:
            logger.info(f"coloring {result.failing} admits no monochromatic product of full sets")
            return FullSetsResult(list(params), c, checked, False, _coloring_from_index(result.failing, c, size),
                                  sample, wall_time=time.time() - start)
    return FullSetsResult(list(params), c, checked, True, None, sample, wall_time=time.time() - start)
