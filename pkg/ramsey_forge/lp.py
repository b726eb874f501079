"""
Exact rational feasibility for {A x = b, x >= 0}

Two independent methods: a phase-one simplex with Bland's rule, and
Fourier-Motzkin elimination used as its oracle. Every number is a Fraction.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger("ramsey_forge.lp")

Row = Tuple[Tuple[Fraction, ...], Fraction]


@dataclass
class RationalLP:
    variables: List[str]
    rows: List[Row] = field(default_factory=list)

    def add_equality(self, coeffs: Sequence, rhs=0):
        if len(coeffs) != len(self.variables):
            raise ValueError(f"row has {len(coeffs)} coefficients for {len(self.variables)} variables")
        self.rows.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs)))

    def residuals(self, x: Sequence[Fraction]) -> List[Fraction]:
        return [sum((a * v for a, v in zip(coeffs, x)), Fraction(0)) - rhs for coeffs, rhs in self.rows]

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return all(v >= 0 for v in x) and all(r == 0 for r in self.residuals(x))


class _Tableau:
    """Phase-one tableau: artificial columns n..n+m-1 start in the basis"""

    def __init__(self, lp: RationalLP):
        self.n = len(lp.variables)
        self.m = len(lp.rows)
        self.A: List[List[Fraction]] = []
        self.b: List[Fraction] = []
        for i, (coeffs, rhs) in enumerate(lp.rows):
            sign = -1 if rhs < 0 else 1
            row = [sign * a for a in coeffs] + [Fraction(int(k == i)) for k in range(self.m)]
            self.A.append(row)
            self.b.append(sign * rhs)
        self.basis = [self.n + i for i in range(self.m)]
        width = self.n + self.m
        # reduced costs of "minimize the sum of artificials"
        self.cost = [-sum((self.A[i][j] for i in range(self.m)), Fraction(0)) if j < self.n else Fraction(0)
                     for j in range(width)]
        self.value = -sum(self.b, Fraction(0))
        self.pivots = 0

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        self.A[i] = [a / piv for a in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            f = self.A[k][j]
            if k != i and f != 0:
                self.A[k] = [a - f * p for a, p in zip(self.A[k], self.A[i])]
                self.b[k] -= f * self.b[i]
        f = self.cost[j]
        if f != 0:
            self.cost = [c - f * p for c, p in zip(self.cost, self.A[i])]
            self.value -= f * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def bland_step(self) -> bool:
        entering = next((j for j, c in enumerate(self.cost) if c < 0), None)
        if entering is None:
            return False
        # the phase-one objective is bounded below, so some ratio exists
        _, _, i = min((self.b[i] / self.A[i][entering], self.basis[i], i)
                      for i in range(self.m) if self.A[i][entering] > 0)
        self.pivot(i, entering)
        return True

    def run(self):
        while self.bland_step():
            pass

    @property
    def artificial_sum(self) -> Fraction:
        return -self.value

    def solution(self) -> List[Fraction]:
        x = [Fraction(0)] * self.n
        for i, v in enumerate(self.basis):
            if v < self.n:
                x[v] = self.b[i]
        return x


def simplex_feasible(lp: RationalLP) -> Optional[List[Fraction]]:
    """A basic feasible point of the system, or None when it has none"""
    if not lp.rows:
        return [Fraction(0)] * len(lp.variables)
    tab = _Tableau(lp)
    tab.run()
    logger.debug(f"phase one finished after {tab.pivots} pivots, artificial sum {tab.artificial_sum}")
    if tab.artificial_sum != 0:
        return None
    x = tab.solution()
    if not lp.satisfied_by(x):
        raise ArithmeticError("phase-one solution does not satisfy the system")
    return x


def _normalize(coeffs: Tuple[Fraction, ...], rhs: Fraction) -> Row:
    lead = next((abs(a) for a in coeffs if a != 0), None)
    if lead is None:
        return coeffs, rhs
    return tuple(a / lead for a in coeffs), rhs / lead


def fourier_motzkin_feasible(lp: RationalLP) -> bool:
    """Decide feasibility by substituting out equalities, then eliminating variables

    Rows are kept as sum(a x) <= b. Intended as a test oracle for small systems.
    """
    n = len(lp.variables)
    unit = lambda j, s: tuple(Fraction(s) if k == j else Fraction(0) for k in range(n))
    # x_j >= 0 for every variable
    ineqs: List[Row] = [(unit(j, -1), Fraction(0)) for j in range(n)]
    eqs: List[Row] = list(lp.rows)
    while eqs:
        coeffs, rhs = eqs.pop()
        j = next((k for k, a in enumerate(coeffs) if a != 0), None)
        if j is None:
            if rhs != 0:
                return False
            continue
        # x_j = (rhs - sum_{k != j} a_k x_k) / a_j, substituted everywhere
        a = coeffs[j]

        def substitute(row: Row) -> Row:
            c, r = row
            f = c[j] / a
            if f == 0:
                return row
            return tuple(ck - f * ak for ck, ak in zip(c, coeffs)), r - f * rhs

        eqs = [substitute(e) for e in eqs]
        ineqs = [substitute(q) for q in ineqs]
    for j in range(n):
        pos, neg, rest = [], [], []
        for c, r in ineqs:
            (pos if c[j] > 0 else neg if c[j] < 0 else rest).append((c, r))
        for cp, rp in pos:
            for cn, rn in neg:
                s, t = -cn[j], cp[j]
                rest.append((tuple(s * x + t * y for x, y in zip(cp, cn)), s * rp + t * rn))
        ineqs = list(dict.fromkeys(_normalize(c, r) for c, r in rest))
    return all(r >= 0 for _, r in ineqs)
