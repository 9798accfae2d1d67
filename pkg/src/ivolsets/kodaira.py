"""Kodaira fiber classes and the coefficients they allow.

A coefficient ``c`` is allowed for a fiber ``F`` when some divisor ``E`` over
the fiber has log discrepancy ``a(E, S, cF)`` equal to 0 or 1, with
``0 <= c <= lct(F)``.  On an snc model each component has log discrepancy
``alpha - beta*c``; toric blow-ups at a crossing of components ``i`` and
``j`` give ``p*a_i + q*a_j`` for coprime ``p, q >= 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_sets import GeneratorSet, MoebiusFamily

STAR_KINDS = ("I*", "II*", "III*", "IV*")
KINDS = ("I", "mI", "II", "III", "IV") + STAR_KINDS


class UnsupportedClass(Exception):
    pass


@dataclass(frozen=True, order=True)
class FiberClass:
    """A Kodaira fiber type; ``k`` for I_k / I_k*, ``m`` for multiple fibers."""

    kind: str
    k: int = 0
    m: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown fiber kind {self.kind!r}")
        if self.kind == "mI" and self.m < 2:
            raise ValueError("multiple fibers need m >= 2")
        if self.kind != "mI" and self.m != 1:
            raise ValueError("only I_k fibers can be multiple")
        if self.k < 0 or (self.kind not in ("I", "mI", "I*") and self.k):
            raise ValueError("bad k")

    @property
    def is_multiple(self) -> bool:
        return self.kind == "mI"

    @property
    def is_star(self) -> bool:
        return self.kind in STAR_KINDS

    def __str__(self) -> str:
        if self.kind == "mI":
            return f"{self.m}I{self.k}"
        if self.kind == "I":
            return f"I{self.k}"
        if self.kind == "I*":
            return f"I{self.k}*"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "FiberClass":
        s = text.strip()
        if s in ("II", "III", "IV", "II*", "III*", "IV*"):
            return cls(s)
        match = re.fullmatch(r"(\d*)I(\d+)(\*?)", s)
        if not match:
            raise ValueError(f"unknown fiber class {text!r}")
        mult, k, star = match.groups()
        k = int(k)
        if star:
            if mult:
                raise ValueError("star fibers are never multiple")
            return cls("I*", k)
        if mult and int(mult) >= 2:
            return cls("mI", k, int(mult))
        if mult and int(mult) != 1:
            raise ValueError(f"bad multiplicity in {text!r}")
        return cls("I", k)


def fiber(text: str) -> FiberClass:
    return FiberClass.parse(text)


_LCT = {
    "II": Fraction(5, 6),
    "III": Fraction(3, 4),
    "IV": Fraction(2, 3),
    "I*": Fraction(1, 2),
    "II*": Fraction(1, 6),
    "III*": Fraction(1, 4),
    "IV*": Fraction(1, 3),
}

_EULER = {"II": 2, "III": 3, "IV": 4, "II*": 10, "III*": 9, "IV*": 8}


def lct(f: FiberClass) -> Fraction:
    if f.kind == "I":
        return Fraction(1)
    if f.kind == "mI":
        return Fraction(1, f.m)
    return _LCT[f.kind]


def euler_number(f: FiberClass) -> int:
    if f.kind in ("I", "mI"):
        return f.k
    if f.kind == "I*":
        return 6 + f.k
    return _EULER[f.kind]


@dataclass(frozen=True)
class Divisor:
    label: str
    alpha: Fraction
    beta: Fraction

    def log_discrepancy(self, c) -> Fraction:
        return self.alpha - self.beta * Fraction(c)


@dataclass(frozen=True)
class FiberResolutionData:
    divisors: tuple
    incidences: tuple

    def divisor(self, label: str) -> Divisor:
        return next(d for d in self.divisors if d.label == label)

    def threshold(self) -> Fraction:
        return min(d.alpha / d.beta for d in self.divisors if d.beta > 0)

    def is_connected(self) -> bool:
        labels = [d.label for d in self.divisors]
        seen = {labels[0]}
        stack = [labels[0]]
        while stack:
            a = stack.pop()
            for x, y in self.incidences:
                for u, v in ((x, y), (y, x)):
                    if u == a and v not in seen:
                        seen.add(v)
                        stack.append(v)
        return len(seen) == len(labels)


def _snc(mults: dict, edges: list) -> FiberResolutionData:
    divs = tuple(Divisor(label, Fraction(1), Fraction(m)) for label, m in mults.items())
    return FiberResolutionData(divs, tuple(edges))


def _chain(prefix: str, mults: list) -> tuple:
    labels = [f"{prefix}{i}" for i in range(len(mults))]
    return dict(zip(labels, mults)), list(zip(labels, labels[1:]))


def _affine(label, alpha, beta) -> Divisor:
    return Divisor(label, Fraction(alpha), Fraction(beta))


def resolution_data(f: FiberClass) -> FiberResolutionData:
    """Components of an snc model over the fiber with their log discrepancies.

    Nodal, cuspidal, tacnodal and triple-point fibers are blown up until the
    total transform is snc; the exceptional curves keep their discrepancy
    forms ``alpha - beta*c``.
    """
    kind, k = f.kind, f.k
    if kind == "mI":
        raise UnsupportedClass("multiple fibers are handled by scaling")
    if kind == "I":
        if k == 0:
            return FiberResolutionData((_affine("F", 1, 1),), ())
        if k == 1:
            # blow up the node: the exceptional curve meets F twice
            return FiberResolutionData((_affine("F", 1, 1), _affine("E1", 2, 2)), (("F", "E1"),))
        labels = [f"C{i}" for i in range(k)]
        edges = [(labels[i], labels[(i + 1) % k]) for i in range(k)]
        if k == 2:
            edges = edges[:1]
        return FiberResolutionData(tuple(_affine(x, 1, 1) for x in labels), tuple(edges))
    if kind == "II":
        divs = (_affine("F", 1, 1), _affine("E1", 2, 2), _affine("E2", 3, 3), _affine("E3", 5, 6))
        return FiberResolutionData(divs, (("E3", "F"), ("E3", "E1"), ("E3", "E2")))
    if kind == "III":
        # tangency: one blow-up leaves three curves through a point, a second separates them
        divs = (_affine("C1", 1, 1), _affine("C2", 1, 1), _affine("E1", 2, 2), _affine("E2", 3, 4))
        return FiberResolutionData(divs, (("E2", "C1"), ("E2", "C2"), ("E2", "E1")))
    if kind == "IV":
        divs = (_affine("L1", 1, 1), _affine("L2", 1, 1), _affine("L3", 1, 1), _affine("E1", 2, 3))
        return FiberResolutionData(divs, (("E1", "L1"), ("E1", "L2"), ("E1", "L3")))
    if kind == "I*":
        mults, edges = _chain("C", [2] * (k + 1))
        ends = ("C0", f"C{k}")
        for i, tail in enumerate(("T1", "T2", "T3", "T4")):
            mults[tail] = 1
            edges.append((ends[i // 2], tail))
        return _snc(mults, edges)
    if kind == "II*":
        mults, edges = _chain("C", [1, 2, 3, 4, 5, 6, 4, 2])
        mults["D"] = 3
        edges.append(("C5", "D"))
        return _snc(mults, edges)
    if kind == "III*":
        mults, edges = _chain("C", [1, 2, 3, 4, 3, 2, 1])
        mults["D"] = 2
        edges.append(("C3", "D"))
        return _snc(mults, edges)
    if kind == "IV*":
        mults = {"O": 3}
        edges = []
        for arm in "ABC":
            mults[f"{arm}1"] = 2
            mults[f"{arm}2"] = 1
            edges += [("O", f"{arm}1"), (f"{arm}1", f"{arm}2")]
        return _snc(mults, edges)
    raise UnsupportedClass(str(f))


def _family(num_slope, num_const, den_slope, den_const, start: int = 0) -> MoebiusFamily:
    """Integer Moebius family from rational coefficients."""
    coeffs = [Fraction(x) for x in (num_slope, num_const, den_slope, den_const)]
    scale = math.lcm(*(x.denominator for x in coeffs))
    p, q, s, t = (int(x * scale) for x in coeffs)
    return MoebiusFamily(p, q, s, t, start)


def _nonnegative_part(f: MoebiusFamily) -> MoebiusFamily | None:
    m = f.first_above(Fraction(0))
    if m is None:
        return None
    if m > f.m_start and f.value(m - 1) == 0:
        m -= 1
    return f.starting_at(m).reindexed(0)


def _solve_fiber(data: FiberResolutionData) -> GeneratorSet:
    lam = data.threshold()
    points: set = set()
    families: list = []

    def add_point(c):
        if 0 <= c <= lam:
            points.add(c)

    for d in data.divisors:
        for t in (0, 1):
            add_point((d.alpha - t) / d.beta)

    for a, b in data.incidences:
        di, dj = data.divisor(a), data.divisor(b)
        gap_i = di.alpha - lam * di.beta
        gap_j = dj.alpha - lam * dj.beta
        if gap_i == 0 and gap_j == 0:
            add_point(lam)  # t = 0 only reaches the threshold itself
            bi, bj = sorted((di.beta, dj.beta))
            if bi == bj:
                first_n = 2
                unit = bi
            elif bi == 1:
                first_n = bj + 1
                unit = Fraction(1)
            else:
                raise UnsupportedClass("crossing of two threshold components with unequal multiplicities")
            # lam - 1/(unit*N) for N >= first_n
            fam = _family(lam * unit, lam * unit * first_n - 1, unit, unit * first_n)
            fam = _nonnegative_part(fam)
            if fam is not None:
                families.append(fam)
            continue
        if gap_i > 0 and gap_j > 0:
            # p*gap_i + q*gap_j <= 1 bounds both p and q
            p = 1
            while p * gap_i + gap_j <= 1:
                q = 1
                while p * gap_i + q * gap_j <= 1:
                    if math.gcd(p, q) == 1:
                        add_point((p * di.alpha + q * dj.alpha - 1) / (p * di.beta + q * dj.beta))
                    q += 1
                p += 1
            continue
        if gap_i == 0:
            di, dj, gap_i, gap_j = dj, di, gap_j, gap_i
        # now gap_i > 0 and gap_j == 0: p is bounded, q runs over residues mod p
        p = 1
        while p * gap_i <= 1:
            slack = 1 - p * gap_i
            for r in range(1, p + 1):
                if math.gcd(r, p) != 1:
                    continue
                # q = p*j + r; c = lam - slack / (p*beta_i + q*beta_j)
                den_slope = p * dj.beta
                den_const = p * di.beta + r * dj.beta
                if slack == 0:
                    add_point(lam)
                    continue
                fam = _family(lam * den_slope, lam * den_const - slack, den_slope, den_const)
                fam = _nonnegative_part(fam)
                if fam is not None:
                    families.append(fam)
            p += 1
    return GeneratorSet(tuple(points), tuple(families)).simplified()


@lru_cache(maxsize=None)
def coefficient_set(f: FiberClass) -> GeneratorSet:
    """Allowed coefficients of ``f`` as a GeneratorSet inside ``[0, lct(f)]``."""
    if f.is_multiple:
        return coefficient_set(FiberClass("I", f.k)).scaled(Fraction(1, f.m)).simplified()
    return _solve_fiber(resolution_data(f))


ALL_TABLE_CLASSES = tuple(
    FiberClass.parse(x) for x in ("I0", "I1", "II", "III", "IV", "I0*", "I1*", "II*", "III*", "IV*")
)
