"""Surface configurations and their Iitaka volumes.

Three shapes of data are covered: elliptic fibrations described by base
genus, holomorphic Euler characteristic and singular fibers; quotients of
a product by a group of torsion translations (torsion constellations); and
ruled configurations with transversal and tangent boundary coefficients.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_sets import (
    UNBOUNDED,
    GeneratorSet,
    MoebiusFamily,
    Slot,
    SumExpr,
    format_rational,
    parse_rational,
)
from .kodaira import FiberClass, coefficient_set, euler_number


class InvalidConstellation(Exception):
    pass


class InfeasibleConfig(Exception):
    pass


@dataclass(frozen=True)
class Excluded:
    """A formula value that is not a volume because it is not positive."""

    value: Fraction

    def __str__(self) -> str:
        return f"excluded({format_rational(self.value)})"


# {1 - 1/m : m >= 1}, indexed from 0 as m/(m+1)
HARMONIC = GeneratorSet((), (MoebiusFamily(1, -1, 1, 0, 1),)).simplified()


def _positive_or_excluded(v: Fraction):
    return v if v > 0 else Excluded(v)


def smooth_volume(g: int, chi: int, multiplicities=()) -> Fraction | Excluded:
    if g < 0 or chi < 0:
        raise ValueError("g and chi must be non-negative")
    if any(m < 2 for m in multiplicities):
        raise ValueError("multiplicities must be at least 2")
    v = Fraction(2 * g - 2 + chi) + sum((1 - Fraction(1, m) for m in multiplicities), Fraction(0))
    return _positive_or_excluded(v)


def smooth_expr(chi: int, g: int) -> SumExpr:
    """Volumes of smooth surfaces with given chi and base genus."""
    return SumExpr(Fraction(2 * g - 2 + chi), (Slot(HARMONIC, UNBOUNDED),))


def ivol_sm_expr() -> SumExpr:
    """The chi >= 1 part of the smooth volume set; every (chi, g) lands inside it."""
    return smooth_expr(1, 0)


# ---------------------------------------------------------------------------
# Torsion constellations


def _element_order(x: int, y: int, a: int, b: int) -> int:
    return math.lcm(a // math.gcd(x, a), b // math.gcd(y, b))


@dataclass(frozen=True)
class TorsionConstellation:
    """Elements of ``Z/a + Z/b`` (``a | b``) given as residue pairs."""

    a: int
    b: int
    elements: tuple

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.b % self.a:
            raise InvalidConstellation("group must be Z/a + Z/b with a | b")
        elems = tuple((x % self.a, y % self.b) for x, y in self.elements)
        object.__setattr__(self, "elements", elems)

    def orders(self) -> tuple:
        return tuple(sorted(_element_order(x, y, self.a, self.b) for x, y in self.elements))

    def total(self) -> tuple:
        return (sum(x for x, _ in self.elements) % self.a, sum(y for _, y in self.elements) % self.b)

    def generates(self) -> bool:
        seen = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            x, y = frontier.pop()
            for u, v in self.elements:
                nxt = ((x + u) % self.a, (y + v) % self.b)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen) == self.a * self.b

    def validate(self) -> None:
        if any(e == (0, 0) for e in self.elements):
            raise InvalidConstellation("torsion elements must be nonzero")
        if self.total() != (0, 0):
            raise InvalidConstellation("elements must sum to zero")
        if not self.generates():
            raise InvalidConstellation("elements must generate the group")

    def __str__(self) -> str:
        els = ",".join(f"({x},{y})" for x, y in self.elements)
        return f"tors:Z/{self.a}+Z/{self.b};{els}"


def e00_volume(t: TorsionConstellation) -> Fraction | Excluded:
    t.validate()
    v = Fraction(-2) + sum((1 - Fraction(1, m) for m in t.orders()), Fraction(0))
    return _positive_or_excluded(v)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def realize_orders(orders) -> TorsionConstellation | None:
    """Explicit elements with the given orders, summing to zero and generating.

    The generated group has exponent ``lcm(orders)`` and rank at most two, so
    searching ``Z/a + Z/b`` with ``b`` the lcm and ``a | b`` is exhaustive.
    """
    orders = tuple(sorted(orders))
    if len(orders) < 2 or min(orders) < 2:
        return None
    b = math.lcm(*orders)
    for a in _divisors(b):
        by_order: dict = {}
        for x in range(a):
            for y in range(b):
                by_order.setdefault(_element_order(x, y, a, b), []).append((x, y))
        if any(m not in by_order for m in orders):
            continue
        found = _search_elements(orders, a, b, by_order)
        if found is not None:
            return found
    return None


def _search_elements(orders, a, b, by_order):
    head, last = orders[:-1], orders[-1]

    def walk(i, picked, sx, sy):
        if i == len(head):
            closing = ((-sx) % a, (-sy) % b)
            if _element_order(*closing, a, b) != last:
                return None
            cand = TorsionConstellation(a, b, tuple(picked) + (closing,))
            return cand if cand.generates() else None
        for x, y in by_order[head[i]]:
            got = walk(i + 1, picked + [(x, y)], sx + x, sy + y)
            if got is not None:
                return got
        return None

    return walk(0, [], 0, 0)


def _lcm_condition(orders) -> bool:
    # each order divides the lcm of the others
    for i, m in enumerate(orders):
        rest = orders[:i] + orders[i + 1 :]
        if math.lcm(*rest) % m:
            return False
    return True


def enumerate_constellations(max_volume) -> list[TorsionConstellation]:
    """One constellation per order multiset with volume in ``(0, max_volume]``.

    Only bounds below 1/2 are accepted: the volumes accumulate at 1/2, so
    larger bounds have infinitely many answers.
    """
    bound = parse_rational(max_volume)
    if bound <= 0:
        raise ValueError("max_volume must be positive")
    if bound >= Fraction(1, 2):
        raise ValueError("infinitely many constellations; use a bound below 1/2")
    max_len = int(2 * (bound + 2))
    out = []
    for r in range(3, max_len + 1):
        for orders in _order_tuples(r, bound):
            v = Fraction(-2) + sum((1 - Fraction(1, m) for m in orders), Fraction(0))
            if not 0 < v <= bound or not _lcm_condition(orders):
                continue
            t = realize_orders(orders)
            if t is not None:
                out.append(t)
    out.sort(key=lambda t: (e00_volume(t), t.orders()))
    return out


def _order_tuples(r: int, bound: Fraction):
    """Non-decreasing order tuples of length r that can keep the volume <= bound."""

    def walk(prefix, partial):
        j = len(prefix)
        remaining = r - j
        if remaining == 0:
            yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 2
        if remaining == 1:
            # the last order divides the lcm of the others
            for m in _divisors(math.lcm(*prefix)):
                if m >= lo:
                    yield tuple(prefix) + (m,)
            return
        room = (bound + 2 - partial) / remaining
        if room >= 1:
            raise ValueError("order search is unbounded")
        hi = math.floor(1 / (1 - room))
        for m in range(lo, hi + 1):
            yield from walk(prefix + [m], partial + 1 - Fraction(1, m))

    yield from walk([], Fraction(0))


def e00_values(max_volume) -> list[Fraction]:
    return sorted({e00_volume(t) for t in enumerate_constellations(max_volume)})


# ---------------------------------------------------------------------------
# Elliptic configurations


@dataclass(frozen=True)
class EllipticConfig:
    """Base genus, chi, listed fibers; ``folded`` adds an unbounded C1 slot.

    The folded slot stands for any number of extra fibers with coefficient
    one and multiple fibers of type mI0 (whose contributions ``1 - 1/m``
    and ``1`` are exactly the elements of C1).
    """

    g: int
    chi: int
    fibers: tuple = ()
    folded: bool = False

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if self.g < 0 or self.chi < 0:
            raise InfeasibleConfig("g and chi must be non-negative")

    def euler_sum(self) -> int:
        return sum(euler_number(f) for f in self.fibers)

    def check(self) -> None:
        if self.chi > 0 and self.euler_sum() != 12 * self.chi:
            raise InfeasibleConfig(f"Euler numbers sum to {self.euler_sum()}, expected {12 * self.chi}")
        if self.chi == 0 and any(not (f.is_multiple and f.k == 0) for f in self.fibers):
            raise InfeasibleConfig("chi = 0 allows only mI0 fibers")

    def __str__(self) -> str:
        body = f"chi={self.chi},g={self.g};" + ",".join(str(f) for f in self.fibers)
        return body + (";folded" if self.folded else "")


def fiber_slot(f: FiberClass) -> Slot:
    return Slot(coefficient_set(f), 1)


def config_volume_expr(c: EllipticConfig) -> SumExpr:
    """Volumes 2g - 2 + chi + contributions of the fibers.

    A multiple fiber mI_k adds ``1 - 1/m`` to the offset and a coefficient
    from ``(1/m) C_k``.  chi = 0 configurations are always folded.
    """
    c.check()
    offset = Fraction(2 * c.g - 2 + c.chi)
    slots = []
    for f in c.fibers:
        if f.is_multiple:
            offset += 1 - Fraction(1, f.m)
        slots.append(fiber_slot(f))
    if c.folded or c.chi == 0:
        slots.append(Slot(coefficient_set(FiberClass("I", 1)), UNBOUNDED))
    return SumExpr(offset, tuple(slots))


_WEIGHTED_CLASSES: dict = {}


def classes_of_weight(w: int) -> list[FiberClass]:
    """Non-multiple singular fiber classes with Euler number ``w``."""
    if w not in _WEIGHTED_CLASSES:
        out = [FiberClass("I", w)]
        out += [FiberClass(x) for x in ("II", "III", "IV", "IV*", "III*", "II*") if euler_number(FiberClass(x)) == w]
        if w >= 6:
            out.append(FiberClass("I*", w - 6))
        _WEIGHTED_CLASSES[w] = sorted(out, key=str)
    return _WEIGHTED_CLASSES[w]


def _partitions(total: int, max_part: int):
    if total == 0:
        yield ()
        return
    for part in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def enumerate_configs(chi: int, g: int, folded: bool = True) -> list[EllipticConfig]:
    """All fiber multisets with Euler sum 12*chi, in canonical order."""
    if chi < 1:
        raise ValueError("chi must be positive; chi = 0 is handled by constellations")
    if g < 0:
        raise ValueError("g must be non-negative")
    out = set()
    for parts in _partitions(12 * chi, 12 * chi):
        counts: dict = {}
        for w in parts:
            counts[w] = counts.get(w, 0) + 1
        per_weight = [
            list(itertools.combinations_with_replacement(classes_of_weight(w), n)) for w, n in sorted(counts.items())
        ]
        for combo in itertools.product(*per_weight):
            fibers = tuple(sorted((f for group in combo for f in group), key=_fiber_sort_key))
            out.add(fibers)
    return [EllipticConfig(g, chi, fibers, folded) for fibers in sorted(out, key=_config_sort_key)]


def _fiber_sort_key(f: FiberClass):
    return (-euler_number(f), str(f))


def _config_sort_key(fibers):
    return tuple(_fiber_sort_key(f) for f in fibers)


# ---------------------------------------------------------------------------
# Ruled configurations

C1 = coefficient_set(FiberClass("I", 1))
C1_STAR = coefficient_set(FiberClass("I*", 1))


@dataclass(frozen=True)
class RuledConfig:
    """``k`` plus transversal coefficients from C1 and tangent ones from C1*."""

    k: int
    transversal: tuple = ()
    tangent: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "transversal", tuple(Fraction(x) for x in self.transversal))
        object.__setattr__(self, "tangent", tuple(Fraction(x) for x in self.tangent))
        if self.k < 0:
            raise InfeasibleConfig("k must be non-negative")
        if len(self.tangent) > 2 * self.k:
            raise InfeasibleConfig(f"at most {2 * self.k} tangent points allowed")
        if not all(C1.contains(x) for x in self.transversal):
            raise InfeasibleConfig("transversal coefficients must lie in C1")
        if not all(C1_STAR.contains(x) for x in self.tangent):
            raise InfeasibleConfig("tangent coefficients must lie in C1*")

    def volume(self) -> Fraction | Excluded:
        v = Fraction(self.k - 2) + sum(self.transversal, Fraction(0)) + sum(self.tangent, Fraction(0))
        return _positive_or_excluded(v)


def ruled_volume_expr(k: int) -> SumExpr:
    if k < 0:
        raise ValueError("k must be non-negative")
    slots = [Slot(C1, UNBOUNDED)]
    if k > 0:
        slots.append(Slot(C1_STAR, 2 * k))
    return SumExpr(Fraction(k - 2), tuple(slots))


def pg_volume_expr(p_g: int) -> SumExpr:
    """Smooth volumes with prescribed geometric genus.

    For ``p_g = 0`` this is the chi = 1 expression; the quotient (chi = 0)
    volumes below 1/2 are listed separately by :func:`e00_values`.
    """
    if p_g < 0:
        raise ValueError("p_g must be non-negative")
    if p_g == 0:
        return ivol_sm_expr()
    return SumExpr(Fraction(p_g - 1), (Slot(HARMONIC, UNBOUNDED),))


def anticanonical_volume(multiple_fiber_multiplicity: int | None = None) -> Fraction:
    """Anticanonical Iitaka volume of a rational elliptic surface."""
    m = multiple_fiber_multiplicity or 1
    if m < 1:
        raise ValueError("multiplicity must be positive")
    base_canonical = Fraction(-2)
    line_bundle = Fraction(1)
    return -(base_canonical + line_bundle + Fraction(m - 1, m))


# ---------------------------------------------------------------------------
# Compact string forms


def parse_config(text: str):
    """Parse ``chi=1,g=0;III*,II,I1[;folded]`` or ``tors:Z/2+Z/6;(1,0),...``."""
    s = text.strip()
    if s.startswith("tors:"):
        head, _, tail = s[5:].partition(";")
        match = re.fullmatch(r"Z/(\d+)\+Z/(\d+)", head.replace(" ", ""))
        if not match:
            raise ValueError(f"bad group in {text!r}")
        a, b = int(match.group(1)), int(match.group(2))
        elems = [(int(x), int(y)) for x, y in re.findall(r"\((-?\d+),(-?\d+)\)", tail.replace(" ", ""))]
        return TorsionConstellation(a, b, tuple(elems))
    parts = s.split(";")
    params = {}
    for item in parts[0].split(","):
        key, eq, val = item.partition("=")
        if not eq or key.strip() not in ("chi", "g"):
            raise ValueError(f"bad parameter {item!r}")
        params[key.strip()] = int(val)
    if set(params) != {"chi", "g"}:
        raise ValueError("both chi and g are required")
    fibers = []
    folded = False
    if len(parts) > 1 and parts[1].strip():
        fibers = [FiberClass.parse(x) for x in parts[1].split(",") if x.strip()]
    if len(parts) > 2:
        if parts[2].strip() != "folded" or len(parts) > 3:
            raise ValueError(f"unexpected trailing data in {text!r}")
        folded = True
    return EllipticConfig(params["g"], params["chi"], tuple(fibers), folded)
