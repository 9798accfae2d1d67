"""Exact DCC subsets of [0, 1] and offset sums over them.

All values are ``fractions.Fraction``.  A :class:`GeneratorSet` is a finite
set of points plus strictly increasing Moebius families
``(p*m + q) / (s*m + t)``.  A :class:`SumExpr` is an offset plus multiset
sums drawn from generators, filtered to the window ``0 < v <= upper``.

Searches work on the successor operation "smallest sum strictly above a
threshold", which is well defined because every sum set here is DCC.  An
infinite family branch is closed off in finite time by bounding its tail
with the limit of the family.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
ZERO = Fraction(0)


class ExhaustedSet(Exception):
    """Raised when fewer elements exist in the window than were requested."""


class Diverges(Exception):
    """Raised when iterated derived sets do not die out below the ceiling."""


class _Unbounded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()
Cap = Union[int, _Unbounded]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or pass through ints and Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}, expected p/q") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    """Render as ``p/q``, or ``p`` when integral."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _dec(cap: Cap) -> Cap:
    return cap if cap is UNBOUNDED else cap - 1


def _cap_to_json(cap: Cap):
    return "unbounded" if cap is UNBOUNDED else cap


def _cap_from_json(raw) -> Cap:
    if raw == "unbounded":
        return UNBOUNDED
    if isinstance(raw, int) and not isinstance(raw, bool) and raw >= 1:
        return raw
    raise ValueError(f"bad cap {raw!r}")


# ---------------------------------------------------------------------------
# Moebius families


@dataclass(frozen=True)
class MoebiusFamily:
    """Values ``(p*m + q) / (s*m + t)`` for integers ``m >= m_start``."""

    p: int
    q: int
    s: int
    t: int
    m_start: int = 0

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("family needs s > 0")
        if self.p * self.t - self.q * self.s <= 0:
            raise ValueError("family must be strictly increasing (p*t - q*s > 0)")
        if self.m_start < 0:
            raise ValueError("m_start must be non-negative")
        if self.s * self.m_start + self.t <= 0:
            raise ValueError("denominator must stay positive")

    @property
    def limit(self) -> Fraction:
        return Fraction(self.p, self.s)

    def value(self, m: int) -> Fraction:
        return Fraction(self.p * m + self.q, self.s * m + self.t)

    def _solve(self, x: Fraction):
        # value(m) compared with x = a/b reduces to m * d  vs  rhs
        a, b = x.numerator, x.denominator
        return b * self.p - a * self.s, a * self.t - b * self.q

    def first_above(self, x: Fraction) -> int | None:
        """Smallest index whose value exceeds ``x``; None if ``x >= limit``."""
        d, rhs = self._solve(Fraction(x))
        if d <= 0:
            return None
        return max(self.m_start, rhs // d + 1)

    def last_at_most(self, x: Fraction) -> int | None:
        """Largest index whose value is ``<= x``; requires ``x < limit``."""
        d, rhs = self._solve(Fraction(x))
        if d <= 0:
            raise ValueError("x is at or above the family limit")
        m = rhs // d
        return m if m >= self.m_start else None

    def last_below(self, x: Fraction) -> int | None:
        """Largest index whose value is ``< x``; requires ``x <= limit``."""
        d, rhs = self._solve(Fraction(x))
        if d < 0:
            raise ValueError("x is above the family limit")
        if d == 0:
            raise ValueError("x equals the limit; the range is infinite")
        m = -((-rhs) // d) - 1
        return m if m >= self.m_start else None

    def index_of(self, x: Fraction) -> int | None:
        d, rhs = self._solve(Fraction(x))
        if d <= 0 or rhs % d:
            return None
        m = rhs // d
        return m if m >= self.m_start else None

    def contains(self, x: Fraction) -> bool:
        return self.index_of(x) is not None

    def reindexed(self, start: int = 0) -> "MoebiusFamily":
        """Same values, indexed from ``start``; coefficients gcd-reduced."""
        shift = self.m_start - start
        p, q, s, t = self.p, self.q + self.p * shift, self.s, self.t + self.s * shift
        g = math.gcd(math.gcd(p, q), math.gcd(s, t))
        return MoebiusFamily(p // g, q // g, s // g, t // g, start)

    def scaled(self, factor: Fraction) -> "MoebiusFamily":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        a, b = factor.numerator, factor.denominator
        return MoebiusFamily(self.p * a, self.q * a, self.s * b, self.t * b, self.m_start).reindexed(
            self.m_start
        )

    def starting_at(self, m: int) -> "MoebiusFamily":
        return MoebiusFamily(self.p, self.q, self.s, self.t, max(m, self.m_start))

    def subfamily_of(self, other: "MoebiusFamily") -> bool:
        """True if every value of self is a value of ``other``.

        Checks whether self(m) = other(k*m + l) for integers k >= 1 and l,
        i.e. whether the coefficient matrices agree up to scalar after an
        affine substitution of the index.
        """
        if self.limit != other.limit:
            return False
        P, Q, S, T = other.p, other.q, other.s, other.t
        # self = mu * [[P k, P l + Q], [S k, S l + T]]
        mu_k = Fraction(self.p, P) if P else Fraction(self.s, S)
        if Fraction(self.s) != mu_k * S or Fraction(self.p) != mu_k * P:
            return False
        det = P * T - Q * S
        # solve  P*X + Q*Y = q_self ,  S*X + T*Y = t_self  for X = mu*l, Y = mu
        X = Fraction(self.q * T - Q * self.t, det)
        Y = Fraction(P * self.t - self.q * S, det)
        if Y == 0:
            return False
        k, l = mu_k / Y, X / Y
        if k.denominator != 1 or l.denominator != 1 or k < 1:
            return False
        return int(k) * self.m_start + int(l) >= other.m_start

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "s": self.s, "t": self.t, "m_start": self.m_start}

    @classmethod
    def from_json(cls, raw: dict) -> "MoebiusFamily":
        return cls(int(raw["p"]), int(raw["q"]), int(raw["s"]), int(raw["t"]), int(raw["m_start"]))


# ---------------------------------------------------------------------------
# Generator sets


@dataclass(frozen=True)
class GeneratorSet:
    """A DCC subset of [0, 1]: isolated points plus increasing families."""

    points: tuple = ()
    families: tuple = ()

    def __post_init__(self):
        pts = tuple(sorted({Fraction(x) for x in self.points}))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "families", tuple(self.families))
        for x in pts:
            if not 0 <= x <= 1:
                raise ValueError(f"point {x} outside [0, 1]")
        for f in self.families:
            if f.value(f.m_start) < 0 or f.limit > 1:
                raise ValueError(f"family {f} leaves [0, 1]")

    # -- basic queries

    def limits(self) -> list[Fraction]:
        return sorted({f.limit for f in self.families})

    def contains(self, x) -> bool:
        x = Fraction(x)
        return x in self.points or any(f.contains(x) for f in self.families)

    def is_finite(self) -> bool:
        return not self.families

    def min_positive(self) -> Fraction | None:
        found = self.k_smallest(1, ZERO)
        return found[0] if found else None

    def has_positive(self) -> bool:
        return self.min_positive() is not None

    def k_smallest(self, k: int, above=ZERO) -> list[Fraction]:
        """The ``k`` smallest distinct elements strictly above ``above``."""
        above = Fraction(above)
        heap: list = []
        for x in self.points:
            if x > above:
                heap.append((x, 0, 0, 0))
        for i, f in enumerate(self.families):
            m = f.first_above(above)
            if m is not None:
                heap.append((f.value(m), 1, i, m))
        heapq.heapify(heap)
        out: list[Fraction] = []
        while heap and len(out) < k:
            x, kind, i, m = heapq.heappop(heap)
            if not out or x > out[-1]:
                out.append(x)
            if kind == 1:
                heapq.heappush(heap, (self.families[i].value(m + 1), 1, i, m + 1))
        return out

    def elements_up_to(self, bound, limit: int = 10_000) -> list[Fraction]:
        """All elements ``<= bound`` (sorted); refuses infinite ranges."""
        bound = Fraction(bound)
        if any(f.limit <= bound for f in self.families):
            raise ValueError("infinitely many elements below bound")
        vals = {x for x in self.points if x <= bound}
        for f in self.families:
            hi = f.last_at_most(bound)
            if hi is not None:
                vals.update(f.value(m) for m in range(f.m_start, hi + 1))
        if len(vals) > limit:
            raise ValueError("too many elements")
        return sorted(vals)

    # -- constructions

    def scaled(self, factor) -> "GeneratorSet":
        factor = Fraction(factor)
        return GeneratorSet(tuple(x * factor for x in self.points), tuple(f.scaled(factor) for f in self.families))

    def union(self, *others: "GeneratorSet") -> "GeneratorSet":
        pts = set(self.points)
        fams = list(self.families)
        for o in others:
            pts.update(o.points)
            fams.extend(o.families)
        return GeneratorSet(tuple(pts), tuple(fams)).simplified()

    def restricted(self, lower=None, upper=None, lower_open=True, upper_open=True) -> "GeneratorSet":
        """Elements inside the interval between ``lower`` and ``upper``."""

        def inside(x):
            if lower is not None and (x <= lower if lower_open else x < lower):
                return False
            if upper is not None and (x >= upper if upper_open else x > upper):
                return False
            return True

        pts = [x for x in self.points if inside(x)]
        fams = []
        for f in self.families:
            start = f.m_start
            if lower is not None:
                lower_f = Fraction(lower)
                m = f.first_above(lower_f)
                if not lower_open and m is not None and m - 1 >= f.m_start and f.value(m - 1) == lower_f:
                    m -= 1
                if m is None:
                    continue
                start = m
            if upper is not None and Fraction(upper) <= f.limit:
                upper_f = Fraction(upper)
                if upper_f == f.limit:
                    fams.append(f.starting_at(start))
                    continue
                hi = f.last_below(upper_f) if upper_open else f.last_at_most(upper_f)
                if hi is not None:
                    pts.extend(f.value(m) for m in range(start, hi + 1))
                continue
            fams.append(f.starting_at(start))
        return GeneratorSet(tuple(pts), tuple(fams)).simplified()

    def simplified(self) -> "GeneratorSet":
        """Drop families contained in other families and points they cover.

        Families are reindexed from 0 and extended backwards through listed
        points when the extension stays inside [0, 1].
        """
        fams: list[MoebiusFamily] = []
        for f in self.families:
            f = f.reindexed(0)
            if f not in fams:
                fams.append(f)
        kept: list[MoebiusFamily] = []
        for i, f in enumerate(fams):
            covered = False
            for j, g in enumerate(fams):
                if i == j or not f.subfamily_of(g):
                    continue
                # equal families keep the earlier copy
                if g.subfamily_of(f) and j > i:
                    continue
                covered = True
                break
            if not covered:
                kept.append(f)
        pts = set(self.points)
        grown: list[MoebiusFamily] = []
        for f in kept:
            while True:
                prev = f.value(-1) if f.s * -1 + f.t > 0 else None
                if prev is None or prev < 0 or prev not in pts:
                    break
                g = MoebiusFamily(f.p, f.q - f.p, f.s, f.t - f.s, 0)
                f = g.reindexed(0)
            grown.append(f)
        pts = {x for x in pts if not any(f.contains(x) for f in grown)}
        grown.sort(key=lambda f: (f.limit, f.value(0), f.s, f.t, f.p, f.q))
        return GeneratorSet(tuple(pts), tuple(grown))

    def issubset(self, other: "GeneratorSet") -> bool:
        """Sufficient test: points are members and families are subfamilies."""
        return all(other.contains(x) for x in self.points) and all(
            any(f.subfamily_of(g) for g in other.families) for f in self.families
        )

    def key(self) -> tuple:
        return (
            tuple((x.numerator, x.denominator) for x in self.points),
            tuple((f.p, f.q, f.s, f.t, f.m_start) for f in self.families),
        )

    def to_json(self) -> dict:
        return {"points": [format_rational(x) for x in self.points], "families": [f.to_json() for f in self.families]}

    @classmethod
    def from_json(cls, raw: dict) -> "GeneratorSet":
        return cls(
            tuple(parse_rational(x) for x in raw.get("points", [])),
            tuple(MoebiusFamily.from_json(f) for f in raw.get("families", [])),
        )


def generator_k_smallest(g: GeneratorSet, k: int, above=ZERO) -> list[Fraction]:
    if k < 1:
        raise ValueError("k must be positive")
    return g.k_smallest(k, above)


# ---------------------------------------------------------------------------
# Sum expressions


@dataclass(frozen=True)
class Slot:
    """Multiset sums of at most ``cap`` elements of ``generator``."""

    generator: GeneratorSet
    cap: Cap = 1

    def __post_init__(self):
        if self.cap is not UNBOUNDED and (not isinstance(self.cap, int) or self.cap < 0):
            raise ValueError(f"bad cap {self.cap!r}")

    def to_json(self) -> dict:
        return {"generator": self.generator.to_json(), "cap": _cap_to_json(self.cap)}

    @classmethod
    def from_json(cls, raw: dict) -> "Slot":
        return cls(GeneratorSet.from_json(raw["generator"]), _cap_from_json(raw["cap"]))


@dataclass(frozen=True)
class SumExpr:
    """``{offset + sum of slot values}`` kept where ``0 < v <= upper``."""

    offset: Fraction = ZERO
    slots: tuple = ()
    upper: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "slots", tuple(self.slots))
        if self.upper is not None:
            object.__setattr__(self, "upper", Fraction(self.upper))

    def with_upper(self, bound) -> "SumExpr":
        bound = Fraction(bound)
        if self.upper is not None:
            bound = min(bound, self.upper)
        return SumExpr(self.offset, self.slots, bound)

    def in_window(self, v: Fraction) -> bool:
        return v > 0 and (self.upper is None or v <= self.upper)

    def normalized(self) -> "SumExpr":
        """Merge slots over equal generators and drop slots that add nothing."""
        merged: dict = {}
        order: list = []
        for slot in self.slots:
            if slot.cap == 0 or not slot.generator.has_positive():
                continue
            key = slot.generator.key()
            if key not in merged:
                merged[key] = slot
                order.append(key)
            else:
                old = merged[key]
                cap = UNBOUNDED if UNBOUNDED in (old.cap, slot.cap) else old.cap + slot.cap
                merged[key] = Slot(old.generator, cap)
        slots = [merged[k] for k in sorted(order)]
        unbounded = [s.generator for s in slots if s.cap is UNBOUNDED]
        slots = [
            s
            for s in slots
            if not (s.cap is UNBOUNDED and any(g != s.generator and s.generator.issubset(g) for g in unbounded))
        ]
        return SumExpr(self.offset, tuple(slots), self.upper)

    def key(self) -> tuple:
        n = self.normalized()
        return (
            n.offset,
            n.upper,
            tuple((s.generator.key(), "u" if s.cap is UNBOUNDED else s.cap) for s in n.slots),
        )

    def value_of(self, witness: Sequence[Sequence[Fraction]]) -> Fraction:
        """Evaluate a per-slot witness after checking it against the slots."""
        if len(witness) != len(self.slots):
            raise ValueError("witness has the wrong number of slots")
        total = self.offset
        for slot, picks in zip(self.slots, witness):
            if slot.cap is not UNBOUNDED and len(picks) > slot.cap:
                raise ValueError("too many picks for slot")
            for x in picks:
                if not slot.generator.contains(x):
                    raise ValueError(f"{x} is not in the slot generator")
                total += Fraction(x)
        return total

    def to_json(self) -> dict:
        return {
            "offset": format_rational(self.offset),
            "slots": [s.to_json() for s in self.slots],
            "window": {"upper": None if self.upper is None else format_rational(self.upper)},
        }

    @classmethod
    def from_json(cls, raw: dict) -> "SumExpr":
        upper = (raw.get("window") or {}).get("upper")
        return cls(
            parse_rational(raw.get("offset", "0")),
            tuple(Slot.from_json(s) for s in raw.get("slots", [])),
            None if upper is None else parse_rational(upper),
        )


ExprLike = Union[SumExpr, Sequence[SumExpr]]


def _as_union(e: ExprLike) -> tuple:
    if isinstance(e, SumExpr):
        return (e,)
    return tuple(e)


# ---------------------------------------------------------------------------
# Search engine


@dataclass(frozen=True)
class Branch:
    """One top-level branch of a minimum search, in value terms.

    ``kind`` is ``explored`` (``bound`` is the exact branch minimum),
    ``partial`` (every value in the branch is at least the partial sum
    ``bound``), ``tail`` (family indices from ``m`` on are bounded below by
    ``bound`` via the family limit) or ``empty`` (no positive value).
    """

    kind: str
    slot: int | None
    choice: str
    bound: Fraction | None
    family: int | None = None
    index: int | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "slot": self.slot,
            "choice": self.choice,
            "bound": None if self.bound is None else format_rational(self.bound),
            "family": self.family,
            "index": self.index,
        }


class _Search:
    """Memoised successor and decomposition search over one slot layout.

    Items are tuples ``(slot index, remaining cap, largest allowed element)``.
    Within a slot elements are picked in non-increasing order, so each
    multiset is visited once.
    """

    def __init__(self, slots: tuple):
        self.gens = tuple(s.generator for s in slots)
        self.items = tuple((i, s.cap, None) for i, s in enumerate(slots) if s.cap != 0 and s.generator.has_positive())
        self._succ_memo: dict = {}
        self._find_memo: dict = {}

    # successor --------------------------------------------------------

    def succ(self, items: tuple, theta: Fraction):
        """Smallest sum strictly above ``theta`` as ``(value, picks)``."""
        if theta < 0:
            return (ZERO, ())
        if not items:
            return None
        key = (items, theta)
        memo = self._succ_memo
        if key in memo:
            return memo[key]
        result = self._succ_step(items, theta, None)
        memo[key] = result
        return result

    def _sub(self, idx, cap, x, rest):
        cap = _dec(cap)
        if cap == 0:
            return rest
        return ((idx, cap, x),) + rest

    def _succ_step(self, items, theta, log):
        (idx, cap, le), rest = items[0], items[1:]
        gen = self.gens[idx]
        if not rest and _dec(cap) == 0:
            return self._last_pick(idx, le, theta, log)
        best = self.succ(rest, theta)
        if log is not None:
            log.append(("skip", idx, "no further picks", best, None, None))

        def offer(x, sub):
            nonlocal best
            if sub is None:
                return None
            cand = (x + sub[0], ((idx, x),) + sub[1])
            if best is None or cand[0] < best[0]:
                best = cand
            return cand

        for x in gen.points:
            if x <= 0 or (le is not None and x > le):
                continue
            if best is not None and x >= best[0]:
                if log is not None:
                    log.append(("partial", idx, f"point {format_rational(x)}", x, None, None))
                continue
            got = offer(x, self.succ(self._sub(idx, cap, x, rest), theta - x))
            if log is not None:
                log.append(("explored", idx, f"point {format_rational(x)}", got, None, None))

        for fi, fam in enumerate(gen.families):
            lo = fam.first_above(ZERO)
            if lo is None:
                continue
            limit = fam.limit
            if le is not None and le < limit:
                hi = fam.last_at_most(le)
                if hi is None or hi < lo:
                    continue
                stop = hi + 1
                tail_note = None
            else:
                free = self._sub(idx, cap, None, rest)
                star = self.succ(free, theta - limit)
                if star is None:
                    if log is not None:
                        log.append(("empty", idx, f"family {fi} all m", None, fi, lo))
                    continue
                m1 = max(lo, fam.first_above(theta - star[0]))
                x1 = fam.value(m1)
                got = offer(x1, star)
                tail_note = (m1, star[0])
                if log is not None:
                    log.append(("explored", idx, f"family {fi} m={m1}", got, fi, m1))
                    log.append(
                        ("tail", idx, f"family {fi} m>={m1 + 1}", fam.value(m1 + 1) + star[0], fi, m1 + 1)
                    )
                stop = m1
            m = lo
            while m < stop:
                x = fam.value(m)
                if best is not None and x >= best[0]:
                    if log is not None:
                        log.append(("partial", idx, f"family {fi} m>={m}", x, fi, m))
                    break
                got = offer(x, self.succ(self._sub(idx, cap, x, rest), theta - x))
                if log is not None:
                    log.append(("explored", idx, f"family {fi} m={m}", got, fi, m))
                m += 1
        return best

    def _last_pick(self, idx, le, theta, log):
        # one element left to choose: the answer is the generator's successor
        best = None
        gen = self.gens[idx]
        for x in gen.points:
            if x > theta and x > 0 and (le is None or x <= le):
                if best is None or x < best[0]:
                    best = (x, ((idx, x),))
                if log is not None:
                    log.append(("explored", idx, f"point {format_rational(x)}", (x, ()), None, None))
        for fi, fam in enumerate(gen.families):
            m = fam.first_above(max(theta, ZERO))
            if m is None or (le is not None and fam.value(m) > le):
                if log is not None:
                    log.append(("empty", idx, f"family {fi} all m", None, fi, fam.m_start))
                continue
            x = fam.value(m)
            if best is None or x < best[0]:
                best = (x, ((idx, x),))
            if log is not None:
                log.append(("explored", idx, f"family {fi} m={m}", (x, ()), fi, m))
                log.append(("tail", idx, f"family {fi} m>={m + 1}", fam.value(m + 1), fi, m + 1))
        return best

    # decomposition ----------------------------------------------------

    def find(self, items: tuple, target: Fraction):
        """Picks summing exactly to ``target``, or None."""
        if target == 0:
            return ()
        if target < 0 or not items:
            return None
        key = (items, target)
        memo = self._find_memo
        if key in memo:
            return memo[key]
        result = self._find_step(items, target)
        memo[key] = result
        return result

    def _find_step(self, items, target):
        (idx, cap, le), rest = items[0], items[1:]
        gen = self.gens[idx]
        got = self.find(rest, target)
        if got is not None:
            return got
        ceiling = target if le is None else min(le, target)
        if _dec(cap) == 0 and not rest:
            if target <= ceiling and gen.contains(target):
                return ((idx, target),)
            return None
        for x in reversed(gen.points):
            if 0 < x <= ceiling:
                sub = self.find(self._sub(idx, cap, x, rest), target - x)
                if sub is not None:
                    return ((idx, x),) + sub
        for fam in gen.families:
            lo = fam.first_above(ZERO)
            if lo is None:
                continue
            free = self._sub(idx, cap, None, rest)
            if fam.limit <= ceiling:
                star = self.succ(free, target - fam.limit)
                if star is None:
                    continue
                hi = fam.last_at_most(target - star[0])
            else:
                hi = fam.last_at_most(ceiling)
            if hi is None or hi < lo:
                continue
            got = self._find_in_family(idx, cap, rest, fam, lo, hi, target, free)
            if got is not None:
                return got
        return None

    def _find_in_family(self, idx, cap, rest, fam, lo, hi, target, free):
        # Walk indices down from hi and remainder sums up from the one left
        # by hi.  Either walk alone is exhaustive, so stop as soon as one
        # of them runs out.
        def attempt(x):
            sub = self.find(self._sub(idx, cap, x, rest), target - x)
            return None if sub is None else ((idx, x),) + sub

        m = hi
        r = self.succ(free, target - fam.value(hi)) if free else None
        r_max = target - fam.value(lo)
        r_steps = 0
        while True:
            if m < lo:
                return None
            got = attempt(fam.value(m))
            if got is not None:
                return got
            m -= 1
            # remainder steps cost a successor search, so take them rarely
            if r is None or hi - m < 16 * r_steps:
                continue
            r_steps += 1
            if r[0] > r_max:
                return None
            j = fam.index_of(target - r[0])
            if j is not None and lo <= j <= hi:
                got = attempt(fam.value(j))
                if got is not None:
                    return got
            r = self.succ(free, r[0])


@lru_cache(maxsize=128)
def _search_for(slots: tuple) -> _Search:
    return _Search(slots)


def _witness(e: SumExpr, picks) -> tuple:
    per = [[] for _ in e.slots]
    for idx, x in picks:
        per[idx].append(x)
    return tuple(tuple(sorted(p, reverse=True)) for p in per)


def format_witness(witness) -> list:
    return [[format_rational(x) for x in picks] for picks in witness]


@dataclass(frozen=True)
class Element:
    value: Fraction
    witness: tuple
    expr_index: int = 0


@dataclass(frozen=True)
class MinCertificate:
    """Minimum, one witness, and the top-level branch bounds of the search."""

    value: Fraction
    witness: tuple
    expr_index: int
    branches: tuple
    offset: Fraction

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "expression": self.expr_index,
            "witness": format_witness(self.witness),
            "branches": [b.to_json() for b in self.branches],
        }


def _successor(e: SumExpr, theta_value: Fraction):
    """Smallest value of ``e`` strictly above ``theta_value`` (ignoring window)."""
    search = _search_for(e.slots)
    got = search.succ(search.items, theta_value - e.offset)
    if got is None:
        return None
    return Element(e.offset + got[0], _witness(e, got[1]))


def _first_positive(e: SumExpr):
    got = _successor(e, ZERO)
    if got is None or not e.in_window(got.value):
        return None
    return got


def expr_k_smallest(e: ExprLike, k: int, *, partial: bool = False, with_witness: bool = False):
    """The ``k`` smallest distinct values in the window, in increasing order.

    With ``partial`` the list may be shorter when the window runs out;
    otherwise :class:`ExhaustedSet` is raised.
    """
    if k < 1:
        raise ValueError("k must be positive")
    exprs = _as_union(e)
    heap = []
    for i, ex in enumerate(exprs):
        got = _successor(ex, ZERO)
        if got is not None and ex.in_window(got.value):
            heap.append((got.value, i, got.witness))
    heapq.heapify(heap)
    out: list = []
    while heap and len(out) < k:
        v, i, w = heapq.heappop(heap)
        if not out or v > out[-1].value:
            out.append(Element(v, w, i))
        nxt = _successor(exprs[i], v)
        if nxt is not None and exprs[i].in_window(nxt.value):
            heapq.heappush(heap, (nxt.value, i, nxt.witness))
    if len(out) < k and not partial:
        raise ExhaustedSet(f"only {len(out)} elements in the window")
    if with_witness:
        return out
    return [x.value for x in out]


def expr_min_positive(e: ExprLike) -> tuple:
    """Minimum of the value set with a :class:`MinCertificate`."""
    exprs = _as_union(e)
    best = None
    for i, ex in enumerate(exprs):
        got = _first_positive(ex)
        if got is not None and (best is None or got.value < best[0].value):
            best = (got, i)
    if best is None:
        raise ExhaustedSet("the window contains no element")
    elem, i = best
    ex = exprs[i]
    return elem.value, MinCertificate(elem.value, elem.witness, i, _branches(ex), ex.offset)


def _branches(e: SumExpr) -> tuple:
    search = _search_for(e.slots)
    if not search.items:
        return (Branch("explored", None, "empty sum", e.offset),)
    log: list = []
    search._succ_step(search.items, -e.offset, log)
    out = []
    for kind, idx, choice, payload, fam, m in log:
        if kind in ("skip", "explored"):
            bound = None if payload is None else e.offset + payload[0]
            out.append(Branch("explored" if bound is not None else "empty", idx, choice, bound, fam, m))
        elif kind == "empty":
            out.append(Branch("empty", idx, choice, None, fam, m))
        else:
            out.append(Branch(kind, idx, choice, e.offset + payload, fam, m))
    return tuple(out)


def expr_contains(e: ExprLike, v) -> tuple:
    """``(True, witness)`` if ``v`` is a value of ``e``, else ``(False, None)``."""
    v = Fraction(v)
    for ex in _as_union(e):
        if not ex.in_window(v):
            continue
        search = _search_for(ex.slots)
        got = search.find(search.items, v - ex.offset)
        if got is not None:
            return True, _witness(ex, got)
    return False, None


# ---------------------------------------------------------------------------
# Derived sets


@dataclass(frozen=True)
class Pin:
    """A derived expression together with the slot and limit that were pinned."""

    expr: SumExpr
    slot: int
    limit: Fraction
    source: int = 0


def derived_pins(e: ExprLike) -> list[Pin]:
    """Every limit-pinned copy: offset plus limit, that slot's cap minus one."""
    out = []
    for src, ex in enumerate(_as_union(e)):
        for i, slot in enumerate(ex.slots):
            if slot.cap == 0:
                continue
            for limit in slot.generator.limits():
                cap = _dec(slot.cap)
                slots = list(ex.slots)
                slots[i] = Slot(slot.generator, cap)
                out.append(Pin(SumExpr(ex.offset + limit, tuple(slots), ex.upper), i, limit, src))
    return out


def _dedupe(exprs: Iterable[SumExpr]) -> list[SumExpr]:
    seen = set()
    out = []
    for ex in exprs:
        key = ex.key()
        if key not in seen:
            seen.add(key)
            out.append(ex)
    return out


def _drop_empty_slots(ex: SumExpr) -> SumExpr:
    return SumExpr(ex.offset, tuple(s for s in ex.slots if s.cap != 0), ex.upper)


def expr_derived(e: ExprLike) -> list[SumExpr]:
    """Expressions whose union is the derived set (pinned slots keep the window)."""
    return _dedupe(_drop_empty_slots(p.expr) for p in derived_pins(e))


def iterated_derived(e: ExprLike, order: int) -> list[SumExpr]:
    current = list(_as_union(e))
    for _ in range(order):
        current = expr_derived(current)
    return current


def is_empty(e: ExprLike) -> bool:
    return all(_first_positive(ex) is None for ex in _as_union(e))


def accumulation_complexity(e: ExprLike, bound, ceiling: int = 64) -> int:
    """Least ``n`` whose ``(n+1)``-st derived set misses ``(0, bound]``."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    current = [ex.with_upper(bound) for ex in _as_union(e)]
    n = 0
    while True:
        current = [ex for ex in expr_derived(current) if not is_empty(ex)]
        if not current:
            return n
        n += 1
        if n > ceiling:
            raise Diverges(f"derived sets still nonempty after {ceiling} steps")


def approximant(pin: Pin, witness, eps) -> Element:
    """A value of the source expression within ``eps`` below a derived value.

    ``witness`` decomposes a value of ``pin.expr`` slot by slot; the pinned
    limit is traded for a family member closer than ``eps`` to it.
    """
    eps = Fraction(eps)
    ex = pin.expr
    v = ex.value_of(witness)
    fam = next(f for f in ex.slots[pin.slot].generator.families if f.limit == pin.limit)
    x = fam.value(fam.first_above(pin.limit - eps))
    picks = [list(p) for p in witness]
    picks[pin.slot].append(x)
    return Element(v - pin.limit + x, tuple(tuple(sorted(p, reverse=True)) for p in picks), pin.source)


def load_schema() -> dict:
    """The JSON schema for serialized sets, expressions and CLI documents."""
    import json
    from importlib import resources

    return json.loads(resources.files(__package__).joinpath("schema.json").read_text())
