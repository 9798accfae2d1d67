"""Verification checks with machine-readable certificates.

Each ``verify_*`` function recomputes a quantitative statement about volume
sets and returns a :class:`CheckResult`.  Lower bounds for case branches are
recomputed from restricted expressions rather than copied.  Work that fans
out over many expressions runs on ``IVOLSETS_WORKERS`` processes and is
merged in input order, so certificates do not depend on the worker count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_sets import (
    UNBOUNDED,
    ExhaustedSet,
    GeneratorSet,
    Slot,
    SumExpr,
    accumulation_complexity,
    derived_pins,
    expr_contains,
    expr_derived,
    expr_k_smallest,
    expr_min_positive,
    format_rational,
    format_witness,
    iterated_derived,
    parse_rational,
)
from .kodaira import ALL_TABLE_CLASSES, FiberClass, coefficient_set, lct
from .surfaces import (
    HARMONIC,
    EllipticConfig,
    anticanonical_volume,
    config_volume_expr,
    e00_volume,
    enumerate_configs,
    enumerate_constellations,
    ivol_sm_expr,
    pg_volume_expr,
    ruled_volume_expr,
    smooth_expr,
    smooth_volume,
)

WORKERS_ENV = "IVOLSETS_WORKERS"

fmt = format_rational


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items: list) -> list:
    """``map`` over a process pool when workers > 1; order is preserved."""
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


@dataclass
class CheckResult:
    name: str
    claimed: object
    computed: object
    witness: object
    completeness: object
    status: str
    branches: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "claimed": self.claimed,
            "computed": self.computed,
            "witness": self.witness,
            "completeness": self.completeness,
            "status": self.status,
            "branches": self.branches,
            "discrepancies": self.discrepancies,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _branch(name, claimed, computed, relation: str, floor=None, **extra) -> dict:
    """A case-branch record; ``relation`` says how computed is compared to claimed."""
    if computed is None:
        holds = True
    elif relation == "equal":
        holds = computed == claimed
    else:
        holds = computed >= claimed
    rec = {
        "branch": name,
        "claimed": None if claimed is None else fmt(claimed),
        "relation": relation,
        "computed": None if computed is None else fmt(computed),
        "claim_holds": holds,
    }
    if floor is not None:
        rec["at_least_floor"] = computed is None or computed >= floor
    rec.update(extra)
    return rec


def _min_or_none(e):
    try:
        v, cert = expr_min_positive(e)
    except ExhaustedSet:
        return None
    return v, cert


def _min_value(e):
    got = _min_or_none(e)
    return None if got is None else got[0]


def _min_record(e):
    """Picklable summary of a minimum: value, expression index, witness."""
    got = _min_or_none(e)
    if got is None:
        return None
    v, cert = got
    return v, cert.expr_index, cert.witness


def _min_of(values):
    vals = [v for v in values if v is not None]
    return min(vals) if vals else None


# ---------------------------------------------------------------------------
# smooth surfaces


def verify_min_ivol_sm() -> CheckResult:
    expr = ivol_sm_expr()
    v, cert = expr_min_positive(expr)
    picks = cert.witness[0]
    multiplicities = sorted(int(1 / (1 - x)) for x in picks)
    smooth_value = smooth_volume(0, 1, multiplicities)
    consts = enumerate_constellations(Fraction(1, 6))
    orders = [list(t.orders()) for t in consts]
    const_values = [e00_volume(t) for t in consts]
    const_min = min(const_values) if const_values else None
    ok = (
        v == Fraction(1, 6)
        and multiplicities == [2, 3]
        and smooth_value == v
        and orders == [[2, 6, 6]]
        and const_min == Fraction(1, 6)
    )
    return CheckResult(
        name="min_ivol_sm",
        claimed="1/6",
        computed=fmt(min(v, const_min) if const_min is not None else v),
        witness={
            "smooth": {"g": 0, "chi": 1, "multiplicities": multiplicities, "value": fmt(v)},
            "torsion": [str(t) for t in consts],
            "torsion_orders": orders,
        },
        completeness={
            "chi_positive": "minimum of the chi=1 expression; larger chi or g only raise the offset",
            "chi_zero": "all order multisets with volume <= 1/6 enumerated (length bound 2*(M+2))",
            "branches": [b.to_json() for b in cert.branches],
        },
        status=_status(ok),
        branches=[
            _branch("chi>=1", Fraction(1, 6), v, "equal"),
            _branch("chi=0 constellations", Fraction(1, 6), const_min, "equal"),
        ],
    )


def closed_form_derived(n: int) -> SumExpr:
    """``n - 1`` plus sums of ``1 - 1/m``: the n-th derived smooth set."""
    return SumExpr(Fraction(n - 1), (Slot(HARMONIC, UNBOUNDED),))


def _limits_of(exprs) -> list:
    out = set()
    for e in exprs:
        for s in e.slots:
            out.update(s.generator.limits())
    return sorted(out)


def compare_below(a, b, bound, k: int = 40) -> dict:
    """Two-sided comparison of the k smallest elements below ``bound``."""
    bound = Fraction(bound)
    left = expr_k_smallest([e.with_upper(bound) for e in a], k, partial=True)
    right = expr_k_smallest([e.with_upper(bound) for e in b], k, partial=True)
    return {
        "equal": left == right and _limits_of(a) == _limits_of(b),
        "count": len(left),
        "first": [fmt(x) for x in left[:5]],
    }


def verify_derived_and_acc(M="5/2", n_max: int = 3, k: int = 40) -> CheckResult:
    M = parse_rational(M)
    base = ivol_sm_expr()
    branches = []
    all_equal = True
    for n in range(1, n_max + 1):
        got = iterated_derived(base, n)
        cmp = compare_below(got, [closed_form_derived(n)], M, k)
        all_equal &= cmp["equal"]
        branches.append({"order": n, "expressions": len(got), **cmp})
    first_min = expr_min_positive(expr_derived(base))[0]
    complexity = accumulation_complexity(base, M)
    expected = math.floor(M) + 1
    ok = all_equal and first_min == Fraction(1, 2) and complexity == expected
    return CheckResult(
        name="derived_and_acc",
        claimed={"first_derived_min": "1/2", "complexity": expected, "derived": "n-1+sum(1-1/m)"},
        computed={"first_derived_min": fmt(first_min), "complexity": complexity},
        witness={"first_derived_min": [["1/2"]], "M": fmt(M)},
        completeness=f"derived sets compared by their {k} smallest elements below M and their limits",
        status=_status(ok),
        branches=branches,
    )


# ---------------------------------------------------------------------------
# elliptic log canonical surfaces

C1_SET = coefficient_set(FiberClass("I", 1))
C4_SET = coefficient_set(FiberClass("IV"))


def all_coefficients() -> GeneratorSet:
    sets = [coefficient_set(f) for f in ALL_TABLE_CLASSES]
    return sets[0].union(*sets[1:])


def vlc_configs(chi: int = 1, g: int = 0) -> list[EllipticConfig]:
    return enumerate_configs(chi, g, folded=True)


def vlc_union(chi: int = 1, g: int = 0) -> list[SumExpr]:
    """Distinct normalized expressions covering every configuration."""
    seen = {}
    for c in vlc_configs(chi, g):
        e = config_volume_expr(c).normalized()
        seen.setdefault(e.key(), e)
    return list(seen.values())


def _split(c: EllipticConfig):
    expr = config_volume_expr(c)
    n = len(c.fibers)
    nonstar = [expr.slots[i] for i in range(n) if not c.fibers[i].is_star] + list(expr.slots[n:])
    star = [expr.slots[i] for i in range(n) if c.fibers[i].is_star]
    return expr, nonstar, star


def _case_exprs(c: EllipticConfig) -> dict:
    """Restricted expressions for the case split on the non-star coefficient sum."""
    expr, nonstar, star = _split(c)
    if len(star) == 2:
        return {"two_star": [expr]}
    star_slots = tuple(star)
    non_iv = [
        s.generator
        for f, s in zip(c.fibers, expr.slots)
        if not f.is_star and f.kind != "IV"
    ] + [s.generator for s in expr.slots[len(c.fibers):]]
    union_non_iv = non_iv[0].union(*non_iv[1:])
    iv_count = sum(1 for f in c.fibers if f.kind == "IV")
    out = {
        "sum_gt_1": [SumExpr(-1, tuple(nonstar))],
        "sum_eq_1": [SumExpr(0, star_slots)] if star_slots else [],
        "c4_zero": [SumExpr(-1, (Slot(union_non_iv.restricted(Fraction(1, 2), 1), 1),) + star_slots)],
        "c4_third": [],
        "c4_half": [],
    }
    if iv_count:
        third = Fraction(1, 3)
        out["c4_third"].append(
            SumExpr(third - 1, (Slot(union_non_iv.restricted(Fraction(1, 6), Fraction(2, 3)), 1),) + star_slots)
        )
        out["c4_half"].append(
            SumExpr(-1, (Slot(C4_SET.restricted(Fraction(1, 2), 1, lower_open=False), 1),) + star_slots)
        )
        if iv_count >= 2:
            out["c4_half"].append(
                SumExpr(
                    third - 1,
                    (Slot(C4_SET.restricted(third, Fraction(2, 3), lower_open=False), 1),) + star_slots,
                )
            )
    return out


def _config_cases(c: EllipticConfig) -> dict:
    return {name: _min_of(_min_value(e) for e in exprs) for name, exprs in _case_exprs(c).items()}


def _config_min(c: EllipticConfig):
    got = _min_or_none(config_volume_expr(c))
    if got is None:
        return None
    v, cert = got
    return v, cert.witness


def _fiber_labels(c: EllipticConfig) -> list:
    return [str(f) for f in c.fibers] + (["folded C1"] if c.folded or c.chi == 0 else [])


def _witness_dict(c: EllipticConfig, witness) -> dict:
    return {
        "config": str(c),
        "coefficients": {label: [fmt(x) for x in picks] for label, picks in zip(_fiber_labels(c), witness)},
    }


ONE_671 = Fraction(1, 671)

MIN_LC_CLAIMS = (
    ("sum_gt_1", Fraction(1, 39), "at_least"),
    ("sum_eq_1", Fraction(1, 11), "equal"),
    ("c4_zero", ONE_671, "equal"),
    ("c4_third", Fraction(4, 165), "at_least"),
    ("c4_half", Fraction(1, 152), "equal"),
    ("two_star", Fraction(1, 12), "at_least"),
)


def verify_min_lc() -> CheckResult:
    configs = vlc_configs(1, 0)
    mins = parallel_map(_config_min, configs)
    best = None
    for c, got in zip(configs, mins):
        if got is not None and (best is None or got[0] < best[1]):
            best = (c, got[0], got[1])
    cases = parallel_map(_config_cases, configs)
    branch_values = {}
    for per in cases:
        for name, v in per.items():
            if v is not None and (name not in branch_values or v < branch_values[name]):
                branch_values[name] = v
    branches = [
        _branch(name, claim, branch_values.get(name), rel, floor=ONE_671) for name, claim, rel in MIN_LC_CLAIMS
    ]
    case_min = _min_of(branch_values.values())
    union_min = _min_value(SumExpr(0, (Slot(all_coefficients(), UNBOUNDED),)))
    branches.append(_branch("chi=2,g=0", Fraction(1, 11), union_min, "at_least", floor=ONE_671))
    offsets = {f"chi={chi},g={g}": 2 * g - 2 + chi for chi, g in ((1, 1), (3, 0))}
    desk = min(
        _min_value(SumExpr(off, (Slot(all_coefficients(), UNBOUNDED),))) for off in offsets.values()
    )
    branches.append(_branch("chi,g>0 or chi>=3", Fraction(1), Fraction(desk), "at_least", floor=ONE_671))
    chi0 = min(expr_min_positive(ivol_sm_expr())[0], min(e00_volume(t) for t in enumerate_constellations(Fraction(1, 6))))
    branches.append(_branch("chi=0", Fraction(1, 6), chi0, "at_least", floor=ONE_671))

    c, value, witness = best
    wit = _witness_dict(c, witness)
    picks = wit["coefficients"]
    expected_witness = picks.get("II") == ["50/61"] and picks.get("III*") == ["2/11"]
    recheck = config_volume_expr(c).value_of(witness)
    ok = (
        value == ONE_671
        and case_min == value
        and recheck == value
        and sorted(str(f) for f in c.fibers) == ["I1", "II", "III*"]
        and expected_witness
        and all(b["at_least_floor"] for b in branches)
    )
    discrepancies = [
        f"branch {b['branch']}: claimed {b['relation'].replace('_', ' ')} {b['claimed']}, computed {b['computed']}"
        for b in branches
        if not b["claim_holds"] or (b["relation"] == "at_least" and b["computed"] != b["claimed"])
    ]
    return CheckResult(
        name="min_lc",
        claimed="1/671",
        computed=fmt(value),
        witness=wit,
        completeness={
            "configurations": len(configs),
            "note": "chi=1 configurations with Euler sum 12, multiple and extra fibers folded into an unbounded C1 slot",
            "case_split_min": fmt(case_min),
        },
        status=_status(ok),
        branches=branches,
        discrepancies=discrepancies,
    )


ACC_CLAIMS = (
    ("C1", Fraction(1, 11)),
    ("II", Fraction(1, 66)),
    ("III", Fraction(1, 44)),
    ("IV", Fraction(1, 15)),
    ("I*", Fraction(1, 14)),
    ("II*", Fraction(1, 14)),
    ("III*", Fraction(1, 20)),
    ("IV*", Fraction(1, 39)),
)
ONE_66 = Fraction(1, 66)


def _pinned_class(c: EllipticConfig, slot: int) -> str:
    if sum(1 for f in c.fibers if f.is_star) == 2:
        return "two_star"
    if slot >= len(c.fibers):
        return "C1"
    f = c.fibers[slot]
    return "C1" if f.kind in ("I", "mI") else f.kind


def _config_pins(c: EllipticConfig) -> list:
    out = []
    for pin in derived_pins(config_volume_expr(c)):
        got = _min_or_none(pin.expr)
        if got is None:
            continue
        v, cert = got
        picks = [list(p) for p in cert.witness]
        picks[pin.slot] = [pin.limit] + picks[pin.slot]
        out.append((_pinned_class(c, pin.slot), v, pin.slot, tuple(tuple(p) for p in picks)))
    return out


def verify_min_acc_lc() -> CheckResult:
    configs = vlc_configs(1, 0)
    pins = parallel_map(_config_pins, configs)
    per_class = {}
    best = None
    for c, rows in zip(configs, pins):
        for cls, v, slot, picks in rows:
            if cls not in per_class or v < per_class[cls][0]:
                per_class[cls] = (v, c, slot, picks)
            if best is None or v < best[0]:
                best = (v, c, slot, picks)
    branches = []
    for cls, claim in ACC_CLAIMS:
        got = per_class.get(cls)
        extra = {}
        if got is not None:
            extra["witness"] = _witness_dict(got[1], got[3])
        branches.append(
            _branch(f"pinned {cls}", claim, got[0] if got else None, "equal", floor=ONE_66, **extra)
        )
    two = per_class.get("two_star")
    branches.append(_branch("two_star", Fraction(1, 12), two[0] if two else None, "at_least", floor=ONE_66))
    other = verify_other_chi_floor()
    branches.append(_branch("(chi,g)!=(1,0)", Fraction(1, 11), other, "at_least", floor=ONE_66))

    value, c, slot, picks = best
    wit = _witness_dict(c, picks)
    wit["pinned"] = _fiber_labels(c)[slot]
    coeffs = wit["coefficients"]
    ok = (
        value == ONE_66
        and wit["pinned"] == "II"
        and coeffs.get("II") == ["5/6"]
        and coeffs.get("III*") == ["2/11"]
        and all(b["at_least_floor"] for b in branches)
    )
    discrepancies = [
        f"branch {b['branch']}: claimed {b['claimed']}, computed {b['computed']}"
        for b in branches
        if not b["claim_holds"]
    ]
    return CheckResult(
        name="min_acc_lc",
        claimed="1/66",
        computed=fmt(value),
        witness=wit,
        completeness={
            "configurations": len(configs),
            "note": "derived set as the union of limit-pinned expressions over all chi=1 configurations",
        },
        status=_status(ok),
        branches=branches,
        discrepancies=discrepancies,
    )


def verify_other_chi_floor() -> Fraction:
    """Lower bound for every (chi, g) other than (1, 0) with chi > 0."""
    union = all_coefficients()
    return min(
        _min_value(SumExpr(off, (Slot(union, UNBOUNDED),))) for off in (0, 1)
    )


# ---------------------------------------------------------------------------
# ruled part and prescribed genus


def verify_gamma01(K: int = 4) -> CheckResult:
    mins = []
    derived_mins = []
    witnesses = {}
    for k in range(K + 1):
        e = ruled_volume_expr(k)
        v, cert = expr_min_positive(e)
        mins.append(v)
        witnesses[k] = format_witness(cert.witness)
        derived_mins.append(_min_of(_min_value(d) for d in expr_derived(e)))
    tail_bound = min(mins[2:])  # k >= 2: offset k-2 >= 0, so any positive value is >= min(C1 u C1*)>0
    offset_bound = Fraction(K + 1 - 2)
    v0_min = min(mins)
    v0_acc = _min_of(derived_mins)
    lc = verify_min_lc()
    lc_acc = verify_min_acc_lc()
    lc_min, lc_acc_min = parse_rational(lc.computed), parse_rational(lc_acc.computed)
    global_min = min(v0_min, lc_min)
    global_acc = min(v0_acc, lc_acc_min)
    ok = (
        v0_min == Fraction(1, 42)
        and witnesses[0] == [["6/7", "2/3", "1/2"]]
        and mins[1] == Fraction(1, 24)
        and v0_acc == Fraction(1, 6)
        and tail_bound >= Fraction(1, 4)
        and global_min == ONE_671
        and global_acc == ONE_66
    )
    return CheckResult(
        name="gamma01",
        claimed={"v0_min": "1/42", "v0_derived_min": "1/6", "global_min": "1/671", "global_acc": "1/66"},
        computed={
            "v0_min": fmt(v0_min),
            "v0_derived_min": fmt(v0_acc),
            "global_min": fmt(global_min),
            "global_acc": fmt(global_acc),
        },
        witness={"v0_min": {"k": 0, "coefficients": witnesses[0]}, "k1": witnesses[1]},
        completeness={
            "k_searched": K,
            "k>=2_min": fmt(tail_bound),
            "k>K_offset_bound": fmt(offset_bound),
            "union": "the part without horizontal boundary equals the Gamma={0} set",
        },
        status=_status(ok),
        branches=[
            {"k": k, "min": fmt(m), "derived_min": None if d is None else fmt(d)}
            for k, (m, d) in enumerate(zip(mins, derived_mins))
        ],
    )


def verify_pg() -> CheckResult:
    claims = {0: (Fraction(1, 6), Fraction(1, 2)), 1: (Fraction(1, 2), Fraction(1))}
    rows = []
    ok = True
    for p_g in range(4):
        want_min, want_acc = claims.get(p_g, (Fraction(p_g - 1), Fraction(p_g)))
        e = pg_volume_expr(p_g)
        got_min = expr_min_positive(e)[0]
        got_acc = _min_of(_min_value(d) for d in expr_derived(e))
        if p_g == 0:
            got_min = min(got_min, min(e00_volume(t) for t in enumerate_constellations(Fraction(1, 6))))
        ok &= got_min == want_min and got_acc == want_acc
        rows.append(
            {
                "p_g": p_g,
                "claimed_min": fmt(want_min),
                "min": fmt(got_min),
                "claimed_derived_min": fmt(want_acc),
                "derived_min": fmt(got_acc),
            }
        )
    return CheckResult(
        name="pg",
        claimed={str(r["p_g"]): [r["claimed_min"], r["claimed_derived_min"]] for r in rows},
        computed={str(r["p_g"]): [r["min"], r["derived_min"]] for r in rows},
        witness={"p_g=0": {"multiplicities": [2, 3]}, "p_g=1": {"multiplicities": [2]}},
        completeness="offset p_g - 1 plus sums of 1 - 1/m; the quotient part only matters for p_g = 0",
        status=_status(ok),
        branches=rows,
    )


def verify_anticanonical(max_m: int = 50) -> CheckResult:
    values = {"none": anticanonical_volume(None)}
    for m in range(1, max_m + 1):
        values[str(m)] = anticanonical_volume(m)
    image = sorted(set(values.values()))
    expected = sorted(Fraction(1, m) for m in range(1, max_m + 1))
    ok = image == expected and values["none"] == 1 and all(v == Fraction(1, int(m)) for m, v in values.items() if m != "none")
    return CheckResult(
        name="anticanonical",
        claimed=f"{{1/m : m <= {max_m}}}",
        computed=[fmt(v) for v in image],
        witness={m: fmt(v) for m, v in values.items()},
        completeness="direct evaluation of the degree formula for each multiplicity",
        status=_status(ok),
    )


# ---------------------------------------------------------------------------
# coefficient tables

REFERENCE_LISTINGS = {
    "I0": "1,0",
    "I1": "1,0,1/2,2/3,3/4,4/5,5/6,6/7,7/8,8/9,9/10,10/11,11/12,12/13,13/14",
    "II": "5/6,0,5/7,3/4,10/13,7/9,11/14,15/19,4/5,25/31,21/26,17/21,13/16,22/27",
    "III": "3/4,0,1/2,3/5,2/3,9/13,7/10,12/17,5/7,18/25,13/18,21/29,8/11,27/37,19/26",
    "IV": "2/3,0,1/3,1/2,4/7,3/5,8/13,5/8,12/19,7/11,16/25,9/14,20/31,11/17,24/37",
    "I0*": "1/2,0,1/3,2/5,3/7,4/9,5/11,6/13,7/15,8/17,9/19,10/21,11/23,12/25,13/27",
    "I1*": "1/2,0,1/4,1/3,3/8,2/5,5/12,3/7,7/16,4/9,5/11,6/13,7/15,8/17,9/19",
    "II*": "1/6,0,1/11,1/10,1/9,2/17,1/8,3/23,2/15,3/22,4/29,1/7,5/34,4/27,5/33",
    "III*": "1/4,0,1/7,1/6,2/11,1/5,4/19,3/14,5/23,2/9,7/31,5/22,8/35,3/13,10/43",
    "IV*": "1/3,0,1/5,1/4,3/11,2/7,5/17,3/10,7/23,4/13,9/29,5/16,11/35,6/19,13/41",
}


def table_comparison(name: str) -> dict:
    f = FiberClass.parse(name)
    listing = [parse_rational(x) for x in REFERENCE_LISTINGS[name].split(",")]
    top = lct(f)
    expected = sorted(x for x in listing if x != top)
    gen = coefficient_set(f)
    got = gen.k_smallest(len(expected), Fraction(-1))
    listed = set(expected)
    span = max(expected)
    return {
        "class": name,
        "match": got == expected and gen.contains(top),
        "computed": [fmt(x) for x in got],
        "listed": [fmt(x) for x in expected],
        "unlisted_members": [fmt(x) for x in gen.k_smallest(60, Fraction(-1)) if x <= span and x not in listed],
        "listed_non_members": [fmt(x) for x in expected if not gen.contains(x)],
    }


def verify_coefficient_tables() -> CheckResult:
    rows = [table_comparison(name) for name in REFERENCE_LISTINGS]
    ok = all(r["match"] for r in rows)
    return CheckResult(
        name="coefficient_tables",
        claimed="reference listings of the ten coefficient sets",
        computed={r["class"]: r["computed"] for r in rows},
        witness={"50/61 in C(II)": coefficient_set(FiberClass("II")).contains(Fraction(50, 61))},
        completeness="sets computed from log discrepancies on snc models; listing compared after dropping the threshold",
        status=_status(ok),
        branches=rows,
        discrepancies=[
            f"{r['class']}: members missing from listing {r['unlisted_members']}" for r in rows if not r["match"]
        ],
    )


CHECKS = {
    "min_ivol_sm": verify_min_ivol_sm,
    "derived_and_acc": verify_derived_and_acc,
    "min_lc": verify_min_lc,
    "min_acc_lc": verify_min_acc_lc,
    "gamma01": verify_gamma01,
    "pg": verify_pg,
    "anticanonical": verify_anticanonical,
    "coefficient_tables": verify_coefficient_tables,
}


def run_all(names=None) -> list[CheckResult]:
    return [CHECKS[n]() for n in (names or CHECKS)]
