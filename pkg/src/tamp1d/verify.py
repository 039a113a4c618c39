"""Deterministic property suites behind the CLI ``verify`` subcommand.

Each suite replays the library's core guarantees on seeded random instances
and reports one line per check.  Reports are byte-identical for a fixed seed
and case count; any failure flips the process exit code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import sampling
from .intervals import IntervalSet
from .norms import (
    gradient_power_over,
    linear_interpolate,
    pl_hollows,
    residual_lower_bound,
    elementary_residual,
    sorted_interpolant,
    w1p_power,
    hs_halfnorm_squared,
)
from .stepfn import (
    StepFunction,
    best_upper_bound,
    inner_product,
    is_rearrangement_of,
    is_unimodal,
    lp_norm,
    lp_norm_layer_cake,
    lp_power_sum,
    schwarz,
    superlevel,
)
from .tamping import (
    hollows,
    _hollows_all_levels,
    level_anchor,
    pivot_set,
    tamp,
    tamp_double_schwarz,
    tamp_voxel,
    voxel_to_step,
)

SUITES = ("intervals", "stepfn", "tamping", "norms")


@dataclass
class CheckResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_intervalset(rng) -> IntervalSet:
    k = rng.randint(0, 5)
    pairs = []
    for _ in range(k):
        lo = sampling.random_fraction(rng, 0, 10)
        pairs.append((lo, lo + sampling.random_fraction(rng, 0, 3)))
    return IntervalSet.from_endpoints(pairs)


def check_intervals(rng: random.Random, cases: int):
    results = []

    inclusion = CheckResult("measure_inclusion_exclusion", cases)
    symdiff_id = CheckResult("symdiff_via_boolean_ops", cases)
    hollow_id = CheckResult("hollows_measure_identity", cases)
    for k in range(cases):
        s = _random_intervalset(rng)
        t = _random_intervalset(rng)
        if (s | t).measure() + (s & t).measure() != s.measure() + t.measure():
            inclusion.failures.append(f"case {k}: {s} {t}")
        if (s ^ t) != (s | t) - (s & t):
            symdiff_id.failures.append(f"case {k}: {s} {t}")
        h = s.hollows()
        if (h & s).measure() != 0 or h.measure() + s.measure() != s.essential_hull().measure():
            hollow_id.failures.append(f"case {k}: {s}")
    results += [inclusion, symdiff_id, hollow_id]
    return results


def check_stepfn(rng: random.Random, cases: int):
    results = []
    layer = CheckResult("lp_direct_vs_layer_cake", cases)
    rearr = CheckResult("schwarz_is_rearrangement", cases)
    norms_kept = CheckResult("schwarz_keeps_lp_norms", cases)
    mass_shift = CheckResult("schwarz_mass_shift_inequality", cases)
    hardy = CheckResult("hardy_littlewood_for_schwarz", cases)
    minimal = CheckResult("upper_bound_minimality", cases)
    for k in range(cases):
        phi = sampling.random_step(rng)
        psi = sampling.random_step(rng)
        for p in (1, 2, Fraction(7, 3)):
            a = lp_norm(phi, p)
            b = lp_norm_layer_cake(phi, p)
            if abs(a - b) > 1e-12 * max(1.0, abs(a)):
                layer.failures.append(f"case {k}: p={p}")
        star = schwarz(phi)
        if not is_rearrangement_of(phi, star):
            rearr.failures.append(f"case {k}")
        if any(lp_power_sum(phi, p) != lp_power_sum(star, p) for p in (1, 2, 3)):
            norms_kept.failures.append(f"case {k}")
        xs = sorted(set(phi.cuts) | set(star.cuts))
        for u in phi.distinct_levels():
            s_phi, s_star = superlevel(phi, u), superlevel(star, u)
            if any(s_phi.measure_below(x) > s_star.measure_below(x) for x in xs):
                mass_shift.failures.append(f"case {k}: level {u}")
                break
        if inner_product(phi, psi) > inner_product(schwarz(phi), schwarz(psi)):
            hardy.failures.append(f"case {k}")
        up = best_upper_bound(phi)
        cuts, vals, term = sampling.random_monotone_majorant(rng, phi)
        probe = list(cuts) + [cuts[-1] + 1]
        for i, (x_lo, x_hi) in enumerate(zip(probe, probe[1:])):
            x = Fraction(x_lo + x_hi, 2)
            maj = vals[i] if i < len(vals) else term
            if maj < up(x):
                minimal.failures.append(f"case {k}: x={x}")
                break
    results += [layer, rearr, norms_kept, mass_shift, hardy, minimal]
    return results


def check_tamping(rng: random.Random, cases: int):
    results = []
    three_way = CheckResult("three_way_route_equivalence", cases)
    policies = CheckResult("pivot_policy_independence", cases)
    rearr = CheckResult("tamp_is_rearrangement", cases)
    unimodal = CheckResult("tamp_is_unimodal", cases)
    nesting = CheckResult("superlevel_segments_nest", cases)
    schwarz_ineq = CheckResult("tamping_mass_shift_inequality", cases)
    idem = CheckResult("tamp_idempotent", cases)
    anchors = CheckResult("anchor_order_and_dirichlet", cases)
    nstrict = CheckResult("trace_invariant_strictly_drops", cases)
    fastpath = CheckResult("hollows_fast_path_matches_definition", cases)
    for k in range(cases):
        v = sampling.random_voxel(rng, max_n=24)
        s = voxel_to_step(v)
        r_left, trace = tamp_voxel(v, "leftmost")
        r_right, _ = tamp_voxel(v, "rightmost")
        r_rand, _ = tamp_voxel(v, "random", rng)
        if not (r_left.heights == r_right.heights == r_rand.heights):
            policies.failures.append(f"case {k}: {v.heights}")
        t_level = tamp(s)
        if voxel_to_step(r_left) != t_level:
            three_way.failures.append(f"case {k}: voxel vs level {v.heights}")
        if not s.is_zero() and tamp_double_schwarz(s) != t_level:
            three_way.failures.append(f"case {k}: double-schwarz vs level {v.heights}")
        if any(b >= a for a, b in zip(trace.invariant_N, trace.invariant_N[1:])):
            nstrict.failures.append(f"case {k}")

        phi = sampling.random_step(rng)
        t = tamp(phi)
        if not is_rearrangement_of(phi, t):
            rearr.failures.append(f"case {k}")
        if not is_unimodal(t):
            unimodal.failures.append(f"case {k}")
        if tamp(t) != t:
            idem.failures.append(f"case {k}")
        levels = phi.distinct_levels()
        segs = [superlevel(t, u) for u in levels]
        for lo_set, hi_set in zip(segs, segs[1:]):
            if hi_set.is_empty():
                continue
            if len(hi_set.parts) > 1 or len(lo_set.parts) > 1:
                nesting.failures.append(f"case {k}: not segments")
                break
            if hi_set.parts[0].lo < lo_set.parts[0].lo or hi_set.parts[0].hi > lo_set.parts[0].hi:
                nesting.failures.append(f"case {k}")
                break
        xs = sorted(set(phi.cuts) | set(t.cuts))
        for u in levels:
            s_phi, s_t = superlevel(phi, u), superlevel(t, u)
            if any(s_phi.measure_below(x) > s_t.measure_below(x) for x in xs):
                schwarz_ineq.failures.append(f"case {k}: level {u}")
                break
            x_orig, y_orig = level_anchor(phi, u)
            if y_orig > x_orig:
                anchors.failures.append(f"case {k}: y > x at {u}")
                break
            if x_orig == 0 and not s_t.parts[0].lo == 0:
                anchors.failures.append(f"case {k}: origin lost at {u}")
                break
        cap = phi.max_value() + 1 if not phi.is_zero() else 1
        if _hollows_all_levels(phi) != hollows(phi, cap) or hollows(phi) != hollows(phi, cap):
            fastpath.failures.append(f"case {k}")
    results += [three_way, policies, rearr, unimodal, nesting, schwarz_ineq, idem,
                anchors, nstrict, fastpath]
    return results


def check_norms(rng: random.Random, cases: int):
    results = []
    residual_ok = CheckResult("elementary_residual_bounds", cases)
    telescope = CheckResult("residuals_telescope_to_total_drop", cases)
    refined = CheckResult("refined_gradient_drop_bound", cases)
    corollary = CheckResult("gradient_drop_equality_iff_no_hollows", cases)
    schwarz_ps = CheckResult("gradient_drop_for_sorted_heights", cases)
    hs_scale = CheckResult("hs_translation_and_dilation_laws", cases)
    for k in range(cases):
        v = sampling.random_voxel(rng, max_n=24)
        s = voxel_to_step(v)
        f = linear_interpolate(v)
        vt, trace = tamp_voxel(v)
        piv = pivot_set(v)
        for p in (1, 2, 3):
            if piv:
                xi = min(piv)
                res = elementary_residual(v, xi, p)
                if res < residual_lower_bound(v, xi, p) or res < 0:
                    residual_ok.failures.append(f"case {k}: p={p}")
            total = w1p_power(f, p) - w1p_power(linear_interpolate(vt), p)
            acc = 0
            cur = v
            for xi, _, heights in trace.steps:
                acc += elementary_residual(cur, xi, p)
                cur = cur.with_heights(heights)
            if acc != total:
                telescope.failures.append(f"case {k}: p={p}")
            hol = pl_hollows(f)
            if gradient_power_over(f, hol, p) > total:
                refined.failures.append(f"case {k}: p={p}")
            step_hollow_empty = _hollows_all_levels(s).is_empty()
            if (total == 0) != step_hollow_empty:
                corollary.failures.append(f"case {k}: p={p}")
            if w1p_power(sorted_interpolant(v), p) > w1p_power(f, p):
                schwarz_ps.failures.append(f"case {k}: p={p}")
        phi = sampling.random_step(rng, max_pieces=4)
        if not phi.is_zero():
            s_exp = rng.choice([0.1, 0.25, 0.4])
            base = hs_halfnorm_squared(phi, s_exp)
            shifted = hs_halfnorm_squared(phi.translate(Fraction(3, 2)), s_exp)
            lam = Fraction(rng.randint(2, 5), rng.randint(1, 3))
            dilated = hs_halfnorm_squared(phi.scale_x(lam), s_exp)
            want = float(lam) ** (1.0 - 2.0 * s_exp) * base
            if abs(shifted - base) > 1e-9 * max(1.0, base):
                hs_scale.failures.append(f"case {k}: translation")
            if abs(dilated - want) > 1e-9 * max(1.0, want):
                hs_scale.failures.append(f"case {k}: dilation")
    results += [residual_ok, telescope, refined, corollary, schwarz_ps, hs_scale]
    return results


_CHECKERS = {
    "intervals": check_intervals,
    "stepfn": check_stepfn,
    "tamping": check_tamping,
    "norms": check_norms,
}


def run_suites(suite: str, cases: int, seed: int):
    """Run one suite (or ``all``); returns (report_text, ok)."""
    names = list(SUITES) if suite == "all" else [suite]
    if any(n not in _CHECKERS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    lines = [f"verify suite={suite} cases={cases} seed={seed}"]
    ok = True
    for name in names:
        rng = random.Random((seed, name).__repr__())
        for res in _CHECKERS[name](rng, cases):
            status = "OK" if res.ok else f"FAIL ({len(res.failures)})"
            lines.append(f"  {name}.{res.name}: {res.cases} cases, {status}")
            for f in res.failures[:5]:
                lines.append(f"    - {f}")
            ok = ok and res.ok
    lines.append("result: PASS" if ok else "result: FAIL")
    return "\n".join(lines) + "\n", ok
