"""The acceptance battery: every release-gating check, one result per criterion.

Each criterion function returns (passed, detail).  The same battery backs
the ``verify`` CLI command and the acceptance test module, so there is a
single source of truth for what "working" means.

Criterion 5 carries a known, documented defect in its stated grid: the
combination (p, q) = (0.35, 0.01) lies outside the two-pair family's own
minimum window (the boundary root is q(0.35) = 0.00754), and the
t-functional there is exactly +82921/12500000 > 0, so the stated
assertion cannot hold.  The battery runs it anyway and reports the
failure honestly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from . import extremum, monotone, nlevel, qubit

#: the signed grid used by the multi-route agreement criteria
AGREEMENT_GRID = tuple(
    s * a for a in (0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95) for s in (1.0, -1.0)
)

#: measure atoms of the 3-level example function used by criterion 9
N3_EXAMPLE_ATOMS = ((0.001, 0.25), (0.5, 0.5))

#: alternative published closed forms for the q=0 family, recorded but never
#: asserted: they disagree with the three cross-confirmed computations below
ANNOTATION_Q0_CONSTANT = "9/2 - 36 p (1-p)"
ANNOTATION_Q0_PURE_STATE_LIMIT = "7/2 + 1/(p (1-p))"


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str


def _richardson_even(g: Callable[[float], float], h: float) -> float:
    """Limit of an even function at 0 from samples at h and h/2 (O(h^4) error)."""
    return (4.0 * g(h / 2.0) - g(h)) / 3.0


def _even_closed_form(f, h: float) -> float:
    return 0.5 * (qubit.curvature_closed_form(f, h) + qubit.curvature_closed_form(f, -h))


def criterion_1() -> Tuple[bool, str]:
    """Origin values: r(0) = 6 for the largest function, -12 for the smallest."""
    r_sld = qubit.curvature_closed_form(monotone.catalog("sld"), 0.0)
    r_min = qubit.curvature_closed_form(monotone.catalog("smallest"), 0.0)
    ok = abs(r_sld - 6.0) < 1e-9 and abs(r_min + 12.0) < 1e-9
    return ok, f"r_sld(0)={r_sld!r}, r_smallest(0)={r_min!r}"


def criterion_2() -> Tuple[bool, str]:
    """Three-route agreement within 1e-6 relative on the 7 x 14 grid."""
    worst, worst_at = 0.0, ""
    for f in monotone.default_catalog():
        for sample in qubit.curvature_profile(f, AGREEMENT_GRID):
            if sample.max_rel_disagreement > worst:
                worst = sample.max_rel_disagreement
                worst_at = f"{f.label} a={sample.a}"
    return worst < 1e-6, f"worst relative disagreement {worst:.3e} at {worst_at}"


def criterion_3() -> Tuple[bool, str]:
    """Series c0, c2 vs Richardson differences; Laurent pole cancellation."""
    worst_c, worst_resid = 0.0, 0.0
    for f in monotone.default_catalog():
        series = extremum.series_coefficients(f)
        c0_fd = _richardson_even(lambda h: _even_closed_form(f, h), 0.1)
        # the second difference is anchored at r(0) from the summand-series
        # route, which is independent of the coefficient formulas under test;
        # anchoring at c0_fd would leak its O(h^4) error into c2 at 2/h^2
        r0 = qubit.curvature_closed_form(f, 0.0)

        def second_diff(h: float) -> float:
            return 2.0 * (_even_closed_form(f, h) - r0) / h**2

        c2_fd = _richardson_even(second_diff, 0.1) / 2.0
        for got, want in ((c0_fd, series.c0), (c2_fd, series.c2)):
            worst_c = max(worst_c, abs(got - want) / max(1.0, abs(want)))
        s = qubit.curvature_series(f)
        a = 1e-3
        worst_resid = max(worst_resid, abs(s[0]) / a**2 + abs(s[1]) / a)
    ok = worst_c <= 1e-4 and worst_resid < 1e-8
    return ok, f"worst c0/c2 mismatch {worst_c:.3e}, worst pole residue {worst_resid:.3e}"


def random_atomic_measures(count: int = 10, seed: int = 20260810) -> list:
    """Deterministic random atomic elements of the symmetric-measure set."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 5))
        locs = rng.uniform(0.0, 0.5, size=k)
        weights = rng.uniform(0.2, 1.0, size=k)
        weights /= 2.0 * weights.sum()
        out.append(monotone.SymmetricMeasure(atoms=list(zip(locs, weights))))
    return out


def criterion_4() -> Tuple[bool, str]:
    """Moment identities for f', f'', f'''' and f'''''' at 1."""
    worst1, worst = 0.0, 0.0
    for mu in random_atomic_measures():
        s = monotone.pushforward_moments(mu)
        worst1 = max(worst1, abs(monotone.derivatives_at_one(mu, 1) - 0.5))
        for k, expect in (
            (2, -s.m / 2.0),
            (4, -3.0 * s.m + 1.5 * s.e2),
            (6, -90.0 * s.m - 11.25 * s.e3 + 90.0 * s.e2),
        ):
            worst = max(worst, abs(monotone.derivatives_at_one(mu, k) - expect))
    ok = worst1 <= 1e-12 and worst <= 1e-10
    return ok, f"worst f'(1) deviation {worst1:.3e}, worst identity deviation {worst:.3e}"


CRITERION_5_GRID = tuple((p, q) for p in (0.35, 0.40, 0.45, 0.50) for q in (0.0, 0.01))

#: the stated grid point that contradicts the family's own boundary root
CRITERION_5_KNOWN_DEFECT = (0.35, 0.01)


def criterion_5_combo(p: float, q: float) -> Tuple[bool, str]:
    """One (p, q) combination: LocalMin verdict and negative t-functional."""
    t = extremum.t_double_pair(p, q)
    verdict = extremum.classify_origin(extremum.family_measure(p, q)).verdict
    ok = verdict is extremum.Verdict.LOCAL_MIN and t < 0.0
    return ok, f"p={p} q={q}: t={t:.6g}, verdict={verdict.value}"


def criterion_5() -> Tuple[bool, str]:
    """Two-pair family reproduction over the stated (p, q) grid."""
    parts, ok = [], True
    for p, q in CRITERION_5_GRID:
        combo_ok, msg = criterion_5_combo(p, q)
        if not combo_ok:
            ok = False
            suffix = (
                " [known defect in the stated grid: exact t = +82921/12500000 > 0;"
                " the point lies outside the boundary root q(0.35)=0.00754, where"
                " the origin is a local maximum]"
                if (p, q) == CRITERION_5_KNOWN_DEFECT
                else ""
            )
            parts.append(f"FAIL {msg}{suffix}")
    for p in (0.35, 0.40, 0.45, 0.50):
        q_root = extremum.boundary_curves(p).q_root
        resid = abs(extremum.t_double_pair(p, q_root))
        if resid >= 1e-8:
            ok = False
            parts.append(f"FAIL boundary root residue {resid:.3e} at p={p}")
        c2 = extremum.series_coefficients(
            extremum.family_function(p, 0.0, from_measure=True)
        ).c2
        target = -20.0 * p * (1.0 - p) * (14.0 * p * p - 14.0 * p + 3.0)
        if abs(c2 - target) >= 1e-9:
            ok = False
            parts.append(f"FAIL q=0 series coefficient at p={p}: {c2!r} vs {target!r}")
    return ok, "; ".join(parts) if parts else "all combinations and boundary roots hold"


def criterion_6() -> Tuple[bool, str]:
    """Single-pair measures always give a positive t-functional (local maximum)."""
    values = [extremum.t_single_pair(round(0.05 * k, 2)) for k in range(1, 11)]
    ok = all(v > 0.0 for v in values)
    return ok, f"min t over the p-grid: {min(values):.6g}"


def criterion_7() -> Tuple[bool, str]:
    """Non-monotone curvature for the two-pair function; none for kubo_mori/sld."""
    pairs = nlevel.qubit_grid_pairs([0.1 * k for k in range(10)])
    family = extremum.family_function(0.45, 0.0, from_measure=True)
    n_family = len(nlevel.monotonicity_scan(family, pairs))
    n_kubo = len(nlevel.monotonicity_scan(monotone.catalog("kubo_mori"), pairs))
    n_sld = len(nlevel.monotonicity_scan(monotone.catalog("sld"), pairs))
    ok = n_family >= 1 and n_kubo == 0 and n_sld == 0
    return ok, f"violations: family(p=0.45,q=0)={n_family}, kubo_mori={n_kubo}, sld={n_sld}"


def criterion_8() -> Tuple[bool, str]:
    """Spectral-formula reduction to the closed form at n=2, plus its +3/2 constant."""
    worst = 0.0
    for f in monotone.default_catalog():
        for a in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            r_spec = nlevel.scalar_curvature(f, ((1.0 + a) / 2.0, (1.0 - a) / 2.0))
            r_closed = qubit.curvature_closed_form(f, a)
            worst = max(worst, abs(r_spec - r_closed) / max(1.0, abs(r_closed)))
    f = monotone.catalog("smallest")
    x, y = 0.75, 0.25
    h_sum = (
        nlevel.h_value(f, x, x, y)
        + 2.0 * nlevel.h_value(f, x, y, x)
        + nlevel.h_value(f, y, y, x)
        + 2.0 * nlevel.h_value(f, y, x, y)
    )
    constant = float(nlevel.scalar_curvature(f, (x, y)) - h_sum)
    ok = worst < 1e-6 and abs(constant - 1.5) < 1e-12
    return ok, f"worst n=2 reduction error {worst:.3e}, additive constant {constant!r}"


def criterion_9() -> Tuple[bool, str]:
    """3-level example: positive second differences around the uniform spectrum."""
    f3 = monotone.function_from_measure(
        monotone.SymmetricMeasure(atoms=N3_EXAMPLE_ATOMS), label="three_level_example"
    )
    uniform = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    values = []
    for direction in ((1.0, -1.0, 0.0), (1.0, 1.0, -2.0)):
        values.append(
            nlevel.curvature_second_difference(f3, uniform, direction, delta=1e-2)
        )
    ok = all(v > 0.0 for v in values)
    return ok, f"second differences at delta=1e-2: {values[0]:.6g}, {values[1]:.6g}"


def criterion_10() -> Tuple[bool, str]:
    """The q=0 constant is triple-confirmed; published variants stay annotations."""
    worst = 0.0
    details = []
    for p in (0.35, 0.45):
        mu = extremum.family_measure(p, 0.0)
        from_measure = extremum.origin_curvature_from_measure(mu)
        from_series = extremum.series_coefficients(extremum.family_function(p, 0.0)).c0
        f = extremum.family_function(p, 0.0, from_measure=True)
        from_limit = _richardson_even(lambda h: _even_closed_form(f, h), 0.004)
        spread = max(from_measure, from_series, from_limit) - min(
            from_measure, from_series, from_limit
        )
        worst = max(worst, spread)
        details.append(f"p={p}: constant {from_measure:.12g} (spread {spread:.2e})")
    details.append(
        f"annotations (recorded, not asserted): constant '{ANNOTATION_Q0_CONSTANT}', "
        f"pure-state limit '{ANNOTATION_Q0_PURE_STATE_LIMIT}'"
    )
    return worst < 1e-9, "; ".join(details)


CRITERIA: List[Tuple[int, str, Callable[[], Tuple[bool, str]]]] = [
    (1, "origin anchor values", criterion_1),
    (2, "three-route agreement", criterion_2),
    (3, "series coefficients and pole cancellation", criterion_3),
    (4, "measure moment identities", criterion_4),
    (5, "two-pair family reproduction", criterion_5),
    (6, "single-pair positivity", criterion_6),
    (7, "non-monotone curvature exhibit", criterion_7),
    (8, "n=2 spectral reduction", criterion_8),
    (9, "n=3 second differences", criterion_9),
    (10, "triple-confirmed q=0 constants", criterion_10),
]


def run_all() -> List[CriterionResult]:
    results = []
    for index, name, fn in CRITERIA:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashed criterion is a failed criterion
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CriterionResult(index, name, passed, detail))
    return results
