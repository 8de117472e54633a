"""The eleven acceptance criteria at their pinned depths and tolerances.

Each test records a one-line verdict that the terminal summary prints.
All identities are exact; the only numeric tolerances are the runtime caps
and the growth-exponent window.
"""

from __future__ import annotations

import json
import time

from conftest import ACCEPTANCE
from skeinlab.lamination import DEFAULT_K, DEFAULT_LADDER, growth_experiment
from skeinlab.skein import catalogue_path, load_catalogue
from skeinlab.suites import (
    SuiteConfig,
    nonmembership_evidence,
    suite_bracelets,
    suite_cutting,
    suite_flip_mutation,
    suite_grading,
    suite_laurent,
    suite_notched,
    suite_potentials,
    suite_skein_identities,
    suite_weyl,
)

# (g, p, depth) exactly as pinned
SURFACES = [(1, 1, 8), (0, 4, 5), (1, 2, 4)]
FLIP_RUNTIME_CAP = 300.0
GROWTH_RUNTIME_CAP = 120.0
GROWTH_WINDOW = (1.85, 2.15)
BRACELET_CHART_DEPTH = {(1, 1): 6}
MAX_BRACELET_WEIGHT = 4


def record(key: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[key] = (ok, detail)


def failures(reports) -> list[str]:
    return [f"{r.config['surface']['g']},{r.config['surface']['p']}:{f.id}" for r in reports for f in r.failures()]


def test_criterion_01_flip_mutation():
    t = time.perf_counter()
    reps = [suite_flip_mutation(SuiteConfig(g, p, d)) for g, p, d in SURFACES]
    elapsed = time.perf_counter() - t
    edges = sum(r.metadata["edges_checked"] for r in reps)
    ok = all(r.ok for r in reps) and elapsed <= FLIP_RUNTIME_CAP
    record("1 flip-mutation", ok, f"{edges} directed edges, bad={failures(reps)}, {elapsed:.1f}s (cap {FLIP_RUNTIME_CAP:.0f}s)")
    assert ok


def test_criterion_02_laurent_positive():
    reps = [suite_laurent(SuiteConfig(g, p, d)) for g, p, d in SURFACES]
    n = sum(r.metadata["variables_checked"] for r in reps)
    ok = all(r.ok for r in reps)
    record("2 laurent+positivity", ok, f"{n} variables, bad={failures(reps)}")
    assert ok


def test_criterion_03_potential_regularity():
    """Literal statement: v_q Laurent in every explored chart of all three surfaces."""
    reps = [suite_potentials(SuiteConfig(g, p, d)) for g, p, d in SURFACES]
    literal = [
        f for f in failures(reps)
        if "v-laurent-every-chart" in f or "v-inverse-not-laurent" in f or "weyl-inverts-v" in f
    ]
    counts = {}
    for r in reps:
        for rec in r.records:
            if rec.id.startswith("v-laurent-every-chart") and rec.status == "fail":
                s = r.config["surface"]
                counts[f"S{s['g']}_{s['p']}{rec.id[len('v-laurent-every-chart'):]}"] = rec.witness["non_laurent"]
    ok = not literal
    record(
        "3 potential regularity",
        ok,
        "all charts Laurent" if ok else f"v_q not Laurent in charts notched at q: {counts}",
    )
    assert ok, f"non-Laurent potential charts: {counts}"


def test_criterion_03_supplement_plain_charts():
    """What does hold: Laurent wherever q is plain, and v or 1/v Laurent everywhere."""
    reps = [suite_potentials(SuiteConfig(g, p, d)) for g, p, d in SURFACES]
    bad = [
        f for f in failures(reps)
        if "plain-at-q" in f or "or-inverse" in f or "native-fan" in f or "inverse-not" in f or "weyl-inverts" in f
    ]
    record("3 (supplement) plain charts / v or 1/v", not bad, f"bad={bad}")
    assert not bad


def test_criterion_04_weyl():
    reps = [suite_weyl(SuiteConfig(g, p, 0)) for g, p in [(1, 2), (0, 4)]]
    ok = all(r.ok for r in reps)
    record("4 weyl action", ok, f"{sum(r.totals['pass'] for r in reps)} identities, bad={failures(reps)}")
    assert ok


def test_criterion_05_notched():
    reps = [suite_notched(SuiteConfig(g, p, 4)) for g, p in [(1, 2), (0, 4), (1, 1)]]
    checked = sum(r.metadata.get("notched_checked", 0) for r in reps)
    ok = all(r.ok for r in reps) and checked > 0
    record("5 notched relation", ok, f"{checked} notched variables (+ torus A_i v^2 chart), bad={failures(reps)}")
    assert ok


def test_criterion_06_bracelets():
    reps = [
        suite_bracelets(SuiteConfig(g, p, d), BRACELET_CHART_DEPTH.get((g, p), d), MAX_BRACELET_WEIGHT)
        for g, p, d in SURFACES
    ]
    oracle = sum(1 for r in reps for rec in r.records if rec.id.startswith("oracle[") and rec.status == "pass")
    framing = sum(1 for r in reps for rec in r.records if rec.id.startswith("framing[") and rec.status == "pass")
    ok = all(r.ok for r in reps) and oracle >= 7 and framing >= 2
    record("6 trace/bracelet", ok, f"{oracle} oracle entries, {framing} framing entries, bad={failures(reps)}")
    assert ok


def test_criterion_07_skein_identities():
    entries = [e for e in load_catalogue() if e.kind in ("puncture-skein", "digon")]
    reps = [suite_skein_identities(SuiteConfig(g, p, 1)) for g, p, _ in SURFACES]
    checked = sum(
        1 for r in reps for rec in r.records if rec.id.startswith(("puncture-skein[", "digon[")) and rec.status == "pass"
    )
    ok = all(r.ok for r in reps) and checked == len(entries) and checked > 0
    record("7 skein identities", ok, f"{checked}/{len(entries)} puncture-skein and digon entries, bad={failures(reps)}")
    assert ok


def test_criterion_08_cutting_freezing():
    cuts = json.load(open(catalogue_path(), encoding="utf-8"))["cuts"]
    surfaces = sorted({(c["surface"]["g"], c["surface"]["p"]) for c in cuts} | {(1, 1)})
    depth = {(g, p): d for g, p, d in SURFACES}
    reps = [suite_cutting(SuiteConfig(g, p, depth.get((g, p), 2))) for g, p in surfaces]
    split = sum(1 for r in reps for rec in r.records if rec.id.startswith("split-identity[") and rec.status == "pass")
    ok = all(r.ok for r in reps) and split >= 3 and split == len(cuts)
    record("8 cutting/freezing", ok, f"{split}/{len(cuts)} catalogued cuts, frozen subgraphs on {len(reps)} surfaces, bad={failures(reps)}")
    assert ok


def test_criterion_09_grading():
    reps = [suite_grading(SuiteConfig(g, p, d)) for g, p, d in SURFACES]
    ok = all(r.ok for r in reps)
    record("9 grading", ok, f"{sum(r.metadata['nodes'] for r in reps)} seeds, bad={failures(reps)}")
    assert ok


def test_criterion_10_nonmembership_evidence():
    ev = nonmembership_evidence(depth=4, bound=4, chart_depth=8)
    ok = ev["member"] is False and ev["laurent_in_all_charts"] and ev["status"] == "bounded evidence, not a proof"
    record(
        "10 bounded non-membership",
        ok,
        f"member={ev['member']} via {ev['method']} over {ev['generators']} generators; "
        f"v Laurent in {ev['charts']} charts; {ev['status']}",
    )
    assert ok


def test_criterion_11_growth():
    t = time.perf_counter()
    rep = growth_experiment(DEFAULT_K, DEFAULT_LADDER)
    quot = growth_experiment(DEFAULT_K, DEFAULT_LADDER, preset="quotient")
    elapsed = time.perf_counter() - t
    lo, hi = GROWTH_WINDOW
    ok = lo <= rep.fitted_exponent <= hi and quot.fitted_exponent == 0 and elapsed <= GROWTH_RUNTIME_CAP
    record("11 growth exponent", ok, f"exponent {rep.fitted_exponent:.4f} in [{lo}, {hi}], quotient {quot.fitted_exponent}, {elapsed:.2f}s")
    assert ok
