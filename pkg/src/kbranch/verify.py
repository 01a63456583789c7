"""Verification suites binding the combinatorial engine to its oracles.

Four suites, each a list of named checks with expected/actual values:

    sl2   -- every SL(2,R) family against its closed-form table, plus
             independence from the continuous parameter;
    su21  -- Weyl-denominator identity, series/partition mode equivalence,
             and the multiplicity-free expectation on sampled tables;
    dirac -- oscillator kernel dimensions, the cylinder reconciliation and
             deformation-scaling stability;
    ring  -- formal-character ring laws, the defining inverse identity and
             partition-vs-series agreement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, asdict
from typing import Optional

from . import presets
from .branching import (TemperedParams, ktype_multiplicity, ktype_table,
                        ktype_table_series, nu_independence_check,
                        validate_params)
from .characters import (FormalCharacter, HMLattice, ZCharTable, Weight,
                         char_mul, dot, geometric_series, graded_exterior,
                         kostant_partition)
from .groups import RootSystem, builtin_group, rho_half_sum, weyl_group
from .ktypes import enumerate_ktypes
from .oscillator import GridSpec, cylinder_sl2, oscillator_1d, oscillator_nd
from .sl2_oracles import SL2Series, oracle_match, sl2_branching


@dataclass
class Check:
    name: str
    passed: bool
    expected: str
    actual: str


def _check(name, passed, expected, actual) -> Check:
    return Check(name, bool(passed), str(expected), str(actual))


def _sl2_param_sets(g):
    """The named SL(2,R) families on the compact Cartan."""
    out = []
    for n in range(1, 6):
        for sign in "+-":
            kind = "discrete_plus" if sign == "+" else "discrete_minus"
            out.append((f"discrete n={n} sign {sign}",
                        presets.sl2_discrete(g, n, sign),
                        SL2Series(kind, n)))
    for sign, kind in (("+", "limit_plus"), ("-", "limit_minus")):
        out.append((f"limit sign {sign}", presets.sl2_limit(g, sign),
                    SL2Series(kind)))
    return out


def suite_sl2(window: int = 60, nu_samples: int = 100,
              seed: int = 20260811) -> list[Check]:
    gc = builtin_group("sl2r-compact")
    gs = builtin_group("sl2r-split")
    checks = []

    for label, p, series in _sl2_param_sets(gc):
        t = ktype_table(gc, p, window)
        rep = oracle_match(t, series)
        checks.append(_check(f"sl2 {label} matches oracle", rep.ok,
                             "empty diff", f"{len(rep.diffs)} diffs"))
        checks.append(_check(f"sl2 {label} sign", t.sign == -1, -1, t.sign))

    for chi, kind in (("plus", "principal_spherical"),
                      ("minus", "principal_nonspherical")):
        p = presets.sl2_principal(gs, chi)
        t = ktype_table(gs, p, window)
        rep = oracle_match(t, SL2Series(kind))
        checks.append(_check(f"sl2 principal {chi} matches oracle", rep.ok,
                             "empty diff", f"{len(rep.diffs)} diffs"))
        checks.append(_check(f"sl2 principal {chi} sign", t.sign == 1,
                             1, t.sign))

    rng = random.Random(seed)
    ok = True
    for _ in range(nu_samples):
        chi = rng.choice(["plus", "minus"])
        p = presets.sl2_principal(gs, chi)
        n1, n2 = rng.randint(-50, 50), rng.randint(-50, 50)
        if not nu_independence_check(gs, p, gs.a_weight([n1]),
                                     gs.a_weight([n2]), 20):
            ok = False
            break
    checks.append(_check(f"sl2 nu independence ({nu_samples} random pairs)",
                         ok, "identical tables", "identical" if ok else "diverged"))

    # support completeness: engine supports over all families tile the oracle
    engine_support = set()
    oracle_support = set()
    for label, p, series in _sl2_param_sets(gc):
        engine_support |= set(ktype_table(gc, p, 21).entries)
        oracle_support |= set(sl2_branching(series, 21).entries)
    for chi, kind in (("plus", "principal_spherical"),
                      ("minus", "principal_nonspherical")):
        engine_support |= set(
            ktype_table(gs, presets.sl2_principal(gs, chi), 21).entries)
        oracle_support |= set(sl2_branching(SL2Series(kind), 21).entries)
    checks.append(_check("sl2 support completeness", engine_support == oracle_support,
                         f"{len(oracle_support)} weights",
                         f"{len(engine_support)} weights"))
    return checks


def _weyl_denominator_check(name, hm, compact_positives) -> Check:
    """Graded exterior over compact positives equals the alternating sum of
    e^(rho_c - w rho_c) over the compact Weyl group."""
    lhs = graded_exterior(hm, compact_positives)
    if compact_positives:
        roots = tuple(compact_positives) + tuple(-r for r in compact_positives)
        rs = RootSystem(hm.rank, roots, tuple(compact_positives),
                        tuple(_indecomposables(compact_positives)))
        rho_c = rho_half_sum(compact_positives)
        elements = weyl_group(rs)
    else:
        rho_c = None
        elements = None
    terms = {}
    if compact_positives:
        for w in elements:
            key = hm.char(rho_c - w.apply(rho_c))
            terms[key] = terms.get(key, 0) + w.det
        rhs = FormalCharacter(hm, terms)
    else:
        rhs = FormalCharacter.one(hm)
    return _check(f"weyl denominator identity ({name})", lhs == rhs,
                  "formal equality", "equal" if lhs == rhs else "unequal")


def _indecomposables(positives):
    pos = {p.coords for p in positives}
    return [p for p in positives if not any(
        tuple(a + b for a, b in zip(q, r)) == p.coords
        for q in pos for r in pos)]


def random_su21_params(g, rng, scale: int = 4) -> TemperedParams:
    """Sample valid (nonzero) discrete-series or limit parameters."""
    tie = g.tm_weight([1, 0, -1])
    while True:
        a = rng.randint(-scale, scale)
        b = rng.randint(-scale, a)
        c = rng.randint(-scale, scale)
        lam = g.tm_weight([a, b, c])
        pos = []
        for r in g.m_roots.positives:
            d = dot(lam, r)
            if d > 0 or (d == 0 and dot(tie, r) > 0):
                pos.append(r)
            else:
                pos.append(-r)
        p = TemperedParams(lam=lam, rmplus=tuple(pos), chi=0,
                           nu=g.a_weight([]))
        if validate_params(g, p).verdict == "nonzero":
            return p


def suite_su21(samples: int = 50, queries: int = 200,
               seed: int = 20260811) -> list[Check]:
    gc = builtin_group("sl2r-compact")
    gs = builtin_group("sl2r-split")
    gu = builtin_group("su21")
    checks = []

    checks.append(_weyl_denominator_check(
        "sl2r-compact", gc.hm, gc.compact_positives()))
    checks.append(_weyl_denominator_check(
        "su21", gu.hm, gu.compact_positives()))

    # mode equivalence, exhaustively on the SL(2,R) families
    ok = True
    for label, p, _ in _sl2_param_sets(gc):
        if ktype_table(gc, p, 60) != ktype_table_series(gc, p, 60):
            ok = False
    for chi in ("plus", "minus"):
        p = presets.sl2_principal(gs, chi)
        if ktype_table(gs, p, 60) != ktype_table_series(gs, p, 60):
            ok = False
    checks.append(_check("mode equivalence sl2 exhaustive window 60", ok,
                         "series == partition", "agree" if ok else "disagree"))

    rng = random.Random(seed)
    ktypes6 = enumerate_ktypes(gu, 6)
    ok = True
    for _ in range(queries):
        p = random_su21_params(gu, rng)
        kt = rng.choice(ktypes6)
        if (ktype_multiplicity(gu, p, kt, "partition")
                != ktype_multiplicity(gu, p, kt, "series")):
            ok = False
            break
    checks.append(_check(f"mode equivalence su21 ({queries} random queries)",
                         ok, "series == partition",
                         "agree" if ok else "disagree"))

    # multiplicity-free expectation, falsifiable with a reproducer
    restrictions: dict = {}
    offender = None
    ok = True
    for i in range(samples):
        p = random_su21_params(gu, rng)
        t = ktype_table(gu, p, 6)
        ts = ktype_table_series(gu, p, 6, restrictions)
        if t != ts:
            ok = False
            offender = (p, "mode disagreement")
            break
        bad = [k for k, m in t.entries.items() if m > 1]
        if bad:
            ok = False
            offender = (p, f"multiplicity > 1 at {bad[0]}")
            break
    checks.append(_check(
        f"su21 multiplicity-free + mode-equivalent ({samples} tables)",
        ok, "all multiplicities <= 1",
        "ok" if ok else f"violated: lam={offender[0].lam.coords} "
                        f"{offender[1]}"))
    return checks


def suite_dirac(grid: Optional[GridSpec] = None,
                svd_tol: float = 1e-6) -> list[Check]:
    if grid is None:
        grid = GridSpec(8.0, 0.05)
    checks = []

    rep = oscillator_1d(grid, svd_tol)
    checks.append(_check("oscillator kernel dims",
                         (rep.kernel_dim_even, rep.kernel_dim_odd) == (1, 0),
                         "(1, 0)", f"({rep.kernel_dim_even}, {rep.kernel_dim_odd})"))
    checks.append(_check("oscillator gaussian error < 1e-3",
                         rep.gaussian_l2_error < 1e-3, "< 1e-3",
                         f"{rep.gaussian_l2_error:.3e}"))
    second = rep.even_singular_values[1]
    checks.append(_check("oscillator spectral gap > 0.5", second > 0.5,
                         "> 0.5", f"{second:.3f}"))

    rep2 = oscillator_nd(2, GridSpec(6.0, 0.1), 1e-5)
    checks.append(_check("2-D tensor rule (1, 0) with explicit confirmation",
                         (rep2.kernel_dim_even, rep2.kernel_dim_odd) == (1, 0)
                         and rep2.gaussian_l2_error < 5e-3,
                         "(1, 0), gaussian < 5e-3",
                         f"({rep2.kernel_dim_even}, {rep2.kernel_dim_odd}), "
                         f"{rep2.gaussian_l2_error:.3e}"))

    for parity, kind in (("even", "principal_spherical"),
                         ("odd", "principal_nonspherical")):
        t = cylinder_sl2(parity, 20, grid, svd_tol)
        rep_m = oracle_match(t, SL2Series(kind))
        checks.append(_check(f"cylinder {parity} matches principal oracle",
                             rep_m.ok, "empty diff", f"{len(rep_m.diffs)} diffs"))

    stable = True
    for f in (1.0, 2.0, 4.0):
        r = oscillator_1d(grid, svd_tol, potential_scale=f)
        if (r.kernel_dim_even, r.kernel_dim_odd) != (1, 0):
            stable = False
        for parity, kind in (("even", "principal_spherical"),
                             ("odd", "principal_nonspherical")):
            t = cylinder_sl2(parity, 20, grid, svd_tol, potential_scale=f)
            if not oracle_match(t, SL2Series(kind)).ok:
                stable = False
    checks.append(_check("deformation scaling f in {1,2,4} stable", stable,
                         "kernel dims unchanged",
                         "stable" if stable else "changed"))
    return checks


def suite_ring(seed: int = 20260811) -> list[Check]:
    checks = []
    gc = builtin_group("sl2r-compact")
    gu = builtin_group("su21")

    # defining identity: exterior line times its geometric inverse is trivial
    ok = True
    for g in (gc, gu):
        for beta in g.noncompact_positives():
            h = 10
            prod = char_mul(graded_exterior(g.hm, [beta]),
                            geometric_series(g.hm, beta, h))
            want = FormalCharacter.one(g.hm).truncate(prod.cutoff)
            if prod != want:
                ok = False
    checks.append(_check("inverse identity (1 - e^a) * sum e^na = 1", ok,
                         "trivial character", "ok" if ok else "broken"))

    # partition counts equal truncated-series coefficients
    rng = random.Random(seed)
    ok = True
    betas = gu.noncompact_positives()
    series = None
    H = 12
    series = geometric_series(gu.hm, betas[0], H)
    series = char_mul(series, geometric_series(gu.hm, betas[1], H))
    for _ in range(200):
        n1, n2 = rng.randint(0, 4), rng.randint(0, 4)
        target = n1 * betas[0] + n2 * betas[1]
        if gu.hm.height2(target) > 2 * series.cutoff:
            continue
        got = kostant_partition(target, betas, gu.hm)
        want = series.coefficient(gu.hm.char(target))
        if got != want:
            ok = False
    checks.append(_check("kostant partition equals series coefficient", ok,
                         "two code paths agree", "agree" if ok else "disagree"))

    # ring laws on random finite characters
    lat = HMLattice(2, "ringtest", (1, 1), ZCharTable(2, ((0,), (1,))))
    def rand_char():
        terms = {}
        for _ in range(rng.randint(0, 5)):
            w = Weight((rng.randint(-3, 3), rng.randint(-3, 3)), "ringtest")
            terms[lat.char(w, rng.randint(0, 1))] = rng.randint(-4, 4)
        return FormalCharacter(lat, terms)
    ok = True
    for _ in range(100):
        a, b, c = rand_char(), rand_char(), rand_char()
        if char_mul(a, b) != char_mul(b, a):
            ok = False
        if char_mul(char_mul(a, b), c) != char_mul(a, char_mul(b, c)):
            ok = False
    checks.append(_check("ring laws (commutative, associative)", ok,
                         "laws hold", "hold" if ok else "violated"))

    # partition-vs-series agreement at the representation level
    p = presets.sl2_discrete(gc, 3, "+")
    ok = ktype_table(gc, p, 30) == ktype_table_series(gc, p, 30)
    checks.append(_check("partition vs series tables (sl2 discrete)", ok,
                         "equal tables", "equal" if ok else "differ"))
    return checks


SUITES = {
    "sl2": suite_sl2,
    "su21": suite_su21,
    "dirac": suite_dirac,
    "ring": suite_ring,
}


def run_suite(name: str, **kwargs) -> dict:
    """Run a named suite and return a JSON-ready report."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    checks = SUITES[name](**kwargs)
    return {
        "suite": name,
        "pass": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
