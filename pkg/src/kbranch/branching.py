"""K-type multiplicities of standard representations.

The engine realises the branching rule

    multiplicity of a K-type  =  dimension of the H-invariants in
    (dual K-type restricted to H) x (inverse exterior series of the
    noncompact Levi roots) x (graded exterior of the compact Levi roots)
    x (line with weight lambda - rho_c + rho_n, tagged by the finite
    component character)

evaluated in two independent ways: truncated series arithmetic, and
on-demand signed sums of partition counts.  Tables carry the global sign
(-1)^(dim s_M / 2) as metadata; the entries themselves are the restricted
representation and are always nonnegative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .characters import (CutoffError, FormalCharacter, HMCharacter,
                         HMLattice, LatticeError, Weight, dot,
                         geometric_series, graded_exterior, kostant_partition,
                         weight)
from .groups import GroupDataError, RealGroupData, rho_half_sum
from .ktypes import KType, enumerate_ktypes, restrict_to_hm


class InvalidParamsError(ValueError):
    """Parameters failed validation (verdict carried along)."""

    def __init__(self, verdict: "ParamVerdict"):
        self.verdict = verdict
        super().__init__(str(verdict))


@dataclass(frozen=True)
class TemperedParams:
    """Parameter tuple of a basic representation.

    lam: Harish-Chandra-style parameter on the compact Cartan of the Levi
         factor (half-integral allowed in the doubled lattice);
    rmplus: explicit positive system for the Levi roots;
    chi: index into the character table of the finite component group;
    nu: continuous parameter on the split part -- carried but never used by
        the restriction arithmetic.
    """

    lam: Weight
    rmplus: tuple[Weight, ...]
    chi: int
    nu: Weight


@dataclass(frozen=True)
class ParamVerdict:
    verdict: str                 # "nonzero" | "zero" | "invalid"
    reason: Optional[str] = None

    def __str__(self):
        return self.verdict if not self.reason else f"{self.verdict}: {self.reason}"


@dataclass
class KTypeTable:
    """Multiplicity table over a finite window of K-types.

    entries maps highest-weight coordinate tuples to positive multiplicities;
    K-types inside the window that are absent have multiplicity zero.  sign
    is the index-theoretic sign relating the table to the geometric side.
    """

    entries: dict[tuple[int, ...], int]
    window: int
    sign: int

    def rows(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.entries.items())

    def __eq__(self, other):
        return (isinstance(other, KTypeTable)
                and self.entries == other.entries
                and self.window == other.window
                and self.sign == other.sign)


def sign_factor(g: RealGroupData) -> int:
    """(-1)^(dim s_M / 2); the dimension is even for valid data."""
    if g.dim_s_m % 2 != 0:
        raise GroupDataError("sign factor parity",
                             f"s_M dimension {g.dim_s_m} is odd")
    return -1 if (g.dim_s_m // 2) % 2 else 1


def _simples_of(positives: Sequence[Weight]) -> list[Weight]:
    pos = {p.coords for p in positives}
    return [p for p in positives if not any(
        tuple(a + b for a, b in zip(q, r)) == p.coords
        for q in pos for r in pos)]


def validate_params(g: RealGroupData, p: TemperedParams) -> ParamVerdict:
    """Classify parameters: invalid, zero (the induced representation
    vanishes), or nonzero."""
    def invalid(reason):
        return ParamVerdict("invalid", reason)

    if p.lam.lattice != g.hm.lattice or p.lam.rank != g.hm.rank:
        return invalid("parameter is not a weight of the Levi Cartan")
    if p.nu.lattice != f"{g.name}:a" or p.nu.rank != g.dim_a:
        return invalid("continuous parameter is not a weight of the split part")
    if not (0 <= p.chi < g.hm.ztable.order):
        return invalid(f"no component character with index {p.chi}")

    m_roots = {r.coords for r in g.m_roots.roots}
    rm = {r.coords for r in p.rmplus}
    if len(rm) != len(p.rmplus) or not rm <= m_roots:
        return invalid("positive system contains non-roots or duplicates")
    if 2 * len(rm) != len(m_roots) or rm & {tuple(-c for c in r) for r in rm}:
        return invalid("positive system does not split the roots into halves")

    # a genuine positive system is separated by its own root sum
    if p.rmplus:
        two_rho = p.rmplus[0] * 0
        for a in p.rmplus:
            two_rho = two_rho + a
        for a in p.rmplus:
            if dot(a, two_rho) <= 0:
                return invalid(
                    f"chosen positive system is not pointed at {a.coords}")

    for a in p.rmplus:
        if dot(p.lam, a) < 0:
            return invalid(
                f"parameter is not dominant for the root {a.coords}")

    rho = rho_half_sum(p.rmplus, rank=g.hm.rank, lattice=g.hm.lattice)
    shifted = p.lam - rho
    if not shifted.is_integral():
        return invalid("parameter minus rho does not lift to the torus")

    # component character must agree with the shifted parameter on the
    # overlap of the torus with the finite group
    order = g.hm.ztable.order
    for j, gen in enumerate(g.zgens):
        if gen.w is None:
            continue  # generator lies outside the small torus
        val = order * sum(Fraction(c) * x
                          for c, x in zip(shifted.coords, gen.w))
        if val.denominator != 1:
            return invalid("shifted parameter has no exact value at a "
                           "component generator")
        if int(val) % order != g.hm.ztable.rows[p.chi][j]:
            return invalid("component character disagrees with the shifted "
                           "parameter on the torus overlap")

    for a in _simples_of(p.rmplus):
        if g.is_compact(a) and dot(p.lam, a) == 0:
            return ParamVerdict(
                "zero", f"parameter orthogonal to simple compact root {a.coords}")
    return ParamVerdict("nonzero")


def _require_nonzero(g, p) -> None:
    v = validate_params(g, p)
    if v.verdict != "nonzero":
        raise InvalidParamsError(v)


def _params_lattice(g: RealGroupData, p: TemperedParams) -> HMLattice:
    """Character lattice graded by the chosen positive system.

    The truncation height must be positive on the cone where the infinite
    series live; that cone is spanned by the parameters' own positive
    system, which need not be the one declared in the group file (Weyl
    images of it are equally valid).
    """
    hv = [0] * g.hm.rank
    for r in p.rmplus:
        for i, c in enumerate(r.coords):
            hv[i] += c
    return HMLattice(g.hm.rank, g.hm.lattice, tuple(hv), g.hm.ztable)


def _base_character(g: RealGroupData, p: TemperedParams,
                    hm: HMLattice) -> HMCharacter:
    compact = g.compact_positives(p.rmplus)
    noncompact = g.noncompact_positives(p.rmplus)
    rho_c = rho_half_sum(compact, rank=g.hm.rank, lattice=g.hm.lattice)
    rho_n = rho_half_sum(noncompact, rank=g.hm.rank, lattice=g.hm.lattice)
    base = p.lam - rho_c + rho_n
    if not base.is_integral():
        raise LatticeError("shifted parameter is not a lattice weight")
    return hm.char(base, p.chi)


def hm_virtual_character(g: RealGroupData, p: TemperedParams,
                         cutoff: int) -> FormalCharacter:
    """The virtual character paired against K-types, truncated at a height.

    Product of: geometric series over the noncompact positive roots, the
    graded exterior algebra over the compact positive roots, and the single
    shifted-parameter term carrying the component character.  Heights are
    measured against the parameters' positive system.
    """
    _require_nonzero(g, p)
    hm = _params_lattice(g, p)
    base = _base_character(g, p, hm)
    if hm.height2(base.tweight) > 2 * cutoff:
        raise CutoffError("cutoff too small to contain the base weight")
    acc = FormalCharacter(hm, {base: 1})
    acc = acc * graded_exterior(hm, g.compact_positives(p.rmplus))
    for beta in g.noncompact_positives(p.rmplus):
        acc = acc * geometric_series(hm, beta, cutoff)
    return acc


def ktype_multiplicity(g: RealGroupData, p: TemperedParams, kt: KType,
                       mode: str = "partition") -> int:
    """Multiplicity of one K-type, by series or by partition counts.

    Both modes pair the dual K-type against the virtual character
    (invariants match a character against its inverse); they must agree.
    """
    _require_nonzero(g, p)
    if mode not in ("series", "partition"):
        raise ValueError(f"unknown mode {mode!r}")
    restricted = restrict_to_hm(g, kt).dual()
    zt = g.hm.ztable
    hm = _params_lattice(g, p)

    if mode == "partition":
        base = _base_character(g, p, hm)
        compact = g.compact_positives(p.rmplus)
        noncompact = g.noncompact_positives(p.rmplus)
        total = 0
        for c, m in restricted.items():
            if zt.inverse(c.zchar) != base.zchar:
                continue
            target0 = (-c.tweight) - base.tweight
            for r in range(len(compact) + 1):
                for sub in itertools.combinations(compact, r):
                    target = target0
                    for a in sub:
                        target = target - a
                    cnt = kostant_partition(target, noncompact, hm)
                    if cnt:
                        total += m * (-1) ** r * cnt
        return total

    needed = [HMCharacter(-c.tweight, zt.inverse(c.zchar))
              for c in restricted.support()]
    if not needed:
        return 0
    base = _base_character(g, p, hm)
    h2 = max([hm.height2(c.tweight) for c in needed]
             + [hm.height2(base.tweight)])
    cutoff = max(0, h2 // 2 + 1)
    for _ in range(4):
        try:
            virt = hm_virtual_character(g, p, cutoff)
            return sum(m * virt.coefficient(HMCharacter(-c.tweight,
                                                        zt.inverse(c.zchar)))
                       for c, m in restricted.items())
        except CutoffError:
            cutoff = 2 * cutoff + 2
    raise CutoffError("series cutoff failed to stabilise")


_SPOT_CHECKS = 3


def ktype_table(g: RealGroupData, p: TemperedParams, window: int) -> KTypeTable:
    """Multiplicities of every K-type in the window; empty for zero verdicts.

    Partition mode throughout, with series-mode spot checks on a few
    entries.  Entries are the restricted representation itself (sign
    already reconciled); the table's sign field records the index sign.
    """
    verdict = validate_params(g, p)
    if verdict.verdict == "invalid":
        raise InvalidParamsError(verdict)
    sign = sign_factor(g)
    if verdict.verdict == "zero":
        return KTypeTable({}, window, sign)

    entries: dict[tuple[int, ...], int] = {}
    for kt in enumerate_ktypes(g, window):
        m = ktype_multiplicity(g, p, kt, mode="partition")
        if m < 0:
            raise ArithmeticError(
                f"negative multiplicity {m} at {kt.highest.coords}; "
                "representation tables must be nonnegative")
        if m:
            entries[kt.highest.coords] = m

    for coords in list(entries)[:_SPOT_CHECKS]:
        kt = KType(weight(coords, g.t_lattice.lattice))
        s = ktype_multiplicity(g, p, kt, mode="series")
        if s != entries[coords]:
            raise ArithmeticError(
                f"mode disagreement at {coords}: series {s} vs partition "
                f"{entries[coords]}")
    return KTypeTable(entries, window, sign)


def nu_independence_check(g: RealGroupData, p: TemperedParams,
                          nu1: Weight, nu2: Weight, window: int) -> bool:
    """True iff the table is unchanged when the continuous parameter moves."""
    t1 = ktype_table(g, replace(p, nu=nu1), window)
    t2 = ktype_table(g, replace(p, nu=nu2), window)
    return t1 == t2


def ktype_table_series(g: RealGroupData, p: TemperedParams, window: int,
                       restrictions: Optional[dict] = None) -> KTypeTable:
    """Whole-window table in pure series mode, one shared character build.

    Used to cross-check the partition-mode tables; restrictions may carry
    precomputed dual restrictions keyed by highest weight.
    """
    verdict = validate_params(g, p)
    if verdict.verdict == "invalid":
        raise InvalidParamsError(verdict)
    sign = sign_factor(g)
    if verdict.verdict == "zero":
        return KTypeTable({}, window, sign)

    hm = _params_lattice(g, p)
    zt = g.hm.ztable
    ktypes = enumerate_ktypes(g, window)
    if restrictions is None:
        restrictions = {}
    duals = {}
    for kt in ktypes:
        key = kt.highest
        if key not in restrictions:
            restrictions[key] = restrict_to_hm(g, kt).dual()
        duals[key] = restrictions[key]

    base = _base_character(g, p, hm)
    h2 = hm.height2(base.tweight)
    for d in duals.values():
        for c in d.support():
            h2 = max(h2, hm.height2(-c.tweight))
    cutoff = max(0, h2 // 2 + 1)
    for _ in range(4):
        try:
            virt = hm_virtual_character(g, p, cutoff)
            entries = {}
            for key, d in duals.items():
                m = sum(mult * virt.coefficient(
                    HMCharacter(-c.tweight, zt.inverse(c.zchar)))
                    for c, mult in d.items())
                if m:
                    entries[key.coords] = m
            return KTypeTable(entries, window, sign)
        except CutoffError:
            cutoff = 2 * cutoff + 2
    raise CutoffError("series cutoff failed to stabilise")
