"""Friendly parameter documents for the shipped groups.

Each builtin group accepts a small JSON vocabulary that maps onto raw
parameter tuples; raw input (lambda, rmplus, chi, nu) is always accepted
as an escape hatch.
"""

from __future__ import annotations

from typing import Optional

from .branching import TemperedParams
from .characters import dot
from .groups import RealGroupData


class ParamSchemaError(ValueError):
    pass


def sl2_discrete(g: RealGroupData, n: int, sign: str) -> TemperedParams:
    if n < 1:
        raise ParamSchemaError("discrete series need n >= 1")
    s = 1 if sign == "+" else -1
    return TemperedParams(
        lam=g.tm_weight([s * n]),
        rmplus=(g.tm_weight([2 * s]),),
        chi=(n - 1) % 2,
        nu=g.a_weight([]))


def sl2_limit(g: RealGroupData, sign: str) -> TemperedParams:
    s = 1 if sign == "+" else -1
    return TemperedParams(
        lam=g.tm_weight([0]),
        rmplus=(g.tm_weight([2 * s]),),
        chi=1,
        nu=g.a_weight([]))


def sl2_principal(g: RealGroupData, chi: str, nu: int = 1) -> TemperedParams:
    idx = {"plus": 0, "minus": 1}.get(chi)
    if idx is None:
        raise ParamSchemaError("chi must be 'plus' or 'minus'")
    return TemperedParams(
        lam=g.tm_weight([]), rmplus=(), chi=idx, nu=g.a_weight([nu]))


def su21_from_lambda(g: RealGroupData, coords,
                     rmplus: Optional[list] = None,
                     chi: int = 0) -> TemperedParams:
    """Parameters from a Harish-Chandra parameter on the rank-3 torus.

    For regular coords the positive system is derived from the sign of the
    pairings; singular parameters (limits) must supply rmplus explicitly.
    """
    lam = g.tm_weight(coords)
    if rmplus is not None:
        pos = tuple(g.tm_weight(c) for c in rmplus)
    else:
        pos = []
        for r in g.m_roots.positives:
            d = dot(lam, r)
            if d == 0:
                raise ParamSchemaError(
                    f"parameter is orthogonal to root {r.coords}; supply "
                    "rmplus explicitly for limits")
            pos.append(r if d > 0 else -r)
        pos = tuple(pos)
    return TemperedParams(lam=lam, rmplus=pos, chi=chi, nu=g.a_weight([]))


def raw_params(g: RealGroupData, doc: dict) -> TemperedParams:
    try:
        lam = g.tm_weight(doc["lambda"], denom=doc.get("lambda_denom", 1))
        rmplus = tuple(g.tm_weight(c) for c in doc.get("rmplus", []))
        chi = int(doc.get("chi", 0))
        nu = g.a_weight(doc.get("nu", [0] * g.dim_a))
    except (KeyError, TypeError, ValueError) as e:
        raise ParamSchemaError(f"bad raw parameter document: {e}") from e
    return TemperedParams(lam=lam, rmplus=rmplus, chi=chi, nu=nu)


def resolve_params(g: RealGroupData, doc: dict) -> TemperedParams:
    """Map a parameter document to a TemperedParams for this group."""
    if not isinstance(doc, dict):
        raise ParamSchemaError("parameter document must be a JSON object")
    if "lambda" in doc and g.name != "su21":
        return raw_params(g, doc)
    if g.name == "sl2r-compact":
        series = doc.get("series")
        if series == "discrete":
            return sl2_discrete(g, int(doc.get("n", 0)), doc.get("sign", "+"))
        if series == "limit":
            return sl2_limit(g, doc.get("sign", "+"))
        raise ParamSchemaError(
            'expected {"series": "discrete"|"limit", ...} or raw parameters')
    if g.name == "sl2r-split":
        if "chi" in doc:
            return sl2_principal(g, doc["chi"], int(doc.get("nu", 1)))
        raise ParamSchemaError(
            'expected {"chi": "plus"|"minus"} or raw parameters')
    if g.name == "su21":
        if "lambda" in doc:
            return su21_from_lambda(g, doc["lambda"], doc.get("rmplus"),
                                    int(doc.get("chi", 0)))
        raise ParamSchemaError('expected {"lambda": [a, b, c], ...}')
    return raw_params(g, doc)
