"""Exact genericity tests for an infinitesimal character xi = xi_m + nu
split along a Levi selection, and the excluded hyperplane arrangement.

Every test is exact over Gaussian rationals; there are no tolerances.
A failed hypothesis never claims reducibility — the strongest verdict
that the checks support is reported, otherwise "NoConclusion".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gaussian import GaussRat, GVec, gvec, mat_apply, vec_add, vec_sub
from .rootdata import (
    InfChar,
    LeviSelection,
    RootDatum,
    levi_roots,
    nilradical_roots,
    weyl_enumerate,
    weyl_stabilizer,
    weyl_subgroup,
)

__all__ = [
    "HyperplaneFamily", "check_hypA", "check_hypB", "check_hypC",
    "check_hypD", "verdict", "emit_arrangement",
]


@dataclass(frozen=True)
class HyperplaneFamily:
    kind: str  # "IntegerCoset" | "Zero" | "AffineSubspace"
    functional: tuple[int, ...] | None
    offset: GaussRat | None = None
    members: tuple[GaussRat, ...] = ()
    matrix: tuple[tuple[int, ...], ...] | None = None
    rhs: GVec | None = None

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.functional is not None:
            doc["functional"] = list(self.functional)
        if self.offset is not None:
            doc["offset"] = str(self.offset)
        if self.members:
            doc["members"] = [str(m) for m in self.members]
        if self.matrix is not None:
            doc["matrix"] = [list(row) for row in self.matrix]
        if self.rhs is not None:
            doc["rhs"] = [str(x) for x in self.rhs]
        return doc


def _coords(xi) -> GVec:
    return xi.coords if isinstance(xi, InfChar) else gvec(xi)


def check_hypA(d: RootDatum, lv: LeviSelection, xi):
    """No Levi root may pair to zero with xi."""
    coords = _coords(xi)
    for alpha in levi_roots(d, lv):
        if d.pairing(alpha, coords).is_zero():
            return False, alpha
    return True, None


def check_hypB(d: RootDatum, lv: LeviSelection, xi):
    """No nilradical root may pair to an integer with xi."""
    coords = _coords(xi)
    for alpha in nilradical_roots(d, lv):
        if d.pairing(alpha, coords).is_integer():
            return False, alpha
    return True, None


def check_hypC(d: RootDatum, lv: LeviSelection, xi_m, nu, cap: int | None = None):
    """Two exact conditions on nu given the singular part xi_m:
    no Weyl element moving xi_m can realize w*nu - nu = xi_m - w*xi_m,
    and no nilradical root pairs to zero with nu."""
    xm, nv = _coords(xi_m), _coords(nu)
    for w in weyl_enumerate(d, cap):
        delta = vec_sub(xm, mat_apply(w, xm))
        if all(x.is_zero() for x in delta):
            continue
        if vec_sub(mat_apply(w, nv), nv) == delta:
            return False, ("weyl", w)
    for alpha in nilradical_roots(d, lv):
        if d.pairing(alpha, nv).is_zero():
            return False, ("root", alpha)
    return True, None


def check_hypD(d: RootDatum, lv: LeviSelection, xi, cap: int | None = None):
    """The full stabilizer of xi must lie inside the Levi Weyl group."""
    levi_simple_roots = [lv.simple_base[i] for i in lv.levi_simples]
    levi_group = set(weyl_subgroup(d, levi_simple_roots, cap))
    coords = _coords(xi)
    stab = weyl_stabilizer(d, InfChar.from_coords(coords), cap)
    for w in stab:
        if w not in levi_group:
            return False, w
    return True, None


def verdict(d: RootDatum, lv: LeviSelection, xi_m, nu, cap: int | None = None) -> dict:
    """Strongest applicable conclusion with per-hypothesis detail."""
    xm, nv = _coords(xi_m), _coords(nu)
    xi = vec_add(xm, nv)
    a_ok, a_wit = check_hypA(d, lv, xi)
    b_ok, b_wit = check_hypB(d, lv, xi)
    c_ok, c_wit = check_hypC(d, lv, xm, nv, cap)
    d_ok, d_wit = check_hypD(d, lv, xi, cap)
    if a_ok and b_ok:
        tag = "Main1"
    elif b_ok and (c_ok or d_ok):
        tag = "Main2"
    else:
        tag = "NoConclusion"

    def detail(ok, wit):
        rec: dict = {"holds": ok}
        if wit is not None:
            rec["witness"] = _witness_json(wit)
        return rec

    return {
        "verdict": tag,
        "hypA": detail(a_ok, a_wit),
        "hypB": detail(b_ok, b_wit),
        "hypC": detail(c_ok, c_wit),
        "hypD": detail(d_ok, d_wit),
    }


def _witness_json(wit):
    if isinstance(wit, tuple) and wit and wit[0] in ("weyl", "root"):
        kind, val = wit
        if kind == "weyl":
            return {"weyl": [list(r) for r in val]}
        return {"root": list(val)}
    if isinstance(wit, tuple) and wit and isinstance(wit[0], tuple):
        return {"weyl": [list(r) for r in wit]}
    return {"root": list(wit)}


def emit_arrangement(d: RootDatum, lv: LeviSelection, xi_m,
                     window: tuple[Fraction, Fraction],
                     cap: int | None = None) -> list[HyperplaneFamily]:
    """All excluded hyperplanes meeting the window, deterministically
    ordered: integer-coset families and zero planes per nilradical root,
    then affine subspaces per relevant Weyl element."""
    xm = _coords(xi_m)
    lo, hi = Fraction(window[0]), Fraction(window[1])
    out: list[HyperplaneFamily] = []
    acoords = lv.a_coordinates
    for alpha in nilradical_roots(d, lv):
        cr = d.coroot(alpha)
        func = tuple(cr[j] for j in acoords)
        c = d.pairing(alpha, xm)
        members = []
        n = (lo + c.real).__ceil__()
        while Fraction(n) - c.real <= hi:
            members.append(GaussRat(Fraction(n)) - c)
            n += 1
        out.append(HyperplaneFamily(
            kind="IntegerCoset", functional=func, offset=c,
            members=tuple(members),
        ))
        out.append(HyperplaneFamily(kind="Zero", functional=func))
    for w in weyl_enumerate(d, cap):
        delta = vec_sub(xm, mat_apply(w, xm))
        if all(x.is_zero() for x in delta):
            continue
        mat = tuple(
            tuple(w[i][j] - (1 if i == j else 0) for j in acoords)
            for i in range(d.rank)
        )
        out.append(HyperplaneFamily(
            kind="AffineSubspace", functional=None, matrix=mat, rhs=delta,
        ))
    return out
