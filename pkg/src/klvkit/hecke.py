"""Action of the Hecke algebra generators T_s on the free module with
basis a block, plus the quadratic- and braid-relation validators."""

from __future__ import annotations

from .blockdata import BlockData, SimpleStatus
from .laurent import ONE, U, ZERO, LaurentPoly

__all__ = ["ModuleElement", "basis", "apply_T", "check_quadratic", "check_braid"]

_U_MINUS_1 = U - ONE
_U_MINUS_2 = U - LaurentPoly({0: 2})


class ModuleElement:
    """Sparse element of the block module: label -> LaurentPoly."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict[str, LaurentPoly] | None = None):
        c = {}
        if coeffs:
            for k, p in coeffs.items():
                if p:
                    c[k] = p
        self._c = c

    @property
    def coeffs(self) -> dict[str, LaurentPoly]:
        return dict(self._c)

    def coeff(self, label: str) -> LaurentPoly:
        return self._c.get(label, ZERO)

    def support(self) -> set[str]:
        return set(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleElement) and self._c == other._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        c = dict(self._c)
        for k, p in other._c.items():
            c[k] = c.get(k, ZERO) + p
        return ModuleElement(c)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        c = dict(self._c)
        for k, p in other._c.items():
            c[k] = c.get(k, ZERO) - p
        return ModuleElement(c)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement({k: -p for k, p in self._c.items()})

    def scale(self, poly: LaurentPoly) -> "ModuleElement":
        return ModuleElement({k: p * poly for k, p in self._c.items()})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"({self._c[k]})*{k}" for k in sorted(self._c))

    __repr__ = __str__


def basis(label: str) -> ModuleElement:
    return ModuleElement({label: ONE})


def _apply_T_basis(b: BlockData, s: int, label: str) -> ModuleElement:
    p = b.param(label)
    if not 0 <= s < len(b.simples):
        raise ValueError(f"unknown simple index: {s}")
    st = p.status[s]
    cross = p.cross[s]
    if st is SimpleStatus.COMPLEX_ASCENT:
        return basis(cross)
    if st is SimpleStatus.COMPLEX_DESCENT:
        return ModuleElement({cross: U, label: _U_MINUS_1})
    if st is SimpleStatus.COMPACT_IMAGINARY:
        return ModuleElement({label: U})
    if st is SimpleStatus.REAL_NONPARITY:
        return ModuleElement({label: -ONE})
    if st is SimpleStatus.NCI1:
        (up,) = p.cayley[s]
        return ModuleElement({cross: ONE, up: ONE})
    if st is SimpleStatus.NCI2:
        up1, up2 = sorted(p.cayley[s])
        return ModuleElement({label: ONE, up1: ONE, up2: ONE})
    if st is SimpleStatus.RP1:
        lo1, lo2 = sorted(p.cayley[s])
        return ModuleElement({label: _U_MINUS_2, lo1: _U_MINUS_1, lo2: _U_MINUS_1})
    # RealParityII
    (lo,) = p.cayley[s]
    out = {label: _U_MINUS_1, lo: _U_MINUS_1}
    out[cross] = out.get(cross, ZERO) - ONE
    return ModuleElement(out)


def apply_T(b: BlockData, s: int, m: ModuleElement | str) -> ModuleElement:
    """T_s applied to a module element (or a basis label)."""
    if isinstance(m, str):
        return _apply_T_basis(b, s, m)
    out = ModuleElement()
    for label, poly in m.coeffs.items():
        out = out + _apply_T_basis(b, s, label).scale(poly)
    return out


def check_quadratic(b: BlockData):
    """(T_s - u)(T_s + 1) must kill every basis element.

    Returns (True, None) or (False, (simple, label))."""
    for s in range(len(b.simples)):
        for label in b.sorted_labels():
            e = basis(label)
            te = apply_T(b, s, e)
            lhs = apply_T(b, s, te) - te.scale(_U_MINUS_1) - e.scale(U)
            if not lhs.is_zero():
                return False, (s, label)
    return True, None


def check_braid(b: BlockData, s: int, t: int) -> bool:
    """Alternating products T_s T_t ... of length m(s,t) agree."""
    if s == t:
        return True
    m = b.braid_order(s, t)
    for label in b.sorted_labels():
        lhs, rhs = basis(label), basis(label)
        gen_l, gen_r = (s, t), (t, s)
        for i in range(m):
            lhs = apply_T(b, gen_l[i % 2], lhs)
            rhs = apply_T(b, gen_r[i % 2], rhs)
        if lhs != rhs:
            return False
    return True
