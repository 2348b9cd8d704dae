"""Block partition, order relation, duality map with R-polynomials,
self-dual basis with P-polynomials, and the multiplicity matrices.

The duality map D is bar-semilinear, determined by its values on basis
parameters.  It is computed by induction on length: complex descents and
type-I parity descents give direct recursions; the type-II parity case
leaves a two-dimensional ambiguity which is resolved by a small exact
linear solve (the difference D(gamma - cross(gamma)) must be a
u-eigenvector of T_s, pinned by the u=1 specialization and D^2 = Id),
with uniqueness asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blockdata import DESCENT_STATUSES, BlockData, SimpleStatus
from .hecke import ModuleElement, apply_T, basis
from .laurent import ONE, U_INV, ZERO, LaurentPoly

__all__ = [
    "RMatrix", "PMatrix", "MultMatrices",
    "DualityError", "PSolveError", "MultiplicityError",
    "partition_blocks", "compute_order", "compute_duality",
    "verify_duality", "compute_P", "multiplicities", "apply_D",
]


class DualityError(ValueError):
    pass


class PSolveError(ValueError):
    pass


class MultiplicityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Block partition

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def partition_blocks(b: BlockData) -> list[list[str]]:
    """Equivalence classes generated by noncompact-imaginary Cayley links
    and complex cross-actions.  Classes are sorted lists."""
    uf = _UnionFind(b.params)
    for label, p in b.params.items():
        for s in range(len(b.simples)):
            st = p.status[s]
            if st in (SimpleStatus.COMPLEX_ASCENT, SimpleStatus.COMPLEX_DESCENT):
                uf.union(label, p.cross[s])
            elif st in (SimpleStatus.NCI1, SimpleStatus.NCI2):
                for t in p.cayley[s]:
                    uf.union(label, t)
    classes: dict[str, list[str]] = {}
    for label in b.params:
        classes.setdefault(uf.find(label), []).append(label)
    return sorted(sorted(c) for c in classes.values())


# ---------------------------------------------------------------------------
# Order relation (safe over-approximation via T_s-support closure)

def _sort_key(b: BlockData):
    return lambda label: (b.params[label].length, label)


def _descent_targets(b: BlockData, label: str, s: int) -> list[str]:
    """Labels one length below gamma reached through the descent s."""
    p = b.param(label)
    st = p.status[s]
    if st is SimpleStatus.COMPLEX_DESCENT:
        return [p.cross[s]]
    if st in (SimpleStatus.RP1, SimpleStatus.RP2):
        return sorted(p.cayley[s])
    return []


def compute_order(b: BlockData, block: list[str]) -> dict[str, frozenset[str]]:
    """Down-set of each label: a set guaranteed to contain every element
    below it in the representation-theoretic order (and the label itself)."""
    members = set(block)
    down: dict[str, frozenset[str]] = {}
    for label in sorted(block, key=_sort_key(b)):
        p = b.param(label)
        dset = {label}
        for s in range(len(b.simples)):
            targets = _descent_targets(b, label, s)
            if not targets:
                continue
            acc: set[str] = set()
            for t in targets:
                acc |= down[t]
            clo = set(acc)
            for psi in acc:
                clo |= apply_T(b, s, psi).support()
            for phi in clo:
                if phi in members and b.params[phi].length < p.length:
                    dset.add(phi)
                    dset |= down[phi]
        down[label] = frozenset(dset)
    return down


# ---------------------------------------------------------------------------
# Duality

@dataclass(frozen=True)
class RMatrix:
    order: tuple[str, ...]
    entries: dict[tuple[str, str], LaurentPoly]
    down: dict[str, frozenset[str]]

    def entry(self, phi: str, gamma: str) -> LaurentPoly:
        return self.entries.get((phi, gamma), ZERO)


@dataclass(frozen=True)
class PMatrix:
    order: tuple[str, ...]
    entries: dict[tuple[str, str], LaurentPoly]

    def entry(self, phi: str, gamma: str) -> LaurentPoly:
        if phi == gamma:
            return ONE
        return self.entries.get((phi, gamma), ZERO)


@dataclass(frozen=True)
class MultMatrices:
    order: tuple[str, ...]
    M: tuple[tuple[int, ...], ...]
    m: tuple[tuple[int, ...], ...]


def apply_D(dual: dict[str, ModuleElement], m: ModuleElement) -> ModuleElement:
    """Bar-semilinear extension of the duality map to module elements."""
    out = ModuleElement()
    for label, poly in m.coeffs.items():
        out = out + dual[label].scale(poly.bar())
    return out


def _ts_plus_one_over_u(b: BlockData, s: int, m: ModuleElement) -> ModuleElement:
    return (apply_T(b, s, m) + m).scale(U_INV)


def _s_packet_vectors(b: BlockData, s: int, block: list[str]):
    """The u-eigenvectors of T_s with constant coefficients, one or two
    per s-packet.  Returns a list of lists [(label, weight), ...]."""
    seen: set[str] = set()
    vectors = []
    for label in sorted(block, key=_sort_key(b)):
        if label in seen:
            continue
        p = b.param(label)
        st = p.status[s]
        if st is SimpleStatus.COMPACT_IMAGINARY:
            seen.add(label)
            vectors.append([(label, 1)])
        elif st is SimpleStatus.REAL_NONPARITY:
            seen.add(label)
        elif st in (SimpleStatus.COMPLEX_ASCENT, SimpleStatus.COMPLEX_DESCENT):
            other = p.cross[s]
            seen.update({label, other})
            vectors.append([(label, 1), (other, 1)])
        elif st in (SimpleStatus.RP1, SimpleStatus.NCI1):
            top = label if st is SimpleStatus.RP1 else next(iter(p.cayley[s]))
            lo1, lo2 = sorted(b.param(top).cayley[s])
            seen.update({top, lo1, lo2})
            vectors.append([(top, 1), (lo1, 1), (lo2, 1)])
        else:  # RP2 / NCI2 triple
            bot = label if st is SimpleStatus.NCI2 else next(iter(p.cayley[s]))
            up1, up2 = sorted(b.param(bot).cayley[s])
            seen.update({bot, up1, up2})
            vectors.append([(up1, 1), (up2, -1)])
            vectors.append([(up1, 1), (up2, 1), (bot, 2)])
    return vectors


# Symbolic Laurent coefficients for the type-II endgame: a polynomial is
# a map exp -> linear form, a linear form a map var -> Fraction with the
# constant under key -1.
_CONST = -1


def _sym_from_poly(p: LaurentPoly):
    return {k: {_CONST: Fraction(c)} for k, c in p.terms.items()}


def _sym_add(a, bb):
    out = {k: dict(f) for k, f in a.items()}
    for k, f in bb.items():
        tgt = out.setdefault(k, {})
        for v, c in f.items():
            tgt[v] = tgt.get(v, Fraction(0)) + c
    return out


def _sym_scale(a, c: Fraction):
    return {k: {v: x * c for v, x in f.items()} for k, f in a.items()}


def _sym_bar(a):
    return {-k: dict(f) for k, f in a.items()}


def _sym_mul_poly(a, p: LaurentPoly):
    out: dict[int, dict[int, Fraction]] = {}
    for k1, f in a.items():
        for k2, c2 in p.terms.items():
            tgt = out.setdefault(k1 + k2, {})
            for v, c in f.items():
                tgt[v] = tgt.get(v, Fraction(0)) + c * c2
    return out


def _solve_linear(equations, nvars):
    """Gaussian elimination over Fraction.  equations: list of
    (dict var->coeff, rhs).  Returns the unique solution vector."""
    rows = [(dict(f), r) for f, r in equations]
    sol = [None] * nvars
    pivot_rows = []
    for var in range(nvars):
        piv = next(
            (i for i, (f, _) in enumerate(rows) if f.get(var)),
            None,
        )
        if piv is None:
            continue
        f, r = rows.pop(piv)
        inv = Fraction(1) / f[var]
        f = {v: c * inv for v, c in f.items()}
        r = r * inv
        pivot_rows.append((var, f, r))
        nrows = []
        for g, rr in rows:
            c = g.get(var)
            if c:
                g = {v: g.get(v, Fraction(0)) - c * f.get(v, Fraction(0))
                     for v in set(g) | set(f)}
                g = {v: x for v, x in g.items() if x}
                rr = rr - c * r
            nrows.append((g, rr))
        rows = nrows
    for g, rr in rows:
        if not g and rr:
            raise DualityError("duality system inconsistent or non-unique")
    # Back substitution; every variable must be pinned by some pivot.
    for var, f, r in reversed(pivot_rows):
        val = r
        for v, c in f.items():
            if v != var:
                if sol[v] is None:
                    raise DualityError("duality system inconsistent or non-unique")
                val -= c * sol[v]
        sol[var] = val
    if any(v is None for v in sol):
        raise DualityError("duality system inconsistent or non-unique")
    return sol


def _halve(m: ModuleElement) -> ModuleElement:
    out = {}
    for label, poly in m.coeffs.items():
        t = {}
        for k, c in poly.terms.items():
            if c % 2:
                raise DualityError("duality system inconsistent or non-unique")
            t[k] = c // 2
        out[label] = LaurentPoly(t)
    return ModuleElement(out)


def _solve_rp2_pair(b, block, down, dual, gamma: str, s: int):
    """Determine D(gamma) and D(cross gamma) for a type-II parity descent."""
    p = b.param(gamma)
    g2 = p.cross[s]
    (gp,) = p.cayley[s]
    l = p.length
    ssum = _ts_plus_one_over_u(b, s, dual[gp]) - dual[gp] - dual[gp]

    supp = (down[gamma] | down[g2]) - {gamma, g2}
    if not ssum.support() <= supp | {gamma, g2}:
        raise DualityError("duality system inconsistent or non-unique")

    # Unknowns: even-exponent coefficients of one scalar per eligible
    # u-eigenvector of T_s supported strictly below the pair.
    vectors = [
        vec for vec in _s_packet_vectors(b, s, block)
        if {lab for lab, _ in vec} <= supp
    ]
    var_index: dict[tuple[int, int], int] = {}
    vec_exps = []
    for i, vec in enumerate(vectors):
        top = max(b.params[lab].length for lab, _ in vec)
        exps = list(range(-2 * l, -2 * top + 1, 2))
        vec_exps.append(exps)
        for k in exps:
            var_index[(i, k)] = len(var_index)
    nvars = len(var_index)

    # x = D(gamma - cross gamma), symbolically, as label -> sym poly.
    weight_of: dict[str, tuple[int, int]] = {}
    for i, vec in enumerate(vectors):
        for lab, w in vec:
            weight_of[lab] = (i, w)
    x_sym: dict[str, dict] = {
        gamma: {-2 * l: {_CONST: Fraction(1)}},
        g2: {-2 * l: {_CONST: Fraction(-1)}},
    }
    for lab, (i, w) in weight_of.items():
        x_sym[lab] = {k: {var_index[(i, k)]: Fraction(w)} for k in vec_exps[i]}

    def coeff_sym(label: str, sign: int):
        """Coefficient of label in (S + sign*x)/2."""
        base = _sym_from_poly(ssum.coeff(label))
        if label in x_sym:
            base = _sym_add(base, _sym_scale(x_sym[label], Fraction(sign)))
        return _sym_scale(base, Fraction(1, 2))

    # The top coefficients of D(target) are pinned: u^(-l) on target,
    # 0 on the cross partner.  Hence
    #   D(D(target)) = u^l * (S + sign*x)/2 + sum over lower phi of
    #                  bar(coeff of phi) * D(phi)
    # and this must equal the basis vector of target.
    equations = []
    labels = sorted(supp | {gamma, g2})
    u_to_l = LaurentPoly({2 * l: 1})
    for target, sign in ((gamma, 1), (g2, -1)):
        acc: dict[str, dict] = {
            phi2: _sym_mul_poly(coeff_sym(phi2, sign), u_to_l)
            for phi2 in labels
        }
        for phi in sorted(supp):
            bar_a = _sym_bar(coeff_sym(phi, sign))
            for phi2, poly in dual[phi].coeffs.items():
                cur = acc.setdefault(phi2, {})
                acc[phi2] = _sym_add(cur, _sym_mul_poly(bar_a, poly))
        for phi2, sp in acc.items():
            for k, f in sp.items():
                rhs = Fraction(1) if (phi2 == target and k == 0) else Fraction(0)
                form = {v: c for v, c in f.items() if v != _CONST and c}
                rhs = rhs - f.get(_CONST, Fraction(0))
                if form or rhs:
                    equations.append((form, rhs))
    # u = 1 specialization: each scalar vanishes at v = 1.
    for i, exps in enumerate(vec_exps):
        form = {var_index[(i, k)]: Fraction(1) for k in exps}
        equations.append((form, Fraction(0)))

    sol = _solve_linear(equations, nvars)

    x_terms: dict[str, dict[int, Fraction]] = {}
    for lab, sp in x_sym.items():
        t = {}
        for k, f in sp.items():
            val = f.get(_CONST, Fraction(0)) + sum(
                c * sol[v] for v, c in f.items() if v != _CONST
            )
            if val:
                t[k] = val
        if t:
            x_terms[lab] = t
    x = ModuleElement({
        lab: LaurentPoly({k: _as_int(v) for k, v in t.items()})
        for lab, t in x_terms.items()
    })
    dual[gamma] = _halve(ssum + x)
    dual[g2] = _halve(ssum - x)


def _as_int(fr: Fraction) -> int:
    if fr.denominator != 1:
        raise DualityError("duality system inconsistent or non-unique")
    return fr.numerator


def compute_duality(b: BlockData, block: list[str]) -> RMatrix:
    """R-polynomials of one block, by induction on length."""
    down = compute_order(b, block)
    order = tuple(sorted(block, key=_sort_key(b)))
    dual: dict[str, ModuleElement] = {}
    for gamma in order:
        if gamma in dual:
            continue
        p = b.param(gamma)
        l = p.length
        descents = {s: p.status[s] for s in range(len(b.simples))
                    if p.status[s] in DESCENT_STATUSES}
        cd = next((s for s, st in descents.items()
                   if st is SimpleStatus.COMPLEX_DESCENT), None)
        rp1 = next((s for s, st in descents.items()
                    if st is SimpleStatus.RP1), None)
        if not descents:
            dual[gamma] = basis(gamma).scale(LaurentPoly({-2 * l: 1}))
        elif cd is not None:
            g2 = p.cross[cd]
            dual[gamma] = _ts_plus_one_over_u(b, cd, dual[g2]) - dual[g2]
        elif rp1 is not None:
            lo1, lo2 = sorted(p.cayley[rp1])
            dual[gamma] = (_ts_plus_one_over_u(b, rp1, dual[lo1])
                           - dual[lo1] - dual[lo2])
        else:
            s = min(descents)
            _solve_rp2_pair(b, block, down, dual, gamma, s)

    entries: dict[tuple[str, str], LaurentPoly] = {}
    for gamma in order:
        lg = b.params[gamma].length
        for phi, poly in dual[gamma].coeffs.items():
            if phi not in down[gamma]:
                raise DualityError("duality system inconsistent or non-unique")
            sign = -1 if (lg - b.params[phi].length) % 2 else 1
            entries[(phi, gamma)] = poly.shifted(2 * lg) * sign
    return RMatrix(order=order, entries=entries, down=down)


def duality_map(b: BlockData, r: RMatrix) -> dict[str, ModuleElement]:
    """Reconstruct D on basis elements from the R-matrix."""
    dual = {}
    for gamma in r.order:
        lg = b.params[gamma].length
        coeffs = {}
        for (phi, g2), poly in r.entries.items():
            if g2 != gamma:
                continue
            sign = -1 if (lg - b.params[phi].length) % 2 else 1
            coeffs[phi] = (poly * sign).shifted(-2 * lg)
        dual[gamma] = ModuleElement(coeffs)
    return dual


def verify_duality(b: BlockData, block: list[str], r: RMatrix) -> bool:
    """Independent certification of the computed duality map."""
    dual = duality_map(b, r)
    for gamma in r.order:
        lg = b.params[gamma].length
        # diagonal normalization and degree bounds
        if r.entry(gamma, gamma) != ONE:
            return False
        for phi in r.down[gamma]:
            e = r.entry(phi, gamma)
            if e and not e.is_u_polynomial():
                return False
            if e and e.degree_in_u() > lg - b.params[phi].length:
                return False
        # involution and u = 1 specialization
        if apply_D(dual, dual[gamma]) != basis(gamma):
            return False
        for phi, poly in dual[gamma].coeffs.items():
            if poly.eval_at_one() != (1 if phi == gamma else 0):
                return False
    # intertwining with every T_s + 1
    for s in range(len(b.simples)):
        for gamma in r.order:
            lhs = apply_D(dual, apply_T(b, s, basis(gamma)) + basis(gamma))
            rhs = _ts_plus_one_over_u(b, s, dual[gamma])
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Self-dual basis and multiplicities

def compute_P(b: BlockData, block: list[str], r: RMatrix) -> PMatrix:
    """Solve the self-duality identity for the P-polynomials, column by
    column, under the strict degree bound."""
    dual = duality_map(b, r)
    entries: dict[tuple[str, str], LaurentPoly] = {}

    def pval(phi, gamma):
        if phi == gamma:
            return ONE
        return entries.get((phi, gamma), ZERO)

    for gamma in r.order:
        lg = b.params[gamma].length
        below = sorted(
            (x for x in r.down[gamma] if x != gamma),
            key=lambda x: (-b.params[x].length, x),
        )
        for phi in below:
            lp = b.params[phi].length
            n = lg - lp
            f = ZERO
            for psi in r.down[gamma]:
                if psi == phi or phi not in r.down[psi]:
                    continue
                lpsi = b.params[psi].length
                sign = -1 if (lpsi - lp) % 2 else 1
                f = f + (pval(psi, gamma).bar().shifted(2 * (lg - lpsi))
                         * sign * r.entry(phi, psi))
            sol = LaurentPoly({k: c for k, c in f.terms.items() if k <= n - 1})
            if sol - sol.bar().shifted(2 * n) != f:
                raise PSolveError("no solution under degree bound")
            if sol:
                entries[(phi, gamma)] = sol
        # safety net: the assembled column really is self-dual
        col = ModuleElement({phi: pval(phi, gamma) for phi in r.down[gamma]})
        if apply_D(dual, col) != col.scale(LaurentPoly({-2 * lg: 1})):
            raise PSolveError("no solution under degree bound")
    return PMatrix(order=r.order, entries=entries)


def multiplicities(b: BlockData, p: PMatrix) -> MultMatrices:
    order = p.order
    n = len(order)
    lens = [b.params[x].length for x in order]
    big = [[0] * n for _ in range(n)]
    for i, phi in enumerate(order):
        for j, gamma in enumerate(order):
            val = p.entry(phi, gamma).eval_at_one()
            if val:
                sign = -1 if (lens[j] - lens[i]) % 2 else 1
                big[i][j] = sign * val
    for i in range(n):
        if big[i][i] != 1:
            raise MultiplicityError("M not unitriangular")
        for j in range(i):
            if big[i][j] != 0:
                raise MultiplicityError("M not unitriangular")
    # exact inverse of an upper unitriangular integer matrix
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = -sum(big[i][k] * inv[k][j] for k in range(i + 1, j + 1))
            inv[i][j] = acc
    return MultMatrices(
        order=order,
        M=tuple(tuple(row) for row in big),
        m=tuple(tuple(row) for row in inv),
    )
