"""Support for singular infinitesimal characters: marked parameters
with zero-pairing simples, translation data to a nonsingular character,
and the commutativity check for the translation square."""

from __future__ import annotations

from dataclasses import dataclass

from .blockdata import Parameter, SimpleStatus
from .gaussian import GaussRat, vec_add
from .rootdata import InfChar, LeviSelection, RootDatum, levi_roots

__all__ = [
    "SingularParam", "TranslationDatum",
    "validate_singular_param", "validate_translation_datum",
    "check_translation_square",
]

_IMAGINARY = {
    SimpleStatus.COMPACT_IMAGINARY, SimpleStatus.NCI1, SimpleStatus.NCI2,
}
_NONCOMPACT = {SimpleStatus.NCI1, SimpleStatus.NCI2}
_REAL = {SimpleStatus.RP1, SimpleStatus.RP2, SimpleStatus.REAL_NONPARITY}


@dataclass(frozen=True)
class SingularParam:
    base: Parameter
    zero_pairing_imaginary: tuple[int, ...]
    zero_pairing_real: tuple[int, ...]


def validate_singular_param(p: SingularParam) -> list[str]:
    out = []
    n = len(p.base.status)
    for s in p.zero_pairing_imaginary:
        if not 0 <= s < n:
            out.append(f"imaginary marking index {s} out of range")
        elif p.base.status[s] not in _IMAGINARY:
            out.append(f"simple {s} marked imaginary but has status "
                       f"{p.base.status[s].value}")
        elif p.base.status[s] not in _NONCOMPACT:
            out.append(f"zero-pairing imaginary simple {s} must be noncompact")
    for s in p.zero_pairing_real:
        if not 0 <= s < n:
            out.append(f"real marking index {s} out of range")
        elif p.base.status[s] not in _REAL:
            out.append(f"simple {s} marked real but has status "
                       f"{p.base.status[s].value}")
        elif p.base.status[s] is not SimpleStatus.REAL_NONPARITY:
            out.append(f"zero-pairing real simple {s} must be nonparity")
    return out


@dataclass(frozen=True)
class TranslationDatum:
    xi: InfChar
    mu: tuple[int, ...]

    def xi_prime(self) -> InfChar:
        shifted = vec_add(self.xi.coords,
                          tuple(GaussRat.of(m) for m in self.mu))
        return InfChar.from_coords(shifted)


def validate_translation_datum(d: RootDatum, lv: LeviSelection,
                               t: TranslationDatum) -> list[str]:
    """xi + mu must be nonsingular on the Levi and preserve every
    positive-integer pairing of xi."""
    out = []
    xip = t.xi_prime().coords
    for alpha in levi_roots(d, lv):
        if d.pairing(alpha, xip).is_zero():
            out.append(f"shifted character still singular at Levi root {list(alpha)}")
    for alpha in d.roots:
        if d.pairing(alpha, t.xi.coords).is_positive_integer():
            if not d.pairing(alpha, xip).is_positive_integer():
                out.append(f"positive-integer pairing broken at root {list(alpha)}")
    return out


def check_translation_square(iota_xi: dict[str, str],
                             iota_xi_prime: dict[str, str],
                             tL: dict[str, str],
                             tG: dict[str, str]):
    """Commutativity: mapping across then up must equal up then across.
    Returns (True, None) or (False, witness label)."""
    for gamma, gamma_prime in sorted(tL.items()):
        if gamma not in iota_xi:
            raise ValueError(f"domain mismatch: {gamma!r} has no image")
        if gamma_prime not in iota_xi_prime:
            raise ValueError(f"domain mismatch: {gamma_prime!r} has no image")
        if iota_xi[gamma] not in tG:
            raise ValueError(f"domain mismatch: {iota_xi[gamma]!r} not translatable")
        if iota_xi_prime[gamma_prime] != tG[iota_xi[gamma]]:
            return False, gamma
    return True, None
