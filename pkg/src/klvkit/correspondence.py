"""Verification of a supplied label map between two block files and the
resulting irreducibility verdict for induced parameters.

The map is given explicitly (pairs of labels plus a constant length
shift); the tool verifies that it preserves every piece of data the
multiplicity computation depends on, that its image is closed under
block equivalence, and that two independent multiplicity computations
agree through it.  Only then is "Irreducible" reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .blockdata import BlockData
from .klv import compute_P, compute_duality, multiplicities, partition_blocks

__all__ = [
    "Correspondence", "check_correspondence", "check_image_union_of_blocks",
    "compare_multiplicities", "induced_verdict",
    "correspondence_from_json", "correspondence_to_json", "load_correspondence",
]


@dataclass(frozen=True)
class Correspondence:
    pairs: dict[str, str]
    length_shift: int


def correspondence_from_json(doc: dict) -> Correspondence:
    pairs = {str(a): str(b) for a, b in doc["pairs"]}
    if len(pairs) != len(doc["pairs"]):
        raise ValueError("duplicate source labels in correspondence")
    return Correspondence(pairs=pairs, length_shift=int(doc["length_shift"]))


def correspondence_to_json(c: Correspondence) -> dict:
    return {
        "pairs": [[a, b] for a, b in sorted(c.pairs.items())],
        "length_shift": c.length_shift,
    }


def load_correspondence(path: str) -> Correspondence:
    with open(path, encoding="utf-8") as fh:
        return correspondence_from_json(json.load(fh))


def check_correspondence(L: BlockData, G: BlockData, c: Correspondence) -> list[str]:
    """All conditions for the map to transport multiplicity data; an
    empty list means it qualifies."""
    out: list[str] = []
    if L.simples != G.simples or L.braid != G.braid:
        out.append("simple sets or braid orders differ")
        return out
    if set(c.pairs) != set(L.params):
        missing = sorted(set(L.params) - set(c.pairs))
        extra = sorted(set(c.pairs) - set(L.params))
        if missing:
            out.append(f"map not total: missing {missing}")
        if extra:
            out.append(f"map domain has unknown labels {extra}")
        return out
    if len(set(c.pairs.values())) != len(c.pairs):
        out.append("map not injective")
    for src, tgt in sorted(c.pairs.items()):
        if tgt not in G.params:
            out.append(f"image label {tgt!r} not in target block data")
    if out:
        return out

    for src, tgt in sorted(c.pairs.items()):
        pl, pg = L.params[src], G.params[tgt]
        if pg.length != pl.length + c.length_shift:
            out.append(f"length shift not constant at {src!r}")
        for s in range(len(L.simples)):
            if pl.status[s] is not pg.status[s]:
                out.append(f"status mismatch at {src!r}, simple {s}")
                continue
            if c.pairs[pl.cross[s]] != pg.cross[s]:
                out.append(f"cross-action not intertwined at {src!r}, simple {s}")
            cl, cg = pl.cayley[s], pg.cayley[s]
            if (cl is None) != (cg is None):
                out.append(f"cayley domain mismatch at {src!r}, simple {s}")
            elif cl is not None and {c.pairs[x] for x in cl} != set(cg):
                out.append(f"cayley links not intertwined at {src!r}, simple {s}")
    return out


def check_image_union_of_blocks(G: BlockData, c: Correspondence):
    """The image must be a union of classes of the target partition.
    Returns (True, None) or (False, straddling class)."""
    image = set(c.pairs.values())
    for cls in partition_blocks(G):
        inside = [x for x in cls if x in image]
        if inside and len(inside) != len(cls):
            return False, cls
    return True, None


def _mult_by_block(b: BlockData):
    out = {}
    for cls in partition_blocks(b):
        r = compute_duality(b, cls)
        p = compute_P(b, cls, r)
        mm = multiplicities(b, p)
        for lab in cls:
            out[lab] = mm
    return out


def _entry(mm, row: str, col: str) -> int:
    try:
        i = mm.order.index(row)
        j = mm.order.index(col)
    except ValueError:
        return 0  # different blocks: multiplicity vanishes
    return mm.M[i][j]


def compare_multiplicities(L: BlockData, G: BlockData, c: Correspondence) -> bool:
    """Two independent multiplicity computations must agree through the
    map on every pair of source labels."""
    ml = _mult_by_block(L)
    mg = _mult_by_block(G)
    labels = sorted(c.pairs)
    for a in labels:
        for b_ in labels:
            if _entry(ml[a], a, b_) != _entry(mg[c.pairs[a]], c.pairs[a], c.pairs[b_]):
                return False
    return True


def induced_verdict(L: BlockData, G: BlockData, c: Correspondence,
                    delta: str) -> dict:
    """Verdict record for the induced module of the irreducible at delta."""
    if delta not in L.params:
        raise ValueError(f"unknown label: {delta}")
    report: dict = {"delta": delta}
    violations = check_correspondence(L, G, c)
    report["correspondence_violations"] = violations
    closed, witness = (None, None)
    mults_agree = None
    if not violations:
        closed, witness = check_image_union_of_blocks(G, c)
        report["image_union_of_blocks"] = closed
        if witness is not None:
            report["straddled_class"] = sorted(witness)
        if closed:
            mults_agree = compare_multiplicities(L, G, c)
            report["multiplicities_agree"] = mults_agree
    if not violations and closed and mults_agree:
        report["verdict"] = "Irreducible"
        report["image"] = c.pairs[delta]
        ml = _mult_by_block(L)[delta]
        mg = _mult_by_block(G)[c.pairs[delta]]
        j = ml.order.index(delta)
        report["source_M_column"] = {
            ml.order[i]: ml.M[i][j] for i in range(len(ml.order)) if ml.M[i][j]
        }
        jg = mg.order.index(c.pairs[delta])
        report["target_M_column"] = {
            mg.order[i]: mg.M[i][jg] for i in range(len(mg.order)) if mg.M[i][jg]
        }
    else:
        report["verdict"] = "NoConclusion"
        report["reason"] = "preconditions not established"
    return report
