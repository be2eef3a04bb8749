"""Basis blades of the 16-dimensional site algebra and their products.

Blades are indexed by subsets of {0, 1, 2, 3}, encoded as 4-bit masks with
bit mu flagging the generator e_mu; mask 0 is the unit blade x.  Products
are generated by

    x e_mu = e_mu x = e_mu,
    e_mu e_nu = -e_nu e_mu              (mu != nu),
    e_mu e_mu = g_mumu x,               g = diag(+1, -1, -1, -1),
    e_mu1 e_mu2 ... = e_{mu1 mu2 ...}   (strictly ascending indices),

extended bilinearly.  All 256 ordered blade products are precomputed once
at import into sign/result lookup tables plus a dense (16, 16, 16) tensor
laid out for einsum contractions over fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

METRIC = (1, -1, -1, -1)
AXES = (0, 1, 2, 3)
NUM_BLADES = 16

# Masks in ascending order; each identifier lists the generator indices.
(X, E0, E1, E01, E2, E02, E12, E012,
 E3, E03, E13, E013, E23, E023, E123, E0123) = range(NUM_BLADES)

ALL_MASKS = tuple(range(NUM_BLADES))


def indices(mask: int) -> tuple[int, ...]:
    """Generator indices present in a blade mask, ascending."""
    return tuple(mu for mu in AXES if mask >> mu & 1)


def mask_of(idx: tuple[int, ...]) -> int:
    m = 0
    for mu in idx:
        m |= 1 << mu
    return m


def grade(mask: int) -> int:
    """Number of generators in the blade."""
    return int(mask).bit_count()


def blade_name(mask: int) -> str:
    """Short blade name: "x" for the unit, otherwise e plus index digits."""
    if mask == X:
        return "x"
    return "e" + "".join(str(mu) for mu in indices(mask))


GRADES = np.array([grade(m) for m in ALL_MASKS], dtype=np.int64)
GRADES.setflags(write=False)
EVEN_BLADES = tuple(m for m in ALL_MASKS if grade(m) % 2 == 0)
ODD_BLADES = tuple(m for m in ALL_MASKS if grade(m) % 2 == 1)
MASK_BY_NAME = {blade_name(m): m for m in ALL_MASKS}


def reduce_product(seq) -> tuple[int, tuple[int, ...]]:
    """Reduce a generator sequence to (sign, ascending index tuple).

    Adjacent transpositions of distinct generators flip the sign; adjacent
    equal generators contract to the metric factor g_mumu.  The loop runs
    until the sequence is strictly ascending.
    """
    sign = 1
    work = list(seq)
    i = 0
    while i < len(work) - 1:
        a, b = work[i], work[i + 1]
        if a == b:
            sign *= METRIC[a]
            del work[i:i + 2]
            i = max(i - 1, 0)
        elif a > b:
            work[i], work[i + 1] = b, a
            sign = -sign
            i = max(i - 1, 0)
        else:
            i += 1
    return sign, tuple(work)


@dataclass(frozen=True)
class CliffordTable:
    """Structure constants of the blade product.

    sign[a, b] and result[a, b] describe blade(a) * blade(b) as
    sign * blade(result).  tensor[a, b, c] equals sign[a, b] where
    c == result[a, b] and 0 elsewhere.
    """

    sign: np.ndarray
    result: np.ndarray
    tensor: np.ndarray

    def mul_masks(self, a: int, b: int) -> tuple[int, int]:
        """Product of two blades as (sign, result mask)."""
        return int(self.sign[a, b]), int(self.result[a, b])


def build_table() -> CliffordTable:
    """Precompute all 256 ordered blade products by sequence reduction."""
    sign = np.zeros((NUM_BLADES, NUM_BLADES), dtype=np.int8)
    result = np.zeros((NUM_BLADES, NUM_BLADES), dtype=np.uint8)
    for a in ALL_MASKS:
        for b in ALL_MASKS:
            s, idx = reduce_product(indices(a) + indices(b))
            sign[a, b] = s
            result[a, b] = mask_of(idx)
    tensor = np.zeros((NUM_BLADES, NUM_BLADES, NUM_BLADES))
    for a in ALL_MASKS:
        for b in ALL_MASKS:
            tensor[a, b, result[a, b]] = sign[a, b]
    for arr in (sign, result, tensor):
        arr.setflags(write=False)
    return CliffordTable(sign=sign, result=result, tensor=tensor)


TABLE = build_table()
