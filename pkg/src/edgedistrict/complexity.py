"""Complexity classification of the 32 meaningful criterion combinations.

Classes are derived, not looked up: a handful of base results fix some
variants, and three monotonicity reductions propagate them.

* tractability flows *down*: if ``X + {O}`` or ``X + {W}`` is polynomial, so is ``X``;
* hardness flows *up*: if ``X`` is hard then ``X + {O}`` and ``X + {W}`` are hard,
  and with N active so is ``X + {B}``.

The derivation records the base result followed by the reductions applied.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .exceptions import MeaninglessVariant
from .model import VariantSpec, meaningful_variants


class Complexity(str, Enum):
    POLYNOMIAL = "P"
    NP_HARD = "NP-hard"


# Base results.  Names double as the tokens of derivation strings.
LINEAR_RELAXATION = "linear-relaxation"      # every subset of {B, O, W} is an LP
GREEDY_ASSIGNMENT = "greedy-assignment"      # nearest fixed center, smallest index on ties
LP_ROUNDING = "lp-rounding"                  # unweighted balanced transport + rounding
SINGLE_DISTRICT = "single-district"          # everything to one district
VERTEX_COVER = "vertex-cover-reduction"
THREE_PARTITION = "3-partition-reduction"
# Reductions between variants.
ADD_BALANCE = "balance-not-easier"           # X+N <= X+N+B
ADD_OBJECTIVE = "objective-not-easier"       # X <= X+O
ADD_WEIGHTS = "weights-not-easier"           # X <= X+W

MULTIPLICATIVE_CAVEAT = "valid for additive tolerance; unresolved for multiplicative tolerance"

_BASE_POLYNOMIAL = {
    "O": LINEAR_RELAXATION, "BO": LINEAR_RELAXATION, "OW": LINEAR_RELAXATION,
    "BOW": LINEAR_RELAXATION,
    "IOW": GREEDY_ASSIGNMENT, "CIOW": GREEDY_ASSIGNMENT,
    "BIO": LP_ROUNDING,
    "CINW": SINGLE_DISTRICT,
}
_BASE_HARD = {
    "NO": VERTEX_COVER, "INO": VERTEX_COVER, "CINO": VERTEX_COVER,
    "BCI": THREE_PARTITION, "BCIN": THREE_PARTITION, "BIOW": THREE_PARTITION,
}


@dataclass(frozen=True)
class Classification:
    variant: VariantSpec
    complexity: Complexity
    chain: tuple
    caveat: Optional[str] = None

    @property
    def derivation(self) -> str:
        text = " & ".join(self.chain)
        if self.caveat:
            text += f" ({self.caveat})"
        return text

    def __str__(self):
        return f"{self.variant}: {self.complexity.value} [{self.derivation}]"


def _key(v: VariantSpec) -> str:
    return str(v)


def _derive_polynomial(v: VariantSpec) -> Optional[tuple]:
    key = _key(v)
    if key in _BASE_POLYNOMIAL:
        return (_BASE_POLYNOMIAL[key],)
    best = None
    for letter, reduction in (("O", ADD_OBJECTIVE), ("W", ADD_WEIGHTS)):
        if letter in v:
            continue
        sup = v | {letter}
        if sup.meaningless_reason:
            continue
        chain = _derive_polynomial(sup)
        if chain is not None:
            cand = chain + (reduction,)
            if best is None or len(cand) < len(best):
                best = cand
    return best


def _derive_hard(v: VariantSpec) -> Optional[tuple]:
    key = _key(v)
    if key in _BASE_HARD:
        return (_BASE_HARD[key],)
    candidates = []
    for letter, reduction in (("B", ADD_BALANCE), ("W", ADD_WEIGHTS), ("O", ADD_OBJECTIVE)):
        if letter not in v:
            continue
        if letter == "B" and "N" not in v:
            continue
        sub = v - {letter}
        if sub.meaningless_reason:
            continue
        chain = _derive_hard(sub)
        if chain is not None:
            candidates.append(chain + (reduction,))
    if not candidates:
        return None
    # prefer chains that avoid the balance reduction (weaker under multiplicative
    # tolerance), then shorter ones
    return min(candidates, key=lambda c: (ADD_BALANCE in c, len(c)))


def classify(variant) -> Classification:
    """Classify a meaningful variant as polynomial or NP-hard.

    Raises
    ------
    MeaninglessVariant
        For C without I, or a variant with neither O nor C.
    """
    if isinstance(variant, str):
        variant = VariantSpec.parse(variant)
    variant.require_meaningful()
    chain = _derive_polynomial(variant)
    if chain is not None:
        return Classification(variant, Complexity.POLYNOMIAL, chain)
    chain = _derive_hard(variant)
    if chain is None:  # pragma: no cover - the lattice is closed over the 32 cells
        raise MeaninglessVariant(f"{variant}: no derivation available")
    caveat = MULTIPLICATIVE_CAVEAT if ADD_BALANCE in chain else None
    return Classification(variant, Complexity.NP_HARD, chain, caveat)


def classification_table() -> list[Classification]:
    return [classify(v) for v in meaningful_variants()]
