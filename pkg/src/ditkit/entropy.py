"""Logical and Shannon entropy of partitions.

Logical entropy is the two-draw probability of drawing a distinction and
stays an exact `Fraction` end to end.  Shannon entropy needs logarithms,
so it lives in floats; comparisons against it use `FLOAT_TOL`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .partitions import (
    Partition,
    ProbGroundSet,
    _require_same_ground,
    ditset,
    join,
)

FLOAT_TOL = 1e-12


def block_probs(
    pi: Partition, probs: ProbGroundSet
) -> list[tuple[tuple[int, ...], Fraction]]:
    """Per-block probability masses, in canonical block order."""
    _require_same_ground(pi, probs)
    return [(blk, probs.prob(blk)) for blk in pi.blocks]


def logical_entropy(pi: Partition, probs: ProbGroundSet) -> Fraction:
    """1 - sum of squared block probabilities, exactly."""
    _require_same_ground(pi, probs)
    return 1 - sum((probs.prob(blk) ** 2 for blk in pi.blocks), Fraction(0))


def logical_entropy_ditsum(pi: Partition, probs: ProbGroundSet) -> Fraction:
    """Same quantity summed pair by pair over the dit-set: the product
    measure p x p of the set of distinctions."""
    _require_same_ground(pi, probs)
    return sum(
        (probs.p[i] * probs.p[k] for (i, k) in ditset(pi).pairs),
        Fraction(0),
    )


class CompoundLogical(NamedTuple):
    joint: Fraction
    conditional_pi_given_sigma: Fraction
    conditional_sigma_given_pi: Fraction
    mutual: Fraction


def compound_logical(
    pi: Partition, sigma: Partition, probs: ProbGroundSet
) -> CompoundLogical:
    """Joint, conditional, and mutual logical entropy.  These satisfy the
    Venn relations exactly: the joint is the entropy of the join, and the
    mutual information is the p x p mass of the common dits."""
    _require_same_ground(pi, sigma)
    h_pi = logical_entropy(pi, probs)
    h_sigma = logical_entropy(sigma, probs)
    h_join = logical_entropy(join(pi, sigma), probs)
    return CompoundLogical(
        joint=h_join,
        conditional_pi_given_sigma=h_join - h_sigma,
        conditional_sigma_given_pi=h_join - h_pi,
        mutual=h_pi + h_sigma - h_join,
    )


def shannon_entropy(pi: Partition, probs: ProbGroundSet) -> float:
    """Block entropy in bits."""
    _require_same_ground(pi, probs)
    return sum(
        float(pr) * math.log2(1 / pr) for _, pr in block_probs(pi, probs)
    )


class CompoundShannon(NamedTuple):
    joint: float
    conditional_pi_given_sigma: float
    conditional_sigma_given_pi: float
    mutual: float


def compound_shannon(
    pi: Partition, sigma: Partition, probs: ProbGroundSet
) -> CompoundShannon:
    _require_same_ground(pi, sigma)
    h_pi = shannon_entropy(pi, probs)
    h_sigma = shannon_entropy(sigma, probs)
    h_join = shannon_entropy(join(pi, sigma), probs)
    return CompoundShannon(
        joint=h_join,
        conditional_pi_given_sigma=h_join - h_sigma,
        conditional_sigma_given_pi=h_join - h_pi,
        mutual=h_pi + h_sigma - h_join,
    )


def dit_to_bit_check(
    pi: Partition, probs: ProbGroundSet, tol: float = FLOAT_TOL
) -> bool:
    """Verify the monotone dit-to-bit transform on this input: in the
    block-sum form h = sum Pr(B) * (1 - Pr(B)), replacing each factor
    (1 - Pr(B)) by log2(1/Pr(B)) must reproduce the Shannon entropy."""
    terms = [(pr, 1 - pr) for _, pr in block_probs(pi, probs)]
    if sum((pr * dit_factor for pr, dit_factor in terms), Fraction(0)) \
            != logical_entropy(pi, probs):
        return False
    transformed = sum(
        float(pr) * math.log2(1 / pr) for pr, _ in terms
    )
    return abs(transformed - shannon_entropy(pi, probs)) <= tol
