"""Partition density matrices over an exact square-root-of-rational scalar.

Every matrix entry is a value sqrt(q) for a non-negative rational q (the
``radicand``), which is closed under the handful of operations measurement
needs: products, non-negative rational scaling, masking, and sums of terms
whose ratio is a rational square.  General matrix multiplication is
deliberately not provided; nothing here ever needs a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import entropy as _entropy
from .errors import GroundMismatch, ZeroProbabilityOutcome
from .partitions import (
    GroundSet,
    Partition,
    ProbGroundSet,
    join,
)


@dataclass(frozen=True)
class SqrtRational:
    """The non-negative real sqrt(radicand) for an exact rational
    radicand >= 0.  Equality is radicand equality."""

    radicand: Fraction

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")

    @classmethod
    def of(cls, value) -> "SqrtRational":
        """The square root of `value`."""
        return cls(Fraction(value))

    @classmethod
    def from_rational(cls, value) -> "SqrtRational":
        """Embed a non-negative rational exactly (radicand value**2)."""
        q = Fraction(value)
        if q < 0:
            raise ValueError("cannot embed a negative rational")
        return cls(q * q)

    def __bool__(self) -> bool:
        return self.radicand != 0

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        return SqrtRational(self.radicand * other.radicand)

    def __add__(self, other: "SqrtRational") -> "SqrtRational":
        """Exact addition, defined only when the result is again the
        square root of a rational (ratio of radicands a rational square)."""
        if self.radicand == 0:
            return other
        if other.radicand == 0:
            return self
        ratio = self.radicand / other.radicand
        root = _rational_sqrt(ratio)
        if root is None:
            raise ArithmeticError(
                f"sqrt({self.radicand}) + sqrt({other.radicand}) "
                "is not the square root of a rational"
            )
        return SqrtRational((root + 1) ** 2 * other.radicand)

    def scaled(self, factor) -> "SqrtRational":
        """Multiply by a non-negative rational factor."""
        c = Fraction(factor)
        if c < 0:
            raise ValueError("scaling factor must be non-negative")
        return SqrtRational(c * c * self.radicand)

    def squared(self) -> Fraction:
        return self.radicand

    def is_rational(self) -> bool:
        return _rational_sqrt(self.radicand) is not None

    def to_rational(self) -> Fraction:
        root = _rational_sqrt(self.radicand)
        if root is None:
            raise ArithmeticError(f"sqrt({self.radicand}) is irrational")
        return root

    def __str__(self) -> str:
        num, den = self.radicand.numerator, self.radicand.denominator
        root = _rational_sqrt(self.radicand)
        if root is not None:
            return str(root)
        # sqrt(num/den) = sqrt(num*den)/den; pull the square part out
        square, rest = _split_square(num * den)
        coeff = Fraction(square, den)
        head = "" if coeff.numerator == 1 else str(coeff.numerator)
        tail = "" if coeff.denominator == 1 else f"/{coeff.denominator}"
        return f"{head}√{rest}{tail}"


ZERO = SqrtRational(Fraction(0))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _split_square(n: int) -> tuple[int, int]:
    """n = square**2 * rest with rest squarefree (n >= 1)."""
    square, rest = 1, 1
    d = 2
    while d * d <= n:
        exp = 0
        while n % d == 0:
            n //= d
            exp += 1
        square *= d ** (exp // 2)
        if exp % 2:
            rest *= d
        d += 1
    return square, rest * n


@dataclass(frozen=True)
class ProjectionMask:
    """Diagonal 0/1 projection onto a subset of the ground set."""

    ground: GroundSet
    members: frozenset[int]

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Iterable[str]) -> "ProjectionMask":
        return cls(ground, frozenset(ground.index(lab) for lab in labels))

    def complement(self) -> "ProjectionMask":
        return ProjectionMask(
            self.ground, frozenset(range(self.ground.n)) - self.members
        )

    def __contains__(self, i: int) -> bool:
        return i in self.members


@dataclass(frozen=True)
class DensityMatrix:
    """Symmetric matrix of SqrtRational entries with exact unit trace."""

    ground: GroundSet
    entries: tuple[tuple[SqrtRational, ...], ...]

    def __post_init__(self):
        n = self.ground.n
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("entry grid does not match ground size")
        for i in range(n):
            for k in range(i):
                if self.entries[i][k] != self.entries[k][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{k})")
        if self.trace() != 1:
            raise ValueError(f"trace is {self.trace()}, not 1")

    def entry(self, i: int, k: int) -> SqrtRational:
        return self.entries[i][k]

    def trace(self) -> Fraction:
        return sum(
            (self.entries[i][i].to_rational() for i in range(self.ground.n)),
            Fraction(0),
        )

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(
            self.entries[i][i].to_rational() for i in range(self.ground.n)
        )

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground.labels),
            "entries": [
                [{"radicand": str(e.radicand)} for e in row]
                for row in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DensityMatrix":
        ground = GroundSet(tuple(data["ground"]))
        entries = tuple(
            tuple(SqrtRational(Fraction(cell["radicand"])) for cell in row)
            for row in data["entries"]
        )
        return cls(ground, entries)


def rho(pi: Partition, probs: ProbGroundSet) -> DensityMatrix:
    """Density matrix of a partition state: entry (i,k) is
    sqrt(p_i * p_k) when i and k share a block, else 0, so the non-zero
    entries are exactly the indistinctions."""
    if pi.ground != probs.ground:
        raise GroundMismatch("partition and probabilities disagree on ground")
    n = pi.ground.n
    p = probs.p
    entries = tuple(
        tuple(
            SqrtRational(p[i] * p[k]) if pi.same_block(i, k) else ZERO
            for k in range(n)
        )
        for i in range(n)
    )
    return DensityMatrix(pi.ground, entries)


def verify_block_eigenvectors(pi: Partition, probs: ProbGroundSet) -> bool:
    """Check, in exact arithmetic, that each block vector (entries
    sqrt(p_i / Pr(B)) on its block) is an eigenvector of rho with
    eigenvalue Pr(B), and that the block vectors are orthonormal."""
    mat = rho(pi, probs)
    n = pi.ground.n
    vectors = []
    eigenvalues = []
    for blk in pi.blocks:
        pr = probs.prob(blk)
        vec = [
            SqrtRational(probs.p[i] / pr) if i in blk else ZERO
            for i in range(n)
        ]
        vectors.append(vec)
        eigenvalues.append(pr)
    for vec, value in zip(vectors, eigenvalues):
        for i in range(n):
            got = ZERO
            for k in range(n):
                got = got + mat.entry(i, k) * vec[k]
            if got != vec[i].scaled(value):
                return False
    for a, va in enumerate(vectors):
        for b, vb in enumerate(vectors):
            dot = ZERO
            for i in range(n):
                dot = dot + va[i] * vb[i]
            expected = SqrtRational.from_rational(1 if a == b else 0)
            if dot != expected:
                return False
    return True


def luders_mixture(mat: DensityMatrix, sigma: Partition) -> DensityMatrix:
    """Post-measurement state: sandwiching by the block projections of
    sigma keeps an entry exactly when its pair lies inside one sigma
    block and zeroes the rest."""
    if mat.ground != sigma.ground:
        raise GroundMismatch("state and measurement disagree on ground")
    n = mat.ground.n
    entries = tuple(
        tuple(
            mat.entry(i, k) if sigma.same_block(i, k) else ZERO
            for k in range(n)
        )
        for i in range(n)
    )
    return DensityMatrix(mat.ground, entries)


def luders_rule(
    mat: DensityMatrix, outcome: ProjectionMask
) -> tuple[DensityMatrix, Fraction]:
    """Condition on one outcome: sandwich by its projection, normalize by
    the trace, and return (post state, outcome probability)."""
    if mat.ground != outcome.ground:
        raise GroundMismatch("state and outcome disagree on ground")
    n = mat.ground.n
    members = outcome.members
    prob = sum(
        (mat.entry(i, i).to_rational() for i in members), Fraction(0)
    )
    if prob == 0:
        raise ZeroProbabilityOutcome(
            f"outcome {sorted(members)} has probability zero"
        )
    inv = 1 / prob
    entries = tuple(
        tuple(
            mat.entry(i, k).scaled(inv) if (i in members and k in members) else ZERO
            for k in range(n)
        )
        for i in range(n)
    )
    return DensityMatrix(mat.ground, entries), prob


def luders_outcomes(
    mat: DensityMatrix, sigma: Partition
) -> list[tuple[tuple[int, ...], Fraction, DensityMatrix]]:
    """The full outcome table of measuring by sigma: one
    (block, probability, conditioned state) row per block."""
    if mat.ground != sigma.ground:
        raise GroundMismatch("state and measurement disagree on ground")
    rows = []
    for blk in sigma.blocks:
        mask = ProjectionMask(mat.ground, frozenset(blk))
        state, prob = luders_rule(mat, mask)
        rows.append((blk, prob, state))
    return rows


def quantum_logical_entropy(mat: DensityMatrix) -> Fraction:
    """1 - tr(rho^2), exact: the diagonal of the square needs only the
    squares of the entries, which are the rational radicands."""
    return 1 - sum(
        (cell.squared() for row in mat.entries for cell in row),
        Fraction(0),
    )


def state_reduction_audit(
    mat: DensityMatrix, sigma: Partition
) -> list[tuple[int, int]]:
    """The off-diagonal non-zero entries whose pair is split by sigma:
    exactly the coherences that measuring by sigma decoheres."""
    if mat.ground != sigma.ground:
        raise GroundMismatch("state and measurement disagree on ground")
    n = mat.ground.n
    return [
        (i, k)
        for i in range(n)
        for k in range(n)
        if i != k and mat.entry(i, k) and not sigma.same_block(i, k)
    ]


def theorem_join(pi: Partition, sigma: Partition, probs: ProbGroundSet) -> bool:
    """Measuring the state of pi by sigma lands exactly on the state of
    the join."""
    return luders_mixture(rho(pi, probs), sigma) == rho(join(pi, sigma), probs)


def theorem_entropy_increase(
    pi: Partition, sigma: Partition, probs: ProbGroundSet
) -> bool:
    """The entropy gained by measuring equals the total squared mass of
    the zeroed coherences, exactly."""
    mat = rho(pi, probs)
    hat = luders_mixture(mat, sigma)
    gained = quantum_logical_entropy(hat) - quantum_logical_entropy(mat)
    zeroed = sum(
        (mat.entry(i, k).squared() for (i, k) in state_reduction_audit(mat, sigma)),
        Fraction(0),
    )
    return gained == zeroed


def consistency_h(pi: Partition, probs: ProbGroundSet) -> bool:
    """The matrix entropy 1 - tr(rho^2) agrees exactly with the
    partition's logical entropy."""
    return quantum_logical_entropy(rho(pi, probs)) == _entropy.logical_entropy(
        pi, probs
    )
