"""Subset dynamics over GF(2): the powerset of a ground set as a vector
space under symmetric difference, nonsingular linear evolution, and the
two-case double-slit computation on three points.

Maps are stored column-wise as int bitmasks (column j = image of the
j-th singleton), so evolution is an XOR fold and rank is bit fiddling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import DimensionMismatch, EmptyState, GroundMismatch
from .partitions import (
    GroundSet,
    Partition,
    ProbGroundSet,
    choice_reduce,
    discrete_partition,
)


@dataclass(frozen=True)
class SubsetVector:
    """A subset of the ground set, viewed as a GF(2) vector."""

    ground: GroundSet
    members: frozenset[int]

    def __post_init__(self):
        if not all(0 <= i < self.ground.n for i in self.members):
            raise ValueError("member index out of range")

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Iterable[str]) -> "SubsetVector":
        return cls(ground, frozenset(ground.index(lab) for lab in labels))

    @classmethod
    def empty(cls, ground: GroundSet) -> "SubsetVector":
        return cls(ground, frozenset())

    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.label(i) for i in sorted(self.members))

    def bits(self) -> int:
        mask = 0
        for i in self.members:
            mask |= 1 << i
        return mask

    @classmethod
    def from_bits(cls, ground: GroundSet, mask: int) -> "SubsetVector":
        return cls(
            ground, frozenset(i for i in range(ground.n) if mask >> i & 1)
        )

    def __add__(self, other: "SubsetVector") -> "SubsetVector":
        if self.ground != other.ground:
            raise GroundMismatch("subset vectors on different ground sets")
        return SubsetVector(self.ground, self.members ^ other.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        if not self.members:
            return "{}"
        return "{" + ",".join(self.labels()) + "}"


def add(s: SubsetVector, t: SubsetVector) -> SubsetVector:
    """Symmetric difference: GF(2) vector addition."""
    return s + t


def _gf2_rank(rows: list[int], width: int) -> int:
    rank = 0
    for c in range(width):
        pivot = next(
            (i for i in range(rank, len(rows)) if rows[i] >> c & 1), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> c & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class GF2Map:
    """Linear map on GF(2)^n; cols[j] is the image bitmask of singleton j.
    Nonsingularity is certified once at construction."""

    cols: tuple[int, ...]
    nonsingular: bool = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.cols)
        if any(c >> n for c in self.cols):
            raise DimensionMismatch("column has bits beyond the dimension")
        rows = [
            sum(((self.cols[j] >> i & 1) << j) for j in range(n))
            for i in range(n)
        ]
        object.__setattr__(self, "nonsingular", _gf2_rank(rows, n) == n)

    @property
    def n(self) -> int:
        return len(self.cols)

    @classmethod
    def from_images(cls, ground: GroundSet, images: dict) -> "GF2Map":
        """Map given by label -> iterable of image labels, one entry per
        ground element."""
        cols = []
        for lab in ground.labels:
            mask = 0
            for out in images[lab]:
                mask |= 1 << ground.index(out)
            cols.append(mask)
        return cls(tuple(cols))

    @classmethod
    def identity(cls, n: int) -> "GF2Map":
        return cls(tuple(1 << i for i in range(n)))

    def entry(self, i: int, k: int) -> int:
        return self.cols[k] >> i & 1

    def apply_bits(self, mask: int) -> int:
        out = 0
        j = 0
        while mask:
            if mask & 1:
                out ^= self.cols[j]
            mask >>= 1
            j += 1
        return out

    def inverse(self) -> "GF2Map":
        """Inverse map by GF(2) Gauss-Jordan elimination."""
        n = self.n
        if not self.nonsingular:
            raise ArithmeticError("map is singular over GF(2)")
        rows = [
            sum(((self.cols[j] >> i & 1) << j) for j in range(n)) | 1 << (n + i)
            for i in range(n)
        ]
        _gf2_rank(rows, n)
        inv_cols = [
            sum(((rows[i] >> (n + j) & 1) << i) for i in range(n))
            for j in range(n)
        ]
        return GF2Map(tuple(inv_cols))


def is_nonsingular(m: GF2Map) -> bool:
    return m.nonsingular


def evolve(s: SubsetVector, m: GF2Map) -> SubsetVector:
    if s.ground.n != m.n:
        raise DimensionMismatch("map dimension does not match ground set")
    return SubsetVector.from_bits(s.ground, m.apply_bits(s.bits()))


@dataclass(frozen=True)
class StateMixture:
    """Finitely supported exact distribution over subset vectors."""

    ground: GroundSet
    terms: tuple[tuple[SubsetVector, Fraction], ...]

    def __post_init__(self):
        vecs = [v for v, _ in self.terms]
        if len(set(vecs)) != len(vecs):
            raise ValueError("mixture components must be distinct")
        if any(q <= 0 for _, q in self.terms):
            raise ValueError("mixture probabilities must be positive")
        if sum((q for _, q in self.terms), Fraction(0)) != 1:
            raise ValueError("mixture probabilities must sum to 1")
        for v, _ in self.terms:
            if v.ground != self.ground:
                raise GroundMismatch("component on a different ground set")

    @classmethod
    def point(cls, s: SubsetVector) -> "StateMixture":
        return cls(s.ground, ((s, Fraction(1)),))

    @classmethod
    def from_terms(cls, ground: GroundSet, terms) -> "StateMixture":
        merged: dict[SubsetVector, Fraction] = {}
        for vec, q in terms:
            merged[vec] = merged.get(vec, Fraction(0)) + q
        ordered = tuple(
            sorted(merged.items(), key=lambda t: sorted(t[0].members))
        )
        return cls(ground, ordered)

    def probability(self, s: SubsetVector) -> Fraction:
        for vec, q in self.terms:
            if vec == s:
                return q
        return Fraction(0)

    def singleton_distribution(self) -> dict[str, Fraction]:
        """Distribution over element labels (zeros filled in); requires
        every component to be a singleton."""
        out = {lab: Fraction(0) for lab in self.ground.labels}
        for vec, q in self.terms:
            if len(vec) != 1:
                raise ValueError(f"component {vec} is not a singleton")
            out[vec.labels()[0]] = q
        return out


def _weight(members: Iterable[int], p: Optional[ProbGroundSet]) -> Fraction:
    members = list(members)
    if p is None:
        return Fraction(len(members))
    return sum((p.p[i] for i in members), Fraction(0))


def reduce(s: SubsetVector, p: Optional[ProbGroundSet] = None) -> StateMixture:
    """Collapse a subset state to a mixture of its singletons with
    conditional probabilities (uniform when no point probabilities are
    given)."""
    if not s.members:
        raise EmptyState("cannot reduce the empty state")
    if p is not None and p.ground != s.ground:
        raise GroundMismatch("probabilities on a different ground set")
    total = _weight(s.members, p)
    terms = [
        (SubsetVector(s.ground, frozenset({i})), _weight([i], p) / total)
        for i in sorted(s.members)
    ]
    return StateMixture.from_terms(s.ground, terms)


@dataclass(frozen=True)
class Evolve:
    map: GF2Map


@dataclass(frozen=True)
class Measure:
    by: Partition


@dataclass(frozen=True)
class Detect:
    pass


Step = Union[Evolve, Measure, Detect]


def run_pipeline(
    initial: SubsetVector,
    steps: Iterable[Step],
    p: Optional[ProbGroundSet] = None,
) -> StateMixture:
    """Propagate an exact mixture through evolve / measure / detect steps.
    Measuring splits each component across the blocks it straddles with
    conditional probabilities; detection reduces to singletons."""
    ground = initial.ground
    if p is not None and p.ground != ground:
        raise GroundMismatch("probabilities on a different ground set")
    mixture = StateMixture.point(initial)
    for step in steps:
        terms: list[tuple[SubsetVector, Fraction]] = []
        if isinstance(step, Evolve):
            for vec, q in mixture.terms:
                terms.append((evolve(vec, step.map), q))
        elif isinstance(step, (Measure, Detect)):
            sigma = (
                discrete_partition(ground)
                if isinstance(step, Detect)
                else step.by
            )
            if sigma.ground != ground:
                raise GroundMismatch("measurement on a different ground set")
            for vec, q in mixture.terms:
                total = _weight(vec.members, p)
                for blk in sigma.blocks:
                    piece = vec.members & frozenset(blk)
                    if piece:
                        terms.append(
                            (
                                SubsetVector(ground, piece),
                                q * _weight(piece, p) / total,
                            )
                        )
        else:
            raise TypeError(f"unknown pipeline step {step!r}")
        mixture = StateMixture.from_terms(ground, terms)
    return mixture


def sample_pipeline(
    initial: SubsetVector,
    steps: Iterable[Step],
    trials: int,
    rng: Union[int, random.Random],
    p: Optional[ProbGroundSet] = None,
) -> dict[SubsetVector, int]:
    """Monte Carlo counterpart of run_pipeline: one sampled trajectory per
    trial, outcomes drawn per block via the seeded choice function."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    ground = initial.ground
    probs = p if p is not None else ProbGroundSet.uniform(ground)
    steps = list(steps)
    counts: dict[SubsetVector, int] = {}
    for _ in range(trials):
        vec = initial
        for step in steps:
            if isinstance(step, Evolve):
                vec = evolve(vec, step.map)
                continue
            sigma = (
                discrete_partition(ground)
                if isinstance(step, Detect)
                else step.by
            )
            hit = choice_reduce(sorted(vec.members), probs, rng)
            vec = SubsetVector(
                ground, vec.members & frozenset(sigma.block_containing(hit))
            )
        counts[vec] = counts.get(vec, 0) + 1
    return counts


DOUBLE_SLIT_LABELS = ("a", "b", "c")


def double_slit_setup() -> tuple[GroundSet, GF2Map, SubsetVector]:
    """The fixed three-point interferometer: superposition {a,c} at the
    screen and the nonsingular dynamics a->{a,b}, b->{a,b,c}, c->{b,c}."""
    ground = GroundSet(DOUBLE_SLIT_LABELS)
    dynamics = GF2Map.from_images(
        ground, {"a": "ab", "b": "abc", "c": "bc"}
    )
    start = SubsetVector.from_labels(ground, "ac")
    return ground, dynamics, start


def double_slit_steps(case: int) -> list[Step]:
    _, dynamics, _ = double_slit_setup()
    if case == 1:
        return [Detect(), Evolve(dynamics), Detect()]
    if case == 2:
        return [Evolve(dynamics), Detect()]
    raise ValueError("case must be 1 or 2")


def double_slit(case: int) -> dict[str, Fraction]:
    """Exact wall distribution: case 1 detects at the slits first, case 2
    lets the superposition evolve undetected."""
    _, _, start = double_slit_setup()
    mixture = run_pipeline(start, double_slit_steps(case))
    return mixture.singleton_distribution()
