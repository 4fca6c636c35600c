from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ditkit.density import (
    DensityMatrix,
    ProjectionMask,
    SqrtRational,
    consistency_h,
    luders_mixture,
    luders_outcomes,
    luders_rule,
    quantum_logical_entropy,
    rho,
    state_reduction_audit,
    theorem_entropy_increase,
    theorem_join,
    verify_block_eigenvectors,
)
from ditkit.entropy import logical_entropy
from ditkit.errors import GroundMismatch, ZeroProbabilityOutcome
from ditkit.partitions import (
    GroundSet,
    ProbGroundSet,
    all_pairs,
    discrete_partition,
    enumerate_partitions,
    indiscrete_partition,
    join,
    parse_partition,
)

from oracles import random_probs

ABC = GroundSet(("a", "b", "c"))
GOLDEN_P = ProbGroundSet.from_values(ABC, ["1/3", "1/4", "5/12"])
PI = parse_partition(ABC, "a|bc")
SIGMA = parse_partition(ABC, "ab|c")


def ground(n):
    return GroundSet(tuple("abcde"[:n]))


def F(x) -> Fraction:
    return Fraction(x)


# --- the scalar -----------------------------------------------------------


def test_sqrt_rational_products_close():
    a = SqrtRational(F("5/48"))
    assert a * a == SqrtRational(F("25/2304"))
    assert (a * a).to_rational() == F("5/48")
    assert a * SqrtRational(F(0)) == SqrtRational(F(0))


def test_sqrt_rational_partial_addition():
    a = SqrtRational(F("5/48"))
    assert a + a == SqrtRational(F("5/12"))  # 2*sqrt(5/48) = sqrt(20/48)
    b = SqrtRational(F("45/48"))  # sqrt ratio 9 -> compatible surds
    assert a + b == SqrtRational(F("80/48"))
    with pytest.raises(ArithmeticError):
        a + SqrtRational(F(2))
    zero = SqrtRational(F(0))
    assert zero + a == a and a + zero == a


def test_sqrt_rational_scaling_and_embedding():
    a = SqrtRational(F("5/48"))
    assert a.scaled(F("1/2")) == SqrtRational(F("5/192"))
    assert SqrtRational.from_rational(F("3/4")) == SqrtRational(F("9/16"))
    with pytest.raises(ValueError):
        SqrtRational.from_rational(F(-1))
    with pytest.raises(ValueError):
        SqrtRational(F(-1))
    with pytest.raises(ValueError):
        a.scaled(-1)


def test_sqrt_rational_rationality():
    assert SqrtRational(F("4/9")).to_rational() == F("2/3")
    assert not SqrtRational(F("5/48")).is_rational()
    with pytest.raises(ArithmeticError):
        SqrtRational(F(2)).to_rational()


def test_sqrt_rational_rendering():
    assert str(SqrtRational(F("5/48"))) == "√15/12"
    assert str(SqrtRational(F(8))) == "2√2"
    assert str(SqrtRational(F("4/9"))) == "2/3"
    assert str(SqrtRational(F(0))) == "0"
    assert str(SqrtRational(F("50/9"))) == "5√2/3"


# --- construction ---------------------------------------------------------


def test_rho_golden_matrix():
    mat = rho(PI, GOLDEN_P)
    assert mat.diagonal() == (F("1/3"), F("1/4"), F("5/12"))
    assert mat.entry(0, 1).radicand == 0
    assert mat.entry(0, 2).radicand == 0
    # sqrt(p_b p_c) = sqrt(5/48), the only nonzero coherence
    assert mat.entry(1, 2) == SqrtRational(F("5/48"))
    assert mat.entry(2, 1) == mat.entry(1, 2)
    assert str(mat.entry(1, 2)) == "√15/12"


def test_rho_discrete_is_diagonal():
    mat = rho(discrete_partition(ABC), GOLDEN_P)
    for i in range(3):
        for k in range(3):
            if i != k:
                assert not mat.entry(i, k)
    assert mat.diagonal() == GOLDEN_P.p


def test_rho_indiscrete_is_full():
    mat = rho(indiscrete_partition(ABC), GOLDEN_P)
    p = GOLDEN_P.p
    for i in range(3):
        for k in range(3):
            assert mat.entry(i, k) == SqrtRational(p[i] * p[k])


def test_rho_ground_mismatch():
    with pytest.raises(GroundMismatch):
        rho(discrete_partition(ground(4)), GOLDEN_P)


def test_density_matrix_validation():
    z = SqrtRational(F(0))
    h = SqrtRational(F("1/4"))
    bad_sym = ((h, z), (SqrtRational(F("1/9")), h))
    with pytest.raises(ValueError):
        DensityMatrix(GroundSet(("a", "b")), bad_sym)
    quarter = SqrtRational.from_rational(F("1/4"))
    bad_trace = ((quarter, z), (z, quarter))  # trace 1/2
    with pytest.raises(ValueError):
        DensityMatrix(GroundSet(("a", "b")), bad_trace)


def test_density_json_round_trip():
    mat = rho(PI, GOLDEN_P)
    blob = mat.to_json()
    assert blob["entries"][1][2] == {"radicand": "5/48"}
    assert DensityMatrix.from_json(blob) == mat


# --- eigenstructure -------------------------------------------------------


def test_block_eigenvectors_golden():
    assert verify_block_eigenvectors(PI, GOLDEN_P)
    # eigenvalues are the block probabilities 1/3 and 2/3
    from ditkit.entropy import block_probs

    assert [pr for _, pr in block_probs(PI, GOLDEN_P)] == [F("1/3"), F("2/3")]


def test_block_eigenvectors_discrete_and_random():
    assert verify_block_eigenvectors(discrete_partition(ABC), GOLDEN_P)
    rng = random.Random(42)
    for n in (2, 3, 4, 5):
        g = ground(n)
        probs = ProbGroundSet(g, tuple(random_probs(n, rng)))
        for pi in enumerate_partitions(g):
            assert verify_block_eigenvectors(pi, probs)


# --- measurement ----------------------------------------------------------


def test_luders_mixture_golden():
    hat = luders_mixture(rho(PI, GOLDEN_P), SIGMA)
    assert hat.diagonal() == (F("1/3"), F("1/4"), F("5/12"))
    for i in range(3):
        for k in range(3):
            if i != k:
                assert not hat.entry(i, k)


def test_luders_mixture_degenerate_partitions():
    mat = rho(PI, GOLDEN_P)
    assert luders_mixture(mat, indiscrete_partition(ABC)) == mat
    flat = luders_mixture(mat, discrete_partition(ABC))
    assert flat == rho(discrete_partition(ABC), GOLDEN_P)


def test_luders_mixture_idempotent():
    mat = rho(PI, GOLDEN_P)
    once = luders_mixture(mat, SIGMA)
    assert luders_mixture(once, SIGMA) == once


def test_theorem_join_golden_and_exhaustive():
    assert theorem_join(PI, SIGMA, GOLDEN_P)
    assert join(PI, SIGMA) == discrete_partition(ABC)
    rng = random.Random(77)
    for n in (2, 3, 4):
        g = ground(n)
        probs = ProbGroundSet(g, tuple(random_probs(n, rng)))
        for pi, sigma in all_pairs(g):
            assert theorem_join(pi, sigma, probs)


def test_luders_rule_golden():
    hat = luders_mixture(rho(PI, GOLDEN_P), SIGMA)
    post, prob = luders_rule(hat, ProjectionMask.from_labels(ABC, "ab"))
    assert prob == F("7/12")
    assert post.diagonal() == (F("4/7"), F("3/7"), F(0))
    post_c, prob_c = luders_rule(hat, ProjectionMask.from_labels(ABC, "c"))
    assert prob_c == F("5/12")
    assert post_c.diagonal() == (F(0), F(0), F(1))


def test_luders_rule_full_mask_is_identity():
    mat = rho(PI, GOLDEN_P)
    post, prob = luders_rule(mat, ProjectionMask.from_labels(ABC, "abc"))
    assert prob == 1
    assert post == mat


def test_luders_rule_zero_probability_outcome():
    hat = luders_mixture(rho(PI, GOLDEN_P), SIGMA)
    post, _ = luders_rule(hat, ProjectionMask.from_labels(ABC, "ab"))
    with pytest.raises(ZeroProbabilityOutcome):
        luders_rule(post, ProjectionMask.from_labels(ABC, "c"))


def test_outcomes_sum_to_one_and_match_block_mass():
    rng = random.Random(11)
    for n in (2, 3, 4):
        g = ground(n)
        probs = ProbGroundSet(g, tuple(random_probs(n, rng)))
        for pi, sigma in all_pairs(g):
            mat = rho(pi, probs)
            rows = luders_outcomes(mat, sigma)
            assert sum((pr for _, pr, _ in rows), F(0)) == 1
            for blk, pr, _ in rows:
                assert pr == probs.prob(blk)


# --- entropy of states ----------------------------------------------------


def test_quantum_logical_entropy_golden():
    mat = rho(PI, GOLDEN_P)
    hat = luders_mixture(mat, SIGMA)
    assert quantum_logical_entropy(mat) == F("4/9")
    assert quantum_logical_entropy(hat) == F("94/144")
    g = ground(4)
    assert quantum_logical_entropy(
        rho(discrete_partition(g), ProbGroundSet.uniform(g))
    ) == F("3/4")


def test_entropy_increase_golden():
    mat = rho(PI, GOLDEN_P)
    hat = luders_mixture(mat, SIGMA)
    gain = quantum_logical_entropy(hat) - quantum_logical_entropy(mat)
    assert gain == F("5/24")
    assert gain == 2 * F("5/48")  # both zeroed coherences squared
    assert theorem_entropy_increase(PI, SIGMA, GOLDEN_P)


def test_entropy_increase_trivial_measurement():
    assert theorem_entropy_increase(PI, indiscrete_partition(ABC), GOLDEN_P)
    mat = rho(PI, GOLDEN_P)
    same = luders_mixture(mat, indiscrete_partition(ABC))
    assert quantum_logical_entropy(same) == quantum_logical_entropy(mat)


def test_state_reduction_audit_golden():
    mat = rho(PI, GOLDEN_P)
    assert state_reduction_audit(mat, SIGMA) == [(1, 2), (2, 1)]
    assert state_reduction_audit(mat, indiscrete_partition(ABC)) == []


def test_audit_matches_matrix_diff():
    rng = random.Random(13)
    for n in (2, 3, 4):
        g = ground(n)
        probs = ProbGroundSet(g, tuple(random_probs(n, rng)))
        for pi, sigma in all_pairs(g):
            mat = rho(pi, probs)
            hat = luders_mixture(mat, sigma)
            diff = [
                (i, k)
                for i in range(n)
                for k in range(n)
                if mat.entry(i, k) != hat.entry(i, k)
            ]
            assert state_reduction_audit(mat, sigma) == diff


def test_consistency_with_partition_entropy():
    assert consistency_h(PI, GOLDEN_P)
    rng = random.Random(17)
    for n in (2, 3, 4, 5):
        g = ground(n)
        probs = ProbGroundSet(g, tuple(random_probs(n, rng)))
        for pi in enumerate_partitions(g):
            assert quantum_logical_entropy(rho(pi, probs)) == logical_entropy(
                pi, probs
            )
