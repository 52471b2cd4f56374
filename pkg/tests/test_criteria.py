from random import Random

import pytest

from localmult.criteria import (
    HypothesisError,
    VERDICT_HOLDS,
    VERDICT_INCONCLUSIVE,
    chern_fastpath,
    check_local_multiplicity,
    criterion_determinant,
    family_instance,
    ring_determinant,
    stable_difference_class,
    sw_fastpath,
    validate_family,
    validate_k,
)
from localmult.fpring import GradedPoly, IncompatibleRingsError, RingSpec
from localmult.manifolds import parse_manifold_spec, parse_total_class

from _oracles import leibniz_det, random_poly, random_ring

F2T14 = RingSpec(2, 1, 13)
F3X7 = RingSpec(3, 2, 6)


def rp(m):
    return parse_manifold_spec(f"rp:{m}")


def cp(m):
    return parse_manifold_spec(f"cp:{m}")


def euclidean(n):
    return parse_manifold_spec(f"euclidean:{n}")


# ----------------------------------------------------------- determinants

def test_ring_determinant_identity():
    for n in (1, 2, 3, 4):
        eye = [
            [GradedPoly.one(F2T14) if i == j else GradedPoly.zero(F2T14) for j in range(n)]
            for i in range(n)
        ]
        assert ring_determinant(eye) == GradedPoly.one(F2T14)


def test_ring_determinant_examples():
    t2 = GradedPoly(F2T14, {2: 1})
    zero = GradedPoly.zero(F2T14)
    one = GradedPoly.one(F2T14)
    matrix = [[t2, zero, zero], [zero, t2, zero], [one, zero, t2]]
    assert ring_determinant(matrix) == GradedPoly(F2T14, {6: 1})

    x2 = GradedPoly(F3X7, {2: 1})
    two_x = GradedPoly(F3X7, {1: 2})
    assert ring_determinant([[x2, GradedPoly.zero(F3X7)], [two_x, x2]]) == GradedPoly(F3X7, {4: 1})


def test_ring_determinant_structural_errors():
    one = GradedPoly.one(F2T14)
    with pytest.raises(ValueError):
        ring_determinant([[one], [one]])
    with pytest.raises(ValueError):
        ring_determinant([])
    with pytest.raises(IncompatibleRingsError):
        ring_determinant([[one, one], [one, GradedPoly.one(F3X7)]])


def test_ring_determinant_vs_leibniz_random():
    rng = Random(7)
    for _ in range(60):
        spec = random_ring(rng)
        n = rng.randrange(1, 5)
        matrix = [[random_poly(rng, spec) for _ in range(n)] for _ in range(n)]
        assert ring_determinant(matrix) == leibniz_det(matrix, GradedPoly.zero(spec))


def test_signs_matter_in_odd_characteristic():
    spec = RingSpec(5, 1, 4)
    a = GradedPoly(spec, {0: 1})
    b = GradedPoly(spec, {1: 1})
    c = GradedPoly(spec, {1: 2})
    d = GradedPoly(spec, {2: 3})
    assert ring_determinant([[a, b], [c, d]]) == GradedPoly(spec, {2: 1})  # 3 - 2 mod 5


# ------------------------------------------------- criterion determinants

def test_sw_criterion_class_rp13():
    diff, _ = stable_difference_class(rp(13), euclidean(14), 4, "sw")
    assert criterion_determinant(diff, 0) == GradedPoly(F2T14, {6: 1})


def test_sw_criterion_vanishes_for_parallelizable():
    diff, _ = stable_difference_class(rp(7), euclidean(9), 4, "sw")
    for s in range(3):
        assert criterion_determinant(diff, s).is_zero()


def test_criterion_at_zero_shift_is_one():
    # target one dimension below the source: d = 0 at s = 0
    diff, _ = stable_difference_class(rp(5), euclidean(4), 2, "sw")
    assert criterion_determinant(diff, 0) == GradedPoly.one(diff.total.ring)


def test_criterion_below_zero_shift_is_zero():
    diff, _ = stable_difference_class(rp(5), euclidean(3), 2, "sw")
    assert criterion_determinant(diff, 0).is_zero()   # d = -1
    assert criterion_determinant(diff, 1) == GradedPoly.one(diff.total.ring)


def test_chern_criterion_class_cp6():
    diff, _ = stable_difference_class(cp(6), euclidean(14), 3, "chern")
    assert criterion_determinant(diff, 0) == GradedPoly(F3X7, {4: 1})


def test_chern_criterion_vanishes_when_dual_is_trivial():
    # total Chern class of cp:2 mod 3 is 1, so every shifted determinant with
    # positive shift vanishes
    diff, _ = stable_difference_class(cp(2), euclidean(6), 3, "chern")
    for s in range(3):
        assert criterion_determinant(diff, s).is_zero()


def test_criterion_homogeneity():
    for source, target, k, path in [
        (rp(13), euclidean(14), 4, "sw"),
        (rp(8), euclidean(14), 2, "sw"),
        (cp(6), euclidean(14), 3, "chern"),
        (cp(6), euclidean(13), 2, "sw"),
    ]:
        diff, _ = stable_difference_class(source, target, k, path)
        offset = diff.target_dim - diff.source_dim + 1
        for s in range(4):
            value = criterion_determinant(diff, s)
            if not value:
                continue
            d = offset + s
            want = d * (k - 1) * diff.degree_unit
            for e in value.coeffs:
                assert e * diff.total.ring.generator_degree == want


# ----------------------------------------------------------------- checks

def test_check_examples():
    report = check_local_multiplicity(rp(13), euclidean(14), 4, "sw")
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 0
    assert report.witness_class == GradedPoly(F2T14, {6: 1})

    report = check_local_multiplicity(rp(8), euclidean(14), 2, "sw")
    assert report.verdict == VERDICT_HOLDS

    report = check_local_multiplicity(rp(3), euclidean(5), 2, "sw")
    assert report.verdict == VERDICT_INCONCLUSIVE
    assert report.witness_s is None and report.witness_class is None
    assert report.searched_s_max == 0  # only s=0 lands inside the degree bound


def test_check_chern_example():
    report = check_local_multiplicity(cp(6), euclidean(14), 3, "chern")
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 0
    assert report.witness_class == GradedPoly(F3X7, {4: 1})


def test_check_lower_dimensional_target_holds_vacuously():
    report = check_local_multiplicity(rp(5), euclidean(3), 2, "sw")
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 1  # first s with shift d = 0
    assert report.witness_class == GradedPoly.one(RingSpec(2, 1, 5))
    assert any("unitriangular" in note for note in report.notes)


def test_check_k_validation():
    with pytest.raises(HypothesisError, match="power of 2"):
        check_local_multiplicity(rp(13), euclidean(14), 3, "sw")
    with pytest.raises(HypothesisError, match="power of 2"):
        check_local_multiplicity(rp(13), euclidean(14), 1, "sw")
    with pytest.raises(HypothesisError, match="odd prime"):
        check_local_multiplicity(cp(6), euclidean(14), 4, "chern")
    with pytest.raises(HypothesisError, match="odd prime"):
        check_local_multiplicity(cp(6), euclidean(14), 9, "chern")
    with pytest.raises(HypothesisError):
        check_local_multiplicity(rp(13), euclidean(14), 4, "sww")
    assert validate_k(16, "sw") == 2
    assert validate_k(5, "chern") == 5


def test_check_source_must_be_compact():
    with pytest.raises(HypothesisError, match="compact"):
        check_local_multiplicity(euclidean(3), euclidean(5), 2, "sw")


def test_check_chern_needs_complex_dimensions():
    with pytest.raises(HypothesisError, match="complex source"):
        check_local_multiplicity(rp(5), euclidean(14), 3, "chern")
    with pytest.raises(HypothesisError, match="complex target"):
        check_local_multiplicity(cp(6), euclidean(13), 3, "chern")


def test_pullback_class_can_change_the_verdict():
    source, target = rp(3), euclidean(4)
    assert check_local_multiplicity(source, target, 2, "sw").verdict == VERDICT_INCONCLUSIVE
    ring, _ = source.realize(2)
    pullback = parse_total_class(
        {"p": 2, "total_class": [[0, [[0, 1]]], [1, [[1, 1]]], [2, [[2, 1]]], [3, [[3, 1]]]]},
        ring,
    )
    report = check_local_multiplicity(source, target, 2, "sw", pullback)
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_class == GradedPoly(ring, {2: 1})


def test_pullback_class_ring_mismatch():
    wrong_ring = RingSpec(2, 1, 9)
    pullback = parse_total_class({"p": 2, "total_class": [[0, [[0, 1]]]]}, wrong_ring)
    with pytest.raises(HypothesisError, match="source cohomology ring"):
        check_local_multiplicity(rp(3), euclidean(4), 2, "sw", pullback)


def test_nontrivial_target_gets_assumed_pullback_note():
    report = check_local_multiplicity(rp(3), rp(5), 2, "sw")
    assert any("assumed trivial" in note for note in report.notes)
    report = check_local_multiplicity(rp(3), euclidean(5), 2, "sw")
    assert not any("assumed trivial" in note for note in report.notes)


def test_verdict_depends_only_on_class_data():
    # the same check through a custom spec carrying the identical ring and
    # total class (inserted in permuted order) gives the identical report
    builtin = check_local_multiplicity(rp(13), euclidean(14), 4, "sw")
    entries = [[e, [[e, c]]] for e, c in total_class_items_reversed()]
    clone = parse_manifold_spec({
        "kind": "custom",
        "p": 2,
        "generator_degree": 1,
        "truncation_exponent": 13,
        "real_dimension": 13,
        "complex_dimension": None,
        "total_class": entries,
        "label": "rp13-clone",
    })
    cloned = check_local_multiplicity(clone, euclidean(14), 4, "sw")
    assert (cloned.verdict, cloned.witness_s, cloned.witness_class, cloned.searched_s_max) == (
        builtin.verdict, builtin.witness_s, builtin.witness_class, builtin.searched_s_max
    )
    again = check_local_multiplicity(rp(13), euclidean(14), 4, "sw")
    assert again == builtin


def total_class_items_reversed():
    from localmult.manifolds import total_sw_rp

    return sorted(total_sw_rp(13).poly.coeffs.items(), reverse=True)


# ------------------------------------------------------------- fast paths

def test_sw_fastpath_examples():
    report = sw_fastpath(rp(13), 14, 4)
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 2
    assert report.witness_class == GradedPoly(F2T14, {6: 1})

    report = sw_fastpath(rp(8), 14, 2)
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 7
    assert report.witness_class == GradedPoly(RingSpec(2, 1, 8), {7: 1})

    report = sw_fastpath(rp(3), 5, 2)
    assert report.verdict == VERDICT_INCONCLUSIVE
    assert any("dual class" in note for note in report.notes)


def test_chern_fastpath_examples():
    report = chern_fastpath(cp(6), 7, 3)
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 2
    assert report.witness_class == GradedPoly(F3X7, {4: 1})

    report = chern_fastpath(cp(7), 7, 3)
    assert report.verdict == VERDICT_HOLDS
    assert report.witness_s == 1
    assert report.witness_class == GradedPoly(RingSpec(3, 2, 7), {2: 1})

    report = chern_fastpath(cp(2), 5, 3)
    assert report.verdict == VERDICT_INCONCLUSIVE


def test_fastpath_agrees_with_general_checker():
    cases = [
        (rp(13), euclidean(14), 4, "sw"),
        (rp(8), euclidean(14), 2, "sw"),
        (rp(12), euclidean(14), 2, "sw"),
        (cp(6), euclidean(14), 3, "chern"),
        (cp(7), euclidean(14), 3, "chern"),
        (cp(6), euclidean(13), 2, "sw"),
    ]
    for source, target, k, path in cases:
        if path == "sw":
            fast = sw_fastpath(source, target.real_dimension, k)
        else:
            fast = chern_fastpath(source, target.complex_dimension, k)
        if fast.verdict != VERDICT_HOLDS:
            continue
        general = check_local_multiplicity(source, target, k, path)
        assert general.verdict == VERDICT_HOLDS
        diff, _ = stable_difference_class(source, target, k, path)
        offset = diff.target_dim - diff.source_dim + 1
        assert criterion_determinant(diff, fast.witness_s - offset) == fast.witness_class


# ----------------------------------------------------------- sweep family

def test_family_examples():
    assert validate_family("rp-euclidean", 1, 4, 4).verdict == VERDICT_HOLDS
    assert validate_family("cp-euclidean", 2, 3, 2).verdict == VERDICT_HOLDS
    with pytest.raises(HypothesisError, match=r"k\*\(a-1\) <= k\^ell - 1 fails: 9 > 8"):
        family_instance("cp-complex", 4, 2, 3)


def test_family_instances_resolve_correctly():
    source, target, path = family_instance("rp-euclidean", 1, 4, 4)
    assert (source.label, target.label, path) == ("rp:13", "euclidean:14", "sw")
    source, target, path = family_instance("rp-sphere", 1, 4, 4)
    assert (source.label, target.label, path) == ("rp:13", "sphere:14", "sw")
    source, target, path = family_instance("cp-euclidean", 2, 3, 2)
    assert (source.label, target.label, path) == ("cp:6", "euclidean:13", "sw")
    source, target, path = family_instance("cp-complex", 3, 2, 3)
    assert (source.label, target.label, path) == ("cp:6", "euclidean:14", "chern")


def test_family_gate_messages():
    with pytest.raises(HypothesisError, match=r"k\*\(a\+1\) <= 2\^ell - 1"):
        family_instance("rp-euclidean", 3, 3, 2)
    with pytest.raises(HypothesisError, match="power of 2"):
        family_instance("rp-euclidean", 1, 4, 3)
    with pytest.raises(HypothesisError, match="2 <= a"):
        family_instance("cp-complex", 1, 2, 3)
    with pytest.raises(HypothesisError, match=r"a <= \(k\^ell \+ 1\)/2"):
        family_instance("cp-complex", 6, 2, 3)
    with pytest.raises(HypothesisError, match="unknown family"):
        family_instance("nosuch", 1, 2, 2)
    with pytest.raises(HypothesisError, match="a >= 1"):
        family_instance("rp-euclidean", 0, 3, 2)
    with pytest.raises(HypothesisError, match="ell >= 1"):
        family_instance("rp-euclidean", 1, 0, 2)
