"""Determinant criteria for local k-multiplicity of continuous maps.

For a map M -> N the input datum is the total characteristic class of the
stable difference bundle (pullback of the target tangent bundle plus the
inverse tangent bundle of the source), living in the truncated cohomology of
the source.  With class index shifted by d = dim N - dim M + 1 + s, the
criterion class at s is the (k-1) x (k-1) determinant

    det( class_{d - i + j} )_{1 <= i,j <= k-1},

with class_i = 0 for i < 0 and beyond the truncation.  A nonzero value for
any s >= 0 certifies that every continuous map M -> N admits a local
k-multiplicity; a vanishing determinant certifies nothing, so the negative
verdict is always "inconclusive".

Two paths: "sw" uses Stiefel-Whitney classes over F_2, real dimensions, and k
a power of 2; "chern" uses Chern classes mod an odd prime k and complex
dimensions.  The fast paths shortcut through the top nonvanishing dual class,
whose (k-1)-st power equals the general determinant by triangularity.

Everything is pure and immutable; sweeps may evaluate points concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fpring import (
    GradedPoly,
    IncompatibleRingsError,
    is_power_of_two,
    is_prime,
    poly_mul,
    poly_pow,
)
from .manifolds import ManifoldSpec, TotalClass, dual_total_class


class HypothesisError(ValueError):
    """An input violates a hypothesis of the criterion being invoked."""


VERDICT_HOLDS = "criterion_holds"
VERDICT_INCONCLUSIVE = "inconclusive"

_SUFFICIENCY_NOTE = (
    "the determinant criteria are sufficient conditions only; "
    "inconclusive does not assert absence of local k-multiplicity"
)
_TRIVIAL_PULLBACK_NOTE = (
    "pullback class of the target tangent bundle assumed trivial; "
    "supply one explicitly for non-parallelizable targets"
)


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one criterion evaluation."""

    verdict: str
    witness_s: int | None
    witness_class: GradedPoly | None
    path: str
    searched_s_max: int
    notes: tuple[str, ...]

    def __post_init__(self) -> None:
        holds = self.verdict == VERDICT_HOLDS
        if holds != (self.witness_s is not None and bool(self.witness_class)):
            raise ValueError("verdict must match the presence of a nonzero witness")


@dataclass(frozen=True)
class StableDifferenceClass:
    """Total class of the stable difference bundle plus the check parameters.

    Dimensions are real on the sw path and complex on the chern path; the
    ring is H*(M; F_2) or H*(M; F_k) accordingly.
    """

    total: TotalClass
    source_dim: int
    target_dim: int
    k: int
    path: str

    def class_at(self, index: int) -> GradedPoly:
        return self.total.class_component(index, self.path)

    @property
    def degree_unit(self) -> int:
        # cohomological degree of class index 1 on this path
        return 1 if self.path == "sw" else 2


def validate_k(k: int, path: str) -> int:
    """Return the coefficient prime for the path, rejecting bad k."""
    if path == "sw":
        if k < 2 or not is_power_of_two(k):
            raise HypothesisError(f"the sw path requires k to be a power of 2 with k >= 2; got k={k}")
        return 2
    if path == "chern":
        if k < 3 or k % 2 == 0 or not is_prime(k):
            raise HypothesisError(f"the chern path requires k to be an odd prime; got k={k}")
        return k
    raise HypothesisError(f"unknown path {path!r}; expected 'sw' or 'chern'")


def stable_difference_class(
    source: ManifoldSpec,
    target: ManifoldSpec,
    k: int,
    path: str,
    pullback_class: TotalClass | None = None,
) -> tuple[StableDifferenceClass, list[str]]:
    """Assemble the stable difference class for a (source, target, k) check."""
    p = validate_k(k, path)
    if not source.is_compact_source:
        raise HypothesisError(f"the source manifold must be compact; {source} cannot be a source")
    if path == "chern":
        if source.complex_dimension is None:
            raise HypothesisError(f"the chern path needs a complex source; {source} carries no complex dimension")
        if target.complex_dimension is None:
            raise HypothesisError(f"the chern path needs a complex target; {target} carries no complex dimension")
        source_dim, target_dim = source.complex_dimension, target.complex_dimension
    else:
        source_dim, target_dim = source.real_dimension, target.real_dimension

    ring, tangent = source.realize(p)
    inverse = dual_total_class(tangent)
    notes: list[str] = []
    if pullback_class is None:
        total = inverse
        if target.kind in ("real_projective", "complex_projective", "custom"):
            notes.append(_TRIVIAL_PULLBACK_NOTE)
    else:
        if pullback_class.ring != ring:
            raise HypothesisError("the pullback class must live in the source cohomology ring")
        total = TotalClass(poly_mul(pullback_class.poly, inverse.poly))
    return StableDifferenceClass(total, source_dim, target_dim, k, path), notes


def cofactor_determinant(matrix, zero):
    """Exact determinant over a commutative ring by cofactor expansion.

    Expands along the top remaining row, memoized on the tuple of remaining
    columns (2^n * n ring operations worst case); zero entries are skipped,
    which collapses banded matrices to a linear-size recursion.  Signs
    alternate as usual; in characteristic 2 subtraction is addition.
    """
    n = len(matrix)
    memo: dict[tuple[int, ...], object] = {}

    def expand(cols: tuple[int, ...]):
        row = n - len(cols)
        if len(cols) == 1:
            return matrix[row][cols[0]]
        cached = memo.get(cols)
        if cached is not None:
            return cached
        acc = zero
        for idx, col in enumerate(cols):
            entry = matrix[row][col]
            if not entry:
                continue
            sub = expand(cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = entry * sub
            acc = acc - term if idx & 1 else acc + term
        memo[cols] = acc
        return acc

    return expand(tuple(range(n)))


def ring_determinant(entries: list[list[GradedPoly]]) -> GradedPoly:
    """Determinant of a square matrix of elements of one truncated ring."""
    n = len(entries)
    if n == 0:
        raise ValueError("determinant of an empty matrix is not defined here")
    spec = None
    for row in entries:
        if len(row) != n:
            raise ValueError(f"matrix is not square: {n} rows, row of length {len(row)}")
        for entry in row:
            if not isinstance(entry, GradedPoly):
                raise TypeError(f"matrix entry {entry!r} is not a ring element")
            if spec is None:
                spec = entry.spec
            elif entry.spec != spec:
                raise IncompatibleRingsError("matrix entries live in different rings")
    return cofactor_determinant(entries, GradedPoly.zero(spec))


def shifted_class_determinant(total: TotalClass, d: int, k: int, path: str) -> GradedPoly:
    """det( class_{d-i+j} )_{1 <= i,j <= k-1} over the class's own ring."""
    size = k - 1
    if size < 1:
        raise ValueError("k must be at least 2")
    ring = total.ring
    matrix = [
        [total.class_component(d - i + j, path) for j in range(1, size + 1)]
        for i in range(1, size + 1)
    ]
    return cofactor_determinant(matrix, GradedPoly.zero(ring))


def criterion_determinant(diff: StableDifferenceClass, s: int) -> GradedPoly:
    """The criterion class at shift s: det(class_{d-i+j}) with d = n - m + 1 + s.

    For d >= 1 a nonzero value is homogeneous of cohomological degree
    d*(k-1)*degree_unit, which is asserted; at d = 0 the matrix is upper
    unitriangular and the value is 1; for d < 0 the diagonal vanishes and so
    does the determinant.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    d = diff.target_dim - diff.source_dim + 1 + s
    size = diff.k - 1
    ring = diff.total.ring
    value = shifted_class_determinant(diff.total, d, diff.k, diff.path)
    if d >= 1 and value:
        want = d * size * diff.degree_unit
        for e in value.coeffs:
            if e * ring.generator_degree != want:
                raise AssertionError(
                    f"criterion class at s={s} is not homogeneous of degree {want}: "
                    f"found exponent {e}"
                )
    return value


def check_local_multiplicity(
    source: ManifoldSpec,
    target: ManifoldSpec,
    k: int,
    path: str,
    pullback_class: TotalClass | None = None,
) -> CriterionReport:
    """Search s = 0, 1, ... for a nonzero criterion class.

    The search stops once the forced cohomological degree of the determinant
    exceeds the top degree of the source cohomology (all larger s land in a
    zero group, so the search is provably exhaustive).  Returns the first
    witnessing s, else an inconclusive report with the searched range.
    """
    diff, notes = stable_difference_class(source, target, k, path, pullback_class)
    ring = diff.total.ring
    offset = diff.target_dim - diff.source_dim + 1
    searched = -1
    s = 0
    while True:
        d = offset + s
        if d >= 1 and d * (k - 1) * diff.degree_unit > ring.top_degree:
            break
        value = criterion_determinant(diff, s)
        searched = s
        if value:
            if d == 0:
                notes.append(
                    "shifted index is zero, the determinant is unitriangular with unit "
                    "diagonal; any map into a strictly lower-dimensional target qualifies"
                )
            return CriterionReport(VERDICT_HOLDS, s, value, path, searched, tuple(notes))
        s += 1
    notes.append(_SUFFICIENCY_NOTE)
    return CriterionReport(VERDICT_INCONCLUSIVE, None, None, path, searched, tuple(notes))


_FASTPATH_S_NOTE = "s reports the largest index of a nonvanishing dual class"


def _fastpath(source: ManifoldSpec, target_dim: int, k: int, path: str) -> CriterionReport:
    p = validate_k(k, path)
    if not source.is_compact_source:
        raise HypothesisError(f"the source manifold must be compact; {source} cannot be a source")
    if path == "chern" and source.complex_dimension is None:
        raise HypothesisError(f"the chern path needs a complex source; {source} carries no complex dimension")
    source_dim = source.real_dimension if path == "sw" else source.complex_dimension
    report_path = f"{path}-fastpath"
    notes = [_FASTPATH_S_NOTE]

    _, tangent = source.realize(p)
    dual = dual_total_class(tangent)
    s_top = dual.max_class_index(path)
    if s_top is None:
        notes.append("every positive-degree dual class vanishes; the fast path has no witness")
        return CriterionReport(VERDICT_INCONCLUSIVE, None, None, report_path, -1, tuple(notes))
    offset = target_dim - source_dim + 1
    if s_top < offset:
        notes.append(
            f"top dual class index {s_top} is below target_dim - source_dim + 1 = {offset}"
        )
        notes.append(_SUFFICIENCY_NOTE)
        return CriterionReport(VERDICT_INCONCLUSIVE, None, None, report_path, s_top, tuple(notes))
    witness = poly_pow(dual.class_component(s_top, path), k - 1)
    if not witness:
        notes.append(f"the (k-1)-st power of the top dual class vanishes (k={k})")
        notes.append(_SUFFICIENCY_NOTE)
        return CriterionReport(VERDICT_INCONCLUSIVE, None, None, report_path, s_top, tuple(notes))

    # triangularity makes the general determinant at the matching shift equal
    # to this power; verify the identity on every hit
    diff = StableDifferenceClass(dual, source_dim, target_dim, k, path)
    s_general = s_top - offset
    general = criterion_determinant(diff, s_general)
    if general != witness:
        raise AssertionError(
            f"fast path witness disagrees with the general determinant at s={s_general}"
        )
    notes.append(f"agrees with the general determinant at s = {s_general}")
    return CriterionReport(VERDICT_HOLDS, s_top, witness, report_path, s_top, tuple(notes))


def sw_fastpath(source: ManifoldSpec, target_dim: int, k: int) -> CriterionReport:
    """Top-dual-class shortcut on the sw path (target treated as parallelizable)."""
    return _fastpath(source, target_dim, k, "sw")


def chern_fastpath(source: ManifoldSpec, target_complex_dim: int, k: int) -> CriterionReport:
    """Top-dual-class shortcut on the chern path (target treated as parallelizable)."""
    return _fastpath(source, target_complex_dim, k, "chern")


FAMILIES = ("rp-euclidean", "rp-sphere", "cp-euclidean", "cp-complex")


def family_instance(family: str, a: int, ell: int, k: int) -> tuple[ManifoldSpec, ManifoldSpec, str]:
    """Resolve one sweep-family point to (source, target, path).

    Raises HypothesisError naming the violated inequality when the point is
    inadmissible.  Families:

        rp-euclidean   rp:(2^ell-2-a) -> euclidean:(2^ell-2), sw path,
                       admissible iff k*(a+1) <= 2^ell - 1
        rp-sphere      same parameters with target sphere:(2^ell-2)
        cp-euclidean   cp:(2^ell-a) -> euclidean:(2^(ell+1)-3), sw path,
                       admissible iff k*(a-1) <= 2^ell - 1
        cp-complex     cp:(k^ell-a) -> C^(k^ell-2) (euclidean:(2*(k^ell-2))),
                       chern path, admissible iff 2 <= a <= (k^ell+1)/2
                       and k*(a-1) <= k^ell - 1
    """
    from .manifolds import parse_manifold_spec

    if family not in FAMILIES:
        raise HypothesisError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if a < 1:
        raise HypothesisError(f"a >= 1 fails: a={a}")
    if ell < 1:
        raise HypothesisError(f"ell >= 1 fails: ell={ell}")

    if family in ("rp-euclidean", "rp-sphere"):
        validate_k(k, "sw")
        bound = 2**ell - 1
        if k * (a + 1) > bound:
            raise HypothesisError(f"k*(a+1) <= 2^ell - 1 fails: {k * (a + 1)} > {bound}")
        m = 2**ell - 2 - a
        if m < 1:
            raise HypothesisError(f"source dimension 2^ell - 2 - a must be positive; got {m}")
        target = "euclidean" if family == "rp-euclidean" else "sphere"
        return (
            parse_manifold_spec(f"rp:{m}"),
            parse_manifold_spec(f"{target}:{2**ell - 2}"),
            "sw",
        )
    if family == "cp-euclidean":
        validate_k(k, "sw")
        bound = 2**ell - 1
        if k * (a - 1) > bound:
            raise HypothesisError(f"k*(a-1) <= 2^ell - 1 fails: {k * (a - 1)} > {bound}")
        m = 2**ell - a
        if m < 1:
            raise HypothesisError(f"source dimension 2^ell - a must be positive; got {m}")
        return (
            parse_manifold_spec(f"cp:{m}"),
            parse_manifold_spec(f"euclidean:{2**(ell + 1) - 3}"),
            "sw",
        )
    # cp-complex
    validate_k(k, "chern")
    power = k**ell
    if a < 2:
        raise HypothesisError(f"2 <= a fails: a={a}")
    if 2 * a > power + 1:
        raise HypothesisError(f"a <= (k^ell + 1)/2 fails: {a} > ({power} + 1)/2")
    if k * (a - 1) > power - 1:
        raise HypothesisError(f"k*(a-1) <= k^ell - 1 fails: {k * (a - 1)} > {power - 1}")
    m = power - a
    if m < 1:
        raise HypothesisError(f"source dimension k^ell - a must be positive; got {m}")
    return (
        parse_manifold_spec(f"cp:{m}"),
        parse_manifold_spec(f"euclidean:{2 * (power - 2)}"),
        "chern",
    )


def validate_family(family: str, a: int, ell: int, k: int) -> CriterionReport:
    """Instantiate one admissible family point and run the general checker.

    The family hypotheses guarantee the criterion, so anything but
    criterion_holds indicates an internal fault and raises.
    """
    source, target, path = family_instance(family, a, ell, k)
    report = check_local_multiplicity(source, target, k, path)
    if report.verdict != VERDICT_HOLDS:
        raise AssertionError(
            f"family {family} point (a={a}, ell={ell}, k={k}) unexpectedly {report.verdict}"
        )
    return report
