"""Symmetric-function engine cross-validating the determinant criteria.

The top homogeneous part of prod_{i<=A} prod_{j<=B} (1 + a_i + b_j) expands,
by the dual Cauchy identity, as sum_lambda s_lambda(a) * s_conj(comp(lambda))(b)
over partitions lambda inside the A x B box, where comp is the reversed box
complement.  Each Schur function is a Nagelsbach-Kosta determinant in the
elementary symmetric generators, which under the splitting principle are the
characteristic classes of the two bundles.  Substituting classes turns the
expansion into the top class of a tensor product; collecting the pure powers
of the top generator of the second alphabet recovers exactly the shifted
class determinants used by the criteria, which is what chern_euler_crosscheck
verifies term by term in the bigraded ring.

Schur functions also have a division-free monomial-level definition as sums
over semistandard tableaux; schur_monomial_oracle implements it so that the
determinant route can be checked against an independent one.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .criteria import HypothesisError, cofactor_determinant, shifted_class_determinant
from .fpring import (
    BigradedPoly,
    GradedPoly,
    IncompatibleRingsError,
    RingSpec,
    is_prime,
    poly_pow,
    tensor,
)
from .manifolds import TotalClass, dual_total_class, total_chern_cp


class Partition:
    """Weakly decreasing nonnegative integers; trailing zeros are stripped."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        seq = tuple(int(v) for v in parts)
        for left, right in zip(seq, seq[1:]):
            if left < right:
                raise ValueError(f"parts must be weakly decreasing, got {seq}")
        if seq and seq[-1] < 0:
            raise ValueError("parts must be nonnegative")
        while seq and seq[-1] == 0:
            seq = seq[:-1]
        self.parts = seq

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam.parts:
        return Partition()
    return Partition(
        sum(1 for part in lam.parts if part > j) for j in range(lam.parts[0])
    )


def box_complement(lam: Partition, rows: int, height: int) -> Partition:
    """Reversed complement of lam inside the rows x height box."""
    if len(lam) > rows or (lam.parts and lam.parts[0] > height):
        raise ValueError(f"{lam!r} does not fit in a {rows} x {height} box")
    padded = lam.parts + (0,) * (rows - len(lam))
    return Partition(height - padded[rows - 1 - i] for i in range(rows))


def partitions_in_box(rows: int, height: int) -> list[Partition]:
    """All partitions with at most `rows` parts, each at most `height`."""
    out: list[Partition] = []

    def rec(idx: int, mx: int, acc: list[int]) -> None:
        if idx == rows:
            out.append(Partition(acc))
            return
        for v in range(mx, -1, -1):
            acc.append(v)
            rec(idx + 1, v, acc)
            acc.pop()

    rec(0, height, [])
    return out


class GeneratorPoly:
    """Polynomial with exact integer coefficients in two alphabets of
    abstract elementary-symmetric generators (a-side sigma_1..sigma_A and
    b-side sigma'_1..sigma'_B).

    There are no relations: multiplication adds exponent vectors.  Reduction
    mod p happens only at evaluation time, so determinant signs stay exact
    for every characteristic (they are no-ops at p = 2).
    """

    __slots__ = ("num_a", "num_b", "terms")

    def __init__(self, num_a: int, num_b: int,
                 terms: dict[tuple[tuple[int, ...], tuple[int, ...]], int] | None = None):
        self.num_a = num_a
        self.num_b = num_b
        normalized = {}
        for key, c in (terms or {}).items():
            ae, be = key
            if len(ae) != num_a or len(be) != num_b:
                raise ValueError(f"monomial {key!r} does not match arity ({num_a}, {num_b})")
            if int(c):
                normalized[(tuple(ae), tuple(be))] = int(c)
        self.terms = normalized

    @classmethod
    def _make(cls, num_a, num_b, terms) -> "GeneratorPoly":
        obj = object.__new__(cls)
        obj.num_a = num_a
        obj.num_b = num_b
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, num_a: int, num_b: int = 0) -> "GeneratorPoly":
        return cls._make(num_a, num_b, {})

    @classmethod
    def one(cls, num_a: int, num_b: int = 0) -> "GeneratorPoly":
        return cls._make(num_a, num_b, {((0,) * num_a, (0,) * num_b): 1})

    @classmethod
    def a_gen(cls, num_a: int, num_b: int, i: int) -> "GeneratorPoly":
        if not 1 <= i <= num_a:
            raise ValueError(f"a-generator index {i} out of range 1..{num_a}")
        ae = tuple(1 if t == i - 1 else 0 for t in range(num_a))
        return cls._make(num_a, num_b, {(ae, (0,) * num_b): 1})

    @classmethod
    def b_gen(cls, num_a: int, num_b: int, j: int) -> "GeneratorPoly":
        if not 1 <= j <= num_b:
            raise ValueError(f"b-generator index {j} out of range 1..{num_b}")
        be = tuple(1 if t == j - 1 else 0 for t in range(num_b))
        return cls._make(num_a, num_b, {((0,) * num_a, be): 1})

    def _check(self, other: "GeneratorPoly") -> None:
        if self.num_a != other.num_a or self.num_b != other.num_b:
            raise ValueError("mixed generator arities")

    def __add__(self, other: "GeneratorPoly") -> "GeneratorPoly":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return GeneratorPoly._make(self.num_a, self.num_b, out)

    def __neg__(self) -> "GeneratorPoly":
        return GeneratorPoly._make(self.num_a, self.num_b, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "GeneratorPoly") -> "GeneratorPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return GeneratorPoly.zero(self.num_a, self.num_b)
            return GeneratorPoly._make(
                self.num_a, self.num_b, {k: c * other for k, c in self.terms.items()}
            )
        if not isinstance(other, GeneratorPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for (ae1, be1), c1 in self.terms.items():
            for (ae2, be2), c2 in other.terms.items():
                key = (
                    tuple(x + y for x, y in zip(ae1, ae2)),
                    tuple(x + y for x, y in zip(be1, be2)),
                )
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return GeneratorPoly._make(self.num_a, self.num_b, out)

    __rmul__ = __mul__

    def coefficient(self, a_exps: Sequence[int], b_exps: Sequence[int] = ()) -> int:
        key = (tuple(a_exps), tuple(b_exps) if b_exps else (0,) * self.num_b)
        return self.terms.get(key, 0)

    def weighted_degrees(self) -> set[int]:
        """Degrees present when generator i has weight i (both alphabets)."""
        return {
            sum((i + 1) * e for i, e in enumerate(ae))
            + sum((j + 1) * e for j, e in enumerate(be))
            for ae, be in self.terms
        }

    def evaluate(self, a_values: Sequence, b_values: Sequence, one):
        """Substitute ring elements for the generators (1-indexed lists)."""
        if len(a_values) != self.num_a or len(b_values) != self.num_b:
            raise ValueError("value lists must match the generator arities")
        total = one * 0
        for (ae, be), c in self.terms.items():
            term = one * c
            for i, e in enumerate(ae):
                if e:
                    term = term * (a_values[i] ** e)
            for j, e in enumerate(be):
                if e:
                    term = term * (b_values[j] ** e)
            total = total + term
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratorPoly)
            and self.num_a == other.num_a
            and self.num_b == other.num_b
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.num_a, self.num_b, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"GeneratorPoly(A={self.num_a}, B={self.num_b}, {len(self.terms)} terms)"


def schur_via_nk(lam: Partition, num_e_generators: int) -> GeneratorPoly:
    """Schur polynomial as the Nagelsbach-Kosta determinant.

    det( sigma_{lam'_i - i + j} )_{1 <= i,j <= t} with t = len(lam'),
    sigma_0 = 1 and sigma_i = 0 for i < 0 or i > num_e_generators.
    """
    conj = conjugate(lam).parts
    t = len(conj)
    A = num_e_generators
    if t == 0:
        return GeneratorPoly.one(A)
    one = GeneratorPoly.one(A)
    zero = GeneratorPoly.zero(A)

    def entry(i: int, j: int) -> GeneratorPoly:
        idx = conj[i - 1] - i + j
        if idx == 0:
            return one
        if 1 <= idx <= A:
            return GeneratorPoly.a_gen(A, 0, idx)
        return zero

    matrix = [[entry(i, j) for j in range(1, t + 1)] for i in range(1, t + 1)]
    return cofactor_determinant(matrix, zero)


class SymPoly:
    """Explicit polynomial over F_p in a-variables a_1..a_A and b-variables
    b_1..b_B, as a sparse exponent-vector map (a-exponents first)."""

    __slots__ = ("p", "num_a", "num_b", "terms")

    def __init__(self, p: int, num_a: int, num_b: int,
                 terms: dict[tuple[int, ...], int] | None = None):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.num_a = num_a
        self.num_b = num_b
        normalized = {}
        arity = num_a + num_b
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise ValueError(f"monomial {key!r} does not match arity {arity}")
            v = int(c) % p
            if v:
                normalized[tuple(key)] = v
        self.terms = normalized

    @classmethod
    def _make(cls, p, num_a, num_b, terms) -> "SymPoly":
        obj = object.__new__(cls)
        obj.p = p
        obj.num_a = num_a
        obj.num_b = num_b
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, p: int, num_a: int, num_b: int = 0) -> "SymPoly":
        return cls._make(p, num_a, num_b, {})

    @classmethod
    def one(cls, p: int, num_a: int, num_b: int = 0) -> "SymPoly":
        return cls._make(p, num_a, num_b, {(0,) * (num_a + num_b): 1})

    @classmethod
    def a_var(cls, p: int, num_a: int, num_b: int, i: int) -> "SymPoly":
        if not 1 <= i <= num_a:
            raise ValueError(f"a-variable index {i} out of range")
        key = tuple(1 if t == i - 1 else 0 for t in range(num_a + num_b))
        return cls._make(p, num_a, num_b, {key: 1})

    @classmethod
    def b_var(cls, p: int, num_a: int, num_b: int, j: int) -> "SymPoly":
        if not 1 <= j <= num_b:
            raise ValueError(f"b-variable index {j} out of range")
        key = tuple(1 if t == num_a + j - 1 else 0 for t in range(num_a + num_b))
        return cls._make(p, num_a, num_b, {key: 1})

    def _check(self, other: "SymPoly") -> None:
        if (self.p, self.num_a, self.num_b) != (other.p, other.num_a, other.num_b):
            raise ValueError("mixed polynomial rings")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = (out.get(key, 0) + c) % self.p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return SymPoly._make(self.p, self.num_a, self.num_b, out)

    def __mul__(self, other):
        if isinstance(other, int):
            s = other % self.p
            out = {k: c * s % self.p for k, c in self.terms.items() if c * s % self.p}
            return SymPoly._make(self.p, self.num_a, self.num_b, out)
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check(other)
        p = self.p
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(k1, k2))
                v = (out.get(key, 0) + c1 * c2) % p
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return SymPoly._make(self.p, self.num_a, self.num_b, out)

    __rmul__ = __mul__

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (other * (self.p - 1))

    def __pow__(self, n: int) -> "SymPoly":
        if n < 0:
            raise ValueError("exponent must be nonnegative")
        result = SymPoly.one(self.p, self.num_a, self.num_b)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def permuted(self, a_perm: Sequence[int] | None = None,
                 b_perm: Sequence[int] | None = None) -> "SymPoly":
        """Apply variable permutations (0-indexed) within each alphabet."""
        ap = tuple(a_perm) if a_perm is not None else tuple(range(self.num_a))
        bp = tuple(b_perm) if b_perm is not None else tuple(range(self.num_b))
        out: dict = {}
        for key, c in self.terms.items():
            ae, be = key[: self.num_a], key[self.num_a:]
            new = tuple(ae[ap[i]] for i in range(self.num_a)) + tuple(
                be[bp[j]] for j in range(self.num_b)
            )
            out[new] = (out.get(new, 0) + c) % self.p
        return SymPoly._make(self.p, self.num_a, self.num_b, {k: v for k, v in out.items() if v})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymPoly)
            and (self.p, self.num_a, self.num_b) == (other.p, other.num_a, other.num_b)
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.p, self.num_a, self.num_b, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"SymPoly(p={self.p}, A={self.num_a}, B={self.num_b}, {len(self.terms)} terms)"


def elementary_symmetric(i: int, num_vars: int, p: int) -> SymPoly:
    """The i-th elementary symmetric polynomial in num_vars a-variables."""
    if i < 0 or i > num_vars:
        return SymPoly.zero(p, num_vars)
    terms = {}
    for combo in combinations(range(num_vars), i):
        key = tuple(1 if t in combo else 0 for t in range(num_vars))
        terms[key] = 1
    return SymPoly(p, num_vars, 0, terms)


def schur_monomial_oracle(lam: Partition, num_vars: int, p: int) -> SymPoly:
    """Schur polynomial by brute-force semistandard tableau enumeration.

    Rows weakly increase, columns strictly increase, entries in 1..num_vars;
    each tableau contributes its weight monomial.  Division-free, so valid
    over any F_p.
    """
    if num_vars < len(lam):
        raise ValueError(f"need at least {len(lam)} variables for {lam!r}")
    parts = lam.parts
    if not parts:
        return SymPoly.one(p, num_vars)
    counts: dict[tuple[int, ...], int] = {}
    weight = [0] * num_vars
    rows: list[tuple[int, ...]] = []

    def fill_row(r: int) -> None:
        if r == len(parts):
            key = tuple(weight)
            counts[key] = counts.get(key, 0) + 1
            return
        length = parts[r]
        above = rows[r - 1] if r else None
        row = [0] * length

        def fill_cell(c: int, lo: int) -> None:
            if c == length:
                rows.append(tuple(row))
                fill_row(r + 1)
                rows.pop()
                return
            start = lo
            if above is not None:
                start = max(start, above[c] + 1)
            for v in range(start, num_vars + 1):
                row[c] = v
                weight[v - 1] += 1
                fill_cell(c + 1, v)
                weight[v - 1] -= 1

        fill_cell(0, 1)

    fill_row(0)
    return SymPoly(p, num_vars, 0, counts)


def _embed_a(poly: SymPoly, num_b: int) -> SymPoly:
    # an a-only polynomial viewed inside the (num_a, num_b) ring
    terms = {key + (0,) * num_b: c for key, c in poly.terms.items()}
    return SymPoly._make(poly.p, poly.num_a, num_b, terms)


def _embed_b(poly: SymPoly, num_a: int) -> SymPoly:
    # a b-only polynomial (built with its variables as a-variables) viewed
    # inside the (num_a, poly.num_a) ring
    terms = {(0,) * num_a + key: c for key, c in poly.terms.items()}
    return SymPoly._make(poly.p, num_a, poly.num_a, terms)


def dual_cauchy_check(A: int, B: int, p: int) -> bool:
    """Exact check of prod (a_i + b_j) = sum_lambda s_lambda(a) s_comp'(b).

    Both sides are expanded into explicit monomials over F_p; lambda runs
    over the A x B box and comp' is the conjugate of the reversed box
    complement.  Desk-scale sizes only (A <= 4, B <= 3 by default).
    """
    if A < 1 or B < 1:
        raise ValueError("A and B must be at least 1")
    lhs = SymPoly.one(p, A, B)
    for i in range(1, A + 1):
        for j in range(1, B + 1):
            lhs = lhs * (SymPoly.a_var(p, A, B, i) + SymPoly.b_var(p, A, B, j))
    rhs = SymPoly.zero(p, A, B)
    for lam in partitions_in_box(A, B):
        sa = schur_monomial_oracle(lam, A, p)
        sb = schur_monomial_oracle(conjugate(box_complement(lam, A, B)), B, p)
        rhs = rhs + _embed_a(sa, B) * _embed_b(sb, A)
    return lhs == rhs


def nk_class_value(lam: Partition, values: Sequence[GradedPoly], ring: RingSpec) -> GradedPoly:
    """Nagelsbach-Kosta determinant with ring elements substituted first.

    values[i-1] stands for the i-th elementary symmetric generator; indices
    outside 1..len(values) are zero and index 0 is the ring unit.  The
    substituted matrix is banded for sparse class lists, so the zero-skipping
    cofactor expansion stays fast even for long partitions.
    """
    conj = conjugate(lam).parts
    t = len(conj)
    if t == 0:
        return GradedPoly.one(ring)
    one = GradedPoly.one(ring)
    zero = GradedPoly.zero(ring)
    A = len(values)

    def entry(i: int, j: int) -> GradedPoly:
        idx = conj[i - 1] - i + j
        if idx == 0:
            return one
        if 1 <= idx <= A:
            return values[idx - 1]
        return zero

    matrix = [[entry(i, j) for j in range(1, t + 1)] for i in range(1, t + 1)]
    return cofactor_determinant(matrix, zero)


def tensor_top_class(eta: TotalClass, xi: TotalClass, A: int, B: int,
                     path: str = "chern") -> BigradedPoly:
    """Top homogeneous class of a tensor product via the dual Cauchy expansion.

    A and B are the numbers of splitting roots of the two factors; the
    degree-(A*B) part of prod (1 + a_i + b_j) is summed as
    s_lambda(classes of eta) (x) s_comp'(classes of xi) over the A x B box.
    """
    R, S = eta.ring, xi.ring
    if R.p != S.p:
        raise IncompatibleRingsError(f"factors have different moduli {R.p} and {S.p}")
    if A < 1 or B < 1:
        raise ValueError("root counts must be at least 1")
    eta_vals = [eta.class_component(i, path) for i in range(1, A + 1)]
    xi_vals = [xi.class_component(j, path) for j in range(1, B + 1)]
    acc = BigradedPoly.zero(R, S)
    for lam in partitions_in_box(A, B):
        left = nk_class_value(lam, eta_vals, R)
        if not left:
            continue
        right = nk_class_value(conjugate(box_complement(lam, A, B)), xi_vals, S)
        if not right:
            continue
        acc = acc + tensor(left, right)
    return acc


def chern_euler_crosscheck(m: int, target_complex_dim: int, k: int, m_prime: int) -> bool:
    """Verify the mod-k Euler class decomposition for cp:m -> C^n.

    Left side: top Chern class of the tensor product of the stable difference
    bundle (dual tangent class of cp:m, target parallelizable) with the model
    bundle whose only positive class is a single generator x of cohomological
    degree 2(k-1) subject to x^(m+m') = 0 -- computed through the dual Cauchy
    expansion.  Right side: the sum over t of (shifted class determinant at
    d = m'+n-t) tensor x^t.  Returns exact equality in the bigraded ring.
    """
    if k < 3 or k % 2 == 0 or not is_prime(k):
        raise HypothesisError(f"the chern path requires k to be an odd prime; got k={k}")
    n = target_complex_dim
    if n < 1:
        raise HypothesisError("target complex dimension must be at least 1")
    if m_prime < 0:
        raise HypothesisError("m_prime must be nonnegative")
    eta = dual_total_class(total_chern_cp(m, k))
    max_idx = eta.max_class_index("chern") or 0
    if m_prime < max_idx:
        raise HypothesisError(
            f"m_prime must be at least the top nonzero dual Chern index {max_idx}; got {m_prime}"
        )
    R = eta.ring
    S = RingSpec(k, 2 * (k - 1), m + m_prime - 1)
    xi_coeffs = {0: 1}
    if S.truncation_exponent >= 1:
        xi_coeffs[1] = 1
    xi = TotalClass(GradedPoly(S, xi_coeffs))

    A = m_prime + n
    B = k - 1
    lhs = tensor_top_class(eta, xi, A, B, path="chern")

    rhs = BigradedPoly.zero(R, S)
    x = GradedPoly.monomial(S, 1) if S.truncation_exponent >= 1 else GradedPoly.zero(S)
    for t in range(A + 1):
        det = shifted_class_determinant(eta, A - t, k, "chern")
        if not det:
            continue
        xt = poly_pow(x, t)
        if not xt:
            continue
        rhs = rhs + tensor(det, xt)
    return lhs == rhs
