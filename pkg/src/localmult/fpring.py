"""Exact arithmetic over prime fields and truncated graded polynomial rings.

Everything is computed over F_p with plain integer residues; there is no
floating point anywhere.  A truncated ring F_p[g]/(g^(T+1)) is described by a
RingSpec (prime modulus p, cohomological degree of the generator, exponent
bound T) and its elements are GradedPoly values in canonical sparse form:
zero coefficients are never stored, so structural equality is ring equality.

BigradedPoly models the tensor product of two such rings (all classes of
interest live in even total degree in the complex case, and signs are void in
characteristic 2, so the tensor ring is commutative).

All values are immutable after construction and all operations are pure, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping


class RingError(ValueError):
    """Base class for ring arithmetic errors."""


class InvalidModulusError(RingError):
    """The modulus is not a prime (or not of the required form)."""


class IncompatibleRingsError(RingError):
    """Operands of a ring operation live in different rings."""


class NonInvertibleError(RingError):
    """Formal series inversion applied to an element with zero constant term."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; moduli here are always small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True, slots=True)
class FpScalar:
    """A residue in the prime field F_p."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidModulusError(f"modulus {self.p} is not prime")
        if not 0 <= self.value < self.p:
            raise ValueError(f"residue {self.value} out of range [0, {self.p})")

    def _check(self, other: "FpScalar") -> None:
        if self.p != other.p:
            raise IncompatibleRingsError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value - other.value) % self.p, self.p)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        self._check(other)
        return FpScalar((self.value * other.value) % self.p, self.p)

    def __neg__(self) -> "FpScalar":
        return FpScalar((-self.value) % self.p, self.p)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


def fp_inv(a: FpScalar) -> FpScalar:
    """Multiplicative inverse in F_p (Fermat); zero input raises ZeroDivisionError."""
    if a.value == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{a.p}")
    return FpScalar(pow(a.value, a.p - 2, a.p), a.p)


def _inv_mod(value: int, p: int) -> int:
    if value % p == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{p}")
    return pow(value, p - 2, p)


def _lucas(n: int, r: int, p: int) -> int:
    # C(n, r) mod p as the product of digitwise binomials in base p.
    if r < 0 or r > n:
        return 0
    out = 1
    while n or r:
        nd, rd = n % p, r % p
        if rd > nd:
            return 0
        out = out * (math.comb(nd, rd) % p) % p
        n //= p
        r //= p
    return out


def binom_mod_p(n: int, r: int, p: int) -> FpScalar:
    """Binomial coefficient C(n, r) mod p, computed digitwise in base p."""
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if not is_prime(p):
        raise InvalidModulusError(f"modulus {p} is not prime")
    return FpScalar(_lucas(n, r, p), p)


@dataclass(frozen=True, slots=True)
class RingSpec:
    """Description of a truncated ring F_p[g]/(g^(T+1)).

    generator_degree is the cohomological degree of g (1 for real projective
    spaces, 2 for complex ones, anything positive for user-supplied specs);
    truncation_exponent is the largest surviving exponent T.
    """

    p: int
    generator_degree: int
    truncation_exponent: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidModulusError(f"modulus {self.p} is not prime")
        if self.generator_degree < 1:
            raise ValueError("generator degree must be positive")
        if self.truncation_exponent < 0:
            raise ValueError("truncation exponent must be nonnegative")

    @property
    def top_degree(self) -> int:
        """Largest nonzero cohomological degree of the ring."""
        return self.generator_degree * self.truncation_exponent

    @property
    def symbol(self) -> str:
        return "t" if self.generator_degree == 1 else "x"


class GradedPoly:
    """Element of a truncated ring, as a sparse exponent -> residue map.

    Canonical form: no stored coefficient is zero and every exponent e
    satisfies 0 <= e <= T, so two elements are equal iff their maps are.
    Instances are immutable; arithmetic returns fresh values.
    """

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: RingSpec, coeffs: Mapping[int, int | FpScalar] | None = None):
        normalized: dict[int, int] = {}
        for e, c in (coeffs or {}).items():
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponent {e!r} must be a nonnegative integer")
            if e > spec.truncation_exponent:
                raise ValueError(
                    f"exponent {e} exceeds the truncation bound {spec.truncation_exponent}"
                )
            if isinstance(c, FpScalar):
                if c.p != spec.p:
                    raise IncompatibleRingsError(f"coefficient modulus {c.p} != ring modulus {spec.p}")
                c = c.value
            v = int(c) % spec.p
            if v:
                normalized[e] = v
        self.spec = spec
        self.coeffs = normalized

    @classmethod
    def _make(cls, spec: RingSpec, coeffs: dict[int, int]) -> "GradedPoly":
        # trusted constructor: coeffs already canonical
        obj = object.__new__(cls)
        obj.spec = spec
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, spec: RingSpec) -> "GradedPoly":
        return cls._make(spec, {})

    @classmethod
    def one(cls, spec: RingSpec) -> "GradedPoly":
        return cls._make(spec, {0: 1})

    @classmethod
    def monomial(cls, spec: RingSpec, exponent: int, coefficient: int = 1) -> "GradedPoly":
        return cls(spec, {exponent: coefficient})

    def coefficient(self, exponent: int) -> FpScalar:
        return FpScalar(self.coeffs.get(exponent, 0), self.spec.p)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def exponents(self) -> Iterator[int]:
        return iter(sorted(self.coeffs))

    def _check(self, other: "GradedPoly") -> None:
        if self.spec != other.spec:
            raise IncompatibleRingsError(f"mixed rings {self.spec} and {other.spec}")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check(other)
        p = self.spec.p
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return GradedPoly._make(self.spec, out)

    def __neg__(self) -> "GradedPoly":
        p = self.spec.p
        return GradedPoly._make(self.spec, {e: (-c) % p for e, c in self.coeffs.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.spec.p
            s = other % p
            if s == 0:
                return GradedPoly.zero(self.spec)
            return GradedPoly._make(self.spec, {e: c * s % p for e, c in self.coeffs.items() if c * s % p})
        if isinstance(other, GradedPoly):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GradedPoly":
        return poly_pow(self, n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedPoly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"GradedPoly(F_{self.spec.p}, {format_poly(self)})"


def format_poly(a: GradedPoly) -> str:
    """Render a poly as '1 + 2*x + x^2' style, increasing exponent order."""
    if not a.coeffs:
        return "0"
    sym = a.spec.symbol
    parts = []
    for e in sorted(a.coeffs):
        c = a.coeffs[e]
        if e == 0:
            parts.append(str(c))
            continue
        var = sym if e == 1 else f"{sym}^{e}"
        parts.append(var if c == 1 else f"{c}*{var}")
    return " + ".join(parts)


def poly_mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    """Truncated product: exponents beyond the bound are discarded eagerly."""
    a._check(b)
    p = a.spec.p
    top = a.spec.truncation_exponent
    out: dict[int, int] = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = ea + eb
            if e > top:
                continue
            v = (out.get(e, 0) + ca * cb) % p
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return GradedPoly._make(a.spec, out)


def poly_inv(a: GradedPoly) -> GradedPoly:
    """Truncated formal series inverse of an element with unit constant term.

    Coefficients are produced degree by degree from the convolution
    a_0 b_e = -(a_1 b_{e-1} + ... + a_e b_0).
    """
    c0 = a.coeffs.get(0, 0)
    if c0 == 0:
        raise NonInvertibleError("constant term is zero; no inverse in the truncated ring")
    p = a.spec.p
    inv0 = _inv_mod(c0, p)
    out = {0: inv0}
    for e in range(1, a.spec.truncation_exponent + 1):
        acc = 0
        for i in range(1, e + 1):
            ai = a.coeffs.get(i)
            if ai:
                bj = out.get(e - i)
                if bj:
                    acc = (acc + ai * bj) % p
        if acc:
            out[e] = (-inv0 * acc) % p
    return GradedPoly._make(a.spec, {e: c for e, c in out.items() if c})


def poly_pow(a: GradedPoly, n: int) -> GradedPoly:
    """a^n by repeated squaring, truncating at every step."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = GradedPoly.one(a.spec)
    base = a
    while n:
        if n & 1:
            result = poly_mul(result, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return result


class BigradedPoly:
    """Element of the tensor ring R (x) S, keyed by exponent pairs.

    Multiplication is componentwise with each factor's truncation applied;
    canonical sparse form as for GradedPoly.
    """

    __slots__ = ("left_spec", "right_spec", "coeffs")

    def __init__(self, left_spec: RingSpec, right_spec: RingSpec,
                 coeffs: Mapping[tuple[int, int], int] | None = None):
        if left_spec.p != right_spec.p:
            raise IncompatibleRingsError(
                f"tensor factors have different moduli {left_spec.p} and {right_spec.p}"
            )
        p = left_spec.p
        normalized: dict[tuple[int, int], int] = {}
        for (el, er), c in (coeffs or {}).items():
            if el < 0 or el > left_spec.truncation_exponent:
                raise ValueError(f"left exponent {el} out of range")
            if er < 0 or er > right_spec.truncation_exponent:
                raise ValueError(f"right exponent {er} out of range")
            v = int(c) % p
            if v:
                normalized[(el, er)] = v
        self.left_spec = left_spec
        self.right_spec = right_spec
        self.coeffs = normalized

    @classmethod
    def _make(cls, left_spec, right_spec, coeffs) -> "BigradedPoly":
        obj = object.__new__(cls)
        obj.left_spec = left_spec
        obj.right_spec = right_spec
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, left_spec: RingSpec, right_spec: RingSpec) -> "BigradedPoly":
        if left_spec.p != right_spec.p:
            raise IncompatibleRingsError("tensor factors have different moduli")
        return cls._make(left_spec, right_spec, {})

    @classmethod
    def one(cls, left_spec: RingSpec, right_spec: RingSpec) -> "BigradedPoly":
        if left_spec.p != right_spec.p:
            raise IncompatibleRingsError("tensor factors have different moduli")
        return cls._make(left_spec, right_spec, {(0, 0): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "BigradedPoly") -> None:
        if self.left_spec != other.left_spec or self.right_spec != other.right_spec:
            raise IncompatibleRingsError("mixed tensor rings")

    def __add__(self, other: "BigradedPoly") -> "BigradedPoly":
        self._check(other)
        p = self.left_spec.p
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            v = (out.get(key, 0) + c) % p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return BigradedPoly._make(self.left_spec, self.right_spec, out)

    def __neg__(self) -> "BigradedPoly":
        p = self.left_spec.p
        return BigradedPoly._make(
            self.left_spec, self.right_spec,
            {key: (-c) % p for key, c in self.coeffs.items()},
        )

    def __sub__(self, other: "BigradedPoly") -> "BigradedPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.left_spec.p
            s = other % p
            out = {k: c * s % p for k, c in self.coeffs.items() if c * s % p}
            return BigradedPoly._make(self.left_spec, self.right_spec, out)
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        self._check(other)
        p = self.left_spec.p
        ltop = self.left_spec.truncation_exponent
        rtop = self.right_spec.truncation_exponent
        out: dict[tuple[int, int], int] = {}
        for (la, ra), ca in self.coeffs.items():
            for (lb, rb), cb in other.coeffs.items():
                el, er = la + lb, ra + rb
                if el > ltop or er > rtop:
                    continue
                key = (el, er)
                v = (out.get(key, 0) + ca * cb) % p
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return BigradedPoly._make(self.left_spec, self.right_spec, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BigradedPoly)
            and self.left_spec == other.left_spec
            and self.right_spec == other.right_spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.left_spec, self.right_spec, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        ls, rs = self.left_spec.symbol, self.right_spec.symbol
        parts = []
        for (el, er) in sorted(self.coeffs):
            c = self.coeffs[(el, er)]
            left = "1" if el == 0 else (ls if el == 1 else f"{ls}^{el}")
            right = "1" if er == 0 else (rs if er == 1 else f"{rs}^{er}")
            term = f"{left}(x){right}"
            parts.append(term if c == 1 else f"{c}*{term}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BigradedPoly(F_{self.left_spec.p}, {self})"


def tensor(left: GradedPoly, right: GradedPoly) -> BigradedPoly:
    """Elementary tensor of two ring elements."""
    if left.spec.p != right.spec.p:
        raise IncompatibleRingsError("tensor factors have different moduli")
    p = left.spec.p
    out: dict[tuple[int, int], int] = {}
    for el, cl in left.coeffs.items():
        for er, cr in right.coeffs.items():
            v = cl * cr % p
            if v:
                out[(el, er)] = v
    return BigradedPoly._make(left.spec, right.spec, out)
