"""Built-in manifolds, their total characteristic classes, and spec ingestion.

A manifold enters the criteria only through three pieces of data: the
truncated cohomology ring of the source, the total tangent class inside it,
and the dimensions.  Built-ins:

    rp:m              real projective space, w = (1+t)^(m+1) over F_2[t]/(t^(m+1))
    cp:m              complex projective space, total class (1+x)^(m+1) over
                      F_p[x]/(x^(m+1)) for any prime p (p = 2 on the SW path,
                      p = k on the Chern path)
    sphere:n          total tangent class 1
    euclidean:n       contractible; valid only as a target
    parallelizable:n  compact with trivial tangent bundle

Custom manifolds are ingested from the JSON schema documented in
parse_manifold_spec.  Total classes of pullback bundles default to 1
everywhere; callers may supply an explicit one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterator

from .fpring import (
    GradedPoly,
    NonInvertibleError,
    RingSpec,
    binom_mod_p,
    poly_inv,
)


class ManifoldSpecError(ValueError):
    """A manifold or class description failed validation."""


class TotalClass:
    """Total characteristic class: the inhomogeneous sum class_0 + class_1 + ...

    Stored as a single element of the truncated ring; component i is the
    homogeneous piece of cohomological degree i * generator_degree.  The
    constant component is always 1.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: GradedPoly):
        if poly.coeffs.get(0, 0) != 1:
            raise ManifoldSpecError("class_0 of a total class must equal 1")
        self.poly = poly

    @classmethod
    def one(cls, spec: RingSpec) -> "TotalClass":
        return cls(GradedPoly.one(spec))

    @property
    def ring(self) -> RingSpec:
        return self.poly.spec

    def components(self) -> Iterator[tuple[int, GradedPoly]]:
        """Yield (exponent index, homogeneous component) in increasing order."""
        spec = self.ring
        for e in sorted(self.poly.coeffs):
            yield e, GradedPoly._make(spec, {e: self.poly.coeffs[e]})

    def component(self, index: int) -> GradedPoly:
        """Homogeneous component with generator exponent `index`."""
        c = self.poly.coeffs.get(index, 0)
        if index < 0 or index > self.ring.truncation_exponent or not c:
            return GradedPoly.zero(self.ring)
        return GradedPoly._make(self.ring, {index: c})

    def sw_class(self, index: int) -> GradedPoly:
        """The index-th Stiefel-Whitney class: the degree-`index` piece."""
        g = self.ring.generator_degree
        if index < 0 or index % g:
            return GradedPoly.zero(self.ring)
        return self.component(index // g)

    def chern_class(self, index: int) -> GradedPoly:
        """The index-th Chern class: the piece of cohomological degree 2*index."""
        g = self.ring.generator_degree
        if index < 0 or (2 * index) % g:
            return GradedPoly.zero(self.ring)
        return self.component(2 * index // g)

    def class_component(self, index: int, path: str) -> GradedPoly:
        return self.sw_class(index) if path == "sw" else self.chern_class(index)

    def max_class_index(self, path: str) -> int | None:
        """Largest index with a nonzero positive-degree class, None if all vanish."""
        g = self.ring.generator_degree
        best = None
        for e in self.poly.coeffs:
            if e <= 0:
                continue
            degree = e * g
            if path == "sw":
                index = degree
            else:
                if degree % 2:
                    continue  # odd-degree classes are invisible to Chern indexing
                index = degree // 2
            if best is None or index > best:
                best = index
        return best

    def __eq__(self, other) -> bool:
        return isinstance(other, TotalClass) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"TotalClass({self.poly!r})"


def total_sw_rp(m: int) -> TotalClass:
    """Total tangent Stiefel-Whitney class of real projective m-space."""
    if m < 1:
        raise ManifoldSpecError("projective space dimension must be at least 1")
    spec = RingSpec(2, 1, m)
    coeffs = {}
    for i in range(m + 1):
        c = binom_mod_p(m + 1, i, 2).value
        if c:
            coeffs[i] = c
    return TotalClass(GradedPoly._make(spec, coeffs))


def total_chern_cp(m: int, p: int) -> TotalClass:
    """Total tangent Chern class of complex projective m-space, reduced mod p."""
    if m < 1:
        raise ManifoldSpecError("projective space dimension must be at least 1")
    poly = _binomial_total_class(RingSpec(p, 2, m), m + 1)
    return TotalClass(poly)


def _binomial_total_class(spec: RingSpec, exponent: int) -> GradedPoly:
    # (1 + g)^exponent truncated, via digitwise binomials
    coeffs = {}
    for i in range(spec.truncation_exponent + 1):
        c = binom_mod_p(exponent, i, spec.p).value
        if c:
            coeffs[i] = c
    return GradedPoly._make(spec, coeffs)


def dual_total_class(w: TotalClass) -> TotalClass:
    """Total class of the stable inverse bundle: the formal inverse of w."""
    try:
        return TotalClass(poly_inv(w.poly))
    except NonInvertibleError as exc:
        raise ManifoldSpecError(str(exc)) from exc


_BUILTIN_KINDS = ("real_projective", "complex_projective", "sphere", "euclidean", "parallelizable")
_SHORTHAND = {
    "rp": "real_projective",
    "cp": "complex_projective",
    "sphere": "sphere",
    "euclidean": "euclidean",
    "parallelizable": "parallelizable",
}
_SHORTHAND_RE = re.compile(r"^(rp|cp|sphere|euclidean|parallelizable):(\d+)$")


@dataclass(frozen=True, slots=True)
class ManifoldSpec:
    """A manifold as the criteria see it: kind, dimensions, class data.

    Built-in kinds carry no fixed coefficient field; realize(p) produces the
    ring and tangent total class over F_p on demand (complex projective spaces
    have mod-p classes for every prime p, real ones only for p = 2).  Custom
    specs fix their ring at parse time.
    """

    kind: str
    real_dimension: int
    complex_dimension: int | None
    label: str
    custom_ring: RingSpec | None = None
    custom_class_coeffs: tuple[tuple[int, int], ...] | None = None

    @property
    def is_compact_source(self) -> bool:
        # compactness is taken on trust from the kind; euclidean is the one
        # built-in that can never sit in the source slot
        return self.kind != "euclidean"

    def realize(self, p: int) -> tuple[RingSpec, TotalClass]:
        """Cohomology ring over F_p and the tangent total class inside it."""
        kind, n = self.kind, self.real_dimension
        if kind == "real_projective":
            if p != 2:
                raise ManifoldSpecError(
                    f"{self.label} has characteristic classes only over F_2, not F_{p}"
                )
            w = total_sw_rp(n)
            return w.ring, w
        if kind == "complex_projective":
            m = self.complex_dimension
            assert m is not None
            spec = RingSpec(p, 2, m)
            return spec, TotalClass(_binomial_total_class(spec, m + 1))
        if kind == "sphere":
            spec = RingSpec(p, n, 1)
            return spec, TotalClass.one(spec)
        if kind == "parallelizable":
            spec = RingSpec(p, 1, n)
            return spec, TotalClass.one(spec)
        if kind == "euclidean":
            spec = RingSpec(p, 1, 0)
            return spec, TotalClass.one(spec)
        assert kind == "custom"
        ring = self.custom_ring
        assert ring is not None and self.custom_class_coeffs is not None
        if ring.p != p:
            raise ManifoldSpecError(
                f"{self.label} declares coefficients mod {ring.p}, but the check needs mod {p}"
            )
        return ring, TotalClass(GradedPoly(ring, dict(self.custom_class_coeffs)))

    def __str__(self) -> str:
        return self.label


def _builtin_spec(kind: str, n: int) -> ManifoldSpec:
    shorthand = {v: k for k, v in _SHORTHAND.items()}[kind]
    label = f"{shorthand}:{n}"
    if n < 1:
        raise ManifoldSpecError(f"dimension in {label!r} must be at least 1")
    if kind == "complex_projective":
        return ManifoldSpec(kind, 2 * n, n, label)
    complex_dim = n // 2 if kind == "euclidean" and n % 2 == 0 else None
    return ManifoldSpec(kind, n, complex_dim, label)


def _parse_class_entries(raw: Any, ring: RingSpec, what: str) -> dict[int, int]:
    if not isinstance(raw, list):
        raise ManifoldSpecError(f"{what} must be a list of [index, [[exponent, coefficient], ...]] entries")
    coeffs: dict[int, int] = {}
    seen: set[int] = set()
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int)):
            raise ManifoldSpecError(f"malformed {what} entry {entry!r}")
        index, monomials = entry
        if index < 0:
            raise ManifoldSpecError(f"negative class index {index} in {what}")
        if index in seen:
            raise ManifoldSpecError(f"duplicate class index {index} in {what}")
        seen.add(index)
        if not isinstance(monomials, list):
            raise ManifoldSpecError(f"class_{index} of {what} must be a list of [exponent, coefficient] pairs")
        for pair in monomials:
            if not (isinstance(pair, list) and len(pair) == 2
                    and isinstance(pair[0], int) and isinstance(pair[1], int)):
                raise ManifoldSpecError(f"malformed monomial {pair!r} in class_{index} of {what}")
            e, c = pair
            if e != index:
                raise ManifoldSpecError(
                    f"class_{index} of {what} must be homogeneous: exponent {e} != {index}"
                )
            if e > ring.truncation_exponent:
                raise ManifoldSpecError(
                    f"exponent {e} in {what} exceeds the truncation bound {ring.truncation_exponent}"
                )
            coeffs[e] = (coeffs.get(e, 0) + c) % ring.p
    return {e: c for e, c in coeffs.items() if c}


def parse_total_class(document: Any, ring: RingSpec) -> TotalClass:
    """Parse a {"p": ..., "total_class": [...]} document against a known ring."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ManifoldSpecError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ManifoldSpecError("total class document must be a JSON object")
    p = document.get("p")
    if p != ring.p:
        raise ManifoldSpecError(f"total class declares modulus {p!r}, expected {ring.p}")
    coeffs = _parse_class_entries(document.get("total_class"), ring, "total_class")
    if coeffs.get(0, 0) != 1:
        raise ManifoldSpecError("class_0 of a total class must equal 1")
    return TotalClass(GradedPoly(ring, coeffs))


def parse_manifold_spec(document: Any) -> ManifoldSpec:
    """Parse a manifold description.

    Accepts built-in shorthands ("rp:13", "cp:6", "sphere:8", "euclidean:14",
    "parallelizable:3"), a JSON string, or an already-decoded dict with the
    custom schema:

        {"kind": "custom", "p": <prime>, "generator_degree": <int>,
         "truncation_exponent": <int>, "real_dimension": <int>,
         "complex_dimension": <int|null>,
         "total_class": [[<class index i>, [[<exponent e>, <coefficient>], ...]], ...]}
    """
    if isinstance(document, str):
        match = _SHORTHAND_RE.match(document.strip())
        if match:
            return _builtin_spec(_SHORTHAND[match.group(1)], int(match.group(2)))
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ManifoldSpecError(
                f"{document!r} is neither a built-in shorthand nor valid JSON ({exc})"
            ) from exc
    if not isinstance(document, dict):
        raise ManifoldSpecError("manifold spec must be a shorthand string or JSON object")

    kind = document.get("kind")
    if kind in _BUILTIN_KINDS:
        dim = document.get("real_dimension") if kind != "complex_projective" \
            else document.get("complex_dimension")
        if not isinstance(dim, int):
            raise ManifoldSpecError(f"built-in kind {kind!r} needs an integer dimension")
        return _builtin_spec(kind, dim)
    if kind != "custom":
        raise ManifoldSpecError(f"unknown manifold kind {kind!r}")

    required = ("p", "generator_degree", "truncation_exponent", "real_dimension")
    for key in required:
        if not isinstance(document.get(key), int):
            raise ManifoldSpecError(f"custom spec field {key!r} must be an integer")
    complex_dim = document.get("complex_dimension")
    if complex_dim is not None and not isinstance(complex_dim, int):
        raise ManifoldSpecError("complex_dimension must be an integer or null")
    if document["real_dimension"] < 1:
        raise ManifoldSpecError("real_dimension must be at least 1")
    ring = RingSpec(document["p"], document["generator_degree"], document["truncation_exponent"])
    coeffs = _parse_class_entries(document.get("total_class"), ring, "total_class")
    if coeffs.get(0, 0) != 1:
        raise ManifoldSpecError("class_0 of a total class must equal 1")
    label = document.get("label", "custom")
    if not isinstance(label, str):
        raise ManifoldSpecError("label must be a string")
    return ManifoldSpec(
        kind="custom",
        real_dimension=document["real_dimension"],
        complex_dimension=complex_dim,
        label=label,
        custom_ring=ring,
        custom_class_coeffs=tuple(sorted(coeffs.items())),
    )
