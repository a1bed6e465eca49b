"""Fixed-point localization on G/H.

A class is a W_H-invariant polynomial ``f`` in the equivariant Chern roots
``y_1..y_l``.  At the fixed point ``w`` it restricts to ``w . f(u)``, and the
tangent space there has torus weights ``+-w . alpha`` over the roots of G not
in H.  Equivariant integration is the sum of restriction over Euler class.

Orientation: ``"complex"`` (the default) uses the holomorphic structure in
which the tangent space at the base point has the *negative* complement roots
as weights, so ``CP^1`` has ``int c1(S) = -1``.  ``"positive"`` takes the
complement roots themselves; it differs from ``"complex"`` by ``(-1)**d``.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatch, NotInvariant, SpaceMismatch
from .polyalg import (
    LinearForm,
    Number,
    Polynomial,
    RatFunc,
    act_poly,
    elem_sym,
    power_sum,
    ratfunc_sum,
    ratfunc_to_poly,
    root_to_linear_form,
    weight_to_poly,
)
from .rootsys import (
    CosetRep,
    RootSystem,
    SubsystemSpec,
    coset_reps,
    length_and_sign,
    subgroup_elements,
    subgroup_length,
    weyl_elements,
)

ORIENTATIONS = ("complex", "positive")


@dataclass(frozen=True)
class SpaceSpec:
    g: RootSystem
    h: SubsystemSpec
    orientation: str
    dim_complex: int
    cosets: tuple[CosetRep, ...]

    @property
    def rank(self) -> int:
        return self.g.rank

    @property
    def coset_count(self) -> int:
        return len(self.cosets)

    def orientation_sign(self) -> int:
        return (-1) ** self.dim_complex if self.orientation == "complex" else 1

    def describe(self) -> dict:
        return {
            "family": self.g.family,
            "rank": self.g.rank,
            "h_simple": list(self.h.simple_indices) if self.h.simple_indices is not None else None,
            "h_positive": [list(a.coeffs) for a in self.h.h_positive],
            "orientation": self.orientation,
        }


def make_space(g: RootSystem, h: SubsystemSpec, orientation: str = "complex") -> SpaceSpec:
    if h.parent != g:
        raise SpaceMismatch(f"subsystem belongs to {h.parent.name}, not {g.name}")
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    reps = tuple(coset_reps(h))
    d = len(h.complement)
    if (d == 0) != (len(reps) == 1):
        raise AssertionError("dimension and fixed-point count disagree")
    return SpaceSpec(g, h, orientation, d, reps)


@dataclass(frozen=True)
class EquivariantClass:
    space: SpaceSpec
    poly: Polynomial


def _check_invariant(poly: Polynomial, reflections, what: str):
    for s in reflections:
        if act_poly(s, poly) != poly:
            raise NotInvariant(f"{poly} is not {what}-invariant: reflection {s} moves it", s)


def make_class(space: SpaceSpec, poly: Polynomial) -> EquivariantClass:
    if poly.family != "y":
        raise ValueError("equivariant classes are polynomials in the y-variables")
    if poly.rank != space.rank:
        raise SpaceMismatch(f"polynomial of rank {poly.rank} on a space of rank {space.rank}")
    _check_invariant(poly, space.h.simple_reflections(), "W_H")
    return EquivariantClass(space, poly)


def restrict(cls: EquivariantClass, w: CosetRep) -> Polynomial:
    """Restriction to the fixed point ``w``: ``y_i -> w . u_i``; u-coefficients pass through."""
    return act_poly(w.element, cls.poly.retag("u"))


def tangent_weights(space: SpaceSpec, w: CosetRep):
    sign = -1 if space.orientation == "complex" else 1
    return [sign * w.element.act(a) for a in space.h.complement]


def euler_factors(space: SpaceSpec, w: CosetRep) -> tuple[int, tuple[LinearForm, ...]]:
    """Equivariant Euler class at ``w`` as ``scale * prod(forms)``."""
    scale = 1
    forms = []
    for a in tangent_weights(space, w):
        form, k = root_to_linear_form(a)
        scale *= k
        forms.append(form)
    return scale, tuple(forms)


def euler_at(space: SpaceSpec, w: CosetRep) -> Polynomial:
    scale, forms = euler_factors(space, w)
    out = Polynomial.constant(scale, space.rank, "u")
    for f in forms:
        out = out * f.to_poly("u")
    return out


def euler_class(space: SpaceSpec) -> Polynomial:
    """Euler class of the tangent bundle as a y-polynomial (product of tangent weights)."""
    out = Polynomial.constant(space.orientation_sign(), space.rank, "y")
    for a in space.h.complement:
        out = out * weight_to_poly(a, "y")
    return out


def localization_terms(space: SpaceSpec, poly: Polynomial, reps: Sequence[CosetRep] | None = None) -> list[RatFunc]:
    """Unreduced terms ``restriction / Euler class``, one per fixed point."""
    poly_u = poly.retag("u")
    terms = []
    for w in space.cosets if reps is None else reps:
        scale, forms = euler_factors(space, w)
        terms.append(RatFunc(Fraction(1, scale), act_poly(w.element, poly_u), forms))
    return terms


def _chunk_sum(args) -> RatFunc:
    space, poly, reps = args
    return _sum(localization_terms(space, poly, reps), space.rank)


def _sum(terms: list[RatFunc], rank: int) -> RatFunc:
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return RatFunc(0, Polynomial.zero(rank, "u"))
    return ratfunc_sum(terms)


def _localize(space: SpaceSpec, poly: Polynomial, workers: int) -> Polynomial:
    if workers <= 1 or space.coset_count < 2 * workers:
        total = _sum(localization_terms(space, poly), space.rank)
    else:
        size = math.ceil(space.coset_count / workers)
        chunks = [(space, poly, space.cosets[i : i + size]) for i in range(0, space.coset_count, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partial = list(pool.map(_chunk_sum, chunks))
        total = _sum(partial, space.rank)
    return ratfunc_to_poly(total)


def equivariant_integrate(cls: EquivariantClass, workers: int = 1) -> Polynomial:
    """Push-forward to a point, one homogeneous degree at a time.

    Raises ``NotPolynomial`` if the localization sum fails to reduce, which
    can only mean an invariance violation upstream or a bug.
    """
    space = cls.space
    result = Polynomial.zero(space.rank, "u")
    for _, part in cls.poly.homogeneous_components().items():
        result = result + _localize(space, part, workers)
    return result


def integrate(cls: EquivariantClass, workers: int = 1) -> Number:
    """Ordinary characteristic number: the u = 0 value of the equivariant push-forward."""
    d = cls.space.dim_complex
    if not cls.poly.is_zero() and not (cls.poly.is_homogeneous() and cls.poly.degree() == d):
        found = sorted(cls.poly.homogeneous_components())
        raise DegreeMismatch(
            f"integrand must be homogeneous of degree {d} (cohomological degree {2 * d}); found degrees {found}",
            expected=d,
            found=found,
        )
    pushed = equivariant_integrate(cls, workers)
    return pushed.evaluate([0] * cls.space.rank)


def gt_antisym_integrate(space: SpaceSpec, f: Polynomial) -> Polynomial:
    """Push-forward on G/T through the Weyl antisymmetrization divided by the Weyl denominator."""
    if space.h.h_positive:
        raise SpaceMismatch("antisymmetrization formula needs H = T")
    if f.rank != space.rank:
        raise SpaceMismatch(f"polynomial of rank {f.rank} on a space of rank {space.rank}")
    f = f.retag("u")
    numerator = Polynomial.zero(space.rank, "u")
    for w in weyl_elements(space.g):
        _, sign = length_and_sign(space.g, w)
        numerator = numerator + act_poly(w, f).scale(sign)
    scale = space.orientation_sign()
    forms = []
    for a in space.g.positive_roots:
        form, k = root_to_linear_form(a)
        scale *= k
        forms.append(form)
    if numerator.is_zero():
        return numerator
    return ratfunc_to_poly(RatFunc(Fraction(1, scale), numerator, tuple(forms)))


def verify_relation(space: SpaceSpec, b: Polynomial) -> bool:
    """Check ``b(y~) - b(u)`` restricts to zero at every fixed point.

    ``b`` must be W_G-invariant; either variable family is accepted.
    """
    if b.rank != space.rank:
        raise SpaceMismatch(f"polynomial of rank {b.rank} on a space of rank {space.rank}")
    b_u = b.retag("u")
    _check_invariant(b_u, space.g.simple_reflections(), "W_G")
    cls = EquivariantClass(space, b.retag("y"))
    return all(restrict(cls, w) == b_u for w in space.cosets)


def euler_characteristic(space: SpaceSpec, check: bool = True) -> int:
    """Number of fixed points, cross-checked by integrating the tangent Euler class."""
    count = space.coset_count
    if check:
        value = integrate(make_class(space, euler_class(space)))
        if value != count:
            raise AssertionError(f"Euler class integrates to {value}, expected {count} fixed points")
    return count


def _length_series(lengths) -> list[int]:
    out = [0] * (max(lengths, default=0) + 1)
    for n in lengths:
        out[n] += 1
    return out


def _divide_series(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("Poincare series division is not exact")
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("Poincare series division is not exact")
    return q


def poincare_polynomial(space: SpaceSpec) -> list[int]:
    """Coefficients of the Poincare polynomial in ``t`` (index = power of t).

    For parabolic H the Bruhat cells give ``sum t^(2 length(rep))``; for other
    maximal-rank H the coset lengths are not cell dimensions, so the series
    ``P(G/T) / P(H/T)`` is used instead.
    """
    if space.h.parabolic:
        half = _length_series([w.length for w in space.cosets])
    else:
        g_series = _length_series([length_and_sign(space.g, w)[0] for w in weyl_elements(space.g)])
        h_series = _length_series([subgroup_length(space.h, w) for w in subgroup_elements(space.h)])
        half = _divide_series(g_series, h_series)
    out = [0] * (2 * len(half) - 1)
    for i, c in enumerate(half):
        out[2 * i] = c
    return out


def basic_invariants(g: RootSystem, family: str = "u") -> list[tuple[str, Polynomial]]:
    """Named W_G-invariant generators to test relations against.

    Family A gets the power sums and elementary symmetrics of the
    coordinates.  Sign changes kill odd powers, so B/C/D use the same
    constructions in the squares (written ``p2r`` and ``e_r(sq)``); D adds
    the product of all coordinates, which even sign changes preserve.
    """
    n = g.rank
    out = []
    if g.family == "A":
        for r in range(1, n + 1):
            out.append((f"p{r}", power_sum(n, range(n), r, family)))
        for r in range(1, n + 1):
            out.append((f"e{r}", elem_sym(n, range(n), r, family)))
        return out
    squares = [Polynomial.variable(i, n, family) ** 2 for i in range(n)]
    for r in range(1, n + 1):
        out.append((f"p{2 * r}", power_sum(n, range(n), 2 * r, family)))
    for r in range(1, n + 1):
        e = Polynomial.zero(n, family)
        for subset in itertools.combinations(squares, r):
            term = Polynomial.one(n, family)
            for s in subset:
                term = term * s
            e = e + term
        out.append((f"e{r}(sq)", e))
    if g.family == "D":
        pf = Polynomial.one(n, family)
        for i in range(n):
            pf = pf * Polynomial.variable(i, n, family)
        out.append(("pf", pf))
    return out
