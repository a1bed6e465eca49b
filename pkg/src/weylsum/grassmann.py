"""Grassmannians G(k, n) = U(n) / (U(k) x U(n-k)) and their independent oracles.

``char_number_direct`` evaluates the sum over increasing multi-indices I
without going through the root-system machinery, and
``schubert_degree_oracle`` is the classical Plucker degree; both serve as
cross-checks for the localization engine.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatch, SpaceMismatch
from .localize import SpaceSpec, integrate, make_class, make_space
from .polyalg import LinearForm, Number, Polynomial, RatFunc, elem_sym, ratfunc_sum, ratfunc_to_poly
from .rootsys import build_root_system, subsystem


@dataclass(frozen=True)
class GrassmannSpec:
    k: int
    n: int
    space: SpaceSpec

    @property
    def dim_complex(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def rank(self) -> int:
        return self.n


def _check_bounds(k: int, n: int):
    if not (isinstance(k, int) and isinstance(n, int) and 1 <= k < n):
        raise ValueError(f"Grassmannian needs 1 <= k < n, got k={k}, n={n}")


def grassmannian(k: int, n: int, orientation: str = "complex") -> GrassmannSpec:
    _check_bounds(k, n)
    g = build_root_system("A", n)
    h = subsystem(g, [i for i in range(1, n) if i != k])
    return GrassmannSpec(k, n, make_space(g, h, orientation))


def as_grassmannian(space: SpaceSpec) -> GrassmannSpec | None:
    """Recognize a type-A space whose H omits exactly one simple root."""
    if space.g.family != "A" or space.h.simple_indices is None:
        return None
    n = space.g.rank
    omitted = [i for i in range(1, n) if i not in space.h.simple_indices]
    if len(omitted) != 1:
        return None
    return GrassmannSpec(omitted[0], n, space)


def chern(bundle: str, r: int, spec: GrassmannSpec) -> Polynomial:
    """``c_r(S)`` or ``c_r(Q)`` as an elementary symmetric polynomial in a y-block."""
    if bundle == "S":
        block = range(spec.k)
    elif bundle == "Q":
        block = range(spec.k, spec.n)
    else:
        raise ValueError(f"bundle must be 'S' or 'Q', got {bundle!r}")
    if not 0 <= r <= len(block):
        raise ValueError(f"c_{r}({bundle}) out of range: {bundle} has rank {len(block)}")
    return elem_sym(spec.n, block, r, "y")


def _monomial(spec: GrassmannSpec, m: Sequence[int], bundle: str) -> Polynomial:
    size = spec.k if bundle == "S" else spec.n - spec.k
    if len(m) > size:
        raise ValueError(f"{len(m)} exponents given for a bundle of rank {size}")
    if any(x < 0 for x in m):
        raise ValueError("exponents must be nonnegative")
    degree = sum(r * x for r, x in enumerate(m, 1))
    if degree != spec.dim_complex:
        raise DegreeMismatch(
            f"sum r*m_r = {degree} but dim G({spec.k},{spec.n}) = {spec.dim_complex}",
            expected=spec.dim_complex,
            found=degree,
        )
    out = Polynomial.one(spec.n, "y")
    for r, x in enumerate(m, 1):
        out = out * chern(bundle, r, spec) ** x
    return out


def char_number(spec: GrassmannSpec, m: Sequence[int], bundle: str = "S", workers: int = 1) -> Number:
    """``int prod_r c_r(bundle)^{m_r}`` through the localization engine.

    ``m`` is indexed by Chern degree starting at 1; missing trailing entries
    are zero.  The degree condition is ``sum r * m_r = k (n - k)``.
    """
    return integrate(make_class(spec.space, _monomial(spec, m, bundle)), workers)


def _orientation_sign(spec: GrassmannSpec) -> int:
    return (-1) ** spec.dim_complex if spec.space.orientation == "complex" else 1


def direct_terms(spec: GrassmannSpec, m: Sequence[int], bundle: str = "S") -> list[RatFunc]:
    """One term per increasing multi-index I with complement J.

    The numerator is ``prod_r sigma_r(u_I)^{m_r}`` (or of ``u_J`` for Q) and
    the denominator ``prod_{i in I, j in J} (u_i - u_j)``, times the
    orientation sign.
    """
    _monomial(spec, m, bundle)  # validates m
    k, n = spec.k, spec.n
    sign = _orientation_sign(spec)
    terms = []
    for I in itertools.combinations(range(n), k):
        J = [j for j in range(n) if j not in I]
        block = I if bundle == "S" else J
        num = Polynomial.one(n, "u")
        for r, x in enumerate(m, 1):
            num = num * elem_sym(n, block, r, "u") ** x
        scale = sign
        forms = []
        for i in I:
            for j in J:
                c = [0] * n
                c[i], c[j] = 1, -1
                form, s = LinearForm.normalize(c)
                scale *= s
                forms.append(form)
        terms.append(RatFunc(Fraction(1, scale), num, tuple(forms)))
    return terms


def char_number_direct(spec: GrassmannSpec, m: Sequence[int], bundle: str = "S") -> Number:
    total = ratfunc_to_poly(ratfunc_sum(direct_terms(spec, m, bundle)))
    return total.evaluate([0] * spec.n)


def numeric_oracle(spec: GrassmannSpec, m: Sequence[int], point: Sequence[Number], bundle: str = "S") -> Number:
    """Exact value of the unreduced multi-index sum at a point with distinct coordinates."""
    if len(set(point)) != len(point):
        raise ValueError("oracle point needs pairwise distinct coordinates")
    return sum((Fraction(t.evaluate(point)) for t in direct_terms(spec, m, bundle)), Fraction(0))


def schubert_degree_oracle(k: int, n: int) -> int:
    """Degree of G(k, n) in its Plucker embedding: ``d! prod_i i! / (n-k+i)!``."""
    _check_bounds(k, n)
    d = k * (n - k)
    num = math.factorial(d) * math.prod(math.factorial(i) for i in range(k))
    den = math.prod(math.factorial(n - k + i) for i in range(k))
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("Schubert degree is not an integer")
    return q


def gaussian_binomial(n: int, k: int) -> list[int]:
    """Coefficients in q of ``[n choose k]_q`` from the product formula."""
    num = [1]
    den = [1]
    for i in range(1, k + 1):
        num = _mul_series(num, [1] + [0] * (n - k + i - 1) + [-1])
        den = _mul_series(den, [1] + [0] * (i - 1) + [-1])
    # exact division of integer series, lowest degree first
    q = []
    rem = list(num)
    for i in range(len(num) - len(den) + 1):
        c = rem[i] // den[0]
        q.append(c)
        for j, dj in enumerate(den):
            rem[i + j] -= c * dj
    if any(rem):
        raise ArithmeticError("q-binomial division is not exact")
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def _mul_series(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def require_grassmannian(space) -> GrassmannSpec:
    if isinstance(space, GrassmannSpec):
        return space
    spec = as_grassmannian(space)
    if spec is None:
        raise SpaceMismatch("Chern classes of S and Q need a Grassmannian (type A, one omitted simple root)")
    return spec
