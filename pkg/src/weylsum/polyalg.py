"""Exact polynomials over Q and rational functions with linear-form denominators.

Coefficients are Python ints where possible and ``Fraction`` otherwise; no
floating point is ever produced.  Denominators of ``RatFunc`` stay factored as
sorted tuples of primitive ``LinearForm`` s, which is all the localization sums
ever need.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DenominatorVanishes, NotPolynomial, RankMismatch
from .rootsys import Weight, WeylElement

FAMILIES = ("u", "y")

Number = Union[int, Fraction]


def _norm(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def _div(a: Number, b: Number) -> Number:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def format_rational(c: Number) -> str:
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_DEGREE = _MASK - 1


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, k in enumerate(exps):
        if not 0 <= k <= _MAX_DEGREE:
            raise OverflowError(f"exponent {k} out of range")
        key |= int(k) << (_BITS * i)
    return key


def _unpack(key: int, rank: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(rank))


def _key_degree(key: int) -> int:
    # digit sum in base 2^16; exact while the total degree stays below 2^16 - 1
    return key % _MASK


class Polynomial:
    """Sparse multivariate polynomial in ``u_1..u_rank`` or ``y_1..y_rank``.

    Monomials are stored packed into one int (16 bits per exponent), so
    multiplying monomials is integer addition.  ``terms`` gives the usual
    exponent-tuple view.  Instances are treated as immutable.
    """

    __slots__ = ("family", "rank", "_t", "_terms")

    def __init__(self, terms: dict | None = None, rank: int = 0, family: str = "u"):
        if family not in FAMILIES:
            raise ValueError(f"variable family must be one of {FAMILIES}, got {family!r}")
        self.family = family
        self.rank = rank
        self._terms = None
        packed: dict = {}
        for exps, c in (terms or {}).items():
            c = _norm(c)
            if c:
                exps = tuple(exps)
                if len(exps) != rank:
                    raise RankMismatch(f"exponent vector {exps} does not have length {rank}")
                key = _pack(exps)
                v = packed.get(key, 0) + c
                if v:
                    packed[key] = _norm(v)
                else:
                    packed.pop(key, None)
        self._t = packed

    @classmethod
    def _raw(cls, packed: dict, rank: int, family: str) -> Polynomial:
        p = object.__new__(cls)
        p.family, p.rank, p._t, p._terms = family, rank, packed, None
        return p

    @property
    def terms(self) -> dict[tuple[int, ...], Number]:
        if self._terms is None:
            self._terms = {_unpack(k, self.rank): c for k, c in self._t.items()}
        return self._terms

    def __getstate__(self):
        return (self.family, self.rank, self._t)

    def __setstate__(self, state):
        self.family, self.rank, self._t = state
        self._terms = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, rank: int, family: str = "u") -> Polynomial:
        return cls._raw({}, rank, family)

    @classmethod
    def constant(cls, c, rank: int, family: str = "u") -> Polynomial:
        c = _norm(c)
        return cls._raw({0: c} if c else {}, rank, family)

    @classmethod
    def one(cls, rank: int, family: str = "u") -> Polynomial:
        return cls.constant(1, rank, family)

    @classmethod
    def variable(cls, i: int, rank: int, family: str = "u") -> Polynomial:
        """The 0-based ``i``-th generator."""
        if not 0 <= i < rank:
            raise IndexError(f"variable index {i} out of range for rank {rank}")
        return cls._raw({1 << (_BITS * i): 1}, rank, family)

    @classmethod
    def linear(cls, coeffs: Sequence[Number], family: str = "u") -> Polynomial:
        return cls._raw({1 << (_BITS * i): _norm(c) for i, c in enumerate(coeffs) if c}, len(coeffs), family)

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_key_degree(k) for k in self._t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_key_degree(k) for k in self._t}) <= 1

    def homogeneous_components(self) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        for k, c in self._t.items():
            parts.setdefault(_key_degree(k), {})[k] = c
        return {d: Polynomial._raw(t, self.rank, self.family) for d, t in sorted(parts.items())}

    def constant_term(self) -> Number:
        return self._t.get(0, 0)

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        """Graded lexicographic order, highest term first."""
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    def coefficients(self) -> list[Number]:
        terms = self.terms
        return [terms[e] for e in self.sorted_exponents()]

    def retag(self, family: str) -> Polynomial:
        if family == self.family:
            return self
        return Polynomial._raw(self._t, self.rank, family)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.family != self.family or other.rank != self.rank:
                raise RankMismatch(
                    f"cannot combine {self.family}-polynomial of rank {self.rank} "
                    f"with {other.family}-polynomial of rank {other.rank}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.rank, self.family)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            self, other = other, self
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                del out[k]
        return Polynomial._raw(out, self.rank, self.family)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({k: -c for k, c in self._t.items()}, self.rank, self.family)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> Polynomial:
        k = _norm(k)
        if not k:
            return Polynomial.zero(self.rank, self.family)
        if k == 1:
            return self
        return Polynomial._raw({m: _norm(c * k) for m, c in self._t.items()}, self.rank, self.family)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return Polynomial.zero(self.rank, self.family)
        if self.degree() + other.degree() > _MAX_DEGREE:
            raise OverflowError("polynomial degree too large")
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for k2, c2 in b.items():
            for k1, c1 in a.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return Polynomial._raw({k: _norm(c) for k, c in out.items() if c}, self.rank, self.family)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n!r}")
        result = Polynomial.one(self.rank, self.family)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.rank, self.family)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.family == other.family and self.rank == other.rank and self._t == other._t

    def __hash__(self):
        return hash((self.family, self.rank, frozenset(self._t.items())))

    # -- evaluation and division ------------------------------------------
    def evaluate(self, point: Sequence[Number]) -> Number:
        if len(point) != self.rank:
            raise RankMismatch(f"point of length {len(point)} for rank {self.rank}")
        point = [_norm(Fraction(x)) for x in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x**k
            total += t
        return _norm(total) if isinstance(total, Fraction) else total

    def divide_linear(self, form: LinearForm) -> Polynomial | None:
        """Exact quotient by a linear form, or ``None`` if it does not divide.

        Eliminates the leading variable of ``form`` one power at a time
        (synthetic division), which is leading-term elimination in lex order.
        """
        if form.rank != self.rank:
            raise RankMismatch(f"linear form of rank {form.rank} for polynomial of rank {self.rank}")
        if not self._t:
            return self
        v = form.lead_index()
        a = form.coeffs[v]
        shift = _BITS * v
        rest = [(1 << (_BITS * i), c) for i, c in enumerate(form.coeffs) if c and i != v]
        # slices[k] maps monomials free of x_v to the coefficient of x_v^k
        slices: dict[int, dict] = {}
        for key, c in self._t.items():
            k = (key >> shift) & _MASK
            slices.setdefault(k, {})[key - (k << shift)] = c
        top = max(slices)
        if top == 0:
            return None
        quotient: dict = {}
        q_prev: dict = {}
        for k in range(top, -1, -1):
            # x_v^k coefficient of p - L*q must vanish: a q_{k-1} = p_k - M q_k
            cur = dict(slices.get(k, {}))
            for key, c in q_prev.items():
                for step, m in rest:
                    key2 = key + step
                    val = cur.get(key2, 0) - m * c
                    if val:
                        cur[key2] = val
                    else:
                        cur.pop(key2, None)
            if k == 0:
                if cur:
                    return None
                break
            q_prev = {key: _div(c, a) for key, c in cur.items()}
            hi = (k - 1) << shift
            for key, c in q_prev.items():
                quotient[key + hi] = c
        return Polynomial._raw(quotient, self.rank, self.family)

    # -- rendering --------------------------------------------------------
    def _monomial(self, e) -> str:
        parts = []
        for i, k in enumerate(e, 1):
            if k == 1:
                parts.append(f"{self.family}{i}")
            elif k > 1:
                parts.append(f"{self.family}{i}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._t:
            return "0"
        terms = self.terms
        out = []
        for e in self.sorted_exponents():
            c = terms[e]
            mono = self._monomial(e)
            mag = format_rational(abs(c))
            body = mag if not mono else (mono if mag == "1" else f"{mag}*{mono}")
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self}, rank={self.rank}, family={self.family!r})"

    def to_json(self) -> list[dict]:
        terms = self.terms
        return [{"exponents": list(e), "coeff": format_rational(terms[e])} for e in self.sorted_exponents()]

    @classmethod
    def from_json(cls, data: list[dict], rank: int, family: str = "u") -> Polynomial:
        return cls({tuple(t["exponents"]): Fraction(t["coeff"]) for t in data}, rank, family)


def poly_arith(op: str, *operands):
    """Dispatcher over ``add``, ``mul``, ``pow`` and ``scale``."""
    if op == "add":
        total = operands[0]
        for p in operands[1:]:
            total = total + p
        return total
    if op == "mul":
        total = operands[0]
        for p in operands[1:]:
            total = total * p
        return total
    if op == "pow":
        base, n = operands
        return base**n
    if op == "scale":
        p, k = operands
        return p.scale(k)
    raise ValueError(f"unknown polynomial operation {op!r}")


def act_poly(w: WeylElement, f: Polynomial) -> Polynomial:
    """Ring automorphism sending the r-th variable to ``signs[r] * x_{perm[r]}``."""
    if w.rank != f.rank:
        raise RankMismatch(f"Weyl element of rank {w.rank} on polynomial of rank {f.rank}")
    shifts = [(_BITS * i, _BITS * j) for i, j in enumerate(w.perm)]
    negative = [_BITS * i for i, s in enumerate(w.signs) if s < 0]
    out = {}
    for key, c in f._t.items():
        new = 0
        for src, dst in shifts:
            new |= ((key >> src) & _MASK) << dst
        if negative and sum((key >> sh) & _MASK for sh in negative) % 2:
            c = -c
        out[new] = c
    return Polynomial._raw(out, f.rank, f.family)


def elem_sym(rank: int, subset: Iterable[int], r: int, family: str = "u") -> Polynomial:
    """Elementary symmetric polynomial of degree ``r`` in the 0-based variables ``subset``."""
    subset = sorted(set(subset))
    if any(not 0 <= i < rank for i in subset):
        raise IndexError(f"variable subset {subset} out of range for rank {rank}")
    if r < 0 or r > len(subset):
        return Polynomial.zero(rank, family)
    terms = {}
    for combo in itertools.combinations(subset, r):
        e = [0] * rank
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = 1
    return Polynomial(terms, rank, family)


def power_sum(rank: int, subset: Iterable[int], r: int, family: str = "u") -> Polynomial:
    subset = sorted(set(subset))
    if any(not 0 <= i < rank for i in subset):
        raise IndexError(f"variable subset {subset} out of range for rank {rank}")
    if r == 0:
        return Polynomial.constant(len(subset), rank, family)
    terms = {}
    for i in subset:
        e = [0] * rank
        e[i] = r
        terms[tuple(e)] = 1
    return Polynomial(terms, rank, family)


@dataclass(frozen=True, order=True)
class LinearForm:
    """Primitive integer linear form whose first nonzero coefficient is positive."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if not any(c):
            raise ValueError("linear form must not be identically zero")
        if math.gcd(*c) != 1 or c[self._lead(c)] < 0:
            raise ValueError(f"linear form {c} is not normalized")
        object.__setattr__(self, "coeffs", c)

    @staticmethod
    def _lead(c) -> int:
        return next(i for i, x in enumerate(c) if x)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def lead_index(self) -> int:
        return self._lead(self.coeffs)

    @classmethod
    def normalize(cls, coeffs: Sequence[int]) -> tuple[LinearForm, int]:
        """Split ``coeffs`` as ``scale * form`` with ``form`` normalized."""
        coeffs = tuple(int(x) for x in coeffs)
        if not any(coeffs):
            raise ValueError("cannot normalize the zero linear form")
        g = math.gcd(*coeffs)
        if coeffs[cls._lead(coeffs)] < 0:
            g = -g
        return cls(tuple(x // g for x in coeffs)), g

    def to_poly(self, family: str = "u") -> Polynomial:
        return Polynomial.linear(self.coeffs, family)

    def evaluate(self, point: Sequence[Number]) -> Number:
        return _norm(sum(Fraction(c) * Fraction(x) for c, x in zip(self.coeffs, point)))

    def __str__(self):
        return str(self.to_poly("u"))


def root_to_linear_form(alpha: Weight) -> tuple[LinearForm, int]:
    """First Chern form of the line bundle of a character, as ``(form, scale)``.

    ``alpha`` maps to ``scale * form`` in the u-variables; the sign of
    ``scale`` records the normalization flip and its magnitude any content,
    e.g. ``2 e_1 -> (u1, 2)`` and ``e_2 - e_1 -> (u1 - u2, -1)``.
    """
    if alpha.is_zero():
        raise ValueError("the zero weight has no linear form")
    return LinearForm.normalize(alpha.coeffs)


def weight_to_poly(alpha: Weight, family: str = "u") -> Polynomial:
    return Polynomial.linear(alpha.coeffs, family)


@dataclass(frozen=True)
class RatFunc:
    """``scale * numerator / prod(denominator)`` with a factored denominator."""

    scale: Number
    numerator: Polynomial
    denominator: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "scale", _norm(Fraction(self.scale)))
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))
        if self.numerator.family != "u":
            raise ValueError("rational functions live in the u-variables")
        for f in self.denominator:
            if f.rank != self.numerator.rank:
                raise RankMismatch("denominator form rank does not match numerator")

    @property
    def rank(self) -> int:
        return self.numerator.rank

    @classmethod
    def from_poly(cls, p: Polynomial) -> RatFunc:
        return cls(1, p.retag("u"), ())

    def is_zero(self) -> bool:
        return self.scale == 0 or self.numerator.is_zero()

    def evaluate(self, point: Sequence[Number]) -> Number:
        den = Fraction(1)
        for f in self.denominator:
            v = f.evaluate(point)
            if v == 0:
                raise DenominatorVanishes(f"denominator factor {f} vanishes at {tuple(point)}", f)
            den *= v
        return _norm(Fraction(self.scale) * Fraction(self.numerator.evaluate(point)) / den)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_add(self, other)

    def __str__(self):
        num = self.numerator.scale(self.scale)
        if not self.denominator:
            return str(num)
        den = "*".join(f"({f})" for f in self.denominator)
        return f"({num})/({den})"


def _cancel(numerator: Polynomial, denominator: Counter) -> tuple[Polynomial, Counter]:
    """Divide out every denominator factor that divides the numerator exactly."""
    denominator = Counter(denominator)
    for form in sorted(denominator):
        while denominator[form] and not numerator.is_zero():
            q = numerator.divide_linear(form)
            if q is None:
                break
            numerator = q
            denominator[form] -= 1
    return numerator, +denominator


def ratfunc_sum(terms: Sequence[RatFunc], *, cancel: bool = True) -> RatFunc:
    """Exact sum over the least common denominator (multiset maximum).

    Numerators are brought to the common denominator and added once, then
    factors of the common denominator that divide the total are removed.
    """
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        raise ValueError("ratfunc_sum needs at least one nonzero term; use RatFunc.from_poly for zero")
    rank = terms[0].rank
    lcd: Counter = Counter()
    for t in terms:
        if t.rank != rank:
            raise RankMismatch("rational functions of different rank")
        for f, m in Counter(t.denominator).items():
            lcd[f] = max(lcd[f], m)
    # terms sharing a denominator are added before any scaling
    groups: dict[tuple, Polynomial] = {}
    for t in terms:
        num = t.numerator.scale(t.scale)
        groups[t.denominator] = groups[t.denominator] + num if t.denominator in groups else num
    total = Polynomial.zero(rank, "u")
    for den, num in groups.items():
        for f in sorted((lcd - Counter(den)).elements()):
            num = num * f.to_poly("u")
        total = total + num
    if total.is_zero():
        return RatFunc(0, Polynomial.zero(rank, "u"), ())
    if cancel:
        total, lcd = _cancel(total, lcd)
    return RatFunc(1, total, tuple(lcd.elements()))


def ratfunc_add(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.rank != b.rank:
        raise RankMismatch("rational functions of different rank")
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return ratfunc_sum([a, b])


def ratfunc_to_poly(a: RatFunc) -> Polynomial:
    """The polynomial value of ``a``; raises ``NotPolynomial`` otherwise."""
    if a.is_zero():
        return Polynomial.zero(a.rank, "u")
    num, rest = _cancel(a.numerator, Counter(a.denominator))
    if rest:
        left = tuple(rest.elements())
        raise NotPolynomial(
            "rational function does not reduce to a polynomial; surviving factors: "
            + ", ".join(str(f) for f in left),
            left,
        )
    return num.scale(a.scale)


def eval_point(x: Polynomial | RatFunc, assignment: Sequence[Number]) -> Number:
    return x.evaluate(assignment)
