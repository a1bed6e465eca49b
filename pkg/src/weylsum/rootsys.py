"""Classical root systems, Weyl groups as signed permutations, coset representatives.

Coordinates follow the usual orthonormal realization: family A of rank ``n``
lives on ``n`` coordinates (the ``U(n)`` torus, not the ``SL`` one), so its
simple roots are ``e_1 - e_2, ..., e_{n-1} - e_n``.  Simple roots are numbered
from 1 in the Bourbaki order; coordinates and permutation entries are stored
0-based.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidSubsystem, RankMismatch, UnsupportedRootSystem

FAMILIES = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}


@dataclass(frozen=True, order=True)
class Weight:
    """A character of the torus, as an integer vector in Z^rank."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def basis(cls, i: int, rank: int) -> Weight:
        return cls(tuple(1 if j == i else 0 for j in range(rank)))

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def _check(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"weights of rank {self.rank} and {other.rank}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int):
        return Weight(tuple(k * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dot(self, other: Weight) -> int:
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs, 1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}e{i}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: basis vector ``e_i`` goes to ``signs[i] * e_{perm[i]}``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, rank: int) -> WeylElement:
        return cls(tuple(range(rank)), (1,) * rank)

    @property
    def rank(self) -> int:
        return len(self.perm)

    def __mul__(self, other: WeylElement) -> WeylElement:
        """Composition: ``(self * other)`` acts as ``other`` first, then ``self``."""
        if other.rank != self.rank:
            raise RankMismatch(f"Weyl elements of rank {self.rank} and {other.rank}")
        perm = tuple(self.perm[j] for j in other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.rank))
        return WeylElement(perm, signs)

    def inverse(self) -> WeylElement:
        perm = [0] * self.rank
        signs = [1] * self.rank
        for i, j in enumerate(self.perm):
            perm[j] = i
            signs[j] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def act(self, v: Weight) -> Weight:
        if v.rank != self.rank:
            raise RankMismatch(f"cannot act with rank {self.rank} on weight of rank {v.rank}")
        out = [0] * self.rank
        for i, c in enumerate(v.coeffs):
            out[self.perm[i]] = self.signs[i] * c
        return Weight(tuple(out))

    def determinant(self) -> int:
        det = math.prod(self.signs)
        seen = [False] * self.rank
        for start in range(self.rank):
            if seen[start]:
                continue
            j, cycle = start, 0
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                cycle += 1
            if cycle % 2 == 0:
                det = -det
        return det

    def one_line(self) -> tuple[int, ...]:
        """Signed one-line notation with 1-based entries, e.g. ``(2, -1)``."""
        return tuple(s * (p + 1) for p, s in zip(self.perm, self.signs))

    def __str__(self):
        return "[" + " ".join(str(x) for x in self.one_line()) + "]"


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    _positive_set: frozenset = field(repr=False, compare=False, default=frozenset())
    _root_set: frozenset = field(repr=False, compare=False, default=frozenset())

    @property
    def roots(self) -> frozenset[Weight]:
        return self._root_set

    def is_positive(self, a: Weight) -> bool:
        return a in self._positive_set

    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(reflection(a) for a in self.simple_roots)

    def simple_coordinates(self, a: Weight) -> tuple[int, ...]:
        return _simple_coordinates(self.simple_roots, a)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def _positive_table(family: str, n: int) -> list[Weight]:
    e = [Weight.basis(i, n) for i in range(n)]
    roots = [e[i] - e[j] for i, j in itertools.combinations(range(n), 2)]
    if family in "BCD":
        roots += [e[i] + e[j] for i, j in itertools.combinations(range(n), 2)]
    if family == "B":
        roots += e
    elif family == "C":
        roots += [2 * x for x in e]
    return roots


def _simple_table(family: str, n: int) -> list[Weight]:
    e = [Weight.basis(i, n) for i in range(n)]
    simple = [e[i] - e[i + 1] for i in range(n - 1)]
    if family == "B":
        simple.append(e[n - 1])
    elif family == "C":
        simple.append(2 * e[n - 1])
    elif family == "D":
        simple.append(e[n - 2] + e[n - 1])
    return simple


def _simple_coordinates(simple: Sequence[Weight], a: Weight) -> tuple[int, ...]:
    """Solve ``a = sum c_k simple[k]`` exactly; the simple roots are independent."""
    m = len(simple)
    if m == 0:
        if a.is_zero():
            return ()
        raise ValueError(f"{a} is not in the root lattice")
    rows = [[Fraction(s.coeffs[i]) for s in simple] + [Fraction(a.coeffs[i])] for i in range(a.rank)]
    pivots = []
    r = 0
    for col in range(m):
        pr = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ValueError(f"{a} is not in the span of the simple roots")
    coords = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        coords[col] = rows[i][-1]
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"{a} is not in the root lattice")
    return tuple(int(c) for c in coords)


def build_root_system(family: str, rank: int) -> RootSystem:
    """Positive roots of a classical family in the standard coordinates.

    Positive roots are ordered by height, ties broken by decreasing
    simple-root coordinates; this order is what expert-mode subsystem files
    index into.
    """
    family = str(family).upper()
    if family not in FAMILIES:
        raise UnsupportedRootSystem(f"unsupported family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or rank < _MIN_RANK[family]:
        raise UnsupportedRootSystem(f"family {family} requires rank >= {_MIN_RANK[family]}, got {rank}")
    simple = _simple_table(family, rank)
    positive = _positive_table(family, rank)
    coords = {a: _simple_coordinates(simple, a) for a in positive}
    positive.sort(key=lambda a: (sum(coords[a]), tuple(-c for c in coords[a])))
    pos = frozenset(positive)
    return RootSystem(family, rank, tuple(simple), tuple(positive), pos, pos | {-a for a in pos})


def reflection(alpha: Weight) -> WeylElement:
    """``s_alpha(x) = x - 2 (x, alpha) / (alpha, alpha) alpha`` as a signed permutation."""
    n = alpha.rank
    norm = alpha.dot(alpha)
    perm, signs = [], []
    for i in range(n):
        e = Weight.basis(i, n)
        k = Fraction(2 * e.dot(alpha), norm)
        img = [Fraction(x) - k * a for x, a in zip(e.coeffs, alpha.coeffs)]
        nz = [j for j, x in enumerate(img) if x != 0]
        if len(nz) != 1 or abs(img[nz[0]]) != 1:
            raise ValueError(f"reflection in {alpha} is not a signed permutation")
        perm.append(nz[0])
        signs.append(int(img[nz[0]]))
    return WeylElement(tuple(perm), tuple(signs))


def act_weight(w: WeylElement, v: Weight) -> Weight:
    return w.act(v)


def length_and_sign(rs: RootSystem, w: WeylElement) -> tuple[int, int]:
    """Number of positive roots sent to negative roots, and ``(-1)**length``."""
    if w.rank != rs.rank:
        raise RankMismatch(f"Weyl element of rank {w.rank} for root system of rank {rs.rank}")
    length = sum(1 for a in rs.positive_roots if not rs.is_positive(w.act(a)))
    return length, (-1) ** length


def _sort_key(rs: RootSystem, w: WeylElement):
    return (length_and_sign(rs, w)[0], w.one_line())


def weyl_group_order(rs: RootSystem) -> int:
    n = rs.rank
    if rs.family == "A":
        return math.factorial(n)
    if rs.family in "BC":
        return 2**n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


def weyl_elements(rs: RootSystem) -> list[WeylElement]:
    """Every element of the Weyl group once, ordered by length then one-line notation."""
    n = rs.rank
    if rs.family == "A":
        sign_choices = [(1,) * n]
    else:
        sign_choices = list(itertools.product((1, -1), repeat=n))
        if rs.family == "D":
            sign_choices = [s for s in sign_choices if s.count(-1) % 2 == 0]
    elems = [WeylElement(p, s) for p in itertools.permutations(range(n)) for s in sign_choices]
    elems.sort(key=lambda w: _sort_key(rs, w))
    return elems


@dataclass(frozen=True)
class SubsystemSpec:
    """Positive roots of H inside those of G, plus the complement.

    ``simple_indices`` is the 1-based simple-root selection for parabolic
    input, or ``None`` when the subsystem came from an explicit root list.
    """

    parent: RootSystem
    h_positive: tuple[Weight, ...]
    complement: tuple[Weight, ...]
    h_simple: tuple[Weight, ...]
    simple_indices: tuple[int, ...] | None
    parabolic: bool

    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(reflection(b) for b in self.h_simple)

    def contains_positive(self, w: WeylElement) -> bool:
        """True when ``w`` maps every positive root of H to a positive root of G."""
        return all(self.parent.is_positive(w.act(b)) for b in self.h_positive)


def _indecomposable(roots: Sequence[Weight]) -> list[Weight]:
    rset = set(roots)
    sums = {a + b for a, b in itertools.combinations(roots, 2)}
    return [a for a in roots if a not in sums and a in rset]


def _validate(rs: RootSystem, h_positive: Sequence[Weight]) -> tuple[list[Weight], list[Weight]]:
    hset = set(h_positive)
    for a in h_positive:
        if not rs.is_positive(a):
            raise InvalidSubsystem(f"{a} is not a positive root of {rs.name}")
    h_all = hset | {-a for a in hset}
    for a, b in itertools.combinations(h_all, 2):
        s = a + b
        if not s.is_zero() and s in rs.roots and s not in h_all:
            raise InvalidSubsystem(f"not closed: {a} + {b} = {s} is a root outside H")
    h_simple = _indecomposable(list(h_positive))
    complement = [a for a in rs.positive_roots if a not in hset]
    cset = set(complement)
    for b in h_simple:
        s = reflection(b)
        for a in h_positive:
            if s.act(a) not in h_all:
                raise InvalidSubsystem(f"reflection in {b} does not preserve the roots of H")
        # the Euler product over the complement must be invariant: images land
        # in +-complement with an even number of sign changes
        flips = 0
        images = set()
        for a in complement:
            img = s.act(a)
            if img in cset:
                images.add(img)
            elif -img in cset:
                images.add(-img)
                flips += 1
            else:
                raise InvalidSubsystem(f"reflection in {b} maps complement root {a} outside the complement")
        if images != cset or flips % 2:
            raise InvalidSubsystem(f"reflection in {b} does not fix the complement product")
    return h_simple, complement


def subsystem(rs: RootSystem, simple_indices: Iterable[int]) -> SubsystemSpec:
    """The parabolic subsystem spanned by the selected simple roots (1-based)."""
    idx = tuple(sorted(set(int(i) for i in simple_indices)))
    for i in idx:
        if not 1 <= i <= len(rs.simple_roots):
            raise InvalidSubsystem(f"simple root index {i} out of range 1..{len(rs.simple_roots)}")
    chosen = {i - 1 for i in idx}
    h_positive = [
        a
        for a in rs.positive_roots
        if all(c == 0 or k in chosen for k, c in enumerate(rs.simple_coordinates(a)))
    ]
    h_simple, complement = _validate(rs, h_positive)
    return SubsystemSpec(rs, tuple(h_positive), tuple(complement), tuple(h_simple), idx, True)


def subsystem_from_roots(rs: RootSystem, root_indices: Iterable[int]) -> SubsystemSpec:
    """Expert mode: H given by 0-based indices into ``rs.positive_roots``."""
    idx = sorted(set(int(i) for i in root_indices))
    for i in idx:
        if not 0 <= i < len(rs.positive_roots):
            raise InvalidSubsystem(f"positive root index {i} out of range 0..{len(rs.positive_roots) - 1}")
    h_positive = [rs.positive_roots[i] for i in idx]
    h_simple, complement = _validate(rs, h_positive)
    simple_set = set(rs.simple_roots)
    parabolic = all(b in simple_set for b in h_simple)
    return SubsystemSpec(rs, tuple(h_positive), tuple(complement), tuple(h_simple), None, parabolic)


def parse_subsystem_file(text: str) -> list[int]:
    indices = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            indices.append(int(line))
        except ValueError:
            raise InvalidSubsystem(f"line {lineno}: expected a root index, got {line!r}") from None
    return indices


def read_subsystem_file(rs: RootSystem, path: str | Path) -> SubsystemSpec:
    return subsystem_from_roots(rs, parse_subsystem_file(Path(path).read_text()))


@dataclass(frozen=True)
class CosetRep:
    """Minimal representative of a coset ``w W_H``, i.e. a T-fixed point of G/H.

    For family-A parabolics ``blocks`` lists, per block of H, the 1-based
    images of that block; for a Grassmannian this is the pair ``(I, J)``.
    """

    element: WeylElement
    index: int
    length: int
    blocks: tuple[tuple[int, ...], ...] | None = None

    @property
    def image_multiindex(self):
        return self.blocks


def _type_a_blocks(sub: SubsystemSpec) -> list[list[int]] | None:
    if sub.parent.family != "A" or sub.simple_indices is None:
        return None
    blocks = [[0]]
    for i in range(1, sub.parent.rank):
        if i in sub.simple_indices:  # simple root i joins coordinates i-1 and i
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return blocks


def coset_reps(sub: SubsystemSpec) -> list[CosetRep]:
    """One minimal-length representative per coset of W_H in W_G.

    Representatives are found by walking up from the identity with left
    multiplication by simple reflections; the set ``{w : w Delta+(H) in
    Delta+}`` is closed under removing left descents, so the walk reaches all
    of it without enumerating the whole group.
    """
    rs = sub.parent
    simple = rs.simple_reflections()
    start = WeylElement.identity(rs.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in simple:
            v = s * w
            if v in seen or not sub.contains_positive(v):
                continue
            seen.add(v)
            queue.append(v)
    found = sorted(seen, key=lambda w: _sort_key(rs, w))
    blocks = _type_a_blocks(sub)
    reps = []
    for i, w in enumerate(found):
        img = None
        if blocks is not None:
            img = tuple(tuple(sorted(w.perm[j] + 1 for j in b)) for b in blocks)
        reps.append(CosetRep(w, i, length_and_sign(rs, w)[0], img))
    return reps


def subgroup_elements(sub: SubsystemSpec) -> list[WeylElement]:
    """All of W_H, generated by the reflections in the simple roots of H."""
    gens = sub.simple_reflections()
    start = WeylElement.identity(sub.parent.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = s * w
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return sorted(seen, key=lambda w: w.one_line())


def subgroup_length(sub: SubsystemSpec, h: WeylElement) -> int:
    hset = set(sub.h_positive)
    return sum(1 for b in sub.h_positive if h.act(b) not in hset)
