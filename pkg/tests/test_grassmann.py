import itertools
import random
from fractions import Fraction

import pytest

from weylsum.errors import DegreeMismatch, SpaceMismatch
from weylsum.grassmann import (
    as_grassmannian,
    char_number,
    char_number_direct,
    chern,
    gaussian_binomial,
    grassmannian,
    numeric_oracle,
    require_grassmannian,
    schubert_degree_oracle,
)
from weylsum.localize import integrate, make_class, make_space
from weylsum.polyalg import Polynomial, elem_sym
from weylsum.rootsys import build_root_system, subsystem


def test_grassmannian_examples():
    for (k, n), (d, pts) in {(1, 3): (2, 3), (2, 4): (4, 6), (1, 2): (1, 2)}.items():
        spec = grassmannian(k, n)
        assert spec.dim_complex == spec.space.dim_complex == d
        assert spec.space.coset_count == pts


def test_grassmannian_h_matches_block_roots():
    spec = grassmannian(2, 5)
    h = {a.coeffs for a in spec.space.h.h_positive}
    expected = set()
    for i, j in itertools.combinations(range(5), 2):
        if (i < 2 and j < 2) or (i >= 2 and j >= 2):
            c = [0] * 5
            c[i], c[j] = 1, -1
            expected.add(tuple(c))
    assert h == expected


@pytest.mark.parametrize("k,n", [(0, 3), (3, 3), (4, 3)])
def test_grassmannian_bounds(k, n):
    with pytest.raises(ValueError):
        grassmannian(k, n)


def test_chern_examples():
    g24 = grassmannian(2, 4)
    assert str(chern("S", 1, g24)) == "y1 + y2"
    assert str(chern("Q", 2, g24)) == "y3*y4"
    assert chern("S", 0, grassmannian(1, 3)) == Polynomial.one(3, "y")
    with pytest.raises(ValueError):
        chern("S", 3, g24)
    with pytest.raises(ValueError):
        chern("T", 1, g24)


def test_char_number_examples():
    assert char_number(grassmannian(1, 3), [2]) == 1
    assert char_number(grassmannian(2, 4), [4, 0]) == 2
    assert char_number(grassmannian(2, 4), [0, 2]) == 1


def test_char_number_point_class_by_oracle():
    spec = grassmannian(2, 4)
    pt = [Fraction(0), Fraction(1), Fraction(5), Fraction(-3, 2)]
    assert numeric_oracle(spec, [0, 2], pt) == 1


def test_degree_condition_is_weighted():
    spec = grassmannian(2, 4)
    # sum m_r = 4 but sum r*m_r = 6
    with pytest.raises(DegreeMismatch) as exc:
        char_number(spec, [2, 2])
    assert exc.value.expected == 4 and exc.value.found == 6
    with pytest.raises(ValueError):
        char_number(spec, [1, 1, 1])
    with pytest.raises(ValueError):
        char_number(spec, [-2, 3])


def _weighted_partitions(d, k):
    for m in itertools.product(range(d + 1), repeat=k):
        if sum(r * x for r, x in enumerate(m, 1)) == d:
            yield list(m)


@pytest.mark.parametrize("orientation", ["complex", "positive"])
@pytest.mark.parametrize("k,n", [(1, 2), (1, 4), (2, 4), (2, 5), (3, 5)])
def test_dual_path_equality(k, n, orientation):
    spec = grassmannian(k, n, orientation)
    for m in _weighted_partitions(k * (n - k), k):
        a = char_number(spec, m)
        assert a == char_number_direct(spec, m)
        pt = [Fraction(x) for x in random.Random(k * 10 + n).sample(range(-30, 30), n)]
        assert a == numeric_oracle(spec, m, pt)


@pytest.mark.parametrize("k,n", [(1, 2), (1, 5), (2, 4), (2, 5), (3, 5)])
def test_degree_identity(k, n):
    d = k * (n - k)
    assert char_number(grassmannian(k, n), [d]) == (-1) ** d * schubert_degree_oracle(k, n)
    assert char_number(grassmannian(k, n, "positive"), [d]) == schubert_degree_oracle(k, n)


def test_schubert_degree_examples():
    assert schubert_degree_oracle(2, 4) == 2
    assert all(schubert_degree_oracle(1, n) == 1 for n in range(2, 9))
    assert schubert_degree_oracle(3, 6) == 42
    with pytest.raises(ValueError):
        schubert_degree_oracle(3, 3)


@pytest.mark.parametrize("orientation", ["complex", "positive"])
@pytest.mark.parametrize("k,n", [(1, 3), (2, 3), (1, 4), (3, 4), (2, 4), (2, 5)])
def test_complementary_duality(k, n, orientation):
    d = k * (n - k)
    s_side = grassmannian(k, n, orientation)
    q_side = grassmannian(n - k, n, orientation)
    pt = [Fraction(x) for x in (0, 1, 5, -7, 11)[:n]]
    for m in _weighted_partitions(d, min(k, n - k)):
        a = char_number(s_side, m, "S")
        b = numeric_oracle(q_side, m, pt, "Q")
        assert a == (-1) ** d * b
        assert b == char_number(q_side, m, "Q")


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5)])
def test_total_symmetric_classes_integrate_to_zero(k, n):
    rng = random.Random(n)
    spec = grassmannian(k, n)
    d = spec.dim_complex
    for j in range(1, min(n, d) + 1):
        # h: a random W_H-invariant of degree d - j built from Chern classes of S and Q
        h = Polynomial.zero(n, "y")
        for ms in _weighted_partitions(d - j, k):
            term = Polynomial.constant(rng.randint(-4, 4), n, "y")
            for r, x in enumerate(ms, 1):
                term = term * chern("S", r, spec) ** x
            h = h + term
        b = elem_sym(n, range(n), j, "y")
        assert integrate(make_class(spec.space, b * h)) == 0


def test_as_grassmannian():
    g = build_root_system("A", 4)
    assert as_grassmannian(make_space(g, subsystem(g, {1, 3}))).k == 2
    assert as_grassmannian(make_space(g, subsystem(g, {1}))) is None
    b = build_root_system("B", 2)
    with pytest.raises(SpaceMismatch):
        require_grassmannian(make_space(b, subsystem(b, {1})))


@pytest.mark.parametrize("n", range(1, 7))
def test_gaussian_binomial_small(n):
    for k in range(0, n + 1):
        coeffs = gaussian_binomial(n, k)
        # [n choose k]_q counts k-subsets of {0..n-1} by sum(I) - k(k-1)/2
        by_weight = [0] * (k * (n - k) + 1)
        for subset in itertools.combinations(range(n), k):
            by_weight[sum(subset) - k * (k - 1) // 2] += 1
        assert coeffs == by_weight


def test_gaussian_binomial_known():
    assert gaussian_binomial(4, 2) == [1, 1, 2, 1, 1]
    assert gaussian_binomial(5, 2) == [1, 1, 2, 2, 2, 1, 1]
