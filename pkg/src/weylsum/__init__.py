"""Exact characteristic numbers of homogeneous spaces G/H by fixed-point localization."""
from .errors import (
    DegreeMismatch,
    DenominatorVanishes,
    ExprSyntaxError,
    InvalidSubsystem,
    NotInvariant,
    NotPolynomial,
    RankMismatch,
    SpaceMismatch,
    UnsupportedRootSystem,
    WeylsumError,
)
from .exprparse import compile, parse, render
from .grassmann import char_number, chern, grassmannian, schubert_degree_oracle
from .localize import (
    equivariant_integrate,
    euler_at,
    euler_characteristic,
    gt_antisym_integrate,
    integrate,
    make_class,
    make_space,
    poincare_polynomial,
    restrict,
    verify_relation,
)
from .polyalg import LinearForm, Polynomial, RatFunc, act_poly, elem_sym, eval_point, power_sum
from .rootsys import build_root_system, coset_reps, subsystem, weyl_elements

__version__ = "0.1.0"
