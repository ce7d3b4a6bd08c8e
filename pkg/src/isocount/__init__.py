"""Counting elliptic curves over Q with a rational cyclic N-isogeny, ordered by naive height."""

from .analytic import GrowthFit, Region, TABLE1, davenport_count, fit_growth, summatory_b4
from .counting import (CensusResult, census, count_j0_3, count_quadric5, param_count,
                       stack_count_pairs, stack_count_triples)
from .curves import Curve, j_invariant, minimize, naive_height, scalar_mul, twist
from .families import UnsupportedLevel, family_curve, jmap, table2_invariants
from .isogeny import has_isogeny, has_isogeny_routeB, rational_roots, two_isogenous_curves
from .numtheory import b_four, factorize, is_dagger_minimal, power_free_decompose, r2, val_p

__version__ = "0.1.0"
