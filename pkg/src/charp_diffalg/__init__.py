"""Exact finite computations in characteristic-p differential algebra."""

from .errors import *  # noqa: F401,F403
from .field import FieldElement, PrimeField, binomial_mod_p, multiindex_binomial
from .hurwitz import TruncatedHurwitzSeries, parse_series
from .diffpoly import DerivativeVariable, DiffPolynomial, dp_parse
from .findim import FinDimDiffAlgebra, SubspaceIdeal, classify_ideal, validate
from .spectra import build_qspec, build_spec, check_homeomorphism, verify_topology_axioms
from .taylor import check_universal, taylor_hom
from .geometry import HurwitzPoint, RegularMap, solve_system, vanishing_ideal

__version__ = "0.1.0"
