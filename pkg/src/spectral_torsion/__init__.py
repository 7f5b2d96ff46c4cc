"""Exact symbolic engine for spectral torsion and one-form functionals of the
deformed de Rham-Hodge operator a0 d + b0 delta + i c(X) on 4-manifolds."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalar_ring import A0, B0, I, ONE, ZERO, GaussRat, ParamScalar, Params, SYMBOLIC
from .results import Comparison, ResidueReport, SphereValue
