"""Exact symbolic computations in the interpolating quantized enveloping
algebras U_q(g; eps, eta): normal forms, the cogroupoid structure, Verma
module forms, central characters, rank-one quantum spaces, and the classical
contractions g_eps."""

from .root_data import EpsChar, LambdaChar, RootDatum, build_root_datum
from .scalars import LaurentFrac, PointContext, SymbolicContext
from .qea import QEA, Element

__all__ = ["EpsChar", "LambdaChar", "RootDatum", "build_root_datum", "LaurentFrac",
           "PointContext", "SymbolicContext", "QEA", "Element"]
