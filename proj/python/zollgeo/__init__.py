"""Verification toolkit for spacelike surfaces all of whose spacelike
geodesics close: spec ingestion and validation, closure residual
quadratures, geodesic shooting and ODE integration, and the conformal
boundary layer, bound one-to-one from the C++ core."""

from ._zollgeo import *  # noqa: F401,F403
from ._zollgeo import __version__  # noqa: F401
