"""Minimal-surface triples on closed hyperbolic surfaces.

Thin wrapper over the compiled module: meshes, the conformal-factor
equation, curvature classification, equidistant foliations, stability
spectra, and moduli-space exploration.
"""

try:
    from ._wafcore import *  # noqa: F401,F403  (wheel layout)
    from ._wafcore import __version__  # noqa: F401
except ImportError:
    from _wafcore import *  # noqa: F401,F403  (in-tree build on sys.path)
    from _wafcore import __version__  # noqa: F401
