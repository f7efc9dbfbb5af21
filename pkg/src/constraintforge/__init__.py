"""Spectral construction of asymptotically flat extensions of maximal
Einstein constraint data: Hodge-Fourier calculus on spheres, exterior-domain
radial solvers, the divergence-free tracefree tensor extension, the
prescribed-scalar-curvature solver, and the coupled alternating iteration.
"""

__version__ = "0.1.0"
