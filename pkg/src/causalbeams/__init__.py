"""causalbeams: complex-source pulsed beams and their singular sources.

Numerical evaluation of retarded/advanced propagators extended to complex
spacetime, the oblate-spheroidal geometry of the complex distance, singular
disk source distributions with independent quadrature oracles, closed-form
Fourier-domain source symbols, a generalized angular-spectrum (Weyl-type)
synthesis of time-harmonic complex-source beams, and electromagnetic
wavelet dyadics built from Hertz potentials.
"""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
