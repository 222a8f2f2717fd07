"""Codes over Z4, their Construction A4 lattices, and wiretap secrecy metrics.

Submodules:
    codes          exact Z4 linear algebra: standard form, duals, enumeration
    kernels        codeword census (compiled extension or numpy fallback)
    binary         F2 linear codes
    enumerators    swe / we / jwe polynomials and MacWilliams transforms
    constructions  nested binary sums, Reed-Muller chains, double circulant
                   codes and their odd extensions
    theta          exact truncated q-series and Jacobi theta functions
    secrecy        secrecy gain, beta coefficients, bounds, flatness factor
    search         exhaustive family sweeps ranked by secrecy gain
    cli            the `z4lat` command line front end
"""

from .kernels import HAVE_COMPILED

__version__ = "0.1.0"
__all__ = ["HAVE_COMPILED", "__version__"]
