"""Spectral analysis of thermoelastic systems with Cattaneo heat conduction.

Thin wrapper over the C++ core; see ``cattaneo._core`` for the full list of
functions.
"""

from ._core import (
    Error,
    FitRefused,
    InvalidParameters,
    Parameters,
    QuarticSolveError,
    UnsupportedNormalization,
    __version__,
    char_coeffs,
    classify_region,
    decay_envelope,
    decay_exponents,
    default_decay_window,
    fit_powerlaw,
    generator,
    modal_eigenvalues,
    mode_roots,
    predicted_branches,
    resolvent_norm,
    run_acceptance,
    scan_resolvent,
    scan_resolvent_peaks,
    semigroup_observable,
    sharpness_product,
    solve_quartic,
    spectrum,
    static_inverse_norm,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
