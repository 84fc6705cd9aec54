"""Numerics for fractional Paley-Wiener spaces PW^s_a and Bernstein spaces B^{s,p}_a."""
__version__ = "0.1.0"

from .backend import BACKEND
from .errors import (CriticalExponentError, FracPWError, GridMismatchError,
                     InvalidArgument, NumericError, ShiftRangeError)
from .quadrature import SpectralGrid, build_grid, weighted_inner, weighted_norm
from .pwcore import (FracParams, FracPWFunction, SpectralDensity, make_params,
                     synth_eval, frac_laplacian, inverse_laplacian, shift_imaginary,
                     project, band_mask, pw_norm, esp_norm, esp_norm_info, derivative)
from .kernels import kernel_eval, basis_psi
from .sampling import (SampleSet, sample_laplacian, sample_plain,
                       reconstruct_from_samples, norm_from_samples, sinc_eval)
