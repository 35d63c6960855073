"""Exact arithmetic for Romik's sequence d(n) and the congruences it satisfies."""
from .dseq import d, d_recursive, d_values, d_via_inverse, d_via_poly
from .errors import RomikError
from .padic import carries_add, digit_sum, vp, vp_binomial, vp_factorial
from .rmatrix import R_entry, Rinv_block, Rinv_lagrange, Rinv_y, r_entry
from .seqcore import pi1, pi3, taylor_poly, u, v, v_x

__all__ = [
    "d", "d_recursive", "d_values", "d_via_inverse", "d_via_poly", "RomikError",
    "carries_add", "digit_sum", "vp", "vp_binomial", "vp_factorial",
    "R_entry", "Rinv_block", "Rinv_lagrange", "Rinv_y", "r_entry",
    "pi1", "pi3", "taylor_poly", "u", "v", "v_x",
]
