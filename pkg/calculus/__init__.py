from .digits import BitPrefix, DigitDelta, bit_at, f_n, flip_bit_u, flip_bits, freq_f_n, h_n, induced_deltas, prefix_bits
from .dependency import RadiusResult, cutoff_for_sum, dep_radius_N, dep_radius_m
from .differences import (
    DiffReport, FlipPartial, QuotientContext, UDecomposition, hybrid_point, partial_diff_f,
    partial_diff_h_at_flip, partial_quotient, partial_term_h, total_diff_f, total_diff_h, total_diff_u
)
