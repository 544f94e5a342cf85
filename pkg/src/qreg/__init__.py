"""Exact rank-2 linear representations of q-regular sequences and their
digit-reversal certificates."""
from .certificate import (Certificate, NoCertificateError, ResidualReport, SolveFailure, check,
                          conjugated_entries, proof_identity_left, proof_identity_right, residual,
                          s2s3_relation, seed_is_fixed, solve, verify_reversal)
from .digits import DigitWord, digit_sum, from_digits, reverse, to_digits
from .linrep import LinearRep, eval_pair, recurrence_oracle, word_value
from .rings import (BiPoly, ComplexApprox, Mat2, QuadExt, Vec2, adjoin_sqrt, field_inv,
                    json_value, parse_exact, poly_eval, serialize)
from .sequences import (ParametricFamily, RunLengths, binary_runs, cf_numerator,
                        gamma_certificate, gamma_empirical, gamma_rep, growth_blocks,
                        northshield_certificate, northshield_rep, northshield_symmetry,
                        parametric_certificate, parametric_rep, reversed_cf_same_numerator,
                        stern_certificate, stern_number, stern_poly, stern_rep)

__version__ = "0.1.0"
