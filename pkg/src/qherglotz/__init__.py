"""Quaternionic Herglotz function toolkit.

Matrix-valued Herglotz data over the quaternions: quaternion and
quaternionic-matrix arithmetic, the complex embedding and its spectral
theory, Hermitian moment sequences with Toeplitz positivity tests and
Schur-complement extension, discrete q-positive measures, Pontryagin
space realizations, and slice function evaluation with reproducing
kernels.
"""

from .errors import (BlockNotPSD, CompletionFailure, DegenerateSeed,
                     FrameError, InputError, NoConvergence, NotCoisometry,
                     NotHermitian, NotJUnitary, NotPD, NotPSD, NotQPositive,
                     NoUnitaryAlignment, OutOfDomain, QHError, ShapeError,
                     SpanDeficient, SupportExceeded, SupportOverlap,
                     SymmetryViolation)
from .quatcore import (QMatrix, Quaternion, adjoint, chi_embed, chi_inverse,
                       embed_in_plane, frame_complete, imaginary_unit,
                       is_unit_imaginary, qhstack, qmul, qvstack,
                       random_qmatrix, scale_of, split_coefficient)
from .qlinalg import (Inertia, extract_contraction, hermitian_eigen, op_norm,
                      pinv_psd, psd_complete_3x3, psd_sqrt)
from .moments import (HermitianSequence, build_toeplitz, caratheodory_extend,
                      is_positive_definite, negative_squares)
from .measures import (DiscreteQPositiveMeasure, MeasureAtom,
                       MixedMeasurePair, Violation, card_supp,
                       herglotz_synthesize, random_q_positive_measure,
                       synthesize_indefinite, total_mass_bound,
                       validate_q_positive)
from .realize import (PontryaginRealization, SignatureGram,
                      align_realizations, dilate_coisometry, moment,
                      moment_sequence, random_j_unitary,
                      verify_negative_squares_bound)
from .slicefn import (CaratheodoryFunction, SeriesValue, SliceAtom,
                      SliceMeasure, SlicePowerSeries, caratheodory_kernel,
                      coefficient_from_measure, eval_series,
                      herglotz_kernel_global, herglotz_kernel_slice,
                      kernel_negative_squares, phi_from_sequence,
                      representation_formula, synthesize_slice)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "QHError", "ShapeError", "SymmetryViolation", "FrameError",
    "NotHermitian", "NoConvergence", "NotPSD", "BlockNotPSD",
    "SupportExceeded", "NotPD", "CompletionFailure", "NotQPositive",
    "SupportOverlap", "NotJUnitary", "NotCoisometry", "DegenerateSeed",
    "SpanDeficient", "NoUnitaryAlignment", "OutOfDomain", "InputError",
    # quaternion core
    "Quaternion", "QMatrix", "qmul", "imaginary_unit", "is_unit_imaginary",
    "frame_complete", "split_coefficient", "embed_in_plane", "adjoint",
    "chi_embed", "chi_inverse", "qhstack", "qvstack", "scale_of",
    "random_qmatrix",
    # linear algebra
    "Inertia", "hermitian_eigen", "psd_sqrt", "pinv_psd",
    "extract_contraction", "psd_complete_3x3", "op_norm",
    # moment sequences
    "HermitianSequence", "build_toeplitz", "is_positive_definite",
    "negative_squares", "caratheodory_extend",
    # measures
    "MeasureAtom", "Violation", "DiscreteQPositiveMeasure",
    "MixedMeasurePair", "validate_q_positive", "herglotz_synthesize",
    "synthesize_indefinite", "card_supp", "total_mass_bound",
    "random_q_positive_measure",
    # realizations
    "SignatureGram", "PontryaginRealization", "moment", "moment_sequence",
    "verify_negative_squares_bound", "dilate_coisometry", "random_j_unitary",
    "align_realizations",
    # slice functions
    "SeriesValue", "SlicePowerSeries", "eval_series",
    "representation_formula", "herglotz_kernel_slice",
    "herglotz_kernel_global", "SliceAtom", "SliceMeasure",
    "synthesize_slice", "coefficient_from_measure", "CaratheodoryFunction",
    "phi_from_sequence", "caratheodory_kernel", "kernel_negative_squares",
]
