"""Time-frequency analysis on finite abelian groups.

Finite models Z_N1 x ... x Z_Nd carry the whole duality apparatus exactly:
sampling against periodization, Poisson summation, Dirac-comb transforms,
STFT concentration norms, Gabor frames with canonical dual windows, and
computable surrogates for weak-star convergence of distributions.
"""

import os as _os

# MILDSPEC_THREADS caps BLAS/FFT worker pools; must land before numpy loads
_threads = _os.environ.get("MILDSPEC_THREADS")
if _threads and _threads.isdigit():
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)
del _os, _threads

from .approx import (
    BUPU,
    BUPU_SHAPES,
    QuasiResult,
    SampleArray,
    SamplingBound,
    make_bupu,
    quasi_interpolate,
    sampling_bound,
    semidiscrete_extension,
    tensor_extension,
)
from .errors import (
    GroupMismatchError,
    NotAFrame,
    NotPeriodic,
    SchemaError,
    SupportViolation,
)
from .fourier import (
    COUNTING,
    UNITARY,
    DualityResult,
    FourierConvention,
    PoissonResult,
    adjoint_restriction,
    comb_ft,
    dft,
    dft_quotient,
    dft_subgroup,
    duality_sampling_periodization,
    idft,
    mild_ft,
    pair,
    poisson_check,
    restriction,
    weil_map,
)
from .gabor import (
    FRAME_TOL,
    CoefficientArray,
    GaborSystem,
    STFTGrid,
    TFLattice,
    canonical_dual,
    frame_bounds,
    frame_operator,
    gabor_coefficients,
    gabor_synthesis,
    s0_norm,
    s0prime_norm,
    stft,
)
from .groups import (
    GroupElement,
    GroupSpec,
    QuotientSpec,
    Subgroup,
    all_subgroups,
    annihilator,
    character,
    character_vector,
    full_subgroup,
    grid_subgroup,
    quotient,
    subgroup_generated,
    trivial_subgroup,
)
from .mild import (
    ConvergenceReport,
    DistributionSequence,
    PeriodicReport,
    comb_characterization,
    convergence_report,
    default_probes,
    mild_deviation_coeff,
    mild_deviation_pairing,
    mild_deviation_stft,
    periodize_analysis,
    refining_comb_sequence,
    support,
)
from .signals import (
    QuotientSignal,
    Signal,
    SubgroupSignal,
    WeightedComb,
    comb_to_signal,
    dirac,
    dirac_comb,
    finite_gaussian,
    modulate,
    pure_frequency,
    random_signal,
    signal_to_comb,
    tf_shift,
    translate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
