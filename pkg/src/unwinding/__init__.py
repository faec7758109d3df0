"""Phase dynamics unwinding (iterated Blaschke factorization) and its windowed variant."""

from .blaschke import (
    BlaschkeFactorization,
    DiskField,
    RootSet,
    blaschke_if,
    blaschke_template,
    eval_blaschke_product,
    factorize,
    hardy_projection,
    poisson_extend,
    root_region_map,
    winding_number,
)
from .errors import (
    Converged,
    CurveThroughOriginError,
    DegenerateSignalError,
    GenerationError,
    UndefinedMetricError,
)
from .metrics import (
    DecompMetrics,
    PairedTestResult,
    am_nrmse,
    match_components,
    phase_sd,
    recon_nrmse,
    score,
    wilcoxon_signed_rank,
)
from .pdu import (
    PduConfig,
    PduDecomposition,
    cumsum_decompose,
    decompose,
    decompose_real,
    lowpass,
    reconstruct,
    unwind_step,
)
from .simulator import AhmParams, AhmRealization, preset, synthesize
from .spectral import (
    CircleSignal,
    RealSignal,
    Spectrum,
    analytic_projection,
    cumulative_sum,
    downsample,
    flip_periodize,
    polynomial_detrend,
    spectral_derivative,
    unflip,
    upsample,
)
from .windowed import (
    SegmentPlan,
    WindowSpec,
    build_partition,
    extract_component,
    segment_and_dilate,
    stitch,
    taper_window,
    windowed_decompose,
)

__version__ = "0.1.0"
