"""Bratteli diagrams, diagram algebras, and exact Fourier transforms on chains."""

from .combinat import (
    BratteliDiagram,
    ChainKind,
    Partition,
    QuiverShape,
    algebra_dim,
    branch,
    build_bratteli,
    catalan,
    double_factorial,
    general_bound,
    hom_count_brute,
    hom_count_closed,
    jump,
    mult_M,
    paper_bounds,
    symdiff,
)
from .diagrams import (
    Diagram,
    GeneratorWord,
    LoopProduct,
    all_diagrams,
    check_relations,
    diagram_mul,
    evaluate,
    factor_map,
    factor_set,
    generator,
    identity_diagram,
    word_of,
)
from .pathalg import PathAlgebraElement, embed, enumerate_paths, gt_index, pa_mul
from .reps import (
    DEFAULT_Q,
    AdaptedRep,
    adapted_rep,
    gram_dual,
    local_blocks,
    oracle_irreps,
    rep_of_diagram,
    trace_tau,
    verify_semisimple,
)
from .transform import (
    AlgebraElement,
    FourierImage,
    OpCounter,
    SovPlan,
    convolution_check,
    fft_naive,
    fft_sov,
    inverse_ft,
    random_element,
    sov_plan,
)

__version__ = "0.1.0"
