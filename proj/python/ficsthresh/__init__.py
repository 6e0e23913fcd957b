"""Multilevel Otsu thresholding optimized by cuckoo search variants."""

from ._core import (
    Algorithm,
    FriedmanResult,
    GrayImage,
    Histogram,
    ObjectiveContext,
    OptimizerConfig,
    PairwiseVerdict,
    PsnrResult,
    RngStream,
    RunRecord,
    SampleSummary,
    algorithm_from_string,
    build_context,
    compute_histogram,
    decode_position,
    default_config,
    derive_seed,
    exhaustive_search,
    friedman_mean_ranks,
    histogram_from_counts,
    levy_step,
    load_pgm,
    mantegna_sigma_u,
    otsu_value,
    psnr,
    ring_neighbors,
    run,
    save_pgm,
    segment_image,
    ssim,
    summarize,
    wilcoxon_rank_sum,
)

__all__ = [
    "Algorithm",
    "FriedmanResult",
    "GrayImage",
    "Histogram",
    "ObjectiveContext",
    "OptimizerConfig",
    "PairwiseVerdict",
    "PsnrResult",
    "RngStream",
    "RunRecord",
    "SampleSummary",
    "algorithm_from_string",
    "build_context",
    "compute_histogram",
    "decode_position",
    "default_config",
    "derive_seed",
    "exhaustive_search",
    "friedman_mean_ranks",
    "histogram_from_counts",
    "levy_step",
    "load_pgm",
    "mantegna_sigma_u",
    "otsu_value",
    "psnr",
    "ring_neighbors",
    "run",
    "save_pgm",
    "segment_image",
    "ssim",
    "summarize",
    "wilcoxon_rank_sum",
]
