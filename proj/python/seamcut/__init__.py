"""Seam-aware blending of a stylized object instance into its photograph."""

from ._seamcut import (
    EnergyModel,
    PixelState,
    SeamcutError,
    SolveResult,
    TriMap,
    blend,
    build_energy,
    composite,
    compute_band,
    distance_transform,
    load_image,
    load_mask,
    save_image,
    save_mask,
    select_instance,
    solve_icm,
    solve_mincut,
    solve_naive,
    solve_oracle,
    stylize,
)

__all__ = [
    "EnergyModel",
    "PixelState",
    "SeamcutError",
    "SolveResult",
    "TriMap",
    "blend",
    "build_energy",
    "composite",
    "compute_band",
    "distance_transform",
    "load_image",
    "load_mask",
    "save_image",
    "save_mask",
    "select_instance",
    "solve_icm",
    "solve_mincut",
    "solve_naive",
    "solve_oracle",
    "stylize",
]
