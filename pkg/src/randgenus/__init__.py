"""Orientable genus of graphs, and of random regular graphs in particular."""

from .anneal import AnnealConfig, heuristic_genus
from .embedding import (
    Embedding,
    RotationSystem,
    canonical_rotation,
    face_inequality_check,
    trace_faces,
    validate_rotation,
)
from .experiments import ExperimentRecord, check_alpha_identity, run_sweep, summarize
from .graph import (
    CycleCensus,
    DartGraph,
    build_graph,
    count_short_cycles,
    girth,
    is_connected,
    short_cycle_bound,
)
from .random_graph import SampleConfig, sample_batch, sample_regular
from .search import (
    GenusResult,
    euler_lower_bound,
    exact_genus,
    max_genus_upper_bound,
    theoretical_alpha,
)

__all__ = [
    "AnnealConfig", "CycleCensus", "DartGraph", "Embedding", "ExperimentRecord",
    "GenusResult", "RotationSystem", "SampleConfig", "build_graph", "canonical_rotation",
    "check_alpha_identity", "count_short_cycles", "euler_lower_bound", "exact_genus",
    "face_inequality_check", "girth", "heuristic_genus", "is_connected", "short_cycle_bound",
    "max_genus_upper_bound", "run_sweep", "sample_batch", "sample_regular", "summarize",
    "theoretical_alpha", "trace_faces", "validate_rotation",
]
