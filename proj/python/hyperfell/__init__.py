"""Hyperspace topology probes for partially ordered Euclidean scenes."""

from hyperfell._hyperfell import (
    Scene,
    builtin_scene,
    builtin_scene_ids,
    classify,
    hausdorff_distance,
    join_ex35,
    meet,
    meet_ex42,
    open_box_scene,
    parse_scene,
    print_scene,
    probe,
    run_repro,
    sample_ideal,
    __version__,
)

__all__ = [
    "Scene",
    "builtin_scene",
    "builtin_scene_ids",
    "classify",
    "hausdorff_distance",
    "join_ex35",
    "meet",
    "meet_ex42",
    "open_box_scene",
    "parse_scene",
    "print_scene",
    "probe",
    "run_repro",
    "sample_ideal",
    "__version__",
]
