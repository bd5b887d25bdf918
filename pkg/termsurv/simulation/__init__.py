from .sampler import (
    StudyDesign,
    expected_category_proportions,
    generate_dataset,
    mc_joint_survival,
    mc_tail_prob,
    observe,
    sample_pair,
    sample_pairs,
    sample_positive_stable,
    spawn_generators,
)

__all__ = [
    "StudyDesign",
    "expected_category_proportions",
    "generate_dataset",
    "mc_joint_survival",
    "mc_tail_prob",
    "observe",
    "sample_pair",
    "sample_pairs",
    "sample_positive_stable",
    "spawn_generators",
]
