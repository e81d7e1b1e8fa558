"""Discretized path spaces, additive forms and decomposable product systems."""

from ._pathspace import (
    AdditiveForm,
    B_limit,
    DecompSection,
    DecompVector,
    PathspaceError,
    StepPath,
    concat_box,
    cocycle1_residual,
    cpd_check,
    dv_inner,
    eval_form,
    exp_gram,
    gram,
    l2_inner,
    le_branch,
    lemma911,
    min_eigenvalue,
    model_log_oracle,
    pd_root_check,
    propagator,
    solve_cocycle1,
    trivialize_multiplier,
    trivialize_section,
    trunc_exp,
)

__all__ = [
    "AdditiveForm",
    "B_limit",
    "DecompSection",
    "DecompVector",
    "PathspaceError",
    "StepPath",
    "concat_box",
    "cocycle1_residual",
    "cpd_check",
    "dv_inner",
    "eval_form",
    "exp_gram",
    "gram",
    "l2_inner",
    "le_branch",
    "lemma911",
    "min_eigenvalue",
    "model_log_oracle",
    "pd_root_check",
    "propagator",
    "solve_cocycle1",
    "trivialize_multiplier",
    "trivialize_section",
    "trunc_exp",
]
