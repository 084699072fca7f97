"""p-adic fields, Tate curves, ball and lattice calculus."""

from ._core import (
    Element,
    Field,
    PadicError,
    TateCurve,
    atypical,
    ball_next,
    cli,
    exp,
    kernel,
    log,
    mult_dependence,
    rank,
    relation_search,
    rotund_check,
    run_suite,
    rv_class,
    same_ball,
    smith_normal_form,
    suite_names,
    verify_homomorphism,
)

__all__ = [
    "Element",
    "Field",
    "PadicError",
    "TateCurve",
    "atypical",
    "ball_next",
    "cli",
    "exp",
    "kernel",
    "log",
    "mult_dependence",
    "rank",
    "relation_search",
    "rotund_check",
    "run_suite",
    "rv_class",
    "same_ball",
    "smith_normal_form",
    "suite_names",
    "verify_homomorphism",
]
