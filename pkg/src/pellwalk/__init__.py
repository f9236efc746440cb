"""Exact solutions of Pell's equation by walking balanced binary quadratic forms."""

from pellwalk.cycle import (
    CycleResult,
    NegPellCertificate,
    PellSolution,
    VerificationReport,
    act,
    brute_force_fundamental,
    brute_force_negative,
    iterate,
    replay,
    solve,
    validate_d,
    verify_cycle,
    walk_single_step,
)
from pellwalk.errors import (
    DIsSquare,
    DNotPositive,
    InternalStateError,
    InvalidD,
    PellError,
    UnbalancedFormError,
)
from pellwalk.forms import (
    Direction,
    Form,
    Mat2,
    Run,
    StepWord,
    classify_step,
    determinant,
    invert_step,
    isqrt,
    mat_of_word,
    max_run,
    run_left,
    run_right,
    step_left,
    step_right,
    total,
)
from pellwalk.stern_brocot import Fraction, convergents, fraction_of_word, prefix_value

__version__ = "0.1.0"
