"""Left and right fractional derivatives of piecewise polynomials and the
left/right Jumarie difference as a measure of non-differentiable points."""

from .characterize import (
    KnotFinding,
    TransitionReport,
    characterize_function,
    characterize_signal,
    detect_knots,
    phase_indicator,
)
from .closedform import (
    FracExpression,
    FractionalOrder,
    Role,
    Side,
    eval_expression,
    jumarie_left_closed,
    jumarie_right_closed,
    power_rule,
)
from .numeric import (
    GridSpec,
    QuadSpec,
    caputo_derivative,
    gl_derivative,
    gl_right_derivative,
    jumarie_left_numeric,
    jumarie_right_numeric,
    rl_integral,
    rl_left_derivative,
    rl_right_derivative,
    rl_right_integral,
    sample_grid,
)
from .piecewise import (
    InputError,
    PiecewiseFunction,
    SampleSeries,
    derivative_jump,
    evaluate,
    from_samples,
    translate,
)
from .specialfn import beta, gamma, gl_weights

__version__ = "0.1.0"
