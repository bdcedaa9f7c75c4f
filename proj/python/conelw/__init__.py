"""Green's kernel, growth-condition checks and a shooting solver for

    y'(t) - p(t) y(t) = sum_i f_i(t, y(t)),
    lambda y(0) = y(1) + sum_j Phi_j(tau_j, y(tau_j)).
"""

from ._core import (
    ConelwError,
    EvalError,
    Expr,
    GreensKernel,
    InadmissibleLambda,
    Instance,
    InstanceError,
    IvpBlowup,
    ParseError,
    SolutionCurve,
    apply_K,
    check_hypotheses,
    classify,
    derive_constants,
    integrate,
    integrate_ivp,
    load_instance,
    parse,
    parse_instance,
    picard,
    residuals,
    shooting_residual,
    solve,
    solve_all,
    theta,
    validate,
    verify,
)

__version__ = "0.1.0"
