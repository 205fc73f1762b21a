"""Python access to the bihw space-time solver."""

from ._core import (  # noqa: F401
    DomainError,
    Error,
    FactorizationError,
    NumericalError,
    ParameterError,
    SizeError,
    SolverError,
    Stabilization,
    System,
    UnsupportedDegreeError,
    delta,
    eval_basis,
    knots,
    main,
    rho,
)
