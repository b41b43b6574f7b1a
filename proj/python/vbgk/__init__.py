"""Five-velocity vector-BGK relaxation of 2-d incompressible Navier-Stokes."""

from ._vbgk import (
    ConstraintViolation,
    ModelParams,
    NonPositiveInput,
    NotDivergenceFree,
    ParseError,
    SimulationAborted,
    VbgkError,
    check_subcharacteristic,
    cmd_reference,
    cmd_run,
    cmd_sweep,
    cmd_validate,
    fit_rate,
    flux,
    maxwellians,
    ns_advance,
    pressure,
    simulate,
    sobolev_norm,
    sweep,
    taylor_green,
)

__all__ = [name for name in dir() if not name.startswith("_")]
