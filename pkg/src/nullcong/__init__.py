"""Shear-free null congruences in Minkowski space.

Spinor calculus and two-form decomposition (:mod:`nullcong.spinor`),
twistor incidence and affine charts (:mod:`nullcong.twistor`), congruence
families with shear/twist diagnostics (:mod:`nullcong.congruence`), the
worked CR hypersurface example (:mod:`nullcong.cr_example`), and null
Maxwell field synthesis and verification (:mod:`nullcong.maxwell`).

Hot kernels (the slit-plane profile function and the chart Newton solver)
run through :mod:`nullcong._core`, which picks a compiled extension when
one is built and falls back to pure NumPy otherwise; set
``NULLCONG_BACKEND=python`` or ``compiled`` to force a choice.
"""

from .congruence import (
    DISTINGUISHED_EVENT,
    CongruenceField,
    CRFormsReport,
    ShearReport,
    SolveError,
    conformal_invert,
    cr_forms,
    grid_events,
    probe_domain_radius,
    shear,
    shear_many,
    solve_cr_graph,
    sweep_grid,
    twist,
)
from .cr_example import (
    GraphPoint,
    SlitError,
    SlitPlanePoint,
    certification_suite,
    cr_vector_L,
    g_eval,
    g_prime_eval,
    levi_matrix,
    t_eval,
    vanishing_order_probe,
)
from .maxwell import (
    EnergyTensor,
    FieldReport,
    NullFieldSpec,
    assemble_field,
    energy_tensor,
    f_and_star_f,
    hypercube_events,
    maxwell_residual,
    shear_from_field,
)
from .spinor import (
    COVEC_DYAD,
    EPSILON,
    SIGNATURE,
    VEC_DYAD,
    Event,
    FactorizationError,
    Spinor2,
    SymmetricSpinor2,
    TwoForm,
    conjugate,
    decompose_two_form,
    factor_symmetric,
    hodge_star,
    inner,
    inner_eps,
    lower_index,
    raise_index,
    recompose_two_form,
    two_form_from_vectors,
)
from .twistor import (
    CHART_MAP,
    ChartError,
    ChartPoint,
    GeodesicError,
    NullGeodesic,
    Twistor,
    alpha_plane,
    chart_coords,
    geodesic_from_twistor,
    incident_twistor,
    quadric_sigma,
    twistor_from_chart,
)

__version__ = "0.1.0"

__all__ = [
    "CHART_MAP",
    "COVEC_DYAD",
    "CRFormsReport",
    "ChartError",
    "ChartPoint",
    "CongruenceField",
    "DISTINGUISHED_EVENT",
    "EPSILON",
    "EnergyTensor",
    "Event",
    "FactorizationError",
    "FieldReport",
    "GeodesicError",
    "GraphPoint",
    "NullFieldSpec",
    "NullGeodesic",
    "SIGNATURE",
    "ShearReport",
    "SlitError",
    "SlitPlanePoint",
    "SolveError",
    "Spinor2",
    "SymmetricSpinor2",
    "TwoForm",
    "Twistor",
    "VEC_DYAD",
    "alpha_plane",
    "assemble_field",
    "certification_suite",
    "chart_coords",
    "conformal_invert",
    "conjugate",
    "cr_forms",
    "cr_vector_L",
    "decompose_two_form",
    "energy_tensor",
    "f_and_star_f",
    "factor_symmetric",
    "g_eval",
    "g_prime_eval",
    "geodesic_from_twistor",
    "grid_events",
    "hodge_star",
    "hypercube_events",
    "incident_twistor",
    "inner",
    "inner_eps",
    "levi_matrix",
    "lower_index",
    "maxwell_residual",
    "probe_domain_radius",
    "quadric_sigma",
    "raise_index",
    "recompose_two_form",
    "shear",
    "shear_from_field",
    "shear_many",
    "solve_cr_graph",
    "sweep_grid",
    "t_eval",
    "twist",
    "twistor_from_chart",
    "two_form_from_vectors",
    "vanishing_order_probe",
]
