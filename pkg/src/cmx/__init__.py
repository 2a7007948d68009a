"""Source-free Maxwell dynamics as restricted contact Hamiltonian flow.

A numpy library in five layers: finite-dimensional contact geometry
(`cmx.contact`), discrete exterior calculus on a periodic staggered grid
(`cmx.dec`), per-cell electromagnetic energies and constitutive maps
(`cmx.fiber`), structure-preserving time evolution with conservation
diagnostics (`cmx.dynamics`), and the dually flat information geometry of
the quadratic energy density (`cmx.infogeo`).  Scenario presets, config
parsing, snapshots, and the `cmx` command line live in `cmx.scenarios`,
`cmx.config`, `cmx.snapshots`, `cmx.timeseries`, and `cmx.cli`.
"""

from .contact import (
    AdaptedResiduals,
    ContactHamiltonian,
    ContactPoint,
    Generator,
    GeneratorKind,
    Tangent,
    adapted_hamiltonian,
    adapted_residuals,
    contact_hamiltonian_field,
    eval_contact_form,
    integrate_flow,
    legendre_dual,
    legendre_transform,
    reeb_field,
    restricted_field,
)
from .dec import (
    FormField,
    Mesh,
    Region,
    WHOLE,
    exterior_derivative,
    hodge_star,
    inner_product_1forms,
    integrate,
    sample_form,
    wedge,
)
from .dynamics import (
    DiagnosticsReport,
    SchemeConfig,
    evolve_potential,
    poynting_report,
    run_scenario,
    solve_vector_potential,
    step_induction,
    step_intensity,
)
from .fiber import (
    MaxwellState,
    MediumProfile,
    Orientation,
    coenergy_density,
    contact_hamiltonian_density,
    energy_density,
    energy_quadratic,
    functional,
    induction_from_intensity,
    intensity_from_induction,
    phase_residuals,
)
from .infogeo import (
    Connection,
    FiberPoint,
    alpha_connection,
    canonical_divergence,
    contravariant_metric,
    fiber_metric,
    geodesic,
    pythagoras_check,
)

__version__ = "0.1.0"
