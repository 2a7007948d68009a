"""Electromagnetic field content per grid cell: energies and constitutive maps.

The per-cell fiber coordinates are the induction components (through the
Hodge dual of the 2-forms D and B), the field intensities e and h, and an
energy coordinate.  Field placement on the staggered complex:

    D  dual 2-form    (arrays collocated with e on edges)
    B  primal 2-form  (faces)
    e  primal 1-form  (edges)
    h  dual 1-form    (arrays collocated with B on faces)
    energy  dual 0-form (cell centers)

Permittivity and permeability are cell-sampled and averaged onto edge and
face centers, so both constitutive maps are diagonal per component.  The
energy and co-energy densities are quadratic, strictly convex functions of
the respective six field components; their cell values use the same edge
and face averaging as the Poynting pairing in `cmx.dynamics`, which makes
the semi-discrete energy balance exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .contact import Generator
from .dec import (
    FormField,
    WHOLE,
    component_offsets,
    exterior_derivative,
    hodge_star,
    integrate,
    resample,
    wedge,
)

__all__ = [
    "Orientation",
    "MediumProfile",
    "MaxwellState",
    "PhaseResiduals",
    "energy_density",
    "coenergy_density",
    "pairing_density",
    "functional",
    "intensity_from_induction",
    "induction_from_intensity",
    "phase_residuals",
    "contact_hamiltonian_density",
    "energy_quadratic",
]

_CELL = (0.5, 0.5, 0.5)


class Orientation(Enum):
    """Which field pair is evolved: inductions (DB) or intensities (EH)."""

    DB = "DB"
    EH = "EH"


class MediumProfile:
    """Strictly positive permittivity and permeability sampled per cell."""

    def __init__(self, mesh, eps, mu):
        eps = np.broadcast_to(np.asarray(eps, dtype=float), mesh.dims).copy()
        mu = np.broadcast_to(np.asarray(mu, dtype=float), mesh.dims).copy()
        if not (np.all(np.isfinite(eps)) and np.all(np.isfinite(mu))):
            raise ValueError("medium has non-finite entries")
        if eps.min() <= 0 or mu.min() <= 0:
            raise ValueError("permittivity and permeability must be strictly positive")
        self.mesh = mesh
        self.eps = eps
        self.mu = mu
        edge_offs = component_offsets(1)
        face_offs = component_offsets(2)
        self.eps_edge = [resample(eps, _CELL, edge_offs[a]) for a in range(3)]
        self.mu_face = [resample(mu, _CELL, face_offs[a]) for a in range(3)]

    @classmethod
    def vacuum(cls, mesh):
        return cls(mesh, 1.0, 1.0)

    @classmethod
    def uniform(cls, mesh, eps, mu):
        return cls(mesh, float(eps), float(mu))

    @classmethod
    def sech_slab(cls, mesh, eps0, z30, mu0):
        """Permittivity eps0 * sech^2(zeta3 / z30) around the domain midplane."""
        _, _, z3 = mesh.coords(_CELL)
        centered = z3 - 0.5 * mesh.extent[2]
        eps = eps0 / np.cosh(centered / z30) ** 2
        return cls(mesh, eps, float(mu0))

    def wave_speed_max(self):
        """Fastest local signal speed 1/sqrt(eps*mu), cell-sampled."""
        return float((1.0 / np.sqrt(self.eps * self.mu)).max())


def _expect(field, degree, dual, name):
    if field.degree != degree or field.dual != dual:
        kind = "dual" if dual else "primal"
        raise ValueError(f"{name} must be a {kind} {degree}-form")


@dataclass(frozen=True)
class MaxwellState:
    """The thirteen per-cell fiber coordinates as staggered grid fields."""

    D: FormField
    B: FormField
    e: FormField
    h: FormField
    energy: FormField
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "time", float(self.time))
        _expect(self.D, 2, True, "D")
        _expect(self.B, 2, False, "B")
        _expect(self.e, 1, False, "e")
        _expect(self.h, 1, True, "h")
        _expect(self.energy, 0, True, "energy")
        meshes = {f.mesh for f in (self.D, self.B, self.e, self.h, self.energy)}
        if len(meshes) != 1:
            raise ValueError("state fields live on different meshes")

    @property
    def mesh(self):
        return self.D.mesh

    @classmethod
    def zero(cls, mesh, time=0.0):
        return cls(
            D=FormField.zeros(mesh, 2, dual=True),
            B=FormField.zeros(mesh, 2),
            e=FormField.zeros(mesh, 1),
            h=FormField.zeros(mesh, 1, dual=True),
            energy=FormField.zeros(mesh, 0, dual=True),
            time=time,
        )

    @classmethod
    def from_induction(cls, D, B, medium, time=0.0):
        """On-shell state: intensities slaved to (D, B), energy set to the density."""
        e, h = intensity_from_induction(D, B, medium)
        return cls(D=D, B=B, e=e, h=h,
                   energy=energy_density(D, B, medium), time=time)

    def is_finite(self):
        return all(
            np.all(np.isfinite(f.data))
            for f in (self.D, self.B, self.e, self.h, self.energy)
        ) and np.isfinite(self.time)

    def field_scale(self):
        """Max absolute value over all D, B, e, h components."""
        return max(
            float(np.abs(f.data).max()) for f in (self.D, self.B, self.e, self.h)
        )


def _edge_sq_to_cell(arr, a):
    return resample(arr, component_offsets(1)[a], _CELL)


def _face_sq_to_cell(arr, a):
    return resample(arr, component_offsets(2)[a], _CELL)


def energy_density(D, B, medium):
    """Quadratic energy density of the inductions, as a cell 0-form.

    Half the metric square of star(D) weighted by 1/eps plus the same for
    star(B) with 1/mu; nonnegative, zero only where both fields vanish.
    """
    _expect(D, 2, True, "D")
    _expect(B, 2, False, "B")
    if D.mesh != medium.mesh or B.mesh != medium.mesh:
        raise ValueError("fields and medium live on different meshes")
    total = np.zeros(medium.mesh.dims)
    for a in range(3):
        total += _edge_sq_to_cell(D.data[a] ** 2 / medium.eps_edge[a], a)
        total += _face_sq_to_cell(B.data[a] ** 2 / medium.mu_face[a], a)
    return FormField(medium.mesh, 0, 0.5 * total, dual=True)


def coenergy_density(e, h, medium):
    """Quadratic co-energy density of the intensities, as a cell 0-form."""
    _expect(e, 1, False, "e")
    _expect(h, 1, True, "h")
    if e.mesh != medium.mesh or h.mesh != medium.mesh:
        raise ValueError("fields and medium live on different meshes")
    total = np.zeros(medium.mesh.dims)
    for a in range(3):
        total += _edge_sq_to_cell(medium.eps_edge[a] * e.data[a] ** 2, a)
        total += _face_sq_to_cell(medium.mu_face[a] * h.data[a] ** 2, a)
    return FormField(medium.mesh, 0, 0.5 * total, dual=True)


def pairing_density(D, B, e, h):
    """Componentwise pairing star(D).e + star(B).h as a cell 0-form."""
    total = np.zeros(D.mesh.dims)
    for a in range(3):
        total += _edge_sq_to_cell(D.data[a] * e.data[a], a)
        total += _face_sq_to_cell(B.data[a] * h.data[a], a)
    return FormField(D.mesh, 0, total, dual=True)


def functional(density, region=WHOLE):
    """Volume integral of a density 0-form: integrate(density * vol)."""
    return integrate(hodge_star(density), region)


def intensity_from_induction(D, B, medium):
    """Constitutive map e = star(D)/eps, h = star(B)/mu.

    The medium is sampled at the staggered location of each target
    component, so the map is a collocated diagonal rescaling.
    """
    _expect(D, 2, True, "D")
    _expect(B, 2, False, "B")
    e = np.stack([D.data[a] / medium.eps_edge[a] for a in range(3)])
    h = np.stack([B.data[a] / medium.mu_face[a] for a in range(3)])
    return (
        FormField(medium.mesh, 1, e, dual=False),
        FormField(medium.mesh, 1, h, dual=True),
    )


def induction_from_intensity(e, h, medium):
    """Constitutive map D = eps * star(e), B = mu * star(h)."""
    _expect(e, 1, False, "e")
    _expect(h, 1, True, "h")
    D = np.stack([medium.eps_edge[a] * e.data[a] for a in range(3)])
    B = np.stack([medium.mu_face[a] * h.data[a] for a in range(3)])
    return (
        FormField(medium.mesh, 2, D, dual=True),
        FormField(medium.mesh, 2, B, dual=False),
    )


@dataclass(frozen=True)
class PhaseResiduals:
    """Residuals that vanish exactly when the state sits on the phase space
    of the chosen orientation (constitutive and energy relations hold)."""

    orientation: Orientation
    delta_energy: FormField
    delta_De: FormField
    delta_Bh: FormField

    def max_abs(self):
        return max(
            float(np.abs(self.delta_energy.data).max()),
            float(np.abs(self.delta_De.data).max()),
            float(np.abs(self.delta_Bh.data).max()),
        )

    def constitutive_max(self):
        return max(
            float(np.abs(self.delta_De.data).max()),
            float(np.abs(self.delta_Bh.data).max()),
        )


def phase_residuals(state, medium, orientation):
    """Residuals of the induction- or intensity-oriented phase space.

    DB: (energy density - energy, star(D)/eps - e, star(B)/mu - h) with the
    field residuals as 1-forms.  EH: (pairing - co-energy - energy,
    D - eps star(e), B - mu star(h)) with the field residuals as 2-forms.
    """
    if orientation is Orientation.DB:
        e_c, h_c = intensity_from_induction(state.D, state.B, medium)
        return PhaseResiduals(
            orientation=orientation,
            delta_energy=energy_density(state.D, state.B, medium) - state.energy,
            delta_De=e_c - state.e,
            delta_Bh=h_c - state.h,
        )
    D_c, B_c = induction_from_intensity(state.e, state.h, medium)
    delta_en = (
        pairing_density(state.D, state.B, state.e, state.h)
        - coenergy_density(state.e, state.h, medium)
        - state.energy
    )
    return PhaseResiduals(
        orientation=orientation,
        delta_energy=delta_en,
        delta_De=state.D - D_c,
        delta_Bh=state.B - B_c,
    )


def contact_hamiltonian_density(state, medium, orientation, kappa=1.0):
    """Density whose volume functional generates the restricted dynamics.

    Sum of the Hodge duals of the constitutive residuals wedged with the
    curl-driven velocity factors of the chosen orientation, plus
    kappa times the energy residual.  Identically zero (to rounding) on
    states satisfying the constitutive and energy relations.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    res = phase_residuals(state, medium, orientation)
    if orientation is Orientation.DB:
        e_c, h_c = intensity_from_induction(state.D, state.B, medium)
        F_De = exterior_derivative(h_c)
        F_Bh = -1.0 * exterior_derivative(e_c)
    else:
        dh = exterior_derivative(state.h)
        de = exterior_derivative(state.e)
        F_De = FormField(
            medium.mesh,
            1,
            np.stack([dh.data[a] / medium.eps_edge[a] for a in range(3)]),
            dual=False,
        )
        F_Bh = FormField(
            medium.mesh,
            1,
            np.stack([-de.data[a] / medium.mu_face[a] for a in range(3)]),
            dual=True,
        )
    term_De = hodge_star(wedge(res.delta_De, F_De))
    term_Bh = hodge_star(wedge(res.delta_Bh, F_Bh))
    return term_De + term_Bh + kappa * res.delta_energy


def energy_quadratic(eps, mu):
    """The six-variable energy density at one cell as a convex generator.

    Variables are the three star(D) components followed by the three
    star(B) components; the Hessian is diag(1/eps x3, 1/mu x3).  Its total
    Legendre transform is the co-energy density in the (e, h) variables.
    """
    if eps <= 0 or mu <= 0:
        raise ValueError("medium constants must be positive")
    diag = np.array([1.0 / eps] * 3 + [1.0 / mu] * 3)
    return Generator.quadratic(np.diag(diag))
