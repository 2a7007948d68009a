"""Discrete exterior calculus on a uniform periodic 3D grid.

Fields are differential forms of degree 0..3 stored component-wise against
an orthonormal right-handed coframe, on a staggered (Yee-type) complex:

    primal 0-form   nodes          offset (0, 0, 0)
    primal 1-form   edges, comp a  offset Delta/2 along axis a
    primal 2-form   faces, comp a  offset Delta/2 along both axes != a
    primal 3-form   cells          offset (Delta/2, Delta/2, Delta/2)

A field may instead live on the dual complex (cell centers as dual nodes);
a dual q-form occupies the primal (3-q) locations, so the Hodge star is a
pure component relabelling between collocated arrays and ``star(star(x))``
is the identity bit for bit.  The exterior derivative differences forward
on the primal complex and backward on the dual one; all factors of the
grid spacing live in ``exterior_derivative`` and ``integrate``.

2-form component ``a`` is the coefficient of sigma^b ^ sigma^c with
(a, b, c) a cyclic permutation of (0, 1, 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Mesh",
    "FormField",
    "Region",
    "WHOLE",
    "exterior_derivative",
    "hodge_star",
    "wedge",
    "integrate",
    "inner_product_1forms",
    "sample_form",
]


class Mesh:
    """Uniform periodic grid with cubic cells of side ``spacing``."""

    def __init__(self, dims, spacing=1.0):
        dims = tuple(int(n) for n in dims)
        if len(dims) != 3 or any(n < 2 for n in dims) or np.prod(dims) < 8:
            raise ValueError(f"mesh dims must be 3 integers >= 2 with >= 8 cells, got {dims}")
        if not (np.isfinite(spacing) and spacing > 0):
            raise ValueError(f"spacing must be finite and positive, got {spacing}")
        self.dims = dims
        self.spacing = float(spacing)

    @property
    def cell_volume(self):
        return self.spacing ** 3

    @property
    def extent(self):
        """Periodic box side lengths (N_a * spacing)."""
        return tuple(n * self.spacing for n in self.dims)

    def axis_coords(self, axis, offset):
        """1D coordinates (i + offset) * spacing along one axis."""
        return (np.arange(self.dims[axis]) + offset) * self.spacing

    def coords(self, offset):
        """Meshgrid coordinates of every sample point at a staggered offset.

        ``offset`` is a 3-tuple with entries in {0, 1/2} in units of the
        spacing; returns three (N1, N2, N3) arrays.
        """
        axes = [self.axis_coords(a, offset[a]) for a in range(3)]
        return np.meshgrid(*axes, indexing="ij")

    def __eq__(self, other):
        return (
            isinstance(other, Mesh)
            and self.dims == other.dims
            and self.spacing == other.spacing
        )

    def __hash__(self):
        return hash((self.dims, self.spacing))

    def __repr__(self):
        return f"Mesh(dims={self.dims}, spacing={self.spacing})"


def _primal_offset(degree, comp):
    if degree == 0:
        return (0.0, 0.0, 0.0)
    if degree == 1:
        return tuple(0.5 if ax == comp else 0.0 for ax in range(3))
    if degree == 2:
        return tuple(0.0 if ax == comp else 0.5 for ax in range(3))
    return (0.5, 0.5, 0.5)


def component_offsets(degree, dual=False):
    """Staggered offsets (units of spacing) of each stored component."""
    placement_degree = 3 - degree if dual else degree
    ncomp = 3 if degree in (1, 2) else 1
    return [_primal_offset(placement_degree, c) for c in range(ncomp)]


@dataclass(frozen=True)
class FormField:
    """A discrete differential form: degree, complex flag, component data.

    ``data`` has shape (N1, N2, N3) for degrees 0 and 3 and (3, N1, N2, N3)
    for degrees 1 and 2.  Instances are treated as immutable; operations
    allocate fresh outputs.
    """

    mesh: Mesh
    degree: int
    data: np.ndarray
    dual: bool = False

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise ValueError(f"form degree must be 0..3, got {self.degree}")
        expected = self.mesh.dims if self.degree in (0, 3) else (3, *self.mesh.dims)
        if self.data.shape != expected:
            raise ValueError(
                f"component array shape {self.data.shape} does not match "
                f"degree-{self.degree} field on mesh {self.mesh.dims}"
            )

    @classmethod
    def zeros(cls, mesh, degree, dual=False):
        shape = mesh.dims if degree in (0, 3) else (3, *mesh.dims)
        return cls(mesh, degree, np.zeros(shape), dual)

    @property
    def ncomp(self):
        return 3 if self.degree in (1, 2) else 1

    def component(self, a):
        return self.data[a] if self.degree in (1, 2) else self.data

    def offsets(self):
        return component_offsets(self.degree, self.dual)

    def copy(self):
        return FormField(self.mesh, self.degree, self.data.copy(), self.dual)

    def __add__(self, other):
        self._check_like(other)
        return FormField(self.mesh, self.degree, self.data + other.data, self.dual)

    def __sub__(self, other):
        self._check_like(other)
        return FormField(self.mesh, self.degree, self.data - other.data, self.dual)

    def __mul__(self, scalar):
        return FormField(self.mesh, self.degree, self.data * scalar, self.dual)

    __rmul__ = __mul__

    def __neg__(self):
        return FormField(self.mesh, self.degree, -self.data, self.dual)

    def _check_like(self, other):
        if not isinstance(other, FormField):
            raise TypeError("expected a FormField")
        if (self.mesh, self.degree, self.dual) != (other.mesh, other.degree, other.dual):
            raise ValueError("fields live on different meshes, degrees, or complexes")


def sample_form(mesh, degree, funcs, dual=False):
    """Build a form by evaluating callables f(X1, X2, X3) at its sample points.

    ``funcs`` is a single callable (degrees 0, 3) or a sequence of three
    (degrees 1, 2); a None entry leaves that component zero.
    """
    field = FormField.zeros(mesh, degree, dual)
    offs = field.offsets()
    fs = [funcs] if degree in (0, 3) else list(funcs)
    for c, f in enumerate(fs):
        if f is None:
            continue
        vals = np.asarray(f(*mesh.coords(offs[c])), dtype=float)
        if degree in (0, 3):
            field.data[...] = vals
        else:
            field.data[c] = vals
    return field


@dataclass(frozen=True)
class Region:
    """Integration region: the whole periodic domain or a cell-index box.

    A box is half-open, ``lo[a] <= i_a < hi[a]``, in cell indices.
    """

    lo: tuple | None = None
    hi: tuple | None = None

    @property
    def is_whole(self):
        return self.lo is None

    def slices(self, mesh):
        if self.is_whole:
            return (slice(None),) * 3
        lo, hi = self.lo, self.hi
        for a in range(3):
            if not (0 <= lo[a] < hi[a] <= mesh.dims[a]):
                raise ValueError(f"region box {lo}..{hi} outside mesh dims {mesh.dims}")
        return tuple(slice(lo[a], hi[a]) for a in range(3))


WHOLE = Region()


def _roll(arr, shift, axis):
    return np.roll(arr, shift, axis=axis)


def _diff_fwd(arr, axis):
    return _roll(arr, -1, axis) - arr


def _diff_bwd(arr, axis):
    return arr - _roll(arr, 1, axis)


def _mean_half(arr, axis, src, dst):
    """Two-point mean moving one component offset between 0 and 1/2."""
    if dst > src:  # 0 -> 1/2, value centred at i + 1/2
        return 0.5 * (arr + _roll(arr, -1, axis))
    return 0.5 * (_roll(arr, 1, axis) + arr)  # 1/2 -> 0, centred at i


def resample(arr, src_offset, dst_offset):
    """Average an array from one staggered offset to another, axis by axis."""
    out = arr
    for ax in range(3):
        if src_offset[ax] != dst_offset[ax]:
            out = _mean_half(out, ax, src_offset[ax], dst_offset[ax])
    return out


def exterior_derivative(alpha):
    """Discrete d: circulation/flux differences divided by the spacing.

    Forward differences on the primal complex, backward on the dual, so
    that d of a form lands on the staggered location of its degree and
    d(d(x)) vanishes identically on either complex.
    """
    if alpha.degree == 3:
        raise ValueError("exterior derivative of a 3-form is not defined")
    diff = _diff_bwd if alpha.dual else _diff_fwd
    inv_h = 1.0 / alpha.mesh.spacing
    q = alpha.degree
    if q == 0:
        out = np.stack([diff(alpha.data, a) for a in range(3)])
    elif q == 1:
        comps = []
        for a in range(3):
            b, c = (a + 1) % 3, (a + 2) % 3
            comps.append(diff(alpha.data[c], b) - diff(alpha.data[b], c))
        out = np.stack(comps)
    else:
        out = sum(diff(alpha.data[a], a) for a in range(3))
    return FormField(alpha.mesh, q + 1, out * inv_h, alpha.dual)


def hodge_star(alpha):
    """Orthonormal diagonal Hodge: degree q <-> 3-q across the two complexes.

    Component arrays are copied unchanged (collocated relabelling,
    sigma^a -> sigma^b ^ sigma^c cyclically), so star(star(x)) == x exactly.
    """
    return FormField(alpha.mesh, 3 - alpha.degree, alpha.data.copy(), not alpha.dual)


def _wedge_term(u, off_u, v, off_v, target):
    """One product term of a wedge, averaged onto the target offset.

    Axes where a single factor is misaligned average that factor; axes
    where both factors share a misaligned offset average the product.
    Each move is a two-point mean, so the result is second order.
    """
    shared = []
    for ax in range(3):
        mis_u = off_u[ax] != target[ax]
        mis_v = off_v[ax] != target[ax]
        if mis_u and mis_v:
            shared.append((ax, off_u[ax]))
        elif mis_u:
            u = _mean_half(u, ax, off_u[ax], target[ax])
        elif mis_v:
            v = _mean_half(v, ax, off_v[ax], target[ax])
    prod = u * v
    for ax, src in shared:
        prod = _mean_half(prod, ax, src, target[ax])
    return prod


def wedge(alpha, beta):
    """Wedge product for degree pairs (0, q), (q, 0), (1, 1), (1, 2), (2, 1).

    Components are averaged onto the staggered locations of the result
    (primal placement for degree >= 2 outputs) and combined with
    Levi-Civita signs; antisymmetry alpha^beta = (-1)^(qq') beta^alpha
    holds to rounding.  Averaging is two/four-point, second order, and
    not exactly associative.
    """
    if alpha.mesh != beta.mesh:
        raise ValueError("wedge operands live on different meshes")
    qa, qb = alpha.degree, beta.degree
    if qa + qb > 3:
        raise ValueError(f"wedge of degrees {qa} and {qb} exceeds the top degree")

    if qa == 0 or qb == 0:
        scal, form = (alpha, beta) if qa == 0 else (beta, alpha)
        s_off = scal.offsets()[0]
        out = FormField.zeros(form.mesh, form.degree, form.dual)
        for c, off in enumerate(form.offsets()):
            vals = resample(scal.data, s_off, off) * form.component(c)
            if form.degree in (0, 3):
                out.data[...] = vals
            else:
                out.data[c] = vals
        return out

    offs_a, offs_b = alpha.offsets(), beta.offsets()
    if qa == 1 and qb == 1:
        out = FormField.zeros(alpha.mesh, 2, dual=False)
        for c in range(3):
            a, b = (c + 1) % 3, (c + 2) % 3
            target = _primal_offset(2, c)
            out.data[c] = _wedge_term(
                alpha.data[a], offs_a[a], beta.data[b], offs_b[b], target
            ) - _wedge_term(
                alpha.data[b], offs_a[b], beta.data[a], offs_b[a], target
            )
        return out

    if {qa, qb} == {1, 2}:
        target = _primal_offset(3, 0)
        total = np.zeros(alpha.mesh.dims)
        for a in range(3):
            total += _wedge_term(
                alpha.data[a], offs_a[a], beta.data[a], offs_b[a], target
            )
        return FormField(alpha.mesh, 3, total, dual=False)

    raise ValueError(f"unsupported wedge degree pair ({qa}, {qb})")


def integrate(omega, region=WHOLE):
    """Integral of a 3-form over a region: cell-density sum times spacing^3."""
    if omega.degree != 3:
        raise ValueError("only 3-forms can be integrated over a volume region")
    sl = region.slices(omega.mesh)
    return float(omega.data[sl].sum()) * omega.mesh.cell_volume


def inner_product_1forms(alpha, beta):
    """Pointwise metric pairing of two 1-forms as a node 0-form.

    Componentwise products are averaged to the nodes; agrees with
    star(alpha ^ star(beta)) to second order on smooth fields.
    """
    if alpha.degree != 1 or beta.degree != 1:
        raise ValueError("inner_product_1forms expects two 1-forms")
    if alpha.mesh != beta.mesh:
        raise ValueError("operands live on different meshes")
    offs_a, offs_b = alpha.offsets(), beta.offsets()
    target = (0.0, 0.0, 0.0)
    total = np.zeros(alpha.mesh.dims)
    for a in range(3):
        total += _wedge_term(alpha.data[a], offs_a[a], beta.data[a], offs_b[a], target)
    return FormField(alpha.mesh, 0, total, dual=False)
