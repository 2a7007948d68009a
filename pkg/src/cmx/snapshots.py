"""Binary state snapshots with a short text header.

Layout: five newline-terminated header lines

    CMX1
    dims N1 N2 N3
    spacing <repr>
    time <repr>
    fields D B e h energy

followed by one little-endian IEEE-754 binary64 block per component in
row-major order (third index fastest), field order D, B, e, h, energy
(13 components, 3+3+3+3+1).  Writing then reading reproduces the state
bit for bit.
"""

from __future__ import annotations

import numpy as np

from .dec import FormField, Mesh
from .fiber import MaxwellState

__all__ = ["write_snapshot", "read_snapshot", "SnapshotFormatError"]

MAGIC = "CMX1"

# (name, degree, dual) in file order
_FIELD_SPECS = (
    ("D", 2, True),
    ("B", 2, False),
    ("e", 1, False),
    ("h", 1, True),
    ("energy", 0, True),
)


class SnapshotFormatError(ValueError):
    """The file is not a readable snapshot of the supported version."""


def write_snapshot(state, path):
    """Write a MaxwellState to ``path`` in the CMX1 snapshot format."""
    mesh = state.mesh
    header = (
        f"{MAGIC}\n"
        f"dims {mesh.dims[0]} {mesh.dims[1]} {mesh.dims[2]}\n"
        f"spacing {mesh.spacing!r}\n"
        f"time {state.time!r}\n"
        f"fields {' '.join(name for name, _, _ in _FIELD_SPECS)}\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        for name, degree, _ in _FIELD_SPECS:
            field = getattr(state, name)
            comps = field.data if degree in (1, 2) else field.data[None]
            for comp in comps:
                fh.write(np.ascontiguousarray(comp, dtype="<f8").tobytes())


def _header_line(fh, what):
    line = fh.readline()
    if not line.endswith(b"\n"):
        raise SnapshotFormatError(f"truncated header while reading {what}")
    return line[:-1].decode("ascii", errors="replace")


def read_snapshot(path):
    """Read a CMX1 snapshot back into a MaxwellState."""
    with open(path, "rb") as fh:
        magic = _header_line(fh, "magic")
        if magic != MAGIC:
            raise SnapshotFormatError(
                f"unsupported snapshot version {magic!r} (expected {MAGIC!r})"
            )
        dims_line = _header_line(fh, "dims").split()
        if len(dims_line) != 4 or dims_line[0] != "dims":
            raise SnapshotFormatError("malformed dims line")
        dims = tuple(int(v) for v in dims_line[1:])
        spacing_line = _header_line(fh, "spacing").split()
        if len(spacing_line) != 2 or spacing_line[0] != "spacing":
            raise SnapshotFormatError("malformed spacing line")
        spacing = float(spacing_line[1])
        time_line = _header_line(fh, "time").split()
        if len(time_line) != 2 or time_line[0] != "time":
            raise SnapshotFormatError("malformed time line")
        time = float(time_line[1])
        fields_line = _header_line(fh, "fields").split()
        if fields_line != ["fields"] + [name for name, _, _ in _FIELD_SPECS]:
            raise SnapshotFormatError("unexpected field list")

        mesh = Mesh(dims, spacing)
        ncells = int(np.prod(dims))
        fields = {}
        for name, degree, dual in _FIELD_SPECS:
            ncomp = 3 if degree in (1, 2) else 1
            raw = fh.read(ncomp * ncells * 8)
            if len(raw) != ncomp * ncells * 8:
                raise SnapshotFormatError(f"truncated data block for field {name}")
            data = np.frombuffer(raw, dtype="<f8").astype(float).reshape(
                (ncomp, *dims) if ncomp == 3 else dims
            )
            fields[name] = FormField(mesh, degree, data, dual)
        if fh.read(1):
            raise SnapshotFormatError("trailing bytes after the last field block")
    return MaxwellState(time=time, **fields)
