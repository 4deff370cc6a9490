"""Masked uniform-grid discretization of the planar cross-section.

The cross-section is a bounded, simply connected domain with smooth
boundary, described by a signed-distance callable (negative inside).  The
default instance is the disk of radius R about the origin.  Nodes of a
uniform (n+1) x (n+1) grid on [-R, R]^2 are classified as

    interior  -- strictly inside the domain (the unknowns),
    boundary  -- outside, but 8-adjacent to an interior node (Dirichlet
                 collar, values pinned to 0),
    exterior  -- everything else (values fixed at 0).

Every 8-neighbor of an interior node is therefore interior or boundary, so
stencils never read unclassified nodes; boundary nodes lie within
sqrt(2)*h of the true boundary curve.  Fields store one value per node
with zeros enforced off the interior, so all fields share a fixed layout.

Quadrature is the h^2-weighted nodal sum over interior nodes (midpoint
rule; exact for constants up to an O(h) boundary-cell error).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import ndimage

__all__ = [
    "EXTERIOR",
    "BOUNDARY",
    "INTERIOR",
    "GridDomain",
    "ScalarField2D",
    "build_disk_domain",
    "build_domain",
    "integrate",
    "inner",
    "lp_norm",
    "write_field_csv",
    "write_field_raw",
    "read_field_raw",
]

EXTERIOR, BOUNDARY, INTERIOR = 0, 1, 2

_NEIGHBORHOOD = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class GridDomain:
    """Immutable grid + mask.  ``radius`` is the maximal distance of the
    domain from the origin (the grid spans [-radius, radius]^2), ``n`` the
    cell count per axis, ``h = 2*radius/n`` the spacing.  Arrays are
    indexed [i, j] with i the x index and j the y index."""

    radius: float
    n: int
    h: float
    xs: np.ndarray  # (n+1,) node abscissae, symmetric about 0
    ys: np.ndarray
    mask: np.ndarray  # (n+1, n+1) int8 in {EXTERIOR, BOUNDARY, INTERIOR}
    sdf: Callable = field(repr=False, compare=False)

    @property
    def interior(self) -> np.ndarray:
        return self.mask == INTERIOR

    @property
    def boundary(self) -> np.ndarray:
        return self.mask == BOUNDARY

    @property
    def interior_count(self) -> int:
        return int(np.count_nonzero(self.interior))

    def node_xy(self) -> tuple[np.ndarray, np.ndarray]:
        """Meshgrid node coordinates X[i, j] = xs[i], Y[i, j] = ys[j]."""
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def deep_interior(self, cells: int) -> np.ndarray:
        """Interior nodes at least ``cells`` grid cells away from any
        non-interior node (used to measure convergence away from the
        embedded boundary)."""
        m = self.interior
        for _ in range(cells):
            m = ndimage.binary_erosion(m, structure=_NEIGHBORHOOD)
        return m

    def distance_to_boundary(self, x, y):
        """Distance from (x, y) to the domain boundary, positive inside."""
        return -self.sdf(x, y)


def build_domain(sdf: Callable, radius: float, n: int) -> GridDomain:
    """Discretize the domain {sdf < 0} contained in the disk of ``radius``.

    Rejects n < 8 (stencil cannot fit) and non-positive radii.  The node
    set is exactly symmetric under x -> -x and y -> -y.
    """
    if not np.isfinite(radius) or radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if n < 8:
        raise ValueError(f"need at least 8 cells per axis, got {n}")
    # (2i - n) * (R/n) negates exactly under i -> n - i.
    xs = (2 * np.arange(n + 1) - n) * (radius / n)
    ys = xs.copy()
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = sdf(X, Y) < 0.0
    if not inside.any():
        raise ValueError("domain contains no grid nodes")
    collar = ndimage.binary_dilation(inside, structure=_NEIGHBORHOOD) & ~inside
    mask = np.full(inside.shape, EXTERIOR, dtype=np.int8)
    mask[collar] = BOUNDARY
    mask[inside] = INTERIOR
    return GridDomain(
        radius=float(radius), n=int(n), h=2.0 * radius / n, xs=xs, ys=ys, mask=mask, sdf=sdf
    )


def build_disk_domain(radius: float, n: int) -> GridDomain:
    """Disk of ``radius`` centered at the origin; sdf(x, y) = r - radius."""

    def sdf(x, y):
        return np.hypot(x, y) - radius

    return build_domain(sdf, radius, n)


@dataclass
class ScalarField2D:
    """Grid function on a domain: one float per node, zero off the interior."""

    domain: GridDomain
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.domain.mask.shape:
            raise ValueError(f"values shape {v.shape} != grid shape {self.domain.mask.shape}")
        if not np.isfinite(v[self.domain.interior]).all():
            raise ValueError("field has non-finite interior values")
        self.values = np.where(self.domain.interior, v, 0.0)

    @classmethod
    def zeros(cls, domain: GridDomain) -> "ScalarField2D":
        return cls(domain, np.zeros(domain.mask.shape))

    @classmethod
    def from_function(cls, domain: GridDomain, fn) -> "ScalarField2D":
        X, Y = domain.node_xy()
        return cls(domain, np.asarray(fn(X, Y), dtype=float))

    def copy(self) -> "ScalarField2D":
        return ScalarField2D(self.domain, self.values.copy())

    def value_range(self) -> tuple[float, float]:
        """Range over all stored values (zeros off the interior included,
        matching the zero-extension convention of the transport scheme)."""
        return float(self.values.min()), float(self.values.max())


def integrate(f: ScalarField2D) -> float:
    """h^2-weighted sum of interior values (fixed summation order)."""
    return float(f.domain.h ** 2 * f.values[f.domain.interior].sum())


def inner(f: ScalarField2D, g: ScalarField2D) -> float:
    """Discrete L2 pairing h^2 * sum_interior f*g."""
    m = f.domain.interior
    return float(f.domain.h ** 2 * np.sum(f.values[m] * g.values[m]))


def lp_norm(f: ScalarField2D, p) -> float:
    """Discrete L^p norm; p = inf gives the interior max of |f|."""
    if p == np.inf or p == "inf":
        return float(np.abs(f.values[f.domain.interior]).max())
    p = float(p)
    if p < 1.0:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    return float((f.domain.h ** 2 * np.sum(np.abs(f.values[f.domain.interior]) ** p)) ** (1.0 / p))


# -- field dumps ------------------------------------------------------------
#
# Two formats: a plain CSV of (x, y, value) rows over all nodes, and a raw
# little-endian float64 dump in row-major (x-index outer) order with a JSON
# sidecar header {n, radius, kappa, time, name}.


def write_field_csv(f: ScalarField2D, path) -> None:
    X, Y = f.domain.node_xy()
    with open(path, "w") as fh:
        fh.write("x,y,value\n")
        for x, y, v in zip(X.ravel(), Y.ravel(), f.values.ravel()):
            fh.write(f"{x!r},{y!r},{v!r}\n")


def write_field_raw(f: ScalarField2D, bin_path, json_path, *, kappa: float, time: float, name: str) -> None:
    data = np.ascontiguousarray(f.values, dtype="<f8")
    with open(bin_path, "wb") as fh:
        fh.write(data.tobytes())
    header = {
        "n": f.domain.n,
        "radius": f.domain.radius,
        "kappa": kappa,
        "time": time,
        "name": name,
    }
    with open(json_path, "w") as fh:
        json.dump(header, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_field_raw(bin_path, json_path) -> tuple[np.ndarray, dict]:
    """Reload a raw dump; returns (values array, header dict)."""
    with open(json_path) as fh:
        header = json.load(fh)
    m = header["n"] + 1
    with open(bin_path, "rb") as fh:
        raw = fh.read()
    expected = m * m * struct.calcsize("<d")
    if len(raw) != expected:
        raise ValueError(f"raw dump has {len(raw)} bytes, expected {expected}")
    values = np.frombuffer(raw, dtype="<f8").reshape(m, m).copy()
    return values, header
