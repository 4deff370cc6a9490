"""Closed-form primitives of helical symmetry.

A screw motion with pitch ``kappa`` rotates by an angle ``rho`` about the
z-axis while translating by ``kappa*rho`` along it:

    S_rho(x, y, z) = (x cos(rho) + y sin(rho), -x sin(rho) + y cos(rho), z + kappa*rho)

Orbits of the one-parameter screw group are concentric helices with tangent
field

    xi(x, y) = (y, -x, kappa).

A scalar field f is helical (constant along the helices) iff the directional
derivative df/dxi vanishes.  A vector field v is helical iff dv/dxi = R v,
where R = d/drho [rot_z(rho)] at rho=0.  Velocity fields are additionally
constrained to be orthogonal to the helices, u . xi = 0, which ties the
axial velocity to the in-plane components and kills vorticity stretching:
the full vorticity is then (omega/kappa) * xi for a transported scalar omega.

Everything here is a pure, closed-form evaluation (no caching); operations
broadcast over numpy arrays, with points and vectors as array-likes whose
last axis has length 3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HelixParams",
    "ROT_GEN",
    "screw",
    "rot_z",
    "xi",
    "coeff_matrix",
    "u_xi",
    "helicality_residual_scalar",
    "helicality_residual_vector",
    "lift_vorticity",
    "boundary_tangent",
]

# Generator of the rotation group: d/drho rot_z(rho) at rho = 0.
ROT_GEN = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


@dataclass(frozen=True)
class HelixParams:
    """Pitch of the screw group.  kappa is a nonzero length scale; its sign
    selects the handedness and is preserved by every operation."""

    kappa: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.kappa) or self.kappa == 0.0:
            raise ValueError(f"kappa must be finite and nonzero, got {self.kappa!r}")


def rot_z(rho):
    """Rotation about the z-axis by rho radians, as a (..., 3, 3) matrix."""
    rho = np.asarray(rho, dtype=float)
    c, s = np.cos(rho), np.sin(rho)
    zero = np.zeros_like(c)
    one = np.ones_like(c)
    return np.stack(
        [
            np.stack([c, s, zero], axis=-1),
            np.stack([-s, c, zero], axis=-1),
            np.stack([zero, zero, one], axis=-1),
        ],
        axis=-2,
    )


def screw(h: HelixParams, rho, p):
    """Apply the screw motion S_rho to points p (..., 3)."""
    p = np.asarray(p, dtype=float)
    rho = np.asarray(rho, dtype=float)
    c, s = np.cos(rho), np.sin(rho)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return np.stack([x * c + y * s, -x * s + y * c, z + h.kappa * rho], axis=-1)


def xi(h: HelixParams, p):
    """Tangent field of the symmetry helices at points p: (y, -x, kappa)."""
    p = np.asarray(p, dtype=float)
    x, y = p[..., 0], p[..., 1]
    return np.stack([y, -x, np.full_like(x, h.kappa)], axis=-1)


def coeff_matrix(h: HelixParams, x, y):
    """Symmetric positive definite 2x2 coefficient matrix of the reduced
    elliptic operator,

        K(x, y) = [[k^2 + y^2, -x y], [-x y, k^2 + x^2]] / (k^2 + x^2 + y^2),

    with eigenvalues 1 (azimuthal direction) and k^2/(k^2 + x^2 + y^2)
    (radial direction).  Returns shape (..., 2, 2).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k2 = h.kappa * h.kappa
    denom = k2 + x * x + y * y
    k11 = (k2 + y * y) / denom
    k22 = (k2 + x * x) / denom
    k12 = -(x * y) / denom
    return np.stack(
        [np.stack([k11, k12], axis=-1), np.stack([k12, k22], axis=-1)], axis=-2
    )


def u_xi(h: HelixParams, p, v) -> np.ndarray:
    """Component of v along the helix tangent at p:  y*v_x - x*v_y + kappa*v_z.

    Zero iff v is orthogonal to the symmetry line through p.
    """
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    return p[..., 1] * v[..., 0] - p[..., 0] * v[..., 1] + h.kappa * v[..., 2]


def helicality_residual_scalar(h: HelixParams, f, p, fd_step: float = 1e-5):
    """Directional derivative df/dxi at p by central differences; ~0 for
    helical scalar fields.

    ``f`` maps (..., 3) points to scalars.  The difference step along xi is
    scaled so the evaluation points sit ~fd_step away from p (fd_step
    defaults to 1e-5 times a unit domain radius; pass a larger step for
    affine f, where the central difference is exact and the small default
    only amplifies rounding).
    """
    p = np.asarray(p, dtype=float)
    t = xi(h, p)
    s = fd_step / np.maximum(np.linalg.norm(t, axis=-1), 1.0)
    s = s[..., np.newaxis]
    return (f(p + s * t) - f(p - s * t)) / (2.0 * s[..., 0])


def helicality_residual_vector(h: HelixParams, v, p, fd_step: float = 1e-5):
    """Residual dv/dxi - R v at p; ~0 (componentwise) for helical vector
    fields.  ``v`` maps (..., 3) points to (..., 3) vectors."""
    p = np.asarray(p, dtype=float)
    t = xi(h, p)
    s = fd_step / np.maximum(np.linalg.norm(t, axis=-1), 1.0)
    s = s[..., np.newaxis]
    dv = (v(p + s * t) - v(p - s * t)) / (2.0 * s)
    return dv - v(p) @ ROT_GEN.T


def lift_vorticity(h: HelixParams, x, y, omega):
    """Lift the scalar vorticity to the 3D vorticity vector
    (omega/kappa) * xi = (y*omega/kappa, -x*omega/kappa, omega); the z
    component equals omega exactly and the vector is parallel to xi."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    omega = np.asarray(omega, dtype=float)
    w = omega / h.kappa
    return np.stack([y * w, -x * w, omega * np.ones_like(x * y)], axis=-1)


def boundary_tangent(h: HelixParams, x, y, u):
    """Direction of the cross-section boundary tangent implied by an
    in-plane velocity u at a boundary point (x, y):

        ((k^2 + y^2) u_x - x y u_y,  (k^2 + x^2) u_y - x y u_x).

    A zero return is the degenerate case (no direction information); the
    caller decides how to handle it.  As kappa -> inf the direction tends
    to u itself.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    k2 = h.kappa * h.kappa
    ux, uy = u[..., 0], u[..., 1]
    return np.stack(
        [(k2 + y * y) * ux - x * y * uy, (k2 + x * x) * uy - x * y * ux], axis=-1
    )
