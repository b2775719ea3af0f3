"""Sphere-grid evaluation data for the determinant in dimensions 3..7.

Each supported dimension carries a fixed column-orthonormal n x 3 map from
t-coordinates to x-coordinates.  The image of the unit 2-sphere under that map
is a slice of the unit sphere in R^n chosen so the slice contains extreme
points: the n=3 map is a rotation aligning t_3 with (1,1,1)/sqrt(3), the n=4
map spans the whole hyperplane sum(x) = 0, and the n >= 5 maps span subspaces
of sign-symmetric coordinate patterns.  Grids are uniform in spherical
(theta, phi), half-open in theta, with both poles included once.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .emit import fmt, json_text

PHI_CHUNK = 128  # rows evaluated per block to bound peak memory


class UnsupportedDimension(ValueError):
    """Grids are only defined for dimensions 3 through 7."""


class GeneralizedOnlyFor3D(ValueError):
    """Generalized-exponent grids are only defined in dimension 3."""


@dataclass(frozen=True, eq=False)
class EmbeddingTransform:
    """Column-orthonormal map from t-coordinates into the sphere in R^n."""

    n: int
    matrix: np.ndarray
    label: str


def _transform(n, rows, scales, label):
    m = np.array(rows, dtype=float) @ np.diag(scales)
    return EmbeddingTransform(n=n, matrix=m, label=label)


TRANSFORMS = {
    3: _transform(
        3,
        [[2, 0, 1], [-1, 1, 1], [-1, -1, 1]],
        [1 / sqrt(6), 1 / sqrt(2), 1 / sqrt(3)],
        "tbasis-3",
    ),
    # image lies in the hyperplane sum(x) = 0
    4: _transform(
        4,
        [[-1, -1, 0], [-1, 1, 0], [1, 0, -1], [1, 0, 1]],
        [1 / sqrt(4), 1 / sqrt(2), 1 / sqrt(2)],
        "hyperplane-4",
    ),
    # pattern (x1, x2, 0, -x2, -x1) when t3 = 0; sum(x) = sqrt(5) * t3
    5: _transform(
        5,
        [[-1, 0, 1], [0, -1, 1], [0, 0, 1], [0, 1, 1], [1, 0, 1]],
        [1 / sqrt(2), 1 / sqrt(2), 1 / sqrt(5)],
        "sympairs-5",
    ),
    # pattern (x1, x2, x3, -x3, -x2, -x1)
    6: _transform(
        6,
        [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [0, 0, 1], [0, 1, 0], [1, 0, 0]],
        [1 / sqrt(2)] * 3,
        "sympairs-6",
    ),
    # pattern (x1, x2, x3, 0, -x3, -x2, -x1)
    7: _transform(
        7,
        [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]],
        [1 / sqrt(2)] * 3,
        "sympairs-7",
    ),
}


def spherical_to_t(theta, phi):
    """Unit vector (cos phi sin theta, sin phi, cos phi cos theta)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack(
        [np.cos(phi) * np.sin(theta), np.sin(phi), np.cos(phi) * np.cos(theta)]
    )


def embed(transform, t):
    """Map t-coordinates to x-coordinates; unit t gives unit x."""
    return np.tensordot(transform.matrix, np.asarray(t, dtype=float), axes=1)


def _pair_product(x_rows):
    n = x_rows.shape[0]
    v = np.ones_like(x_rows[0])
    for i in range(n):
        for j in range(i + 1, n):
            v = v * (x_rows[j] - x_rows[i])
    return v


def _det3_generalized(x_rows, exponents):
    m = [[x_rows[j] ** int(a) for j in range(3)] for a in exponents]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


@dataclass
class SphereGrid:
    """Determinant values over a (phi, theta) lattice on one sphere slice."""

    n: int
    theta_count: int
    phi_count: int
    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray  # shape (phi_count, theta_count)
    transform_label: str
    exponents: tuple = None

    def to_csv_text(self):
        lines = ["theta,phi,value"]
        for i, phi in enumerate(self.phis):
            row = self.values[i]
            for j, theta in enumerate(self.thetas):
                lines.append(f"{fmt(theta)},{fmt(phi)},{fmt(row[j])}")
        return "\n".join(lines) + "\n"

    def to_json_text(self):
        payload = {
            "n": self.n,
            "transform_label": self.transform_label,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "theta_count": self.theta_count,
            "phi_count": self.phi_count,
            "values": list(self.values.ravel()),
        }
        return json_text(payload)

    def write(self, path):
        text = self.to_json_text() if str(path).endswith(".json") else self.to_csv_text()
        with open(path, "w", newline="") as fh:
            fh.write(text)


def grid_eval(n, resolution=(720, 360), exponents=None):
    """Evaluate v_n (or g_3 for integer exponents) over the slice lattice.

    resolution is (theta_count, phi_count); theta covers [0, 2*pi) half-open
    and phi covers [-pi/2, pi/2] inclusive.
    """
    if n not in TRANSFORMS:
        raise UnsupportedDimension("grids are defined for dimensions 3..7")
    theta_count, phi_count = int(resolution[0]), int(resolution[1])
    if theta_count < 2 or phi_count < 2:
        raise ValueError("resolution must be at least 2x2")
    if exponents is not None:
        if n != 3:
            raise GeneralizedOnlyFor3D("exponent grids are only defined for n = 3")
        exponents = tuple(int(a) for a in exponents)
        if len(exponents) != 3:
            raise ValueError("need exactly three exponents")
        if any(a != int(a) or a < 0 for a in exponents):
            # the lattice hits zero coordinates, so negative powers blow up
            raise ValueError("exponents must be nonnegative integers")
    transform = TRANSFORMS[n]
    thetas = np.linspace(0.0, 2.0 * np.pi, theta_count, endpoint=False)
    phis = np.linspace(-np.pi / 2.0, np.pi / 2.0, phi_count)
    values = np.empty((phi_count, theta_count))
    for start in range(0, phi_count, PHI_CHUNK):
        block = phis[start:start + PHI_CHUNK]
        th, ph = np.meshgrid(thetas, block)
        x = embed(transform, spherical_to_t(th, ph))
        if exponents is None:
            values[start:start + PHI_CHUNK] = _pair_product(x)
        else:
            values[start:start + PHI_CHUNK] = _det3_generalized(x, exponents)
    return SphereGrid(
        n=n,
        theta_count=theta_count,
        phi_count=phi_count,
        thetas=thetas,
        phis=phis,
        values=values,
        transform_label=transform.label,
        exponents=exponents,
    )


def rodrigues_circle(theta):
    """Rotate (-1, 0, 1)/sqrt(2) about (1,1,1)/sqrt(3) by theta; return (x, v_3).

    Along this circle v_3 equals cos(3*theta)/sqrt(2), so the three maxima and
    three minima are the cyclic and anti-cyclic coordinate permutations.
    Accepts a scalar or an array of angles.
    """
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    point = np.stack([-sqrt(3) * c + s, -2 * s, sqrt(3) * c + s]) / sqrt(6)
    value = (point[1] - point[0]) * (point[2] - point[0]) * (point[2] - point[1])
    if theta.ndim == 0:
        return point.reshape(3), float(value)
    return point, value


def rodrigues_matrix(theta):
    """Explicit rotation matrix about (1,1,1)/sqrt(3) by theta."""
    c, s = np.cos(theta), np.sin(theta)
    r3 = sqrt(3)
    return (1.0 / 3.0) * np.array(
        [
            [2 * c + 1, 1 - c - r3 * s, 1 - c + r3 * s],
            [1 - c + r3 * s, 2 * c + 1, 1 - c - r3 * s],
            [1 - c - r3 * s, 1 - c + r3 * s, 2 * c + 1],
        ]
    )


def grid_local_maxima(grid):
    """Lattice sites where |value| strictly exceeds all 8 neighbors.

    theta wraps around; phi does not (pole rows have only inward neighbors).
    Returns an array of (phi_index, theta_index) pairs.
    """
    a = np.abs(grid.values)
    strict = np.ones_like(a, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = np.roll(a, (-di, -dj), axis=(0, 1))
            if di == -1:
                shifted[-1, :] = -np.inf
            elif di == 1:
                shifted[0, :] = -np.inf
            strict &= a > shifted
    return np.argwhere(strict)


def sign_change_edges(values):
    """Masks of lattice edges whose endpoint values differ in sign.

    Returns (theta_edges, phi_edges): theta_edges[i, j] marks the wrap-around
    edge from column j to j+1 in row i; phi_edges[i, j] the edge from row i
    to i+1.
    """
    s = np.sign(values)
    theta_edges = s * np.roll(s, -1, axis=1) < 0
    phi_edges = s[:-1, :] * s[1:, :] < 0
    return theta_edges, phi_edges
