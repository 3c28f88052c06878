"""Equilateral closed polygons and open polygonal arcs.

A Polygon is an immutable list of n >= 3 vertices in R^3 whose consecutive
distances all agree to a relative tolerance; the closing edge from the last
vertex back to the first is implicit.  Arc-length parameters live in [0, 1)
and wrap, with t = k/n at vertex k.

Two discrete curvatures are tracked at each vertex, both nonnegative:

  kappa_d(i)   = 2 tan(phi_i / 2) / ((|e_{i-1}| + |e_i|) / 2)
  kappa_d2(i)  =        phi_i      / ((|e_{i-1}| + |e_i|) / 2)

where phi_i is the exterior (turning) angle.  kappa_d2 <= kappa_d always,
with equality only at straight vertices; kappa_d blows up to +inf as the
polygon folds back (phi -> pi) while kappa_d2 stays bounded, which is why
the thickness radius uses kappa_d and the comparison checks use kappa_d2.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import numpy as np

from .geom import exterior_angle

__all__ = [
    "Polygon",
    "PolyArc",
    "from_vertices",
    "regular_ngon",
    "random_equilateral_polygon",
    "kappa_d",
    "kappa_d2",
    "min_rad",
    "max_curv",
    "max_curv2",
    "total_curvature",
    "read_polygon",
    "write_polygon",
    "dumps_polygon",
    "loads_polygon",
]

DEFAULT_EDGE_TOL = 1e-9  # relative spread allowed among edge lengths


def _vertex_array(points) -> np.ndarray:
    v = np.asarray(points, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) vertex array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vertex coordinates must be finite")
    return v


def _angles_from_dirs(d_in: np.ndarray, d_out: np.ndarray) -> np.ndarray:
    # rows of d_in/d_out are unit incoming/outgoing directions at each vertex
    cross = np.cross(d_in, d_out)
    sin = np.linalg.norm(cross, axis=1)
    cos = np.einsum("ij,ij->i", d_in, d_out)
    return np.arctan2(sin, cos)


class Polygon:
    """Closed equilateral polygon.  Construct via from_vertices or regular_ngon."""

    def __init__(self, vertices: np.ndarray, tolerance: float = DEFAULT_EDGE_TOL):
        v = _vertex_array(vertices)
        n = v.shape[0]
        if n < 3:
            raise ValueError("a closed polygon needs at least 3 vertices")
        edges = np.roll(v, -1, axis=0) - v
        lens = np.linalg.norm(edges, axis=1)
        mean = float(lens.mean())
        if mean <= 0.0:
            raise ValueError("polygon has zero total length")
        bad = np.nonzero(np.abs(lens - mean) > tolerance * mean)[0]
        if bad.size:
            i = int(bad[0])
            raise ValueError(
                f"edge {i} has length {lens[i]:.17g}, expected {mean:.17g} "
                f"within relative tolerance {tolerance:g}"
            )
        self._v = v
        self._v.setflags(write=False)
        self._edges = edges
        self._edges.setflags(write=False)
        self._lens = lens
        self._length = float(lens.sum())

    # -- basic shape -------------------------------------------------------

    @property
    def n(self) -> int:
        return self._v.shape[0]

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def length(self) -> float:
        return self._length

    @property
    def edge_length(self) -> float:
        return self._length / self.n

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors, row i from vertex i to vertex i+1 (cyclic)."""
        return self._edges

    def directions(self) -> np.ndarray:
        """Unit edge directions, cached."""
        d = getattr(self, "_dirs", None)
        if d is None:
            d = self._edges / self._lens[:, None]
            d.setflags(write=False)
            self._dirs = d
        return d

    # -- arc-length parametrisation ----------------------------------------

    def arc_point(self, t) -> np.ndarray:
        """Point at arc-length parameter t (mod 1).  Accepts scalars or arrays."""
        t = np.asarray(t, dtype=float)
        u = np.mod(t, 1.0) * self.n
        k = np.minimum(u.astype(int), self.n - 1)
        frac = u - k
        pt = self._v[k] + frac[..., None] * self._edges[k]
        return pt if t.ndim else pt.reshape(3)

    def arc_dir(self, t, side: str = "right") -> np.ndarray:
        """Unit tangent at parameter t.

        At vertex parameters the tangent jumps; side="right" (default) gives
        the outgoing edge direction, side="left" the incoming one.  Off the
        vertices both sides agree.
        """
        if side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        t = np.asarray(t, dtype=float)
        u = np.mod(t, 1.0) * self.n
        k = np.minimum(u.astype(int), self.n - 1)
        frac = u - k
        # a vertex parameter may round to either side of the knot
        eps = 1e-12 * self.n
        at_lo = np.abs(frac) < eps      # at vertex k
        at_hi = frac > 1.0 - eps        # at vertex k+1
        if side == "left":
            k = np.where(at_lo, (k - 1) % self.n, k)
        else:
            k = np.where(at_hi, (k + 1) % self.n, k)
        d = self.directions()[k]
        return d if t.ndim else d.reshape(3)

    # -- curvature ----------------------------------------------------------

    def exterior_angles(self) -> np.ndarray:
        """Turning angle at each vertex, in [0, pi]."""
        a = getattr(self, "_angles", None)
        if a is None:
            d = self.directions()
            a = _angles_from_dirs(np.roll(d, 1, axis=0), d)
            a.setflags(write=False)
            self._angles = a
        return a

    def kappa_d(self, i: int) -> float:
        """Tangent-based discrete curvature at vertex i; +inf at a fold-back."""
        phi = self.exterior_angles()[i % self.n]
        half = 0.5 * (self._lens[(i - 1) % self.n] + self._lens[i % self.n])
        if phi >= np.pi - 1e-15:
            return float("inf")
        return float(2.0 * np.tan(0.5 * phi) / half)

    def kappa_d2(self, i: int) -> float:
        """Angle-based discrete curvature at vertex i, always finite."""
        phi = self.exterior_angles()[i % self.n]
        half = 0.5 * (self._lens[(i - 1) % self.n] + self._lens[i % self.n])
        return float(phi / half)

    def kappa_d_all(self) -> np.ndarray:
        phi = self.exterior_angles()
        half = 0.5 * (np.roll(self._lens, 1) + self._lens)
        with np.errstate(over="ignore"):
            out = 2.0 * np.tan(0.5 * phi) / half
        out = np.where(phi >= np.pi - 1e-15, np.inf, out)
        return out

    def kappa_d2_all(self) -> np.ndarray:
        half = 0.5 * (np.roll(self._lens, 1) + self._lens)
        return self.exterior_angles() / half

    def __repr__(self) -> str:  # pragma: no cover
        return f"Polygon(n={self.n}, length={self.length:.6g})"


class PolyArc:
    """Open polygonal arc: m >= 1 edges, consecutive vertices distinct.

    Edges may have different lengths.  Curvatures are defined at the m-1
    interior vertices only.
    """

    def __init__(self, vertices: np.ndarray):
        v = _vertex_array(vertices)
        if v.shape[0] < 2:
            raise ValueError("an arc needs at least 2 vertices")
        edges = v[1:] - v[:-1]
        lens = np.linalg.norm(edges, axis=1)
        if np.any(lens == 0.0):
            i = int(np.nonzero(lens == 0.0)[0][0])
            raise ValueError(f"consecutive vertices {i} and {i + 1} coincide")
        self._v = v
        self._v.setflags(write=False)
        self._edges = edges
        self._lens = lens
        self._length = float(lens.sum())

    @property
    def m(self) -> int:
        """Number of edges."""
        return self._v.shape[0] - 1

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def length(self) -> float:
        return self._length

    @property
    def edge_lengths(self) -> np.ndarray:
        return self._lens

    def directions(self) -> np.ndarray:
        return self._edges / self._lens[:, None]

    def interior_angles(self) -> np.ndarray:
        """Turning angles at the m-1 interior vertices."""
        d = self.directions()
        return _angles_from_dirs(d[:-1], d[1:])

    def _check_interior(self, i: int) -> None:
        if not 1 <= i <= self.m - 1:
            raise IndexError(
                f"interior vertex index must be in 1..{self.m - 1}, got {i}"
            )

    def kappa_d(self, i: int) -> float:
        """kappa_d at interior vertex i (1-based position i in 1..m-1)."""
        self._check_interior(i)
        phi = float(self.interior_angles()[i - 1])
        half = 0.5 * (self._lens[i - 1] + self._lens[i])
        if phi >= np.pi - 1e-15:
            return float("inf")
        return float(2.0 * np.tan(0.5 * phi) / half)

    def kappa_d2(self, i: int) -> float:
        self._check_interior(i)
        phi = float(self.interior_angles()[i - 1])
        half = 0.5 * (self._lens[i - 1] + self._lens[i])
        return float(phi / half)

    def __repr__(self) -> str:  # pragma: no cover
        return f"PolyArc(m={self.m}, length={self.length:.6g})"


# -- constructors ------------------------------------------------------------


def from_vertices(points, tolerance: float = DEFAULT_EDGE_TOL) -> Polygon:
    """Build a closed polygon, validating the equilateral constraint.

    Args:
      points: (n, 3) array-like of vertices; the edge back to points[0] is
        implicit and included in the equilateral check.
      tolerance: allowed relative deviation of any edge from the mean length.

    Raises:
      ValueError: naming the first offending edge index if the lengths spread
        wider than the tolerance, or on malformed input.
    """
    return Polygon(points, tolerance=tolerance)


def regular_ngon(n: int) -> Polygon:
    """Planar regular n-gon of total length 1 in the xy-plane, centred at 0.

    Vertex k sits at angle 2 pi k / n on a circle of radius
    1 / (2 n sin(pi/n)), so every edge has length exactly 1/n up to rounding.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    r = 1.0 / (2.0 * n * np.sin(np.pi / n))
    ang = 2.0 * np.pi * np.arange(n) / n
    v = np.stack([r * np.cos(ang), r * np.sin(ang), np.zeros(n)], axis=1)
    return Polygon(v)


def random_equilateral_polygon(n: int, rng) -> Polygon:
    """Random closed equilateral n-gon of total length 1, deterministic per rng.

    Draws n independent uniform directions and then alternates "subtract the
    mean" with "renormalise to unit length" until the directions sum to
    (nearly) zero.  The projection converges linearly for generic draws; the
    residual closure defect is folded into the last edge and is far below the
    equilateral tolerance.  The result may be non-simple; callers that need
    embedded polygons must filter.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    for _attempt in range(16):
        e = rng.normal(size=(n, 3))
        e /= np.linalg.norm(e, axis=1)[:, None]
        ok = False
        for _ in range(400):
            s = e.sum(axis=0)
            if float(np.linalg.norm(s)) < 1e-12:
                ok = True
                break
            e -= s / n
            norms = np.linalg.norm(e, axis=1)
            if np.any(norms < 1e-8):  # a direction collapsed; redraw
                break
            e /= norms[:, None]
        if ok:
            v = np.vstack([np.zeros(3), np.cumsum(e[:-1], axis=0)]) / n
            return Polygon(v)
    raise RuntimeError("random polygon closure projection failed to converge")


# -- module-level curvature aggregates ---------------------------------------


def kappa_d(p: Polygon | PolyArc, i: int) -> float:
    return p.kappa_d(i)


def kappa_d2(p: Polygon | PolyArc, i: int) -> float:
    return p.kappa_d2(i)


def max_curv(p: Polygon | PolyArc) -> float:
    """Largest kappa_d over vertices (interior vertices for an arc)."""
    if isinstance(p, Polygon):
        return float(np.max(p.kappa_d_all()))
    if p.m < 2:
        return 0.0
    return max(p.kappa_d(i) for i in range(1, p.m))


def max_curv2(p: Polygon | PolyArc) -> float:
    """Largest kappa_d2, always finite."""
    if isinstance(p, Polygon):
        return float(np.max(p.kappa_d2_all()))
    if p.m < 2:
        return 0.0
    return max(p.kappa_d2(i) for i in range(1, p.m))


def min_rad(p: Polygon | PolyArc) -> float:
    """Reciprocal of max_curv: the smallest local radius; 0 at a fold-back."""
    mc = max_curv(p)
    if mc == 0.0:
        return float("inf")
    if np.isinf(mc):
        return 0.0
    return 1.0 / mc


def total_curvature(p: Polygon | PolyArc) -> float:
    """Sum of turning angles (all vertices for a polygon, interior for an arc)."""
    if isinstance(p, Polygon):
        return float(np.sum(p.exterior_angles()))
    if p.m < 2:
        return 0.0
    return float(np.sum(p.interior_angles()))


# -- text format --------------------------------------------------------------
#
# One vertex per line: three whitespace-separated floats at 17 significant
# digits.  '#' starts a comment, blank lines are skipped, and the closing edge
# is implicit (the first vertex is not repeated).


def dumps_polygon(p: Polygon, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    for x, y, z in p.vertices:
        buf.write(f"{x:.17g} {y:.17g} {z:.17g}\n")
    return buf.getvalue()


def loads_polygon(text: str, tolerance: float = DEFAULT_EDGE_TOL) -> Polygon:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 coordinates, got {len(parts)}")
        try:
            rows.append([float(x) for x in parts])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("no vertices found")
    return from_vertices(np.asarray(rows), tolerance=tolerance)


def write_polygon(p: Polygon, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_polygon(p, comment=comment))


def read_polygon(path, tolerance: float = DEFAULT_EDGE_TOL) -> Polygon:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_polygon(fh.read(), tolerance=tolerance)
