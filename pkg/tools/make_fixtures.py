"""Regenerate the polygon fixtures under tests/data.

Every fixture is deterministic: exact constructions for the strands and the
star, seed-scanned random polygons for the crumpled pair, and a scanned
single-kink modification for the tight trefoil.  Rerunning overwrites the
files in place; the suite freezes no values that depend on the RNG stream
beyond what these seeds pin down.

Usage: python tools/make_fixtures.py [--only NAME]
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polythick.anneal import crankshaft_move, move_is_admissible
from polythick.polygon import Polygon, random_equilateral_polygon, total_curvature, write_polygon
from polythick.smooth import inscribe_equilateral, preset_curve, rescale_unit
from polythick.thickness import delta_n

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def _report_line(name: str, p: Polygon) -> None:
    r = delta_n(p)
    print(f"{name}: n={p.n} inv_delta={r.inv_delta_n:.6g} minRad={r.min_rad:.6g} "
          f"dcsd={r.dcsd:.6g} scsd={r.scsd:.6g} binding={r.binding} "
          f"simple={r.simple} tc={total_curvature(p):.6f}")


def _curvature_bound(p: Polygon, slack: float = 1e-3) -> bool:
    """minRad below both distance quantities with relative room to spare."""
    r = delta_n(p)
    return (r.simple
            and r.min_rad <= 0.5 * r.dcsd * (1.0 - slack)
            and r.min_rad <= r.scsd * (1.0 - slack))


def _rotation(axis: np.ndarray, theta: float) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    K = np.array([[0.0, -axis[2], axis[1]],
                  [axis[2], 0.0, -axis[0]],
                  [-axis[1], axis[0], 0.0]])
    return np.eye(3) + math.sin(theta) * K + (1.0 - math.cos(theta)) * (K @ K)


def make_strand20() -> Polygon:
    """Two skew perpendicular 5-edge strands whose crossing gap is 0.02.

    The bottom strand runs along x at z=0 and the top along y at z=0.02, so
    the closest approach is the isolated perpendicular pair at the middle
    edge midpoints, at exactly the gap.  Perpendicular skew lines admit no
    pair family below their common perpendicular, which pins dcsd and scsd
    to 0.02 together.  Each connector leaves the bottom strand through a
    deliberately sharp fold (2.44 rad, so curvature rather than distance
    binds the thickness) and continues along equal chords of a circular arc
    to the far end of the other strand; the second connector is the first
    rotated half a turn about z.  All twenty edges are exactly equal by
    construction.
    """
    ell = 1.0 / 20.0
    gap = 0.02
    phi, beta = 2.44, 0.5           # fold angle, fold tilt out of the x-z plane
    A = [np.array([(k - 2.5) * ell, 0.0, 0.0]) for k in range(6)]
    B = [np.array([0.0, (k - 2.5) * ell, gap]) for k in range(6)]
    dir1 = np.array([math.cos(phi),
                     -math.sin(phi) * math.sin(beta),
                     math.sin(phi) * math.cos(beta)])
    N1 = A[5] + ell * dir1
    D = float(np.linalg.norm(B[0] - N1))
    # 4 equal chords of one circular arc from N1 to B0: sin(4a)/sin(a) = D/ell
    alpha = brentq(lambda a: math.sin(4 * a) / math.sin(a) - D / ell,
                   1e-9, math.pi / 4 - 1e-9)
    rho = ell / (2.0 * math.sin(alpha))
    u = (B[0] - N1) / D
    mid = 0.5 * (N1 + B[0])
    bulge = mid - np.array([0.0, 0.0, gap / 2.0])   # away from the crossing
    bulge -= (bulge @ u) * u
    bulge /= np.linalg.norm(bulge)
    centre = mid - bulge * (rho * math.cos(4 * alpha))
    axis = np.cross(N1 - centre, B[0] - centre)
    X = [centre + _rotation(axis, 2 * alpha * k) @ (N1 - centre)
         for k in range(4)]
    half_turn = np.diag([-1.0, -1.0, 1.0])
    verts = A + X + B + [half_turn @ x for x in reversed(X)]
    return Polygon(np.asarray(verts))


def make_pentagram10() -> Polygon:
    """Star pentagon traversed 0-2-4-1-3, each chord split at its midpoint.

    Ten equal edges; non-adjacent edges cross, so the polygon is closed and
    equilateral but not embedded.
    """
    ang = 2.0 * math.pi * np.arange(5.0) / 5.0
    ring = np.stack([np.cos(ang), np.sin(ang), np.zeros(5)], axis=1)
    order = [0, 2, 4, 1, 3]
    verts = []
    for k in range(5):
        a = ring[order[k]]
        b = ring[order[(k + 1) % 5]]
        verts.append(a)
        verts.append(0.5 * (a + b))
    v = np.asarray(verts)
    # normalise to total length 1 like every other fixture
    lens = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    return Polygon(v / lens.sum(), tolerance=1e-9)


def make_crumpled(n: int) -> Polygon:
    """First seeded random equilateral n-gon that is simple and
    curvature-bound; the seed scan keeps the choice reproducible."""
    for seed in range(1000):
        p = random_equilateral_polygon(n, np.random.default_rng(seed))
        if _curvature_bound(p):
            print(f"  crumpled{n}: seed {seed}")
            return p
    raise RuntimeError(f"no curvature-bound simple random {n}-gon in 1000 seeds")


def make_trefoil32() -> Polygon:
    """Inscribed (2,3) torus knot at n=32 with one deliberate sharp bend.

    The raw inscribed polygon is distance-bound (strand gap below bend
    radius).  A single admissible crankshaft rotation over a short sub-chain
    creates a bend sharp enough that curvature binds instead, while the
    sweep check keeps the polygon simple and the knot type intact; total
    turning above 4 pi corroborates knottedness.  The scan order makes the
    pick deterministic.
    """
    curve = preset_curve("torus:2,3", m=4096)
    p0 = rescale_unit(inscribe_equilateral(curve, 32))
    for theta in (2.0, 1.6, 2.4):
        for gap in (3, 2):
            for i in range(32):
                j = (i + gap) % 32
                if not move_is_admissible(p0, i, j, theta, substeps=32):
                    continue
                q = crankshaft_move(p0, i, j, theta)
                if _curvature_bound(q) and total_curvature(q) > 4.0 * math.pi:
                    print(f"  trefoil32: kink i={i} j={j} theta={theta}")
                    return q
    raise RuntimeError("no admissible curvature-binding kink found")


BUILDERS = {
    "strand20": (make_strand20,
                 "skew perpendicular strands, crossing gap 0.02, sharp folds"),
    "pentagram10": (make_pentagram10,
                    "star pentagon, chords split at midpoints; self-crossing"),
    "crumpled10": (lambda: make_crumpled(10),
                   "random simple 10-gon, curvature-bound (seeded scan)"),
    "crumpled12": (lambda: make_crumpled(12),
                   "random simple 12-gon, curvature-bound (seeded scan)"),
    "trefoil32": (make_trefoil32,
                  "inscribed (2,3) torus knot, one sharp kink so curvature binds"),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", choices=sorted(BUILDERS), default=None)
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    for name, (build, comment) in BUILDERS.items():
        if args.only is not None and name != args.only:
            continue
        p = build()
        path = DATA / f"{name}.txt"
        write_polygon(p, path, comment=comment)
        _report_line(name, p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
