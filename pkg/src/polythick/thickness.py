"""Self-distance machinery: critical pairs, dcsd/scsd, and discrete thickness.

The squared distance between two points sliding along the polygon is piecewise
quadratic; a pair is *doubly critical* when each point locally extremizes the
distance to the other (perpendicular-foot stationarity inside an edge,
one-sided derivative sign tests at a vertex), and *singly critical* when at
least one of the two directions is critical.  dcsd is the minimum distance
over doubly critical pairs.  scsd is the infimum over the singly critical
set: one-direction criticality admits one-parameter families of pairs whose
distance can decrease all the way to a boundary where the family stops
existing, so the boundary pairs are enumerated too.  The thickness radius is

    delta_n = min(min_rad, dcsd / 2),      delta_n = 0 when not embedded.

The pair scan is O(n^2), blocked over rows so n = 4096 stays within a few
seconds and a few hundred MB.  All candidate families are enumerated with
numpy; Python-level pair objects are only materialised by critical_pairs().
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .polygon import Polygon

__all__ = [
    "CriticalPair",
    "ThicknessReport",
    "critical_pairs",
    "dcsd",
    "scsd",
    "is_simple",
    "delta_n",
    "arc_total_curvature",
]

KIND_NAMES = ("vertex-vertex", "vertex-edge", "edge-edge")
DEFAULT_TOL = 1e-9        # extremality classification (normalized derivatives)
PARAM_TOL = 1e-9          # slack for foot parameters at edge ends
_MEMBER_EPS = 1e-9        # foot this close to an edge end counts as the vertex
_BLOCK = 96               # row-block size for the O(n^2) scans


@dataclass(frozen=True)
class CriticalPair:
    """One critical pair, normalised so s < t.

    s, t are arc-length parameters in [0, 1); i, j identify the edge (or
    vertex, for a point sitting at one) that carries each point, used for
    deterministic tie-breaking.
    """

    s: float
    t: float
    distance: float
    kind: str           # vertex-vertex | vertex-edge | edge-edge
    criticality: str    # doubly | singly
    i: int
    j: int


@dataclass(frozen=True)
class ThicknessReport:
    min_rad: float
    max_curv: float
    max_curv2: float
    dcsd: float
    scsd: float
    delta_n: float
    inv_delta_n: float
    delta_n_alt: float          # min(min_rad, scsd); cross-form sanity value
    binding: str                # curvature | distance (ties -> curvature)
    achieving_vertex: int
    achieving_pair: CriticalPair | None
    simple: bool

    def to_json(self) -> str:
        d = asdict(self)
        pair = d.pop("achieving_pair")
        if pair is not None:
            for key, val in pair.items():
                d[f"pair_{key}"] = val
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ThicknessReport":
        d = json.loads(text)
        pair_keys = [k for k in d if k.startswith("pair_")]
        pair = None
        if pair_keys:
            pair = CriticalPair(**{k[len("pair_"):]: d.pop(k) for k in pair_keys})
        return cls(achieving_pair=pair, **d)


# ---------------------------------------------------------------------------
# geometry tables
# ---------------------------------------------------------------------------


def _tables(V: np.ndarray):
    """Edge vectors, lengths, unit directions, cumulative arc lengths."""
    E = np.roll(V, -1, axis=0) - V
    lens = np.linalg.norm(E, axis=1)
    dirs = E / lens[:, None]
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    return E, lens, dirs, cum


def _extremal(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Vertex extremality from normalized one-sided derivatives a (in), b (out).

    The squared distance curves upward along each edge, so a flat one-sided
    slope can only belong to a minimum; a strict maximum needs strictly
    opposite signs.  Hence: min iff a <= tol and b >= -tol, max iff a >= tol
    and b <= -tol.
    """
    return ((a <= tol) & (b >= -tol)) | ((a >= tol) & (b <= -tol))


class _Collector:
    """Flat arrays of accepted candidates from all enumeration families."""

    def __init__(self):
        self._cols = {k: [] for k in ("dist", "i", "j", "kind", "s", "t", "doubly")}

    def add(self, mask, dist, i, j, kind, s, t, doubly: bool):
        if not np.any(mask):
            return
        cols = self._cols
        cols["dist"].append(np.broadcast_to(dist, mask.shape)[mask])
        cols["i"].append(np.broadcast_to(i, mask.shape)[mask])
        cols["j"].append(np.broadcast_to(j, mask.shape)[mask])
        count = int(mask.sum())
        cols["kind"].append(np.full(count, kind, dtype=np.int8))
        cols["s"].append(np.broadcast_to(s, mask.shape)[mask])
        cols["t"].append(np.broadcast_to(t, mask.shape)[mask])
        cols["doubly"].append(np.full(count, doubly, dtype=bool))

    def arrays(self):
        cols = self._cols
        if not cols["dist"]:
            z = np.zeros(0)
            return dict(dist=z, i=z.astype(int), j=z.astype(int),
                        kind=z.astype(np.int8), s=z, t=z, doubly=z.astype(bool))
        return dict(
            dist=np.concatenate(cols["dist"]),
            i=np.concatenate(cols["i"]).astype(int),
            j=np.concatenate(cols["j"]).astype(int),
            kind=np.concatenate(cols["kind"]),
            s=np.concatenate(cols["s"]),
            t=np.concatenate(cols["t"]),
            doubly=np.concatenate(cols["doubly"]),
        )


def _scan(V: np.ndarray, singly: bool, tol: float = DEFAULT_TOL,
          block: int = _BLOCK) -> dict:
    """Enumerate critical-pair candidates on a closed polyline.

    Families:
      edge-edge      mutual perpendicular feet inside non-adjacent edges,
                     plus one representative per overlapping parallel pair;
                     always doubly.
      vertex-edge    perpendicular foot of a vertex inside a non-incident
                     edge; doubly iff the vertex-side sign test passes, else
                     singly (the edge side alone is critical).
      vertex-vertex  both vertex sign tests -> doubly, exactly one -> singly.
      family end     (singly mode only) edge points seen perpendicularly by
                     one one-sided direction of a vertex.  These close off the
                     one-parameter families of perpendicular-foot pairs whose
                     foot slides off an edge end, where the family distance
                     can keep decreasing right up to the (open) boundary.

    Pairs whose two points share an edge are excluded (which also removes all
    arc-distance < edge-length configurations), as are edge-edge pairs on
    cyclically adjacent edges, whose minima collapse into the shared vertex.
    """
    n = V.shape[0]
    E, lens, dirs, cum = _tables(V)
    L = cum[-1]
    idx = np.arange(n)
    out = _Collector()

    def arc(edge_idx, frac):
        return (cum[edge_idx] + frac * lens[edge_idx]) / L

    Jrow = idx[None, :]
    c = (lens * lens)[None, :]                             # (1, n)

    # Squared distance between sliding points is the quadratic form
    #   d^2(s, t) = w2 + a s^2 + c t^2 + 2 (c1 s - c2 t - b s t)
    # in the foot parameters, so no (block, n, 3) displacement array is ever
    # materialised once w0 has been contracted into w2, b, c1, c2.
    for r0 in range(0, n, block):
        R = idx[r0:r0 + block]
        Ri = R[:, None]
        gap = np.minimum((Jrow - Ri) % n, (Ri - Jrow) % n)
        pair_ok = (Jrow > Ri) & (gap >= 2)

        a = (lens[R] * lens[R])[:, None]                   # (bi, 1)
        b = E[R] @ E.T                                     # (bi, n)
        w0 = V[R][:, None, :] - V[None, :, :]              # P_i - P_j (bi, n, 3)
        w2 = np.einsum("bjk,bjk->bj", w0, w0)
        c1 = np.einsum("bk,bjk->bj", E[R], w0)
        c2 = np.einsum("jk,bjk->bj", E, w0)
        um_w = np.einsum("bk,bjk->bj", dirs[(R - 1) % n], w0)   # <u-_k, w0>
        up_w = np.einsum("bk,bjk->bj", dirs[R], w0)             # <u+_k, w0>
        vm_w = -np.einsum("jk,bjk->bj", dirs[(idx - 1) % n], w0)  # <u-_j, -w0>
        vp_w = -np.einsum("jk,bjk->bj", dirs, w0)                 # <u+_j, -w0>
        um_E = dirs[(R - 1) % n] @ E.T
        up_E = dirs[R] @ E.T
        del w0

        def d2_at(s, t):
            return w2 + a * s * s + c * t * t + 2.0 * (c1 * s - c2 * t - b * s * t)

        # ---- edge-edge -----------------------------------------------------
        denom = a * c - b * b
        parallel = denom <= 1e-12 * a * c
        safe_den = np.where(parallel, 1.0, denom)
        s_star = np.where(parallel, -1.0, (b * c2 - c * c1) / safe_den)
        t_star = np.where(parallel, -1.0, (a * c2 - b * c1) / safe_den)
        inr = (pair_ok & ~parallel
               & (s_star >= -PARAM_TOL) & (s_star <= 1.0 + PARAM_TOL)
               & (t_star >= -PARAM_TOL) & (t_star <= 1.0 + PARAM_TOL))
        sc = np.clip(s_star, 0.0, 1.0)
        tc = np.clip(t_star, 0.0, 1.0)
        dist = np.sqrt(np.maximum(d2_at(sc, tc), 0.0))
        out.add(inr, dist, Ri, Jrow, 2, arc(Ri, sc), arc(Jrow, tc), True)

        # parallel overlap representative: project edge-j ends on the i axis
        tau0 = -c1 / a
        tau1 = (b - c1) / a
        lo = np.maximum(np.minimum(tau0, tau1), 0.0)
        hi = np.minimum(np.maximum(tau0, tau1), 1.0)
        has = pair_ok & parallel & (hi >= lo - PARAM_TOL)
        if np.any(has):
            smid = np.clip(0.5 * (lo + hi), 0.0, 1.0)
            tmid = np.clip((c2 + smid * b) / c, 0.0, 1.0)
            distp = np.sqrt(np.maximum(d2_at(smid, tmid), 0.0))
            out.add(has, distp, Ri, Jrow, 2, arc(Ri, smid), arc(Jrow, tmid), True)

        # ---- vertex(row) - edge(col): d^2(f) = w2 - 2 f c2 + f^2 c ----------
        foot = c2 / c
        not_incident = (Jrow != Ri) & (Jrow != (Ri - 1) % n)
        inr_f = (foot >= -PARAM_TOL) & (foot <= 1.0 + PARAM_TOL) & not_incident
        fc = np.clip(foot, 0.0, 1.0)
        # a foot at an edge end is that vertex; drop it when it shares an
        # edge with the row vertex (the vertex-vertex family owns the rest)
        at0 = fc <= _MEMBER_EPS
        at1 = fc >= 1.0 - _MEMBER_EPS
        inr_f &= ~(at0 & (Jrow == (Ri + 1) % n))
        inr_f &= ~(at1 & (Jrow == (Ri - 2) % n))
        dq = np.sqrt(np.maximum(w2 - 2.0 * fc * c2 + fc * fc * c, 0.0))
        safe = np.where(dq > 0.0, dq, 1.0)
        am = (um_w - fc * um_E) / safe
        ap = (up_w - fc * up_E) / safe
        vert_ok = _extremal(am, ap, tol)
        s_arc = np.broadcast_to((cum[R] / L)[:, None], dq.shape)
        out.add(inr_f & vert_ok, dq, Ri, Jrow, 1, s_arc, arc(Jrow, fc), True)
        if singly:
            out.add(inr_f & ~vert_ok, dq, Ri, Jrow, 1, s_arc, arc(Jrow, fc), False)

        # ---- vertex - vertex -------------------------------------------------
        dvv = np.sqrt(w2)                                  # |V_k - V_j|
        safe_v = np.where(dvv > 0.0, dvv, 1.0)
        degenerate = dvv == 0.0
        e1 = _extremal(um_w / safe_v, up_w / safe_v, tol) | degenerate
        e2 = _extremal(vm_w / safe_v, vp_w / safe_v, tol) | degenerate
        svv = np.broadcast_to((cum[R] / L)[:, None], dvv.shape)
        tvv = np.broadcast_to((cum[:n] / L)[None, :], dvv.shape)
        out.add(pair_ok & e1 & e2, dvv, Ri, Jrow, 0, svv, tvv, True)
        if singly:
            out.add(pair_ok & (e1 ^ e2), dvv, Ri, Jrow, 0, svv, tvv, False)

        # ---- family ends: one-sided perpendicular sight from a vertex -------
        # An edge point y with (V_k - y) perpendicular to one of V_k's edge
        # directions bounds the continuum {(x, foot of x): foot interior} that
        # sweeps past V_k; the family's distances reach their infimum at this
        # boundary even when the boundary pair itself has a descending other
        # side, so no sign condition is applied here.
        if singly:
            for u_w, u_E in ((um_w, um_E), (up_w, up_E)):
                good = np.abs(u_E) > 1e-15 * lens[None, :]
                tm = np.where(good, u_w / np.where(good, u_E, 1.0), -1.0)
                interior = (tm >= PARAM_TOL) & (tm <= 1.0 - PARAM_TOL)
                keep0 = interior & not_incident
                if not np.any(keep0):
                    continue
                tmc = np.clip(tm, 0.0, 1.0)
                dm = np.sqrt(np.maximum(w2 - 2.0 * tmc * c2 + tmc * tmc * c, 0.0))
                out.add(keep0, dm, Ri, Jrow, 1,
                        np.broadcast_to((cum[R] / L)[:, None], dm.shape),
                        arc(Jrow, tmc), False)

    return out.arrays()


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def critical_pairs(p: Polygon, mode: str = "doubly",
                   tol: float = DEFAULT_TOL) -> list[CriticalPair]:
    """Critical pairs of p, sorted by (distance, i, j).

    mode="doubly" returns only doubly critical pairs; mode="singly" returns
    every pair critical in at least one direction, with the criticality field
    distinguishing the two.  Duplicate detections of one geometric pair (a
    perpendicular foot landing exactly on a vertex is found by two families)
    are merged, keeping the doubly-critical classification when either
    witness provides it.
    """
    if mode not in ("doubly", "singly"):
        raise ValueError(f"mode must be 'doubly' or 'singly', got {mode!r}")
    arr = _scan(np.asarray(p.vertices, dtype=float), singly=(mode == "singly"),
                tol=tol)
    order = np.lexsort((arr["kind"], arr["j"], arr["i"], ~arr["doubly"]))
    seen: set[tuple] = set()
    pairs: list[CriticalPair] = []
    for k in order:
        s, t = float(arr["s"][k]), float(arr["t"][k])
        i, j = int(arr["i"][k]), int(arr["j"][k])
        if s > t:
            s, t = t, s
            i, j = j, i
        key = (round(s, 9), round(t, 9))
        if key in seen:
            continue
        seen.add(key)
        pairs.append(CriticalPair(
            s=s, t=t, distance=float(arr["dist"][k]),
            kind=KIND_NAMES[int(arr["kind"][k])],
            criticality="doubly" if arr["doubly"][k] else "singly",
            i=i, j=j))
    pairs.sort(key=lambda q: (q.distance, q.i, q.j))
    return pairs


def _min_with_tiebreak(arr: dict, mask: np.ndarray):
    """(min distance, winning index) with lexicographic (i, j) tie-break."""
    if not np.any(mask):
        return float("inf"), None
    cand = np.nonzero(mask)[0]
    d = arr["dist"][cand]
    dmin = float(d.min())
    near = cand[d <= dmin + 1e-12]
    ii, jj = arr["i"][near], arr["j"][near]
    ss, tt = arr["s"][near], arr["t"][near]
    # normalise labels the way critical_pairs() reports them
    swap = ss > tt
    ii2 = np.where(swap, jj, ii)
    jj2 = np.where(swap, ii, jj)
    pick = near[np.lexsort((arr["kind"][near], jj2, ii2))[0]]
    return dmin, int(pick)


def dcsd(p: Polygon) -> float:
    """Doubly critical self distance; +inf when no doubly critical pair exists."""
    arr = _scan(np.asarray(p.vertices, dtype=float), singly=False)
    val, _ = _min_with_tiebreak(arr, np.ones(len(arr["dist"]), dtype=bool))
    return val


def scsd(p: Polygon) -> float:
    """Infimum of distance over pairs critical in at least one direction.

    Pairs critical in exactly one direction come in one-parameter families;
    where such a family terminates (its perpendicular foot sliding off an
    edge end) the infimum may sit on the boundary, so boundary pairs count.
    """
    arr = _scan(np.asarray(p.vertices, dtype=float), singly=True)
    val, _ = _min_with_tiebreak(arr, np.ones(len(arr["dist"]), dtype=bool))
    return val


# ---------------------------------------------------------------------------
# simplicity
# ---------------------------------------------------------------------------


def _min_nonadjacent_edge_distance(V: np.ndarray, block: int = _BLOCK) -> float:
    """Exact minimum distance between all non-adjacent edge pairs.

    For each pair the convex quadratic |(P_i + s E_i) - (P_j + t E_j)|^2 is
    minimised over the unit square: the interior stationary point when it is
    in range, else the best of the four clamped boundary edges.
    """
    n = V.shape[0]
    E = np.roll(V, -1, axis=0) - V
    lens2 = np.einsum("ij,ij->i", E, E)
    idx = np.arange(n)
    Jrow = idx[None, :]
    c = lens2[None, :]
    best2 = float("inf")
    for r0 in range(0, n, block):
        R = idx[r0:r0 + block]
        Ri = R[:, None]
        gap = np.minimum((Jrow - Ri) % n, (Ri - Jrow) % n)
        mask = (Jrow > Ri) & (gap >= 2)
        if not np.any(mask):
            continue
        a = lens2[R][:, None]
        b = E[R] @ E.T
        w0 = V[R][:, None, :] - V[None, :, :]
        w2 = np.einsum("bjk,bjk->bj", w0, w0)
        c1 = np.einsum("bk,bjk->bj", E[R], w0)
        c2 = np.einsum("jk,bjk->bj", E, w0)
        del w0
        denom = a * c - b * b
        ok = denom > 1e-14 * a * c
        safe_den = np.where(ok, denom, 1.0)
        s_int = np.where(ok, (b * c2 - c * c1) / safe_den, -1.0)
        t_int = np.where(ok, (a * c2 - b * c1) / safe_den, -1.0)
        d2 = np.full(b.shape, np.inf)

        def acc(s, t):
            nonlocal d2
            cand = w2 + a * s * s + c * t * t + 2.0 * (c1 * s - c2 * t - b * s * t)
            d2 = np.minimum(d2, cand)

        interior = ok & (s_int >= 0) & (s_int <= 1) & (t_int >= 0) & (t_int <= 1)
        if np.any(interior):
            acc(np.where(interior, s_int, 0.0), np.where(interior, t_int, 0.0))
        zeros = np.zeros(b.shape)
        ones = np.ones(b.shape)
        acc(zeros, np.clip(c2 / c, 0.0, 1.0))
        acc(ones, np.clip((c2 + b) / c, 0.0, 1.0))
        acc(np.clip(-c1 / a, 0.0, 1.0), zeros)
        acc(np.clip((b - c1) / a, 0.0, 1.0), ones)
        masked = np.where(mask, d2, np.inf)
        best2 = min(best2, float(max(masked.min(), 0.0)))
    return float(np.sqrt(best2)) if np.isfinite(best2) else float("inf")


def is_simple(p: Polygon, clearance: float | None = None) -> bool:
    """True iff no two non-adjacent edges come within clearance of each other
    and no two vertices coincide within clearance.  Default clearance is
    1e-12 * length: exact-contact detection only.
    """
    V = np.asarray(p.vertices, dtype=float)
    if clearance is None:
        clearance = 1e-12 * p.length
    return _min_nonadjacent_edge_distance(V) > clearance


# ---------------------------------------------------------------------------
# the report
# ---------------------------------------------------------------------------


def delta_n(p: Polygon) -> ThicknessReport:
    """Full thickness report for a closed equilateral polygon.

    delta_n = min(min_rad, dcsd/2) for embedded polygons and exactly 0
    otherwise (coincident vertices or crossing edges).  binding says which of
    the two mechanisms attains the minimum, with ties reported as curvature;
    delta_n_alt = min(min_rad, scsd) is carried for cross-checking the
    alternative representation.
    """
    V = np.asarray(p.vertices, dtype=float)
    kappas = p.kappa_d_all()
    mc = float(np.max(kappas))
    winners = np.nonzero(kappas >= mc - 1e-12 * max(mc, 1.0))[0]
    achieving_vertex = int(winners[0]) if winners.size else 0
    mc2 = float(np.max(p.kappa_d2_all()))
    mr = 0.0 if math.isinf(mc) else (float("inf") if mc == 0.0 else 1.0 / mc)

    arr = _scan(V, singly=True)
    d_val, d_idx = _min_with_tiebreak(arr, arr["doubly"])
    s_val, _ = _min_with_tiebreak(arr, np.ones(len(arr["dist"]), dtype=bool))

    pair = None
    if d_idx is not None:
        s, t = float(arr["s"][d_idx]), float(arr["t"][d_idx])
        i, j = int(arr["i"][d_idx]), int(arr["j"][d_idx])
        if s > t:
            s, t = t, s
            i, j = j, i
        pair = CriticalPair(s=s, t=t, distance=float(arr["dist"][d_idx]),
                            kind=KIND_NAMES[int(arr["kind"][d_idx])],
                            criticality="doubly", i=i, j=j)

    simple = is_simple(p)
    binding = "curvature" if mr <= d_val / 2.0 else "distance"
    if simple:
        delta = min(mr, d_val / 2.0)
        alt = min(mr, s_val)
    else:
        delta = 0.0
        alt = 0.0
    inv = 1.0 / delta if delta > 0.0 else float("inf")
    return ThicknessReport(
        min_rad=mr, max_curv=mc, max_curv2=mc2, dcsd=d_val, scsd=s_val,
        delta_n=delta, inv_delta_n=inv, delta_n_alt=alt, binding=binding,
        achieving_vertex=achieving_vertex, achieving_pair=pair, simple=simple)


# ---------------------------------------------------------------------------
# fast paths shared with the annealer and the smooth-curve proxy
# ---------------------------------------------------------------------------


def inv_delta_objective(V: np.ndarray, clearance: float) -> float:
    """max(max_curv, 2/dcsd) of the closed polyline V, +inf when the polygon
    is within clearance of self-contact or folds back.  This is the annealing
    objective: identical to 1/delta_n up to floating-point reciprocal
    rounding, but skips pair materialisation and the report."""
    E, lens, dirs, cum = _tables(V)
    prev = np.roll(dirs, 1, axis=0)
    phi = np.arctan2(np.linalg.norm(np.cross(prev, dirs), axis=1),
                     np.einsum("ij,ij->i", prev, dirs))
    if np.any(phi >= np.pi - 1e-15):
        return float("inf")
    half = 0.5 * (np.roll(lens, 1) + lens)
    mc = float(np.max(2.0 * np.tan(0.5 * phi) / half))
    if _min_nonadjacent_edge_distance(V) <= clearance:
        return float("inf")
    arr = _scan(V, singly=False)
    dv, _ = _min_with_tiebreak(arr, np.ones(len(arr["dist"]), dtype=bool))
    if dv <= 0.0:
        return float("inf")
    return max(mc, 2.0 / dv)


def proxy_dcsd(V: np.ndarray) -> float:
    """dcsd of a closed polyline given directly as a vertex array."""
    arr = _scan(np.asarray(V, dtype=float), singly=False)
    val, _ = _min_with_tiebreak(arr, np.ones(len(arr["dist"]), dtype=bool))
    return val


# ---------------------------------------------------------------------------
# curvature between pair parameters
# ---------------------------------------------------------------------------


def arc_total_curvature(p: Polygon, s: float, t: float) -> float:
    """Smaller total turning of the two polygon arcs joining parameters s, t.

    Sums the full exterior angle of every vertex strictly between the two
    points along each arc; when an endpoint sits exactly at a vertex that
    vertex's angle is included in both arcs (the turning at the pair point
    itself separates the outgoing from the incoming strand).
    """
    n = p.n
    angles = p.exterior_angles()
    s, t = float(s) % 1.0, float(t) % 1.0
    if s > t:
        s, t = t, s
    eps = 1e-9 / n
    params = np.arange(n) / n      # equilateral: vertex k at k/n
    at_s = np.abs(params - s) < eps
    at_t = np.abs(params - t) < eps
    inside_fwd = (params > s + eps) & (params < t - eps)
    inside_bwd = ((params < s - eps) | (params > t + eps)) & ~at_s & ~at_t
    bonus = float(angles[at_s].sum() + angles[at_t].sum())
    fwd = float(angles[inside_fwd].sum()) + bonus
    bwd = float(angles[inside_bwd].sum()) + bonus
    return min(fwd, bwd)
