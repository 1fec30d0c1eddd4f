"""Fire-front polylines and the geometry that keeps them well-formed.

A front is a closed polyline (counterclockwise, at least 3 distinct
vertices, consecutive duplicates removed).  Marching can fold a raw ray
front over itself (swallowtails); :func:`untangle` restores the outer
simple boundary of the burned region.  Polygon set operations are
delegated to shapely/GEOS; tests cross-check the untangling against a
hand-constructed segment-intersection oracle.
"""

from __future__ import annotations

import numpy as np
import shapely
from shapely.geometry import LineString, MultiPolygon, Polygon
from shapely.ops import polygonize, unary_union

from .errors import FrontGeometryError, InvalidInputError

DEDUPE_TOL = 1e-12


class FrontPolyline:
    """A closed fire front (or an open polyline when ``closed=False``).

    Closed fronts are stored counterclockwise without the repeated
    closing vertex; consecutive duplicate vertices (within 1e-12) are
    dropped at construction.
    """

    def __init__(self, points, closed=True):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise FrontGeometryError(f"points must have shape (N, 2), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise FrontGeometryError("front vertices must be finite")
        if closed and pts.shape[0] > 1 and np.hypot(*(pts[0] - pts[-1])) <= DEDUPE_TOL:
            pts = pts[:-1]
        if pts.shape[0] > 1:
            seg = np.hypot(*(pts[1:] - pts[:-1]).T)
            keep = np.concatenate([[True], seg > DEDUPE_TOL])
            pts = pts[keep]
        need = 3 if closed else 2
        if pts.shape[0] < need:
            raise FrontGeometryError(
                f"front needs at least {need} distinct vertices, got {pts.shape[0]}"
            )
        self.closed = bool(closed)
        if closed and _signed_area(pts) < 0:
            pts = pts[::-1].copy()
        self.points = pts

    # -- geometry ------------------------------------------------------
    @property
    def n(self):
        return self.points.shape[0]

    @property
    def signed_area(self):
        """Shoelace area (counterclockwise positive); 0 for open polylines."""
        return _signed_area(self.points) if self.closed else 0.0

    @property
    def area(self):
        return abs(self.signed_area)

    @property
    def perimeter(self):
        pts = self.points
        seg = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
        return float(np.sum(seg if self.closed else seg[:-1]))

    @property
    def bbox(self):
        """(xmin, ymin, xmax, ymax)."""
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def is_simple(self):
        return bool(self.as_linestring().is_simple)

    def as_linestring(self):
        pts = self.points
        if self.closed:
            pts = np.vstack([pts, pts[:1]])
        return LineString(pts)

    def as_polygon(self):
        if not self.closed:
            raise FrontGeometryError("open polyline has no enclosed region")
        return Polygon(self.points)

    def __repr__(self):
        tag = "closed" if self.closed else "open"
        return f"FrontPolyline({self.n} vertices, {tag}, area={self.area:.6g})"


def _signed_area(pts):
    x = pts[:, 0]
    y = pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def resample(front, spacing):
    """Redistribute vertices uniformly by arc length at roughly ``spacing``.

    The vertex count is round(perimeter / spacing) (floor 3 for closed
    fronts), so the realized spacing matches the request to within half a
    step.  Raises when the spacing exceeds the perimeter.
    """
    if spacing <= 0:
        raise InvalidInputError(f"spacing must be positive, got {spacing}")
    pts = front.points
    if front.closed:
        ring = np.vstack([pts, pts[:1]])
    else:
        ring = pts
    seg = np.hypot(*(ring[1:] - ring[:-1]).T)
    arclen = np.concatenate([[0.0], np.cumsum(seg)])
    total = float(arclen[-1])
    if spacing > total:
        raise InvalidInputError(
            f"spacing {spacing:g} exceeds the front perimeter {total:g}"
        )
    if front.closed:
        n = max(3, int(round(total / spacing)))
        s = np.arange(n) * (total / n)
    else:
        n = max(2, int(round(total / spacing)) + 1)
        s = np.linspace(0.0, total, n)
    x = np.interp(s, arclen, ring[:, 0])
    y = np.interp(s, arclen, ring[:, 1])
    return FrontPolyline(np.column_stack([x, y]), closed=front.closed)


def _outer_ring(geom, scale):
    """Exterior ring of a (possibly pinched) union as a simple polygon."""
    if isinstance(geom, Polygon) and LineString(geom.exterior).is_simple:
        return geom.exterior
    # point-pinched unions (faces meeting at isolated vertices) come back
    # as MultiPolygons or self-touching shells; weld them with a +/- eps
    # buffer, which perturbs the boundary by O(eps)
    eps = 1e-9 * max(scale, 1.0)
    welded = geom.buffer(eps, quad_segs=2).buffer(-eps, quad_segs=2)
    if isinstance(welded, MultiPolygon):
        raise FrontGeometryError(
            "untangled front is disconnected; cannot extract a single boundary"
        )
    return welded.exterior


def untangle(front):
    """Outer simple boundary of the region enclosed by a closed front.

    Simple fronts are returned unchanged (exact fixed point).  Otherwise
    the ring is noded at its self-intersections, the resulting faces are
    polygonized and unioned, and the union's exterior — swallowtail loops
    removed — is returned counterclockwise.  The output encloses the
    input's enclosed region.
    """
    if not front.closed:
        raise FrontGeometryError("untangle requires a closed front")
    if front.is_simple:
        return front
    noded = unary_union(front.as_linestring())
    faces = [f for f in polygonize(noded) if f.area > 0.0]
    if not faces:
        raise FrontGeometryError("front encloses no area; cannot untangle")
    merged = unary_union(faces)
    xmin, ymin, xmax, ymax = front.bbox
    ring = _outer_ring(merged, float(np.hypot(xmax - xmin, ymax - ymin)))
    return FrontPolyline(np.asarray(ring.coords)[:-1], closed=True)


def hausdorff_distance(a, b, densify=None):
    """Symmetric Hausdorff distance between two fronts' boundary curves.

    Both curves are densified (default: 1/512 of the smaller perimeter)
    so the discrete vertex-based GEOS computation approximates the true
    curve distance.
    """
    la = a.as_linestring()
    lb = b.as_linestring()
    if densify is None:
        densify = min(a.perimeter, b.perimeter) / 512.0
    la = la.segmentize(densify)
    lb = lb.segmentize(densify)
    return float(shapely.hausdorff_distance(la, lb))


def encloses(outer, inner, tol=0.0):
    """True when the closed front ``outer`` contains ``inner`` (with slack)."""
    po = outer.as_polygon()
    if tol:
        po = po.buffer(tol)
    return bool(po.covers(inner.as_polygon()))
