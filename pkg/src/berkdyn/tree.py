"""Finite subtrees of the line, retraction, basic tubes and affinoid norms.

A finite subtree is a join-closed set of type II points.  Basic tubes are
open disks with finitely many closed disks removed (or the whole line);
standard affinoids are closed disks with finitely many open disks removed.
Sup norms over affinoids are attained on the finite Shilov boundary, which
makes them exactly computable from Newton polygon data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .field import LogNorm, Poly, Radius, count_zeros_in_disk
from .points import BerkPoint, ball, is_type_ii, join, leq, points_equal, seminorm_eval


@dataclass(frozen=True)
class FiniteTree:
    """Join-closed finite set of type II points, kept in a canonical order."""

    vertices: tuple

    def __len__(self):
        return len(self.vertices)


def _vertex_key(v: BerkPoint):
    return (v.r.e, v.r.delta, v.a)


def _dedup(points, p):
    out = []
    for x in points:
        if not any(points_equal(x, y, p) for y in out):
            out.append(x)
    return out


def hull(points, p: int) -> FiniteTree:
    """Convex hull of finitely many type II points: inputs plus pairwise joins."""
    pts = list(points)
    if not pts:
        raise ValueError("hull of an empty set")
    for x in pts:
        if not is_type_ii(x):
            raise ValueError("hull vertices must be type II points")
    verts = _dedup(pts, p)
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            w = join(verts[i], verts[j], p)
            if not any(points_equal(w, v, p) for v in verts):
                verts.append(w)
    verts.sort(key=_vertex_key)
    return FiniteTree(tuple(verts))


def retract(tree: FiniteTree, x: BerkPoint, p: int) -> BerkPoint:
    """Canonical retraction onto the tree.

    The image is the smallest of the joins of x with the vertices; the
    joins are totally ordered since they all contain x, so the minimum is
    well defined.  It may be an edge-interior point of the tree.
    """
    if not tree.vertices:
        raise ValueError("retraction onto an empty tree")
    best = None
    for v in tree.vertices:
        j = join(x, v, p)
        if best is None or leq(j, best, p):
            best = j
    return best


@dataclass(frozen=True)
class Disk:
    """A disk in the affine chart; openness is implied by the container type."""

    a: Fraction
    r: Radius


@dataclass(frozen=True)
class BasicTube:
    """Open disk minus finitely many closed disks; outer None means the whole line."""

    outer: Disk = None
    removed: tuple = field(default=())


@dataclass(frozen=True)
class StdAffinoid:
    """Closed disk minus finitely many open disks."""

    outer: Disk = None
    removed: tuple = field(default=())


def _sorted_disks(disks):
    return tuple(sorted(disks, key=lambda d: (d.a, d.r.e, d.r.delta)))


def make_tube(outer: Disk, removed, p: int) -> BasicTube:
    removed = _sorted_disks(removed)
    if outer is not None:
        if outer.r.zero:
            raise ValueError("outer disk must have positive radius")
        for d in removed:
            if d.r.zero:
                raise ValueError("removed disks must have positive radius")
            if not (max(Radius.of_scalar(d.a - outer.a, p), d.r) < outer.r):
                raise ValueError("removed disk not strictly inside the outer disk")
    for i in range(len(removed)):
        for j in range(i + 1, len(removed)):
            di, dj = removed[i], removed[j]
            if Radius.of_scalar(di.a - dj.a, p) <= max(di.r, dj.r):
                raise ValueError("removed disks must be pairwise disjoint")
    return BasicTube(outer, removed)


def make_affinoid(outer: Disk, removed, p: int) -> StdAffinoid:
    if outer is None or outer.r.zero:
        raise ValueError("affinoid needs a closed outer disk of positive radius")
    removed = _sorted_disks(removed)
    for d in removed:
        if d.r.zero:
            raise ValueError("removed disks must have positive radius")
        if not (max(Radius.of_scalar(d.a - outer.a, p), d.r) <= outer.r):
            raise ValueError("removed disk not inside the outer disk")
    for i in range(len(removed)):
        for j in range(i + 1, len(removed)):
            di, dj = removed[i], removed[j]
            # open disks at distance equal to the larger radius are disjoint
            if Radius.of_scalar(di.a - dj.a, p) < max(di.r, dj.r):
                raise ValueError("removed disks must be pairwise disjoint")
    return StdAffinoid(outer, removed)


def in_tube(x: BerkPoint, U: BasicTube, p: int) -> bool:
    """Point membership in a basic tube, decided by exact seminorm comparisons."""
    if x.kind == "inf":
        return U.outer is None
    if x.kind == "IV":
        return _iv_in_region(x, U.outer, U.removed, p, outer_open=True)
    a, r = (x.a, Radius.zero_radius()) if x.kind == "I" else (x.a, x.r)
    if U.outer is not None:
        if not (max(Radius.of_scalar(a - U.outer.a, p), r) < U.outer.r):
            return False
    for d in U.removed:
        if max(Radius.of_scalar(a - d.a, p), r) <= d.r:
            return False
    return True


def in_affinoid(x: BerkPoint, A: StdAffinoid, p: int) -> bool:
    if x.kind == "inf":
        return False
    if x.kind == "IV":
        return _iv_in_region(x, A.outer, A.removed, p, outer_open=False)
    a, r = (x.a, Radius.zero_radius()) if x.kind == "I" else (x.a, x.r)
    if not (max(Radius.of_scalar(a - A.outer.a, p), r) <= A.outer.r):
        return False
    for d in A.removed:
        if max(Radius.of_scalar(a - d.a, p), r) < d.r:
            return False
    return True


def _iv_tminus_range(x: BerkPoint, c, p: int):
    """Range of |T - c| at a type IV prefix: (lower, upper), lower None if open."""
    a, r = x.prefix[-1]
    d = Radius.of_scalar(a - c, p)
    if d > r:
        return d, d  # c is outside the last prefix ball: constant value
    return None, r  # c inside: the point may descend toward c


def _iv_in_region(x: BerkPoint, outer, removed, p: int, outer_open: bool) -> bool:
    # outer disk: |T - outer.a| < R (tube) or <= R (affinoid)
    if outer is not None:
        lo, hi = _iv_tminus_range(x, outer.a, p)
        if outer_open:
            if not (hi < outer.r):
                if lo is not None and lo >= outer.r:
                    return False
                raise ValueError("type IV prefix too short to decide membership")
        else:
            if not (hi <= outer.r):
                if lo is not None and lo > outer.r:
                    return False
                raise ValueError("type IV prefix too short to decide membership")
    # removed disks: closed for a tube, open for an affinoid
    for d in removed:
        lo, hi = _iv_tminus_range(x, d.a, p)
        if outer_open:  # removed closed: excluded iff |T - c| <= s
            if hi <= d.r:
                return False
            if lo is None or not (lo > d.r):
                raise ValueError("type IV prefix too short to decide membership")
        else:  # removed open: excluded iff |T - c| < s
            if hi < d.r:
                return False
            if lo is None or not (lo >= d.r):
                raise ValueError("type IV prefix too short to decide membership")
    return True


def _parents(tree: FiniteTree, p: int):
    """Hasse parents in the containment order; the unique root has parent None."""
    verts = tree.vertices
    parents = []
    for v in verts:
        above = [w for w in verts if not points_equal(v, w, p) and leq(v, w, p)]
        if not above:
            parents.append(None)
            continue
        best = above[0]
        for w in above[1:]:
            if leq(w, best, p):
                best = w
        parents.append(best)
    return parents


def tube_from_tree(tree: FiniteTree, p: int) -> BasicTube:
    """The basic tube retracting onto the open part of the tree.

    Removing the endpoints of the tree removes their full retraction
    preimages: a closed disk for each lower endpoint, the complement of an
    open disk for the root when the root is itself an endpoint.
    """
    verts = tree.vertices
    if len(verts) < 2:
        raise ValueError("a single-vertex tree has empty interior")
    parents = _parents(tree, p)
    children = {i: [] for i in range(len(verts))}
    root_i = None
    for i, par in enumerate(parents):
        if par is None:
            root_i = i
        else:
            j = next(k for k, w in enumerate(verts) if w is par)
            children[j].append(i)
    leaves = [
        i for i in range(len(verts))
        if i != root_i and not children[i]
    ]
    removed = [Disk(verts[i].a, verts[i].r) for i in leaves]
    root = verts[root_i]
    if len(children[root_i]) == 1:
        # root is an endpoint: outer = the open disk toward its single child
        child = verts[children[root_i][0]]
        outer = Disk(child.a, root.r)
        return make_tube(outer, removed, p)
    # root is a branch point: the tube is the whole line minus the disks
    return make_tube(None, removed, p)


def exhaust(U: BasicTube, m: int, p: int):
    """An inner tube/affinoid pair on a rational radius schedule.

    The outer radius shrinks by p^(-1/(m+1)) and the removed radii grow by
    p^(+1/(m+1)), so closure(W_m) inside X_m inside W_{m+1} inside U holds
    by exact radius comparison.
    """
    if m < 1:
        raise ValueError("exhaustion index must be positive")
    if U.outer is None:
        raise ValueError(
            "exhaustion needs a tube with an affine outer disk; "
            "invert the chart for complement tubes"
        )
    step = Fraction(1, m + 1)
    outer = Disk(U.outer.a, U.outer.r.scaled(-step))
    removed = [Disk(d.a, d.r.scaled(step)) for d in U.removed]
    try:
        W = make_tube(outer, removed, p)
        X = make_affinoid(outer, removed, p)
    except ValueError as e:
        raise ValueError(f"degenerate exhaustion schedule at m={m}: {e}") from e
    return W, X


def shilov_points(A: StdAffinoid):
    """The finite boundary where sup norms over the affinoid are attained."""
    pts = [ball(A.outer.a, A.outer.r)]
    pts.extend(ball(d.a, d.r) for d in A.removed)
    return pts


@dataclass(frozen=True)
class NormResult:
    value: LogNorm
    witness: BerkPoint = None
    zeros_inside: int = 0


def sup_norm(P: Poly, A: StdAffinoid, p: int) -> NormResult:
    """Exact sup of |P| over the affinoid, with an attaining Shilov witness."""
    if P.is_zero:
        raise ValueError("zero polynomial")
    best, wit = None, None
    for x in shilov_points(A):
        v = seminorm_eval(P, x, p)
        if best is None or v > best:
            best, wit = v, x
    return NormResult(best, wit)


def zeros_in_affinoid(P: Poly, A: StdAffinoid, p: int) -> int:
    """Root count of P inside the affinoid (closed outer minus open removed)."""
    n = count_zeros_in_disk(P, A.outer.a, A.outer.r, p)
    for d in A.removed:
        n -= count_zeros_in_disk(P, d.a, d.r, p, strict=True)
    return n


def inf_norm(P: Poly, A: StdAffinoid, p: int) -> NormResult:
    """Exact inf of |P| over the affinoid.

    If the Newton polygon accounting puts a root of P inside A the inf is
    -inf, returned with the zero count as certificate; otherwise 1/P is
    analytic on A and the inf is attained on the Shilov boundary.
    """
    if P.is_zero:
        raise ValueError("zero polynomial")
    nz = zeros_in_affinoid(P, A, p)
    if nz > 0:
        return NormResult(LogNorm.bottom(), None, nz)
    best, wit = None, None
    for x in shilov_points(A):
        v = seminorm_eval(P, x, p)
        if best is None or v < best:
            best, wit = v, x
    return NormResult(best, wit)


def sup_inf(P: Poly, A: StdAffinoid, p: int):
    """Both extremal norms of |P| over an affinoid, with witnesses."""
    return sup_norm(P, A, p), inf_norm(P, A, p)


def tree_to_dot(tree: FiniteTree, p: int) -> str:
    """Graphviz rendering; vertices labeled "a,r", edges by containment."""
    verts = tree.vertices
    parents = _parents(tree, p)
    lines = ["graph berktree {"]
    for i, v in enumerate(verts):
        rlab = f"p^{v.r.e}" if v.r.delta == 0 else f"p^({v.r.e}{'+' if v.r.delta > 0 else '-'}{abs(v.r.delta)}e)"
        lines.append(f'  v{i} [label="{v.a},{rlab}"];')
    for i, par in enumerate(parents):
        if par is not None:
            j = next(k for k, w in enumerate(verts) if w is par)
            lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
