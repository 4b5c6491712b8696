"""The standard cluster: chord combinatorics, enumeration, mutation.

The cluster point (n, m) has band coordinates (m/2^n, 1 + (m-1)/2^n); its
ends are the adjacent dyadic circle points (m-1)/2^n and m/2^n, so the
cluster is dual to the dyadic triangulation of the disk.  (0, 1) names the
same chord as (0, 0) and is normalized away.
"""

from __future__ import annotations

import os
import re
from functools import lru_cache

from .dyadic import Dyadic, CircleAngle, ZERO, ONE, parse_dyadic
from .band import Obj, Rect, Rep, normal_form, obj_from_ends, ends
from .errors import NotInCluster, UnboundedRect, DepthLimit, ParseError


def _max_depth() -> int:
    return int(os.environ.get("MOEBIUS_MAX_DEPTH", "16"))


class ClusterPt:
    """Vertex (n, m) of the standard cluster, canonicalized."""

    __slots__ = ("n", "m")

    def __init__(self, n: int, m: int):
        if n < 0:
            raise ValueError("depth must be nonnegative")
        m %= 1 << (n + 1)
        if n == 0 and m == 1:
            m = 0
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("ClusterPt is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, ClusterPt) and self.n == other.n and self.m == other.m

    def __hash__(self):
        return hash((self.n, self.m))

    def __lt__(self, other: "ClusterPt") -> bool:
        return (self.n, self.m) < (other.n, other.m)

    def __str__(self) -> str:
        return f"T({self.n},{self.m})"

    __repr__ = __str__


Triangle = tuple[ClusterPt, ClusterPt, ClusterPt]


def depth(v: ClusterPt) -> int:
    return v.n


@lru_cache(maxsize=None)
def object_of(v: ClusterPt) -> Obj:
    return normal_form(Dyadic(v.m, v.n), ONE + Dyadic(v.m - 1, v.n))


def chord(v: ClusterPt) -> tuple[CircleAngle, CircleAngle]:
    """Endpoints ((m-1)/2^n, m/2^n) on the circle."""
    return (CircleAngle(Dyadic(v.m - 1, v.n)), CircleAngle(Dyadic(v.m, v.n)))


def chord_str(v: ClusterPt) -> str:
    p, q = chord(v)
    return f"{{{p}, {q}}}"


@lru_cache(maxsize=None)
def member(x: Obj) -> ClusterPt | None:
    """The cluster point with the same iso class, if the ends are adjacent dyadics."""
    e1, e2 = sorted(ends(x), key=lambda a: a.v.as_fraction())
    for p, q in ((e1, e2), (e2, e1)):
        gap = p.gap_to(q)
        if gap.num != 1:
            continue
        n = gap.exp
        if p.v.exp > n or q.v.exp > n:
            continue
        m = q.v.num << (n - q.v.exp)
        v = ClusterPt(n, m)
        if object_of(v) == x:
            return v
    return None


def children(v: ClusterPt) -> tuple[ClusterPt, ClusterPt]:
    """The two chords splitting the arc of v at its midpoint."""
    return (ClusterPt(v.n + 1, 2 * v.m - 1), ClusterPt(v.n + 1, 2 * v.m))


def parent_and_sibling(v: ClusterPt) -> tuple[ClusterPt, ClusterPt]:
    if v.n == 0:
        raise ValueError("depth-0 chord has no parent")
    if v.m % 2 == 0:
        return (ClusterPt(v.n - 1, v.m // 2), ClusterPt(v.n, v.m - 1))
    return (ClusterPt(v.n - 1, (v.m + 1) // 2), ClusterPt(v.n, v.m + 1))


@lru_cache(maxsize=None)
def neighbors(v: ClusterPt) -> tuple[Triangle, Triangle]:
    """The two triangles adjacent to chord(v), as directed 3-cycles (a, v, c)
    meaning irreducible maps a -> v -> c -> a.

    The child triangle cycles child(2m-1) -> v -> child(2m); on the other
    side the orientation depends on which child of its parent v is.
    """
    c1, c2 = children(v)
    child_tri = (c1, v, c2)
    if v.n == 0:
        u1, u2 = ClusterPt(1, 1), ClusterPt(1, 2)
        other_tri = (u1, v, u2)
    else:
        p, s = parent_and_sibling(v)
        other_tri = (p, v, s) if v.m % 2 == 0 else (s, v, p)
    return (child_tri, other_tri)


def in_neighbors(v: ClusterPt) -> tuple[ClusterPt, ClusterPt]:
    t1, t2 = neighbors(v)
    return (t1[0], t2[0])


def out_neighbors(v: ClusterPt) -> tuple[ClusterPt, ClusterPt]:
    t1, t2 = neighbors(v)
    return (t1[2], t2[2])


# -- enumeration ------------------------------------------------------------

def _t_range(lo: Dyadic, lo_open: bool, hi: Dyadic, hi_open: bool, n: int):
    """Integers t with t/2^n in the interval."""
    def scaled_floor(d: Dyadic):
        # floor(d * 2^n) and whether the product is an integer
        if n >= d.exp:
            return d.num << (n - d.exp), True
        return d.num >> (d.exp - n), (d.num % (1 << (d.exp - n))) == 0

    lo_i, lo_exact = scaled_floor(lo)
    t_min = lo_i + (1 if lo_open else 0) if lo_exact else lo_i + 1
    hi_i, hi_exact = scaled_floor(hi)
    t_max = hi_i - (1 if hi_open else 0) if hi_exact else hi_i
    return range(t_min, t_max + 1)


def _tighter(a: tuple[Dyadic, bool], b: tuple[Dyadic, bool], lower: bool):
    """Combine two interval bounds, openness winning ties."""
    (va, oa), (vb, ob) = a, b
    if va == vb:
        return (va, oa or ob)
    if lower:
        return a if va > vb else b
    return a if va < vb else b


def _level_hits(rect: Rect, n: int):
    """Cluster points of depth n with a representative in rect, with that rep."""
    delta = ONE - Dyadic(1, n)
    hits = []
    for family in ("A", "B"):
        sign = ONE if family == "A" else -ONE
        # y = x + sign*delta, so the y-bounds shift the x-interval by -sign*delta
        lo = _tighter((rect.x_lo, rect.open_x_lo),
                      (rect.y_lo - sign * delta, rect.open_y_lo), lower=True)
        hi = _tighter((rect.x_hi, rect.open_x_hi),
                      (rect.y_hi - sign * delta, rect.open_y_hi), lower=False)
        if lo[0] > hi[0]:
            continue
        for t in _t_range(lo[0], lo[1], hi[0], hi[1], n):
            x = Dyadic(t, n)
            m = t % (1 << (n + 1)) if family == "A" else (t + 1) % (1 << (n + 1))
            hits.append((ClusterPt(n, m), (x, x + sign * delta)))
    return hits


@lru_cache(maxsize=None)
def enum_in_rect_with_reps(rect: Rect) -> tuple[tuple[ClusterPt, Rep], ...]:
    """All cluster points having a representative in rect, with those reps.

    Complete for rectangles whose closure stays off the band boundary lines
    except in finitely-populated corner configurations; one probe level past
    the dyadic stabilization depth detects the infinite cases exactly.
    """
    if rect.x_lo > rect.x_hi or rect.y_lo > rect.y_hi:
        return ()
    e = rect.max_exp()
    if e + 2 > _max_depth():
        raise DepthLimit(f"rectangle needs scan depth {e + 2} > MOEBIUS_MAX_DEPTH")
    found: dict[ClusterPt, Rep] = {}
    for n in range(e + 2):
        for pt, rep in _level_hits(rect, n):
            found.setdefault(pt, rep)
    if _level_hits(rect, e + 2):
        raise UnboundedRect(f"{rect!r} meets the band boundary in infinitely many cluster points")
    return tuple(sorted(found.items(), key=lambda kv: (kv[0].n, kv[0].m)))


def enum_in_rect(rect: Rect) -> frozenset[ClusterPt]:
    return frozenset(pt for pt, _ in enum_in_rect_with_reps(rect))


# -- mutation ---------------------------------------------------------------

class ClusterOverlay:
    """A cluster reached from the standard one by finitely many flips,
    stored as the symmetric difference."""

    __slots__ = ("removed", "added")

    def __init__(self, removed: frozenset[ClusterPt] = frozenset(),
                 added: frozenset[Obj] = frozenset()):
        object.__setattr__(self, "removed", frozenset(removed))
        object.__setattr__(self, "added", frozenset(added))

    def __setattr__(self, name, value):
        raise AttributeError("ClusterOverlay is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClusterOverlay)
                and self.removed == other.removed and self.added == other.added)

    def __hash__(self):
        return hash((self.removed, self.added))

    def __repr__(self) -> str:
        return f"ClusterOverlay(removed={set(self.removed)!r}, added={set(self.added)!r})"

    def contains_obj(self, x: Obj) -> bool:
        if x in self.added:
            return True
        v = member(x)
        return v is not None and v not in self.removed

    def has_chord(self, a: CircleAngle, b: CircleAngle) -> bool:
        if a == b:
            return False
        return self.contains_obj(obj_from_ends(a, b))


STANDARD = ClusterOverlay()


def _fan_candidates(p: CircleAngle, max_exp: int):
    """Dyadic points chord-adjacent to p in the standard triangulation."""
    out = []
    for j in range(p.v.exp, max_exp + 1):
        step = Dyadic(1, j)
        out.append(CircleAngle(p.v + step))
        out.append(CircleAngle(p.v - step))
    return out


def _apex(overlay: ClusterOverlay, p: CircleAngle, q: CircleAngle, side: int) -> CircleAngle:
    """The vertex s in the open arc on the given side with {p,s} and {q,s} chords."""
    exps = [p.v.exp, q.v.exp]
    for obj in overlay.added:
        exps.extend(e.v.exp for e in ends(obj))
    gap_exp = p.gap_to(q).exp
    max_exp = max(exps + [gap_exp]) + 2
    candidates = set()
    for obj in overlay.added:
        candidates.update(ends(obj))
    candidates.update(_fan_candidates(p, max_exp))
    candidates.update(_fan_candidates(q, max_exp))
    arc = (lambda s: ZERO < p.gap_to(s) < p.gap_to(q)) if side == 0 else \
          (lambda s: p.gap_to(q) < p.gap_to(s))
    found = {s for s in candidates
             if s not in (p, q) and arc(s)
             and overlay.has_chord(p, s) and overlay.has_chord(q, s)}
    if len(found) != 1:
        raise AssertionError(f"triangulation apex not unique at {{{p},{q}}}: {sorted(str(u) for u in found)}")
    return next(iter(found))


def mutate(overlay: ClusterOverlay, x: Obj) -> tuple[ClusterOverlay, Obj]:
    """Flip the chord of x inside the cluster; returns the new overlay and x*."""
    if not overlay.contains_obj(x):
        raise NotInCluster(f"{x} is not in the cluster")
    p, q = sorted(ends(x), key=lambda a: a.v.as_fraction())
    r = _apex(overlay, p, q, 0)
    s = _apex(overlay, p, q, 1)
    x_star = obj_from_ends(r, s)
    removed, added = set(overlay.removed), set(overlay.added)
    if x in added:
        added.remove(x)
    else:
        removed.add(member(x))
    v_star = member(x_star)
    if v_star is not None and v_star in removed:
        removed.remove(v_star)
    else:
        added.add(x_star)
    return (ClusterOverlay(frozenset(removed), frozenset(added)), x_star)


_PT_RE = re.compile(r"^\s*T\(\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_cluster_pt(text: str) -> ClusterPt:
    m = _PT_RE.match(text)
    if not m:
        raise ParseError(f"not a cluster point: {text!r}")
    n, mm = int(m.group(1)), int(m.group(2))
    if not (0 <= mm < (1 << (n + 1))):
        raise ParseError(f"index out of range in {text!r}")
    return ClusterPt(n, mm)
