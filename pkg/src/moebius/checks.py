"""Machine checks for the structural properties of the category, at desk scale.

The grid G(e) holds every iso class with canonical coordinates of exponent
at most e (120 classes at e = 3, of which 29 lie on the cluster).  Each
criterion returns a result record; `run_all` drives them in order and is
shared by the test suite and the command line.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic
from .band import Obj, normal_form, compatible, ends, triangle_complete, hom_c_dim, hom_c_configs
from .cluster import (ClusterPt, STANDARD, member, object_of, mutate,
                      in_neighbors, out_neighbors, neighbors, enum_in_rect)
from .band import Rect
from .walk import (support, walk_of, approximation, hom_ct_dim, tau_dims,
                   concrete_epsilon, shifted, factors_through_sink)
from .strings import hom_dim_strings, word
from .equiv import (obj_to_string, string_to_obj, simple_object, DigitPrefix,
                    digits_to_coords, digit_vertex, coords_to_digits,
                    g_extend, f_strip, tail_case)
from .quotient import SumObj, MorQ, basic_mor, compose, classify, kernel, cokernel
from .errors import Unreachable, AllOnesTail


@dataclass
class CheckResult:
    index: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{self.index:2d}] {status} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def grid(e: int) -> list[Obj]:
    """All iso classes with canonical coordinate exponent <= e."""
    out = []
    step = Dyadic(1, e)
    for j in range(1 << e):
        delta = Dyadic(j, e)
        top = (1 << e) if j == 0 else (1 << (e + 1))
        for i in range(top):
            out.append(Obj(Dyadic(i, e), delta))
    return out


def grid_off_cluster(e: int) -> list[Obj]:
    return [x for x in grid(e) if member(x) is None]


def cluster_points(depth: int) -> list[ClusterPt]:
    pts = [ClusterPt(0, 0)]
    for n in range(1, depth + 1):
        pts.extend(ClusterPt(n, m) for m in range(1 << (n + 1)))
    return pts


def _ends_cross(a: Obj, b: Obj) -> bool:
    ea, eb = ends(a), ends(b)
    if ea & eb:
        return False
    (p1, q1) = sorted((e.v.as_fraction() for e in ea))
    (p2, q2) = sorted((e.v.as_fraction() for e in eb))
    in1 = (p1 < p2 < q1, p1 < q2 < q1)
    return in1[0] != in1[1]


def check_hom_agreement(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    words = {x: obj_to_string(x) for x in objs}
    pairs = 0
    for x in objs:
        for y in objs:
            pairs += 1
            if hom_ct_dim(x, y) != hom_dim_strings(words[x], words[y]):
                return (False, f"hom mismatch at {x} -> {y}")
    return (True, f"{pairs} ordered pairs agree")


def check_bijection(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    for x in objs:
        w = obj_to_string(x)
        if string_to_obj(w) != x:
            return (False, f"word round trip fails at {x}")
        if obj_to_string(string_to_obj(w)) != w:
            return (False, f"object round trip fails at {w}")
    return (True, f"{len(objs)} objects round-trip both ways")


def check_support_walk(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    for x in objs:
        w = walk_of(x)
        interior = frozenset(p for p in w.points()) - {w.vertices[0].pt, w.vertices[-1].pt}
        if support(x) != interior:
            return (False, f"support != walk interior at {x}")
    worked = {
        "M(1/4,3/4)": {(0, 0), (1, 0), (1, 1)},
        "M(1/8,1/4)": {(0, 0), (1, 1), (1, 3), (2, 1)},
    }
    from .band import parse_obj
    for text, pts in worked.items():
        got = {(p.n, p.m) for p in support(parse_obj(text))}
        if got != pts:
            return (False, f"worked support of {text} is {got}")
    return (True, f"{len(objs)} objects, worked values included")


def check_approximation(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    for x in objs:
        a = approximation(x)
        firsts_b = sorted((r[0].as_fraction() for r in a.sink_reps))
        firsts_a = sorted([r[0].as_fraction() for r in a.source_reps] + [x.x.as_fraction()])
        seconds_b = sorted((r[1].as_fraction() for r in a.sink_reps))
        seconds_a = sorted([r[1].as_fraction() for r in a.source_reps] + [x.y.as_fraction()])
        if firsts_a != firsts_b or seconds_a != seconds_b:
            return (False, f"coordinate balance fails at {x}")
        if len(a.sinks) != len(a.sources) + 1:
            return (False, f"sink/source count off at {x}")
    checked = 0
    for s in cluster_points(e + 1):
        s_obj = object_of(s)
        for x in objs:
            if hom_c_dim(s_obj, x) == 1:
                checked += 1
                if not factors_through_sink(s, x):
                    return (False, f"map {s} -> {x} misses every sink")
    return (True, f"balance on {len(objs)} objects; {checked} maps factor through sinks")


def check_ar_duality(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    pts = cluster_points(e + 1)
    n = 0
    for x in objs:
        for s in pts:
            eps_s = concrete_epsilon([object_of(s), x])
            tinv = hom_ct_dim(shifted(s, eps_s, eps_s), x)
            tau = hom_ct_dim(x, shifted(s, -eps_s, -eps_s))
            td = tau_dims(s, x)
            if not (tinv == tau == td.tau_inv == td.tau):
                return (False, f"translate duality fails at ({s}, {x})")
            if td.alternating_sum != 0:
                return (False, f"four-term sum != 0 at ({s}, {x})")
            n += 1
    return (True, f"{n} (S, X) pairs")


def _basics(e: int) -> list[tuple[Obj, Obj]]:
    objs = grid_off_cluster(e)
    return [(x, y) for x in objs for y in objs if hom_ct_dim(x, y) == 1]


def check_abelian(e: int, samples: int = 100) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    basics = _basics(e)
    for (x, y) in basics:
        f = basic_mor(x, y)
        k_obj, incl = kernel(f)
        c_obj, proj = cokernel(f)
        if not classify(incl).is_mono:
            return (False, f"kernel inclusion not mono at {x}->{y}")
        if not classify(proj).is_epi:
            return (False, f"cokernel projection not epi at {x}->{y}")
        if not classify(compose(f, incl)).is_zero:
            return (False, f"f . incl != 0 at {x}->{y}")
        if not classify(compose(proj, f)).is_zero:
            return (False, f"proj . f != 0 at {x}->{y}")
        dk = sum(len(obj_to_string(s)) for s in k_obj)
        dc = sum(len(obj_to_string(s)) for s in c_obj)
        if dk - len(obj_to_string(x)) + len(obj_to_string(y)) - dc != 0:
            return (False, f"dimension exactness fails at {x}->{y}")
    from .band import parse_obj
    f0 = basic_mor(parse_obj("M(1/8,1/4)"), parse_obj("M(1/4,3/4)"))
    k_obj, _ = kernel(f0)
    c_obj, _ = cokernel(f0)
    want_k = SumObj([parse_obj("M(1/2,9/8)"), parse_obj("M(0,1/4)")])
    want_c = SumObj([parse_obj("M(1,3/4)")])
    if not (k_obj.isomorphic(want_k) and c_obj.isomorphic(want_c)):
        return (False, "worked kernel/cokernel chain broken")
    rng = random.Random(20240801)
    chosen = rng.sample(basics, min(samples, len(basics)))
    factored = 0
    for (x, y) in chosen:
        f = basic_mor(x, y)
        k_obj, incl = kernel(f)
        for z in objs:
            if hom_ct_dim(z, x) != 1:
                continue
            g = basic_mor(z, x)
            if not classify(compose(f, g)).is_zero:
                continue
            if not _factors_through(g, k_obj, incl):
                return (False, f"universal property fails for {z} -> {x} over {x}->{y}")
            factored += 1
    return (True, f"{len(basics)} basics exact; {factored} factorizations over {len(chosen)} sampled maps")


def _factors_through(g: MorQ, k_obj: SumObj, incl: MorQ) -> bool:
    """Solve incl . h = g for h across the one-dimensional hom spaces."""
    from . import linalg
    z = g.src.summands[0]
    from .walk import compose_basic_nonzero
    rows = []
    rhs = []
    for j in range(len(incl.dst)):
        row = []
        for k in range(len(k_obj)):
            c = incl.entries[j][k]
            alive = (c != 0 and hom_ct_dim(z, k_obj.summands[k]) == 1
                     and compose_basic_nonzero(z, k_obj.summands[k], incl.dst.summands[j]))
            row.append(c if alive else Fraction(0))
        rows.append(tuple(row))
        rhs.append((g.entries[j][0],))
    sol = linalg.solve(tuple(rows), tuple(rhs))
    if sol is None:
        return False
    h = MorQ(g.src, k_obj, tuple((row[0],) for row in sol))
    return compose(incl, h) == g


def check_mono_epi_iso(e: int) -> tuple[bool, str]:
    checked = 0
    for (x, y) in _basics(e):
        f = basic_mor(x, y)
        c = classify(f)
        if c.is_mono and c.is_epi:
            if not c.is_iso or not f.src.isomorphic(f.dst):
                return (False, f"mono+epi without iso at {x}->{y}")
        checked += 1
    return (True, f"{checked} basic morphisms checked")


def check_mutation(e: int) -> tuple[bool, str]:
    from .band import parse_obj
    deep = cluster_points(5)
    for v in cluster_points(min(3, e)):
        x = object_of(v)
        overlay, x_star = mutate(STANDARD, x)
        again, back = mutate(overlay, x_star)
        if again != STANDARD or back != x:
            return (False, f"mutation not involutive at {v}")
        for w in deep:
            if w != v and not compatible(x_star, object_of(w)):
                return (False, f"{x_star} incompatible with {w} after mutating {v}")
        if support(x_star) != frozenset({v}):
            return (False, f"support of flip at {v} is not {{{v}}}")
        up, right = _exchange_partners(v)
        b_pos, fourth_pos = triangle_complete(x, object_of(up), "positive")
        b_neg, fourth_neg = triangle_complete(x, object_of(right), "negative")
        for corner in (b_pos, b_neg):
            if member(corner) is None:
                return (False, f"exchange-triangle corner {corner} escapes the cluster at {v}")
        if fourth_pos != x or fourth_neg != x:
            return (False, f"triangle at {v} does not close on the mutated chord")
    if mutate(STANDARD, object_of(ClusterPt(0, 0)))[1] != parse_obj("M(1/2,1/2)"):
        return (False, "mu(0,0) wrong")
    if mutate(STANDARD, object_of(ClusterPt(1, 0)))[1] != parse_obj("M(1,3/4)"):
        return (False, "mu(1,0) wrong")
    return (True, f"{len(cluster_points(min(3, e)))} vertices flipped and restored")


def _exchange_partners(v: ClusterPt) -> tuple[ClusterPt, ClusterPt]:
    """Out-neighbors split by step direction: the child-triangle one is the
    vertical partner, the other the horizontal one."""
    child_tri, other_tri = neighbors(v)
    return (child_tri[2], other_tri[2])


def check_noncrossing(e: int) -> tuple[bool, str]:
    pts = cluster_points(e + 1)
    n = 0
    for i, v in enumerate(pts):
        for w in pts[i + 1:]:
            a, b = object_of(v), object_of(w)
            if compatible(a, b) != (not _ends_cross(a, b)):
                return (False, f"compatibility vs crossing disagree at ({v}, {w})")
            n += 1
    return (True, f"{n} cluster pairs")


def check_digits(e: int) -> tuple[bool, str]:
    bases = cluster_points(max(e - 1, 0))
    count = 0
    max_len = 10
    for v in bases:
        stack = [((), None)]
        while stack:
            digits, prev_b = stack.pop()
            p = DigitPrefix(v, digits)
            am, bm = digits_to_coords(p)
            if prev_b is not None and bm < prev_b:
                return (False, f"b_m not monotone along {p}")
            w = digit_vertex(p)
            if coords_to_digits(v, w, max_len).digits != digits:
                return (False, f"digit round trip fails at {p}")
            count += 1
            if len(digits) < max_len:
                stack.append((digits + (0,), bm))
                stack.append((digits + (1,), bm))
    try:
        tail_case(DigitPrefix(ClusterPt(1, 1), (1, 1, 1)), DigitPrefix(ClusterPt(1, 1), (0,)))
        return (False, "all-ones prefix not rejected")
    except AllOnesTail:
        pass
    try:
        coords_to_digits(ClusterPt(0, 0), ClusterPt(1, 1), 10)
        return (False, "unreachable vertex accepted")
    except Unreachable:
        pass
    return (True, f"{count} prefixes from {len(bases)} bases round-trip, b_m monotone")


def check_ray_functors(e: int) -> tuple[bool, str]:
    objs = grid_off_cluster(e)
    for x in objs:
        w = obj_to_string(x)
        for k in range(4):
            if f_strip(g_extend(w, k)) != w:
                return (False, f"strip(extend) != id at {x}, k={k}")
    rng = random.Random(7)
    sample = rng.sample(objs, min(12, len(objs)))
    stable = 0
    for x1 in sample:
        w1 = obj_to_string(x1)
        for x2 in sample:
            w2 = obj_to_string(x2)
            homs = []
            for k in (2, 3):
                g = g_extend(w1, k)
                trunc = word(g.verts, g.directs)
                h = hom_dim_strings(trunc, w2)
                if h != hom_ct_dim(string_to_obj(trunc), x2):
                    return (False, f"truncation hom disagrees with objects at ({x1},{x2},k={k})")
                homs.append(h)
            if homs[0] != homs[1]:
                return (False, f"truncation homs not stable at ({x1},{x2})")
            stable += 1
    return (True, f"{len(objs)} words x k<=3; {stable} truncation pairs stable")


CRITERIA = [
    ("hom agreement across the equivalence", check_hom_agreement),
    ("object/word bijection round trips", check_bijection),
    ("support equals walk interior", check_support_walk),
    ("approximation split-exactness and covering", check_approximation),
    ("translate duality and four-term sum", check_ar_duality),
    ("kernels/cokernels and universal property", check_abelian),
    ("mono and epi imply iso", check_mono_epi_iso),
    ("mutation involution, compatibility, triangles", check_mutation),
    ("compatibility equals non-crossing", check_noncrossing),
    ("digit tails: round trip, monotone, rejection", check_digits),
    ("ray extension/strip identity and stability", check_ray_functors),
]


def run_all(depth: int = 3) -> list[CheckResult]:
    results = []
    for i, (name, fn) in enumerate(CRITERIA, start=1):
        t0 = time.perf_counter()
        try:
            ok, detail = fn(depth)
        except Exception as exc:  # a criterion crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(i, name, ok, detail, time.perf_counter() - t0))
    return results
