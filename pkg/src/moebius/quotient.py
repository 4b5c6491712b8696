"""The additive quotient category on dyadic objects: formal sums, scalar
matrices over basic morphisms, classification, kernels and cokernels.

Kernels are computed on the string-module side (vertexwise nullspaces,
then splitting into strings) and transported back through the object-word
dictionary; cokernels dually via vertexwise quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .band import Obj
from .cluster import ClusterPt, member
from .walk import support, hom_ct_dim, compose_basic_nonzero, concrete_epsilon, shifted
from .cluster import object_of
from .strings import (StringWord, to_rep, direct_sum, decompose_rep,
                      hom_dim_strings, overlap, RepFin)
from .equiv import obj_to_string, string_to_obj
from .errors import ShapeMismatch

Scalar = Fraction


class SumObj:
    """Formal sum of indecomposables; cluster summands are zero here and
    normalized away."""

    __slots__ = ("summands",)

    def __init__(self, summands=()):
        kept = tuple(s for s in summands if member(s) is None)
        object.__setattr__(self, "summands", kept)

    def __setattr__(self, name, value):
        raise AttributeError("SumObj is immutable")

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def multiset(self):
        return tuple(sorted(self.summands, key=Obj.sort_key))

    def __eq__(self, other) -> bool:
        return isinstance(other, SumObj) and self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def isomorphic(self, other: "SumObj") -> bool:
        return self.multiset() == other.multiset()

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands) if self.summands else "0"

    __repr__ = __str__


@dataclass(frozen=True)
class Classification:
    is_zero: bool
    is_mono: bool
    is_epi: bool
    is_iso: bool


class MorQ:
    """Matrix of rational scalars over basic morphisms src_j -> dst_i;
    entries over vanishing hom spaces are normalized to zero."""

    __slots__ = ("src", "dst", "entries")

    def __init__(self, src: SumObj, dst: SumObj, entries):
        rows = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if len(rows) != len(dst) or any(len(r) != len(src) for r in rows):
            raise ShapeMismatch(f"entries must be {len(dst)}x{len(src)}")
        cleaned = []
        for i, d in enumerate(dst):
            row = []
            for j, s in enumerate(src):
                row.append(rows[i][j] if hom_ct_dim(s, d) == 1 else Fraction(0))
            cleaned.append(tuple(row))
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "entries", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("MorQ is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, MorQ) and self.src == other.src
                and self.dst == other.dst and self.entries == other.entries)

    def __hash__(self):
        return hash((self.src, self.dst, self.entries))

    def scale(self, c) -> "MorQ":
        c = Fraction(c)
        return MorQ(self.src, self.dst, tuple(tuple(c * v for v in row) for row in self.entries))

    def __repr__(self) -> str:
        return f"MorQ({self.src} -> {self.dst}, {self.entries})"


def identity_mor(x: SumObj) -> MorQ:
    n = len(x)
    return MorQ(x, x, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def zero_mor(src: SumObj, dst: SumObj) -> MorQ:
    return MorQ(src, dst, tuple(tuple(Fraction(0) for _ in range(len(src))) for _ in range(len(dst))))


def basic_mor(src: Obj, dst: Obj, scalar=1) -> MorQ:
    return MorQ(SumObj([src]), SumObj([dst]), ((Fraction(scalar),),))


def compose(g: MorQ, f: MorQ) -> MorQ:
    """Matrix product; a product of basics contributes only when the
    composite survives the quotient."""
    if f.dst != g.src:
        raise ShapeMismatch("codomain of f must equal domain of g")
    rows = []
    for i, z in enumerate(g.dst):
        row = []
        for j, x in enumerate(f.src):
            total = Fraction(0)
            for k, y in enumerate(g.src):
                c = g.entries[i][k] * f.entries[k][j]
                if c and compose_basic_nonzero(x, y, z):
                    total += c
            row.append(total)
        rows.append(tuple(row))
    return MorQ(f.src, g.dst, tuple(rows))


def _induced_matrix(f: MorQ, s: ClusterPt):
    cols = [j for j, x in enumerate(f.src) if s in support(x)]
    rows = [i for i, y in enumerate(f.dst) if s in support(y)]
    if not cols and not rows:
        return None
    eps_objs = [object_of(s)] + list(f.src) + list(f.dst)
    eps = concrete_epsilon(eps_objs)
    s_eps = shifted(s, eps, eps)
    m = []
    for i in rows:
        r = []
        for j in cols:
            c = f.entries[i][j]
            alive = bool(c) and compose_basic_nonzero(s_eps, f.src.summands[j], f.dst.summands[i])
            r.append(c if alive else Fraction(0))
        m.append(tuple(r))
    return (tuple(m), len(rows), len(cols))


def classify(f: MorQ) -> Classification:
    """Zero/mono/epi/iso from the induced maps on translate homs, one
    cluster point at a time."""
    pts = set()
    for x in list(f.src) + list(f.dst):
        pts |= support(x)
    is_zero = is_mono = is_epi = True
    for s in sorted(pts):
        ind = _induced_matrix(f, s)
        if ind is None:
            continue
        m, nrows, ncols = ind
        r = linalg.rank(m)
        if any(v != 0 for row in m for v in row):
            is_zero = False
        if r < ncols:
            is_mono = False
        if r < nrows:
            is_epi = False
    return Classification(is_zero, is_mono, is_epi, is_mono and is_epi)


def hom_dim(a: SumObj, b: SumObj) -> int:
    return sum(hom_ct_dim(x, y) for x in a for y in b)


# -- kernels and cokernels ----------------------------------------------------

def _rep_of_sum(x: SumObj) -> tuple[RepFin, list[StringWord], list[dict]]:
    words = [obj_to_string(s) for s in x]
    reps = [to_rep(w) for w in words]
    total, incls = direct_sum(reps)
    return (total, words, incls)


def _vertex_matrix(f: MorQ, words_src, words_dst, v: ClusterPt):
    cols = [j for j, w in enumerate(words_src) if v in w.support()]
    rows = [i for i, w in enumerate(words_dst) if v in w.support()]
    m = []
    for i in rows:
        r = []
        for j in cols:
            c = f.entries[i][j]
            if c and hom_dim_strings(words_src[j], words_dst[i]) == 1 \
                    and v in overlap(words_src[j], words_dst[i]):
                r.append(c)
            else:
                r.append(Fraction(0))
        m.append(tuple(r))
    return (tuple(m), rows, cols)


def _scalar_of_component(word: StringWord, target: StringWord, values: dict[ClusterPt, Fraction]):
    """values[v] must trace out scalar * (basic graph map word -> target)."""
    if hom_dim_strings(word, target) == 1:
        ov = overlap(word, target)
        scal = None
        for v, val in values.items():
            if v in ov:
                if scal is None:
                    scal = val
                elif scal != val:
                    raise AssertionError("component not a scalar multiple of a basic map")
            elif val != 0:
                raise AssertionError("component supported off the basic overlap")
        return scal if scal is not None else Fraction(0)
    if any(val != 0 for val in values.values()):
        raise AssertionError("nonzero component along a vanishing hom space")
    return Fraction(0)


def kernel(f: MorQ) -> tuple[SumObj, MorQ]:
    """Kernel object and its inclusion, via vertexwise nullspaces on the
    string side."""
    if not len(f.src):
        z = SumObj()
        return (z, zero_mor(z, f.src))
    rep_src, words_src, _ = _rep_of_sum(f.src)
    words_dst = [obj_to_string(s) for s in f.dst]
    verts = sorted(rep_src.dims, key=lambda p: (p.n, p.m))
    basis = {}
    dims = {}
    for v in verts:
        m, rows, cols = _vertex_matrix(f, words_src, words_dst, v)
        kern = linalg.nullspace(m, len(cols))
        basis[v] = linalg.from_columns(kern, len(cols)) if kern else linalg.zeros(len(cols), 0)
        dims[v] = len(kern)
    mats = {}
    for arr in rep_src.arrows():
        u, w = arr.src, arr.dst
        if dims.get(u, 0) == 0 or dims.get(w, 0) == 0:
            continue
        image = linalg.matmul(rep_src.matrix(u, w), basis[u])
        coords = linalg.solve(basis[w], image)
        if coords is None:
            raise AssertionError("vertexwise kernel not arrow-stable")
        if any(x != 0 for row in coords for x in row):
            mats[(u, w)] = coords
    krep = RepFin(dims, mats)
    pieces = decompose_rep(krep)
    kernel_words = [w for w, _ in pieces]
    k_obj = SumObj([string_to_obj(w) for w in kernel_words])
    entries = []
    for j, wj in enumerate(words_src):
        row = []
        for (wk, emb) in pieces:
            values = {}
            for v in wk.verts:
                col_index = [jj for jj, w in enumerate(words_src) if v in w.support()]
                vec = _apply_basis(basis[v], emb[v])
                for pos, jj in enumerate(col_index):
                    if jj == j:
                        values[v] = vec[pos]
            row.append(_scalar_of_component(wk, wj, values))
        entries.append(tuple(row))
    incl = MorQ(k_obj, f.src, tuple(entries))
    return (k_obj, incl)


def _apply_basis(basis_matrix, vec):
    return tuple(sum((basis_matrix[i][j] * vec[j] for j in range(len(vec))), Fraction(0))
                 for i in range(len(basis_matrix)))


def cokernel(f: MorQ) -> tuple[SumObj, MorQ]:
    """Cokernel object and its projection, via vertexwise quotients."""
    if not len(f.dst):
        z = SumObj()
        return (z, zero_mor(f.dst, z))
    rep_dst, words_dst, _ = _rep_of_sum(f.dst)
    words_src = [obj_to_string(s) for s in f.src]
    verts = sorted(rep_dst.dims, key=lambda p: (p.n, p.m))
    proj = {}
    section = {}
    dims = {}
    for v in verts:
        m, rows, cols = _vertex_matrix(f, words_src, words_dst, v)
        n_v = len(rows)
        image_cols = [tuple(m[i][j] for i in range(n_v)) for j in range(len(cols))]
        pivots = linalg.column_space_basis(m) if cols else []
        im_basis = [image_cols[j] for j in pivots]
        # extend by coordinate vectors to a basis of the whole space
        full = list(im_basis)
        comp_idx = []
        for i in range(n_v):
            e = tuple(Fraction(int(k == i)) for k in range(n_v))
            trial = linalg.from_columns(full + [e], n_v)
            if linalg.rank(trial) > len(full):
                full.append(e)
                comp_idx.append(i)
        T = linalg.from_columns(full, n_v)
        T_inv = linalg.invert(T)
        c_dim = n_v - len(im_basis)
        proj[v] = tuple(T_inv[len(im_basis) + i] for i in range(c_dim))  # rows
        section[v] = linalg.from_columns([tuple(Fraction(int(k == idx)) for k in range(n_v))
                                          for idx in comp_idx], n_v)
        dims[v] = c_dim
    mats = {}
    for arr in rep_dst.arrows():
        u, w = arr.src, arr.dst
        if dims.get(u, 0) == 0 or dims.get(w, 0) == 0:
            continue
        a = rep_dst.matrix(u, w)
        mat = linalg.matmul(tuple(proj[w]), linalg.matmul(a, section[u]))
        if any(x != 0 for row in mat for x in row):
            mats[(u, w)] = mat
    crep = RepFin(dims, mats)
    pieces = decompose_rep(crep)
    cok_words = [w for w, _ in pieces]
    c_obj = SumObj([string_to_obj(w) for w in cok_words])
    entries = []
    for k, (wk, emb) in enumerate(pieces):
        row = []
        for i, wi in enumerate(words_dst):
            values = {}
            for v in wk.verts:
                rows_at_v = [ii for ii, w in enumerate(words_dst) if v in w.support()]
                if i not in rows_at_v:
                    continue
                # rho_k . pi at v applied to the inclusion of summand i
                present = [kk for kk, (_, e) in enumerate(pieces) if v in e]
                emb_block = linalg.from_columns([pieces[kk][1][v] for kk in present], dims[v])
                rho = linalg.invert(emb_block)
                k_index = present.index(k)
                pi_col = tuple(proj[v][r][rows_at_v.index(i)] for r in range(dims[v]))
                val = sum((rho[k_index][r] * pi_col[r] for r in range(dims[v])), Fraction(0))
                values[v] = val
            row.append(_scalar_of_component(wi, wk, values))
        entries.append(tuple(row))
    projection = MorQ(f.dst, c_obj, tuple(entries))
    return (c_obj, projection)
