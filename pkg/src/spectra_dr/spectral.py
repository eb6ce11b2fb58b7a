"""Column-filtration spectral sequence of a bounded double complex.

Everything is phrased inside the total complex T with its fixed block order
(p ascending), where the filtration F^p T^k is simply the suffix of blocks
with column index >= p.  The r-th approximate cycles are

    Z_r^{p,q} = { x in F^p T^{p+q} : D x in F^{p+r} T^{p+q+1} }

and the page term is the subquotient

    E_r^{p,q} = Z_r^{p,q} / ( Z_{r-1}^{p+1,q-1} + D Z_{r-1}^{p-r+1,q+r-2} ),

with d_r induced by the total differential.  Both denominator summands are
contained in Z_r^{p,q}, and the subquotient constructor checks that
containment on every call, so a convention error cannot pass silently.

Pages stabilize once r exceeds the support spans; limit_page computes one
page beyond its bound and insists nothing moved.
"""

from __future__ import annotations

from functools import lru_cache

from .bicomplex import (
    BicomplexMap,
    DoubleComplex,
    block_offsets,
    row_complex,
    total,
    total_map,
)
from .cochain import CochainComplex, cohomology, cohomology_dim
from .errors import WitnessFailure
from .linalg import (
    F0,
    F1,
    RatMatrix,
    Subquotient,
    induced_map,
    kernel_basis,
    rank,
    subquotient,
)
from .report import Report


def _suffix_columns(k: DoubleComplex, p: int, deg: int) -> list:
    """Coordinate indices in T^deg of the blocks with column index >= p."""
    idx = []
    for (bp, _bq, off, n) in block_offsets(k, deg):
        if bp >= p:
            idx.extend(range(off, off + n))
    return idx


def _prefix_rows(k: DoubleComplex, p: int, deg: int) -> list:
    """Coordinate indices in T^deg of the blocks with column index < p."""
    idx = []
    for (bp, _bq, off, n) in block_offsets(k, deg):
        if bp < p:
            idx.extend(range(off, off + n))
    return idx


def _z_basis(k: DoubleComplex, t: CochainComplex, p: int, q: int, r: int) -> RatMatrix:
    """Basis of Z_r^{p,q} as columns in the ambient total space T^{p+q}."""
    deg = p + q
    ambient = t.dim(deg)
    cols = _suffix_columns(k, p, deg)
    if not cols:
        return RatMatrix.zeros(ambient, 0)
    kill = _prefix_rows(k, p + r, deg + 1)
    if kill:
        d_sub = t.diff(deg).submatrix(kill, cols)
        ker = kernel_basis(d_sub)
    else:
        ker = RatMatrix.identity(len(cols))
    if ker.cols == 0:
        return RatMatrix.zeros(ambient, 0)
    mat = [[F0] * ker.cols for _ in range(ambient)]
    for i, ci in enumerate(cols):
        mat[ci] = list(ker.row(i))
    return RatMatrix(ambient, ker.cols, mat)


class SpectralPage:
    """One page: terms (subquotients of the total spaces) and the induced
    differentials d_r^{p,q}: E_r^{p,q} -> E_r^{p+r,q-r+1}."""

    __slots__ = ("r", "source", "terms", "diffs")

    def __init__(self, r: int, source: DoubleComplex, terms: dict, diffs: dict):
        self.r = r
        self.source = source
        self.terms = terms
        self.diffs = diffs

    def dim(self, p: int, q: int) -> int:
        term = self.terms.get((p, q))
        return term.dim if term is not None else 0

    def dims(self) -> dict:
        return {key: t.dim for key, t in self.terms.items() if t.dim}

    def diff_ranks(self) -> dict:
        return {key: rank(m) for key, m in self.diffs.items() if rank(m)}

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "terms": {f"{p},{q}": n for (p, q), n in sorted(self.dims().items())},
            "d_r_ranks": {
                f"{p},{q}": n for (p, q), n in sorted(self.diff_ranks().items())
            },
        }

    def __repr__(self) -> str:
        return f"SpectralPage(r={self.r}, dims={self.dims()})"


@lru_cache(maxsize=None)
def page(k: DoubleComplex, r: int) -> SpectralPage:
    """The r-th page (r >= 1) of the column-filtration spectral sequence."""
    if r < 1:
        raise ValueError(f"pages start at r = 1, got {r}")
    t = total(k)
    terms: dict = {}
    diffs: dict = {}
    if k.is_zero():
        return SpectralPage(r, k, terms, diffs)

    memo: dict = {}

    def z(p: int, q: int, rr: int) -> RatMatrix:
        key = (p, q, rr)
        if key not in memo:
            memo[key] = _z_basis(k, t, p, q, rr)
        return memo[key]

    for p in k.p_range():
        for q in k.q_range():
            zr = z(p, q, r)
            b1 = z(p + 1, q - 1, r - 1)
            b2 = t.diff(p + q - 1) @ z(p - r + 1, q + r - 2, r - 1)
            terms[(p, q)] = subquotient(zr, RatMatrix.hstack([b1, b2]))
    for (p, q), term in terms.items():
        if term.dim == 0:
            continue
        tgt = terms.get((p + r, q - r + 1))
        if tgt is None:
            continue
        diffs[(p, q)] = induced_map(t.diff(p + q), term, tgt)
    return SpectralPage(r, k, terms, diffs)


def first_page(k: DoubleComplex) -> SpectralPage:
    return page(k, 1)


def first_page_check(k: DoubleComplex) -> Report:
    """dim E_1^{p,q} must equal h^q of column p taken with d2."""
    rep = Report("first_page")
    p1 = page(k, 1)
    for p in k.p_range():
        col = row_complex(k, p)
        for q in k.q_range():
            rep.add("e1_is_column_cohomology", (p, q), p1.dim(p, q),
                    cohomology_dim(col, q))
    return rep


def stabilization_bound(k: DoubleComplex) -> int:
    """A page index from which nothing can move any more."""
    if k.is_zero():
        return 1
    return (k.p_hi - k.p_lo) + (k.q_hi - k.q_lo) + 2


def limit_page(k: DoubleComplex) -> SpectralPage:
    """The stable page, certified: computes one page past the support bound
    and raises WitnessFailure if the dimensions still moved."""
    bound = stabilization_bound(k)
    stable = page(k, bound)
    extra = page(k, bound + 1)
    if stable.dims() != extra.dims():
        raise WitnessFailure(
            f"page {bound} and {bound + 1} differ: {stable.dims()} vs {extra.dims()}"
        )
    return stable


def stabilization_index(k: DoubleComplex) -> int:
    """Smallest r whose page already has the limit dimensions."""
    limit = limit_page(k).dims()
    r = stabilization_bound(k)
    while r > 1 and page(k, r - 1).dims() == limit:
        r -= 1
    return r


def degenerates_at(k: DoubleComplex, r: int) -> bool:
    """True when page r already carries the limit dimensions."""
    return page(k, r).dims() == limit_page(k).dims()


def degenerates_at_first_page(k: DoubleComplex) -> bool:
    """Dimension criterion, no page construction: the sequence degenerates at
    E_1 iff for every k the E_1 row sums equal the total cohomology."""
    t = total(k)
    cols = {p: row_complex(k, p) for p in k.p_range()}
    for deg in range(t.lo, t.hi + 1):
        e1 = sum(cohomology_dim(col, deg - p) for p, col in cols.items())
        if e1 != cohomology_dim(t, deg):
            return False
    return True


def convergence_check(k: DoubleComplex) -> Report:
    """Limit page against the filtration on total cohomology:
    - antidiagonal sums of the limit page equal total Betti numbers,
    - page dimensions never grow with r,
    - graded pieces of the filtration match the limit page."""
    rep = Report("convergence")
    t = total(k)
    limit = limit_page(k)
    bound = stabilization_bound(k)
    for deg in range(t.lo, t.hi + 1):
        s = sum(
            limit.dim(p, deg - p) for p in k.p_range()
        )
        rep.add("limit_sum_is_total_betti", deg, s, cohomology_dim(t, deg))
    for r in range(1, bound):
        cur = page(k, r)
        nxt = page(k, r + 1)
        ok = all(
            nxt.dim(p, q) <= cur.dim(p, q)
            for p in k.p_range()
            for q in k.q_range()
        )
        rep.add("page_dims_monotone", r, ok, True)
    for deg in range(t.lo, t.hi + 1):
        fd = filtration_dims(k, deg)
        for i, p in enumerate(range(k.p_lo, k.p_hi + 1)):
            graded = fd[i] - fd[i + 1]
            rep.add("filtration_graded_is_limit", (p, deg - p), graded,
                    limit.dim(p, deg - p))
    return rep


def filtration_dims(k: DoubleComplex, deg: int) -> list:
    """[dim im(H^deg(F^p T) -> H^deg(T)) for p = p_lo .. p_hi+1].

    First entry is the full Betti number, last is 0.
    """
    t = total(k)
    out = []
    h_full = cohomology(t, deg)
    for p in range(k.p_lo, k.p_hi + 2):
        cols_here = {d: _suffix_columns(k, p, d) for d in (deg - 1, deg, deg + 1)}
        if not cols_here[deg]:
            out.append(0)
            continue
        if len(cols_here[deg]) == t.dim(deg) and p == k.p_lo:
            out.append(cohomology_dim(t, deg))
            continue
        dims = {d: len(cols_here[d]) for d in cols_here}
        diffs = {}
        for d in (deg - 1, deg):
            if dims.get(d) and dims.get(d + 1):
                diffs[d] = t.diff(d).submatrix(cols_here[d + 1], cols_here[d])
        sub = CochainComplex(dims, diffs)
        h_sub = cohomology(sub, deg)
        embed = [[F0] * dims[deg] for _ in range(t.dim(deg))]
        for j, ci in enumerate(cols_here[deg]):
            embed[ci][j] = F1
        ind = induced_map(RatMatrix(t.dim(deg), dims[deg], embed), h_sub, h_full)
        out.append(rank(ind))
    return out


def first_page_map(f: BicomplexMap) -> dict:
    """Matrices induced on E_1 terms by a map of double complexes."""
    src_page = page(f.source, 1)
    tgt_page = page(f.target, 1)
    tm = total_map(f)
    out = {}
    keys = set(src_page.terms) | set(tgt_page.terms)
    for (p, q) in keys:
        s = src_page.terms.get((p, q))
        t_ = tgt_page.terms.get((p, q))
        sdim = s.dim if s else 0
        tdim = t_.dim if t_ else 0
        if sdim == 0 and tdim == 0:
            continue
        if s is None or t_ is None:
            out[(p, q)] = RatMatrix.zeros(tdim, sdim)
            continue
        out[(p, q)] = induced_map(tm.mat(p + q), s, t_)
    return out


def e1_iso_implies_total_iso_check(f: BicomplexMap) -> Report:
    """If the induced E_1 matrices are all bijective, the map must induce
    isomorphisms on total cohomology; report both sides."""
    from .cochain import is_cohomology_iso

    rep = Report("e1_iso")
    maps = first_page_map(f)
    e1_iso = all(
        m.rows == m.cols and (m.rows == 0 or rank(m) == m.rows)
        for m in maps.values()
    )
    rep.add("e1_bijective", "all", e1_iso, e1_iso)
    if e1_iso:
        rep.add("total_cohomology_iso", "all",
                is_cohomology_iso(total_map(f)), True)
    return rep


def clear_page_cache():
    page.cache_clear()
