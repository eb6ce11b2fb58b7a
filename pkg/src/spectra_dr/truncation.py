"""Column-window truncations of a double complex and their exact sequences.

truncate(S, (s, t)) keeps the columns s <= p <= t, the horizontal arrows
strictly inside the window (s <= p < t) and all vertical arrows in the window.
An empty window (s > t) is the zero complex; windows are clamped to the
support automatically because absent bidegrees simply contribute nothing.

The degreewise dimension of the cohomology of the truncated total complex is
what the geometric layer calls hypercohomology of the window.  It is computed
by pure rank arithmetic over cached truncated totals — no basis extraction —
because the predictor formulas evaluate it thousands of times.

Nested windows are compared by identity-on-overlap maps.  Two shapes are
chain maps and are used everywhere:
  inclusion   (a, b) -> (c, b) for c <= a   (right edges aligned),
  restriction (a, b) -> (a, d) for d <= b   (left edges aligned).
Chaining them gives the four-term sequence

  0 -> S(t+1,t') -> S(s',t') -> S(s,t) -> S(s,s'-1) -> 0

(for s <= s' <= t <= t') and the short exact sequence

  0 -> S(s,t) -> S(r,t) -> S(r,s-1) -> 0        (r <= s <= t)

whose long exact cohomology sequence is built here with an explicit
connecting map: lift a class by the coordinate section, apply the ambient
total differential, certify the result lands in the subcomplex, reduce.
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
from .cochain import (
    ChainMap,
    CochainComplex,
    cohomology,
    cohomology_dim,
    cohomology_map,
)
from .errors import PreconditionViolation, WitnessFailure
from .linalg import F0, F1, RatMatrix, rank
from .report import Report
from .spectral import filtration_dims, first_page


def truncate(s_cx: DoubleComplex, window: tuple) -> DoubleComplex:
    """Columns s..t of the double complex, with d1 only strictly inside."""
    s, t = window
    if s > t:
        return DoubleComplex({})
    dims = {(p, q): n for (p, q), n in s_cx.dims().items() if s <= p <= t}
    d1 = {
        (p, q): m for (p, q), m in s_cx._d1.items() if s <= p < t
    }
    d2 = {
        (p, q): m for (p, q), m in s_cx._d2.items() if s <= p <= t
    }
    return DoubleComplex(dims, d1, d2)


def window_map(s_cx: DoubleComplex, win_from: tuple, win_to: tuple) -> BicomplexMap:
    """Identity-on-overlap map truncate(win_from) -> truncate(win_to).

    Valid (and validated) when the windows share their right edge with the
    source included, or share their left edge with the target ending earlier;
    construction raises NotChainCompatible for incompatible windows.
    """
    src = truncate(s_cx, win_from)
    tgt = truncate(s_cx, win_to)
    lo = max(win_from[0], win_to[0])
    hi = min(win_from[1], win_to[1])
    mats = {}
    for (p, q), n in src.dims().items():
        if lo <= p <= hi and tgt.dim(p, q) == n:
            mats[(p, q)] = RatMatrix.identity(n)
    return BicomplexMap(src, tgt, mats)


@lru_cache(maxsize=None)
def truncated_total(s_cx: DoubleComplex, s: int, t: int) -> CochainComplex:
    return total(truncate(s_cx, (s, t)))


def hypercohomology(s_cx: DoubleComplex, window: tuple, k: int) -> int:
    """dim H^k of the total complex of the window."""
    return cohomology_dim(truncated_total(s_cx, window[0], window[1]), k)


def hyper_dims(s_cx: DoubleComplex, window: tuple) -> dict:
    """All nonzero hypercohomology dimensions of the window."""
    t = truncated_total(s_cx, window[0], window[1])
    out = {}
    for k in t.degrees():
        n = cohomology_dim(t, k)
        if n:
            out[k] = n
    return out


def truncated_first_page(s_cx: DoubleComplex, window: tuple):
    """First spectral page of the truncated complex (its terms are the
    column cohomologies inside the window)."""
    return first_page(truncate(s_cx, window))


# -- four-term sequence ---------------------------------------------------


def four_term_check(s_cx: DoubleComplex, s: int, s_prime: int, t: int,
                    t_prime: int) -> Report:
    """Exactness of 0 -> S(t+1,t') -> S(s',t') -> S(s,t) -> S(s,s'-1) -> 0
    at every bidegree, verified by rank identities on the actual matrices."""
    if not (s <= s_prime <= t <= t_prime):
        raise PreconditionViolation(
            f"need s <= s' <= t <= t', got {s}, {s_prime}, {t}, {t_prime}"
        )
    k1 = truncate(s_cx, (t + 1, t_prime))
    k2 = truncate(s_cx, (s_prime, t_prime))
    k3 = truncate(s_cx, (s, t))
    k4 = truncate(s_cx, (s, s_prime - 1))
    f1 = window_map(s_cx, (t + 1, t_prime), (s_prime, t_prime))
    f2 = window_map(s_cx, (s_prime, t_prime), (s, t))
    f3 = window_map(s_cx, (s, t), (s, s_prime - 1))
    rep = Report("four_term")
    p_lo = min(k.p_lo for k in (k1, k2, k3, k4))
    p_hi = max(k.p_hi for k in (k1, k2, k3, k4))
    q_lo = min(k.q_lo for k in (k1, k2, k3, k4))
    q_hi = max(k.q_hi for k in (k1, k2, k3, k4))
    for p in range(p_lo, p_hi + 1):
        for q in range(q_lo, q_hi + 1):
            n1, n2 = k1.dim(p, q), k2.dim(p, q)
            n3, n4 = k3.dim(p, q), k4.dim(p, q)
            if not (n1 or n2 or n3 or n4):
                continue
            m1, m2, m3 = f1.mat(p, q), f2.mat(p, q), f3.mat(p, q)
            r1, r2, r3 = rank(m1), rank(m2), rank(m3)
            rep.add("injective", (p, q), r1, n1)
            rep.add("boundary_composition_zero", (p, q),
                    (m2 @ m1).is_zero() and (m3 @ m2).is_zero(), True)
            rep.add("exact_mid_left", (p, q), r1 + r2, n2)
            rep.add("exact_mid_right", (p, q), r2 + r3, n3)
            rep.add("surjective", (p, q), r3, n4)
    return rep


# -- long exact sequence --------------------------------------------------


def _section_matrix(sub: DoubleComplex, amb: DoubleComplex, deg: int) -> RatMatrix:
    """Coordinate section T^deg(sub) -> T^deg(amb) placing each sub block at
    its ambient offset (sub's blocks are a subset of amb's)."""
    rows = sum(n for (_p, _q, _o, n) in block_offsets(amb, deg))
    cols = sum(n for (_p, _q, _o, n) in block_offsets(sub, deg))
    apos = {(p, q): off for (p, q, off, _n) in block_offsets(amb, deg)}
    mat = [[F0] * cols for _ in range(rows)]
    for (p, q, soff, n) in block_offsets(sub, deg):
        aoff = apos[(p, q)]
        for i in range(n):
            mat[aoff + i][soff + i] = F1
    return RatMatrix(rows, cols, mat)


def connecting_matrix(s_cx: DoubleComplex, r: int, s: int, t: int, k: int) -> RatMatrix:
    """Matrix of the connecting map H^k(S(r,s-1)) -> H^{k+1}(S(s,t)) of the
    short exact sequence 0 -> S(s,t) -> S(r,t) -> S(r,s-1) -> 0.

    Construction: lift representatives through the coordinate section into
    the middle window, apply its total differential, certify the result has
    no components left in the quotient columns, and reduce in the
    subcomplex — any failure raises instead of silently producing garbage.
    """
    if not (r <= s <= t):
        raise PreconditionViolation(f"need r <= s <= t, got {r}, {s}, {t}")
    a = truncate(s_cx, (s, t))
    b = truncate(s_cx, (r, t))
    c = truncate(s_cx, (r, s - 1))
    tb = total(b)
    ta = total(a)
    tc = total(c)
    h_c = cohomology(tc, k)
    h_a = cohomology(ta, k + 1)
    if h_c.dim == 0 or ta.dim(k + 1) == 0:
        return RatMatrix.zeros(h_a.dim, h_c.dim)
    sec = _section_matrix(c, b, k)
    lifted = tb.diff(k) @ (sec @ h_c.representative_basis)
    # certify: the image must vanish on the quotient columns (p < s)
    amb_blocks = block_offsets(b, k + 1)
    keep = []
    for (p, _q, off, n) in amb_blocks:
        if p < s:
            for i in range(off, off + n):
                for j in range(lifted.cols):
                    if lifted[i, j]:
                        raise WitnessFailure(
                            "connecting map left a component in the quotient window"
                        )
        else:
            keep.extend(range(off, off + n))
    restricted = lifted.submatrix(keep, range(lifted.cols))
    # rows kept in ambient order coincide with A's own block layout
    return h_a.reduce(restricted)


def les_check(s_cx: DoubleComplex, r: int, s: int, t: int) -> Report:
    """Exactness of ... -> H^k(A) -> H^k(B) -> H^k(C) -> H^{k+1}(A) -> ...
    for A = S(s,t), B = S(r,t), C = S(r,s-1), at every node."""
    if not (r <= s <= t):
        raise PreconditionViolation(f"need r <= s <= t, got {r}, {s}, {t}")
    a = truncate(s_cx, (s, t))
    b = truncate(s_cx, (r, t))
    c = truncate(s_cx, (r, s - 1))
    inc = total_map(window_map(s_cx, (s, t), (r, t)))
    proj = total_map(window_map(s_cx, (r, t), (r, s - 1)))
    ta, tb, tc = total(a), total(b), total(c)
    lo = min(ta.lo, tb.lo, tc.lo) - 1
    hi = max(ta.hi, tb.hi, tc.hi) + 1
    rep = Report("les")
    i_mat = {}
    p_mat = {}
    d_mat = {}
    for k in range(lo, hi + 1):
        i_mat[k] = cohomology_map(inc, k)
        p_mat[k] = cohomology_map(proj, k)
        d_mat[k] = connecting_matrix(s_cx, r, s, t, k)
    for k in range(lo, hi + 1):
        dims = {
            "A": cohomology_dim(ta, k),
            "B": cohomology_dim(tb, k),
            "C": cohomology_dim(tc, k),
        }
        triples = (
            ("A", d_mat.get(k - 1), i_mat[k]),
            ("B", i_mat[k], p_mat[k]),
            ("C", p_mat[k], d_mat[k]),
        )
        for node, inc_m, out_m in triples:
            n = dims[node]
            if inc_m is None:
                inc_m = RatMatrix.zeros(n, 0)
            comp_zero = (out_m @ inc_m).is_zero()
            rep.add("les_composition_zero", (node, k), comp_zero, True)
            rep.add("les_exactness", (node, k), rank(inc_m) + rank(out_m), n)
    return rep


# -- dimension comparisons ------------------------------------------------


def column_cohomology_dim(s_cx: DoubleComplex, p: int, q: int) -> int:
    """h^q of column p taken with the vertical differential."""
    return cohomology_dim(row_complex(s_cx, p), q)


def frolicher_check(s_cx: DoubleComplex, window: tuple) -> Report:
    """Window hypercohomology never exceeds the sum of column cohomologies
    on the same antidiagonal slice."""
    s, t = window
    rep = Report("frolicher")
    tt = truncated_total(s_cx, s, t)
    for k in range(tt.lo, tt.hi + 1):
        lhs = cohomology_dim(tt, k)
        rhs = sum(
            column_cohomology_dim(s_cx, p, k - p)
            for p in range(max(s, s_cx.p_lo), min(t, s_cx.p_hi) + 1)
        )
        rep.add("frolicher_inequality", k, lhs <= rhs, True)
    return rep


def frolicher_is_equality(s_cx: DoubleComplex, window: tuple) -> bool:
    """True when hypercohomology equals the column-cohomology sums in every
    degree — the window-degeneration criterion."""
    s, t = window
    tt = truncated_total(s_cx, s, t)
    for k in range(tt.lo, tt.hi + 1):
        lhs = cohomology_dim(tt, k)
        rhs = sum(
            column_cohomology_dim(s_cx, p, k - p)
            for p in range(max(s, s_cx.p_lo), min(t, s_cx.p_hi) + 1)
        )
        if lhs != rhs:
            return False
    return True


def hodge_filtration_dims(s_cx: DoubleComplex, k: int, n: int | None = None) -> list:
    """[dim im(H^k(total of columns >= p) -> H^k(total)) for p = 0..n+1]
    computed inside the window (0, n)."""
    if n is None:
        n = s_cx.p_hi
    base = truncate(s_cx, (0, n))
    if base.is_zero():
        return [0] * (n + 2)
    inner = filtration_dims(base, k)
    out = []
    for p in range(0, n + 2):
        if p < base.p_lo:
            out.append(inner[0])
        elif p > base.p_hi + 1:
            out.append(0)
        else:
            out.append(inner[p - base.p_lo])
    return out


def clear_truncation_cache():
    truncated_total.cache_clear()
