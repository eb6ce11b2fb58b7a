"""Tensor products of complexes and of double complexes.

Sign conventions, fixed once:

- tensor(K, L, parity m) is the double complex with (p, q) piece K^p (x) L^q,
  d1 = dK (x) 1 (no sign) and d2 = (-1)^{m+p} 1 (x) dL.  Basis order inside a
  piece is K-major (index i*dimL + j), matching RatMatrix.kron.
- The two parities are isomorphic via (-1)^q * identity at (p, q).
- quad_tensor of double complexes K, L has pieces A^{p,q,r,s} = K^{p,r} (x)
  L^{q,s} with d1 = dK1 (x) 1, d2 = (-1)^{p+r} 1 (x) dL1, d3 = dK2 (x) 1,
  d4 = (-1)^{p+r} 1 (x) dL2.  Each di squares to zero and all six pairs
  anticommute, so the (p+q, r+s) collapse with D1 = d1 + d2, D2 = d3 + d4 is a
  valid double complex.

Collapse summand order at (k, l): (p, r) lexicographic ascending, q = k - p,
s = l - r.  The comparison witnesses below depend on that order.
"""

from __future__ import annotations

from typing import Mapping

from .bicomplex import (
    DoubleComplex,
    BicomplexMap,
    block_offsets,
    row_complex,
    total,
)
from .cochain import ChainMap, CochainComplex, cohomology_dim
from .errors import NotChainCompatible, ParseError, ValidationError, WitnessFailure
from .linalg import F0, F1, RatMatrix, rank
from .report import Report


def tensor(k: CochainComplex, l: CochainComplex, parity: int = 0) -> DoubleComplex:
    """Double complex K (x) L with the parity-m sign on the second leg."""
    if parity not in (0, 1):
        raise ValidationError(f"parity must be 0 or 1, got {parity!r}")
    dims = {}
    for p in k.degrees():
        for q in l.degrees():
            n = k.dim(p) * l.dim(q)
            if n:
                dims[(p, q)] = n
    d1 = {}
    d2 = {}
    for p in k.degrees():
        for q in l.degrees():
            if not (k.dim(p) and l.dim(q)):
                continue
            if k.dim(p + 1):
                d1[(p, q)] = RatMatrix.kron(k.diff(p), RatMatrix.identity(l.dim(q)))
            if l.dim(q + 1):
                m = RatMatrix.kron(RatMatrix.identity(k.dim(p)), l.diff(q))
                d2[(p, q)] = m if (parity + p) % 2 == 0 else -m
    return DoubleComplex(dims, d1, d2)


def parity_iso(k: CochainComplex, l: CochainComplex) -> BicomplexMap:
    """The isomorphism tensor(K, L, 0) -> tensor(K, L, 1) given by
    (-1)^q * identity in bidegree (p, q)."""
    src = tensor(k, l, 0)
    tgt = tensor(k, l, 1)
    mats = {}
    for (p, q), n in src.dims().items():
        eye = RatMatrix.identity(n)
        mats[(p, q)] = eye if q % 2 == 0 else -eye
    return BicomplexMap(src, tgt, mats)


def kunneth_check(k: CochainComplex, l: CochainComplex, parity: int = 0) -> Report:
    """Total cohomology of K (x) L against the product formula
    sum_{a+b=c} h^a(K) h^b(L), degree by degree."""
    rep = Report("kunneth")
    t = total(tensor(k, l, parity))
    lo = k.lo + l.lo
    hi = k.hi + l.hi
    for c in range(min(lo, t.lo), max(hi, t.hi) + 1):
        rhs = sum(
            cohomology_dim(k, a) * cohomology_dim(l, c - a)
            for a in range(k.lo, k.hi + 1)
        )
        rep.add("kunneth_dim", c, cohomology_dim(t, c), rhs)
    return rep


# -- four-fold complexes --------------------------------------------------


def _pqrs_key(s: str) -> tuple:
    try:
        parts = [int(x) for x in s.split(",")]
    except (ValueError, AttributeError) as exc:
        raise ParseError(f"bad quad key {s!r}: {exc}") from None
    if len(parts) != 4:
        raise ParseError(f"quad key needs 4 components, got {s!r}")
    return tuple(parts)


_STEPS = {
    1: (1, 0, 0, 0),
    2: (0, 1, 0, 0),
    3: (0, 0, 1, 0),
    4: (0, 0, 0, 1),
}


class QuadComplex:
    """Four commuting gradings with one differential per direction; every
    differential squares to zero and every pair anticommutes."""

    __slots__ = ("_dims", "_diffs", "_hash")

    def __init__(self, dims: Mapping, d1=None, d2=None, d3=None, d4=None):
        clean = {}
        for key, n in dims.items():
            if len(key) != 4:
                raise ValidationError(f"quad key must have 4 components: {key!r}")
            if not isinstance(n, int) or n < 0:
                raise ValidationError(f"bad dimension at {key}: {n!r}")
            if n > 0:
                clean[tuple(key)] = n
        object.__setattr__(self, "_dims", clean)
        diffs = {}
        for i, d in ((1, d1), (2, d2), (3, d3), (4, d4)):
            step = _STEPS[i]
            kept = {}
            for key, m in (d or {}).items():
                key = tuple(key)
                tgt = tuple(a + b for a, b in zip(key, step))
                want = (clean.get(tgt, 0), clean.get(key, 0))
                if m.shape != want:
                    raise ValidationError(
                        f"d{i} at {key} has shape {m.shape}, expected {want}"
                    )
                if m.rows and m.cols and not m.is_zero():
                    kept[key] = m
            diffs[i] = kept
        object.__setattr__(self, "_diffs", diffs)
        object.__setattr__(self, "_hash", None)
        self._validate()

    def _validate(self):
        keys = set(self._dims)
        for key in keys:
            for i in range(1, 5):
                di_next = self.diff(i, self._shift(key, i))
                if not (di_next @ self.diff(i, key)).is_zero():
                    raise ValidationError(f"d{i} o d{i} != 0 from {key}")
            for i in range(1, 5):
                for j in range(i + 1, 5):
                    a = self.diff(j, self._shift(key, i)) @ self.diff(i, key)
                    b = self.diff(i, self._shift(key, j)) @ self.diff(j, key)
                    if not (a + b).is_zero():
                        raise ValidationError(
                            f"d{i} and d{j} do not anticommute from {key}"
                        )

    @staticmethod
    def _shift(key, i):
        step = _STEPS[i]
        return tuple(a + b for a, b in zip(key, step))

    def __setattr__(self, name, value):
        raise AttributeError("QuadComplex is immutable")

    def dim(self, key) -> int:
        return self._dims.get(tuple(key), 0)

    def diff(self, i: int, key) -> RatMatrix:
        key = tuple(key)
        m = self._diffs[i].get(key)
        if m is None:
            return RatMatrix.zeros(self.dim(self._shift(key, i)), self.dim(key))
        return m

    def keys(self):
        return set(self._dims)

    def dims(self) -> dict:
        return dict(self._dims)

    def is_zero(self) -> bool:
        return not self._dims

    def _key(self):
        return (
            tuple(sorted(self._dims.items())),
            tuple(
                (i, tuple(sorted(self._diffs[i].items()))) for i in range(1, 5)
            ),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadComplex):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"QuadComplex(cells={len(self._dims)}, total dim {sum(self._dims.values())})"

    def to_json(self) -> dict:
        out = {
            "dims": {
                ",".join(str(x) for x in key): n
                for key, n in sorted(self._dims.items())
            }
        }
        for i in range(1, 5):
            out[f"d{i}"] = {
                ",".join(str(x) for x in key): m.to_json()
                for key, m in sorted(self._diffs[i].items())
            }
        return out

    @staticmethod
    def from_json(obj) -> "QuadComplex":
        if not isinstance(obj, dict) or "dims" not in obj:
            raise ParseError("quad complex JSON must be an object with 'dims'")
        try:
            dims = {_pqrs_key(k): v for k, v in obj["dims"].items()}
            ds = [
                {
                    _pqrs_key(k): RatMatrix.from_json(v)
                    for k, v in obj.get(f"d{i}", {}).items()
                }
                for i in range(1, 5)
            ]
        except AttributeError as exc:
            raise ParseError(f"bad quad complex JSON: {exc}") from None
        return QuadComplex(dims, *ds)


def quad_tensor(k: DoubleComplex, l: DoubleComplex) -> QuadComplex:
    """A^{p,q,r,s} = K^{p,r} (x) L^{q,s} with the four differentials listed in
    the module docstring."""
    dims = {}
    for (p, r), nk in k.dims().items():
        for (q, s), nl in l.dims().items():
            dims[(p, q, r, s)] = nk * nl
    d1 = {}
    d2 = {}
    d3 = {}
    d4 = {}
    for (p, r), nk in k.dims().items():
        for (q, s), nl in l.dims().items():
            key = (p, q, r, s)
            sign = 1 if (p + r) % 2 == 0 else -1
            if k.dim(p + 1, r):
                d1[key] = RatMatrix.kron(k.d1(p, r), RatMatrix.identity(nl))
            if l.dim(q + 1, s):
                m = RatMatrix.kron(RatMatrix.identity(nk), l.d1(q, s))
                d2[key] = m if sign == 1 else -m
            if k.dim(p, r + 1):
                d3[key] = RatMatrix.kron(k.d2(p, r), RatMatrix.identity(nl))
            if l.dim(q, s + 1):
                m = RatMatrix.kron(RatMatrix.identity(nk), l.d2(q, s))
                d4[key] = m if sign == 1 else -m
    return QuadComplex(dims, d1, d2, d3, d4)


def quad_slice(a: QuadComplex, p: int, q: int) -> DoubleComplex:
    """Fix the first two gradings: the double complex (r, s) -> A^{p,q,r,s}
    with differentials d3, d4."""
    dims = {}
    d1 = {}
    d2 = {}
    for key, n in a.dims().items():
        if key[0] == p and key[1] == q:
            r, s = key[2], key[3]
            dims[(r, s)] = n
            m3 = a._diffs[3].get(key)
            if m3 is not None:
                d1[(r, s)] = m3
            m4 = a._diffs[4].get(key)
            if m4 is not None:
                d2[(r, s)] = m4
    return DoubleComplex(dims, d1, d2)


def collapse_summands(a: QuadComplex, k: int, l: int) -> list:
    """Nonzero cells (p, q, r, s) with p+q = k, r+s = l in (p, r) lex order,
    with their offsets: (p, q, r, s, offset, size)."""
    cells = sorted(
        (key for key in a.keys() if key[0] + key[1] == k and key[2] + key[3] == l),
        key=lambda key: (key[0], key[2]),
    )
    out = []
    off = 0
    for key in cells:
        n = a.dim(key)
        out.append((*key, off, n))
        off += n
    return out


def ss_collapse(a: QuadComplex) -> DoubleComplex:
    """Collapse to bidegree (p+q, r+s) with D1 = d1 + d2, D2 = d3 + d4."""
    if a.is_zero():
        return DoubleComplex({})
    ks = sorted({key[0] + key[1] for key in a.keys()})
    ls = sorted({key[2] + key[3] for key in a.keys()})
    dims = {}
    layout = {}
    for k in ks:
        for l in ls:
            cells = collapse_summands(a, k, l)
            n = sum(c[5] for c in cells)
            if n:
                dims[(k, l)] = n
                layout[(k, l)] = cells
    d1_out = {}
    d2_out = {}
    for (k, l), cells in layout.items():
        for (dk, dl, parts) in (
            (1, 0, ((1, (1, 0)), (2, (0, 1)))),
            (0, 1, ((3, (0, 0)), (4, (0, 0)))),
        ):
            tgt = layout.get((k + dk, l + dl))
            if tgt is None:
                continue
            tpos = {cell[:4]: (cell[4], cell[5]) for cell in tgt}
            rows = dims[(k + dk, l + dl)]
            cols = dims[(k, l)]
            mat = [[F0] * cols for _ in range(rows)]
            filled = False
            for (p, q, r, s, coff, n) in cells:
                for (i, _unused) in parts:
                    step = _STEPS[i]
                    tkey = (p + step[0], q + step[1], r + step[2], s + step[3])
                    block = a._diffs[i].get((p, q, r, s))
                    if block is None or tkey not in tpos:
                        continue
                    roff = tpos[tkey][0]
                    for bi in range(block.rows):
                        brow = block.row(bi)
                        orow = mat[roff + bi]
                        for bj in range(block.cols):
                            if brow[bj]:
                                orow[coff + bj] = brow[bj]
                                filled = True
            if filled:
                m = RatMatrix(rows, cols, mat)
                if dk:
                    d1_out[(k, l)] = m
                else:
                    d2_out[(k, l)] = m
    return DoubleComplex(dims, d1_out, d2_out)


# -- comparison witnesses -------------------------------------------------


def slice_check(k: DoubleComplex, l: DoubleComplex) -> Report:
    """Each (p, q) slice of the quad tensor equals the tensor of the row
    complexes with parity p mod 2 — exact equality of double complexes."""
    rep = Report("quad_slice")
    a = quad_tensor(k, l)
    for p in k.p_range():
        for q in l.p_range():
            got = quad_slice(a, p, q)
            want = tensor(row_complex(k, p), row_complex(l, q), parity=p % 2)
            rep.add("slice_equals_row_tensor", (p, q), got == want, True)
    return rep


def collapse_rows_check(k: DoubleComplex, l: DoubleComplex) -> Report:
    """Column k of the collapse (with D2) equals the direct sum over p+q = k
    of the totals of the row tensors, summands in ascending p — on the nose."""
    from .cochain import direct_sum

    rep = Report("collapse_rows")
    a = quad_tensor(k, l)
    ss = ss_collapse(a)
    for deg in range(ss.p_lo, ss.p_hi + 1):
        got = row_complex(ss, deg)
        parts = [
            total(tensor(row_complex(k, p), row_complex(l, deg - p), parity=p % 2))
            for p in k.p_range()
        ]
        want = direct_sum(parts)
        rep.add("collapse_row_equals_sum_of_totals", deg, got == want, True)
    return rep


def collapse_total_check(k: DoubleComplex, l: DoubleComplex) -> ChainMap:
    """Certified isomorphism total(collapse(K (x) L)) -> total(tensor(total K,
    total L)).  Both sides are direct sums of the same cells with identical
    component signs, so the witness is a block permutation; raises
    WitnessFailure if it fails to commute or to be bijective."""
    a = quad_tensor(k, l)
    ss = ss_collapse(a)
    src = total(ss)
    tk = total(k)
    tl = total(l)
    big = tensor(tk, tl, 0)
    tgt = total(big)
    lok = min(src.lo, tgt.lo)
    hik = max(src.hi, tgt.hi)
    mats = {}
    for n in range(lok, hik + 1):
        ns, nt = src.dim(n), tgt.dim(n)
        if ns != nt:
            raise WitnessFailure(f"degree {n}: collapse dim {ns} != tensor dim {nt}")
        if ns == 0:
            continue
        # source index of cell (p,q,r,s): by block k=p+q asc, then (p,r) lex
        src_pos = {}
        for (kk, ll, off, _sz) in block_offsets(ss, n):
            for (p, q, r, s, coff, size) in collapse_summands(a, kk, ll):
                src_pos[(p, q, r, s)] = (off + coff, size)
        # target index: by a = p+r asc; within, (total K)^a (x) (total L)^b is
        # K-major, and each total splits into its own p-asc / q-asc blocks
        mat = [[F0] * ns for _ in range(nt)]
        for (aa, bb, toff, _sz) in block_offsets(big, n):
            k_cells = block_offsets(k, aa)
            l_cells = block_offsets(l, bb)
            l_total = sum(c[3] for c in l_cells)
            for (p, r, koff, ksz) in k_cells:
                for (q, s, loff, lsz) in l_cells:
                    base = toff + koff * l_total
                    spos, ssz = src_pos[(p, q, r, s)]
                    if ssz != ksz * lsz:
                        raise WitnessFailure(
                            f"cell ({p},{q},{r},{s}) size mismatch {ssz} vs {ksz * lsz}"
                        )
                    for i in range(ksz):
                        trow = base + i * l_total + loff
                        srow = spos + i * lsz
                        for j in range(lsz):
                            mat[trow + j][srow + j] = F1
        mats[n] = RatMatrix(nt, ns, mat)
    try:
        witness = ChainMap(src, tgt, mats)
    except NotChainCompatible as exc:
        raise WitnessFailure(f"collapse comparison is not a chain map: {exc}") from None
    for n in range(lok, hik + 1):
        if src.dim(n) and rank(witness.mat(n)) != src.dim(n):
            raise WitnessFailure(f"collapse comparison not bijective in degree {n}")
    return witness


def kunneth_double_check(k: DoubleComplex, l: DoubleComplex) -> Report:
    """Dimension identities for the collapse of a quad tensor:
    (1) columnwise: h^l of collapse column k = sum over p+q=k, r+s=l of
        h^r(column p of K) * h^s(column q of L);
    (2) total: h^n(total collapse) = sum over a+b=n of h^a(total K) * h^b(total L).
    """
    rep = Report("kunneth_double")
    a = quad_tensor(k, l)
    ss = ss_collapse(a)
    if ss.is_zero():
        rep.add("total_dim", "all", 0, 0)
        return rep
    rows_k = {p: row_complex(k, p) for p in k.p_range()}
    rows_l = {q: row_complex(l, q) for q in l.p_range()}
    for kk in range(ss.p_lo, ss.p_hi + 1):
        col = row_complex(ss, kk)
        for ll in range(ss.q_lo, ss.q_hi + 1):
            want = 0
            for p, rk in rows_k.items():
                rl = rows_l.get(kk - p)
                if rl is None:
                    continue
                want += sum(
                    cohomology_dim(rk, r) * cohomology_dim(rl, ll - r)
                    for r in range(rk.lo, rk.hi + 1)
                )
            rep.add("column_dim", (kk, ll), cohomology_dim(col, ll), want)
    ts = total(ss)
    tk = total(k)
    tl = total(l)
    for n in range(ts.lo - 1, ts.hi + 2):
        want = sum(
            cohomology_dim(tk, x) * cohomology_dim(tl, n - x)
            for x in range(tk.lo, tk.hi + 1)
        )
        rep.add("total_dim", n, cohomology_dim(ts, n), want)
    return rep
