"""Bounded cochain complexes of finite-dimensional rational vector spaces.

A complex stores only its nonzero graded pieces; dim(k) and diff(k) answer 0 /
zero-matrix outside the stored window, so arithmetic never special-cases the
boundary degrees.  diff(k) maps degree k to degree k+1 and d o d = 0 is
enforced at construction.

Conventions pinned here and relied on everywhere else:
- shift(K, m)^k = K^{k+m} with the SAME differentials (no sign),
- dual(K)^k = (K^{-k})* with diff (-1)^{k+1} * transpose(diff_K(-k-1)).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .errors import NotChainCompatible, ParseError, ValidationError
from .linalg import (
    RatMatrix,
    Subquotient,
    induced_map,
    kernel_basis,
    rank,
    subquotient,
)


class CochainComplex:
    """Immutable bounded complex.  dims maps degree -> dimension, diffs maps
    degree k -> matrix of d^k (shape dim(k+1) x dim(k)); zero data is dropped."""

    __slots__ = ("_dims", "_diffs", "lo", "hi", "_hash")

    def __init__(self, dims: Mapping[int, int], diffs: Mapping[int, RatMatrix] | None = None):
        clean = {}
        for k, n in dims.items():
            if not isinstance(k, int) or not isinstance(n, int) or n < 0:
                raise ValidationError(f"bad graded piece ({k!r}: {n!r})")
            if n > 0:
                clean[k] = n
        object.__setattr__(self, "_dims", clean)
        if clean:
            object.__setattr__(self, "lo", min(clean))
            object.__setattr__(self, "hi", max(clean))
        else:
            object.__setattr__(self, "lo", 0)
            object.__setattr__(self, "hi", -1)
        kept = {}
        for k, m in (diffs or {}).items():
            if not isinstance(m, RatMatrix):
                raise ValidationError(f"diff at degree {k} is not a RatMatrix")
            want = (clean.get(k + 1, 0), clean.get(k, 0))
            if m.shape != want:
                raise ValidationError(
                    f"diff at degree {k} has shape {m.shape}, expected {want}"
                )
            if m.rows and m.cols and not m.is_zero():
                kept[k] = m
        object.__setattr__(self, "_diffs", kept)
        object.__setattr__(self, "_hash", None)
        for k, m in kept.items():
            nxt = kept.get(k + 1)
            if nxt is not None and not (nxt @ m).is_zero():
                raise ValidationError(f"d o d != 0 from degree {k}")

    def __setattr__(self, name, value):
        raise AttributeError("CochainComplex is immutable")

    def dim(self, k: int) -> int:
        return self._dims.get(k, 0)

    def diff(self, k: int) -> RatMatrix:
        m = self._diffs.get(k)
        if m is None:
            return RatMatrix.zeros(self.dim(k + 1), self.dim(k))
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dims(self) -> dict:
        return dict(self._dims)

    def total_dim(self) -> int:
        return sum(self._dims.values())

    def is_zero(self) -> bool:
        return not self._dims

    def _key(self):
        return (
            tuple(sorted(self._dims.items())),
            tuple(sorted(self._diffs.items())),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainComplex):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if self.is_zero():
            return "CochainComplex(0)"
        body = ", ".join(f"{k}:{n}" for k, n in sorted(self._dims.items()))
        return f"CochainComplex({body})"

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "dims": {str(k): n for k, n in sorted(self._dims.items())},
            "diffs": {str(k): m.to_json() for k, m in sorted(self._diffs.items())},
        }

    @staticmethod
    def from_json(obj) -> "CochainComplex":
        if not isinstance(obj, dict) or "dims" not in obj:
            raise ParseError("cochain JSON must be an object with a 'dims' key")
        try:
            dims = {int(k): v for k, v in obj["dims"].items()}
            diffs = {
                int(k): RatMatrix.from_json(v)
                for k, v in obj.get("diffs", {}).items()
            }
        except (AttributeError, TypeError, ValueError) as exc:
            raise ParseError(f"bad cochain JSON: {exc}") from None
        return CochainComplex(dims, diffs)


ZERO_COMPLEX = CochainComplex({})


def single_space(k: int, n: int) -> CochainComplex:
    """The complex with one graded piece of dimension n in degree k."""
    return CochainComplex({k: n})


# -- cohomology -----------------------------------------------------------


@lru_cache(maxsize=None)
def cohomology(k_complex: CochainComplex, k: int) -> Subquotient:
    """H^k as a subquotient of the degree-k space."""
    cycles = kernel_basis(k_complex.diff(k))
    return subquotient(cycles, k_complex.diff(k - 1))


def cohomology_dim(k_complex: CochainComplex, k: int) -> int:
    """dim H^k by rank arithmetic only — no basis extraction, so this is the
    hot path for dimension tables."""
    n = k_complex.dim(k)
    if n == 0:
        return 0
    return n - rank(k_complex.diff(k)) - rank(k_complex.diff(k - 1))


def betti_numbers(k_complex: CochainComplex) -> dict:
    return {k: cohomology_dim(k_complex, k) for k in k_complex.degrees()}


def euler_characteristic(k_complex: CochainComplex) -> int:
    return sum((-1) ** k * n for k, n in k_complex.dims().items())


# -- constructions --------------------------------------------------------


def shift(k_complex: CochainComplex, m: int) -> CochainComplex:
    """Degree shift: shift(K, m)^k = K^{k+m}.  Differentials are reused
    without any sign."""
    dims = {k - m: n for k, n in k_complex.dims().items()}
    diffs = {k - m: d for k, d in k_complex._diffs.items()}
    return CochainComplex(dims, diffs)


def dual(k_complex: CochainComplex) -> CochainComplex:
    """Linear dual: dual(K)^k = (K^{-k})* with d^k = (-1)^{k+1} d_K^{-k-1}^T."""
    dims = {-k: n for k, n in k_complex.dims().items()}
    diffs = {}
    for j, d in k_complex._diffs.items():
        # lands at degree -j-1; sign (-1)^{(-j-1)+1} = (-1)^j
        m = d.transpose()
        diffs[-j - 1] = m if j % 2 == 0 else -m
    return CochainComplex(dims, diffs)


def direct_sum(parts: Sequence[CochainComplex]) -> CochainComplex:
    """Degreewise direct sum; summands keep their input order inside each
    degree."""
    parts = list(parts)
    degrees = set()
    for p in parts:
        degrees.update(p.dims())
    dims = {k: sum(p.dim(k) for p in parts) for k in degrees}
    diffs = {}
    for k in degrees:
        if dims.get(k, 0) and dims.get(k + 1, 0):
            diffs[k] = RatMatrix.block_diag([p.diff(k) for p in parts])
    return CochainComplex(dims, diffs)


# -- chain maps -----------------------------------------------------------


class ChainMap:
    """Degreewise map commuting with the differentials; squares are checked
    eagerly at construction."""

    __slots__ = ("source", "target", "_mats")

    def __init__(self, source: CochainComplex, target: CochainComplex,
                 mats: Mapping[int, RatMatrix]):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        kept = {}
        for k, m in mats.items():
            want = (target.dim(k), source.dim(k))
            if m.shape != want:
                raise ValidationError(
                    f"chain map at degree {k} has shape {m.shape}, expected {want}"
                )
            if m.rows and m.cols and not m.is_zero():
                kept[k] = m
        object.__setattr__(self, "_mats", kept)
        lo = min(source.lo, target.lo)
        hi = max(source.hi, target.hi)
        for k in range(lo - 1, hi + 1):
            lhs = target.diff(k) @ self.mat(k)
            rhs = self.mat(k + 1) @ source.diff(k)
            if lhs != rhs:
                raise NotChainCompatible(
                    f"chain map square at degree {k} does not commute"
                )

    def __setattr__(self, name, value):
        raise AttributeError("ChainMap is immutable")

    def mat(self, k: int) -> RatMatrix:
        m = self._mats.get(k)
        if m is None:
            return RatMatrix.zeros(self.target.dim(k), self.source.dim(k))
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self._mats == other._mats
        )

    def __repr__(self) -> str:
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "mats": {str(k): m.to_json() for k, m in sorted(self._mats.items())},
        }

    @staticmethod
    def from_json(obj) -> "ChainMap":
        try:
            src = CochainComplex.from_json(obj["source"])
            tgt = CochainComplex.from_json(obj["target"])
            mats = {int(k): RatMatrix.from_json(v) for k, v in obj.get("mats", {}).items()}
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise ParseError(f"bad chain map JSON: {exc}") from None
        return ChainMap(src, tgt, mats)


def identity_chain_map(k_complex: CochainComplex) -> ChainMap:
    mats = {k: RatMatrix.identity(k_complex.dim(k)) for k in k_complex.degrees()}
    return ChainMap(k_complex, k_complex, mats)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g o f (apply f first)."""
    if f.target != g.source:
        raise ValidationError("chain maps not composable")
    lo = min(f.source.lo, g.target.lo)
    hi = max(f.source.hi, g.target.hi)
    mats = {k: g.mat(k) @ f.mat(k) for k in range(lo, hi + 1)}
    return ChainMap(f.source, g.target, mats)


def cohomology_map(f: ChainMap, k: int) -> RatMatrix:
    """Matrix of H^k(f) in representative coordinates."""
    return induced_map(f.mat(k), cohomology(f.source, k), cohomology(f.target, k))


def is_cohomology_iso(f: ChainMap, degrees: Sequence[int] | None = None) -> bool:
    """True when H^k(f) is bijective for every k (degrees default: the union
    of both supports, padded by one)."""
    if degrees is None:
        lo = min(f.source.lo, f.target.lo) - 1
        hi = max(f.source.hi, f.target.hi) + 1
        degrees = range(lo, hi + 1)
    for k in degrees:
        a = cohomology_dim(f.source, k)
        b = cohomology_dim(f.target, k)
        if a != b:
            return False
        if a and rank(cohomology_map(f, k)) != a:
            return False
    return True


def clear_cohomology_cache():
    cohomology.cache_clear()
