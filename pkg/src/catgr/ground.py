"""Exact scalar arithmetic and free-module linear algebra.

Scalars are plain Python ints (integers, prime fields) or `fractions.Fraction`
(rationals); there is no floating point anywhere. Matrices are tuples of row
tuples, shape cod.rank x dom.rank, acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotInvertible, NotSquare, ParseError, RingMismatch

INTEGERS = "ZZ"
RATIONALS = "QQ"
PRIME_FIELD = "Fp"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroundRing:
    """The coefficient ring: integers, rationals, or a prime field F_p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, PRIME_FIELD):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == PRIME_FIELD:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"prime field modulus must be prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("modulus only makes sense for prime fields")

    # -- basic elements ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    def coerce(self, value):
        """Normalize an int/Fraction into this ring; rejects non-exact input."""
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if self.kind == INTEGERS:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction) and value.denominator == 1:
                return int(value)
            raise ParseError(f"{value!r} is not an integer")
        if self.kind == RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise ParseError(f"{value!r} is not a rational")
        # prime field
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ParseError(f"{value} has denominator divisible by {self.p}")
            return (value.numerator % self.p) * pow(den, -1, self.p) % self.p
        raise ParseError(f"{value!r} is not a scalar mod {self.p}")

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == PRIME_FIELD else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == PRIME_FIELD else c

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == PRIME_FIELD else c

    def neg(self, a):
        return (-a) % self.p if self.kind == PRIME_FIELD else -a

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        if self.kind == INTEGERS:
            return a in (1, -1)
        return not self.is_zero(a)

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{self.format(a)} is not a unit in {self}")
        if self.kind == INTEGERS:
            return a
        if self.kind == RATIONALS:
            return Fraction(1) / a
        return pow(a, -1, self.p)

    # -- parsing / formatting -------------------------------------------

    def parse(self, text) -> object:
        """Parse a scalar from a decimal string like "-3" or "5/2"."""
        if isinstance(text, int) and not isinstance(text, bool):
            return self.coerce(text)
        if isinstance(text, float):
            raise ParseError(f"floating point scalar {text!r} is not allowed")
        if not isinstance(text, str):
            raise ParseError(f"cannot parse scalar from {text!r}")
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {text!r}: {exc}") from None
        return self.coerce(value)

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        if self.kind == INTEGERS:
            return "ZZ"
        if self.kind == RATIONALS:
            return "QQ"
        return f"F{self.p}"


ZZ = GroundRing(INTEGERS)
QQ = GroundRing(RATIONALS)


def GF(p: int) -> GroundRing:
    return GroundRing(PRIME_FIELD, p)


def parse_ring(spec) -> GroundRing:
    """Ring from an instance-file spec: "ZZ", "QQ", "F5" or {"kind": ..., "p": ...}."""
    if isinstance(spec, GroundRing):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s in ("ZZ", "Z"):
            return ZZ
        if s in ("QQ", "Q"):
            return QQ
        if s.startswith("F") and s[1:].isdigit():
            try:
                return GF(int(s[1:]))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown ring {spec!r}")
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind in ("integers", "ZZ"):
            return ZZ
        if kind in ("rationals", "QQ"):
            return QQ
        if kind in ("prime_field", "Fp"):
            try:
                return GF(int(spec["p"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad prime field spec {spec!r}: {exc}") from None
    raise ParseError(f"unknown ring spec {spec!r}")


# -- vectors and matrices ----------------------------------------------


def zero_vector(ring: GroundRing, n: int) -> tuple:
    return (ring.zero,) * n


def vec_add(ring: GroundRing, u: tuple, v: tuple) -> tuple:
    return tuple(ring.add(a, b) for a, b in zip(u, v, strict=True))

def vec_scale(ring: GroundRing, c, v: tuple) -> tuple:
    return tuple(ring.mul(c, a) for a in v)


def identity_matrix(ring: GroundRing, n: int) -> tuple:
    one, zero = ring.one, ring.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zero_matrix(ring: GroundRing, rows: int, cols: int) -> tuple:
    return tuple((ring.zero,) * cols for _ in range(rows))


def mat_vec(ring: GroundRing, m: tuple, v: tuple) -> tuple:
    out = []
    for row in m:
        acc = ring.zero
        for a, b in zip(row, v, strict=True):
            acc = ring.add(acc, ring.mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(ring: GroundRing, a: tuple, b: tuple) -> tuple:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    if any(len(r) != inner for r in a):
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring.zero
            for k in range(inner):
                acc = ring.add(acc, ring.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(ring: GroundRing, a: tuple, b: tuple) -> tuple:
    return tuple(vec_add(ring, ra, rb) for ra, rb in zip(a, b, strict=True))


def mat_scale(ring: GroundRing, c, a: tuple) -> tuple:
    return tuple(vec_scale(ring, c, row) for row in a)


def _field_inverse(ring: GroundRing, m: list[list]) -> tuple:
    """Gauss-Jordan inverse over a field; raises NotInvertible on singular input."""
    n = len(m)
    aug = [list(row) + list(identity_matrix(ring, n)[i]) for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not ring.is_zero(aug[r][col])), None)
        if pivot is None:
            raise NotInvertible("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ring.inverse(aug[col][col])
        aug[col] = [ring.mul(inv, a) for a in aug[col]]
        for r in range(n):
            if r != col and not ring.is_zero(aug[r][col]):
                factor = aug[r][col]
                aug[r] = [ring.sub(a, ring.mul(factor, b)) for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def invert_matrix(ring: GroundRing, m: tuple) -> tuple:
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare("matrix is not square")
    if n == 0:
        return ()
    if ring.is_field:
        return _field_inverse(ring, [list(r) for r in m])
    # over ZZ: invert over QQ, then the entries must all be integers
    # (equivalently the determinant is +-1)
    rational = _field_inverse(QQ, [[Fraction(a) for a in row] for row in m])
    if any(entry.denominator != 1 for row in rational for entry in row):
        raise NotInvertible("determinant is not a unit in ZZ")
    return tuple(tuple(int(entry) for entry in row) for row in rational)


def matrix_rank(ring: GroundRing, rows: list) -> int:
    """Row-echelon rank over a field."""
    if not ring.is_field:
        raise RingMismatch("rank computation requires a field")
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if not ring.is_zero(m[r][col])), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = ring.inverse(m[rank][col])
        m[rank] = [ring.mul(inv, a) for a in m[rank]]
        for r in range(len(m)):
            if r != rank and not ring.is_zero(m[r][col]):
                factor = m[r][col]
                m[r] = [ring.sub(a, ring.mul(factor, b)) for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# -- free modules and linear maps ----------------------------------------


@dataclass(frozen=True)
class FreeModule:
    """Finitely generated free module with an ordered basis of opaque labels."""

    ring: GroundRing
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be pairwise distinct")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def zero(self) -> tuple:
        return zero_vector(self.ring, self.rank)

    def basis_vector(self, index: int) -> tuple:
        return tuple(self.ring.one if i == index else self.ring.zero for i in range(self.rank))

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def __repr__(self):
        return f"FreeModule({self.ring}, rank={self.rank})"


def free_module(ring: GroundRing, labels) -> FreeModule:
    return FreeModule(ring, tuple(labels))


@dataclass(frozen=True)
class LinearMap:
    """Matrix of shape cod.rank x dom.rank over the common ground ring."""

    dom: FreeModule
    cod: FreeModule
    matrix: tuple

    def __post_init__(self):
        if self.dom.ring != self.cod.ring:
            raise RingMismatch(f"{self.dom.ring} vs {self.cod.ring}")
        if len(self.matrix) != self.cod.rank or any(len(r) != self.dom.rank for r in self.matrix):
            raise DimensionMismatch(
                f"matrix shape {len(self.matrix)}x? does not match "
                f"{self.cod.rank}x{self.dom.rank}"
            )

    @property
    def ring(self) -> GroundRing:
        return self.dom.ring

    def apply(self, v: tuple) -> tuple:
        if len(v) != self.dom.rank:
            raise DimensionMismatch(f"vector length {len(v)} != rank {self.dom.rank}")
        return mat_vec(self.ring, self.matrix, v)

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.matrix == identity_matrix(self.ring, self.dom.rank)

    @staticmethod
    def identity(mod: FreeModule) -> "LinearMap":
        return LinearMap(mod, mod, identity_matrix(mod.ring, mod.rank))

    @staticmethod
    def zero(dom: FreeModule, cod: FreeModule) -> "LinearMap":
        return LinearMap(dom, cod, zero_matrix(dom.ring, cod.rank, dom.rank))

    @staticmethod
    def from_rows(dom: FreeModule, cod: FreeModule, rows) -> "LinearMap":
        ring = dom.ring
        return LinearMap(dom, cod, tuple(tuple(ring.coerce(a) for a in row) for row in rows))

    def __repr__(self):
        return f"LinearMap({self.dom.rank}->{self.cod.rank} over {self.ring})"


def compose_linear(g: LinearMap, f: LinearMap) -> LinearMap:
    """Matrix product g.f, defined when f.cod = g.dom over one ring."""
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if f.cod != g.dom:
        raise DimensionMismatch("codomain of f is not the domain of g")
    return LinearMap(f.dom, g.cod, mat_mul(f.ring, g.matrix, f.matrix))


def add_linear(f: LinearMap, g: LinearMap) -> LinearMap:
    if f.dom != g.dom or f.cod != g.cod:
        raise DimensionMismatch("maps must share domain and codomain")
    return LinearMap(f.dom, f.cod, mat_add(f.ring, f.matrix, g.matrix))


def invert_linear(f: LinearMap) -> LinearMap:
    """Two-sided inverse; NotInvertible unless the determinant is a unit."""
    if f.dom.rank != f.cod.rank:
        raise NotSquare(f"{f.cod.rank}x{f.dom.rank} map cannot be inverted")
    return LinearMap(f.cod, f.dom, invert_matrix(f.ring, f.matrix))


class DirectSumIndex:
    """Bijection between summand-local basis indices and the global basis."""

    def __init__(self, summands: list[FreeModule], tags: list):
        self.summands = list(summands)
        self.tags = list(tags)
        self.offsets = []
        total = 0
        for mod in self.summands:
            self.offsets.append(total)
            total += mod.rank
        self.total = total

    def to_global(self, summand: int, local: int) -> int:
        if not 0 <= local < self.summands[summand].rank:
            raise IndexError(f"local index {local} out of range")
        return self.offsets[summand] + local

    def locate(self, global_index: int) -> tuple[int, int]:
        if not 0 <= global_index < self.total:
            raise IndexError(f"global index {global_index} out of range")
        for k in reversed(range(len(self.offsets))):
            if global_index >= self.offsets[k]:
                return k, global_index - self.offsets[k]
        raise IndexError(global_index)

    def inject(self, ring: GroundRing, summand: int, local_vec: tuple) -> tuple:
        out = [ring.zero] * self.total
        off = self.offsets[summand]
        for i, a in enumerate(local_vec):
            out[off + i] = a
        return tuple(out)

    def project(self, summand: int, global_vec: tuple) -> tuple:
        off = self.offsets[summand]
        return tuple(global_vec[off : off + self.summands[summand].rank])


def direct_sum(mods: list[FreeModule], tags=None) -> tuple[FreeModule, DirectSumIndex]:
    """Concatenate free modules in the given order.

    Basis labels of the result are (tag, local label) pairs; tags default to
    the summand position. Returns the module plus the index bijection.
    """
    mods = list(mods)
    if tags is None:
        tags = list(range(len(mods)))
    if len(tags) != len(mods):
        raise ValueError("one tag per summand required")
    rings = {m.ring for m in mods}
    if len(rings) > 1:
        raise RingMismatch("direct sum requires a common ring")
    ring = mods[0].ring if mods else None
    labels = []
    for tag, mod in zip(tags, mods):
        labels.extend((tag, lab) for lab in mod.labels)
    if ring is None:
        raise RingMismatch("empty direct sum needs an explicit ring; use direct_sum_over")
    return FreeModule(ring, tuple(labels)), DirectSumIndex(mods, tags)


def direct_sum_over(ring: GroundRing, mods: list[FreeModule], tags=None):
    """Like direct_sum but with the ring supplied, so the empty sum is the zero module."""
    if mods:
        for m in mods:
            if m.ring != ring:
                raise RingMismatch("direct sum requires a common ring")
        return direct_sum(mods, tags)
    return FreeModule(ring, ()), DirectSumIndex([], [] if tags is None else list(tags))
