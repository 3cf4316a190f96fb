"""The flattened category Gr(R) and the twisted category algebra R[C].

Gr(R) has one object per pair (base object, fiber object); a hom-module is
the direct sum, over base morphisms a: i -> j, of the fiber hom-modules
R(j)(R(a)x, y). Composition of single summands is the three-step composite

    R(ba)x --split--> R(b)R(a)x --R(b)f--> R(b)y --g--> z

placed at the summand ba, and the identity of (i, x) is the unit isomorphism
component at x placed at the summand 1_i.

R[C] is the same data flattened once more: one algebra basis vector per hom
basis vector of Gr(R), with the product of non-chainable pairs set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidRepresentation,
    NotRingValued,
    NotStrict,
    ObjectMismatch,
    RingMismatch,
)
from .ground import (
    DirectSumIndex,
    FreeModule,
    direct_sum_over,
    matrix_rank,
    vec_add,
    vec_scale,
    zero_vector,
)
from .lincat import (
    HomElt,
    LinearCategory,
    add_elt,
    apply_functor,
    compose_hom,
)
from .rep import Representation, is_strict, validate_representation
from .report import ValidationReport


@dataclass(frozen=True)
class GrObject:
    """Object (base, fiber) of the flattened category."""

    base: object
    fiber: object

    def pretty(self) -> str:
        return f"{self.base}.{self.fiber}"


@dataclass(frozen=True)
class GrMorphism:
    """Finite family of fiber hom elements indexed by base morphisms; zero
    parts are omitted and the stored order is canonical."""

    src: GrObject
    dst: GrObject
    parts: tuple  # of (base morphism id, HomElt)

    def part(self, a):
        for mid, e in self.parts:
            if mid == a:
                return e
        return None


def gr_objects(R: Representation) -> list[GrObject]:
    return [GrObject(i, x) for i in R.base.objects for x in R.fiber[i].objects]


def gr_identity(R: Representation, o: GrObject) -> GrMorphism:
    """Unit component at the fiber object, sitting at the identity summand."""
    e = R.unit_fwd(o.base, o.fiber)
    return GrMorphism(o, o, ((R.base.identity_of(o.base), e),))


def gr_compose(R: Representation, g: GrMorphism, f: GrMorphism) -> GrMorphism:
    """Twisted convolution: the part at c sums g_b . R(b)f_a . split(b,a) over
    all factorizations c = ba."""
    if f.dst != g.src:
        raise ObjectMismatch(f"cannot compose {f.src}->{f.dst} then {g.src}->{g.dst}")
    C = R.base
    k = g.dst.base
    fiber_k = R.fiber[k]
    x = f.src.fiber
    acc: dict = {}
    for b, g_b in g.parts:
        act_b = R.act[b]
        for a, f_a in f.parts:
            if C.cod(a) != C.dom(b):
                continue
            c = C.compose(b, a)
            term = compose_hom(
                fiber_k,
                g_b,
                compose_hom(fiber_k, apply_functor(act_b, f_a), R.comp_fwd(b, a, x)),
            )
            if c in acc:
                acc[c] = add_elt(fiber_k, acc[c], term)
            else:
                acc[c] = term
    parts = []
    for m in C.morphisms:  # canonical part order
        e = acc.get(m.id)
        if e is not None and not e.is_zero():
            parts.append((m.id, e))
    return GrMorphism(f.src, g.dst, tuple(parts))


class GrCategory:
    """Gr(R) as a linear category plus the summand bookkeeping needed to move
    between flattened vectors and part families."""

    def __init__(self, rep: Representation, objects, lincat, summands, index):
        self.rep = rep
        self.objects = tuple(objects)
        self.lincat: LinearCategory = lincat
        self.summands = dict(summands)  # (src, dst) -> tuple of (a, FreeModule)
        self.index = dict(index)  # (src, dst) -> DirectSumIndex

    @property
    def ring(self):
        return self.lincat.ring

    def hom(self, src: GrObject, dst: GrObject) -> FreeModule:
        return self.lincat.hom_module(src, dst)

    def to_vector(self, m: GrMorphism) -> tuple:
        idx: DirectSumIndex = self.index[(m.src, m.dst)]
        out = list(zero_vector(self.ring, idx.total))
        for a, e in m.parts:
            pos = idx.tags.index(a)
            off = idx.offsets[pos]
            for k, c in enumerate(e.coeffs):
                out[off + k] = c
        return tuple(out)

    def part_elt(self, src: GrObject, dst: GrObject, a: str, coeffs: tuple) -> HomElt:
        """Fiber hom element for the summand a of hom(src, dst)."""
        x = self.rep.act_on_object(a, src.fiber)
        return HomElt(x, dst.fiber, tuple(coeffs))

    def morphism_from_vector(self, src: GrObject, dst: GrObject, vec: tuple) -> GrMorphism:
        idx: DirectSumIndex = self.index[(src, dst)]
        parts = []
        for pos, a in enumerate(idx.tags):
            local = idx.project(pos, vec)
            if any(not self.ring.is_zero(c) for c in local):
                parts.append((a, self.part_elt(src, dst, a, local)))
        return GrMorphism(src, dst, tuple(parts))

    def basis_morphism(self, src: GrObject, dst: GrObject, global_index: int) -> GrMorphism:
        idx: DirectSumIndex = self.index[(src, dst)]
        pos, local = idx.locate(global_index)
        a = idx.tags[pos]
        mod = idx.summands[pos]
        return GrMorphism(src, dst, ((a, self.part_elt(src, dst, a, mod.basis_vector(local))),))

    def identity(self, o: GrObject) -> GrMorphism:
        return gr_identity(self.rep, o)

    def hom_rank_table(self) -> list[list[int]]:
        return [[self.hom(s, d).rank for d in self.objects] for s in self.objects]

    def __repr__(self):
        return f"GrCategory({len(self.objects)} objects over {self.ring})"


def grothendieck_construction(R: Representation, *, check: bool = True) -> GrCategory:
    """Build Gr(R). With check=True the representation is validated first and
    InvalidRepresentation carries the report; check=False builds regardless,
    which is how broken inputs are driven through the downstream sweeps."""
    if check:
        report = validate_representation(R)
        if not report.ok:
            raise InvalidRepresentation(
                f"representation fails validation: {report.summary()}", report
            )
    ring = R.ring
    if ring is None:
        raise InvalidRepresentation("representation has no fibers and no ring", None)
    C = R.base
    objects = gr_objects(R)

    homs = {}
    summands = {}
    index = {}
    for src in objects:
        for dst in objects:
            mods, tags = [], []
            for a in [m.id for m in C.morphisms if m.dom == src.base and m.cod == dst.base]:
                fib = R.fiber[dst.base]
                mods.append(fib.hom_module(R.act_on_object(a, src.fiber), dst.fiber))
                tags.append(a)
            mod, idx = direct_sum_over(ring, mods, tags)
            homs[(src, dst)] = mod
            summands[(src, dst)] = tuple(zip(tags, mods))
            index[(src, dst)] = idx

    lincat = LinearCategory(ring, objects, homs, {}, {})
    gr = GrCategory(R, objects, lincat, summands, index)

    id_elem = {o: HomElt(o, o, gr.to_vector(gr_identity(R, o))) for o in objects}
    lincat.id_elem.update(id_elem)

    comp = {}
    for src in objects:
        for mid in objects:
            fmod = homs[(src, mid)]
            if fmod.rank == 0:
                continue
            for dst in objects:
                gmod = homs[(mid, dst)]
                if gmod.rank == 0:
                    continue
                table = []
                for gi in range(gmod.rank):
                    g = gr.basis_morphism(mid, dst, gi)
                    row = []
                    for fi in range(fmod.rank):
                        f = gr.basis_morphism(src, mid, fi)
                        row.append(gr.to_vector(gr_compose(R, g, f)))
                    table.append(tuple(row))
                comp[(src, mid, dst)] = tuple(table)
    lincat.comp.update(comp)
    return gr


# -- structure-constant algebras -----------------------------------------


@dataclass(frozen=True)
class AlgLabel:
    """Algebra basis vector: a fiber hom basis element tagged by its base
    morphism and its source/target objects in the flattened category."""

    mor: str
    src: GrObject
    dst: GrObject
    fiber_label: object

    def pretty(self) -> str:
        return f"{self.mor}|{self.src.pretty()}|{self.dst.pretty()}|{self.fiber_label}"


class StructAlgebra:
    """Finite-dimensional algebra given by structure constants on an ordered
    basis. mult[gi][fi] is the coefficient vector of basis[gi] * basis[fi]."""

    def __init__(self, ring, basis, mult, unit):
        self.ring = ring
        self.basis = tuple(basis)
        self.mult = tuple(tuple(row) for row in mult)
        self.unit = tuple(unit)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def multiply(self, u: tuple, v: tuple) -> tuple:
        ring = self.ring
        out = list(zero_vector(ring, self.dimension))
        for i, a in enumerate(u):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(v):
                if ring.is_zero(b):
                    continue
                scale = ring.mul(a, b)
                for k, c in enumerate(self.mult[i][j]):
                    out[k] = ring.add(out[k], ring.mul(scale, c))
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(self.ring.one if k == i else self.ring.zero for k in range(self.dimension))

    def format_vector(self, v: tuple) -> dict:
        return {
            self.basis[i].pretty() if isinstance(self.basis[i], AlgLabel) else str(self.basis[i]):
            self.ring.format(c)
            for i, c in enumerate(v)
            if not self.ring.is_zero(c)
        }

    def __repr__(self):
        return f"StructAlgebra(dim={self.dimension} over {self.ring})"


def check_struct_algebra(A: StructAlgebra) -> ValidationReport:
    """Associativity on all basis triples and the two-sided unit law."""
    report = ValidationReport()
    n = A.dimension
    for i in range(n):
        e = A.basis_vector(i)
        if A.multiply(A.unit, e) != e:
            report.add(f"unit*{_label(A, i)}", "left unit law fails")
        if A.multiply(e, A.unit) != e:
            report.add(f"{_label(A, i)}*unit", "right unit law fails")
    for i in range(n):
        u = A.basis_vector(i)
        for j in range(n):
            v = A.basis_vector(j)
            uv = A.multiply(u, v)
            for k in range(n):
                w = A.basis_vector(k)
                left = A.multiply(uv, w)
                right = A.multiply(u, A.multiply(v, w))
                if left != right:
                    report.add(
                        f"assoc[{_label(A, i)},{_label(A, j)},{_label(A, k)}]",
                        "associativity fails",
                        left=A.format_vector(left),
                        right=A.format_vector(right),
                    )
    return report


def _label(A: StructAlgebra, i: int) -> str:
    lab = A.basis[i]
    return lab.pretty() if isinstance(lab, AlgLabel) else str(lab)


def pseudoskew_algebra(R: Representation, *, check: bool = True, gr: GrCategory | None = None) -> StructAlgebra:
    """Flatten all hom-modules of Gr(R) into one algebra.

    The product of two basis vectors is their composite in Gr(R) when source
    and target objects chain, and zero otherwise; the unit is the sum of all
    Gr(R) identities."""
    if gr is None:
        gr = grothendieck_construction(R, check=check)
    ring = gr.ring

    labels: list[AlgLabel] = []
    offsets: dict = {}
    for src in gr.objects:
        for dst in gr.objects:
            offsets[(src, dst)] = len(labels)
            for a, mod in gr.summands[(src, dst)]:
                labels.extend(AlgLabel(a, src, dst, lab) for lab in mod.labels)
    dim = len(labels)

    def embed(m: GrMorphism) -> tuple:
        out = list(zero_vector(ring, dim))
        vec = gr.to_vector(m)
        off = offsets[(m.src, m.dst)]
        for k, c in enumerate(vec):
            out[off + k] = c
        return tuple(out)

    mult = []
    for gi, lg in enumerate(labels):
        g = gr.basis_morphism(lg.src, lg.dst, gi - offsets[(lg.src, lg.dst)])
        row = []
        for fi, lf in enumerate(labels):
            if lf.dst != lg.src:
                row.append(zero_vector(ring, dim))
                continue
            f = gr.basis_morphism(lf.src, lf.dst, fi - offsets[(lf.src, lf.dst)])
            row.append(embed(gr_compose(R, g, f)))
        mult.append(tuple(row))

    unit = list(zero_vector(ring, dim))
    for o in gr.objects:
        unit = list(vec_add(ring, tuple(unit), embed(gr.identity(o))))
    return StructAlgebra(ring, labels, mult, tuple(unit))


def skew_specialization_oracle(R: Representation, algebra: StructAlgebra | None = None) -> ValidationReport:
    """Recompute every product of a strict, ring-valued representation by the
    untwisted rule (g, b) * (f, a) = (g . R(b)f, ba) straight from the fiber
    structure constants, and compare against the algebra table."""
    if not is_strict(R):
        raise NotStrict("specialization applies to strict representations only")
    for i in R.base.objects:
        if len(R.fiber[i].objects) != 1:
            raise NotRingValued(f"fiber at {i} has more than one object")
    if algebra is None:
        algebra = pseudoskew_algebra(R)
    report = ValidationReport()
    C = R.base
    ring = algebra.ring
    labels = algebra.basis
    positions = {lab: k for k, lab in enumerate(labels)}

    for gi, lg in enumerate(labels):
        for fi, lf in enumerate(labels):
            expected = list(zero_vector(ring, algebra.dimension))
            if lf.dst == lg.src:
                k = lg.dst.base
                fiber_k = R.fiber[k]
                obj = fiber_k.objects[0]
                mod = fiber_k.hom_module(obj, obj)
                c = C.compose(lg.mor, lf.mor)
                # image of the fiber basis vector under the action of b
                act_m = R.act[lg.mor].on_hom(obj, obj)
                moved = act_m.apply(mod.basis_vector(mod.index_of(lf.fiber_label)))
                table = fiber_k.comp_table(obj, obj, obj)
                out = list(zero_vector(ring, mod.rank))
                grow = table[mod.index_of(lg.fiber_label)]
                for t, coeff in enumerate(moved):
                    if ring.is_zero(coeff):
                        continue
                    for s, val in enumerate(grow[t]):
                        out[s] = ring.add(out[s], ring.mul(coeff, val))
                for s, val in enumerate(out):
                    if ring.is_zero(val):
                        continue
                    lab = AlgLabel(c, lf.src, lg.dst, mod.labels[s])
                    expected[positions[lab]] = val
            got = algebra.mult[gi][fi]
            if tuple(expected) != got:
                report.add(
                    f"product[{lg.pretty()},{lf.pretty()}]",
                    "twisted product differs from the untwisted rule",
                    expected=algebra.format_vector(tuple(expected)),
                    got=algebra.format_vector(got),
                )
    return report


@dataclass
class AlgebraReport:
    """Summary of a structure-constant algebra."""

    dimension: int
    unit: dict
    table: dict
    associative: bool
    commutative: bool
    first_failure: str | None
    center_dimension: int | None

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "unit": self.unit,
            "associative": self.associative,
            "commutative": self.commutative,
            "first_failure": self.first_failure,
            "center_dimension": self.center_dimension,
            "table": self.table,
        }


def algebra_report(A: StructAlgebra) -> AlgebraReport:
    """Dimension, unit, full table, associativity/commutativity status, and
    the center dimension when the ring is a field."""
    law = check_struct_algebra(A)
    commutative = all(
        A.mult[i][j] == A.mult[j][i] for i in range(A.dimension) for j in range(A.dimension)
    )
    table = {}
    for i in range(A.dimension):
        for j in range(A.dimension):
            table[f"{_label(A, i)},{_label(A, j)}"] = A.format_vector(A.mult[i][j])
    center = None
    if A.ring.is_field:
        center = _center_dimension(A)
    return AlgebraReport(
        dimension=A.dimension,
        unit=A.format_vector(A.unit),
        table=table,
        associative=law.ok,
        commutative=commutative,
        first_failure=None if law.ok else f"{law.findings[0].where}: {law.findings[0].message}",
        center_dimension=center,
    )


def _center_dimension(A: StructAlgebra) -> int:
    """Solve z*b = b*z for all basis b; the center is the nullspace of the
    stacked linear system."""
    ring = A.ring
    n = A.dimension
    if n == 0:
        return 0
    rows = []
    for j in range(n):
        for k in range(n):
            row = []
            for i in range(n):
                row.append(ring.sub(A.mult[i][j][k], A.mult[j][i][k]))
            rows.append(row)
    return n - matrix_rank(ring, rows)
