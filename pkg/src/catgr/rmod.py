"""Right modules over a representation, additive functors on the flattened
category, the two constructions translating between them, and the concrete
endomorphism-algebra comparison.

A right module M assigns to every base object i a contravariant module-valued
functor on the fiber R(i) and to every base morphism a: i -> j a family of
linear maps M(a)_x : M_j(R(a)x) -> M_i(x). The two axioms checked are

  pair:  M(a)_x . M(b)_{R(a)x} = M(ba)_x . M_k(split(b,a) x)
  unit:  M(1_i)_x = M_i(unit_bwd_i x)

The functor direction (Construction 1) sends a single summand f at base
morphism a to M(a)_x . M_j(f); the module direction (Construction 2) reads
M_i and M(a) off the functor at the two distinguished single-summand
morphisms. On these encodings both round trips are exact equalities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidFunctor, InvalidModule
from .ground import (
    DirectSumIndex,
    FreeModule,
    LinearMap,
    add_linear,
    compose_linear,
    direct_sum_over,
    identity_matrix,
    mat_mul,
    mat_vec,
    vec_add,
    zero_matrix,
)
from .groth import (
    AlgLabel,
    GrCategory,
    GrMorphism,
    GrObject,
    StructAlgebra,
    gr_compose,
    grothendieck_construction,
    pseudoskew_algebra,
)
from .lincat import HomElt, ModuleFunctor, check_module_functor, compose_hom
from .rep import Representation, restrict_module
from .report import ValidationReport


class RModule:
    """values[i] is the fiber module at i; action[a][x] is the structure map
    M(a)_x for the base morphism a at the fiber object x."""

    def __init__(self, rep: Representation, values, action):
        self.rep = rep
        self.values = dict(values)
        self.action = {a: dict(fam) for a, fam in action.items()}

    def value(self, i) -> ModuleFunctor:
        return self.values[i]

    def action_at(self, a, x) -> LinearMap:
        return self.action[a][x]

    def __repr__(self):
        return f"RModule({len(self.values)} fibers)"


def validate_module(R: Representation, M: RModule) -> ValidationReport:
    """Functoriality of every fiber value, naturality of every structure map,
    and the pair/unit module axioms at every component."""
    report = ValidationReport()
    C = R.base

    for i in C.objects:
        if i not in M.values:
            report.add(f"value[{i}]", "missing fiber module")
            continue
        if M.values[i].cat is not R.fiber[i]:
            report.add(f"value[{i}]", "fiber module is over the wrong category")
    for m in C.morphisms:
        if m.id not in M.action:
            report.add(f"action[{m.id}]", "missing structure map family")
    if not report.ok:
        return report

    for i in C.objects:
        report.extend(check_module_functor(M.values[i], where=f"value[{i}]"))

    for m in C.morphisms:
        a, i, j = m.id, m.dom, m.cod
        restricted = restrict_module(R, a, M.values[j])
        fam = M.action[a]
        for x in R.fiber[i].objects:
            f = fam.get(x)
            if f is None:
                report.add(f"action[{a}]@{x}", "missing structure map")
                continue
            if f.dom != restricted.value(x) or f.cod != M.values[i].value(x):
                report.add(f"action[{a}]@{x}", "structure map has wrong shape")
    if not report.ok:
        return report

    # naturality of M(a): restriction of M_j along a => M_i
    for m in C.morphisms:
        a, i, j = m.id, m.dom, m.cod
        restricted = restrict_module(R, a, M.values[j])
        fiber_i = R.fiber[i]
        for x in fiber_i.objects:
            for y in fiber_i.objects:
                mod = fiber_i.hom_module(x, y)
                for k in range(mod.rank):
                    g = fiber_i.basis_elt(x, y, k)
                    lhs = compose_linear(M.action_at(a, x), restricted.apply(g))
                    rhs = compose_linear(M.values[i].apply(g), M.action_at(a, y))
                    if lhs.matrix != rhs.matrix:
                        report.add(
                            f"natural[{a}]#{mod.labels[k]}@({x},{y})",
                            "structure map is not natural",
                        )

    # pair axiom over composable pairs at every fiber object of the domain
    for b, a in C.composable_pairs():
        i = C.dom(a)
        k = C.cod(b)
        ba = C.compose(b, a)
        for x in R.fiber[i].objects:
            ax = R.act_on_object(a, x)
            left = compose_linear(M.action_at(a, x), M.action_at(b, ax))
            right = compose_linear(
                M.action_at(ba, x), M.values[k].apply(R.comp_fwd(b, a, x))
            )
            if left.matrix != right.matrix:
                report.add(
                    f"pair[{b},{a}]@{x}",
                    "pair axiom fails",
                    left=[[M.rep.ring.format(c) for c in row] for row in left.matrix],
                    right=[[M.rep.ring.format(c) for c in row] for row in right.matrix],
                )

    # unit axiom pointwise
    for i in C.objects:
        e = C.identity_of(i)
        for x in R.fiber[i].objects:
            expected = M.values[i].apply(R.unit_bwd(i, x))
            got = M.action_at(e, x)
            if got.matrix != expected.matrix:
                report.add(
                    f"unit[{i}]@{x}",
                    "unit axiom fails",
                    left=[[M.rep.ring.format(c) for c in row] for row in got.matrix],
                    right=[[M.rep.ring.format(c) for c in row] for row in expected.matrix],
                )
    return report


def module_to_functor(R: Representation, M: RModule, *, gr: GrCategory | None = None,
                      check: bool = True) -> ModuleFunctor:
    """Construction of the functor attached to a module: value M_i(x) at the
    object (i, x), and a single summand f at base morphism a acting by
    M(a)_x . M_j(f), extended additively over summands."""
    if check:
        rep_ok = validate_module(R, M)
        if not rep_ok.ok:
            raise InvalidModule(f"module fails validation: {rep_ok.summary()}", rep_ok)
    if gr is None:
        gr = grothendieck_construction(R, check=False)

    obj_vals = {o: M.values[o.base].value(o.fiber) for o in gr.objects}
    mor_vals = {}
    for src in gr.objects:
        for dst in gr.objects:
            mod = gr.hom(src, dst)
            maps = []
            for k in range(mod.rank):
                a, local = mod.labels[k]
                f = gr.basis_morphism(src, dst, k).parts[0][1]
                maps.append(
                    compose_linear(
                        M.action_at(a, src.fiber), M.values[dst.base].apply(f)
                    )
                )
            mor_vals[(src, dst)] = tuple(maps)
    return ModuleFunctor(gr.lincat, obj_vals, mor_vals)


def functor_to_module(R: Representation, F: ModuleFunctor, *, gr: GrCategory | None = None,
                      check: bool = True) -> RModule:
    """Construction of the module attached to a functor: M_i(x) = F(i, x),
    fiber morphisms act through g . unit_fwd placed at the identity summand,
    and the structure map of a is F at the identity of R(a)x placed at the
    summand a."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    if check:
        fun_ok = check_module_functor(F)
        if not fun_ok.ok:
            raise InvalidFunctor(f"functor fails validation: {fun_ok.summary()}", fun_ok)

    C = R.base
    values = {}
    action = {}
    for i in C.objects:
        fiber = R.fiber[i]
        e = C.identity_of(i)
        obj_vals = {x: F.value(GrObject(i, x)) for x in fiber.objects}
        mor_vals = {}
        for x in fiber.objects:
            for y in fiber.objects:
                mod = fiber.hom_module(x, y)
                maps = []
                for k in range(mod.rank):
                    g = fiber.basis_elt(x, y, k)
                    part = compose_hom(fiber, g, R.unit_fwd(i, x))
                    gm = GrMorphism(GrObject(i, x), GrObject(i, y), ((e, part),))
                    maps.append(F.apply(gr.lincat.elt(GrObject(i, x), GrObject(i, y), gr.to_vector(gm))))
                mor_vals[(x, y)] = tuple(maps)
        values[i] = ModuleFunctor(fiber, obj_vals, mor_vals)
    for m in C.morphisms:
        a, i, j = m.id, m.dom, m.cod
        fam = {}
        for x in R.fiber[i].objects:
            ax = R.act_on_object(a, x)
            ident = R.fiber[j].identity_elt(ax)
            gm = GrMorphism(GrObject(i, x), GrObject(j, ax), ((a, ident),))
            fam[x] = F.apply(gr.lincat.elt(GrObject(i, x), GrObject(j, ax), gr.to_vector(gm)))
        action[a] = fam
    return RModule(R, values, action)


def roundtrip_module(R: Representation, M: RModule, *, gr: GrCategory | None = None) -> ValidationReport:
    """Module -> functor -> module must reproduce every value and structure
    map exactly."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    F = module_to_functor(R, M, gr=gr, check=False)
    back = functor_to_module(R, F, gr=gr, check=False)
    report = ValidationReport()
    C = R.base
    for i in C.objects:
        fiber = R.fiber[i]
        for x in fiber.objects:
            if back.values[i].value(x) != M.values[i].value(x):
                report.add(f"value[{i}]@{x}", "object value changed")
        for x in fiber.objects:
            for y in fiber.objects:
                mod = fiber.hom_module(x, y)
                for k in range(mod.rank):
                    old = M.values[i].mor_vals[(x, y)][k]
                    new = back.values[i].mor_vals[(x, y)][k]
                    if old.matrix != new.matrix:
                        report.add(
                            f"value[{i}].map[{x},{y}]#{mod.labels[k]}",
                            "fiber morphism action changed",
                        )
    for m in C.morphisms:
        for x in R.fiber[m.dom].objects:
            if back.action_at(m.id, x).matrix != M.action_at(m.id, x).matrix:
                report.add(f"action[{m.id}]@{x}", "structure map changed")
    return report


def roundtrip_functor(R: Representation, F: ModuleFunctor, *, gr: GrCategory | None = None) -> ValidationReport:
    """Functor -> module -> functor must reproduce every object value and
    every basis morphism action exactly."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    M = functor_to_module(R, F, gr=gr, check=False)
    back = module_to_functor(R, M, gr=gr, check=False)
    report = ValidationReport()
    for o in gr.objects:
        if back.value(o) != F.value(o):
            report.add(f"value[{o.pretty()}]", "object value changed")
    for src in gr.objects:
        for dst in gr.objects:
            mod = gr.hom(src, dst)
            for k in range(mod.rank):
                old = F.mor_vals[(src, dst)][k]
                new = back.mor_vals[(src, dst)][k]
                if old.matrix != new.matrix:
                    a, local = mod.labels[k]
                    report.add(
                        f"map[{src.pretty()},{dst.pretty()}]#{a}|{local}",
                        "morphism action changed",
                    )
    return report


def representable_functor(gr: GrCategory, at: GrObject) -> ModuleFunctor:
    """Hom(-, at) with morphisms acting by precomposition."""
    obj_vals = {w: gr.hom(w, at) for w in gr.objects}
    mor_vals = {}
    for src in gr.objects:
        for dst in gr.objects:
            mod = gr.hom(src, dst)
            maps = []
            for k in range(mod.rank):
                h = gr.basis_morphism(src, dst, k)
                cols = []
                for t in range(gr.hom(dst, at).rank):
                    phi = gr.basis_morphism(dst, at, t)
                    cols.append(gr.to_vector(gr_compose(gr.rep, phi, h)))
                matrix = tuple(
                    tuple(col[r] for col in cols) for r in range(gr.hom(src, at).rank)
                )
                maps.append(LinearMap(gr.hom(dst, at), gr.hom(src, at), matrix))
            mor_vals[(src, dst)] = tuple(maps)
    return ModuleFunctor(gr.lincat, obj_vals, mor_vals)


def direct_sum_functors(gr: GrCategory, parts: list[ModuleFunctor], tags=None) -> tuple[ModuleFunctor, dict]:
    """Blockwise direct sum of functors on the flattened category; returns the
    sum and the per-object index bookkeeping."""
    ring = gr.ring
    if tags is None:
        tags = list(range(len(parts)))
    obj_vals = {}
    indexes = {}
    for w in gr.objects:
        mod, idx = direct_sum_over(ring, [p.value(w) for p in parts], list(tags))
        obj_vals[w] = mod
        indexes[w] = idx
    mor_vals = {}
    for src in gr.objects:
        for dst in gr.objects:
            mod = gr.hom(src, dst)
            maps = []
            for k in range(mod.rank):
                rows = []
                blocks = [p.mor_vals[(src, dst)][k] for p in parts]
                for pos, block in enumerate(blocks):
                    for r in range(block.cod.rank):
                        row = []
                        for pos2, other in enumerate(blocks):
                            if pos2 == pos:
                                row.extend(block.matrix[r])
                            else:
                                row.extend([ring.zero] * other.dom.rank)
                        rows.append(tuple(row))
                maps.append(LinearMap(obj_vals[dst], obj_vals[src], tuple(rows)))
            mor_vals[(src, dst)] = tuple(maps)
    return ModuleFunctor(gr.lincat, obj_vals, mor_vals), indexes


def projective_generator(R: Representation, *, gr: GrCategory | None = None) -> ModuleFunctor:
    """Direct sum of all representables Hom(-, o), one per object of the
    flattened category."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    parts = [representable_functor(gr, o) for o in gr.objects]
    total, _ = direct_sum_functors(gr, parts, tags=list(gr.objects))
    return total


def endomorphism_algebra_check(R: Representation, *, gr: GrCategory | None = None,
                               algebra: StructAlgebra | None = None) -> ValidationReport:
    """Compute the endomorphism algebra of the generator concretely and
    compare it, basis vector by basis vector, with the flattened algebra.

    A basis vector phi of hom(src, dst) is the natural transformation
    Hom(-, src) => Hom(-, dst) that postcomposes with phi. Products are
    computed by composing those transformations as matrix families at every
    object, re-extracting the element at the identity, and checking the
    composite family equals the postcomposition family of the extracted
    element. The extracted elements must match the algebra table entry for
    entry, and the identity transformation must match the algebra unit."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    if algebra is None:
        algebra = pseudoskew_algebra(R, gr=gr, check=False)
    report = ValidationReport()
    ring = gr.ring

    reps = {o: representable_functor(gr, o) for o in gr.objects}

    def transform_family(src: GrObject, dst: GrObject, phi: GrMorphism) -> dict:
        """Components of Hom(-, src) => Hom(-, dst) at every object w."""
        fam = {}
        for w in gr.objects:
            cols = []
            for t in range(gr.hom(w, src).rank):
                u = gr.basis_morphism(w, src, t)
                cols.append(gr.to_vector(gr_compose(gr.rep, phi, u)))
            fam[w] = tuple(
                tuple(col[r] for col in cols) for r in range(gr.hom(w, dst).rank)
            )
        return fam

    labels = algebra.basis
    offsets: dict = {}
    pos = 0
    for src in gr.objects:
        for dst in gr.objects:
            offsets[(src, dst)] = pos
            pos += gr.hom(src, dst).rank

    def embed(m: GrMorphism) -> tuple:
        out = [ring.zero] * algebra.dimension
        vec = gr.to_vector(m)
        off = offsets[(m.src, m.dst)]
        for k, c in enumerate(vec):
            out[off + k] = c
        return tuple(out)

    basis_transforms = {}
    for gi, lab in enumerate(labels):
        phi = gr.basis_morphism(lab.src, lab.dst, gi - offsets[(lab.src, lab.dst)])
        basis_transforms[gi] = (phi, transform_family(lab.src, lab.dst, phi))

    # unit: the identity transformation of the generator corresponds to the
    # sum of the identity morphisms
    unit_vec = (ring.zero,) * algebra.dimension
    for o in gr.objects:
        unit_vec = vec_add(ring, unit_vec, embed(gr.identity(o)))
    if tuple(unit_vec) != algebra.unit:
        report.add(
            "unit",
            "identity transformation does not match the algebra unit",
            expected=algebra.format_vector(tuple(unit_vec)),
            got=algebra.format_vector(algebra.unit),
        )

    for gi, lg in enumerate(labels):
        phi_g, fam_g = basis_transforms[gi]
        for fi, lf in enumerate(labels):
            phi_f, fam_f = basis_transforms[fi]
            if lf.dst != lg.src:
                expected = (ring.zero,) * algebra.dimension
                if algebra.mult[gi][fi] != expected:
                    report.add(
                        f"product[{lg.pretty()},{lf.pretty()}]",
                        "non-chainable pair has a nonzero product",
                        got=algebra.format_vector(algebra.mult[gi][fi]),
                    )
                continue
            composite = {w: mat_mul(ring, fam_g[w], fam_f[w]) for w in gr.objects}
            # extract the element: evaluate at the identity of the source
            idvec = gr.to_vector(gr.identity(lf.src))
            extracted_vec = mat_vec(ring, composite[lf.src], idvec)
            extracted = gr.morphism_from_vector(lf.src, lg.dst, extracted_vec)
            # the composite family must be postcomposition with the extraction
            fam_extracted = transform_family(lf.src, lg.dst, extracted)
            for w in gr.objects:
                if composite[w] != fam_extracted[w]:
                    report.add(
                        f"yoneda[{lg.pretty()},{lf.pretty()}]@{w.pretty()}",
                        "composite transformation is not postcomposition with its value at the identity",
                    )
            got = algebra.mult[gi][fi]
            if embed(extracted) != got:
                report.add(
                    f"product[{lg.pretty()},{lf.pretty()}]",
                    "endomorphism product differs from the algebra table",
                    expected=algebra.format_vector(embed(extracted)),
                    got=algebra.format_vector(got),
                )
    return report


@dataclass
class AlgebraModule:
    """Right module over a structure-constant algebra: one block per object of
    the flattened category, with each algebra basis vector acting from the
    target block to the source block."""

    algebra: StructAlgebra
    module: FreeModule
    index: DirectSumIndex
    action: dict  # algebra basis position -> LinearMap module -> module

    def act(self, v: tuple, algebra_vec: tuple) -> tuple:
        ring = self.algebra.ring
        out = [ring.zero] * self.module.rank
        for i, c in enumerate(algebra_vec):
            if ring.is_zero(c):
                continue
            img = self.action[i].apply(v)
            for k, a in enumerate(img):
                out[k] = ring.add(out[k], ring.mul(c, a))
        return tuple(out)


def module_over_algebra(R: Representation, F: ModuleFunctor, *, gr: GrCategory | None = None,
                        algebra: StructAlgebra | None = None, check: bool = True) -> AlgebraModule:
    """Flatten a functor into a right module over the flattened algebra: the
    underlying module is the direct sum of the functor values, and a basis
    vector of hom(src, dst) acts on the dst block through the functor, landing
    in the src block."""
    if gr is None:
        gr = grothendieck_construction(R, check=False)
    if check:
        fun_ok = check_module_functor(F)
        if not fun_ok.ok:
            raise InvalidFunctor(f"functor fails validation: {fun_ok.summary()}", fun_ok)
    if algebra is None:
        algebra = pseudoskew_algebra(R, gr=gr, check=False)
    ring = gr.ring
    total, idx = direct_sum_over(ring, [F.value(o) for o in gr.objects], list(gr.objects))

    block_pos = {o: k for k, o in enumerate(gr.objects)}
    labels = algebra.basis
    offsets: dict = {}
    pos = 0
    for src in gr.objects:
        for dst in gr.objects:
            offsets[(src, dst)] = pos
            pos += gr.hom(src, dst).rank

    action = {}
    for gi, lab in enumerate(labels):
        phi = gr.basis_morphism(lab.src, lab.dst, gi - offsets[(lab.src, lab.dst)])
        block_map = F.apply(gr.lincat.elt(lab.src, lab.dst, gr.to_vector(phi)))
        rows = []
        src_pos = block_pos[lab.src]
        dst_pos = block_pos[lab.dst]
        for r in range(total.rank):
            bsrc, local = idx.locate(r)
            if bsrc == src_pos:
                row = [ring.zero] * total.rank
                off = idx.offsets[dst_pos]
                for ccol in range(block_map.dom.rank):
                    row[off + ccol] = block_map.matrix[local][ccol]
                rows.append(tuple(row))
            else:
                rows.append((ring.zero,) * total.rank)
        action[gi] = LinearMap(total, total, tuple(rows))
    return AlgebraModule(algebra, total, idx, action)


def check_algebra_module(mod: AlgebraModule) -> ValidationReport:
    """Unit acts as the identity; the action of a product is the reversed
    composite of the actions (right-module law) on every basis pair."""
    report = ValidationReport()
    A = mod.algebra
    ring = A.ring
    n = A.dimension

    unit_mat = identity_matrix(ring, mod.module.rank)
    got_unit = _action_matrix(mod, A.unit)
    if got_unit != unit_mat:
        report.add("unit", "unit does not act as the identity")

    for gi in range(n):
        for fi in range(n):
            prod = A.mult[gi][fi]
            lhs = _action_matrix(mod, prod)
            rhs = compose_linear(mod.action[fi], mod.action[gi]).matrix
            if lhs != rhs:
                report.add(
                    f"assoc[{A.basis[gi].pretty()},{A.basis[fi].pretty()}]",
                    "right-module law fails",
                )
    return report


def _action_matrix(mod: AlgebraModule, algebra_vec: tuple) -> tuple:
    ring = mod.algebra.ring
    n = mod.module.rank
    acc = LinearMap(mod.module, mod.module, zero_matrix(ring, n, n))
    for i, c in enumerate(algebra_vec):
        if ring.is_zero(c):
            continue
        scaled = LinearMap(
            mod.module,
            mod.module,
            tuple(tuple(ring.mul(c, a) for a in row) for row in mod.action[i].matrix),
        )
        acc = add_linear(acc, scaled)
    return acc.matrix
