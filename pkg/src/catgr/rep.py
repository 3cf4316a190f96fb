"""Pseudofunctors from a finite category to linear categories, with full
coherence validation and builders for the bundled families.

A representation carries, per base object i, a unit isomorphism pair
(forward: R(1_i) => Id, backward: Id => R(1_i)) and, per composable pair
(b, a), a compositor pair (forward: R(ba) => R(b)R(a), backward the other
way). Coherence is checked in the backward (merge) direction:

  assoc:  merge(c,ba) . (R(c) merge(b,a)) = merge(cb,a) . (merge(c,b) R(a))
  unit:   merge(a,1_i) . (R(a) unit_bwd_i) = id = merge(1_j,a) . (unit_bwd_j R(a))
"""

from __future__ import annotations

from .errors import CategoryMismatch, NotAUnit, ObjectMismatch
from .fincat import FiniteCategory
from .ground import FreeModule, GroundRing, LinearMap, identity_matrix
from .lincat import (
    AdditiveFunctor,
    HomElt,
    LinearCategory,
    ModuleFunctor,
    NatIso,
    NatTransform,
    apply_functor,
    check_functor,
    check_nat_iso,
    compose_functors,
    compose_hom,
    identity_functor,
    identity_transform,
    validate_linear_category,
    whisker,
)
from .report import ValidationReport


class Representation:
    """Base category, fiber linear categories, an additive functor per base
    morphism, and the two families of coherence isomorphisms."""

    def __init__(self, base: FiniteCategory, fiber, act, unit_iso, comp_iso, ring=None):
        self.base = base
        self.fiber = dict(fiber)
        self.act = dict(act)
        self.unit_iso = dict(unit_iso)
        self.comp_iso = dict(comp_iso)
        rings = {cat.ring for cat in self.fiber.values()}
        if ring is not None:
            rings.add(ring)
        if len(rings) > 1:
            raise CategoryMismatch("all fibers must share one ground ring")
        self.ring: GroundRing | None = rings.pop() if rings else None

    # component accessors; unit_fwd is the paper-facing eta direction and
    # comp_fwd the split direction R(ba) => R(b)R(a)

    def unit_fwd(self, i, x) -> HomElt:
        return self.unit_iso[i].fwd.at(x)

    def unit_bwd(self, i, x) -> HomElt:
        return self.unit_iso[i].bwd.at(x)

    def comp_fwd(self, b, a, x) -> HomElt:
        return self.comp_iso[(b, a)].fwd.at(x)

    def comp_bwd(self, b, a, x) -> HomElt:
        return self.comp_iso[(b, a)].bwd.at(x)

    def act_on_object(self, a, x):
        return self.act[a].obj_map[x]

    def __repr__(self):
        return f"Representation({self.base!r} over {self.ring})"


def validate_representation(R: Representation) -> ValidationReport:
    """Typing, fiber validity, functoriality of the actions, invertibility and
    naturality of the coherence data, then the two coherence axioms at every
    component object. Violations carry both evaluated legs."""
    report = ValidationReport()
    C = R.base

    for i in C.objects:
        if i not in R.fiber:
            report.add(f"fiber[{i}]", "missing fiber category")
    for m in C.morphisms:
        if m.id not in R.act:
            report.add(f"act[{m.id}]", "missing action functor")
    if not report.ok:
        return report

    for i in C.objects:
        report.extend(validate_linear_category(R.fiber[i]), prefix=f"fiber[{i}].")
    for m in C.morphisms:
        F = R.act[m.id]
        if F.dom is not R.fiber[m.dom] or F.cod is not R.fiber[m.cod]:
            report.add(f"act[{m.id}]", "functor does not go between the declared fibers")
            continue
        report.extend(check_functor(F, where=f"act[{m.id}]"))
    if not report.ok:
        return report

    for i in C.objects:
        iso = R.unit_iso.get(i)
        if iso is None:
            report.add(f"unit_iso[{i}]", "missing unit isomorphism")
            continue
        if iso.fwd.source != R.act[C.identity_of(i)]:
            report.add(f"unit_iso[{i}]", "forward direction must start at the identity action")
        if iso.fwd.target != identity_functor(R.fiber[i]):
            report.add(f"unit_iso[{i}]", "forward direction must end at the identity functor")
        report.extend(check_nat_iso(iso, where=f"unit_iso[{i}]"))
    for b, a in C.composable_pairs():
        iso = R.comp_iso.get((b, a))
        if iso is None:
            report.add(f"comp_iso[{b},{a}]", "missing compositor")
            continue
        if iso.fwd.source != R.act[C.compose(b, a)]:
            report.add(f"comp_iso[{b},{a}]", "forward direction must start at the composite action")
        if iso.fwd.target != compose_functors(R.act[b], R.act[a]):
            report.add(f"comp_iso[{b},{a}]", "forward direction must end at the composed actions")
        report.extend(check_nat_iso(iso, where=f"comp_iso[{b},{a}]"))
    if not report.ok:
        return report

    # assoc coherence over every composable triple, componentwise
    for c, b, a in C.composable_triples():
        i = C.dom(a)
        h = C.cod(c)
        fiber_h = R.fiber[h]
        ba = C.compose(b, a)
        cb = C.compose(c, b)
        left_whisk = whisker(R.act[c], R.comp_iso[(b, a)].bwd)
        right_whisk = whisker(R.comp_iso[(c, b)].bwd, R.act[a])
        for x in R.fiber[i].objects:
            left = compose_hom(fiber_h, R.comp_bwd(c, ba, x), left_whisk.at(x))
            right = compose_hom(fiber_h, R.comp_bwd(cb, a, x), right_whisk.at(x))
            if left.coeffs != right.coeffs:
                report.add(
                    f"assoc[{c},{b},{a}]@{x}",
                    "associativity coherence fails",
                    left=fiber_h.format_elt(left),
                    right=fiber_h.format_elt(right),
                )

    # unit coherence for every morphism, componentwise
    for m in C.morphisms:
        a = m.id
        i, j = m.dom, m.cod
        fiber_j = R.fiber[j]
        unit_i = C.identity_of(i)
        unit_j = C.identity_of(j)
        left_whisk = whisker(R.act[a], R.unit_iso[i].bwd)
        right_whisk = whisker(R.unit_iso[j].bwd, R.act[a])
        for x in R.fiber[i].objects:
            ax = R.act_on_object(a, x)
            ident = fiber_j.identity_elt(ax)
            left = compose_hom(fiber_j, R.comp_bwd(a, unit_i, x), left_whisk.at(x))
            if left.coeffs != ident.coeffs:
                report.add(
                    f"unit[{a}]@{x}",
                    "unit coherence fails on the domain side",
                    left=fiber_j.format_elt(left),
                    right=fiber_j.format_elt(ident),
                )
            right = compose_hom(fiber_j, R.comp_bwd(unit_j, a, x), right_whisk.at(x))
            if right.coeffs != ident.coeffs:
                report.add(
                    f"unit[{a}]@{x}",
                    "unit coherence fails on the codomain side",
                    left=fiber_j.format_elt(right),
                    right=fiber_j.format_elt(ident),
                )
    return report


def is_strict(R: Representation) -> bool:
    """True when every coherence component is an identity and the actions
    compose on the nose."""
    C = R.base
    for i in C.objects:
        if R.act[C.identity_of(i)] != identity_functor(R.fiber[i]):
            return False
        for x in R.fiber[i].objects:
            if R.unit_fwd(i, x).coeffs != R.fiber[i].identity_elt(x).coeffs:
                return False
    for b, a in C.composable_pairs():
        if R.act[C.compose(b, a)] != compose_functors(R.act[b], R.act[a]):
            return False
        i = C.dom(a)
        k = C.cod(b)
        for x in R.fiber[i].objects:
            e = R.comp_fwd(b, a, x)
            if e.coeffs != R.fiber[k].identity_elt(e.src).coeffs:
                return False
    return True


def one_object_linear_category(K: GroundRing, obj="*", labels=("1",), unit=None, table=None) -> LinearCategory:
    """One-object linear category, i.e. a ring with chosen basis. Defaults to
    the ground ring itself (rank one, multiplication)."""
    mod = FreeModule(K, tuple(labels))
    if table is None:
        if mod.rank != 1:
            raise ValueError("a structure-constant table is required for rank > 1")
        table = ((mod.basis_vector(0),),)
    if unit is None:
        if mod.rank != 1:
            raise ValueError("a unit element is required for rank > 1")
        unit = mod.basis_vector(0)
    return LinearCategory(
        K,
        (obj,),
        {(obj, obj): mod},
        {obj: HomElt(obj, obj, tuple(K.coerce(c) for c in unit))},
        {(obj, obj, obj): table},
    )


def scalar_twisted_constant_representation(C: FiniteCategory, K: GroundRing, twist=None) -> Representation:
    """Constant representation with every fiber the one-object category K and
    every action the identity, twisted by scalar compositor components.

    twist maps composable pairs (b, a) to units of K, the forward (split)
    compositor components; omitted pairs default to 1. The result passes
    validation exactly when the twist is a normalized 2-cocycle.
    """
    twist = dict(twist or {})
    fiber_cat = one_object_linear_category(K)
    obj = fiber_cat.objects[0]
    fibers = {i: fiber_cat for i in C.objects}
    ident = identity_functor(fiber_cat)
    act = {m.id: ident for m in C.morphisms}
    unit_iso = {i: NatIso(identity_transform(ident), identity_transform(ident)) for i in C.objects}
    comp_iso = {}
    for b, a in C.composable_pairs():
        s = K.coerce(twist.get((b, a), K.one))
        if not K.is_unit(s):
            raise NotAUnit(f"twist value {K.format(s)} at ({b},{a}) is not a unit in {K}")
        fwd = NatTransform(ident, ident, {obj: HomElt(obj, obj, (s,))})
        bwd = NatTransform(ident, ident, {obj: HomElt(obj, obj, (K.inverse(s),))})
        comp_iso[(b, a)] = NatIso(fwd, bwd)
    return Representation(C, fibers, act, unit_iso, comp_iso, ring=K)


def constant_representation(C: FiniteCategory, K: GroundRing) -> Representation:
    """Every fiber is K, every action and coherence component the identity."""
    return scalar_twisted_constant_representation(C, K, None)


def twisted_group_representation(G: FiniteCategory, K: GroundRing, cocycle) -> Representation:
    """Group (one-object category) acting trivially on K, with the compositor
    at (b, a) given by the cocycle value. Validation succeeds exactly when the
    table satisfies the 2-cocycle identity and is normalized on identities."""
    if len(G.objects) != 1:
        raise CategoryMismatch("a group is a category with one object")
    return scalar_twisted_constant_representation(G, K, dict(cocycle))


def strict_representation(base: FiniteCategory, fibers, act) -> Representation:
    """Wrap an honest functor as a representation with identity coherence data."""
    unit_iso = {}
    for i in base.objects:
        F = act[base.identity_of(i)]
        unit_iso[i] = NatIso(identity_transform(F), identity_transform(F))
    comp_iso = {}
    for b, a in base.composable_pairs():
        F = act[base.compose(b, a)]
        comp_iso[(b, a)] = NatIso(identity_transform(F), identity_transform(F))
    return Representation(base, fibers, act, unit_iso, comp_iso)


def restrict_module(R: Representation, a: str, N: ModuleFunctor) -> ModuleFunctor:
    """Precompose a right module over the codomain fiber with the action of a:
    (a*N)(x) = N(R(a)x) on objects and N(R(a)g) on morphisms."""
    m = R.base.morphism(a)
    if N.cat is not R.fiber[m.cod]:
        raise CategoryMismatch(f"module is not over the codomain fiber of {a}")
    F = R.act[a]
    src = R.fiber[m.dom]
    obj_vals = {x: N.value(F.obj_map[x]) for x in src.objects}
    mor_vals = {}
    for x in src.objects:
        for y in src.objects:
            mod = src.hom_module(x, y)
            maps = []
            for k in range(mod.rank):
                maps.append(N.apply(apply_functor(F, src.basis_elt(x, y, k))))
            mor_vals[(x, y)] = tuple(maps)
    return ModuleFunctor(src, obj_vals, mor_vals)
