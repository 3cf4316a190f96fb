"""Finite preadditive categories with free hom-modules, additive functors,
natural transformations, and contravariant module-valued functors.

Composition is stored as structure constants on hom bases and extended
bilinearly; all equality of functors and transformations is strict equality
of the underlying tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CategoryMismatch, ObjectMismatch, RingMismatch
from .fincat import FiniteCategory, hom_set
from .ground import (
    FreeModule,
    GroundRing,
    LinearMap,
    add_linear,
    compose_linear,
    vec_add,
    vec_scale,
    zero_vector,
)
from .report import ValidationReport


@dataclass(frozen=True)
class HomElt:
    """Element of hom(src, dst) in some linear category, as a coefficient
    vector over the chosen basis."""

    src: object
    dst: object
    coeffs: tuple

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


def add_elt(A: "LinearCategory", e: HomElt, f: HomElt) -> HomElt:
    if (e.src, e.dst) != (f.src, f.dst):
        raise ObjectMismatch("cannot add elements of different hom-modules")
    return HomElt(e.src, e.dst, vec_add(A.ring, e.coeffs, f.coeffs))


def scale_elt(A: "LinearCategory", c, e: HomElt) -> HomElt:
    return HomElt(e.src, e.dst, vec_scale(A.ring, A.ring.coerce(c), e.coeffs))


class LinearCategory:
    """Preadditive category whose hom-groups are free modules with chosen
    bases; comp[(x, y, z)][gi][fi] is the coefficient vector of the composite
    of the gi-th basis element of hom(y, z) with the fi-th of hom(x, y)."""

    def __init__(self, ring: GroundRing, objects, hom, id_elem, comp):
        self.ring = ring
        self.objects = tuple(objects)
        self.hom = dict(hom)
        self.id_elem = dict(id_elem)
        self.comp = dict(comp)
        for (x, y), mod in self.hom.items():
            if mod.ring != ring:
                raise RingMismatch(f"hom({x},{y}) lives over {mod.ring}, category over {ring}")

    def hom_module(self, x, y) -> FreeModule:
        try:
            return self.hom[(x, y)]
        except KeyError:
            raise ObjectMismatch(f"no hom-module for ({x!r}, {y!r})") from None

    def elt(self, x, y, coeffs) -> HomElt:
        mod = self.hom_module(x, y)
        coeffs = tuple(self.ring.coerce(c) for c in coeffs)
        if len(coeffs) != mod.rank:
            raise ObjectMismatch(f"{len(coeffs)} coefficients for rank {mod.rank}")
        return HomElt(x, y, coeffs)

    def zero_elt(self, x, y) -> HomElt:
        return HomElt(x, y, zero_vector(self.ring, self.hom_module(x, y).rank))

    def basis_elt(self, x, y, index: int) -> HomElt:
        return HomElt(x, y, self.hom_module(x, y).basis_vector(index))

    def identity_elt(self, x) -> HomElt:
        return self.id_elem[x]

    def comp_table(self, x, y, z):
        return self.comp.get(
            (x, y, z),
            tuple(
                tuple(zero_vector(self.ring, self.hom_module(x, z).rank) for _ in range(self.hom_module(x, y).rank))
                for _ in range(self.hom_module(y, z).rank)
            ),
        )

    def format_elt(self, e: HomElt) -> dict:
        mod = self.hom_module(e.src, e.dst)
        return {
            str(lab): self.ring.format(c)
            for lab, c in zip(mod.labels, e.coeffs)
            if not self.ring.is_zero(c)
        }

    def __repr__(self):
        return f"LinearCategory({len(self.objects)} objects over {self.ring})"


def compose_hom(A: LinearCategory, g: HomElt, f: HomElt) -> HomElt:
    """Bilinear composite g.f through the structure constants."""
    if f.dst != g.src:
        raise ObjectMismatch(f"cannot compose hom({f.src},{f.dst}) after hom({g.src},{g.dst})")
    x, y, z = f.src, f.dst, g.dst
    ring = A.ring
    out = list(zero_vector(ring, A.hom_module(x, z).rank))
    table = A.comp_table(x, y, z)
    for gi, gc in enumerate(g.coeffs):
        if ring.is_zero(gc):
            continue
        row = table[gi]
        for fi, fc in enumerate(f.coeffs):
            if ring.is_zero(fc):
                continue
            scale = ring.mul(gc, fc)
            for k, c in enumerate(row[fi]):
                out[k] = ring.add(out[k], ring.mul(scale, c))
    return HomElt(x, z, tuple(out))


def validate_linear_category(A: LinearCategory) -> ValidationReport:
    """Unit laws and associativity on all basis elements and triples."""
    report = ValidationReport()
    for x in A.objects:
        if x not in A.id_elem:
            report.add(f"id[{x}]", "missing identity element")
    for x in A.objects:
        for y in A.objects:
            if (x, y) not in A.hom:
                report.add(f"hom[{x},{y}]", "missing hom-module")
    if not report.ok:
        return report
    for x in A.objects:
        for y in A.objects:
            mod = A.hom_module(x, y)
            for fi in range(mod.rank):
                f = A.basis_elt(x, y, fi)
                left = compose_hom(A, A.identity_elt(y), f)
                if left.coeffs != f.coeffs:
                    report.add(
                        f"unit[{x},{y}]#{mod.labels[fi]}",
                        "left unit law fails",
                        got=A.format_elt(left),
                    )
                right = compose_hom(A, f, A.identity_elt(x))
                if right.coeffs != f.coeffs:
                    report.add(
                        f"unit[{x},{y}]#{mod.labels[fi]}",
                        "right unit law fails",
                        got=A.format_elt(right),
                    )
    for x in A.objects:
        for y in A.objects:
            fmod = A.hom_module(x, y)
            for z in A.objects:
                gmod = A.hom_module(y, z)
                for w in A.objects:
                    hmod = A.hom_module(z, w)
                    for hi in range(hmod.rank):
                        h = A.basis_elt(z, w, hi)
                        for gi in range(gmod.rank):
                            g = A.basis_elt(y, z, gi)
                            hg = compose_hom(A, h, g)
                            for fi in range(fmod.rank):
                                f = A.basis_elt(x, y, fi)
                                lhs = compose_hom(A, hg, f)
                                rhs = compose_hom(A, h, compose_hom(A, g, f))
                                if lhs.coeffs != rhs.coeffs:
                                    report.add(
                                        f"assoc[{hmod.labels[hi]},{gmod.labels[gi]},{fmod.labels[fi]}]"
                                        f"@({x},{y},{z},{w})",
                                        "associativity fails",
                                        left=A.format_elt(lhs),
                                        right=A.format_elt(rhs),
                                    )
    return report


def linearize(C: FiniteCategory, K: GroundRing) -> LinearCategory:
    """Free K-linearization: hom(x, y) is free on the morphisms x -> y and
    composition extends the composition table bilinearly."""
    hom = {}
    for x in C.objects:
        for y in C.objects:
            hom[(x, y)] = FreeModule(K, tuple(hom_set(C, x, y)))
    id_elem = {}
    for x in C.objects:
        mod = hom[(x, x)]
        id_elem[x] = HomElt(x, x, mod.basis_vector(mod.index_of(C.identity_of(x))))
    comp = {}
    for x in C.objects:
        for y in C.objects:
            fmod = hom[(x, y)]
            for z in C.objects:
                gmod = hom[(y, z)]
                if fmod.rank == 0 or gmod.rank == 0:
                    continue
                target = hom[(x, z)]
                table = []
                for gm in gmod.labels:
                    row = []
                    for fm in fmod.labels:
                        row.append(target.basis_vector(target.index_of(C.compose(gm, fm))))
                    table.append(tuple(row))
                comp[(x, y, z)] = tuple(table)
    return LinearCategory(K, C.objects, hom, id_elem, comp)


class AdditiveFunctor:
    """Functor between linear categories: an object map plus one linear map
    per hom-module."""

    def __init__(self, dom: LinearCategory, cod: LinearCategory, obj_map, hom_map):
        if dom.ring != cod.ring:
            raise RingMismatch("functor requires a common ground ring")
        self.dom = dom
        self.cod = cod
        self.obj_map = dict(obj_map)
        self.hom_map = dict(hom_map)

    def on_object(self, x):
        return self.obj_map[x]

    def on_hom(self, x, y) -> LinearMap:
        return self.hom_map[(x, y)]

    def __eq__(self, other):
        return (
            isinstance(other, AdditiveFunctor)
            and self.dom is other.dom
            and self.cod is other.cod
            and self.obj_map == other.obj_map
            and self.hom_map == other.hom_map
        )

    def __repr__(self):
        return f"AdditiveFunctor({len(self.obj_map)} objects)"


def identity_functor(A: LinearCategory) -> AdditiveFunctor:
    obj_map = {x: x for x in A.objects}
    hom_map = {}
    for x in A.objects:
        for y in A.objects:
            hom_map[(x, y)] = LinearMap.identity(A.hom_module(x, y))
    return AdditiveFunctor(A, A, obj_map, hom_map)


def apply_functor(F: AdditiveFunctor, e: HomElt) -> HomElt:
    m = F.on_hom(e.src, e.dst)
    return HomElt(F.on_object(e.src), F.on_object(e.dst), m.apply(e.coeffs))


def compose_functors(G: AdditiveFunctor, F: AdditiveFunctor) -> AdditiveFunctor:
    if F.cod is not G.dom and F.cod != G.dom:
        raise CategoryMismatch("codomain of F is not the domain of G")
    obj_map = {x: G.obj_map[fx] for x, fx in F.obj_map.items()}
    hom_map = {}
    for (x, y), m in F.hom_map.items():
        hom_map[(x, y)] = compose_linear(G.on_hom(F.obj_map[x], F.obj_map[y]), m)
    return AdditiveFunctor(F.dom, G.cod, obj_map, hom_map)


def check_functor(F: AdditiveFunctor, where: str = "functor") -> ValidationReport:
    """Identity and composition preservation on all basis elements/pairs."""
    report = ValidationReport()
    A, B = F.dom, F.cod
    for x in A.objects:
        if x not in F.obj_map:
            report.add(f"{where}.obj[{x}]", "object not mapped")
            continue
        if F.obj_map[x] not in set(B.objects):
            report.add(f"{where}.obj[{x}]", f"image {F.obj_map[x]!r} not in codomain")
    if not report.ok:
        return report
    for x in A.objects:
        for y in A.objects:
            m = F.hom_map.get((x, y))
            if m is None:
                report.add(f"{where}.hom[{x},{y}]", "hom component missing")
                continue
            if m.dom != A.hom_module(x, y) or m.cod != B.hom_module(F.obj_map[x], F.obj_map[y]):
                report.add(f"{where}.hom[{x},{y}]", "hom component has wrong shape")
    if not report.ok:
        return report
    for x in A.objects:
        img = apply_functor(F, A.identity_elt(x))
        if img.coeffs != B.identity_elt(F.obj_map[x]).coeffs:
            report.add(f"{where}.id[{x}]", "identity not preserved", got=B.format_elt(img))
    for x in A.objects:
        for y in A.objects:
            fmod = A.hom_module(x, y)
            for z in A.objects:
                gmod = A.hom_module(y, z)
                for gi in range(gmod.rank):
                    g = A.basis_elt(y, z, gi)
                    for fi in range(fmod.rank):
                        f = A.basis_elt(x, y, fi)
                        lhs = apply_functor(F, compose_hom(A, g, f))
                        rhs = compose_hom(B, apply_functor(F, g), apply_functor(F, f))
                        if lhs.coeffs != rhs.coeffs:
                            report.add(
                                f"{where}.comp[{gmod.labels[gi]},{fmod.labels[fi]}]@({x},{y},{z})",
                                "composition not preserved",
                                left=B.format_elt(lhs),
                                right=B.format_elt(rhs),
                            )
    return report


class NatTransform:
    """Natural transformation between parallel additive functors; one
    component element per object of the domain."""

    def __init__(self, source: AdditiveFunctor, target: AdditiveFunctor, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def at(self, x) -> HomElt:
        return self.components[x]

    def __eq__(self, other):
        return (
            isinstance(other, NatTransform)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        return f"NatTransform({len(self.components)} components)"


def identity_transform(F: AdditiveFunctor) -> NatTransform:
    comps = {x: F.cod.identity_elt(F.obj_map[x]) for x in F.dom.objects}
    return NatTransform(F, F, comps)


def check_natural(t: NatTransform, where: str = "nat") -> ValidationReport:
    report = ValidationReport()
    F, G = t.source, t.target
    if F.dom is not G.dom or F.cod is not G.cod:
        report.add(where, "source and target functors are not parallel")
        return report
    A, B = F.dom, F.cod
    for x in A.objects:
        c = t.components.get(x)
        if c is None:
            report.add(f"{where}.comp[{x}]", "component missing")
            continue
        if (c.src, c.dst) != (F.obj_map[x], G.obj_map[x]):
            report.add(f"{where}.comp[{x}]", "component lives in the wrong hom-module")
    if not report.ok:
        return report
    for x in A.objects:
        for y in A.objects:
            mod = A.hom_module(x, y)
            for fi in range(mod.rank):
                f = A.basis_elt(x, y, fi)
                lhs = compose_hom(B, t.at(y), apply_functor(F, f))
                rhs = compose_hom(B, apply_functor(G, f), t.at(x))
                if lhs.coeffs != rhs.coeffs:
                    report.add(
                        f"{where}.square[{mod.labels[fi]}]@({x},{y})",
                        "naturality square fails",
                        left=B.format_elt(lhs),
                        right=B.format_elt(rhs),
                    )
    return report


@dataclass
class NatIso:
    """Invertible natural transformation with both directions stored."""

    fwd: NatTransform
    bwd: NatTransform


def check_nat_iso(iso: NatIso, where: str = "iso") -> ValidationReport:
    """Naturality of both directions plus componentwise two-sided inverses."""
    report = ValidationReport()
    report.extend(check_natural(iso.fwd, f"{where}.fwd"))
    report.extend(check_natural(iso.bwd, f"{where}.bwd"))
    if iso.fwd.source != iso.bwd.target or iso.fwd.target != iso.bwd.source:
        report.add(where, "backward direction does not reverse the forward one")
        return report
    B = iso.fwd.source.cod
    for x in iso.fwd.source.dom.objects:
        f = iso.fwd.components.get(x)
        b = iso.bwd.components.get(x)
        if f is None or b is None:
            continue
        src_id = B.identity_elt(f.src)
        dst_id = B.identity_elt(f.dst)
        if compose_hom(B, b, f).coeffs != src_id.coeffs:
            report.add(f"{where}.inv[{x}]", "backward . forward is not the identity",
                       got=B.format_elt(compose_hom(B, b, f)))
        if compose_hom(B, f, b).coeffs != dst_id.coeffs:
            report.add(f"{where}.inv[{x}]", "forward . backward is not the identity",
                       got=B.format_elt(compose_hom(B, f, b)))
    return report


def whisker(left, right) -> NatTransform:
    """whisker(F, t): apply the functor F to every component of t.
    whisker(t, F): reindex the components of t along F's object map."""
    if isinstance(left, AdditiveFunctor) and isinstance(right, NatTransform):
        F, t = left, right
        if t.source.cod is not F.dom and t.source.cod != F.dom:
            raise CategoryMismatch("transformation does not land in the functor's domain")
        comps = {x: apply_functor(F, t.at(x)) for x in t.source.dom.objects}
        return NatTransform(
            compose_functors(F, t.source), compose_functors(F, t.target), comps
        )
    if isinstance(left, NatTransform) and isinstance(right, AdditiveFunctor):
        t, F = left, right
        if F.cod is not t.source.dom and F.cod != t.source.dom:
            raise CategoryMismatch("functor does not land in the transformation's domain")
        comps = {x: t.at(F.obj_map[x]) for x in F.dom.objects}
        return NatTransform(
            compose_functors(t.source, F), compose_functors(t.target, F), comps
        )
    raise CategoryMismatch("whisker expects (functor, transformation) or (transformation, functor)")


class ModuleFunctor:
    """Contravariant additive functor from a linear category to free modules,
    i.e. a right module over the category. mor_vals[(x, y)][k] is the linear
    map obj_vals[y] -> obj_vals[x] induced by the k-th basis element of
    hom(x, y); general elements act by linearity."""

    def __init__(self, cat: LinearCategory, obj_vals, mor_vals):
        self.cat = cat
        self.obj_vals = dict(obj_vals)
        self.mor_vals = dict(mor_vals)

    def value(self, x) -> FreeModule:
        return self.obj_vals[x]

    def apply(self, e: HomElt) -> LinearMap:
        ring = self.cat.ring
        out = LinearMap.zero(self.obj_vals[e.dst], self.obj_vals[e.src])
        maps = self.mor_vals.get((e.src, e.dst), ())
        for k, c in enumerate(e.coeffs):
            if ring.is_zero(c):
                continue
            m = maps[k]
            out = add_linear(out, LinearMap(m.dom, m.cod, tuple(vec_scale(ring, c, row) for row in m.matrix)))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ModuleFunctor)
            and self.obj_vals == other.obj_vals
            and self.mor_vals == other.mor_vals
        )

    def __repr__(self):
        return f"ModuleFunctor({len(self.obj_vals)} values)"


def check_module_functor(M: ModuleFunctor, where: str = "functor") -> ValidationReport:
    """Contravariant functoriality: identities to identities and
    M(g.f) = M(f).M(g) on all basis pairs."""
    report = ValidationReport()
    A = M.cat
    for x in A.objects:
        if x not in M.obj_vals:
            report.add(f"{where}.value[{x}]", "object value missing")
    if not report.ok:
        return report
    for x in A.objects:
        for y in A.objects:
            mod = A.hom_module(x, y)
            maps = M.mor_vals.get((x, y))
            if mod.rank and (maps is None or len(maps) != mod.rank):
                report.add(f"{where}.maps[{x},{y}]", "one linear map per basis element required")
                continue
            for k in range(mod.rank):
                m = maps[k]
                if m.dom != M.obj_vals[y] or m.cod != M.obj_vals[x]:
                    report.add(
                        f"{where}.maps[{x},{y}]#{mod.labels[k]}",
                        "map has wrong domain/codomain (contravariant)",
                    )
    if not report.ok:
        return report
    for x in A.objects:
        img = M.apply(A.identity_elt(x))
        if not img.is_identity():
            report.add(f"{where}.id[{x}]", "identity element does not act as the identity")
    for x in A.objects:
        for y in A.objects:
            fmod = A.hom_module(x, y)
            for z in A.objects:
                gmod = A.hom_module(y, z)
                for gi in range(gmod.rank):
                    g = A.basis_elt(y, z, gi)
                    mg = M.apply(g)
                    for fi in range(fmod.rank):
                        f = A.basis_elt(x, y, fi)
                        lhs = M.apply(compose_hom(A, g, f))
                        rhs = compose_linear(M.apply(f), mg)
                        if lhs.matrix != rhs.matrix:
                            report.add(
                                f"{where}.comp[{gmod.labels[gi]},{fmod.labels[fi]}]@({x},{y},{z})",
                                "contravariant functoriality fails",
                            )
    return report
