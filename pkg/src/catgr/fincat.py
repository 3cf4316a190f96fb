"""Finite categories as explicit composition tables, and path categories of
acyclic quivers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicQuiver, UnknownObject
from .report import ValidationReport


@dataclass(frozen=True)
class Mor:
    id: str
    dom: str
    cod: str


class FiniteCategory:
    """Objects, morphisms, identities, and a total composition table.

    comp maps (b, a) -> b.a, defined exactly when cod(a) = dom(b). All
    orderings follow declaration order.
    """

    def __init__(self, objects, morphisms, identity, comp):
        self.objects = tuple(objects)
        self.morphisms = tuple(Mor(*m) if not isinstance(m, Mor) else m for m in morphisms)
        self.identity = dict(identity)
        self.comp = dict(comp)
        self._by_id = {m.id: m for m in self.morphisms}
        if len(self._by_id) != len(self.morphisms):
            raise ValueError("morphism ids must be distinct")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object ids must be distinct")
        for m in self.morphisms:
            if m.dom not in set(self.objects) or m.cod not in set(self.objects):
                raise UnknownObject(f"morphism {m.id} references undeclared objects")
        for obj, mid in self.identity.items():
            if obj not in set(self.objects):
                raise UnknownObject(f"identity declared for unknown object {obj!r}")
            if mid not in self._by_id:
                raise ValueError(f"identity of {obj!r} is not a declared morphism")

    def morphism(self, mid: str) -> Mor:
        try:
            return self._by_id[mid]
        except KeyError:
            raise UnknownObject(f"unknown morphism {mid!r}") from None

    def dom(self, mid: str) -> str:
        return self.morphism(mid).dom

    def cod(self, mid: str) -> str:
        return self.morphism(mid).cod

    def identity_of(self, obj: str) -> str:
        if obj not in set(self.objects):
            raise UnknownObject(f"unknown object {obj!r}")
        return self.identity[obj]

    def compose(self, b: str, a: str) -> str:
        """b.a for cod(a) = dom(b)."""
        return self.comp[(b, a)]

    def composable_pairs(self):
        for b in self.morphisms:
            for a in self.morphisms:
                if a.cod == b.dom:
                    yield b.id, a.id

    def composable_triples(self):
        for c in self.morphisms:
            for b in self.morphisms:
                if b.cod == c.dom:
                    for a in self.morphisms:
                        if a.cod == b.dom:
                            yield c.id, b.id, a.id

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def hom_set(C: FiniteCategory, i: str, j: str) -> list[str]:
    """All morphism ids i -> j in declaration order."""
    if i not in set(C.objects):
        raise UnknownObject(f"unknown object {i!r}")
    if j not in set(C.objects):
        raise UnknownObject(f"unknown object {j!r}")
    return [m.id for m in C.morphisms if m.dom == i and m.cod == j]


def validate_category(C: FiniteCategory) -> ValidationReport:
    """Check the category axioms instance by instance; nothing raises, every
    violation becomes a finding."""
    report = ValidationReport()
    for obj in C.objects:
        mid = C.identity.get(obj)
        if mid is None:
            report.add(f"identity[{obj}]", "object has no identity morphism")
            continue
        m = C.morphism(mid)
        if m.dom != obj or m.cod != obj:
            report.add(f"identity[{obj}]", f"identity {mid} is not an endomorphism of {obj}")
    for (b, a), c in C.comp.items():
        if b not in C._by_id or a not in C._by_id:
            report.add(f"comp[{b},{a}]", "composite of undeclared morphisms")
            continue
        if C.cod(a) != C.dom(b):
            report.add(f"comp[{b},{a}]", "entry for a non-composable pair")
            continue
        if c not in C._by_id:
            report.add(f"comp[{b},{a}]", f"composite {c!r} is not a declared morphism")
            continue
        if C.dom(c) != C.dom(a) or C.cod(c) != C.cod(b):
            report.add(
                f"comp[{b},{a}]",
                f"composite {c} has wrong endpoints {C.dom(c)}->{C.cod(c)}",
            )
    for b, a in C.composable_pairs():
        if (b, a) not in C.comp:
            report.add(f"comp[{b},{a}]", "missing composite for a composable pair")
    if not report.ok:
        return report  # identity/associativity sweeps assume a total table
    for m in C.morphisms:
        left = C.comp.get((C.identity_of(m.cod), m.id))
        right = C.comp.get((m.id, C.identity_of(m.dom)))
        if left != m.id:
            report.add(f"unit[{m.id}]", f"1.{m.id} = {left!r}, expected {m.id}")
        if right != m.id:
            report.add(f"unit[{m.id}]", f"{m.id}.1 = {right!r}, expected {m.id}")
    for c, b, a in C.composable_triples():
        lhs = C.comp.get((c, C.comp[(b, a)]))
        rhs = C.comp.get((C.comp[(c, b)], a))
        if lhs != rhs:
            report.add(
                f"assoc[{c},{b},{a}]",
                f"c(ba) = {lhs!r} but (cb)a = {rhs!r}",
            )
    return report


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise UnknownObject(f"arrow {a.id} references undeclared vertices")

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def _has_cycle(Q: Quiver) -> bool:
    indeg = {v: 0 for v in Q.vertices}
    for a in Q.arrows:
        indeg[a.target] += 1
    queue = [v for v in Q.vertices if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for a in Q.arrows:
            if a.source == v:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
    return seen != len(Q.vertices)


def path_id(arrow_ids: list[str]) -> str:
    """Composite id for the path that traverses arrow_ids in order: "c.b.a"
    reads right to left, so the first arrow walked is rightmost."""
    return "∘".join(reversed(arrow_ids))


def path_category(Q: Quiver) -> FiniteCategory:
    """The free category on an acyclic quiver: objects are vertices, morphisms
    are directed paths (with length-0 identities), composition concatenates."""
    if _has_cycle(Q):
        raise CyclicQuiver("quiver has a directed cycle; its path category is infinite")

    # paths as tuples of arrows, grouped by length, lexicographic within a
    # length group by declaration order of the traversed arrows
    paths: list[tuple[Arrow, ...]] = [(a,) for a in Q.arrows]
    frontier = paths[:]
    while frontier:
        extended = []
        for p in frontier:
            for a in Q.arrows:
                if a.source == p[-1].target:
                    extended.append(p + (a,))
        paths.extend(extended)
        frontier = extended

    morphisms = []
    identity = {}
    for v in Q.vertices:
        mid = f"1_{v}"
        morphisms.append(Mor(mid, v, v))
        identity[v] = mid
    id_of_path = {}
    for p in paths:
        mid = path_id([a.id for a in p])
        morphisms.append(Mor(mid, p[0].source, p[-1].target))
        id_of_path[tuple(a.id for a in p)] = mid

    comp = {}
    arrows_of = {mid: key for key, mid in id_of_path.items()}
    for m in morphisms:
        comp[(identity[m.cod], m.id)] = m.id
        comp[(m.id, identity[m.dom])] = m.id
    for g in morphisms:
        ga = arrows_of.get(g.id)
        if ga is None:
            continue
        for f in morphisms:
            fa = arrows_of.get(f.id)
            if fa is None or f.cod != g.dom:
                continue
            comp[(g.id, f.id)] = id_of_path[fa + ga]
    return FiniteCategory([v for v in Q.vertices], morphisms, identity, comp)


def linear_quiver(n: int, vertex_prefix: str = "", arrow_names=None) -> Quiver:
    """A_n with arrows 1 -> 2 -> ... -> n."""
    vertices = [f"{vertex_prefix}{k}" for k in range(1, n + 1)]
    default = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"]
    names = list(arrow_names) if arrow_names is not None else default
    arrows = [
        Arrow(names[k] if k < len(names) else f"a{k + 1}", vertices[k], vertices[k + 1])
        for k in range(n - 1)
    ]
    return Quiver(vertices, arrows)
