"""Quivers, paths, and relation sets.

Paths are stored in traversal order: ``Path(src, tgt, (a, b))`` is "first a,
then b".  Relations are linear combinations of parallel paths of length >= 2
(the admissible-ideal convention).
"""

from __future__ import annotations

from dataclasses import dataclass, field


class QuiverError(ValueError):
    pass


class InvalidRelation(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        if set(names) & set(self.vertices):
            raise QuiverError("arrow names must differ from vertex names")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise QuiverError(f"arrow {a.name} has undeclared endpoint")

    @staticmethod
    def build(vertices, arrows):
        """Arrows given as (name, source, target) triples."""
        return Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"no arrow named {name!r}")

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a.target == v]

    def vertex_index(self, v):
        return self.vertices.index(v)

    def opposite(self):
        return Quiver(self.vertices,
                      tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def to_dot(self, name="quiver"):
        lines = [f'digraph "{name}" {{']
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.arrows:
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Path:
    """Composable arrow sequence in traversal order; () is a trivial path."""

    source: str
    target: str
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    @staticmethod
    def trivial(vertex):
        return Path(vertex, vertex, ())

    @staticmethod
    def from_arrows(quiver, arrow_names, source=None):
        if not arrow_names:
            if source is None:
                raise QuiverError("trivial path needs an explicit vertex")
            return Path.trivial(source)
        arrows = [quiver.arrow(n) for n in arrow_names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InvalidRelation(
                    f"arrows {a.name} and {b.name} do not compose")
        return Path(arrows[0].source, arrows[-1].target, tuple(arrow_names))

    def then(self, other):
        """Traversal concatenation self-then-other; None when endpoints clash."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed_in(self, opposite_quiver):
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def label(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass(frozen=True)
class RelationSet:
    """Generators of an admissible ideal: each generator is a tuple of
    (coefficient, Path) with a common source, common target, length >= 2."""

    generators: tuple = field(default_factory=tuple)

    @staticmethod
    def build(quiver, field_spec, generators):
        """Generators given as lists of (coeff, [arrow names])."""
        gens = []
        for g in generators:
            terms = []
            for coeff, path_or_names in g:
                c = field_spec.parse_scalar(coeff) if isinstance(coeff, str) else field_spec.from_int(coeff)
                path = path_or_names if isinstance(path_or_names, Path) \
                    else Path.from_arrows(quiver, list(path_or_names))
                terms.append((c, path))
            gens.append(tuple(terms))
        rels = RelationSet(tuple(gens))
        rels.validate()
        return rels

    def validate(self):
        for g in self.generators:
            if not g:
                raise InvalidRelation("empty relation generator")
            src = {p.source for _, p in g}
            tgt = {p.target for _, p in g}
            if len(src) != 1 or len(tgt) != 1:
                raise InvalidRelation("relation terms must share source and target")
            for _, p in g:
                if len(p) < 2:
                    raise InvalidRelation("relation paths must have length >= 2")
        return self

    def opposite(self, opposite_quiver):
        gens = []
        for g in self.generators:
            gens.append(tuple((c, p.reversed_in(opposite_quiver)) for c, p in g))
        return RelationSet(tuple(gens))


def all_length_two_paths(quiver):
    """Relation generators for rad^2 = 0: every composable arrow pair."""
    gens = []
    for a in quiver.arrows:
        for b in quiver.arrows:
            if a.target == b.source:
                gens.append(((1, Path(a.source, b.target, (a.name, b.name))),))
    return gens
