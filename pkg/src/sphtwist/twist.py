"""Twist functors on mesh categories, realized as vertex permutations.

A twist along a spherical sequence permutes the indecomposables of the mesh
category, so on a window it is recorded as a partial map of vertices. Such a
map commutes with the Serre functor and the shift, which makes it an
automorphism of the translation quiver: a diagram automorphism on rows
combined with a translation in time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .artin import GroupWord
from .errors import AmbiguousAction, InsufficientWindow, InvalidInput, UnsupportedDiagram
from .mesh import MeshModel, SphericalSequenceSpec, Vertex, euler_form


class QuiverAutomorphism:
    """A vertex map defined on (part of) the window of ``model``."""

    def __init__(self, model: MeshModel, vertex_map: Mapping[Vertex, Vertex], label: str = ""):
        self.model = model
        self.vertex_map = dict(vertex_map)
        self.label = label

    @classmethod
    def from_rule(cls, model: MeshModel, rule, label: str = "") -> "QuiverAutomorphism":
        """Restrict a total vertex map (any callable) to the window."""
        vmap = {}
        for v in model.vertices:
            w = rule(v)
            if w in model:
                vmap[v] = w
        return cls(model, vmap, label)

    @classmethod
    def identity(cls, model: MeshModel) -> "QuiverAutomorphism":
        return cls(model, {v: v for v in model.vertices}, "id")

    @property
    def domain(self) -> frozenset:
        return frozenset(self.vertex_map)

    def __call__(self, v: Vertex) -> Vertex:
        try:
            return self.vertex_map[v]
        except KeyError:
            raise InsufficientWindow(f"{self.label or 'map'} is not defined at {v} in window {self.model.window}")

    def __contains__(self, v) -> bool:
        return v in self.vertex_map

    def agrees_with(self, other: "QuiverAutomorphism") -> bool:
        common = self.domain & other.domain
        return all(self.vertex_map[v] == other.vertex_map[v] for v in common)

    def __repr__(self):
        return f"QuiverAutomorphism({self.label!r}, {len(self.vertex_map)} vertices)"


def compose(a: QuiverAutomorphism, b: QuiverAutomorphism) -> QuiverAutomorphism:
    """``a o b``: apply ``b`` first."""
    if a.model is not b.model:
        raise InvalidInput("automorphisms live on different models")
    vmap = {v: a.vertex_map[w] for v, w in b.vertex_map.items() if w in a.vertex_map}
    return QuiverAutomorphism(a.model, vmap, f"{a.label}*{b.label}")


def invert(a: QuiverAutomorphism) -> QuiverAutomorphism:
    inv = {}
    for v, w in a.vertex_map.items():
        if w in inv:
            raise InvalidInput(f"{a.label} is not injective at {w}")
        inv[w] = v
    return QuiverAutomorphism(a.model, inv, f"{a.label}^-1")


def commutes_with_rules(a: QuiverAutomorphism) -> list[str]:
    """Vertices where ``a`` fails to commute with Serre functor or shift."""
    model, bad = a.model, []
    for name, rule in (("serre", model.serre_rule), ("shift", model.shift_rule)):
        for v, w in a.vertex_map.items():
            rv = rule(v)
            if rv in a.vertex_map and a.vertex_map[rv] != rule(w):
                bad.append(f"{a.label} does not commute with {name} at {v}")
    return bad


def default_min_domain(model: MeshModel) -> int:
    """One shift period worth of positions times the number of rows."""
    return -(-model.shift_rule.t_offset // 2) * len(model.rows)


def apply_word(word: GroupWord, gens: Mapping[int, QuiverAutomorphism], v: Vertex) -> Vertex | None:
    """Image of ``v`` under the composite named by ``word`` (rightmost letter acts first).

    Returns None when some intermediate vertex leaves the window.
    """
    inverses: dict[int, dict] = {}
    for g, e in reversed(word.letters):
        if g not in gens:
            raise InvalidInput(f"no action supplied for generator s{g}")
        table = gens[g].vertex_map
        if e < 0:
            if g not in inverses:
                inverses[g] = {w: u for u, w in table.items()}
            table = inverses[g]
        for _ in range(abs(e)):
            v = table.get(v)
            if v is None:
                return None
    return v


def word_action(word: GroupWord, gens: Mapping[int, QuiverAutomorphism], model: MeshModel | None = None,
                label: str | None = None) -> QuiverAutomorphism:
    model = model or next(iter(gens.values())).model
    vmap = {}
    for v in model.vertices:
        w = apply_word(word, gens, v)
        if w is not None:
            vmap[v] = w
    return QuiverAutomorphism(model, vmap, label or str(word))


@dataclass
class RelationCheck:
    holds: bool
    domain_size: int
    mismatches: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def check_relation(lhs: GroupWord, rhs: GroupWord, gens: Mapping[int, QuiverAutomorphism],
                   min_domain: int | None = None) -> RelationCheck:
    """Compare two words vertex by vertex on their common domain."""
    model = next(iter(gens.values())).model
    if min_domain is None:
        min_domain = default_min_domain(model)
    left = word_action(lhs, gens, model)
    right = word_action(rhs, gens, model)
    common = sorted(left.domain & right.domain)
    if len(common) < min_domain:
        raise InsufficientWindow(
            f"only {len(common)} vertices remain in the common domain, {min_domain} required"
        )
    bad = [(v, left.vertex_map[v], right.vertex_map[v]) for v in common
           if left.vertex_map[v] != right.vertex_map[v]]
    return RelationCheck(not bad, len(common), bad)


def verify_relation(lhs: GroupWord, rhs: GroupWord, gens: Mapping[int, QuiverAutomorphism],
                    min_domain: int | None = None) -> bool:
    return check_relation(lhs, rhs, gens, min_domain).holds


# -- twists ----------------------------------------------------------------------


def twist_on_member(spec: SphericalSequenceSpec, i: int) -> tuple[int, int]:
    """T_E(E_i) = E_j[s]; returns ``(j, s)`` with j = i - 1 and s = 1 - m_{i-1}."""
    k = spec.length
    if not 0 <= i < k:
        raise InvalidInput(f"member index {i} outside 0..{k - 1}")
    j = (i - 1) % k
    return j, 1 - spec.degrees[j]


def twist_power_on_member(spec: SphericalSequenceSpec, i: int, power: int) -> tuple[int, int]:
    """Iterate :func:`twist_on_member` ``power >= 0`` times."""
    shift = 0
    for _ in range(power):
        i, s = twist_on_member(spec, i)
        shift += s
    return i, shift


def central_member_action(r: int, degrees, i: int, primed: bool = False) -> tuple[int, int, int]:
    """Action of the central braid power on a member, for ratio r = k'/k.

    Returns ``(power, index, shift)``: ``(T_E T_E')^power`` sends member ``i``
    of the sequence with the given degrees to member ``index`` shifted by
    ``shift``. ``primed`` selects the longer sequence E' (it matters for r = 2).
    """
    k = len(degrees)
    m = lambda j: degrees[j % k]
    if r == 1:
        return 3, (i - 3) % k, 4 - m(i - 1) - m(i - 2) - m(i - 3)
    if r == 2:
        j = i + k // 2 - 2 if primed else i - 2
        return 2, j % k, 3 - m(i - 1) - m(i - 2)
    if r == 3:
        return 3, (i - 3) % k, 5 - m(i - 1) - m(i - 2) - m(i - 3)
    raise InvalidInput("r must be 1, 2 or 3")


def _member_targets(model: MeshModel, spec: SphericalSequenceSpec) -> dict[Vertex, Vertex]:
    out = {}
    for i, e in enumerate(spec.members):
        j, s = twist_on_member(spec, i)
        out[e] = model.shift(spec.members[j], s)
    return out


def _candidate_rules(model: MeshModel, source: Vertex, target: Vertex):
    """Translation-quiver automorphisms sending ``source`` to ``target``."""
    from .mesh import AffineRule

    dt = model.time(target) - model.time(source)
    for perm in model.diagram_automorphisms:
        if perm[source.row] != target.row:
            continue
        try:
            yield AffineRule(perm, dt, model.parity)
        except ValueError:
            continue


def _euler_table(model: MeshModel, probes, targets):
    return {(z, y): euler_form(model, z, y) for z in probes for y in targets}


def _closed(model: MeshModel, v: Vertex) -> bool:
    return v in model and model.serre(v) in model


def derive_automorphism(model: MeshModel, spec: SphericalSequenceSpec, label: str | None = None,
                        return_rule: bool = False):
    """Find the unique quiver automorphism compatible with the twist along ``spec``.

    Candidates are the translation-quiver automorphisms sending member E_i to
    the member prescribed by the twist formula. A candidate g survives if for
    every window vertex y and probe z (with closed hammocks)

        chi(z, g y) = chi(z, y) - sum_i chi(E_i, y) * chi(z, E_i),

    the Euler-form shadow of the cone triangle defining the twist.
    """
    targets = _member_targets(model, spec)
    for e in spec.members:
        if not _closed(model, e):
            raise InsufficientWindow(f"window {model.window} does not close the hammock of member {e}")
        if targets[e] not in model:
            raise InsufficientWindow(f"image of member {e} leaves window {model.window}")
    first = spec.members[0]
    candidates = [
        rule for rule in _candidate_rules(model, first, targets[first])
        if all(rule(e) == targets[e] for e in spec.members)
    ]
    probes = [z for z in model.vertices if _closed(model, z)]
    ys = [y for y in model.vertices if _closed(model, y)]
    if not probes or not ys:
        raise InsufficientWindow("window too small to test Euler constraints")
    chi_members_y = {(e, y): euler_form(model, e, y) for e in spec.members for y in ys}
    chi_z_members = {(z, e): euler_form(model, z, e) for z in probes for e in spec.members}
    survivors = []
    for rule in candidates:
        ok, checked = True, 0
        for y in ys:
            gy = rule(y)
            if gy not in model:
                continue
            for z in probes:
                expected = euler_form(model, z, y) - sum(
                    chi_members_y[(e, y)] * chi_z_members[(z, e)] for e in spec.members
                )
                checked += 1
                if euler_form(model, z, gy) != expected:
                    ok = False
                    break
            if not ok:
                break
        if ok and checked:
            survivors.append(rule)
    name = label or f"T_{spec.name}"
    if not survivors:
        raise InvalidInput(f"no quiver automorphism is compatible with the twist along {spec.name}")
    if len(survivors) > 1:
        raise AmbiguousAction(
            f"{len(survivors)} candidate actions survive for {name}", candidates=survivors
        )
    aut = QuiverAutomorphism.from_rule(model, survivors[0], name)
    return (aut, survivors[0]) if return_rule else aut


_D4_TABLE = {
    "T_E": {0: 0, 1: 1, 2: 3, 3: 2},
    "T_E'": {0: 0, 1: 3, 2: 2, 3: 1},
}


def builtin_d4_actions(model: MeshModel) -> tuple[QuiverAutomorphism, QuiverAutomorphism]:
    """The two twist actions of the D4 example: each raises pos by one and permutes rows."""
    if model.name != "D4":
        raise UnsupportedDiagram(f"builtin D4 actions need a D4 model, got {model.name}")
    out = []
    for label, rows in _D4_TABLE.items():
        out.append(QuiverAutomorphism.from_rule(model, lambda v, rows=rows: Vertex(rows[v.row], v.pos + 1), label))
    return out[0], out[1]


def d4_sequences() -> tuple[SphericalSequenceSpec, SphericalSequenceSpec]:
    """E on row 1 and E' on row 2, both of length 3 with degrees (1, 1, 0)."""
    e = SphericalSequenceSpec(tuple(Vertex(1, -i) for i in range(3)), (1, 1, 0), "E")
    ep = SphericalSequenceSpec(tuple(Vertex(2, 1 - i) for i in range(3)), (1, 1, 0), "E'")
    return e, ep


def a3_sequences() -> tuple[SphericalSequenceSpec, SphericalSequenceSpec]:
    """E on the middle row (length 2) and E' on the outer rows (length 4)."""
    e = SphericalSequenceSpec((Vertex(0, 0), Vertex(0, -1)), (1, 0), "E")
    ep = SphericalSequenceSpec(
        (Vertex(1, 0), Vertex(1, -1), Vertex(-1, 0), Vertex(-1, -1)), (1, 0, 1, 0), "E'"
    )
    return e, ep


# -- classes of spherical sequences -------------------------------------------------


@dataclass(frozen=True, order=True)
class SphClass:
    """Spherical sequence up to shifts of members and rotation of indices.

    ``key`` lists each member's representative under the shift, normalized so
    that its time coordinate lies in one shift period.
    """

    key: tuple

    def __str__(self):
        return "{" + " ".join(str(v) for v in self.key) + "}"


def sph_class(members, model: MeshModel) -> SphClass:
    members = members.members if isinstance(members, SphericalSequenceSpec) else members
    members = list(members)
    if not members:
        raise InvalidInput("a class needs at least one member")
    return SphClass(tuple(sorted(model.canonical_shift_rep(v) for v in members)))


def act_on_class(aut: QuiverAutomorphism, cls: SphClass) -> SphClass:
    """Image of a class; each representative is first shifted into the map's domain."""
    model = aut.model
    lo, hi = model.window
    centre = model.time(Vertex(model.rows[0], (lo + hi) // 2))
    period = model.shift_rule.t_offset
    images = []
    for v in cls.key:
        base = (centre - model.time(v)) // period
        for step in sorted(range(-3, 4), key=abs):
            w = model.shift(v, base + step)
            if w in aut:
                images.append(aut(w))
                break
        else:
            raise InsufficientWindow(f"{aut.label} cannot be evaluated on any shift of {v}")
    return sph_class(images, model)


@dataclass
class OrbitGraph:
    nodes: list
    edges: list  # (source index, generator label, target index)
    permutations: dict  # generator label -> list of target indices, when the orbit is closed
    group_order: int | None
    depth: int

    @property
    def closed(self) -> bool:
        return bool(self.permutations)

    def to_text(self) -> str:
        lines = [f"orbit: {len(self.nodes)} classes (depth {self.depth})"]
        for i, n in enumerate(self.nodes):
            lines.append(f"  [{i}] {n}")
        for s, g, t in self.edges:
            lines.append(f"  {s} --{g}--> {t}")
        if self.permutations:
            for g, p in sorted(self.permutations.items()):
                lines.append(f"  {g} permutes as {p}")
            lines.append(f"  induced permutation group order: {self.group_order}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "nodes": [[[v.row, v.pos] for v in n.key] for n in self.nodes],
            "edges": [{"source": s, "generator": g, "target": t} for s, g, t in self.edges],
            "permutations": {g: p for g, p in self.permutations.items()},
            "group_order": self.group_order,
            "depth": self.depth,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _permutation_group_order(perms: list[tuple]) -> int:
    if not perms:
        return 1
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for p in perms:
                h = tuple(p[g[i]] for i in range(n))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def orbit_sph(gens: Mapping[str, QuiverAutomorphism], seeds, max_depth: int) -> OrbitGraph:
    """Breadth-first closure of ``seeds`` under the generators and their inverses."""
    if max_depth < 0:
        raise InvalidInput("max_depth must be >= 0")
    actions = []
    for name in sorted(gens):
        actions.append((name, gens[name]))
    for name in sorted(gens):
        actions.append((f"{name}^-1", invert(gens[name])))
    nodes: list[SphClass] = []
    index: dict[SphClass, int] = {}
    for s in seeds:
        if s not in index:
            index[s] = len(nodes)
            nodes.append(s)
    edges = []
    queue = deque((s, 0) for s in list(nodes))
    expanded = set()
    while queue:
        cls, d = queue.popleft()
        if d >= max_depth or cls in expanded:
            continue
        expanded.add(cls)
        for name, aut in actions:
            img = act_on_class(aut, cls)
            if img not in index:
                index[img] = len(nodes)
                nodes.append(img)
                queue.append((img, d + 1))
            else:
                queue.append((img, d + 1))
            edges.append((index[cls], name, index[img]))
    permutations, order = {}, None
    forward = {}
    for s, g, t in edges:
        if not g.endswith("^-1"):
            forward.setdefault(g, {})[s] = t
    if forward and all(len(forward.get(g, {})) == len(nodes) for g in gens):
        permutations = {g: [forward[g][i] for i in range(len(nodes))] for g in sorted(gens)}
        if all(sorted(p) == list(range(len(nodes))) for p in permutations.values()):
            order = _permutation_group_order([tuple(p) for p in permutations.values()])
        else:
            permutations = {}
    return OrbitGraph(nodes, edges, permutations, order, max_depth)


def detect_exceptional(model: MeshModel, E: SphericalSequenceSpec, Ep: SphericalSequenceSpec, which: str,
                       actions: tuple[QuiverAutomorphism, QuiverAutomorphism] | None = None) -> bool:
    """Case A: is T_{E'}^2 E ~ E?  Case B: is T_E E' ~ E'?"""
    which = which.upper()
    if which not in ("A", "B"):
        raise InvalidInput("which must be 'A' or 'B'")
    cE, cEp = sph_class(E, model), sph_class(Ep, model)
    if cE == cEp:
        raise InvalidInput("the two sequences must not be equivalent")
    if actions is None:
        actions = (derive_automorphism(model, E), derive_automorphism(model, Ep))
    t_e, t_ep = actions
    if which == "A":
        return act_on_class(t_ep, act_on_class(t_ep, cE)) == cE
    return act_on_class(t_e, cEp) == cEp
