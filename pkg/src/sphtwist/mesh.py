"""Finite windows of the translation quivers ZA_n and ZD_4 and their mesh categories.

Vertices are ``(row, pos)`` pairs. For ZD_4 the rows are 0 (the branch point)
and 1, 2, 3; for ZA_n the rows are consecutive integers ``-(n//2) ..
n - 1 - n//2`` so that ZA_3 uses rows -1, 0, 1. Arrows follow one pattern for
both families: a row of parity class 0 at position ``s`` sends arrows to its
neighbours at position ``s``, a row of parity class 1 sends arrows to its
neighbours at position ``s + 1``.

Internally a vertex is located by its *time* ``t = 2*pos + parity(row)``;
every arrow raises ``t`` by one and the translation tau lowers it by two.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InsufficientWindow, UnsupportedDiagram
from .linalg import QuotientSpace, rank

_VERTEX_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


@dataclass(frozen=True, order=True)
class Vertex:
    row: int
    pos: int

    def __str__(self):
        return f"({self.row},{self.pos})"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        m = _VERTEX_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"not a vertex: {text!r} (expected '(row,pos)')")
        return cls(int(m.group(1)), int(m.group(2)))


def parse_vertices(text: str) -> list[Vertex]:
    """Parse a whitespace separated list such as ``"(1,0) (1,-1)"``."""
    found = _VERTEX_RE.findall(text)
    rest = _VERTEX_RE.sub("", text).replace(",", " ").strip()
    if rest:
        raise ValueError(f"unexpected text in vertex list: {rest!r}")
    return [Vertex(int(r), int(s)) for r, s in found]


class AffineRule:
    """A vertex map ``(row, t) -> (row_map[row], t + t_offset)``."""

    def __init__(self, row_map: Mapping[int, int], t_offset: int, parity: Mapping[int, int]):
        self.row_map = dict(row_map)
        self.t_offset = t_offset
        self._parity = dict(parity)
        for r, r2 in self.row_map.items():
            if (self._parity[r] + t_offset - self._parity[r2]) % 2:
                raise ValueError("affine rule does not respect row parities")

    def __call__(self, v: Vertex) -> Vertex:
        t = 2 * v.pos + self._parity[v.row] + self.t_offset
        r = self.row_map[v.row]
        return Vertex(r, (t - self._parity[r]) // 2)

    def power(self, n: int) -> "AffineRule":
        inv = {b: a for a, b in self.row_map.items()}
        step = self.row_map if n >= 0 else inv
        rows = {r: r for r in self.row_map}
        for _ in range(abs(n)):
            rows = {r: step[rows[r]] for r in rows}
        return AffineRule(rows, n * self.t_offset, self._parity)

    def inverse(self) -> "AffineRule":
        return self.power(-1)

    def then(self, other: "AffineRule") -> "AffineRule":
        """The rule ``other o self``."""
        rows = {r: other.row_map[self.row_map[r]] for r in self.row_map}
        return AffineRule(rows, self.t_offset + other.t_offset, self._parity)

    def __eq__(self, other):
        return (
            isinstance(other, AffineRule)
            and self.row_map == other.row_map
            and self.t_offset == other.t_offset
        )

    def __hash__(self):
        return hash((tuple(sorted(self.row_map.items())), self.t_offset))

    def __repr__(self):
        perm = {r: s for r, s in self.row_map.items() if r != s}
        return f"AffineRule(rows={perm or 'id'}, dt={self.t_offset})"


@dataclass(frozen=True)
class Mesh:
    start: Vertex
    middles: tuple
    end: Vertex


def _parse_diagram(diagram) -> tuple[str, int]:
    if isinstance(diagram, tuple):
        kind, n = diagram
    else:
        m = re.fullmatch(r"\s*([ADad])_?(\d+)\s*", str(diagram))
        if not m:
            raise UnsupportedDiagram(f"unsupported diagram {diagram!r}")
        kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "A" and n >= 1:
        return "A", n
    if kind == "D" and n == 4:
        return "D", 4
    raise UnsupportedDiagram(f"unsupported diagram {kind}{n}; only A_n (n >= 1) and D4")


class MeshModel:
    """A window ``lo <= pos <= hi`` of ZGamma together with its Serre and shift rules.

    The model is immutable once built; hammock tables are cached lazily.
    """

    def __init__(self, diagram, window: tuple[int, int]):
        kind, n = _parse_diagram(diagram)
        lo, hi = window
        if hi < lo:
            raise ValueError("window must have length >= 1")
        self.kind, self.rank = kind, n
        self.name = f"{kind}{n}"
        self.window = (lo, hi)
        if kind == "D":
            self.rows = (0, 1, 2, 3)
            self.parity = {0: 0, 1: 1, 2: 1, 3: 1}
            self.edges = ((0, 1), (0, 2), (0, 3))
            self.serre_rule = AffineRule({r: r for r in self.rows}, 4, self.parity)
            self.shift_rule = AffineRule({r: r for r in self.rows}, 6, self.parity)
            self.diagram_automorphisms = [
                {0: 0, 1: p[0], 2: p[1], 3: p[2]} for p in itertools.permutations((1, 2, 3))
            ]
        else:
            first = -(n // 2)
            self.rows = tuple(range(first, first + n))
            self.parity = {r: r % 2 for r in self.rows}
            self.edges = tuple((r, r + 1) for r in self.rows[:-1])
            flip = {r: self.rows[-1] + self.rows[0] - r for r in self.rows}
            self.serre_rule = AffineRule(flip, n - 1, self.parity)
            self.shift_rule = AffineRule(flip, n + 1, self.parity)
            self.diagram_automorphisms = [{r: r for r in self.rows}]
            if n > 1:
                self.diagram_automorphisms.append(flip)
        self.tau_rule = AffineRule({r: r for r in self.rows}, -2, self.parity)
        self.neighbours = {r: [] for r in self.rows}
        for a, b in self.edges:
            self.neighbours[a].append(b)
            self.neighbours[b].append(a)
        self.vertices = sorted(
            (Vertex(r, s) for s in range(lo, hi + 1) for r in self.rows),
            key=lambda v: (self.time(v), v.row),
        )
        self._vertex_set = frozenset(self.vertices)
        self.arrows = [(v, w) for v in self.vertices for w in self.successors(v) if w in self._vertex_set]
        self.meshes = [
            Mesh(self.tau(z), tuple(self.predecessors(z)), z)
            for z in self.vertices
            if self.tau(z) in self._vertex_set
        ]
        self._hammocks: dict[Vertex, dict[Vertex, int]] = {}
        self._quotients: dict[Vertex, dict[Vertex, int]] = {}

    # -- geometry -----------------------------------------------------------

    def time(self, v: Vertex) -> int:
        return 2 * v.pos + self.parity[v.row]

    def at_time(self, row: int, t: int) -> Vertex:
        if (t - self.parity[row]) % 2:
            raise ValueError(f"row {row} has no vertex at time {t}")
        return Vertex(row, (t - self.parity[row]) // 2)

    def __contains__(self, v) -> bool:
        return v in self._vertex_set

    def successors(self, v: Vertex) -> list[Vertex]:
        t = self.time(v) + 1
        return [self.at_time(r, t) for r in self.neighbours[v.row]]

    def predecessors(self, v: Vertex) -> list[Vertex]:
        t = self.time(v) - 1
        return [self.at_time(r, t) for r in self.neighbours[v.row]]

    def tau(self, v: Vertex, n: int = 1) -> Vertex:
        return Vertex(v.row, v.pos - n)

    def serre(self, v: Vertex, n: int = 1) -> Vertex:
        return self.serre_rule.power(n)(v)

    def shift(self, v: Vertex, n: int = 1) -> Vertex:
        return self.shift_rule.power(n)(v)

    def canonical_shift_rep(self, v: Vertex) -> Vertex:
        """The unique shift of ``v`` whose time lies in ``[0, P)``, P the time offset of [1]."""
        period = self.shift_rule.t_offset
        n = -(self.time(v) // period)
        return self.shift(v, n)

    def require(self, *vs: Vertex):
        for v in vs:
            if v not in self._vertex_set:
                raise InsufficientWindow(f"vertex {v} outside window {self.window} of {self.name}")

    def __repr__(self):
        return f"MeshModel({self.name}, window={self.window})"

    # -- hammocks -----------------------------------------------------------

    def _hammock(self, x: Vertex) -> dict[Vertex, int]:
        h = self._hammocks.get(x)
        if h is not None:
            return h
        tx = self.time(x)
        h = {x: 1}
        for z in self.vertices:
            if self.time(z) <= tx:
                continue
            total = sum(h.get(w, 0) for w in self.predecessors(z)) - h.get(self.tau(z), 0)
            if total > 0:
                h[z] = total
        self._hammocks[x] = h
        return h

    def _path_quotient_dims(self, x: Vertex) -> dict[Vertex, int]:
        dims = self._quotients.get(x)
        if dims is not None:
            return dims
        tx = self.time(x)
        dims = {x: 1}
        arrow_maps: dict[tuple[Vertex, Vertex], list] = {}
        for z in self.vertices:
            if self.time(z) <= tx:
                continue
            preds = [w for w in self.predecessors(z) if dims.get(w, 0) > 0]
            offsets, n = {}, 0
            for w in preds:
                offsets[w] = n
                n += dims[w]
            if n == 0:
                continue
            image_rows = []
            tz = self.tau(z)
            for j in range(dims.get(tz, 0)):
                vec = [0] * n
                for w in preds:
                    a = arrow_maps.get((tz, w))
                    if a is None:
                        continue
                    for i in range(dims[w]):
                        vec[offsets[w] + i] = a[i][j]
                image_rows.append(vec)
            quotient = QuotientSpace(image_rows, n)
            if quotient.dim == 0:
                continue
            proj = quotient.projection()
            dims[z] = quotient.dim
            for w in preds:
                arrow_maps[(w, z)] = [
                    [proj[i][offsets[w] + c] for c in range(dims[w])] for i in range(quotient.dim)
                ]
        self._quotients[x] = dims
        return dims


def build_mesh(diagram, window: tuple[int, int]) -> MeshModel:
    """Materialize the window ``[lo, hi]`` of positions of ZGamma."""
    return MeshModel(diagram, window)


def hom_dim(model: MeshModel, x: Vertex, y: Vertex) -> int:
    """dim Hom(x, y) in the mesh category, by knitting forward from ``x``.

    The counting function starts at 1 on ``x`` and at each later vertex takes
    the sum over its mesh middles minus the value at its tau-translate,
    clamped at 0 once the hammock closes.
    """
    model.require(x, y)
    return model._hammock(x).get(y, 0)


def hom_dim_oracle(model: MeshModel, x: Vertex, y: Vertex) -> int:
    """dim Hom(x, y) by exact linear algebra on path spaces.

    The space of paths ``x -> z`` modulo the mesh ideal is built one vertex at
    a time: it is the cokernel of the map from ``Q(x, tau z)`` into the direct
    sum of ``Q(x, w)`` over the arrows ``w -> z``, which is exactly the span of
    paths modulo ``path * mesh * path`` products. No hammock shape is assumed.
    """
    model.require(x, y)
    return model._path_quotient_dims(x).get(y, 0)


def path_space_dim(model: MeshModel, x: Vertex, y: Vertex, max_paths: int = 20000) -> int:
    """Literal definition: enumerate every path x -> y and every relation product.

    Exponential in the distance between ``x`` and ``y``; intended for short
    distances in tests.
    """
    model.require(x, y)
    tx, ty = model.time(x), model.time(y)

    def paths(a: Vertex, b: Vertex) -> list[tuple]:
        out, stack = [], [(a,)]
        tb = model.time(b)
        while stack:
            p = stack.pop()
            last = p[-1]
            if last == b:
                out.append(p)
                continue
            if model.time(last) >= tb:
                continue
            for w in model.successors(last):
                if w in model:
                    stack.append(p + (w,))
            if len(out) + len(stack) > max_paths:
                raise ValueError("too many paths for the literal oracle")
        return out

    basis = sorted(paths(x, y))
    index = {p: i for i, p in enumerate(basis)}
    rows = []
    for mesh in model.meshes:
        if model.time(mesh.start) < tx or model.time(mesh.end) > ty:
            continue
        heads, tails = paths(x, mesh.start), paths(mesh.end, y)
        for p in heads:
            for q in tails:
                vec = [0] * len(basis)
                for w in mesh.middles:
                    vec[index[p + (w,) + q]] += 1
                rows.append(vec)
    return len(basis) - rank(rows, len(basis))


def graded_hom(model: MeshModel, x: Vertex, y: Vertex) -> dict[int, int]:
    """``{l: dim Hom(x, y[l])}`` over every shift with a nonzero value.

    Requires the whole hammock of ``x`` (from ``x`` to its Serre image) to lie
    in the window so that no shift of ``y`` can be missed.
    """
    sx = model.serre(x)
    if x not in model or sx not in model:
        raise InsufficientWindow(f"window {model.window} does not close the hammock of {x}")
    tx, tsx = model.time(x), model.time(sx)
    period = model.shift_rule.t_offset
    l = -((model.time(y) - tx) // period)
    out = {}
    while True:
        yl = model.shift(y, l)
        t = model.time(yl)
        if t > tsx:
            break
        if t >= tx:
            d = hom_dim(model, x, yl)
            if d:
                out[l] = d
        l += 1
    return out


def euler_form(model: MeshModel, x: Vertex, y: Vertex) -> int:
    """sum_l (-1)^l dim Hom(x, y[l])."""
    return sum(d if l % 2 == 0 else -d for l, d in graded_hom(model, x, y).items())


# -- spherical sequences --------------------------------------------------------


@dataclass(frozen=True)
class SphericalSequenceSpec:
    """Members ``E_0 .. E_{k-1}`` with degrees ``m_i``; sphericity is their sum.

    Members are vertices when a mesh model is attached, otherwise arbitrary
    hashable labels.
    """

    members: tuple
    degrees: tuple
    name: str = "E"
    sphericity: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "degrees", tuple(int(m) for m in self.degrees))
        if not self.members:
            raise ValueError("a spherical sequence needs at least one member")
        if len(self.members) != len(self.degrees):
            raise ValueError("one degree m_i is needed per member")
        total = sum(self.degrees)
        if self.sphericity is None:
            object.__setattr__(self, "sphericity", total)
        elif self.sphericity != total:
            raise ValueError(f"degrees sum to {total}, not to the sphericity {self.sphericity}")

    @property
    def length(self) -> int:
        return len(self.members)

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def m(self) -> int:
        return self.sphericity


@dataclass
class SphericalReport:
    spec: SphericalSequenceSpec
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        head = (
            f"{self.spec.name}: length {self.spec.length}, sphericity {self.spec.sphericity}: "
            + ("valid" if self.valid else "INVALID")
        )
        return [head] + [f"  - {v}" for v in self.violations]


def check_spherical(model: MeshModel, spec: SphericalSequenceSpec) -> SphericalReport:
    """Check the Serre-orbit condition and the Hom pattern of a spherical sequence."""
    report = SphericalReport(spec)
    k, members, m = spec.length, spec.members, spec.degrees
    for i, e in enumerate(members):
        target = model.shift(model.serre(e), -1)
        expected = model.shift(members[(i + 1) % k], m[i] - 1)
        if target != expected:
            report.violations.append(
                f"orbit condition fails at i={i}: S(E_{i})[-1] = {target}, "
                f"but E_{(i + 1) % k}[{m[i] - 1}] = {expected}"
            )
    for i, j in itertools.product(range(k), repeat=2):
        # Hom(E_i[l], E_j) = Hom(E_i, E_j[-l])
        got = {-l: d for l, d in graded_hom(model, members[i], members[j]).items()}
        want: dict[int, int] = {}
        if j == i:
            want[0] = want.get(0, 0) + 1
        if j == (i + 1) % k:
            want[-m[i]] = want.get(-m[i], 0) + 1
        if got != want:
            report.violations.append(
                f"Hom(E_{i}[l], E_{j}) has dimensions {dict(sorted(got.items()))}, "
                f"expected {dict(sorted(want.items()))}"
            )
    if k == 2 and spec.sphericity == 0 and members[0] == members[1]:
        report.violations.append("length 2 and sphericity 0 require E_0 != E_1")
    return report


def u_stat(model: MeshModel, F, G: Iterable[Vertex]) -> int:
    """u_F(G) = sum over members of F and all shifts l of dim Hom(F_i, G[l]).

    ``F`` is a spec or a list of vertices; ``G`` is a formal sum of vertices
    (repeats count with multiplicity).
    """
    members = F.members if isinstance(F, SphericalSequenceSpec) else tuple(F)
    return sum(sum(graded_hom(model, f, g).values()) for f in members for g in G)


def member_a_values(model: MeshModel, F, G) -> list[int]:
    """Per-member totals ``u_{F_i}(G)``; all equal for spherical F and G."""
    f_members = F.members if isinstance(F, SphericalSequenceSpec) else tuple(F)
    g_members = G.members if isinstance(G, SphericalSequenceSpec) else tuple(G)
    return [u_stat(model, [f], g_members) for f in f_members]


@dataclass
class DimensionStatistics:
    u_values: dict = field(default_factory=dict)
    a_values: dict = field(default_factory=dict)
    lengths: dict = field(default_factory=dict)

    def balance_violations(self) -> list[str]:
        """Pairs where k_F * a(F, G) differs from k_G * a(G, F)."""
        bad = []
        for (f, g), a in self.a_values.items():
            back = self.a_values.get((g, f))
            if back is None:
                continue
            if self.lengths[f] * a != self.lengths[g] * back:
                bad.append(f"{self.lengths[f]}*a({f},{g}) = {self.lengths[f] * a} "
                           f"!= {self.lengths[g]}*a({g},{f}) = {self.lengths[g] * back}")
        return bad


def dimension_statistics(
    model: MeshModel,
    sequences: Mapping[str, SphericalSequenceSpec | Sequence[Vertex]],
    objects: Mapping[str, Sequence[Vertex]] | None = None,
) -> DimensionStatistics:
    """Tabulate a_{F,G} for every ordered pair of sequences and u_F(X) for the given objects."""
    members = {
        name: tuple(s.members if isinstance(s, SphericalSequenceSpec) else s)
        for name, s in sequences.items()
    }
    stats = DimensionStatistics(lengths={n: len(v) for n, v in members.items()})
    for f, g in itertools.permutations(members, 2):
        values = member_a_values(model, members[f], members[g])
        if len(set(values)) != 1:
            raise ValueError(f"a({f},{g}) depends on the member: {values}")
        stats.a_values[(f, g)] = values[0]
    for f in members:
        for name, obj in (objects or {}).items():
            stats.u_values[(f, name)] = u_stat(model, members[f], obj)
    return stats
