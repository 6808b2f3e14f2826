"""The selfinjective algebras Lambda_k given by a quiver with relations.

The quiver has vertices ``bar0 .. bar{k-1}`` and ``0 .. 3k-1``, arrows
``a{j}: bar(j mod k) -> j`` and ``b{j}: j -> bar((j+1) mod k)``. Paths are
written in traversal order, so ``("b0", "a4")`` is b0 followed by a4. The
relations (for every j, indices mod 3k) are

* ``b{j} a{j+k+1} = 0`` and ``b{j} a{j+2k+1} = 0``,
* ``a{j} b{j} = a{j+k} b{j+k} = a{j+2k} b{j+2k}``.

All relations are homogeneous of degree two, so the ideal is built degree by
degree and the basis is read off from exact row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SelfinjectivityViolation, ValidationFailure
from .linalg import QuotientSpace, rank
from .mesh import SphericalSequenceSpec


def bar(i: int) -> str:
    return f"bar{i}"


@dataclass(frozen=True, order=True)
class Path:
    source: str
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return f"e_{self.source}" if not self.arrows else "*".join(self.arrows)


class LambdaAlgebra:
    def __init__(self, k: int, max_degree: int = 32):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        n = 3 * k
        self.vertices = [bar(i) for i in range(k)] + [str(j) for j in range(n)]
        self.arrows: dict[str, tuple[str, str]] = {}
        for j in range(n):
            self.arrows[f"a{j}"] = (bar(j % k), str(j))
        for j in range(n):
            self.arrows[f"b{j}"] = (str(j), bar((j + 1) % k))
        self.out_arrows = {v: [a for a, (s, _) in self.arrows.items() if s == v] for v in self.vertices}
        self.relations = self._relations()
        self._build(max_degree)

    # -- construction ---------------------------------------------------------

    def _relations(self) -> list[dict]:
        k, n = self.k, 3 * self.k
        rels = []
        for j in range(n):
            for off in (k + 1, 2 * k + 1):
                rels.append({(f"b{j}", f"a{(j + off) % n}"): 1})
        for j in range(k):
            for off in (k, 2 * k):
                rels.append({(f"a{j}", f"b{j}"): 1, (f"a{j + off}", f"b{j + off}"): -1})
        return rels

    def target(self, p: Path) -> str:
        return self.arrows[p.arrows[-1]][1] if p.arrows else p.source

    def _paths_of_length(self, length: int) -> list[Path]:
        paths = [Path(v) for v in self.vertices]
        for _ in range(length):
            paths = [Path(p.source, p.arrows + (a,)) for p in paths for a in self.out_arrows[self.target(p)]]
        return sorted(paths)

    def _build(self, max_degree: int):
        self.degrees: list[dict] = []  # per degree: paths, index, quotient, basis
        ideal_prev: list[dict] = []
        degree = 0
        while True:
            if degree > max_degree:
                raise RuntimeError(f"basis did not terminate by degree {max_degree}")
            paths = self._paths_of_length(degree)
            index = {p.arrows if p.arrows else ("@" + p.source,): i for i, p in enumerate(paths)}
            if degree < 2:
                ideal = []
            elif degree == 2:
                ideal = [dict(r) for r in self.relations]
            else:
                ideal = []
                for r in ideal_prev:
                    for a in self.arrows:
                        right = {w + (a,): c for w, c in r.items() if self.arrows[a][0] == self._end(w)}
                        if right:
                            ideal.append(right)
                        left = {(a,) + w: c for w, c in r.items() if self.arrows[a][1] == self._start(w)}
                        if left:
                            ideal.append(left)
            rows = []
            for r in ideal:
                vec = [0] * len(paths)
                for w, c in r.items():
                    vec[index[w]] += c
                rows.append(vec)
            quotient = QuotientSpace(rows, len(paths))
            self.degrees.append({"paths": paths, "index": index, "quotient": quotient})
            if quotient.dim == 0:
                break
            # keep only an independent spanning set of the ideal for the next degree
            ideal_prev = self._independent(ideal, rows, len(paths))
            degree += 1
        self.top_degree = degree - 1
        self.basis: list[Path] = []
        self._basis_pos: dict[tuple[int, int], int] = {}
        for d, data in enumerate(self.degrees):
            for c in data["quotient"].free:
                self._basis_pos[(d, c)] = len(self.basis)
                self.basis.append(data["paths"][c])

    def _start(self, word) -> str:
        return self.arrows[word[0]][0]

    def _end(self, word) -> str:
        return self.arrows[word[-1]][1]

    @staticmethod
    def _independent(ideal, rows, ncols):
        chosen, kept = [], []
        for r, vec in zip(ideal, rows):
            if rank(chosen + [vec], ncols) > len(chosen):
                chosen.append(vec)
                kept.append(r)
        return kept

    # -- arithmetic ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce_path(self, p: Path) -> dict[int, Fraction]:
        """Coordinates of a path in the basis (empty dict for zero)."""
        d = len(p)
        if d >= len(self.degrees):
            return {}
        data = self.degrees[d]
        key = p.arrows if p.arrows else ("@" + p.source,)
        col = data["index"][key]
        vec = [0] * len(data["paths"])
        vec[col] = 1
        coords = data["quotient"].coords(vec)
        return {self._basis_pos[(d, c)]: x for c, x in zip(data["quotient"].free, coords) if x}

    def concatenate(self, p: Path, q: Path) -> Path | None:
        if self.target(p) != q.source:
            return None
        return Path(p.source, p.arrows + q.arrows)

    def multiply(self, x: dict, y: dict) -> dict[int, Fraction]:
        """Product of basis combinations: ``x`` traversed first, then ``y``."""
        out: dict[int, Fraction] = {}
        for i, c in x.items():
            for j, d in y.items():
                pq = self.concatenate(self.basis[i], self.basis[j])
                if pq is None:
                    continue
                for b, e in self.reduce_path(pq).items():
                    out[b] = out.get(b, 0) + c * d * e
        return {b: v for b, v in out.items() if v}

    def element(self, *words) -> dict[int, Fraction]:
        """Basis coordinates of a path given by arrow names, or of ``e_x`` for a vertex name."""
        if len(words) == 1 and words[0] in self.vertices:
            return self.reduce_path(Path(words[0]))
        return self.reduce_path(Path(self.arrows[words[0]][0], tuple(words)))

    def evaluate(self, combination: dict) -> dict[int, Fraction]:
        """Image of a linear combination ``{arrow tuple: coefficient}`` of paths."""
        out: dict[int, Fraction] = {}
        for word, c in combination.items():
            for b, e in self.element(*word).items():
                out[b] = out.get(b, 0) + c * e
        return {b: v for b, v in out.items() if v}

    def basis_paths(self, x: str, y: str) -> list[Path]:
        return [p for p in self.basis if p.source == x and self.target(p) == y]

    def cartan(self) -> dict[tuple[str, str], int]:
        return {(x, y): len(self.basis_paths(x, y)) for x in self.vertices for y in self.vertices}

    def degree_dims(self) -> list[int]:
        return [d["quotient"].dim for d in self.degrees]

    def relation_residues(self) -> list[dict]:
        """Basis images of every defining relation (all should be empty)."""
        return [self.evaluate(r) for r in self.relations]

    def socle(self, y: str) -> list[tuple[str, int]]:
        """``(source vertex, dimension)`` of the socle of P_y, the span of paths ending at y.

        An element lies in the socle when prepending any arrow kills it. The
        grading lets us test one (source, degree) block at a time.
        """
        found = []
        for d, data in enumerate(self.degrees):
            for x in self.vertices:
                block = [
                    self._basis_pos[(d, c)] for c in data["quotient"].free
                    if data["paths"][c].source == x and self.target(data["paths"][c]) == y
                ]
                if not block:
                    continue
                incoming = [a for a, (_, t) in self.arrows.items() if t == x]
                images = []
                for a in incoming:
                    arrow_el = self.element(a)
                    images.append([self.multiply(arrow_el, {b: 1}) for b in block])
                # matrix: rows indexed by (arrow, basis element of the image), columns by block
                targets = sorted({t for col in images for img in col for t in img})
                mat = []
                for ai in range(len(incoming)):
                    for t in targets:
                        mat.append([images[ai][c].get(t, 0) for c in range(len(block))])
                kernel = len(block) - rank(mat, len(block)) if mat else len(block)
                if kernel:
                    found.append((x, kernel))
        return found

    def __repr__(self):
        return f"LambdaAlgebra(k={self.k}, dim={self.dim})"


def build_lambda(k: int, max_degree: int = 32) -> LambdaAlgebra:
    return LambdaAlgebra(k, max_degree)


def hom_dim_proj(model: LambdaAlgebra, x: str, y: str) -> int:
    """dim Hom(P_x, P_y), counted as basis paths from x to y."""
    if x not in model.vertices or y not in model.vertices:
        raise ValueError(f"unknown vertex {x if x not in model.vertices else y}")
    return len(model.basis_paths(x, y))


@dataclass
class NakayamaAuto:
    vertex_map: dict
    arrow_map: dict
    order: int
    socle_sources: dict = field(default_factory=dict)

    def __call__(self, x: str) -> str:
        return self.vertex_map[x]


def _shift_label(model: LambdaAlgebra, v: str, step: int) -> str:
    if v.startswith("bar"):
        return bar((int(v[3:]) + step) % model.k)
    return str((int(v) + step) % (3 * model.k))


def nakayama(model: LambdaAlgebra) -> NakayamaAuto:
    """The automorphism lowering every index by one, checked against the socles.

    With P_y spanned by paths ending at y, the socle of P_y must be the simple
    at nu(y).
    """
    n = 3 * model.k
    vmap = {v: _shift_label(model, v, -1) for v in model.vertices}
    amap = {a: f"{a[0]}{(int(a[1:]) - 1) % n}" for a in model.arrows}
    for a, (s, t) in model.arrows.items():
        if model.arrows[amap[a]] != (vmap[s], vmap[t]):
            raise SelfinjectivityViolation(f"index shift does not respect arrow {a}")
    for r in model.relations:
        image = {tuple(amap[a] for a in w): c for w, c in r.items()}
        if model.evaluate(image):
            raise SelfinjectivityViolation("index shift does not preserve the relations")
    order, cur = 1, dict(vmap)
    acur = dict(amap)
    while any(cur[v] != v for v in model.vertices) or any(acur[a] != a for a in model.arrows):
        cur = {v: vmap[cur[v]] for v in model.vertices}
        acur = {a: amap[acur[a]] for a in model.arrows}
        order += 1
    sources = {}
    for y in model.vertices:
        soc = model.socle(y)
        if len(soc) != 1 or soc[0][1] != 1:
            raise SelfinjectivityViolation(f"socle of P_{y} is not simple: {soc}")
        sources[y] = soc[0][0]
        if sources[y] != vmap[y]:
            raise SelfinjectivityViolation(f"socle of P_{y} sits at {sources[y]}, expected {vmap[y]}")
    return NakayamaAuto(vmap, amap, order, sources)


@dataclass
class SphericalData:
    E: SphericalSequenceSpec
    Ep: SphericalSequenceSpec
    a_forward: int
    a_backward: int
    violations: list

    @property
    def valid(self) -> bool:
        return not self.violations


def _check_zero_spherical(model: LambdaAlgebra, spec: SphericalSequenceSpec) -> list[str]:
    bad = []
    k = spec.length
    for i, x in enumerate(spec.members):
        for j, y in enumerate(spec.members):
            want = (1 if i == j else 0) + (1 if j == (i + 1) % k else 0)
            got = hom_dim_proj(model, x, y)
            if got != want:
                bad.append(f"{spec.name}: dim Hom(P_{x}, P_{y}) = {got}, expected {want}")
    if k == 1:
        x = spec.members[0]
        loops = [p for p in model.basis_paths(x, x) if p.arrows]
        for p in loops:
            el = model.reduce_path(p)
            if model.multiply(el, el):
                bad.append(f"{spec.name}: the non-identity endomorphism {p} does not square to zero")
    return bad


def spherical_data(model: LambdaAlgebra) -> SphericalData:
    """E = (P_bar0 .. P_bar{k-1}) and E' = (P_0 .. P_{3k-1}), both 0-spherical."""
    k = model.k
    E = SphericalSequenceSpec(tuple(bar(i) for i in range(k)), (0,) * k, "E")
    Ep = SphericalSequenceSpec(tuple(str(j) for j in range(3 * k)), (0,) * (3 * k), "E'")
    violations = _check_zero_spherical(model, E) + _check_zero_spherical(model, Ep)
    forward = {sum(hom_dim_proj(model, x, y) for y in Ep.members) for x in E.members}
    backward = {sum(hom_dim_proj(model, y, x) for x in E.members) for y in Ep.members}
    if len(forward) != 1 or len(backward) != 1:
        violations.append(f"member totals are not constant: {sorted(forward)}, {sorted(backward)}")
    a, ap = max(forward), max(backward)
    if E.length * a != Ep.length * ap:
        violations.append(f"k*a = {E.length * a} differs from k'*a' = {Ep.length * ap}")
    data = SphericalData(E, Ep, a, ap, violations)
    if violations:
        raise ValidationFailure("spherical data of Lambda_k failed validation", violations)
    return data
