"""Bounded ping-pong checks and the lower-bound recursion for u-statistics.

A ping-pong certificate here only covers a finite explored set and a finite
range of exponents, so it is reported as bounded evidence rather than a proof
of freeness.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Mapping

from .errors import HypothesisViolated

DEFAULT_OWNERS = ("X", "X'", "X''")


@dataclass
class Certificate:
    generators: list
    owners: dict
    exponent_bound: int
    depth: int
    checks: int
    unchecked: int
    set_sizes: dict
    status: str = "bounded evidence"

    @property
    def certified(self) -> bool:
        return True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = "certificate"
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        return (
            f"ping-pong certificate ({self.status}): {self.checks} containments checked, "
            f"{self.unchecked} images outside the explored set, exponents up to {self.exponent_bound}"
        )


@dataclass
class Refutation:
    generator: str
    exponent: int
    element: object
    source_set: str
    image: object
    image_set: str | None
    target_set: str

    @property
    def certified(self) -> bool:
        return False

    def to_dict(self) -> dict:
        d = {k: (v if isinstance(v, (int, str, type(None))) else repr(v)) for k, v in asdict(self).items()}
        d["kind"] = "refutation"
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        return (
            f"refutation: {self.generator}^{self.exponent} sends {self.element!r} in {self.source_set} "
            f"to {self.image!r} in {self.image_set or 'neither set'}, not into {self.target_set}"
        )


def _power(table: Mapping, inverse: Mapping, x, s: int):
    step = table if s > 0 else inverse
    for _ in range(abs(s)):
        if x not in step:
            return None
        x = step[x]
    return x


def pingpong_certify(
    action: Mapping[str, Mapping[Hashable, Hashable]],
    membership: Callable[[Hashable], str | None],
    exponent_bound: int,
    depth: int,
    owners: Mapping[str, str] | None = None,
) -> Certificate | Refutation:
    """Check that every generator power moves the other ping-pong sets into its own.

    ``action[g]`` maps explored elements to explored elements (partial at the
    exploration boundary); ``owners[g]`` is the set that g^s must land in.
    Images falling outside the explored set are counted as unchecked.
    """
    gens = sorted(action)
    if owners is None:
        owners = {g: DEFAULT_OWNERS[i] for i, g in enumerate(gens)}
    inverses = {g: {y: x for x, y in action[g].items()} for g in gens}
    elements = set()
    for g in gens:
        elements.update(action[g])
        elements.update(action[g].values())
    elements = sorted(elements, key=repr)
    labels = {x: membership(x) for x in elements}
    sizes: dict = {}
    for lab in labels.values():
        if lab is not None:
            sizes[lab] = sizes.get(lab, 0) + 1
    checks = unchecked = 0
    for g in gens:
        own = owners[g]
        for x in elements:
            lab = labels[x]
            if lab is None or lab == own:
                continue
            for s in [e for n in range(1, exponent_bound + 1) for e in (n, -n)]:
                y = _power(action[g], inverses[g], x, s)
                if y is None:
                    unchecked += 1
                    continue
                checks += 1
                got = labels[y] if y in labels else membership(y)
                if got != own:
                    return Refutation(g, s, x, lab, y, got, own)
    return Certificate(gens, dict(owners), exponent_bound, depth, checks, unchecked, sizes)


# -- standard test actions ---------------------------------------------------------


def reduced_words(rank: int, depth: int) -> list[tuple]:
    """All reduced words of length <= depth; letters are ``(generator, +1 or -1)``."""
    words, frontier = [()], [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for g in range(1, rank + 1):
                for e in (1, -1):
                    if w and w[0] == (g, -e):
                        continue
                    nxt.append(((g, e),) + w)
        words.extend(nxt)
        frontier = nxt
    return words


def free_group_cayley(rank: int = 2, depth: int = 6):
    """Left multiplication on reduced words; sets are words by first letter."""
    words = set(reduced_words(rank, depth))
    action = {}
    for g in range(1, rank + 1):
        table = {}
        for w in words:
            img = w[1:] if w and w[0] == (g, -1) else ((g, 1),) + w
            if img in words:
                table[w] = img
        action[f"s{g}"] = table

    def membership(w):
        return DEFAULT_OWNERS[w[0][0] - 1] if w else None

    return action, membership


def integer_line(radius: int = 10):
    """Z acting on itself by translations: a ping-pong attempt that must fail."""
    points = range(-radius, radius + 1)
    action = {
        "a": {n: n + 1 for n in points if n + 1 <= radius},
        "b": {n: n - 1 for n in points if n - 1 >= -radius},
    }

    def membership(n):
        return "X" if n > 0 else ("X'" if n < 0 else None)

    return action, membership


def synthetic_u_model(a: int = 2, ap: int = 2, base: tuple[int, int] = (2, 2), depth: int = 6):
    """Orbit of a base object fixed by T_E', with u-statistics obeying the lower bound.

    Elements are reduced F2 words with no trailing s2 letter (the base is
    fixed by the second generator). Reading syllables from the base outwards,
    T_E^s sends (u, v) = (u_E, u_E') to (u, a*u - v) and T_E'^s sends it to
    (ap*v - u, v): each twist keeps its own statistic and moves the other to
    the floor of the bound, one above it on the first step where the
    inequality is strict. Sets follow X = {v > a/2 * u}, X' = {u > ap/2 * v}.
    """

    def strip(w):
        while w and w[-1][0] == 2:
            w = w[:-1]
        return w

    words = {strip(w) for w in reduced_words(2, depth)}

    def state(w):
        u, v = base
        i, first = len(w), True
        while i > 0:
            g = w[i - 1][0]
            while i > 0 and w[i - 1][0] == g:
                i -= 1
            if g == 1:
                v = a * u - v + (1 if first else 0)
            else:
                u = ap * v - u
            first = False
        return u, v

    states = {w: state(w) for w in words}

    def membership(w):
        u, v = states[w] if w in states else state(w)
        if v > Fraction(a, 2) * u:
            return "X"
        if u > Fraction(ap, 2) * v:
            return "X'"
        return None

    action = {}
    for g in (1, 2):
        table = {}
        for w in words:
            img = strip(w[1:] if w and w[0] == (g, -1) else ((g, 1),) + w)
            if img in words:
                table[w] = img
        action[f"s{g}"] = table
    return action, membership, states


# -- lower bounds ---------------------------------------------------------------------


@dataclass(frozen=True)
class BoundState:
    """Floors for u_{E'}(T_E^s X): ``A[s-1]`` for s > 0 and ``B[s-1]`` for s < 0."""

    a_forward: int
    a_backward: int
    u_E: int
    u_Ep: int
    strict: bool = False
    A: tuple = field(default=())
    B: tuple = field(default=())

    @property
    def floor(self) -> int:
        return self.a_forward * self.u_E - self.u_Ep + (1 if self.strict else 0)


def lower_bound_propagate(state: BoundState, steps: int) -> BoundState:
    """Advance the floor sequences by ``steps``; ``strict`` is for X ~ E'."""
    a, ap = state.a_forward, state.a_backward
    if a * ap < 4:
        raise HypothesisViolated(f"a_(E,E') * a_(E',E) = {a * ap} < 4")
    if ap * state.u_Ep > (a * ap - 2) * state.u_E:
        raise HypothesisViolated(
            f"u_E'(X) = {state.u_Ep} exceeds ({a * ap - 2}/{ap}) * u_E(X) = "
            f"{Fraction((a * ap - 2) * state.u_E, ap)}"
        )
    if steps < 0:
        raise ValueError("steps must be >= 0")
    floor = max(state.floor, 0)
    A, B = list(state.A), list(state.B)
    for _ in range(steps):
        A.append(max(A[-1], floor) if A else floor)
        B.append(max(B[-1], floor) if B else floor)
    return BoundState(a, ap, state.u_E, state.u_Ep, state.strict, tuple(A), tuple(B))
