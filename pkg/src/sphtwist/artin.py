"""Words, normal forms and equality for the rank-two groups generated by pairs of twists.

Every group handled here is a quotient of the free group on ``s1, s2`` (``s3``
only for the free group of rank three). Braid groups of types A2, B2, G2 are
solved through their central quotients, which are free products:

* A2: ``Z/2 * Z/3`` with ``a = s1 s2 s1`` and ``b = s1 s2``;
* B2: ``Z * Z/2`` and G2: ``Z * Z/3``, with ``x = s1`` and ``y = s1 s2``.

A word is reduced in the free product, the result is lifted back to a fixed
braid word, and the power of the central element Delta is read off from
exponent sums.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass, field

from .errors import InvalidInput, WordSyntaxError

# -- words -------------------------------------------------------------------


def _fuse(letters) -> tuple:
    out: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class GroupWord:
    """A word in ``s1, s2, s3``; adjacent letters with equal generator are fused."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _fuse(self.letters))

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> "GroupWord":
        return cls(((i, exp),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.letters * abs(n))

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def exponent_sum(self, gen: int | None = None) -> int:
        return sum(e for g, e in self.letters if gen is None or g == gen)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def unit_letters(self):
        """Yield ``(gen, +1 or -1)`` one unit at a time."""
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"s{g}" if e == 1 else f"s{g}^{e}" for g, e in self.letters)


IDENTITY = GroupWord()


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg):
        raise WordSyntaxError(msg, self.i)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i] in " \t*.":
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def exponent(self) -> int:
        if self.peek() != "^":
            return 1
        self.i += 1
        self.skip()
        m = re.compile(r"[-+]?\d+").match(self.text, self.i)
        if not m:
            self.error("expected an integer exponent")
        self.i = m.end()
        return int(m.group())

    def sequence(self, closing: str) -> GroupWord:
        word = IDENTITY
        while True:
            c = self.peek()
            if c == closing:
                return word
            if c == "(":
                self.i += 1
                inner = self.sequence(")")
                if self.peek() != ")":
                    self.error("unbalanced parenthesis")
                self.i += 1
                word = word * inner ** self.exponent()
            elif c == "s":
                self.i += 1
                if self.i >= len(self.text) or self.text[self.i] not in "123":
                    self.error("expected generator index 1, 2 or 3 after 's'")
                gen = int(self.text[self.i])
                self.i += 1
                word = word * GroupWord.gen(gen, self.exponent())
            elif c == "":
                self.error("unexpected end of word")
            else:
                self.error(f"unexpected character {c!r}")


def parse_word(text: str) -> GroupWord:
    """Parse words such as ``"s1 s2^-1 (s1 s2)^3"``; ``""``, ``"e"`` and ``"1"`` denote the identity."""
    if text.strip() in ("", "e", "1"):
        return IDENTITY
    parser = _WordParser(text)
    return parser.sequence("")


# -- group specs ---------------------------------------------------------------


class GroupKind(enum.Enum):
    FREE = "free"
    BRAID_A2 = "a2"
    BRAID_B2 = "b2"
    BRAID_G2 = "g2"
    BRAID_MOD = "mod"
    S3Z = "s3z"
    ZXZ_MOD = "zxz"
    ABELIAN = "abelian"


_BRAID_KINDS = (GroupKind.BRAID_A2, GroupKind.BRAID_B2, GroupKind.BRAID_G2)


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    rank: int = 2
    base: GroupKind | None = None
    t: int = 0

    def __post_init__(self):
        if self.kind == GroupKind.FREE and self.rank not in (2, 3):
            raise ValueError("free groups of rank 2 or 3 only")
        if self.kind != GroupKind.FREE and self.rank != 2:
            raise ValueError("only free groups may have rank 3")
        if self.kind == GroupKind.BRAID_MOD and self.base not in _BRAID_KINDS:
            raise ValueError("a center quotient needs a braid type A2, B2 or G2")
        if self.t < 0:
            raise ValueError("t must be >= 0")

    @classmethod
    def free(cls, rank=2):
        return cls(GroupKind.FREE, rank=rank)

    @classmethod
    def braid(cls, diagram: str):
        return cls(_DIAGRAM_KIND[diagram.upper()])

    @classmethod
    def braid_mod(cls, diagram: str, t: int):
        return cls(GroupKind.BRAID_MOD, base=_DIAGRAM_KIND[diagram.upper()], t=t)

    @classmethod
    def s3z(cls):
        return cls(GroupKind.S3Z)

    @classmethod
    def zxz_mod(cls, t: int):
        return cls(GroupKind.ZXZ_MOD, t=t)

    @classmethod
    def abelian(cls):
        return cls(GroupKind.ABELIAN)

    @classmethod
    def parse(cls, name: str) -> "GroupSpec":
        """CLI names: free2 free3 a2 b2 g2 a2-mod:<t> b2-mod:<t> g2-mod:<t> s3z zxz:<t> abelian."""
        s = name.strip().lower()
        simple = {
            "free2": cls.free(2),
            "free3": cls.free(3),
            "a2": cls.braid("A2"),
            "b2": cls.braid("B2"),
            "g2": cls.braid("G2"),
            "s3z": cls.s3z(),
            "abelian": cls.abelian(),
        }
        if s in simple:
            return simple[s]
        m = re.fullmatch(r"([abg]2)-mod:(\d+)", s)
        if m:
            return cls.braid_mod(m.group(1), int(m.group(2)))
        m = re.fullmatch(r"zxz:(\d+)", s)
        if m:
            return cls.zxz_mod(int(m.group(1)))
        raise ValueError(f"unknown group {name!r}")

    @property
    def braid_type(self) -> GroupKind | None:
        if self.kind in _BRAID_KINDS:
            return self.kind
        if self.kind == GroupKind.BRAID_MOD:
            return self.base
        return None

    @property
    def generator_count(self) -> int:
        return self.rank

    def name(self) -> str:
        if self.kind == GroupKind.FREE:
            return f"free{self.rank}"
        if self.kind == GroupKind.BRAID_MOD:
            return f"{self.base.value}-mod:{self.t}"
        if self.kind == GroupKind.ZXZ_MOD:
            return f"zxz:{self.t}"
        return self.kind.value

    def __str__(self):
        return self.name()


_DIAGRAM_KIND = {"A2": GroupKind.BRAID_A2, "B2": GroupKind.BRAID_B2, "G2": GroupKind.BRAID_G2}

# Delta generates the center of each braid group: (s1 s2)^3, (s1 s2)^2, (s1 s2)^3.
_DELTA_POWER = {GroupKind.BRAID_A2: 3, GroupKind.BRAID_B2: 2, GroupKind.BRAID_G2: 3}


def center_generator(spec: GroupSpec) -> GroupWord:
    """The word Delta generating the center of a braid group (or of S3Z)."""
    if spec.kind == GroupKind.S3Z:
        return GroupWord.gen(1, 2)
    kind = spec.braid_type
    if kind is None:
        raise ValueError(f"{spec} has no distinguished central generator")
    return parse_word("s1 s2") ** _DELTA_POWER[kind]


def defining_relators(spec: GroupSpec) -> list[GroupWord]:
    """Relators r (words equal to the identity) of the presentation."""
    w = parse_word
    braid = {
        GroupKind.BRAID_A2: w("s1 s2 s1 s2^-1 s1^-1 s2^-1"),
        GroupKind.BRAID_B2: w("(s1 s2)^2 (s2 s1)^-2"),
        GroupKind.BRAID_G2: w("(s1 s2)^3 (s2 s1)^-3"),
    }
    kind = spec.kind
    if kind == GroupKind.FREE:
        return []
    if kind in _BRAID_KINDS:
        return [braid[kind]]
    if kind == GroupKind.BRAID_MOD:
        rel = [braid[spec.base]]
        if spec.t:
            rel.append(center_generator(spec) ** spec.t)
        return rel
    if kind == GroupKind.S3Z:
        return [braid[GroupKind.BRAID_A2], w("s1^2 s2^-2")]
    commutator = w("s1 s2 s1^-1 s2^-1")
    if kind == GroupKind.ZXZ_MOD and spec.t:
        return [commutator, GroupWord(((1, 2 * spec.t), (2, -2 * spec.t)))]
    return [commutator]


# -- free products -------------------------------------------------------------


def _push(syllables: list, label: str, exp: int, orders: dict) -> None:
    order = orders[label]
    if syllables and syllables[-1][0] == label:
        exp += syllables.pop()[1]
    if order:
        exp %= order
    if exp:
        syllables.append((label, exp))


# Images of s_i^{+-1} in the central quotient, as syllable lists.
_A2_IMAGES = {
    (1, 1): [("b", 2), ("a", 1)],
    (1, -1): [("a", 1), ("b", 1)],
    (2, 1): [("a", 1), ("b", 2)],
    (2, -1): [("b", 1), ("a", 1)],
}
_A2_ORDERS = {"a": 2, "b": 3}
_A2_LIFTS = {("a", 1): "s1 s2 s1", ("b", 1): "s1 s2", ("b", 2): "s1 s2 s1 s2"}


def _xy_images(order: int):
    return {
        (1, 1): [("x", 1)],
        (1, -1): [("x", -1)],
        (2, 1): [("x", -1), ("y", 1)],
        (2, -1): [("y", order - 1), ("x", 1)],
    }


@dataclass(frozen=True)
class NormalForm:
    """Canonical representative of a group element.

    ``syllables`` is a free-product word for braid types, a reduced word for
    free groups, a coset label for S3Z and an ``(a, b)`` pair for abelian kinds.
    """

    kind: str
    center_exponent: int
    syllables: tuple = field(default=())

    def __str__(self):
        body = " ".join(
            f"{s[0]}" if len(s) == 2 and s[1] == 1 else f"{s[0]}^{s[1]}" for s in self.syllables
        ) if self.kind not in ("s3z", "abelian") else str(self.syllables)
        return f"Delta^{self.center_exponent} * [{body or 'e'}]"


def _check_generators(word: GroupWord, spec: GroupSpec):
    bad = [g for g in word.generators() if g > spec.generator_count or g < 1]
    if bad:
        raise InvalidInput(f"generator s{bad[0]} is not available in {spec}")


def _braid_normal_form(word: GroupWord, kind: GroupKind) -> tuple[int, tuple]:
    if kind == GroupKind.BRAID_A2:
        images, orders = _A2_IMAGES, _A2_ORDERS
    else:
        order = 2 if kind == GroupKind.BRAID_B2 else 3
        images, orders = _xy_images(order), {"x": 0, "y": order}
    syl: list = []
    for letter in word.unit_letters():
        for label, exp in images[letter]:
            _push(syl, label, exp, orders)
    lift = _lift_syllables(kind, syl)
    if kind == GroupKind.BRAID_A2:
        diff = word.exponent_sum() - lift.exponent_sum()
        if diff % 6:
            raise AssertionError("exponent sum of A2 word and lift differ by a non-multiple of 6")
        return diff // 6, tuple(syl)
    step = _DELTA_POWER[kind]
    d1 = word.exponent_sum(1) - lift.exponent_sum(1)
    d2 = word.exponent_sum(2) - lift.exponent_sum(2)
    if d1 != d2 or d1 % step:
        raise AssertionError(f"inconsistent center exponents from exponent sums: {d1}, {d2}")
    return d1 // step, tuple(syl)


def _lift_syllables(kind: GroupKind, syllables) -> GroupWord:
    word = IDENTITY
    for label, exp in syllables:
        if kind == GroupKind.BRAID_A2:
            word = word * parse_word(_A2_LIFTS[(label, exp)])
        elif label == "x":
            word = word * GroupWord.gen(1, exp)
        else:
            word = word * parse_word("s1 s2") ** exp
    return word


# S3Z: coset representatives of the center <s1^2>, indexed by their permutation of {0,1,2}.
_S3_REPS = ("e", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1")


def _perm_of(word: GroupWord) -> tuple:
    perm = (0, 1, 2)
    swaps = {1: (1, 0, 2), 2: (0, 2, 1)}
    for g, _ in word.unit_letters():
        s = swaps[g]
        perm = tuple(perm[s[i]] for i in range(3))
    return perm


def _build_s3_table():
    # table[i][(g, eps)] = (c, j) such that rep_i * s_g^eps = s1^(2c) * rep_j
    reps = [parse_word(r) for r in _S3_REPS]
    by_perm = {_perm_of(r): i for i, r in enumerate(reps)}
    table = []
    for rep in reps:
        row = {}
        for g, eps in itertools.product((1, 2), (1, -1)):
            j = by_perm[_perm_of(rep * GroupWord.gen(g, eps))]
            c, odd = divmod(rep.exponent_sum() + eps - reps[j].exponent_sum(), 2)
            assert not odd
            row[(g, eps)] = (c, j)
        table.append(row)
    return reps, table


_S3_REP_WORDS, _S3_TABLE = _build_s3_table()


def normal_form(word: GroupWord | str, spec: GroupSpec) -> NormalForm:
    """Canonical form; equal normal forms iff the words represent the same element."""
    if isinstance(word, str):
        word = parse_word(word)
    _check_generators(word, spec)
    kind = spec.kind
    if kind == GroupKind.FREE:
        return NormalForm(spec.name(), 0, word.letters)
    if kind in _BRAID_KINDS or kind == GroupKind.BRAID_MOD:
        c, syl = _braid_normal_form(word, spec.braid_type)
        if kind == GroupKind.BRAID_MOD and spec.t:
            c %= spec.t
        return NormalForm(spec.name(), c, syl)
    if kind == GroupKind.S3Z:
        c, idx = 0, 0
        for letter in word.unit_letters():
            dc, idx = _S3_TABLE[idx][letter]
            c += dc
        return NormalForm(spec.name(), c, (_S3_REPS[idx],))
    a, b = word.exponent_sum(1), word.exponent_sum(2)
    if kind == GroupKind.ZXZ_MOD and spec.t:
        q = a // (2 * spec.t)
        a, b = a - 2 * spec.t * q, b + 2 * spec.t * q
    return NormalForm(spec.name(), 0, (a, b))


def lift(nf: NormalForm, spec: GroupSpec) -> GroupWord:
    """A fixed word representing ``nf``."""
    kind = spec.kind
    if kind == GroupKind.FREE:
        return GroupWord(nf.syllables)
    if kind in _BRAID_KINDS or kind == GroupKind.BRAID_MOD:
        return center_generator(spec) ** nf.center_exponent * _lift_syllables(spec.braid_type, nf.syllables)
    if kind == GroupKind.S3Z:
        return GroupWord.gen(1, 2 * nf.center_exponent) * parse_word(nf.syllables[0])
    a, b = nf.syllables
    return GroupWord(((1, a), (2, b)))


def are_equal(w1, w2, spec: GroupSpec) -> bool:
    return normal_form(w1, spec) == normal_form(w2, spec)


def is_identity(w, spec: GroupSpec) -> bool:
    return are_equal(w, IDENTITY, spec)


# -- classification of twist groups --------------------------------------------


class GroupTag(enum.Enum):
    FREE2 = "Free2"
    BRAID_A2 = "BraidA2"
    BRAID_B2 = "BraidB2"
    BRAID_G2 = "BraidG2"
    QUOTIENT_FAMILY = "QuotientFamily"
    EXCEPTIONAL_A2_OR_S3Z = "ExceptionalA2orS3Z"
    EXCEPTIONAL_B2_OR_ZXZ = "ExceptionalB2orZxZ"
    ABELIAN = "Abelian"


@dataclass(frozen=True)
class GroupDescription:
    """Outcome of the classification.

    For ``QUOTIENT_FAMILY`` the group is the braid group of type ``diagram``
    modulo ``Delta^(t * center_power)`` for some integer t that the numerical
    data alone does not determine.
    """

    tag: GroupTag
    diagram: str | None = None
    center_power: int | None = None
    notes: str = ""

    def __str__(self):
        if self.tag == GroupTag.QUOTIENT_FAMILY:
            return f"QuotientFamily({self.diagram}, Delta^(t*{self.center_power}))"
        return self.tag.value

    def as_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "diagram": self.diagram,
            "center_power": self.center_power,
            "notes": self.notes,
            "description": str(self),
        }


def classify_twist_group(k: int, m: int, k2: int, m2: int, total_hom: int) -> GroupDescription:
    """Group generated by the twists along an m-spherical sequence of length k and an
    m2-spherical sequence of length k2, given total_hom = sum_l dim Hom(E, E'[l]).
    """
    if min(k, k2) < 1 or total_hom < 0:
        raise InvalidInput("lengths must be >= 1 and total_hom >= 0")
    if k > k2:
        k, m, k2, m2 = k2, m2, k, m
    if total_hom == 0:
        return GroupDescription(GroupTag.ABELIAN, notes="the twists commute")
    if k2 * m != k * m2:
        raise InvalidInput(
            f"k'm = {k2 * m} differs from km' = {k * m2}; then all Hom(E, E'[l]) vanish, "
            f"so total_hom = {total_hom} is impossible"
        )
    r, rem = divmod(k2, k)
    if rem == 0 and r in (1, 2, 3) and total_hom == k2 and m2 == r * m:
        if r == 1:
            if (m, k) == (2, 3):
                return GroupDescription(GroupTag.EXCEPTIONAL_A2_OR_S3Z, "A2",
                                        notes="braid group of type A2 or S3Z")
            if 3 * m == 4 * k:
                return GroupDescription(GroupTag.QUOTIENT_FAMILY, "A2", k // math.gcd(k, 3),
                                        notes="3m = 4k")
            return GroupDescription(GroupTag.BRAID_A2, "A2")
        if r == 2:
            if (m, k) == (1, 2):
                return GroupDescription(GroupTag.EXCEPTIONAL_B2_OR_ZXZ, "B2",
                                        notes="braid group of type B2 or (Z x Z)/(2t,-2t)")
            if 2 * m == 3 * k:
                return GroupDescription(GroupTag.QUOTIENT_FAMILY, "B2", 2 * k // math.gcd(k - 2, 4),
                                        notes="2m = 3k")
            return GroupDescription(GroupTag.BRAID_B2, "B2")
        if 3 * m == 5 * k:
            return GroupDescription(GroupTag.QUOTIENT_FAMILY, "G2", k, notes="3m = 5k")
        return GroupDescription(GroupTag.BRAID_G2, "G2")
    return GroupDescription(GroupTag.FREE2, notes="the twists generate a free group of rank 2")
