"""Arithmetic in (B_G2 x Z x Z/3k x units) modulo the central element (Delta^-1, 5, 3, (-1)^k).

Elements are quadruples ``(w, a, b, u)``: a braid word of type G2, a shift
power, a Nakayama power mod 3k and a unit. Normalizing pulls the central
power Delta^c out of ``w`` and trades it for ``(5c, 3c, (-1)^(kc))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .artin import GroupSpec, GroupWord, normal_form, parse_word, _lift_syllables, GroupKind
from .errors import MismatchedParameter

_G2 = GroupSpec.braid("G2")


@dataclass(frozen=True)
class UnitElement:
    """``sign * prod(sym^exp)``; the symbols generate a free abelian group."""

    sign: int = 1
    free_part: tuple = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        merged: dict[str, int] = {}
        items = self.free_part.items() if isinstance(self.free_part, dict) else self.free_part
        for sym, e in items:
            merged[sym] = merged.get(sym, 0) + e
        object.__setattr__(self, "free_part", tuple(sorted((s, e) for s, e in merged.items() if e)))

    def __mul__(self, other: "UnitElement") -> "UnitElement":
        return UnitElement(self.sign * other.sign, self.free_part + other.free_part)

    def inverse(self) -> "UnitElement":
        return UnitElement(self.sign, tuple((s, -e) for s, e in self.free_part))

    def __pow__(self, n: int) -> "UnitElement":
        return UnitElement(self.sign ** (n % 2), tuple((s, e * n) for s, e in self.free_part))

    @classmethod
    def minus_one_power(cls, n: int) -> "UnitElement":
        return cls(-1 if n % 2 else 1)

    @classmethod
    def parse(cls, text: str) -> "UnitElement":
        """Accepts ``1``, ``-1``, ``(-1)^e``, ``sym``, ``sym^e`` joined by ``*``."""
        text = text.strip()
        if text in ("", "1", "+1"):
            return cls()
        sign, free = 1, []
        for factor in text.split("*"):
            factor = factor.strip()
            if factor == "-1":
                sign = -sign
                continue
            if factor in ("1", "+1"):
                continue
            m = re.fullmatch(r"\(\s*-1\s*\)\s*(?:\^\s*([-+]?\d+))?", factor)
            if m:
                if int(m.group(1) or 1) % 2:
                    sign = -sign
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*([-+]?\d+))?", factor)
            if not m:
                raise ValueError(f"cannot parse unit factor {factor!r}")
            free.append((m.group(1), int(m.group(2) or 1)))
        return cls(sign, tuple(free))

    def __str__(self):
        parts = [] if self.sign == 1 else ["-1"]
        parts += [s if e == 1 else f"{s}^{e}" for s, e in self.free_part]
        return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class PicardElement:
    w: GroupWord
    a: int
    b: int
    u: UnitElement
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if isinstance(self.w, str):
            object.__setattr__(self, "w", parse_word(self.w))
        object.__setattr__(self, "b", self.b % (3 * self.k))

    @classmethod
    def parse(cls, text: str, k: int) -> "PicardElement":
        """Syntax ``[braid word ; shift ; nak ; unit]``."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        fields = [f.strip() for f in body.split(";")]
        if len(fields) != 4:
            raise ValueError("expected '[word ; shift ; nak ; unit]'")
        return cls(parse_word(fields[0]), int(fields[1]), int(fields[2]), UnitElement.parse(fields[3]), k)

    def __str__(self):
        return f"[{self.w} ; {self.a} ; {self.b} ; {self.u}]"

    def as_dict(self) -> dict:
        return {"word": str(self.w), "shift": self.a, "nakayama": self.b, "unit": str(self.u), "k": self.k}


def identity(k: int) -> PicardElement:
    return PicardElement(GroupWord(), 0, 0, UnitElement(), k)


def relation_element(k: int) -> PicardElement:
    """(Delta^-1, 5, 3, (-1)^k), which generates the kernel."""
    delta = parse_word("(s1 s2)^3")
    return PicardElement(delta.inverse(), 5, 3, UnitElement.minus_one_power(k), k)


def pic_normal_form(el: PicardElement) -> PicardElement:
    nf = normal_form(el.w, _G2)
    c = nf.center_exponent
    w = _lift_syllables(GroupKind.BRAID_G2, nf.syllables)
    return PicardElement(w, el.a + 5 * c, el.b + 3 * c, el.u * UnitElement.minus_one_power(el.k * c), el.k)


def _same_k(x: PicardElement, y: PicardElement):
    if x.k != y.k:
        raise MismatchedParameter(f"elements belong to different algebras (k={x.k} and k={y.k})")


def pic_multiply(x: PicardElement, y: PicardElement) -> PicardElement:
    _same_k(x, y)
    return pic_normal_form(PicardElement(x.w * y.w, x.a + y.a, x.b + y.b, x.u * y.u, x.k))


def pic_invert(x: PicardElement) -> PicardElement:
    return pic_normal_form(PicardElement(x.w.inverse(), -x.a, -x.b, x.u.inverse(), x.k))


def pic_equal(x: PicardElement, y: PicardElement) -> bool:
    _same_k(x, y)
    return pic_normal_form(x) == pic_normal_form(y)
