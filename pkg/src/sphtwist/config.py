"""Plain-text run configuration.

Format: one ``key = value`` per line, ``#`` starts a comment::

    diagram = D4
    window = -6 9
    sequence.E.members = (1,0) (1,-1) (1,-2)
    sequence.E.degrees = 1 1 0

Sequences keep the order in which they first appear; that order assigns the
generators s1, s2, ... in relation checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidInput
from .mesh import SphericalSequenceSpec, parse_vertices


@dataclass
class RunConfig:
    diagram: str | None = None
    window: tuple[int, int] | None = None
    depth: int | None = None
    sequences: dict = field(default_factory=dict)


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    raw: dict[str, dict[str, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"config line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "diagram":
            cfg.diagram = value
        elif key == "window":
            parts = value.split()
            if len(parts) != 2:
                raise InvalidInput(f"config line {lineno}: window needs two integers")
            lo, hi = int(parts[0]), int(parts[1])
            if hi < lo:
                raise InvalidInput(f"config line {lineno}: window bounds out of order")
            cfg.window = (lo, hi)
        elif key == "depth":
            cfg.depth = int(value)
        elif key.startswith("sequence."):
            parts = key.split(".")
            if len(parts) != 3 or parts[2] not in ("members", "degrees"):
                raise InvalidInput(f"config line {lineno}: use sequence.<name>.members or .degrees")
            raw.setdefault(parts[1], {})[parts[2]] = value
        else:
            raise InvalidInput(f"config line {lineno}: unknown key {key!r}")
    for name, entries in raw.items():
        if set(entries) != {"members", "degrees"}:
            raise InvalidInput(f"sequence {name} needs both members and degrees")
        try:
            members = parse_vertices(entries["members"])
            degrees = [int(x) for x in entries["degrees"].split()]
            cfg.sequences[name] = SphericalSequenceSpec(tuple(members), tuple(degrees), name)
        except ValueError as exc:
            raise InvalidInput(f"sequence {name}: {exc}") from exc
    return cfg


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text())
