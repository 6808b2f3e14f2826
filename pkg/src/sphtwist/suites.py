"""The bundled D4 and A3 example suites: each check is a named pass/fail line."""

from __future__ import annotations

from dataclasses import dataclass

from .artin import GroupTag, classify_twist_group, parse_word
from .mesh import Vertex, build_mesh, check_spherical, u_stat
from .twist import (
    QuiverAutomorphism,
    a3_sequences,
    builtin_d4_actions,
    check_relation,
    commutes_with_rules,
    d4_sequences,
    derive_automorphism,
    detect_exceptional,
    orbit_sph,
    sph_class,
    word_action,
)

D4_WINDOW = (-6, 9)
A3_WINDOW = (-9, 8)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def _rel(gens, lhs, rhs):
    return check_relation(parse_word(lhs), parse_word(rhs), gens).holds


def d4_suite(window=D4_WINDOW) -> list[Check]:
    model = build_mesh("D4", window)
    E, Ep = d4_sequences()
    t_e, t_ep = builtin_d4_actions(model)
    gens = {1: t_e, 2: t_ep}
    out = [
        Check("E and E' are spherical (length 3, sphericity 2)",
              check_spherical(model, E).valid and check_spherical(model, Ep).valid),
        Check("u_E(E') = 3", u_stat(model, E, Ep.members) == 3),
        Check("table actions commute with Serre functor and shift",
              not commutes_with_rules(t_e) and not commutes_with_rules(t_ep)),
    ]
    for spec, table in ((E, t_e), (Ep, t_ep)):
        derived = derive_automorphism(model, spec)
        out.append(Check(f"derived action of T_{spec.name} equals the table",
                         derived.vertex_map == table.vertex_map))
    out.append(Check("s1 s2 s1 = s2 s1 s2", _rel(gens, "s1 s2 s1", "s2 s1 s2")))
    out.append(Check("s1^2 = s2^2", _rel(gens, "s1^2", "s2^2")))
    out.append(Check("s1 != s2", not _rel(gens, "s1", "s2")))
    nontrivial = [a for a in range(1, 6) if not _rel(gens, f"s1^{a}", "e")]
    out.append(Check("s1^a != id for a = 1..5", nontrivial == list(range(1, 6))))
    six = word_action(parse_word("s1^6"), gens, model)
    shift2 = QuiverAutomorphism.from_rule(model, lambda v: model.shift(v, 2))
    row2 = [v for v in six.domain if v.row == 2]
    out.append(Check("s1^6 acts as [2] on row 2",
                     bool(row2) and all(six(v) == shift2(v) for v in row2 if v in shift2)))
    orbit = orbit_sph({"T_E": t_e, "T_E'": t_ep}, [sph_class(E, model), sph_class(Ep, model)], 4)
    out.append(Check("orbit of {E, E'} has 3 classes with induced S3",
                     len(orbit.nodes) == 3 and orbit.group_order == 6,
                     f"{len(orbit.nodes)} classes, group order {orbit.group_order}"))
    out.append(Check("T_E'^2 E ~ E (case A)", detect_exceptional(model, E, Ep, "A", (t_e, t_ep))))
    desc = classify_twist_group(3, 2, 3, 2, u_stat(model, E, Ep.members))
    out.append(Check("classifier reports ExceptionalA2orS3Z", desc.tag == GroupTag.EXCEPTIONAL_A2_OR_S3Z, str(desc)))
    return out


def a3_suite(window=A3_WINDOW) -> list[Check]:
    model = build_mesh("A3", window)
    E, Ep = a3_sequences()
    t_e = derive_automorphism(model, E)
    t_ep = derive_automorphism(model, Ep)
    gens = {1: t_e, 2: t_ep}
    total = u_stat(model, E, Ep.members)
    target = model.shift(Ep.members[1], 1)
    out = [
        Check("E (length 2) and E' (length 4) are spherical of sphericity 1 and 2",
              check_spherical(model, E).valid and check_spherical(model, Ep).valid),
        Check("derived actions commute with Serre functor and shift",
              not commutes_with_rules(t_e) and not commutes_with_rules(t_ep)),
        Check("T_E T_E' = T_E' T_E", _rel(gens, "s1 s2", "s2 s1")),
        Check("T_E^2 = T_E'^2", _rel(gens, "s1^2", "s2^2")),
        Check("(T_E T_E'^-1)^2 = id", _rel(gens, "(s1 s2^-1)^2", "e")),
        Check("T_E T_E'^-1 != id", not _rel(gens, "s1 s2^-1", "e")),
        Check("T_E E'_0 = E'_1[1] = (-1,1)",
              t_e(Ep.members[0]) == target == Vertex(-1, 1), f"T_E(1,0) = {t_e(Ep.members[0])}"),
        Check("T_E E' ~ E' (case B)", detect_exceptional(model, E, Ep, "B", (t_e, t_ep))),
    ]
    orbit = orbit_sph({"T_E": t_e, "T_E'": t_ep}, [sph_class(E, model), sph_class(Ep, model)], 4)
    out.append(Check("orbit of {E, E'} has 2 classes", len(orbit.nodes) == 2))
    desc = classify_twist_group(2, 1, 4, 2, total)
    out.append(Check("classifier reports ExceptionalB2orZxZ", desc.tag == GroupTag.EXCEPTIONAL_B2_OR_ZXZ,
                     f"total hom {total}, {desc}"))
    return out
