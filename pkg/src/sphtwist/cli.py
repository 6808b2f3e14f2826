"""Command-line interface.

Exit codes: 0 success or true, 1 false or refutation, 2 usage or input error,
3 computational error (window too small, ambiguous action, failed validation).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .artin import GroupSpec, are_equal, classify_twist_group, normal_form, parse_word
from .config import RunConfig, load_config
from .errors import SphtwistError
from .lambda_algebra import build_lambda, hom_dim_proj, nakayama, spherical_data
from .mesh import Vertex, build_mesh, graded_hom, hom_dim, hom_dim_oracle
from .picard import PicardElement, pic_equal, pic_normal_form
from .suites import A3_WINDOW, D4_WINDOW, a3_suite, d4_suite
from .twist import (
    a3_sequences,
    check_relation,
    d4_sequences,
    derive_automorphism,
    orbit_sph,
    sph_class,
)

DEFAULT_WINDOWS = {"D4": D4_WINDOW, "A3": A3_WINDOW}


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="run configuration file")
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), help="window of positions")
    p.add_argument("--depth", type=int, help="orbit exploration depth")
    p.add_argument("--diagram", help="D4 or A<n> (default D4, or the config's diagram)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _setup(args):
    """Model and ordered sequences from the config, or the built-in examples."""
    cfg = load_config(args.config) if args.config else RunConfig()
    diagram = (args.diagram or cfg.diagram or "D4").upper().replace("_", "")
    window = tuple(args.window) if args.window else cfg.window or DEFAULT_WINDOWS.get(diagram)
    if window is None:
        raise SystemExit(_usage(f"--window is required for diagram {diagram}"))
    if window[1] < window[0]:
        raise SystemExit(_usage("window bounds out of order"))
    model = build_mesh(diagram, window)
    sequences = dict(cfg.sequences)
    if not sequences:
        builtin = {"D4": d4_sequences, "A3": a3_sequences}.get(diagram)
        if builtin is None:
            raise SystemExit(_usage(f"no built-in sequences for {diagram}; supply --config"))
        sequences = {s.name: s for s in builtin()}
    depth = args.depth if args.depth is not None else (cfg.depth if cfg.depth is not None else 4)
    return model, sequences, depth


def _usage(msg: str) -> int:
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


# -- handlers -------------------------------------------------------------------


def cmd_classify(args) -> int:
    desc = classify_twist_group(args.k, args.m, args.kp, args.mp, args.hom)
    _emit(args, desc.as_dict(), str(desc) + (f"\n  {desc.notes}" if desc.notes else ""))
    return 0


def cmd_group(args) -> int:
    spec = GroupSpec.parse(args.group)
    if args.action == "nf":
        if len(args.words) != 1:
            return _usage("group nf takes exactly one word")
        nf = normal_form(parse_word(args.words[0]), spec)
        payload = {"group": spec.name(), "center_exponent": nf.center_exponent,
                   "syllables": [list(s) if isinstance(s, tuple) else s for s in nf.syllables]}
        _emit(args, payload, str(nf))
        return 0
    if len(args.words) != 2:
        return _usage("group eq takes exactly two words")
    equal = are_equal(parse_word(args.words[0]), parse_word(args.words[1]), spec)
    _emit(args, {"group": spec.name(), "equal": equal}, "true" if equal else "false")
    return 0 if equal else 1


def cmd_mesh(args) -> int:
    model, _, _ = _setup(args)
    x, y = Vertex.parse(args.x), Vertex.parse(args.y)
    d = hom_dim(model, x, y)
    payload = {"diagram": model.name, "window": list(model.window), "x": str(x), "y": str(y), "hom_dim": d}
    text = f"dim Hom({x}, {y}) = {d}"
    if args.oracle:
        payload["oracle"] = hom_dim_oracle(model, x, y)
        text += f" (oracle: {payload['oracle']})"
    if args.graded:
        graded = graded_hom(model, x, y)
        payload["graded"] = {str(l): v for l, v in sorted(graded.items())}
        text += "\n" + "\n".join(f"  dim Hom({x}, {y}[{l}]) = {v}" for l, v in sorted(graded.items()))
    _emit(args, payload, text)
    return 0


def _actions(model, sequences):
    return {name: derive_automorphism(model, spec, f"T_{name}") for name, spec in sequences.items()}


def cmd_twist(args) -> int:
    model, sequences, depth = _setup(args)
    actions = _actions(model, sequences)
    names = list(sequences)
    if args.action == "act":
        seq = args.sequence or names[0]
        if seq not in actions:
            return _usage(f"unknown sequence {seq!r}; known: {', '.join(names)}")
        rows = []
        for text in args.vertices:
            v = Vertex.parse(text)
            rows.append((str(v), str(actions[seq](v))))
        _emit(args, {"twist": f"T_{seq}", "images": dict(rows)},
              "\n".join(f"T_{seq}{v} = {w}" for v, w in rows))
        return 0
    if args.action == "orbit":
        seeds = [sph_class(spec, model) for spec in sequences.values()]
        graph = orbit_sph({f"T_{n}": a for n, a in actions.items()}, seeds, depth)
        if args.format == "json":
            print(graph.to_json())
        else:
            print(graph.to_text())
        return 0
    gens = {i + 1: actions[n] for i, n in enumerate(names)}
    if len(args.words) != 2:
        return _usage("verify-relation takes two words")
    result = check_relation(parse_word(args.words[0]), parse_word(args.words[1]), gens)
    payload = {
        "holds": result.holds,
        "domain_size": result.domain_size,
        "generators": {f"s{i}": f"T_{n}" for i, n in enumerate(names, 1)},
        "mismatches": [[str(v), str(a), str(b)] for v, a, b in result.mismatches[:10]],
    }
    text = f"{'true' if result.holds else 'false'} (checked on {result.domain_size} vertices)"
    if result.mismatches:
        v, a, b = result.mismatches[0]
        text += f"\n  first mismatch at {v}: {a} vs {b}"
    _emit(args, payload, text)
    return 0 if result.holds else 1


def cmd_verify(args) -> int:
    if args.example == "d4":
        checks = d4_suite(tuple(args.window) if args.window else D4_WINDOW)
    else:
        checks = a3_suite(tuple(args.window) if args.window else A3_WINDOW)
    ok = all(c.passed for c in checks)
    payload = {"example": args.example, "passed": ok,
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}
    _emit(args, payload, "\n".join(c.line() for c in checks) + f"\n{'all checks passed' if ok else 'FAILED'}")
    return 0 if ok else 1


def cmd_algebra(args) -> int:
    alg = build_lambda(args.k)
    nu = nakayama(alg)
    data = spherical_data(alg)
    cartan = [[hom_dim_proj(alg, x, y) for y in alg.vertices] for x in alg.vertices]
    payload = {
        "k": args.k,
        "dimension": alg.dim,
        "degree_dimensions": alg.degree_dims(),
        "vertices": alg.vertices,
        "cartan": cartan,
        "nakayama_order": nu.order,
        "a_E_Ep": data.a_forward,
        "a_Ep_E": data.a_backward,
        "spherical_valid": data.valid,
    }
    width = max(len(v) for v in alg.vertices) + 1
    lines = [
        f"Lambda_{args.k}: dimension {alg.dim} (by degree {alg.degree_dims()})",
        "Cartan matrix, entry (x, y) = dim Hom(P_x, P_y):",
        " " * width + "".join(v.rjust(width) for v in alg.vertices),
    ]
    for x, row in zip(alg.vertices, cartan):
        lines.append(x.rjust(width) + "".join(str(c).rjust(width) for c in row))
    lines.append(f"Nakayama automorphism: order {nu.order}; socle of P_y sits at nu(y) for every y")
    lines.append(f"E = (P_bar0..), length {data.E.length}; E' = (P_0..), length {data.Ep.length}; "
                 f"both 0-spherical: {'valid' if data.valid else 'INVALID'}")
    lines.append(f"a(E,E') = {data.a_forward}, a(E',E) = {data.a_backward}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_picard(args) -> int:
    elements = [PicardElement.parse(t, args.k) for t in args.elements]
    if args.action == "nf":
        if len(elements) != 1:
            return _usage("picard nf takes one element")
        nf = pic_normal_form(elements[0])
        _emit(args, nf.as_dict(), str(nf))
        return 0
    if len(elements) != 2:
        return _usage("picard eq takes two elements")
    equal = pic_equal(*elements)
    _emit(args, {"equal": equal, "k": args.k}, "true" if equal else "false")
    return 0 if equal else 1


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sphtwist", description="Groups generated by spherical twists.")
    parser.add_argument("--version", action="version", version=f"sphtwist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify the group generated by two twists")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kp", type=int, required=True)
    p.add_argument("--mp", type=int, required=True)
    p.add_argument("--hom", type=int, required=True, help="sum over l of dim Hom(E, E'[l])")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("group", parents=[common], help="normal forms and equality of words")
    p.add_argument("action", choices=("nf", "eq"))
    p.add_argument("group", help="free2 free3 a2 b2 g2 a2-mod:T b2-mod:T g2-mod:T s3z zxz:T abelian")
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("mesh", parents=[common], help="Hom dimensions in the mesh category")
    p.add_argument("action", choices=("hom",))
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--oracle", action="store_true", help="also run the linear-algebra oracle")
    p.add_argument("--graded", action="store_true", help="list dim Hom(x, y[l]) for all l")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("twist", parents=[common], help="twist actions on vertices and classes")
    p.add_argument("action", choices=("act", "orbit", "verify-relation"))
    p.add_argument("words", nargs="*", help="vertices for act, two words for verify-relation")
    p.add_argument("--sequence", help="sequence whose twist to apply (act)")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("verify", parents=[common], help="run a bundled example suite")
    p.add_argument("example", choices=("d4", "a3"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebra", parents=[common], help="the algebras Lambda_k")
    p.add_argument("family", choices=("lambda",))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("report", choices=("info",))
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("picard", parents=[common], help="derived Picard group arithmetic")
    p.add_argument("action", choices=("nf", "eq"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("elements", nargs="+", help="elements '[word ; shift ; nak ; unit]'")
    p.set_defaults(func=cmd_picard)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "k", None) is not None and args.k < 1 and args.command in ("algebra", "picard"):
        return _usage("--k must be >= 1")
    if args.command == "twist" and args.action == "act":
        args.vertices = args.words
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code)
    except SphtwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 3
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
