"""Command-line interface: load TOML presentations, run the constructions,
emit JSON reports.

Exit codes: 0 success, 1 parse/usage error, 2 axiom violation,
3 theorem-hypothesis violation (unbalanced map, degree window, unknotting
bound, missing surjectivity, ...).
"""

from __future__ import annotations

import argparse
import sys

from .algebra import CDGA, DGMorphism, cohomology, verify_cdga
from .analysis import (
    cohomology_ring,
    massey_search,
    poincare_series,
    triple_massey,
    verify_presentation,
)
from .duality import dual_square_report, pretty_model
from .errors import AxiomError, DgconfError, HypothesisError, ParseError
from .graded import Element, el_accumulate
from .models import (
    ComplementInput,
    complement_model,
    conf2_disk_bundle,
    conf2_pretty,
    conf2_punctured,
)
from .operations import free_module, homogeneous_components, morphism_from_images
from .presentations import (
    LoadedAlgebra,
    evaluate,
    load_presentation,
    parse_polynomial,
    read_presentation,
)
from .reports import Report, representatives_table, structure_constants_table
from .scalars import Q, ZERO, ONE

try:
    import tomllib as _toml
except ImportError:
    import tomli as _toml


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _load(path, max_degree):
    return load_presentation(read_presentation(path), max_degree)


def _read_toml(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return _toml.load(fh)
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}") from exc
    except _toml.TOMLDecodeError as exc:
        raise ParseError(f"TOML error in {path}: {exc}") from exc


def _emit(report: Report, output):
    text = report.to_json()
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _betti_of(algebra: CDGA):
    h = cohomology(algebra)
    top = algebra.space.max_degree()
    return h.betti(top if top is not None else 0)


def _massey_entries(algebra, ring, mode):
    if mode is None:
        return []
    if mode == "auto":
        return [r.summary() for r in massey_search(algebra, ring=ring)]
    names = [t.strip() for t in mode.split(",")]
    if len(names) != 3:
        raise ParseError("--massey takes 'auto' or three comma-separated H-classes")
    for nm in names:
        if nm not in ring.space.degree_of:
            raise ParseError(f"unknown cohomology class {nm!r} "
                             f"(known: {', '.join(ring.space.names())})")
    r = triple_massey(algebra, {names[0]: ONE}, {names[1]: ONE}, {names[2]: ONE},
                      ring=ring)
    return [r.summary()]


def _presentation_check(algebra, ring, path):
    data = _read_toml(path)
    generators = [(g["name"], int(g["degree"])) for g in data.get("generators", [])]
    relations = list(data.get("relations", []))
    h = ring.cohomology
    images = {}
    for g, value in data.get("images", {}).items():
        if isinstance(value, str):
            cocycle: Element = {value: ONE}
        elif isinstance(value, dict):
            cocycle = {nm: Q(str(c)) for nm, c in value.items()}
        else:
            raise ParseError(f"image of {g!r} must be a basis name or a table")
        for nm in cocycle:
            if nm not in algebra.space.degree_of:
                raise ParseError(f"unknown model basis name {nm!r} in image of {g!r}")
        images[g] = h.class_of(cocycle)
    check = verify_presentation(ring, generators, images, relations,
                                max_degree=data.get("max_degree"))
    return {
        "passed": check.passed,
        "failures": check.failures,
        "presented_dims": check.presented_dims,
        "ring_dims": check.ring_dims,
    }


def _conf2_report(args, model, command: str) -> Report:
    algebra = model.cone.cdga
    ring = cohomology_ring(algebra)
    report = Report(command=command, betti=_betti_of(algebra),
                    hypotheses_assumed=list(model.hypotheses_assumed))
    report.ring = {"structure_constants": structure_constants_table(ring),
                   "representatives": representatives_table(ring.cohomology)}
    report.massey = _massey_entries(algebra, ring, getattr(args, "massey", None))
    if getattr(args, "check_presentation", None):
        report.ring["presentation_check"] = _presentation_check(
            algebra, ring, args.check_presentation)
        if not report.ring["presentation_check"]["passed"]:
            report.violations.extend(report.ring["presentation_check"]["failures"])
    if "pretty_model" in model.extras:
        square = dual_square_report(model.extras["pretty_model"])
        report.extras["dual_square"] = {
            "commutes": square.commutes,
            "verdicts": {str(k): v for k, v in sorted(square.verdicts.items())},
            "details": square.details,
        }
    return report


# -- subcommands ----------------------------------------------------------------


def cmd_verify(args) -> Report:
    loaded = _load(args.input, args.max_degree)
    violations = [str(v) for v in verify_cdga(loaded.cdga, full=True)]
    report = Report(command="verify", violations=violations)
    report.extras["dims"] = {str(d): loaded.cdga.space.dim(d)
                             for d in loaded.cdga.space.support()}
    report.extras["poincare_duality"] = (
        {"formal_dim": loaded.pd.formal_dim} if loaded.pd else None)
    if violations:
        raise AxiomError("; ".join(violations))
    return report


def cmd_cohomology(args) -> Report:
    loaded = _load(args.input, args.max_degree)
    ring = cohomology_ring(loaded.cdga)
    report = Report(command="cohomology", betti=_betti_of(loaded.cdga))
    report.ring = {"structure_constants": structure_constants_table(ring),
                   "representatives": representatives_table(ring.cohomology)}
    return report


def cmd_series(args) -> Report:
    loaded = _load(args.input, args.max_degree)
    top = args.max_degree if args.max_degree is not None else \
        (loaded.cdga.space.max_degree() or 0)
    return Report(command="series", betti=poincare_series(loaded.cdga, top))


def cmd_massey(args) -> Report:
    loaded = _load(args.input, args.max_degree)
    ring = cohomology_ring(loaded.cdga)
    mode = args.triple if args.triple else "auto"
    return Report(command="massey", betti=_betti_of(loaded.cdga),
                  massey=_massey_entries(loaded.cdga, ring, mode))


def cmd_conf2_disk_bundle(args) -> Report:
    loaded = _load(args.base, args.max_degree)
    if loaded.pd is None:
        raise ParseError("--base needs an orientation (a Poincaré duality model)")
    euler = loaded.eval_poly(args.euler)
    model = conf2_disk_bundle(loaded.pd, euler, args.rank)
    report = _conf2_report(args, model, "conf2-disk-bundle")
    report.extras["two_pipeline_agreement"] = True  # enforced inside the construction
    report.extras["euler_class"] = {nm: str(c) for nm, c in sorted(euler.items())}
    return report


def cmd_conf2_punctured(args) -> Report:
    loaded = _load(args.manifold, args.max_degree)
    if loaded.pd is None:
        raise ParseError("--manifold needs an orientation (a Poincaré duality model)")
    model = conf2_punctured(loaded.pd)
    return _conf2_report(args, model, "conf2-punctured")


def _phi_from_toml(path, source: LoadedAlgebra, target: LoadedAlgebra) -> DGMorphism:
    data = _read_toml(path)
    images = data.get("images")
    if images is None:
        raise ParseError(f"{path}: needs an [images] table (generator -> polynomial)")
    gen_images = {}
    for g, _ in source.presentation.generators:
        if g not in images:
            raise ParseError(f"{path}: no image for generator {g!r}")
        gen_images[g] = target.eval_poly(str(images[g]))

    def lookup(name):
        if name not in gen_images:
            raise ParseError(f"unknown generator {name!r} in monomial")
        return gen_images[name]

    morphism_images = {}
    for nm in source.cdga.space.names():
        # basis names are monomials in the generators; evaluate them in the target
        value = evaluate(parse_polynomial(nm), lookup, target.cdga.mul,
                         target.cdga.unit_element())
        if value:
            morphism_images[nm] = value
    return morphism_from_images(source.cdga, target.cdga, morphism_images,
                                multiplicative=True, name="φ")


def cmd_conf2_pretty(args) -> Report:
    p_loaded = _load(args.pd, args.max_degree)
    if p_loaded.pd is None:
        raise ParseError("--pd needs an orientation (a Poincaré duality model)")
    q_loaded = _load(args.target, args.max_degree)
    phi = _phi_from_toml(args.phi, p_loaded, q_loaded)
    pm = pretty_model(p_loaded.pd, q_loaded.cdga, phi)
    model = conf2_pretty(pm, force_truncation=args.truncate)
    return _conf2_report(args, model, "conf2-pretty")


class _ModuleValue:
    """Mixed value for module polynomials: scalar + algebra part + module part."""

    __slots__ = ("scalar", "alg", "mod")

    def __init__(self, scalar=ZERO, alg=None, mod=None):
        self.scalar = scalar
        self.alg = alg or {}
        self.mod = mod or {}


def _eval_module_poly(text: str, loaded: LoadedAlgebra, module, gen_names):
    """Evaluate a polynomial that is linear in the module generators."""
    A = loaded.cdga
    ast = parse_polynomial(text)

    def mul(u: _ModuleValue, v: _ModuleValue) -> _ModuleValue:
        if u.mod and v.mod:
            raise ParseError(f"{text!r}: module differentials must be linear "
                             "in the module generators")
        scalar = u.scalar * v.scalar
        alg = A.mul(u.alg, v.alg)
        el_accumulate(alg, v.alg, u.scalar)
        el_accumulate(alg, u.alg, v.scalar)
        mod: Element = {}
        el_accumulate(mod, v.mod, u.scalar)
        el_accumulate(mod, u.mod, v.scalar)
        if u.alg and v.mod:
            el_accumulate(mod, module.act(u.alg, v.mod), ONE)
        if u.mod and v.alg:
            # m·a = (-1)^{|a||m|} a·m, componentwise
            for d_a, a_part in homogeneous_components(A.space, v.alg).items():
                for d_m, m_part in homogeneous_components(module.space, u.mod).items():
                    sign = -ONE if (d_a * d_m) % 2 else ONE
                    el_accumulate(mod, module.act(a_part, m_part), sign)
        return _ModuleValue(scalar=scalar, alg=alg, mod=mod)

    def run(node) -> _ModuleValue:
        head = node[0]
        if head == "num":
            return _ModuleValue(scalar=Q(node[1]))
        if head == "var":
            name = node[1]
            if name in gen_names:
                return _ModuleValue(mod={name: ONE})
            return _ModuleValue(alg=loaded.eval_poly(name))
        if head == "neg":
            v = run(node[1])
            return _ModuleValue(scalar=-v.scalar,
                                alg={k: -c for k, c in v.alg.items()},
                                mod={k: -c for k, c in v.mod.items()})
        if head in "+-":
            u, v = run(node[1]), run(node[2])
            sign = ONE if head == "+" else -ONE
            alg = dict(u.alg)
            el_accumulate(alg, v.alg, sign)
            mod = dict(u.mod)
            el_accumulate(mod, v.mod, sign)
            return _ModuleValue(scalar=u.scalar + sign * v.scalar, alg=alg, mod=mod)
        if head == "*":
            return mul(run(node[1]), run(node[2]))
        if head == "/":
            u, v = run(node[1]), run(node[2])
            if u.alg or u.mod or v.alg or v.mod or v.scalar == 0:
                raise ParseError("'/' only divides integer literals")
            return _ModuleValue(scalar=u.scalar / v.scalar)
        if head == "^":
            base = run(node[1])
            acc = _ModuleValue(scalar=ONE)
            for _ in range(node[2]):
                acc = mul(acc, base)
            return acc
        raise ParseError(f"cannot evaluate {head!r}")

    value = run(ast)
    if value.scalar != 0 or value.alg:
        raise ParseError(f"{text!r}: expected a module element "
                         "(every term must contain a module generator)")
    return value.mod


def cmd_complement(args) -> Report:
    loaded = _load(args.ambient, args.max_degree)
    if not loaded.cdga.is_connected():
        raise AxiomError("the ambient model must be connected")
    data = _read_toml(args.module)
    generators = [(g["name"], int(g["degree"])) for g in data.get("generators", [])]
    gen_names = {g for g, _ in generators}

    skeleton = free_module(loaded.cdga, generators, name="Q")
    gen_diffs = {}
    for g, poly in data.get("differentials", {}).items():
        if g not in gen_names:
            raise ParseError(f"differential for unknown module generator {g!r}")
        value = _eval_module_poly(str(poly), loaded, skeleton, gen_names)
        if value:
            gen_diffs[g] = value
    fiber = free_module(loaded.cdga, generators, gen_diffs, name="Q")

    shriek_images = {}
    shriek_data = data.get("shriek", {})
    for g, _ in generators:
        if g not in shriek_data:
            raise ParseError(f"[shriek] table needs an entry for {g!r}")
    for g, poly in shriek_data.items():
        if g not in gen_names:
            raise ParseError(f"shriek image for unknown module generator {g!r}")
        value = loaded.eval_poly(str(poly))
        if value:
            shriek_images[g] = value
    images = {}
    for nm in fiber.space.names():
        img: Element = {}
        for g in gen_names:
            if nm == g:
                img = dict(shriek_images.get(g, {}))
                break
            suffix = f"·{g}"
            if nm.endswith(suffix):
                a = nm[: -len(suffix)]
                img = loaded.cdga.mul({a: ONE}, shriek_images.get(g, {}))
                break
        if img:
            images[nm] = img
    shriek = morphism_from_images(fiber, loaded.cdga, images, name="φ!")

    inp = ComplementInput(ambient=loaded.cdga, fiber=fiber, shriek=shriek,
                          manifold_dim=args.n, subpolyhedron_dim=args.k,
                          connectivity=args.r)
    cone = complement_model(inp)
    algebra = cone.cdga
    report = Report(command="complement", betti=_betti_of(algebra),
                    hypotheses_assumed=list(cone.notes))
    report.extras["truncated_at"] = cone.truncation_degree
    report.extras["partial_up_to"] = cone.partial_up_to
    return report


def build_parser() -> _Parser:
    parser = _Parser(prog="dgconf",
                     description="Exact rational models of complements and "
                                 "two-point configuration spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max-degree", type=int, default=None,
                       help="cap for presentation expansion (default: 2n+1 for "
                            "oriented inputs)")
        p.add_argument("--output", default=None, help="write the JSON report here")

    p = sub.add_parser("verify", help="check the CDGA (and PD) axioms of a presentation")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", help="Betti numbers and cohomology ring")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("series", help="Poincaré series")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("massey", help="triple Massey products")
    p.add_argument("--input", required=True)
    p.add_argument("--triple", default=None,
                   help="three comma-separated H-classes (default: exhaustive search)")
    common(p)
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("conf2-disk-bundle",
                       help="Conf(Dξ,2) for an even-rank disk bundle")
    p.add_argument("--base", required=True, help="oriented presentation of the base")
    p.add_argument("--euler", required=True, help="Euler class polynomial (may be 0)")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--massey", default=None, help="'auto' or three H-classes")
    p.add_argument("--check-presentation", default=None,
                   help="TOML with generators/relations/images to verify")
    common(p)
    p.set_defaults(func=cmd_conf2_disk_bundle)

    p = sub.add_parser("conf2-punctured", help="Conf(M∖{pt},2) for a closed manifold")
    p.add_argument("--manifold", required=True)
    p.add_argument("--massey", default=None)
    p.add_argument("--check-presentation", default=None)
    common(p)
    p.set_defaults(func=cmd_conf2_punctured)

    p = sub.add_parser("conf2-pretty", help="Conf(W,2) from a surjective pretty model")
    p.add_argument("--pd", required=True, help="oriented presentation of P")
    p.add_argument("--target", required=True, help="presentation of Q")
    p.add_argument("--phi", required=True, help="TOML [images]: generator -> polynomial")
    p.add_argument("--truncate", action="store_true",
                   help="return the τ^{≤2n-3} form")
    p.add_argument("--massey", default=None)
    p.add_argument("--check-presentation", default=None)
    common(p)
    p.set_defaults(func=cmd_conf2_pretty)

    p = sub.add_parser("complement", help="model of W∖K from (A, Q, φ!)")
    p.add_argument("--ambient", required=True, help="presentation of A (model of W)")
    p.add_argument("--module", required=True,
                   help="TOML semifree module: generators/differentials/shriek")
    p.add_argument("--n", required=True, type=int, help="dimension of W")
    p.add_argument("--k", required=True, type=int, help="dimension of K")
    p.add_argument("--r", required=True, type=int, help="connectivity of the inclusions")
    common(p)
    p.set_defaults(func=cmd_complement)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.func(args)
    except ParseError as exc:
        _emit(Report(command="error", violations=[str(exc)]), None)
        return 1
    except HypothesisError as exc:
        _emit(Report(command="error", violations=[str(exc)]), None)
        return 3
    except DgconfError as exc:
        _emit(Report(command="error", violations=[str(exc)]), None)
        return 2
    _emit(report, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
