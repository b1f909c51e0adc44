"""Command-line front end. Every subcommand prints one JSON report (or a short
text rendering with ``--format text``).

Exit codes: 0 success, 2 axiom/validation failure, 3 parse or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from . import decide as dc
from . import lie, quadforms, tensors
from .invariants import invariant_subspace
from .lie import LieAlgebra, LieAlgebraError
from .scalars import ScalarError, format_rational, parse_rational
from .tensors import TensorError, tensor_to_json

EXIT_OK, EXIT_AXIOM, EXIT_PARSE = 0, 2, 3

ALGEBRA_COMMANDS = ("validate", "classify", "invariants", "cyb", "delta", "check-bialgebra", "decide", "witness", "coboundary")
R_COMMANDS = ("cyb", "delta", "check-bialgebra")


class InputError(ValueError):
    """Unreadable or malformed input; maps to exit code 3."""


class AxiomFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("message", "axiom failure"))
        self.report = report


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    r: Optional[str] = None
    power: int = 2
    a: Optional[str] = None
    b: Optional[str] = None
    place: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    height_bound: Optional[int] = None
    sample_count: int = 20
    seed: int = 0
    output_format: str = "json"


# --- input loading ----------------------------------------------------------


def _looks_like_preset(text: str) -> bool:
    head = text.split(":", 1)[0]
    return head in ("sl2", "quat", "slam", "abelian") or (head.startswith("heisenberg") and ":" not in text)


def load_algebra(source: str) -> LieAlgebra:
    if _looks_like_preset(source) and not Path(source).exists():
        try:
            return lie.preset(source)
        except (LieAlgebraError, ScalarError) as exc:
            raise InputError(f"bad preset {source!r}: {exc}") from None
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read algebra file {source!r}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"algebra file {source!r} is not valid JSON: {exc}") from None
    try:
        return lie.from_json(data)
    except (LieAlgebraError, ScalarError) as exc:
        raise InputError(f"malformed algebra in {source!r}: {exc}") from None


def load_tensor(source: str, n: int, power: int = 2) -> List[Fraction]:
    text = source
    if not source.lstrip().startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read tensor file {source!r}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"tensor is not valid JSON: {exc}") from None
    try:
        return tensors.tensor_from_json(data, n, power)
    except (TensorError, ScalarError) as exc:
        raise InputError(f"dimension mismatch or malformed tensor: {exc}") from None


def _rational_arg(text: str, name: str) -> Fraction:
    try:
        return parse_rational(text)
    except ScalarError as exc:
        raise InputError(f"malformed rational for {name}: {exc}") from None


def _nonzero_rational_arg(text: str, name: str) -> Fraction:
    v = _rational_arg(text, name)
    if v == 0:
        raise InputError(f"{name} must be nonzero")
    return v


# --- subcommands ------------------------------------------------------------


def _validated(g: LieAlgebra) -> LieAlgebra:
    rep = lie.validate(g)
    if not rep.ok:
        raise AxiomFailure({"valid": False, "violations": rep.violations, "message": "invalid Lie algebra"})
    return g


def _cmd_validate(cfg: RunConfig, g: LieAlgebra) -> Tuple[int, dict]:
    rep = lie.validate(g)
    return (EXIT_OK if rep.ok else EXIT_AXIOM), {"valid": rep.ok, "violations": rep.violations, "dim": g.dim}


def _cmd_classify(cfg, g):
    g = _validated(g)
    out = {
        "dim": g.dim,
        "abelian": lie.is_abelian(g),
        "solvable": lie.is_solvable(g),
        "derived_dim": lie.derived_subalgebra(g).dim,
        "center_dim": lie.center(g).dim,
        "classification": None,
    }
    if g.dim == 3:
        out["classification"] = lie.classify3(g).to_json()
    return EXIT_OK, out


def _cmd_invariants(cfg, g):
    g = _validated(g)
    if cfg.power not in (1, 2, 3):
        raise InputError("--power must be 1, 2 or 3")
    inv = invariant_subspace(g, cfg.power)
    return EXIT_OK, {
        "power": cfg.power,
        "dim": inv.dim,
        "basis": [tensor_to_json(v, cfg.power) for v in inv.vectors],
    }


def _require_r(cfg: RunConfig, g: LieAlgebra):
    if cfg.r is None:
        raise InputError("--r is required for this command")
    return load_tensor(cfg.r, g.dim)


def _cmd_cyb(cfg, g):
    g = _validated(g)
    r = _require_r(cfg, g)
    c = tensors.cyb(g, r)
    out = {"r": tensor_to_json(r, 2), "cyb": tensor_to_json(c, 3), "is_zero": not any(c)}
    if g.dim == 3:
        coef = tensors.wedge3_coefficient(c)
        out["wedge_coefficient"] = format_rational(coef) if coef is not None else None
    return EXIT_OK, out


def _cmd_delta(cfg, g):
    g = _validated(g)
    r = _require_r(cfg, g)
    d = tensors.delta_r(g, r)
    return EXIT_OK, {
        "r": tensor_to_json(r, 2),
        "delta": [tensor_to_json(row, 2) for row in d.matrix],
        "is_zero": d.is_zero,
    }


def _cmd_check_bialgebra(cfg, g):
    g = _validated(g)
    r = _require_r(cfg, g)
    d = tensors.delta_r(g, r)
    axioms = tensors.check_bialgebra(g, d)
    drin = tensors.drinfeld_criterion(g, r)
    out = {
        "r": tensor_to_json(r, 2),
        "axioms": axioms.to_json(),
        "drinfeld": drin.to_json(),
        "delta_is_zero": d.is_zero,
    }
    return (EXIT_OK if axioms.passes else EXIT_AXIOM), out


def _cmd_decide(cfg, g):
    g = _validated(g)
    return EXIT_OK, dc.decide(g, cfg.height_bound).to_json()


def _cmd_witness(cfg, g):
    g = _validated(g)
    w = dc.witness_triangular(g, cfg.height_bound)
    out = {"found": w.found, "stage": w.stage, "witness": None, "verification": None}
    if w.found:
        out["witness"] = tensor_to_json(w.r, 2)
        out["verification"] = dc.verify_witness(g, w.r)
    return EXIT_OK, out


def _cmd_coboundary(cfg, g):
    g = _validated(g)
    v = dc.decide(g, cfg.height_bound).coboundary
    return EXIT_OK, v.to_json()


def _cmd_split(cfg):
    alpha = _nonzero_rational_arg(cfg.a, "alpha")
    beta = _nonzero_rational_arg(cfg.b, "beta")
    bound = cfg.height_bound or dc.default_height_bound()
    split = quadforms.quaternion_is_split(alpha, beta)
    places = quadforms.relevant_places(-alpha, -beta)
    symbols = {str(v): quadforms.hilbert_symbol(-alpha, -beta, v) for v in places}
    iso = quadforms.isotropic_vector(quadforms.norm_form(alpha, beta), bound)
    return EXIT_OK, {
        "alpha": format_rational(alpha),
        "beta": format_rational(beta),
        "split": split,
        "hilbert_symbols": symbols,
        "norm_form": {
            "status": iso.status,
            "witness": list(iso.witness) if iso.witness else None,
            "obstruction": str(iso.obstruction) if iso.obstruction is not None else None,
            "height_bound": bound,
        },
    }


def _cmd_hilbert(cfg):
    a = _nonzero_rational_arg(cfg.a, "a")
    b = _nonzero_rational_arg(cfg.b, "b")
    place = cfg.place
    if place in ("inf", "infinity", "oo"):
        place_v = quadforms.INFINITY
    else:
        try:
            place_v = int(place)
        except (TypeError, ValueError):
            raise InputError(f"place must be a prime or 'inf', got {place!r}") from None
        if not quadforms.is_prime(place_v):
            raise InputError(f"place must be a prime or 'inf', got {place!r}")
    return EXIT_OK, {
        "a": format_rational(a),
        "b": format_rational(b),
        "place": str(place_v),
        "symbol": quadforms.hilbert_symbol(a, b, place_v),
    }


def random_rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def prop2_samples(count: int, seed: int) -> List[List[Fraction]]:
    """The three basis wedges followed by ``count`` seeded random wedges."""
    w12, w23, w31 = tensors.basis_wedge(3, 0, 1), tensors.basis_wedge(3, 1, 2), tensors.basis_wedge(3, 2, 0)
    out = [w12, w23, w31]
    rng = random.Random(seed)
    for _ in range(count):
        c = [random_rational(rng, 10) for _ in range(3)]
        out.append([c[0] * a + c[1] * b + c[2] * d for a, b, d in zip(w12, w23, w31)])
    return out


def _cmd_prop2(cfg):
    if cfg.alpha is None or cfg.beta is None:
        raise InputError("prop2 needs --alpha and --beta")
    alpha = _nonzero_rational_arg(cfg.alpha, "alpha")
    beta = _nonzero_rational_arg(cfg.beta, "beta")
    rep = dc.prop2_verify(alpha, beta, prop2_samples(cfg.sample_count, cfg.seed))
    out = rep.to_json()
    out["seed"] = cfg.seed
    return (EXIT_OK if rep.passes else EXIT_AXIOM), out


_DISPATCH = {
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "invariants": _cmd_invariants,
    "cyb": _cmd_cyb,
    "delta": _cmd_delta,
    "check-bialgebra": _cmd_check_bialgebra,
    "decide": _cmd_decide,
    "witness": _cmd_witness,
    "coboundary": _cmd_coboundary,
}


def execute(cfg: RunConfig) -> Tuple[int, dict]:
    """Run one command; returns (exit code, report dict)."""
    try:
        if cfg.command in _DISPATCH:
            g = load_algebra(cfg.input)
            code, body = _DISPATCH[cfg.command](cfg, g)
        elif cfg.command == "split":
            code, body = _cmd_split(cfg)
        elif cfg.command == "hilbert":
            code, body = _cmd_hilbert(cfg)
        elif cfg.command == "prop2":
            code, body = _cmd_prop2(cfg)
        else:
            raise InputError(f"unknown command {cfg.command!r}")
    except InputError as exc:
        return EXIT_PARSE, {"command": cfg.command, "error": {"kind": "input", "message": str(exc)}}
    except AxiomFailure as exc:
        return EXIT_AXIOM, {"command": cfg.command, "error": {"kind": "axiom", "message": str(exc)}, "result": exc.report}
    except ValueError as exc:
        # e.g. an invalid BIALG_HEIGHT_BOUND or factorization beyond the guard
        return EXIT_PARSE, {"command": cfg.command, "error": {"kind": "input", "message": str(exc)}}
    return code, {"command": cfg.command, "result": body}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    lines = [f"command: {report['command']}"]
    if "error" in report:
        lines.append(f"error ({report['error']['kind']}): {report['error']['message']}")
    body = report.get("result") or {}
    for key in sorted(body):
        val = body[key]
        if isinstance(val, dict) and "status" in val:
            lines.append(f"{key}: {val['status']}" + (f" ({val['reason']})" if val.get("reason") else ""))
        elif isinstance(val, (dict, list)):
            lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    code, report = execute(cfg)
    if "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    print(render(report, cfg.output_format), file=out)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    common.add_argument("--height-bound", type=int, default=None,
                        help=f"witness search bound (default ${dc.HEIGHT_BOUND_ENV} or {quadforms.DEFAULT_HEIGHT_BOUND})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", dest="sample_count", type=int, default=20)

    p = argparse.ArgumentParser(prog="bialg", description="Lie bialgebra existence over Q")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ALGEBRA_COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input", help="preset (sl2, heisenberg1, quat:a,b, slam:a,b,c,d, abelian:n, heisenberg2) or JSON file")
        if name in R_COMMANDS:
            sp.add_argument("--r", required=True, help="2-tensor as inline JSON or a JSON file")
        if name == "invariants":
            sp.add_argument("--power", type=int, choices=(1, 2, 3), default=2)
    sp = sub.add_parser("split", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp = sub.add_parser("hilbert", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("place", help="a prime or 'inf'")
    sp = sub.add_parser("prop2", parents=[common])
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        r=getattr(ns, "r", None),
        power=getattr(ns, "power", 2),
        a=getattr(ns, "a", None),
        b=getattr(ns, "b", None),
        place=getattr(ns, "place", None),
        alpha=getattr(ns, "alpha", None),
        beta=getattr(ns, "beta", None),
        height_bound=ns.height_bound,
        sample_count=ns.sample_count,
        seed=ns.seed,
        output_format=ns.output_format,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors are parse errors
        return EXIT_PARSE if exc.code else EXIT_OK
    if ns.height_bound is not None and ns.height_bound < 1:
        print("error: --height-bound must be positive", file=sys.stderr)
        return EXIT_PARSE
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
