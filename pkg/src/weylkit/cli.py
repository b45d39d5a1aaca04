"""Command-line interface: ``weylkit <command> [options]``.

Every command writes a JSON report (``--format json``, the default) or a short
text summary.  Exit codes: 0 success, 1 a checked property failed, 2 bad
input, 3 an exact division left a remainder.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from .ambient import InvalidPresentation, QuotientAlgebra, Window, make_ring
from .centralizer import UnsupportedGroup, centralizer, render_presentation, sphere_counterexample
from .envelope import (
    WindowError,
    check_sign_in_cap,
    counit_localization_check,
    dims_json,
    envelope_invariants,
    ideal_cap,
    ideal_sign,
    recipe_equality,
)
from .expr import ParseError, parse_expr, parse_poly
from .nilhecke import ExactnessError, demazure_w0_direct, demazure_word
from .polyalg import NotDivisibleError, RatElem
from .report import dumps, envelope, jsonable
from .rootsys import UnsupportedCartanDatum, root_system

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EXACT = 0, 1, 2, 3

INPUT_ERRORS = (ParseError, UnsupportedCartanDatum, UnsupportedGroup, InvalidPresentation, WindowError,
                ValueError, KeyError, OSError)


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    cartan_type: str = "A"
    rank: int = 1
    poly_degree_bound: int | None = None
    lattice_height_bound: int | None = None
    delta_power: int | None = None
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        for name in ("rank", "poly_degree_bound", "lattice_height_bound", "delta_power"):
            v = getattr(self, name)
            if v is not None and v < (0 if name == "lattice_height_bound" else 1):
                raise InputError(f"{name.replace('_', ' ')} must be positive")

    def window(self, default: Window) -> Window:
        return Window(
            self.poly_degree_bound if self.poly_degree_bound is not None else default.degree,
            self.lattice_height_bound if self.lattice_height_bound is not None else default.height,
            self.delta_power if self.delta_power is not None else default.delta_power,
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("output_path")
        d.pop("output_format")
        return d


def threads() -> int:
    """Value of ``WEYLKIT_THREADS`` (default 1).  Computations are sequential."""
    raw = os.environ.get("WEYLKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"WEYLKIT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError("WEYLKIT_THREADS must be at least 1")
    return n


# --------------------------------------------------------------------------
# commands: each returns (ok, result, text)
# --------------------------------------------------------------------------


def cmd_root_data(cfg: RunConfig, args):
    rs = root_system(cfg.cartan_type, cfg.rank)
    data = rs.to_json()
    lines = [f"{rs.name}: |W| = {rs.order}, {len(rs.positive_roots)} positive roots, l(w0) = {rs.w0.length}"]
    lines += [f"  root {list(r)}" for r in rs.positive_roots]
    return True, data, "\n".join(lines)


def _parse_word(text: str, rank: int) -> tuple:
    parts = text.split(",") if "," in text else list(text.strip())
    try:
        word = tuple(int(p) - 1 for p in parts if p.strip())
    except ValueError:
        raise InputError(f"cannot parse word {text!r}") from None
    if any(not 0 <= i < rank for i in word):
        raise InputError(f"word {text!r} uses an index outside 1..{rank}")
    return word


def cmd_demazure(cfg: RunConfig, args):
    rs = root_system(cfg.cartan_type, cfg.rank)
    ring = make_ring(args.ring, rs)
    u = parse_expr(args.expr, ring)
    if args.direct:
        img = demazure_w0_direct(ring, u)
        word = rs.w0.reduced_word
    else:
        word = _parse_word(args.word, rs.rank)
        img = demazure_word(ring, word, u)
    if isinstance(img, RatElem):
        text, k = str(img), img.delta_power
    else:
        text, k = ring.render(img), 0
    result = {
        "ring": ring.to_json(),
        "word": "".join(str(i + 1) for i in word),
        "input": ring.render(u),
        "image": text,
        "delta_power": k,
        "method": "alternating sum" if args.direct else "composed word",
    }
    return True, result, f"D[{result['word']}]({result['input']}) = {text}"


def load_presentation(path: str):
    """Read a ring description (and optional window) from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InvalidPresentation("presentation file must hold a JSON object")
    kind = data.get("ambient", "quotient")
    if kind == "sphere":
        ring = make_ring("sphere")
    else:
        rs = root_system(data.get("type", "A"), int(data.get("rank", 1)))
        if kind in ("sym", "torus"):
            ring = make_ring(kind, rs)
        elif kind == "quotient":
            names = list(data["generators"])
            rels = [parse_poly(r, names) for r in data.get("relations", [])]
            images = [[parse_poly(t, names) for t in row] for row in data["simple_images"]]
            structure = [parse_poly(t, names) for t in data["structure"]]
            ring = QuotientAlgebra(rs, names, rels, images, structure, label=data.get("label", "quotient"))
        else:
            raise InvalidPresentation(f"unknown ambient kind {kind!r}")
    ring.check()
    window = None
    if "window" in data:
        w = data["window"]
        window = Window(int(w["degree"]), int(w.get("height", 0)), int(w.get("delta_power", 1)))
    return ring, window


def cmd_envelope(cfg: RunConfig, args):
    if args.presentation:
        ring, file_window = load_presentation(args.presentation)
    else:
        ring = make_ring(args.ring, root_system(cfg.cartan_type, cfg.rank))
        ring.check()
        file_window = None
    default = file_window or Window(4, 2 if ring.kind == "torus" else 0, 1)
    window = cfg.window(default)
    if window.delta_power > ring.rs.w0.length:
        raise WindowError("window Delta-power exceeds l(w0)")
    res = recipe_equality(ring, window)
    counit = counit_localization_check(ring, window, res["spans"]["E"])
    gens = envelope_invariants(ring, Window(min(window.degree, 2), min(window.height, 1), 1))
    ok = (res["recipes"]["equal"] and res["invariants"]["equal"]
          and counit["cleared_in_A"] and counit["A_in_E"])
    result = {
        "ring": ring.to_json(),
        "window": window,
        "recipes": res["recipes"],
        "invariants": res["invariants"],
        "counit": counit,
        "dims": {k: dims_json(v.dims()) for k, v in sorted(res["spans"].items())},
        "low_invariant_generators": [str(g) for g in gens],
    }
    text = "\n".join([
        f"envelope of {ring.to_json().get('label', ring.kind)} over {ring.rs.name}, window {window.to_json()}",
        f"  recipes agree: {res['recipes']['equal']}",
        f"  invariant words generate E^W: {res['invariants']['equal']}",
        f"  counit: Delta^L E in A {counit['cleared_in_A']}, A in E {counit['A_in_E']}",
        *(f"  generator {g}" for g in result["low_invariant_generators"]),
    ])
    return ok, result, text


def cmd_centralizer(cfg: RunConfig, args):
    group = args.group.lower()
    default = {"sl2": Window(4, 4, 2), "sl3": Window(3, 2, 1)}.get(group)
    window = cfg.window(default) if default else None
    p = centralizer(group, window)
    return p.ok, p, render_presentation(p)


def cmd_counterexample(cfg: RunConfig, args):
    window = cfg.window(Window(6, 0, 1))
    rep = sphere_counterexample(window)
    fixed = rep["fixed_point_presentation"]["torsion"]["witnesses"]
    text = "\n".join([
        "sphere x^2 + y^2 + z^2 = 0 over A1",
        f"  fixed-point presentation torsion witnesses: {len(fixed)}"
        + (f" (first: {fixed[0]['witness']})" if fixed else ""),
        f"  envelope presentation torsion: {rep['envelope_presentation']['torsion']['torsion_detected']}",
        f"  (x/z)^2 + (y/z)^2 + 1 = 0 exactly: {rep['relation_exact']['verified']}",
    ])
    return rep["ok"], rep, text


def cmd_ideal_compare(cfg: RunConfig, args):
    rs = root_system(cfg.cartan_type, cfg.rank)
    ring = make_ring("torus", rs)
    window = cfg.window(Window(2, 2, 1))
    rep = check_sign_in_cap(ring, window)
    sign = ideal_sign(ring, window)
    cap = ideal_cap(ring, window)
    reverse, witness = cap.span.issubspace(sign.span)
    result = {
        "inclusion": {k: v for k, v in rep.items() if k != "certificates"},
        "certificates": rep["certificates"] if args.certificates else len(rep["certificates"]),
        "experiment": {
            "question": "is the intersection ideal window contained in the sign ideal window?",
            "cap_in_sign": reverse,
            "separating_candidate": witness,
            "note": "window-level observation only; no expected outcome is claimed",
        },
    }
    text = "\n".join([
        f"{rs.name}, window {window.to_json()}",
        f"  sign elements: {rep['sign_elements']}, all in I_cap window: {rep['ok']}",
        f"  I_cap window inside I_sign window: {reverse}",
    ])
    return rep["ok"], result, text


def cmd_check(cfg: RunConfig, args):
    from .checks import run_suite

    types = [(cfg.cartan_type, cfg.rank)] if args.type_given else None
    if types:
        root_system(*types[0])
    results = run_suite(args.suite, types)
    ok = all(r.ok for r in results)
    text = "\n".join(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + ("" if r.ok else f"  witness: {jsonable(r.witness)}")
                     for r in results)
    return ok, {"suite": args.suite, "checks": results}, text


COMMANDS = {
    "root-data": cmd_root_data,
    "demazure": cmd_demazure,
    "envelope": cmd_envelope,
    "centralizer": cmd_centralizer,
    "counterexample": cmd_counterexample,
    "ideal-compare": cmd_ideal_compare,
    "check": cmd_check,
}

# configurations exercised by the determinism check
DETERMINISM_RUNS = (
    ("root-data", "--type", "A", "--rank", "2"),
    ("demazure", "--type", "A", "--rank", "2", "--word", "121", "--expr", "a1^2*a2"),
    ("demazure", "--type", "A", "--rank", "1", "--ring", "torus", "--word", "1", "--expr", "t1"),
    ("envelope", "--ring", "torus", "--type", "A", "--rank", "1", "--degree", "3", "--height", "2"),
    ("centralizer", "--group", "sl2"),
    ("counterexample",),
    ("ideal-compare", "--type", "A", "--rank", "2"),
    ("check", "--suite", "rootsys"),
)


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="cartan_type", default=None, help="Cartan type letter (default A)")
    common.add_argument("--rank", type=int, default=None, help="rank (default 1)")
    common.add_argument("--degree", type=int, default=None, help="polynomial degree bound of the window")
    common.add_argument("--height", type=int, default=None, help="lattice height bound of the window")
    common.add_argument("--delta-power", type=int, default=None, help="Delta-power budget of the window")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="weylkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("root-data", parents=[common], help="root system and Weyl group data")
    p = sub.add_parser("demazure", parents=[common], help="apply a Demazure operator")
    p.add_argument("--ring", choices=("sym", "torus", "sphere"), default="sym")
    p.add_argument("--word", default="", help="word in simple reflections, e.g. 121 or 1,2,1")
    p.add_argument("--direct", action="store_true", help="use the alternating-sum formula for w0")
    p.add_argument("--expr", required=True)
    p = sub.add_parser("envelope", parents=[common], help="envelope of a ring on a window")
    p.add_argument("--presentation", default=None, help="JSON ring description")
    p.add_argument("--ring", choices=("sym", "torus", "sphere"), default="torus")
    p = sub.add_parser("centralizer", parents=[common], help="universal-centralizer presentation")
    p.add_argument("--group", required=True, help="sl2, sl3 (pgl2 is refused)")
    sub.add_parser("counterexample", parents=[common], help="the sphere example")
    p = sub.add_parser("ideal-compare", parents=[common], help="sign ideal versus intersection ideal")
    p.add_argument("--certificates", action="store_true", help="include every certificate")
    p = sub.add_parser("check", parents=[common], help="run a property suite")
    p.add_argument("--suite", default="all",
                   help="rootsys, nilhecke, envelope, ideals, centralizer, all or acceptance")
    return parser


def run(argv: list[str]) -> tuple[int, str]:
    """Run one command; return the exit code and the rendered report."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), ""
    args.type_given = args.cartan_type is not None or args.rank is not None
    config: dict = {}
    try:
        threads()
        cfg = RunConfig(
            cartan_type=(args.cartan_type or "A").upper(),
            rank=args.rank if args.rank is not None else 1,
            poly_degree_bound=args.degree,
            lattice_height_bound=args.height,
            delta_power=args.delta_power,
            seed=args.seed,
            output_format=args.format,
            output_path=args.output,
        )
        config = cfg.to_json()
        ok, result, text = COMMANDS[args.command](cfg, args)
        code = EXIT_OK if ok else EXIT_FAIL
        payload = envelope(args.command, config, result, ok)
    except (ExactnessError, NotDivisibleError) as err:
        code, text = EXIT_EXACT, f"exactness error: {err}"
        payload = envelope(args.command, config, None, False)
        payload["error"] = {"kind": "exactness", "message": str(err)}
    except INPUT_ERRORS as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else str(err)
        code, text = EXIT_INPUT, f"error: {msg}"
        payload = envelope(args.command, config, None, False)
        payload["error"] = {"kind": "input", "message": str(msg)}
    out = dumps(payload) if args.format == "json" else text + "\n"
    return code, out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, out = run(argv)
    dest = None
    if "--output" in argv:
        i = argv.index("--output")
        dest = argv[i + 1] if i + 1 < len(argv) else None
    if dest and out:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if code == EXIT_INPUT and out.startswith("{") and args_error(out):
        sys.stderr.write(args_error(out) + "\n")
    return code


def args_error(out: str) -> str | None:
    if out.startswith("error:"):
        return out.strip()
    try:
        data = json.loads(out)
    except ValueError:
        return None
    err = data.get("error")
    return f"error: {err['message']}" if err else None


if __name__ == "__main__":
    sys.exit(main())
