"""Command-line front end.

Commands: level, keel, chain, bounds, example-high, check.  Inputs are
inline JSON or a path to a JSON file; reports are compact JSON (exact
fraction strings, never floats), plain text, or SVG for polygon chains.
Exit codes: 0 success, 1 malformed input (the diagnostic names the
offending field), 2 oracle or invariant failure when checks are on.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import chain as chain_mod
from . import oracles, polygon, render, surfaces
from .errors import AdjointKeelError

ENV_SEED = "ADJOINT_KEEL_SEED"


@dataclass(frozen=True)
class RunConfig:
    command: str
    payload: dict
    output_format: str
    oracle: bool
    seed: int


class InputError(ValueError):
    """Raised with a message naming the offending input field."""


def _frac(x: Fraction) -> str:
    return str(x)


def _load_json(raw: str, field: str) -> dict:
    text = raw.strip()
    if not text.startswith("{"):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise InputError(f"{field}: cannot read file {raw!r} ({exc})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{field}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InputError(f"{field}: expected a JSON object")
    return data


def _parse_polygon(data: dict) -> polygon.LatticePolygon:
    if "vertices" not in data:
        raise InputError("polygon.vertices: missing")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not vertices:
        raise InputError("polygon.vertices: expected a nonempty list of [x, y] pairs")
    for v in vertices:
        if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) for c in v)):
            raise InputError(f"polygon.vertices: {v!r} is not an integer pair")
    try:
        return polygon.normalize([tuple(v) for v in vertices])
    except AdjointKeelError as exc:
        raise InputError(f"polygon.vertices: {exc}") from exc


def _int_field(data: dict, name: str) -> int:
    if name not in data:
        raise InputError(f"surface.{name}: missing")
    value = data[name]
    if not isinstance(value, int):
        raise InputError(f"surface.{name}: expected an integer, got {value!r}")
    return value


def _vector(data: dict, name: str, length: int | None = None) -> tuple[int, ...]:
    if name not in data:
        raise InputError(f"surface.{name}: missing")
    value = data[name]
    if not (isinstance(value, list) and all(isinstance(c, int) for c in value)):
        raise InputError(f"surface.{name}: expected a list of integers")
    if length is not None and len(value) != length:
        raise InputError(f"surface.{name}: expected {length} entries, got {len(value)}")
    return tuple(value)


def _parse_surface(data: dict) -> tuple[surfaces.SurfaceModel, surfaces.DivisorClass]:
    if "model" in data:
        model_name = data["model"]
        if model_name == "plane_blowup":
            r = _int_field(data, "r")
            try:
                model = surfaces.plane_blowup(r)
            except AdjointKeelError as exc:
                raise InputError(f"surface.r: {exc}") from exc
            vec = _vector(data, "D", r + 1)
            return model, surfaces.from_multiplicities(model, vec[0], vec[1:])
        if model_name == "hirzebruch":
            n = _int_field(data, "n")
            if n < 0:
                raise InputError("surface.n: must be nonnegative")
            model = surfaces.hirzebruch(n)
            return model, model.divisor(_vector(data, "D", 2))
        factories = {
            "quadric": surfaces.quadric,
            "quadric_rank1": surfaces.quadric_rank1,
            "quadric_deg2_blowup": surfaces.quadric_deg2_blowup,
            "plane_deg4_blowup": surfaces.plane_deg4_blowup,
        }
        if model_name in factories:
            model = factories[model_name]()
            return model, model.divisor(_vector(data, "D", model.rank))
        raise InputError(f"surface.model: unknown model {model_name!r}")
    if "gram" in data:
        gram = data["gram"]
        if not (isinstance(gram, list) and all(isinstance(row, list) for row in gram)):
            raise InputError("surface.gram: expected a list of rows")
        rank = len(gram)
        try:
            model = surfaces.custom_model(
                gram,
                _vector(data, "K", rank),
                [list(g) for g in data.get("effective_generators", [])],
                [list(e) for e in data.get("contractibles", [])],
            )
        except (ValueError, AdjointKeelError) as exc:
            raise InputError(f"surface.gram: {exc}") from exc
        return model, model.divisor(_vector(data, "D", rank))
    raise InputError("surface.model: missing (and no custom gram given)")


def _display_class(d: surfaces.DivisorClass) -> list[int]:
    if d.surface.kind == "plane_blowup":
        return list(surfaces.multiplicities(d))
    return list(d.coeffs)


def _vertex_strings(region: polygon.RationalPolygon) -> list[list[str]]:
    return [[_frac(x), _frac(y)] for x, y in region.vertices]


# ---------------------------------------------------------------------------
# Reports


def _polygon_level_report(poly, cfg: RunConfig) -> tuple[dict, list[str]]:
    inv = polygon.level_keel(poly)
    report = {"level": _frac(inv.level), "keel": _frac(inv.keel)}
    failures = []
    if cfg.oracle:
        q_cap = max(24, inv.denominator)
        probe = oracles.polygon_level_oracle(poly, q_cap)
        checks = {"level_oracle": _frac(probe), "oracle_q_max": q_cap, "seed": cfg.seed}
        if probe != inv.level:
            failures.append(f"level oracle disagrees: {probe} vs {inv.level}")
        report["checks"] = checks
    return report, failures


def _polygon_chain_report(poly, cfg: RunConfig) -> tuple[dict, list[str]]:
    inv = polygon.level_keel(poly)
    ch = polygon.polygon_adjoint_chain(poly)
    report = {
        "level": _frac(inv.level),
        "keel": _frac(inv.keel),
        "optimal_face": _vertex_strings(inv.optimal_face),
        "chain": [
            {"shape": member.shape.value, "vertices": _vertex_strings(member)}
            for member in ch.members
        ],
        "terminal_case": ch.terminal_case,
    }
    failures = []
    if cfg.oracle:
        q_cap = max(24, inv.denominator)
        probe = oracles.polygon_level_oracle(poly, q_cap)
        if probe != inv.level:
            failures.append(f"level oracle disagrees: {probe} vs {inv.level}")
        report["checks"] = {"level_oracle": _frac(probe), "seed": cfg.seed}
    return report, failures


def _surface_level_report(model, d, cfg: RunConfig) -> tuple[dict, list[str]]:
    level, keel = chain_mod.level_keel_divisor(model, d)
    report = {"level": _frac(level), "keel": _frac(keel)}
    failures = []
    if cfg.oracle:
        probe = oracles.divisor_level_oracle(model, d, 12)
        report["checks"] = {"level_oracle": _frac(probe), "seed": cfg.seed}
        if probe != level:
            failures.append(f"level oracle disagrees: {probe} vs {level}")
    return report, failures


def _surface_chain_report(model, d, cfg: RunConfig) -> tuple[dict, list[str]]:
    res = chain_mod.adjoint_chain(model, d)
    report = {
        "level": _frac(res.level),
        "keel": _frac(res.keel),
        "a": res.a,
        "endpoint_case": res.endpoint_case,
        "steps": [
            {
                "surface": step.surface.label(),
                "divisor": _display_class(step.divisor),
                "contracted": [_display_class(c) for c in step.contracted],
            }
            for step in res.steps
        ],
    }
    failures = []
    if cfg.oracle:
        probe = oracles.divisor_level_oracle(model, d, 12)
        report["checks"] = {"level_oracle": _frac(probe), "seed": cfg.seed}
        if probe != res.level:
            failures.append(f"level oracle disagrees: {probe} vs {res.level}")
    return report, failures


def _bounds_report(model, d, cfg: RunConfig) -> tuple[dict, list[str]]:
    bounds = chain_mod.pdeg_bounds(model, d)
    report = {
        "level": _frac(bounds.level),
        "keel": _frac(bounds.keel),
        "lower": _frac(bounds.lower),
        "upper": _frac(bounds.upper),
        "constructive_upper": (
            str(bounds.constructive_upper) if bounds.constructive_upper is not None else None
        ),
    }
    failures = []
    if cfg.oracle:
        probe = oracles.divisor_level_oracle(model, d, 12)
        checks = {"level_oracle": _frac(probe), "seed": cfg.seed}
        if probe != bounds.level:
            failures.append(f"level oracle disagrees: {probe} vs {bounds.level}")
        if bounds.constructive_upper is not None and not (
            bounds.lower <= bounds.constructive_upper <= bounds.upper
        ):
            failures.append("sandwich violated")
        report["checks"] = checks
    return report, failures


def _polygon_bounds_report(poly, cfg: RunConfig) -> tuple[dict, list[str]]:
    inv = polygon.level_keel(poly)
    lower = 3 * inv.level + inv.keel
    upper = 6 * inv.level + 2 * inv.keel
    report = {
        "level": _frac(inv.level),
        "keel": _frac(inv.keel),
        "lower": _frac(lower),
        "upper": _frac(upper),
        "constructive_upper": None,
    }
    failures = []
    if cfg.oracle:
        probe = oracles.polygon_level_oracle(poly, max(24, inv.denominator))
        report["checks"] = {"level_oracle": _frac(probe), "seed": cfg.seed}
        if probe != inv.level:
            failures.append(f"level oracle disagrees: {probe} vs {inv.level}")
    return report, failures


def _family_report(n: int) -> dict:
    rep = chain_mod.high_degree_family_report(n)
    return {
        "level": _frac(rep.level),
        "keel": _frac(rep.keel),
        "lower": _frac(rep.lower),
        "param_degree": rep.parametrization_degree,
        "sandwich": "ok" if rep.sandwich_ok else "violated",
    }


def _as_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_text(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key} = {json.dumps(value, separators=(',', ':'))}")
        else:
            lines.append(f"{indent}{key} = {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# The check battery


def _run_check(cfg: RunConfig) -> tuple[list[str], list[str]]:
    passed: list[str] = []
    failed: list[str] = []

    def record(name: str, ok: bool, detail: str = ""):
        (passed if ok else failed).append(name if ok else f"{name}: {detail}")

    try:
        ok = True
        for n in range(1, 13):
            tri = polygon.normalize([(0, 0), (n, 0), (0, n)])
            inv = polygon.level_keel(tri)
            ok = ok and inv.level == Fraction(n, 3) and inv.keel == 0
        record("triangle levels n=1..12", ok)
    except Exception as exc:  # pragma: no cover - battery guard
        record("triangle levels n=1..12", False, repr(exc))

    try:
        ok = True
        for m in range(1, 7):
            for n in range(m, 7):
                rect = polygon.normalize([(0, 0), (n, 0), (n, m), (0, m)])
                inv = polygon.level_keel(rect)
                ok = ok and inv.level == Fraction(m, 2) and inv.keel == n - m
        record("rectangle levels m<=n<=6", ok)
    except Exception as exc:  # pragma: no cover
        record("rectangle levels m<=n<=6", False, repr(exc))

    try:
        ok = True
        for n in range(1, 10):
            p2 = surfaces.plane_blowup(0)
            level, keel = chain_mod.level_keel_divisor(p2, p2.divisor((n,)))
            ok = ok and level == Fraction(n, 3) and keel == 0
        q = surfaces.quadric()
        for m in range(1, 6):
            for n in range(m, 7):
                level, keel = chain_mod.level_keel_divisor(q, q.divisor((m, n)))
                ok = ok and level == Fraction(m, 2) and keel == n - m
        record("chain battery", ok)
    except Exception as exc:  # pragma: no cover
        record("chain battery", False, repr(exc))

    try:
        ok = True
        for n in (5, 7, 9):
            rep = chain_mod.high_degree_family_report(n)
            ok = (
                ok
                and rep.level == n + Fraction(1, 2)
                and rep.keel == Fraction(2 * n * n - 5 * n - 5, 4)
                and rep.sandwich_ok
            )
        record("high-degree family n=5,7,9", ok)
    except Exception as exc:  # pragma: no cover
        record("high-degree family n=5,7,9", False, repr(exc))

    try:
        counts = [len(surfaces.neg_one_classes(surfaces.plane_blowup(r))) for r in range(1, 7)]
        record("(-1)-class counts r<=6", counts == [1, 3, 6, 10, 16, 27])
    except Exception as exc:  # pragma: no cover
        record("(-1)-class counts r<=6", False, repr(exc))

    try:
        hexagon = polygon.normalize([(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2)])
        pb3 = surfaces.plane_blowup(3)
        lhs = polygon.level_keel(hexagon)
        rhs = chain_mod.level_keel_divisor(
            pb3, surfaces.from_multiplicities(pb3, 3, (1, 1, 1))
        )
        square = polygon.normalize([(0, 0), (2, 0), (2, 2), (0, 2)])
        q = surfaces.quadric()
        lhs2 = polygon.level_keel(square)
        rhs2 = chain_mod.level_keel_divisor(q, q.divisor((2, 2)))
        record(
            "cross-backend pairs",
            (lhs.level, lhs.keel) == rhs and (lhs2.level, lhs2.keel) == rhs2,
        )
    except Exception as exc:  # pragma: no cover
        record("cross-backend pairs", False, repr(exc))

    try:
        ok = True
        for vertices in (
            [(0, 0), (6, 0), (0, 6)],
            [(0, 0), (5, 0), (5, 3), (0, 3)],
            [(0, 0), (6, 0), (6, 4), (0, 4)],
        ):
            poly = polygon.normalize(vertices)
            inv = polygon.level_keel(poly)
            ok = ok and oracles.polygon_level_oracle(poly, 24) == inv.level
        pb2 = surfaces.plane_blowup(2)
        for d, mults in ((1, (1, 1)), (2, (1, 1)), (3, (2, 2))):
            cls = surfaces.from_multiplicities(pb2, d, mults)
            ok = ok and surfaces.is_effective(cls) == oracles.effectivity_oracle(
                pb2, cls, cfg.seed
            )
        record("oracle spot checks", ok)
    except Exception as exc:  # pragma: no cover
        record("oracle spot checks", False, repr(exc))

    return passed, failed


# ---------------------------------------------------------------------------
# Entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjoint-keel",
        description="Exact level/keel invariants of rational surfaces and "
        "linear bounds on the parametric degree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, polygon_input=True, surface_input=True):
        if polygon_input:
            p.add_argument("--polygon", help="inline JSON or path: {\"vertices\": [[x,y],...]}")
        if surface_input:
            p.add_argument("--surface", help="inline JSON or path: {\"model\": ..., \"D\": [...]}")
        p.add_argument(
            "--format",
            dest="output_format",
            choices=("json", "text", "svg"),
            default="json",
        )
        p.add_argument("--oracle", action="store_true", help="run independent checks")
        p.add_argument("--seed", type=int, default=None, help="oracle sampling seed")

    for name in ("level", "keel", "chain", "bounds"):
        add_common(sub.add_parser(name))
    high = sub.add_parser("example-high")
    high.add_argument("--n", type=int, required=True)
    high.add_argument(
        "--format", dest="output_format", choices=("json", "text"), default="json"
    )
    high.add_argument("--oracle", action="store_true")
    high.add_argument("--seed", type=int, default=None)
    chk = sub.add_parser("check")
    chk.add_argument(
        "--format", dest="output_format", choices=("json", "text"), default="text"
    )
    chk.add_argument("--oracle", action="store_true")
    chk.add_argument("--seed", type=int, default=None)
    return parser


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"{ENV_SEED}: not an integer: {env!r}") from exc
    return oracles.DEFAULT_SEED


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _resolve_seed(args.seed)
        cfg = RunConfig(
            args.command,
            {},
            args.output_format,
            args.oracle,
            seed,
        )

        if args.command == "check":
            passed, failed = _run_check(cfg)
            if cfg.output_format == "json":
                print(
                    json.dumps(
                        {"passed": passed, "failed": failed}, separators=(",", ":")
                    )
                )
            else:
                for name in passed:
                    print(f"PASS {name}")
                for name in failed:
                    print(f"FAIL {name}")
            return 2 if failed else 0

        if args.command == "example-high":
            report = _family_report(args.n)
            failures = [] if report["sandwich"] == "ok" else ["sandwich violated"]
            return _emit(report, failures, cfg)

        got_polygon = getattr(args, "polygon", None)
        got_surface = getattr(args, "surface", None)
        if (got_polygon is None) == (got_surface is None):
            raise InputError("input: give exactly one of --polygon or --surface")

        if got_polygon is not None:
            poly = _parse_polygon(_load_json(got_polygon, "polygon"))
            if args.command in ("level", "keel"):
                report, failures = _polygon_level_report(poly, cfg)
            elif args.command == "chain":
                if cfg.output_format == "svg":
                    ch = polygon.polygon_adjoint_chain(poly)
                    sys.stdout.write(render.render_chain_svg(ch))
                    return 0
                report, failures = _polygon_chain_report(poly, cfg)
            else:
                report, failures = _polygon_bounds_report(poly, cfg)
        else:
            if cfg.output_format == "svg":
                raise InputError("format: svg output is only valid for polygon inputs")
            model, d = _parse_surface(_load_json(got_surface, "surface"))
            if args.command in ("level", "keel"):
                report, failures = _surface_level_report(model, d, cfg)
            elif args.command == "chain":
                report, failures = _surface_chain_report(model, d, cfg)
            else:
                report, failures = _bounds_report(model, d, cfg)
        return _emit(report, failures, cfg)

    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AdjointKeelError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 1


def _emit(report: dict, failures: list[str], cfg: RunConfig) -> int:
    if cfg.output_format == "text":
        print(_as_text(report))
    else:
        print(json.dumps(report, separators=(",", ":")))
    if failures:
        for failure in failures:
            print(f"check failed: {failure}", file=sys.stderr)
        return 2
    return 0


def entry():  # pragma: no cover - console script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
