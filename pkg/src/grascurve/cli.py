"""Command-line front end: ``grascurve curve|section|ideal|enum|verify``.

Machine output is JSON on stdout with sorted keys.  Exit codes: 0 success,
1 a verify check failed, 2 usage or input error (with a JSON error object).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import checks
from .binform import split_cohomology
from .curves import (
    AxisLine,
    CurveFamily,
    NoVertex,
    curve_axis,
    curve_classify,
    curve_envelope,
    curve_in_section,
    curve_vertex,
)
from .errors import GrascurveError, UnknownCheck
from .exact import QQ, Subspace
from .ffenum import DEFAULT_BUDGET, OBJECT_NAMES, EnumSpec, enumerate_count, parse_object
from .grassmann import N, parse_covector
from .interp import SAMPLERS, vanishing_forms
from .sections import (
    PRESET_NAMES,
    SectionModel,
    normal_bundle_splitting,
    plane_fiber,
    section_preset,
    sigma31_planes_at,
    vertex_fiber,
)

H4_ENV = "GRASCURVE_Y2_H4"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_h4():
    raw = os.environ.get(H4_ENV)
    if not raw:
        return None
    try:
        return parse_covector(raw)
    except (ValueError, GrascurveError) as e:
        raise UsageError(f"{H4_ENV}: {e}") from None


def load_section(name: str | None, default: str = "Y6") -> SectionModel:
    name = name or default
    if name.upper() in PRESET_NAMES:
        return section_preset(name, h4=_env_h4())
    path = Path(name)
    if not path.exists():
        raise UsageError(f"--section must be one of {', '.join(PRESET_NAMES)} or a JSON file, got {name!r}")
    return SectionModel.from_json(_load_json(path))


def _load_json(source):
    """Parse a path or an inline JSON string."""
    text = str(source)
    try:
        if not text.lstrip().startswith(("{", "[", '"')) and Path(text).is_file():
            text = Path(text).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"malformed JSON input: {e}") from None


def _parse_subspace(source, dim: int | None = None) -> Subspace:
    data = _load_json(source)
    if data and not isinstance(data[0], list):
        data = [data]
    s = Subspace([[QQ(x) for x in r] for r in data], N, QQ)
    if dim is not None and s.dim != dim:
        raise UsageError(f"expected a {dim}-dimensional subspace, got dimension {s.dim}")
    return s


def _parse_point(source) -> list:
    data = _load_json(source)
    if not isinstance(data, list) or len(data) != N:
        raise UsageError(f"a point is a list of {N} rationals")
    return [QQ(x) for x in data]


# -- subcommands --

def cmd_curve(args) -> dict:
    curve = CurveFamily.from_json(_load_json(args.curve))
    if args.action == "classify":
        return curve_classify(curve).to_json()
    if args.action == "vertex":
        v = curve_vertex(curve)
        return {"vertex": None if v is NoVertex else v.to_json()}
    if args.action == "envelope":
        return {"envelope": curve_envelope(curve).to_json()}
    if args.action == "axis":
        ax = curve_axis(curve)
        if isinstance(ax, AxisLine):
            return {"axis": ax.line.to_json()}
        return {"cone_vertex": None if ax.vertex is NoVertex else ax.vertex.to_json()}
    if args.action == "member":
        sec = load_section(args.section)
        return {"section": sec.name, "member": curve_in_section(curve, sec)}
    raise UsageError(f"unknown curve action {args.action!r}")


def cmd_section(args) -> dict:
    sec = load_section(args.section)
    if args.action == "fiber-lines":
        return vertex_fiber(_parse_point(args.point), sec).to_json()
    if args.action == "plane-fiber":
        return plane_fiber(_parse_subspace(args.plane, 3), sec).to_json()
    if args.action == "sigma31":
        return sigma31_planes_at(_parse_point(args.point), sec).to_json()
    if args.action == "nbundle":
        v1 = _parse_subspace(args.point, 1)
        v3 = _parse_subspace(args.plane, 3)
        t = normal_bundle_splitting((v1, v3), sec)
        h0, h1 = split_cohomology(t)
        return {"split": list(t), "type": repr(t), "h0": h0, "h1": h1}
    raise UsageError(f"unknown section action {args.action!r}")


def cmd_ideal(args) -> dict:
    if args.locus not in SAMPLERS:
        raise UsageError(f"unknown locus {args.locus!r}; expected one of {', '.join(SAMPLERS)}")
    sampler = SAMPLERS[args.locus]()
    modulo = None
    if args.modulo_linear and args.degree > 1:
        modulo = vanishing_forms(sampler, 1, seed=args.seed)
    space = vanishing_forms(sampler, args.degree, modulo=modulo, seed=args.seed)
    out = space.to_json()
    out["locus"] = args.locus
    out["modulo_linear"] = modulo is not None
    return out


def cmd_enum(args) -> dict:
    sec = load_section(args.section)
    obj = parse_object(args.object, k=args.k, rank=args.rank, label=args.cycle, strategy=args.strategy)
    spec = EnumSpec(args.p, obj, sec)
    res = enumerate_count(spec, witnesses=args.witnesses, budget=args.budget, jobs=args.jobs,
                          max_witnesses=args.max_witnesses)
    out = res.to_json()
    out.update({"p": args.p, "object": args.object, "section": sec.name})
    return out


def cmd_verify(args) -> tuple[dict, int]:
    if args.all and args.ids:
        raise UsageError("give check ids or --all, not both")
    if not args.all and not args.ids:
        raise UsageError(f"give check ids or --all; known ids: {', '.join(checks.CHECK_IDS)}")
    report = checks.run_checks(args.ids or None, seed=args.seed, h4=_env_h4(), jobs=args.jobs)
    return report, 0 if report["ok"] else 1


# -- output --

def _pretty(data, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(f"{pad}- " + _pretty(v, indent + 1).lstrip() for v in data)
    return pad + _flat(data)


def _is_flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, dict) for x in v)


def _flat(v) -> str:
    return json.dumps(v, sort_keys=True, ensure_ascii=False) if isinstance(v, (list, dict)) else str(v)


def _verify_table(report) -> str:
    width = max(len(c["id"]) for c in report["checks"])
    rows = [f"{c['id']:<{width}}  {c['status'].upper():<4}  {c['description']}" for c in report["checks"]]
    rows.append(f"{'all':<{width}}  {'PASS' if report['ok'] else 'FAIL'}")
    return "\n".join(rows)


def emit(data, pretty: bool = False, verify: bool = False, stream=None):
    stream = stream or sys.stdout
    if pretty:
        stream.write((_verify_table(data) if verify else _pretty(data)) + "\n")
    else:
        stream.write(json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--section", help=f"preset ({', '.join(PRESET_NAMES)}) or JSON file of covectors")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")

    parser = _Parser(prog="grascurve", description="Lines, conics and cubics on linear sections of Gr(2,5).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("curve", parents=[common], help="classify a rational curve family")
    p.add_argument("action", choices=["classify", "vertex", "envelope", "axis", "member"])
    p.add_argument("--curve", required=True, help='JSON file or string {"rows": [[BinForm x5], [BinForm x5]]}')

    p = sub.add_parser("section", parents=[common], help="fibers and normal bundles on a section")
    p.add_argument("action", choices=["fiber-lines", "plane-fiber", "sigma31", "nbundle"])
    p.add_argument("--point", help="JSON list of 5 rationals")
    p.add_argument("--plane", help="JSON list of 3 row vectors")

    p = sub.add_parser("ideal", parents=[common], help="interpolate forms vanishing on a locus")
    p.add_argument("action", choices=["interpolate"])
    p.add_argument("--locus", required=True, choices=sorted(SAMPLERS))
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--modulo-linear", action="store_true", help="reduce modulo multiples of the linear forms")

    p = sub.add_parser("enum", parents=[common], help="count objects over GF(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--object", required=True, choices=OBJECT_NAMES)
    p.add_argument("--strategy", choices=["vertex", "planes", "flags"])
    p.add_argument("--k", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--cycle", help="Schubert label such as sigma21")
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--max-witnesses", type=int, default=100)

    p = sub.add_parser("verify", parents=[common], help="run the scripted checks")
    p.add_argument("ids", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true", help="list check ids and exit")
    return parser


def _require(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n} is required for {args.command} {args.action}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        code = 0
        if args.command == "verify":
            if args.list:
                emit({"checks": [{"id": c.id, "description": c.description} for c in checks.CHECKS]}, pretty)
                return 0
            data, code = cmd_verify(args)
            emit(data, pretty, verify=True)
            return code
        if args.command == "section":
            needs = {"fiber-lines": ("point",), "sigma31": ("point",), "plane-fiber": ("plane",),
                     "nbundle": ("point", "plane")}
            _require(args, *needs[args.action])
        handler = {"curve": cmd_curve, "section": cmd_section, "ideal": cmd_ideal, "enum": cmd_enum}[args.command]
        emit(handler(args), pretty)
        return code
    except UnknownCheck as e:
        return _fail(f"unknown check id {e.args[0]!r}; known ids: {', '.join(checks.CHECK_IDS)}",
                     "UnknownCheck", pretty)
    except UsageError as e:
        return _fail(str(e), "UsageError", pretty)
    except (GrascurveError, KeyError, ValueError, TypeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return _fail(str(msg), type(e).__name__, pretty)


def _fail(message: str, kind: str, pretty: bool) -> int:
    err = {"error": {"type": kind, "message": message}}
    if pretty:
        sys.stderr.write(f"error ({kind}): {message}\n")
    else:
        sys.stdout.write(json.dumps(err, sort_keys=True, ensure_ascii=False) + "\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
