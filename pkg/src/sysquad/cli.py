"""Command line front end.

Subcommands: generate a triangulated disk, square a based complex, verify a
complex file, emit the Property A CSV, or run the whole chain. Outputs are
deterministic for a fixed configuration and seed, independent of --jobs.

Exit status: 0 when every requested check passes, 1 on a failed check or
violated invariant (first certificate on stderr), 2 on usage or file errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .complexes import BasedComplex, Graph, SquareComplex
from .fileformat import ComplexFileError, format_complex, read_complex
from .generators import DiskSpec, triangulated_disk
from .metrics import all_pairs, vertex_order
from .propa import NonFlatIntervalError, property_a_report
from .quadric import (
    check_ball_isometry,
    check_flat_intervals,
    check_interval_isometry,
    check_quadrangle_condition,
    check_replacement_rule_A,
    check_replacement_rule_B,
)
from .reports import DEFAULT_CERT_CAP, CheckReport
from .squaring import check_quasi_isometry, squaring
from .systolic import (
    check_ball_neighbours,
    check_spheres_triangle_free,
    check_triangle_condition,
    verify_systolic,
)

SIMPLICIAL_RULES = ("systolic", "spheres", "neighbours", "triangle")
SQUARE_RULES = ("a", "b", "quad", "balls", "intervals", "flat")
_BASE_NEEDING = {"spheres", "neighbours", "triangle", "quad", "flat"}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    degree: int | None = None
    degrees: tuple[int, ...] | None = None
    radius: int = 0
    seed: int = 0
    n_max: int = 12
    rules: tuple[str, ...] | None = None
    cert_cap: int = DEFAULT_CERT_CAP
    jobs: int = 1
    exhaustive: bool = False


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _first_certificate_line(reports: list[CheckReport]) -> str | None:
    for rep in reports:
        if rep.passed:
            continue
        if rep.counterexamples:
            c = rep.counterexamples[0]
            vs = " ".join(str(v) for v in c.vertices)
            tail = f" :: {c.info}" if c.info else ""
            return f"{rep.name}: {c.kind} {vs}{tail}"
        return f"{rep.name}: failed with {rep.violations} violations"
    return None


def _disk_spec(config: RunConfig) -> DiskSpec:
    if (config.degree is None) == (config.degrees is None):
        raise ValueError("exactly one of --degree and --degrees is required")
    if config.degree is not None:
        degrees: int | frozenset[int] = config.degree
    else:
        degrees = frozenset(config.degrees or ())
    return DiskSpec(radius=config.radius, degrees=degrees, seed=config.seed)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _run_tasks(tasks, jobs: int) -> list[CheckReport]:
    """Run report factories, preserving task order regardless of --jobs."""
    if jobs <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _exhaustive_pairs(g: Graph) -> list[tuple[int, int]]:
    verts = sorted(g.vertices)
    return [(u, v) for i, u in enumerate(verts) for v in verts[i:]]


def _square_tasks(sq: SquareComplex, base: int | None, config: RunConfig,
                  selected: tuple[str, ...]):
    """(name, factory) pairs for the quadric-side rules, in canonical order."""
    cap = config.cert_cap
    dist = None
    if "balls" in selected or "intervals" in selected:
        dist = all_pairs(sq.graph, vertex_order(sq.graph))
    tasks = []
    for name in SQUARE_RULES:
        if name not in selected:
            continue
        if name == "a":
            tasks.append((name, lambda: check_replacement_rule_A(sq, cap)))
        elif name == "b":
            tasks.append((name, lambda: check_replacement_rule_B(sq, cap)))
        elif name == "quad":
            bb = BasedComplex(sq, base)
            tasks.append((name, lambda bb=bb: check_quadrangle_condition(bb, cap)))
        elif name == "balls":
            tasks.append((name, lambda: check_ball_isometry(sq, cap, dist=dist)))
        elif name == "intervals":
            if config.exhaustive:
                pairs = _exhaustive_pairs(sq.graph)
                tasks.append((name, lambda pairs=pairs: check_interval_isometry(
                    sq, pairs=pairs, cap=cap, seed=config.seed, dist=dist)))
            else:
                bb = BasedComplex(sq, base)
                tasks.append((name, lambda bb=bb: check_interval_isometry(
                    bb, cap=cap, seed=config.seed, dist=dist)))
        elif name == "flat":
            bb = BasedComplex(sq, base)
            tasks.append((name, lambda bb=bb: check_flat_intervals(bb, cap)))
    return tasks


def _validate_rules(selected: tuple[str, ...], allowed: tuple[str, ...],
                    kind: str) -> str | None:
    for name in selected:
        if name not in SIMPLICIAL_RULES and name not in SQUARE_RULES:
            return f"unknown rule {name!r}"
        if name not in allowed:
            return f"rule {name!r} does not apply to a {kind} complex"
    return None


def _needs_base(selected: tuple[str, ...], exhaustive: bool) -> set[str]:
    need = {n for n in selected if n in _BASE_NEEDING}
    if "intervals" in selected and not exhaustive:
        need.add("intervals")
    return need


def _write_report_files(reports: list[CheckReport], output: str | None) -> None:
    if output is None:
        return
    text = "\n".join(rep.to_text() for rep in reports)
    Path(output).write_text(text, encoding="utf-8")
    csv_path = Path(str(output) + ".csv")
    csv_path.write_text(_certificates_csv(reports), encoding="utf-8")


def _write_chain_files(reports: list[CheckReport], outdir: Path) -> None:
    text = "\n".join(rep.to_text() for rep in reports)
    (outdir / "reports.txt").write_text(text, encoding="utf-8")
    (outdir / "certificates.csv").write_text(
        _certificates_csv(reports), encoding="utf-8"
    )


def _certificates_csv(reports: list[CheckReport]) -> str:
    lines = ["check,passed,kind,vertices,info"]
    for rep in reports:
        for row in rep.to_csv_rows():
            lines.append(",".join(_csv_field(x) for x in row))
    return "\n".join(lines) + "\n"


def _csv_field(value: str) -> str:
    if any(ch in value for ch in ",\"\n"):
        return '"' + value.replace('"', '""') + '"'
    return value


def _finish(reports: list[CheckReport], output: str | None) -> int:
    for rep in reports:
        sys.stdout.write(rep.to_text())
        sys.stdout.write("\n")
    _write_report_files(reports, output)
    if all(rep.passed for rep in reports):
        return 0
    line = _first_certificate_line(reports)
    if line:
        print(line, file=sys.stderr)
    return 1


def _cmd_generate(config: RunConfig) -> int:
    disk = triangulated_disk(_disk_spec(config))
    _emit(format_complex(disk.complex, disk.center), config.output)
    return 0


def _cmd_square(config: RunConfig) -> int:
    if config.input is None:
        return _usage_error("square needs --input")
    parsed = read_complex(config.input)
    if parsed.kind == "square":
        return _usage_error("input already carries squares")
    if parsed.basepoint is None:
        return _usage_error("input file has no base record")
    b = BasedComplex(parsed.to_simplicial(), parsed.basepoint)
    result = squaring(b)
    _emit(
        format_complex(result.squared.complex, result.squared.basepoint),
        config.output,
    )
    return 0


def _cmd_verify(config: RunConfig) -> int:
    if config.input is None:
        return _usage_error("verify needs --input")
    parsed = read_complex(config.input)
    cap = config.cert_cap
    if parsed.kind == "square":
        allowed = SQUARE_RULES
    else:
        allowed = SIMPLICIAL_RULES
    explicit = config.rules is not None
    selected = config.rules if explicit else allowed
    problem = _validate_rules(selected, allowed, parsed.kind)
    if problem:
        return _usage_error(problem)
    base = parsed.basepoint
    need_base = _needs_base(selected, config.exhaustive)
    skipped: list[str] = []
    if base is None and need_base:
        if explicit:
            return _usage_error(
                f"rules {sorted(need_base)} need a base record in the input"
            )
        selected = tuple(n for n in selected if n not in need_base)
        skipped = sorted(need_base)

    if parsed.kind == "square":
        sq = parsed.to_square()
        tasks = _square_tasks(sq, base, config, selected)
    else:
        c = parsed.to_simplicial()
        tasks = []
        if "systolic" in selected:
            tasks.append(("systolic", lambda: verify_systolic(c, cap)))
        if base is not None:
            bb = BasedComplex(c, base)
            if "spheres" in selected:
                tasks.append(("spheres", lambda: check_spheres_triangle_free(bb, cap)))
            if "neighbours" in selected:
                tasks.append(("neighbours", lambda: check_ball_neighbours(bb, cap)))
            if "triangle" in selected:
                tasks.append(("triangle", lambda: check_triangle_condition(bb, cap)))

    reports = _run_tasks([t for _, t in tasks], config.jobs)
    for name in skipped:
        sys.stdout.write(f"skipped {name} (no basepoint in input)\n")
    return _finish(reports, config.output)


def _cmd_propa(config: RunConfig) -> int:
    if config.input is None:
        return _usage_error("propa needs --input")
    parsed = read_complex(config.input)
    if parsed.kind == "simplicial":
        return _usage_error("propa needs a square complex (run square first)")
    if parsed.basepoint is None:
        return _usage_error("input file has no base record")
    b = BasedComplex(parsed.to_square(), parsed.basepoint)
    report = property_a_report(b, config.n_max, config.cert_cap)
    _emit("\n".join(report.csv_lines()) + "\n", config.output)
    if not report.passed:
        line = _first_certificate_line([report.check])
        if line:
            print(line, file=sys.stderr)
        return 1
    return 0


def _cmd_all(config: RunConfig) -> int:
    if config.output is None:
        return _usage_error("all needs --output DIR")
    outdir = Path(config.output)
    outdir.mkdir(parents=True, exist_ok=True)
    cap = config.cert_cap

    disk = triangulated_disk(_disk_spec(config))
    (outdir / "disk.complex").write_text(
        format_complex(disk.complex, disk.center), encoding="utf-8"
    )
    b = BasedComplex(disk.complex, disk.center)

    selected = config.rules if config.rules is not None else (
        SIMPLICIAL_RULES + SQUARE_RULES
    )
    problem = _validate_rules(selected, SIMPLICIAL_RULES + SQUARE_RULES, "any")
    if problem:
        return _usage_error(problem)

    simp_tasks = []
    if "systolic" in selected:
        simp_tasks.append(lambda: verify_systolic(disk.complex, cap))
    if "spheres" in selected:
        simp_tasks.append(lambda: check_spheres_triangle_free(b, cap))
    if "neighbours" in selected:
        simp_tasks.append(lambda: check_ball_neighbours(b, cap))
    if "triangle" in selected:
        simp_tasks.append(lambda: check_triangle_condition(b, cap))
    reports = _run_tasks(simp_tasks, config.jobs)

    if not all(rep.passed for rep in reports):
        _write_chain_files(reports, outdir)
        for rep in reports:
            print(f"{rep.name}: {'pass' if rep.passed else 'FAIL'}")
        line = _first_certificate_line(reports)
        if line:
            print(line, file=sys.stderr)
        return 1

    result = squaring(b, precheck=False)
    (outdir / "squared.complex").write_text(
        format_complex(result.squared.complex, result.squared.basepoint),
        encoding="utf-8",
    )

    reports.append(check_quasi_isometry(result, cap))
    sq = result.squared.complex
    assert isinstance(sq, SquareComplex)
    square_selected = tuple(n for n in selected if n in SQUARE_RULES)
    tasks = _square_tasks(sq, result.squared.basepoint, config, square_selected)
    reports.extend(_run_tasks([t for _, t in tasks], config.jobs))

    pa = property_a_report(result.squared, config.n_max, cap)
    (outdir / "propa.csv").write_text(
        "\n".join(pa.csv_lines()) + "\n", encoding="utf-8"
    )
    reports.append(pa.check)

    _write_chain_files(reports, outdir)
    for rep in reports:
        print(f"{rep.name}: {'pass' if rep.passed else 'FAIL'}")
    if all(rep.passed for rep in reports):
        return 0
    line = _first_certificate_line(reports)
    if line:
        print(line, file=sys.stderr)
    return 1


_HANDLERS = {
    "generate": _cmd_generate,
    "square": _cmd_square,
    "verify": _cmd_verify,
    "propa": _cmd_propa,
    "all": _cmd_all,
}


def run(config: RunConfig) -> int:
    handler = _HANDLERS.get(config.command)
    if handler is None:
        return _usage_error(f"unknown command {config.command!r}")
    try:
        return handler(config)
    except ComplexFileError as exc:
        print(f"{config.input}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except NonFlatIntervalError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1


def _parse_degrees(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.replace(" ", "").split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty degree list")
    return values


def _add_generation_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degree", type=int, help="uniform interior degree")
    group.add_argument(
        "--degrees", type=_parse_degrees, metavar="LIST",
        help="comma separated degree set; each interior vertex draws from it",
    )
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)


def _add_check_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--rules", type=lambda s: tuple(x for x in s.replace(" ", "").split(",") if x),
        metavar="LIST", default=None,
        help="subset of checks: " + ",".join(SIMPLICIAL_RULES + SQUARE_RULES),
    )
    p.add_argument("--cert-cap", type=int, default=DEFAULT_CERT_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--exhaustive", action="store_true",
        help="interval isometry over all vertex pairs instead of the default sample",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sysquad",
        description="Systolic disk generation, squaring, verification and "
        "Property A reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a triangulated disk")
    _add_generation_flags(p)
    p.add_argument("--output", help="destination file (default stdout)")

    p = sub.add_parser("square", help="square a based simplicial complex file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="destination file (default stdout)")

    p = sub.add_parser("verify", help="run checks against a complex file")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_check_flags(p)
    p.add_argument(
        "--output",
        help="write the text report here and certificates to <PATH>.csv",
    )

    p = sub.add_parser("propa", help="emit the Property A CSV for a squared file")
    p.add_argument("--input", required=True)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--cert-cap", type=int, default=DEFAULT_CERT_CAP)
    p.add_argument("--output", help="CSV destination (default stdout)")

    p = sub.add_parser(
        "all", help="generate, verify, square, verify again, report"
    )
    _add_generation_flags(p)
    p.add_argument("--n-max", type=int, default=12)
    _add_check_flags(p)
    p.add_argument("--output", required=True, help="output directory")

    return parser


def _config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        output=getattr(ns, "output", None),
        degree=getattr(ns, "degree", None),
        degrees=getattr(ns, "degrees", None),
        radius=getattr(ns, "radius", 0),
        seed=getattr(ns, "seed", 0),
        n_max=getattr(ns, "n_max", 12),
        rules=getattr(ns, "rules", None),
        cert_cap=getattr(ns, "cert_cap", DEFAULT_CERT_CAP),
        jobs=getattr(ns, "jobs", 1),
        exhaustive=getattr(ns, "exhaustive", False),
    )


def main(argv: list[str] | None = None) -> int:
    return run(_config_from_namespace(_build_parser().parse_args(argv)))


if __name__ == "__main__":
    sys.exit(main())
