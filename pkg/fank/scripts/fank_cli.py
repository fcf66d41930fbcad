#!/usr/bin/env python3
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from fank import catalog
from fank.classify import classify
from fank.errors import (
    FankError,
    ImproperSplitting,
    IncompatiblePair,
    InputError,
    InvariantViolation,
)
from fank.geometry.cone import intersect
from fank.geometry.fan import (
    Fan,
    is_complete,
    is_simplicial,
    is_smooth_fan,
    singularity_report,
    support_function,
)
from fank.geometry.planar import clump_decomposition, splitting_at
from fank.ideals import LatticeIdeal, cofactors, ideal_leq, reduce
from fank.io.fan_reader import parse_fan_file
from fank.io.plp_reader import (
    PlpFileReader,
    entry_values,
    format_plp,
    plp_from_file,
    resolve_fan_path,
)
from fank.laurent import LaurentPoly, format_laurent, parse_laurent
from fank.piecewise import (
    PiecewisePoly,
    clump_boundary_preimage,
    complete_2d_preimage,
    cone_boundary_preimage,
    extend_over_smooth_fan,
)
from fank.records import Outcome, PlpFile, Report

LOGGER = logging.getLogger("fank")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

EXIT_OK = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


def load_fan(source: str, r: int = 1) -> Fan:
    """A fan file path, or the name of a bundled example."""
    if Path(source).exists():
        return parse_fan_file(source)
    if source in catalog.CATALOG:
        if catalog.entry(source).parametric and r < 1:
            raise InputError(f"--r must be >= 1, got {r}")
        return catalog.build(source, r)
    raise FileNotFoundError(f"Fan file not found: {source}")


def property_flags(fan: Fan, functionals: Any = False) -> Dict[str, Optional[bool]]:
    """Flags of ``fan``; ``functionals`` is a support_function result when already known."""
    report = singularity_report(fan)
    complete = is_complete(fan)
    if complete and functionals is False:
        functionals = support_function(fan)
    return {
        "smooth": is_smooth_fan(fan),
        "simplicial": is_simplicial(fan),
        "complete": complete,
        # polytopality is only decided for complete fans
        "polytopal": functionals is not None if complete else None,
        "distant": report.has_distant_singular_cones,
        "isolated": report.has_isolated_singular_cones,
    }


def _fan_fields(fan: Fan) -> Dict[str, Any]:
    return {"dim": fan.n, "ray_count": len(fan.ray_names), "cone_count": len(fan.cone_names)}


def _singular_intersections(fan: Fan) -> List[Dict[str, Any]]:
    # every intersection of a singular maximal cone with another maximal cone
    rows = []
    for name, key in zip(fan.cone_names, fan.cone_rays):
        if fan.cone(key).is_smooth:
            continue
        for other, other_key in zip(fan.cone_names, fan.cone_rays):
            if other == name:
                continue
            face = intersect(fan.cone(key), fan.cone(other_key))
            rows.append({
                "cones": [name, other],
                "face": fan.label(fan.names_of(face.rays)),
                "dim": face.dim,
                "smooth": face.is_smooth,
            })
    return rows


def cmd_check(fan: Fan, source: str) -> Report:
    start = time.perf_counter()
    functionals = support_function(fan) if is_complete(fan) else None
    flags = property_flags(fan, functionals)
    certificates: Dict[str, Any] = {
        "cone_smooth": {name: fan.cone(key).is_smooth for name, key in zip(fan.cone_names, fan.cone_rays)},
        "singular_intersections": _singular_intersections(fan),
    }
    if functionals is not None:
        certificates["support_function"] = {
            name: [str(x) for x in m] for name, m in functionals.items()
        }
    return Report(
        command="check",
        source=source,
        flags=flags,
        singularity=singularity_report(fan),
        certificates=certificates,
        timing=time.perf_counter() - start,
        **_fan_fields(fan),
    )


def cmd_classify(fan: Fan, source: str) -> Report:
    start = time.perf_counter()
    verdict = classify(fan)
    return Report(
        command="classify",
        source=source,
        flags=property_flags(fan),
        singularity=singularity_report(fan),
        verdict=verdict,
        timing=time.perf_counter() - start,
        **_fan_fields(fan),
    )


def _classify_job(job: Tuple[str, int]) -> Tuple[str, Optional[Report], str, int]:
    # runs in a worker process: (source, report, error message, exit code)
    source, r = job
    try:
        report = cmd_classify(load_fan(source, r), source)
    except InvariantViolation as err:
        return source, None, str(err), EXIT_INVARIANT
    except (FankError, FileNotFoundError) as err:
        return source, None, str(err), EXIT_INPUT
    return source, report, "", _verdict_code(report)


def _verdict_code(report: Report) -> int:
    if report.verdict is not None and report.verdict.outcome == Outcome.NOT_ISOMORPHIC:
        return EXIT_NOT_ISOMORPHIC
    return EXIT_OK


def parse_generators(text: str, n: int) -> Tuple[Tuple[int, ...], ...]:
    """``"1,0;0,2"`` (or space separated coordinates) -> ((1, 0), (0, 2))."""
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            vector = tuple(int(x) for x in chunk.replace(",", " ").split())
        except ValueError:
            raise InputError(f"bad generator {chunk!r}") from None
        if len(vector) != n:
            raise InputError(f"generator {chunk!r} does not have {n} coordinates")
        vectors.append(vector)
    return tuple(vectors)


def cmd_ideal_member(n: int, generators: str, expression: str) -> Report:
    start = time.perf_counter()
    ideal = LatticeIdeal(n, parse_generators(generators, n))
    f = parse_laurent(expression, n)
    normal_form = reduce(f, ideal)
    certificates: Dict[str, Any] = {
        "ideal": str(ideal),
        "polynomial": format_laurent(f),
        "normal_form": format_laurent(normal_form),
        "member": not normal_form,
    }
    if not normal_form:
        certificates["cofactors"] = [format_laurent(c) for c in cofactors(f, ideal)]
    return Report(command="ideal member", dim=n, certificates=certificates,
                  timing=time.perf_counter() - start)


def cmd_ideal_leq(n: int, first: str, second: str) -> Report:
    start = time.perf_counter()
    small = LatticeIdeal(n, parse_generators(first, n))
    large = LatticeIdeal(n, parse_generators(second, n))
    certificates = {"first": str(small), "second": str(large), "leq": ideal_leq(small, large)}
    return Report(command="ideal leq", dim=n, certificates=certificates,
                  timing=time.perf_counter() - start)


def _plp_fan(data: PlpFile, r: int) -> Fan:
    path = resolve_fan_path(data)
    if path.exists():
        return parse_fan_file(path)
    return load_fan(data.fan_path, r)


def _values_text(F: PiecewisePoly) -> Dict[str, str]:
    return {name: format_laurent(value) for name, value in F.items()}


def cmd_plp_verify(path: Path, r: int = 1) -> Report:
    start = time.perf_counter()
    data = PlpFileReader(path).read()
    fan = _plp_fan(data, r)
    certificates: Dict[str, Any] = {"valid": True}
    try:
        F = plp_from_file(data, fan)
        certificates["values"] = _values_text(F)
    except IncompatiblePair as err:
        certificates = {"valid": False, "pair": list(err.pair), "witness": format_laurent(err.witness)}
    return Report(command="plp verify", source=str(path), certificates=certificates,
                  timing=time.perf_counter() - start, **_fan_fields(fan))


def cmd_plp_extend(gamma_path: Path, r: int = 1) -> Tuple[Report, str]:
    start = time.perf_counter()
    data = PlpFileReader(gamma_path).read()
    fan = _plp_fan(data, r)
    F = plp_from_file(data, fan, partial=True)
    extended = extend_over_smooth_fan(F, fan)
    report = Report(
        command="plp extend",
        source=str(gamma_path),
        certificates={"subfan": list(F.fan.cone_names), "values": _values_text(extended)},
        timing=time.perf_counter() - start,
        **_fan_fields(fan),
    )
    return report, format_plp(data.fan_path, extended)


def _value(values: Dict[frozenset, LaurentPoly], fan: Fan, key: frozenset) -> LaurentPoly:
    if key not in values:
        raise InputError(f"no value given on {fan.label(key)}")
    return values[key]


def _ray_splitting(fan: Fan, first: str, last: str):
    k = len(fan.cone_names)
    for start in range(k):
        for size in range(1, k):
            split = splitting_at(fan, start, size)
            if split.shared_rays == (first, last):
                return split
    raise ImproperSplitting(f"no splitting into two clumps meets in {first} and {last}")


def cmd_plp_preimage(path: Path, cone: Optional[str], rays: Optional[Sequence[str]],
                     r: int = 1) -> Tuple[Report, str]:
    start = time.perf_counter()
    data = PlpFileReader(path).read()
    fan = _plp_fan(data, r)
    values = entry_values(data, fan)
    certificates: Dict[str, Any] = {}
    if cone is not None:
        key = fan.resolve(cone)
        target = fan.cone(key)
        facets = [fan.names_of(facet.rays) for facet in target.facets()]
        result = cone_boundary_preimage([_value(values, fan, f) for f in facets], target)
        label = fan.label(key)
        certificates.update({
            "cone": label,
            "facets": [fan.label(f) for f in facets],
            "preimage": format_laurent(result),
        })
        text = f"fan {data.fan_path}\non {label}: {format_laurent(result)}\n"
    elif rays is not None and len(rays) == 2:
        first, last = rays
        f = _value(values, fan, frozenset([first]))
        g = _value(values, fan, frozenset([last]))
        if is_complete(fan):
            F, G = complete_2d_preimage(f, g, fan, _ray_splitting(fan, first, last))
            certificates.update({"first": _values_text(F), "second": _values_text(G)})
            text = format_plp(data.fan_path, F) + "".join(
                f"on {name}: {format_laurent(value)}\n" for name, value in G.items()
            )
        else:
            clump = next((c for c in clump_decomposition(fan) if (c.first_ray, c.last_ray) == (first, last)), None)
            if clump is None:
                clump = next((c for c in clump_decomposition(fan) if (c.last_ray, c.first_ray) == (first, last)),
                             None)
                f, g = g, f
            if clump is None:
                raise ImproperSplitting(f"no clump runs from {first} to {last}")
            F = clump_boundary_preimage(f, g, clump)
            certificates["values"] = _values_text(F)
            text = format_plp(data.fan_path, F)
    else:
        raise InputError("preimage needs --cone NAME or --rays FIRST LAST")
    report = Report(command="plp preimage", source=str(path), certificates=certificates,
                    timing=time.perf_counter() - start, **_fan_fields(fan))
    return report, text


def cmd_examples(name: Optional[str], r: int) -> str:
    if name is None:
        return "".join(
            f"{entry.name:<22} {entry.description}\n" for entry in catalog.CATALOG.values()
        )
    if catalog.entry(name).parametric and r < 1:
        raise InputError(f"--r must be >= 1, got {r}")
    return catalog.fan_text(name, r)


def _yes_no(value: Optional[bool]) -> str:
    return "n/a" if value is None else str(value).lower()


def format_report(report: Report) -> str:
    lines = []
    if report.source:
        lines.append(f"source: {report.source}")
    if report.dim is not None and report.ray_count is not None:
        lines.append(f"fan: dim {report.dim}, {report.ray_count} rays, {report.cone_count} maximal cones")
    for flag, value in report.flags.items():
        lines.append(f"{flag}: {_yes_no(value)}")
    if report.singularity is not None and report.singularity.entries:
        lines.append("singular cones: " + ", ".join(report.singularity.singular_cones))
    for row in report.certificates.get("singular_intersections", []):
        first, second = row["cones"]
        lines.append(f"  intersection({first},{second}) = {row['face']}: smooth {_yes_no(row['smooth'])}")
    if report.verdict is not None:
        verdict = report.verdict
        lines.append(f"verdict: {verdict.outcome.value} ({verdict.theorem})")
        if verdict.justification:
            lines.append("hypotheses: " + "; ".join(verdict.justification))
        if verdict.odd_rank is not None:
            lines.append(f"odd K-group rank: {verdict.odd_rank}")
        if verdict.explanation:
            lines.append(f"explanation: {verdict.explanation}")
    for key, value in report.certificates.items():
        if key in ("singular_intersections", "cone_smooth", "support_function"):
            continue
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        help="Print the machine-readable JSON report.",
    )
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=os.environ.get("FANK_LOG_LEVEL", "WARNING").upper(),
        help="Logging level (default: $FANK_LOG_LEVEL or WARNING).",
    )
    common.add_argument(
        "--r",
        type=int,
        default=1,
        help="Parameter of the hirzebruch-r example.",
    )

    parser = argparse.ArgumentParser(
        prog="fank",
        description=(
            "Fans, piecewise Laurent polynomials and the comparison of equivariant "
            "K-theory of toric varieties with piecewise Laurent polynomials."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Property flags of a fan.")
    check.add_argument("fan", help="Fan file or bundled example name.")

    classify_cmd = commands.add_parser("classify", parents=[common], help="Run the decision tree.")
    classify_cmd.add_argument("fans", nargs="*", help="Fan files or bundled example names.")
    classify_cmd.add_argument(
        "--batch",
        type=Path,
        default=None,
        help="Directory whose *.fan files are classified concurrently.",
    )
    classify_cmd.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count(),
        help="Worker processes for --batch.",
    )

    ideal = commands.add_parser("ideal", help="Lattice ideal membership and inclusion.")
    ideal_commands = ideal.add_subparsers(dest="ideal_command", required=True)
    member = ideal_commands.add_parser("member", parents=[common], help="Normal form and cofactors.")
    member.add_argument("--n", type=int, required=True, help="Number of variables.")
    member.add_argument("--gens", required=True, help='Lattice generators, e.g. "1,0;0,2".')
    member.add_argument("expression", help='Laurent polynomial, e.g. "1 - a1^2".')
    leq = ideal_commands.add_parser("leq", parents=[common], help="Whether J_L <= J_L'.")
    leq.add_argument("--n", type=int, required=True, help="Number of variables.")
    leq.add_argument("--gens", required=True, help="Generators of L.")
    leq.add_argument("--other", required=True, help="Generators of L'.")

    plp = commands.add_parser("plp", help="Piecewise Laurent polynomial constructions.")
    plp_commands = plp.add_subparsers(dest="plp_command", required=True)
    verify = plp_commands.add_parser("verify", parents=[common], help="Check compatibility.")
    verify.add_argument("plp", type=Path, help="PLP file.")
    extend = plp_commands.add_parser("extend", parents=[common], help="Extend over a smooth fan.")
    extend.add_argument(
        "--gamma",
        type=Path,
        required=True,
        help="PLP file with values on the maximal cones of a subfan.",
    )
    extend.add_argument("--output", type=Path, default=None, help="Write the extended PLP file here.")
    preimage = plp_commands.add_parser("preimage", parents=[common], help="Preimage under #.")
    preimage.add_argument("plp", type=Path, help="PLP file with boundary values.")
    preimage.add_argument("--cone", default=None, help="Cone whose facets carry the values.")
    preimage.add_argument("--rays", nargs=2, default=None, metavar=("FIRST", "LAST"),
                          help="End rays of a 2D clump or splitting.")
    preimage.add_argument("--output", type=Path, default=None, help="Write the preimage here.")

    examples = commands.add_parser("examples", parents=[common], help="List or write bundled fans.")
    examples.add_argument("name", nargs="?", default=None, help="Example to write.")
    examples.add_argument("--output", type=Path, default=None, help="Write the fan file here.")

    args = parser.parse_args(argv)
    if getattr(args, "log_level", "WARNING") not in LOG_LEVELS:
        parser.error(f"FANK_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")
    return args


def _emit(report: Report, as_json: bool) -> None:
    print(report.to_json() if as_json else format_report(report))


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        print(text, end="")
    else:
        output.write_text(text, encoding="utf-8")
        LOGGER.info("wrote %s", output)


def _run_classify(args: argparse.Namespace) -> int:
    sources = list(args.fans)
    if args.batch is not None:
        if not args.batch.is_dir():
            raise FileNotFoundError(f"Batch directory not found: {args.batch}")
        sources += [str(p) for p in args.batch.glob("*.fan")]
    if not sources:
        raise InputError("nothing to classify")
    sources = sorted(sources)
    jobs = [(source, args.r) for source in sources]
    if len(jobs) == 1:
        results = [_classify_job(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_classify_job, jobs))
    LOGGER.info("classified %d fans", len(results))
    code = EXIT_OK
    for source, report, error, status in results:
        if report is None:
            print(f"{source}: error: {error}", file=sys.stderr)
        else:
            _emit(report, args.json)
        code = max(code, status)
    return code


def _run(args: argparse.Namespace) -> int:
    if args.command == "check":
        _emit(cmd_check(load_fan(args.fan, args.r), args.fan), args.json)
        return EXIT_OK
    if args.command == "classify":
        return _run_classify(args)
    if args.command == "ideal":
        if args.ideal_command == "member":
            report = cmd_ideal_member(args.n, args.gens, args.expression)
        else:
            report = cmd_ideal_leq(args.n, args.gens, args.other)
        _emit(report, args.json)
        return EXIT_OK
    if args.command == "plp":
        if args.plp_command == "verify":
            report = cmd_plp_verify(args.plp, args.r)
            _emit(report, args.json)
            return EXIT_OK if report.certificates["valid"] else EXIT_INPUT
        if args.plp_command == "extend":
            report, text = cmd_plp_extend(args.gamma, args.r)
        else:
            report, text = cmd_plp_preimage(args.plp, args.cone, args.rays, args.r)
        if args.json:
            _emit(report, True)
            if args.output is not None:
                _write(text, args.output)
        else:
            _write(text, args.output)
        return EXIT_OK
    _write(cmd_examples(args.name, args.r), args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=getattr(args, "log_level", "WARNING"), format=LOG_FORMAT)
    try:
        return _run(args)
    except InvariantViolation as err:
        LOGGER.error("internal check failed: %s", err)
        return EXIT_INVARIANT
    except (FankError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
