import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional

try:
    from dotenv import load_dotenv

    DOTENV_AVAILABLE = True
except ImportError:  # optional dependency
    DOTENV_AVAILABLE = False

    def load_dotenv() -> None:  # Fallback when python-dotenv is absent
        """No-op fallback to keep configuration non-fatal."""
        pass


from bounds import bound_report
from canon import CanonicalCode, canonical_code, merge_classes
from classify import (
    case_counts,
    class_report,
    format_reports,
    neighbor_table,
    profile_census,
    profile_labels,
)
from config import load_config, search_config_from
from enumerator import canonical_multiplicity_vectors, enumerate_irreducible_classes
from errors import InvalidParameterError, ParseError, ZonotileError
from progress_tracker import EnumerationProgressTracker
from tiling_complex import Multiplicities, TilingComplex
from tiling_io import read_tiling, render_svg, write_summary, write_tiling
from utils import configure_logging, log_json, set_log_level
from validate import validate_complex

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

K2_NOTE = (
    "note: for k=2 the two-rectangle tiling of a square satisfies the definition "
    "literally; it is excluded here by the side cap m_i <= 2k-3 = 1, giving 0 classes"
)


def _search(args: argparse.Namespace, cfg: Dict) -> Dict[CanonicalCode, TilingComplex]:
    k = args.k
    if k == 2:
        print(K2_NOTE, file=sys.stderr)
    if getattr(args, "multiplicities", None):
        vectors = [Multiplicities.parse(args.multiplicities, k).m]
    else:
        vectors = canonical_multiplicity_vectors(k)
    tracker = EnumerationProgressTracker(len(vectors))
    search_cfg = replace(search_config_from(cfg), progress_hook=tracker.search_heartbeat)
    jobs = args.jobs if args.jobs is not None else cfg["jobs"]
    classes = enumerate_irreducible_classes(
        k, search_cfg, jobs=jobs, vectors=vectors, on_vector_done=tracker.vector_done
    )
    log_json(logger, logging.INFO, "search summary", k=k, **tracker.summary())
    return classes


def cmd_enumerate(args: argparse.Namespace, cfg: Dict) -> int:
    classes = _search(args, cfg)
    out = Path(args.out or cfg["output_dir"])
    entries = []
    reports = []
    for n, (code, c) in enumerate(sorted(classes.items()), start=1):
        report = class_report(c, code)
        reports.append(report)
        name = f"class_{n:03d}"
        write_tiling(c, out / f"{name}.json")
        render_svg(c, out / f"{name}.svg")
        entries.append({**report.to_dict(), "file": f"{name}.json"})
    extra = {"case_counts": case_counts(reports)} if args.k == 4 else {}
    write_summary(out / "summary.json", args.k, entries, **extra)
    print(f"{len(classes)} classes written to {out}")
    return EXIT_OK


def cmd_count(args: argparse.Namespace, cfg: Dict) -> int:
    classes = _search(args, cfg)
    if args.k == 4:
        reports = [class_report(c, code) for code, c in classes.items()]
        log_json(logger, logging.INFO, "cases", **case_counts(reports))
    print(len(classes))
    return EXIT_OK


def _load_directory(directory: Path) -> Dict[CanonicalCode, TilingComplex]:
    classes: Dict[CanonicalCode, TilingComplex] = {}
    files = sorted(p for p in directory.glob("*.json") if p.name != "summary.json")
    if not files:
        raise ParseError(f"no tiling files in {directory}")
    for path in files:
        c = read_tiling(path)
        merge_classes(classes, {canonical_code(c): c})
    if len(classes) != len(files):
        logger.warning("%d files hold only %d distinct classes", len(files), len(classes))
    return classes


def cmd_classify(args: argparse.Namespace, cfg: Dict) -> int:
    classes = _load_directory(Path(args.input))
    reports = [class_report(c, code) for code, c in sorted(classes.items())]
    if args.json:
        labels = profile_labels(reports)
        data = {
            "classes": [
                {**r.to_dict(), "side_profiles": [labels[p.code] for p in r.side_profiles]}
                for r in reports
            ],
            "profile_census": {str(n): count for n, count in profile_census(reports).items()},
        }
        if reports and reports[0].case_label is not None:
            data["case_counts"] = case_counts(reports)
            data["neighbor_table"] = [
                {"profile": row.profile, "before": row.before, "after": row.after, "count": count}
                for row, count in neighbor_table(reports).items()
            ]
        print(json.dumps(data, indent=2))
    else:
        for line in format_reports(reports):
            print(line)
        if reports and reports[0].case_label is not None:
            counts = case_counts(reports)
            print("cases: " + " ".join(f"{label}={n}" for label, n in counts.items()))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, cfg: Dict) -> int:
    status = EXIT_OK
    for name in args.files:
        try:
            report = validate_complex(read_tiling(Path(name)))
        except ParseError as exc:
            print(f"{name}: FAIL parse: {exc}")
            status = EXIT_FAILURE
            continue
        if report.ok:
            print(f"{name}: OK")
        else:
            status = EXIT_FAILURE
            print(f"{name}: FAIL")
            for line in report.lines():
                print(f"  {line}")
    return status


def cmd_bound(args: argparse.Namespace, cfg: Dict) -> int:
    for line in bound_report(args.k).lines():
        print(line)
    return EXIT_OK


def cmd_render(args: argparse.Namespace, cfg: Dict) -> int:
    path = render_svg(read_tiling(Path(args.file)), Path(args.svg))
    print(path)
    return EXIT_OK


def _k(value: str) -> int:
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k: {value!r}")
    if k < 2:
        raise argparse.ArgumentTypeError("k must be >= 2")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonotile",
        description="Irreducible edge-to-edge decompositions of centrally symmetric 2k-gons",
    )
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="write every class as JSON and SVG")
    p.add_argument("--k", type=_k, required=True)
    p.add_argument("--multiplicities", help="restrict to one vector, e.g. 1,2,1")
    p.add_argument("--out", help="output directory")
    p.add_argument("--jobs", type=int)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("count", help="print the number of classes")
    p.add_argument("--k", type=_k, required=True)
    p.add_argument("--jobs", type=int)
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("classify", help="report on stored class files")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("validate", help="check tiling files")
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("bound", help="print the upper bound quantities")
    p.add_argument("--k", type=_k, required=True)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("render", help="draw a tiling file as SVG")
    p.add_argument("file")
    p.add_argument("--svg", required=True)
    p.set_defaults(handler=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    configure_logging()
    if not DOTENV_AVAILABLE:
        logging.warning("python-dotenv not installed; .env file will be ignored")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.log_level:
        set_log_level(args.log_level)

    try:
        cfg = load_config(args.config)
        return args.handler(args, cfg)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        logging.debug("Input error: %s", e, exc_info=True)
        return EXIT_FAILURE
    except InvalidParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ZonotileError as e:
        print(f"error: {e}", file=sys.stderr)
        logging.debug("Run error: %s", e, exc_info=True)
        return EXIT_FAILURE
    except ValueError as e:
        # configuration values
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logging.error("zonotile encountered an error")
        logging.debug("Application error: %s", e, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        logging.debug("zonotile ended")


if __name__ == "__main__":
    sys.exit(main())
