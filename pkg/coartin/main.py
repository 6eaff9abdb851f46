import argparse
import csv
import io
import logging
import sys

from pydantic import BaseModel, ValidationError

from coartin import __version__
from coartin.core import FieldSpec, parse_generator_list, read_generator_file
from coartin.dependencies import get_classification_service, get_settings
from coartin.errors import CoartinError, InvalidInputError
from coartin.services import ClassificationService, Style, Target

logger = logging.getLogger(__name__)

# Verbs whose documents are tables
CSV_VERBS = {"enumerate-s", "orders", "realize-orders", "sweep"}


def parse_gamma(text: str) -> list[int]:
    """'4,6,8' -> [4, 6, 8]; an empty string is the empty semigroup."""
    try:
        return [int(chunk) for chunk in text.replace(" ", "").split(",") if chunk]
    except ValueError:
        raise InvalidInputError(f"Gamma must be a comma-separated list of integers, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coartin",
        description="Co-artin subalgebras of K[x] containing x^m K[x]: classification, presentations, automorphisms and varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text", "csv"], default="json")
    common.add_argument("--char", type=int, default=0, help="characteristic of K: 0 or a prime")

    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, help_text: str) -> argparse.ArgumentParser:
        return verbs.add_parser(name, parents=[common], help=help_text)

    sub = verb("enumerate-s", "list S(m)")
    sub.add_argument("--m", type=int, required=True)

    sub = verb("gamma-info", "ind/dec split, Rel tables, conductor ideal and relation basis of Gamma")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--gamma", default="")

    for name, help_text in (
        ("canonical", "canonical basis of the algebra generated by --gens"),
        ("present", "generators and defining relations"),
        ("aut", "automorphism group"),
    ):
        sub = verb(name, help_text)
        sub.add_argument("--m", type=int, required=True)
        sub.add_argument("--gens", default=None, help="polynomials separated by ';'")
        sub.add_argument("--gens-file", default=None, help="one polynomial per line")
        if name == "present":
            sub.add_argument("--target", choices=[t.value for t in Target], default=Target.BAR.value)
            sub.add_argument("--style", choices=[s.value for s in Style], default=Style.RAW.value)

    sub = verb("iso", "isomorphism test of the algebras generated by --a and --b")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)

    sub = verb("orders", "the sets L(m), B(m) and O(m)")
    sub.add_argument("--m", type=int, required=True)

    sub = verb("realize-orders", "an algebra for every finite automorphism group order")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--gamma", default=None)
    sub.add_argument("--per-gamma", action="store_true", help="search inside A(m, Gamma) only")

    sub = verb("variety", "defining equations of A(m, Gamma)")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--gamma", default="")
    sub.add_argument("--system", choices=["xx", "xy", "both"], default="both")

    sub = verb("fixed-points", "equations of the C_n-fixed locus of A(m, Gamma)")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--gamma", default="")
    sub.add_argument("--n", type=int, required=True)

    sub = verb("sweep", "orders and |S(m)| over a range of m")
    sub.add_argument("--m-from", type=int, required=True)
    sub.add_argument("--m-to", type=int, required=True)
    return parser


def _generators(field: FieldSpec, text: str | None, path: str | None):
    if text is not None and path is not None:
        raise InvalidInputError("give --gens or --gens-file, not both")
    if path is not None:
        return read_generator_file(path, field)
    return parse_generator_list(text or "", field)


def run(args: argparse.Namespace, service: ClassificationService) -> BaseModel:
    """Dispatches one parsed command to the classification service."""
    field = FieldSpec(characteristic=args.char)
    p = field.characteristic or None
    if args.verb == "enumerate-s":
        return service.enumerate_s(args.m)
    if args.verb == "gamma-info":
        return service.gamma_info(args.m, parse_gamma(args.gamma))
    if args.verb == "canonical":
        return service.canonical(field, args.m, _generators(field, args.gens, args.gens_file))
    if args.verb == "present":
        gens = _generators(field, args.gens, args.gens_file)
        return service.present(field, args.m, gens, Target(args.target), Style(args.style))
    if args.verb == "aut":
        return service.aut(field, args.m, _generators(field, args.gens, args.gens_file))
    if args.verb == "iso":
        return service.iso(field, args.m, parse_generator_list(args.a, field), parse_generator_list(args.b, field))
    if args.verb == "orders":
        return service.orders(args.m, p)
    if args.verb == "realize-orders":
        if args.per_gamma and args.gamma is None:
            raise InvalidInputError("--per-gamma needs --gamma")
        members = parse_gamma(args.gamma) if args.per_gamma else None
        return service.realize_orders(args.m, p, members)
    if args.verb == "variety":
        return service.variety(args.m, parse_gamma(args.gamma), args.system, p)
    if args.verb == "fixed-points":
        return service.fixed_points(args.m, parse_gamma(args.gamma), args.n, p)
    return service.sweep(args.m_from, args.m_to, p)


def render(document: BaseModel, output_format: str) -> str:
    if output_format == "json":
        return document.model_dump_json(by_alias=True, indent=2)
    if output_format == "text":
        return document.as_text()
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(document.as_rows())
    return buffer.getvalue().rstrip("\n")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = get_settings()
        logging.basicConfig(
            level=settings.log_level,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        if args.format == "csv" and args.verb not in CSV_VERBS:
            raise InvalidInputError(f"csv output is available for {', '.join(sorted(CSV_VERBS))}, not {args.verb}")
        document = run(args, get_classification_service())
        print(render(document, args.format))
        return 0
    except CoartinError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.status_code
    except ValidationError as e:
        print(f"error: Invalid input: {e}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception(f"Unexpected failure running {args.verb}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
