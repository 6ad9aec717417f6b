"""
Command line front end.

Every subcommand prints one canonical JSON document to stdout, or to the file
given with -o. Exit codes: 0 on success, 1 when the input is rejected by a
computation, 2 on usage or input errors and 3 on inconclusive certificates.
"""
import argparse
import dataclasses
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Mapping, Callable, Any, Dict

import sympy

from . import __version__
from .algebra.laurent import LaurentPoly, to_fraction
from .algebra.unitcircle import AlgebraicAngle, AnglePoint, RootOfUnity, MINUS_ONE, ONE
from .blanchfield import (present_module, bl_pair, module_generators, nonsingularity_witnesses,
                          self_annihilating_submodules)
from .certificate import (Certificate, Verdict, certify_linear_combination, certify_coprime_nonconcordance,
                          certify_box, reverify)
from .concordance import Metabolizer, fox_milnor, is_algebraically_slice
from .config import Settings, DEFAULT_SETTINGS
from .exceptions import KnotForgeError, CertificateInputError
from .forge import CGBound, FamilyDescriptor, forge_family, extend_family
from .seifert import SeifertMatrix, alexander, arf, determinant
from .serializers import JsonSerializer, ReportSerializer
from .signatures import lt_signature, sig_sum, sig_profile, sig_integral

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

SERIALIZER = JsonSerializer()


class UsageError(Exception):
    """Invalid command line input, reported with exit code 2."""


@dataclasses.dataclass(frozen=True)
class CommandConfig:
    """
    command: Subcommand name
    options: Validated subcommand arguments
    output: Where to write the JSON document, stdout if None
    settings: Settings derived from the global flags
    tree: Whether to render the result as a tree on stderr
    """
    command: str
    options: Mapping[str, Any]
    output: Optional[Path] = None
    settings: Settings = DEFAULT_SETTINGS
    tree: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CommandConfig":
        if ns.max_precision is not None and ns.max_precision < DEFAULT_SETTINGS.initial_precision:
            raise UsageError(f"--max-precision must be at least {DEFAULT_SETTINGS.initial_precision}")
        settings = DEFAULT_SETTINGS
        if ns.max_precision is not None:
            settings = settings.replace(max_precision=ns.max_precision)
        if getattr(ns, "search_bound", None) is not None:
            settings = settings.replace(search_bound=_at_least(ns.search_bound, 0, "--bound"))
        options = {key: value for key, value in vars(ns).items()
                   if key not in ("command", "output", "max_precision", "verbose", "tree", "handler")}
        return cls(ns.command, options, Path(ns.output) if ns.output else None, settings, getattr(ns, "tree", False))


def _at_least(value: int, minimum: int, flag: str) -> int:
    if value < minimum:
        raise UsageError(f"{flag} must be at least {minimum}, got {value}")
    return value


def _prime(value: int, flag: str) -> int:
    if not sympy.isprime(value):
        raise UsageError(f"{flag} must be prime, got {value}")
    return value


def _load(source: str) -> Any:
    try:
        return SERIALIZER.load(source)
    except FileNotFoundError:
        raise UsageError(f"No such file: {source}")
    except ValueError as e:
        raise UsageError(f"Can't read JSON from {source}: {e}")


def _matrix(options: Mapping) -> SeifertMatrix:
    source = options.get("matrix_json") or options.get("matrix")
    if source is None:
        raise UsageError("Need --matrix or --matrix-json")
    data = _load(source)
    if isinstance(data, Mapping):
        data = data.get("matrix", data.get("seifert", {}).get("matrix"))
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise UsageError("Seifert matrix must be a list of rows")
    return SeifertMatrix(data)


def _metabolizer(options: Mapping) -> Optional[Metabolizer]:
    if not options.get("metabolizer"):
        return None
    data = _load(options["metabolizer"])
    return Metabolizer.from_json(data) if isinstance(data, Mapping) else Metabolizer.from_matrix(data)


def _family(options: Mapping) -> FamilyDescriptor:
    try:
        return FamilyDescriptor.from_json(_load(options["family"]))
    except (KeyError, TypeError) as e:
        raise UsageError(f"Malformed family descriptor: {e}")


def _bound(options: Mapping, settings: Settings) -> CGBound:
    if options.get("c_k") is not None:
        return CGBound.direct(_at_least(options["c_k"], 1, "--c-k"))
    if options.get("crossing") is None:
        raise UsageError("Need --crossing or --c-k")
    return CGBound.from_crossing(_at_least(options["crossing"], 1, "--crossing"), settings)


def _delta(source: str) -> LaurentPoly:
    if source.endswith(".json") or source.lstrip()[:1] == "{":
        data = _load(source)
        if "terms" in data:
            return LaurentPoly.from_json(data)
        return LaurentPoly.parse(str(data["delta"]))
    return LaurentPoly.parse(source)


def _root(text: str) -> RootOfUnity:
    """Parse "p/r", the order first, as exp(2πi·r/p) in lowest terms."""
    try:
        p, r = (int(part) for part in text.split("/"))
    except ValueError:
        raise UsageError(f"--root must be p/r with integers p >= 1 and r, got {text!r}")
    if p < 1:
        raise UsageError(f"--root order must be at least 1, got {p}")
    turn = Fraction(r, p) % 1
    return RootOfUnity(turn.denominator, turn.numerator)


def _point(options: Mapping) -> Any:
    if options.get("minus_one"):
        return MINUS_ONE
    if options.get("root"):
        return _root(options["root"])
    if options.get("cosine"):
        cosine = to_fraction(options["cosine"])
        if not -1 <= cosine <= 1:
            raise UsageError(f"Cosine must lie in [-1, 1], got {cosine}")
        if cosine == 1:
            return ONE
        if cosine == -1:
            return MINUS_ONE
        return AnglePoint(AlgebraicAngle.from_cosine(cosine))
    raise UsageError("Need --root, --cosine or --minus-one")


# Handlers return (document, exit code)

def cmd_invariants(config: CommandConfig):
    v = _matrix(config.options)
    data = alexander(v)
    signature, nullity = lt_signature(v, MINUS_ONE, config.settings)
    return {
        "seifert": v,
        "genus": v.genus,
        "alexander": str(data.delta),
        "top_coefficient": str(data.top_coeff),
        "degree": data.degree,
        "determinant": str(determinant(v)),
        "arf": arf(v),
        "signature": signature,
        "nullity": nullity,
        "fox_milnor": fox_milnor(data.delta),
    }, EXIT_OK


def cmd_signature(config: CommandConfig):
    v = _matrix(config.options)
    point = _point(config.options)
    signature, nullity = lt_signature(v, point, config.settings)
    return {"point": str(point), "signature": signature, "nullity": nullity}, EXIT_OK


def cmd_sigsum(config: CommandConfig):
    v = _matrix(config.options)
    p = _prime(config.options["p"], "--p")
    return {"p": p, "sum": sig_sum(v, p, config.settings)}, EXIT_OK


def cmd_sigprofile(config: CommandConfig):
    profile = sig_profile(_matrix(config.options), config.settings)
    return dict(profile.to_json(), max_abs=profile.max_abs()), EXIT_OK


def cmd_sigintegral(config: CommandConfig):
    tol = to_fraction(config.options["tol"]) if config.options.get("tol") else config.settings.integral_tolerance
    if tol <= 0:
        raise UsageError("--tol must be positive")
    integral = sig_integral(_matrix(config.options), tol, config.settings)
    return dict(integral.to_json(), tolerance=tol), EXIT_OK


def cmd_algslice(config: CommandConfig):
    v = _matrix(config.options)
    report = is_algebraically_slice(v, _metabolizer(config.options), override=config.options["override"],
                                    settings=config.settings)
    return report, EXIT_OK if report.verdict else EXIT_REJECTED


def cmd_blanchfield(config: CommandConfig):
    v = _matrix(config.options)
    options = config.options
    if options.get("pair"):
        generators = module_generators(v)
        i, j = options["pair"]
        if not (1 <= i <= len(generators) and 1 <= j <= len(generators)):
            raise UsageError(f"--pair indices must lie in 1..{len(generators)}")
        value = bl_pair(v, generators[i - 1], generators[j - 1])
        return {"pair": [i, j], "value": value}, EXIT_OK
    if options.get("self_annihilating"):
        submodules = self_annihilating_submodules(v)
        return {"count": len(submodules), "submodules": submodules}, EXIT_OK
    return {"module": present_module(v), "witnesses": nonsingularity_witnesses(v)}, EXIT_OK


def cmd_forge(config: CommandConfig):
    options = config.options
    v = _matrix(options)
    count = _at_least(options["count"], 1, "--count")
    bound = _bound(options, config.settings)
    family = forge_family(v, bound, count, options["prime_floor"], _metabolizer(options), options["override"],
                          config.settings)
    return family, EXIT_OK


def cmd_extend(config: CommandConfig):
    count = _at_least(config.options["count"], 1, "--count")
    return extend_family(_family(config.options), count, config.settings), EXIT_OK


def _combination(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--combo must be comma separated integers, got {text!r}")


def _certificate_exit(certificate: Certificate) -> int:
    return EXIT_INCONCLUSIVE if certificate.verdict is Verdict.INCONCLUSIVE else EXIT_OK


def cmd_certify(config: CommandConfig):
    family = _family(config.options)
    certificate = certify_linear_combination(family, _combination(config.options["combo"]), config.settings)
    return certificate, _certificate_exit(certificate)


def cmd_split(config: CommandConfig):
    options = config.options
    family = _family(options)
    certificate = certify_coprime_nonconcordance(family, options["index"], options["n"], _delta(options["delta"]),
                                                 config.settings)
    return certificate, _certificate_exit(certificate)


def cmd_verify(config: CommandConfig):
    data = _load(config.options["certificate"])
    verdict = reverify(data)
    recorded = Verdict(data["verdict"])
    document = {"recorded": recorded.value, "verdict": verdict.value, "consistent": recorded is verdict}
    return document, EXIT_INCONCLUSIVE if verdict is Verdict.INCONCLUSIVE else EXIT_OK


def pipeline_forge_and_certify(v: SeifertMatrix, bound: CGBound, count: int, outdir: Path, box: int = 1,
                               settings: Settings = DEFAULT_SETTINGS) -> Dict[str, Any]:
    """
    Forge a family and certify every combination in the box, writing one file each.

    :return: Summary with the written paths and a tally of verdicts
    """
    family = forge_family(v, bound, count, settings=settings)
    outdir.mkdir(parents=True, exist_ok=True)
    family_path = outdir / "family.json"
    SERIALIZER.dump(family, family_path)
    entries, tally = [], {}
    for certificate in certify_box(family, box, settings):
        name = "_".join(certificate.inputs["combination"]).replace("-", "m")
        path = outdir / f"certificate_{name}.json"
        path.write_bytes(certificate.to_bytes())
        entries.append({"combination": certificate.inputs["combination"], "verdict": certificate.verdict.value,
                        "file": path.name})
        tally[certificate.verdict.value] = tally.get(certificate.verdict.value, 0) + 1
    logger.info("Pipeline wrote %d certificates to %s: %s", len(entries), outdir, tally)
    return {"family": family_path.name, "family_sha256": family.sha256(), "certificates": entries, "verdicts": tally}


def cmd_pipeline(config: CommandConfig):
    options = config.options
    v = _matrix(options)
    count = _at_least(options["count"], 1, "--count")
    box = _at_least(options["box"], 1, "--box")
    summary = pipeline_forge_and_certify(v, _bound(options, config.settings), count, Path(options["outdir"]), box,
                                         config.settings)
    inconclusive = summary["verdicts"].get(Verdict.INCONCLUSIVE.value, 0)
    return summary, EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


def _add_matrix(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix", help="JSON file holding the Seifert matrix")
    group.add_argument("--matrix-json", help="Seifert matrix inline, e.g. '[[0,2],[1,0]]'")


def _add_slice_options(parser: argparse.ArgumentParser):
    parser.add_argument("--metabolizer", help="JSON file or inline JSON with a metabolizer basis (columns)")
    parser.add_argument("--bound", dest="search_bound", type=int, help="Height bound for metabolizer search")
    parser.add_argument("--override", action="store_true", help="Accept V as algebraically slice without proof")


def _add_c_k(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--crossing", type=int, help="Crossing number of K; C_K = 69713280 times it")
    group.add_argument("--c-k", type=int, help="C_K given directly")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotforge", description="Exact knot concordance invariants and certificates")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("--max-precision", type=int, help="Largest precision in bits for interval refinement")
    parser.add_argument("-o", "--output", help="Write JSON here instead of stdout")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable, help_text: str, tree: bool = False) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        if tree:
            sub.add_argument("--tree", action="store_true", help="Also render the result as a tree on stderr")
        return sub

    sub = command("invariants", cmd_invariants, "Alexander polynomial, Arf invariant, signature and determinant")
    _add_matrix(sub)

    sub = command("signature", cmd_signature, "Levine-Tristram signature at one point")
    _add_matrix(sub)
    point = sub.add_mutually_exclusive_group(required=True)
    point.add_argument("--root", metavar="P/R", help="ω = exp(2πi·r/p), given as p/r with the order first")
    point.add_argument("--cosine", help="ω with Re ω equal to this rational")
    point.add_argument("--minus-one", action="store_true", help="ω = -1")

    sub = command("sigsum", cmd_sigsum, "Sum of signatures over the p-th roots of unity")
    _add_matrix(sub)
    sub.add_argument("--p", type=int, required=True, help="A prime")

    sub = command("sigprofile", cmd_sigprofile, "Jumps and arc values of the signature function")
    _add_matrix(sub)

    sub = command("sigintegral", cmd_sigintegral, "Certified enclosure of the signature integral")
    _add_matrix(sub)
    sub.add_argument("--tol", help="Maximal width of the enclosure, a rational such as 1/1000000000")

    sub = command("algslice", cmd_algslice, "Decide algebraic sliceness (exit 1 when not shown slice)", tree=True)
    _add_matrix(sub)
    _add_slice_options(sub)

    sub = command("blanchfield", cmd_blanchfield, "Alexander module and Blanchfield form")
    _add_matrix(sub)
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"), help="Bl(e_I, e_J), 1-based")
    mode.add_argument("--self-annihilating", action="store_true", help="List self-annihilating submodules")

    sub = command("forge", cmd_forge, "Forge a family of companions", tree=True)
    _add_matrix(sub)
    _add_c_k(sub)
    _add_slice_options(sub)
    sub.add_argument("--count", type=int, required=True, help="Number of companions")
    sub.add_argument("--prime-floor", type=int, default=2, help="Smallest prime to consider")

    sub = command("extend", cmd_extend, "Append companions to a family", tree=True)
    sub.add_argument("--family", required=True, help="Family descriptor JSON")
    sub.add_argument("--count", type=int, required=True, help="Number of companions to add")

    sub = command("certify", cmd_certify, "Certify a linear combination of the family", tree=True)
    sub.add_argument("--family", required=True, help="Family descriptor JSON")
    sub.add_argument("--combo", required=True, help="Comma separated coefficients, e.g. 1,0,-1")

    sub = command("split", cmd_split, "Certify non-concordance by coprime splitting", tree=True)
    sub.add_argument("--family", required=True, help="Family descriptor JSON")
    sub.add_argument("--index", type=int, required=True, help="1-based companion index")
    sub.add_argument("--n", type=int, required=True, help="Nonzero multiple")
    sub.add_argument("--delta", required=True, help="Alexander polynomial of the other knot, or a JSON file")

    sub = command("verify", cmd_verify, "Recompute a certificate verdict from its witnesses", tree=True)
    sub.add_argument("--certificate", required=True, help="Certificate JSON")

    sub = command("pipeline", cmd_pipeline, "Forge a family and certify all combinations in a box")
    _add_matrix(sub)
    _add_c_k(sub)
    sub.add_argument("--count", type=int, required=True, help="Number of companions")
    sub.add_argument("--box", type=int, default=1, help="Coefficients range over -box..box")
    sub.add_argument("--outdir", required=True, help="Directory for family.json and certificates")
    return parser


def _configure_logging(verbose: int):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _emit(config: CommandConfig, document: Any):
    if config.tree:
        sys.stderr.write(ReportSerializer().to_tree(document, config.command).to_string() + "\n")
    if config.output:
        SERIALIZER.dump(document, config.output)
    else:
        sys.stdout.write(SERIALIZER.dumps(document))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line with the given arguments and return the exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    _configure_logging(ns.verbose)
    try:
        config = CommandConfig.from_namespace(ns)
        document, code = ns.handler(config)
        _emit(config, document)
        return code
    except (UsageError, CertificateInputError) as e:
        print(f"knotforge: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KnotForgeError as e:
        print(f"knotforge: rejected: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except (ValueError, TypeError, KeyError, OSError) as e:
        print(f"knotforge: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
