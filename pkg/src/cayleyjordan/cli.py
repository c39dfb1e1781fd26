"""Command line front end.

Exit codes:

    0   success (for compute and verify: the verification verdict is pass)
    1   verification failed
    2   bad input: unreadable file, parse error, wrong dimensions
    3   characteristic polynomial does not split over the rationals
    4   supplied spectrum is inconsistent with the matrix
    5   seed budget exhausted
    6   chain extraction or completion could not proceed
    7   singular matrix where an invertible one was required
    8   incomplete basis
    10  any other library error
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import StructureSpec, generate, plant_standard_basis_eigenvector
from .errors import JordanError
from .field import render
from .oracle import structure_by_filtration, verify_decomposition
from .pipeline import PipelineOptions, emit, run_pipeline
from .charpoly import compute_spectrum, check_spectrum
from .textio import matrix_to_strings, parse_blocks, parse_matrix, parse_spectrum, render_matrix

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2


def _read(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_matrix(text)


def _write(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args) -> int:
    a = _read(args.matrix)
    spectrum = parse_spectrum(args.spectrum) if args.spectrum else None
    report = run_pipeline(a, PipelineOptions(spectrum=spectrum, seed=args.seed))
    _write(args, emit(report, args.format, trace=args.trace))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_verify(args) -> int:
    a, p, j = _read(args.a), _read(args.p), _read(args.j)
    v = verify_decomposition(a, p, j)
    if args.format == "json":
        _write(args, json.dumps(v.as_dict(), indent=2) + "\n")
    else:
        lines = [f"verification: {'pass' if v.passed else 'FAIL'}"]
        lines.append(f"  J in Jordan form: {v.jordan_form}")
        lines.append(f"  A P = P J: {v.similarity}")
        lines.append(f"  P nonsingular: {v.nonsingular}")
        lines.extend(f"  {note}" for note in v.notes)
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if v.passed else EXIT_VERIFY_FAILED


def _cmd_oracle(args) -> int:
    a = _read(args.matrix)
    spectrum = check_spectrum(a, parse_spectrum(args.spectrum)) if args.spectrum else compute_spectrum(a)
    structure = structure_by_filtration(a, spectrum)
    if args.format == "json":
        doc = {
            "spectrum": [[render(lam), m] for lam, m in spectrum],
            "blocks": {render(lam): sizes for lam, sizes in structure.blocks.items()},
            "weyr": {render(lam): list(structure.weyr(lam)) for lam in structure.blocks},
        }
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [f"spectrum: {spectrum}"]
        for lam, sizes in structure.blocks.items():
            lines.append(
                f"eigenvalue {render(lam)}: blocks {', '.join(map(str, sizes))}; "
                f"kernel growth {', '.join(map(str, structure.weyr(lam)))}"
            )
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = StructureSpec(parse_blocks(args.blocks), prng_seed=args.seed, entry_bound=args.entry_bound)
    if args.plant is not None:
        a, q, j = plant_standard_basis_eigenvector(spec, args.plant)
    else:
        a, q, j = generate(spec)
    if args.format == "json":
        doc = {"A": matrix_to_strings(a), "Q": matrix_to_strings(q), "J": matrix_to_strings(j)}
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        blocks = "; ".join(f"{render(lam)}={','.join(map(str, s))}" for lam, s in spec.blocks)
        head = f"# blocks {blocks}  seed {args.seed}"
        if args.plant is not None:
            head += f"  e_{args.plant} is an eigenvector (0-based)"
        _write(args, head + "\n" + render_matrix(a))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleyjordan",
        description="Exact Jordan canonical form with transition matrix.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("plain", "json"), default="plain")
        p.add_argument("--output", metavar="FILE", help="write here instead of stdout")

    p = sub.add_parser("compute", help="run the full pipeline on a matrix file")
    p.add_argument("matrix", help="matrix file, or - for stdin")
    p.add_argument("--spectrum", help='eigenvalues with multiplicities, e.g. "3:6,2:4"')
    p.add_argument("--seed", type=int, default=0, help="seed for the pseudorandom seed vectors")
    p.add_argument("--trace", action="store_true", help="also print P, P^-1 and counters")
    common(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="check a claimed decomposition A P = P J")
    p.add_argument("a")
    p.add_argument("p")
    p.add_argument("j")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="Jordan structure from kernel dimensions")
    p.add_argument("matrix")
    p.add_argument("--spectrum")
    common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate a matrix with a given Jordan structure")
    p.add_argument("--blocks", required=True, help='e.g. "3=4,2;2=3,1"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=3)
    p.add_argument("--plant", type=int, metavar="K", help="make e_K (0-based) an eigenvector")
    common(p)
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except JordanError as exc:
        stage = getattr(exc, "stage", None)
        where = f" [{stage}]" if stage else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
