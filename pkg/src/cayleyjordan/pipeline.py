"""End-to-end computation of ``P``, ``J`` and ``P^-1`` with a stage trace."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .charpoly import Polynomial, Spectrum, characteristic_polynomial, check_spectrum, factor_spectrum
from .chains import SeedPolicy, harvest_all, screen_standard_basis
from .completion import complete
from .errors import JordanError
from .field import render
from .matrix import Matrix, OpCounter, counting
from .oracle import VerificationReport, jordan_blocks, verify_decomposition
from .textio import matrix_to_strings, render_matrix


@dataclass
class PipelineOptions:
    spectrum: Spectrum | None = None
    seed: int = 0
    confirm: bool = False
    fallback: bool = True


@dataclass
class PipelineReport:
    input_digest: str
    n: int
    charpoly: Polynomial | None = None
    spectrum: Spectrum | None = None
    spectrum_source: str = ""
    screen: list = field(default_factory=list)
    chain_log: list = field(default_factory=list)
    chains: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    P: Matrix | None = None
    J: Matrix | None = None
    P_inv: Matrix | None = None
    verification: VerificationReport | None = None
    counters: dict = field(default_factory=dict)

    @property
    def seeded_vectors(self) -> int:
        return sum(c["length"] for c in self.chains if c["phase"] == "seeded")

    @property
    def passed(self) -> bool:
        return self.verification is not None and self.verification.passed

    def blocks(self) -> list:
        return jordan_blocks(self.J) if self.J is not None else []


def _digest(a: Matrix) -> str:
    return hashlib.sha256(render_matrix(a).encode()).hexdigest()


def _stage(name: str, exc: JordanError):
    exc.stage = name
    return exc


def run_pipeline(a: Matrix, options: PipelineOptions | None = None) -> PipelineReport:
    """Spectrum, seeded maximal chains, block completion, verification.

    Raises the :mod:`~cayleyjordan.errors` exception of the failing stage,
    with a ``stage`` attribute naming it.
    """
    options = options or PipelineOptions()
    if not a.is_square:
        from .errors import DimensionMismatch

        raise _stage("input", DimensionMismatch(f"matrix is {a.rows}x{a.cols}"))
    report = PipelineReport(input_digest=_digest(a), n=a.rows)
    counter = OpCounter()
    with counting(counter):
        try:
            report.charpoly = characteristic_polynomial(a)
            if options.spectrum is not None:
                report.spectrum = check_spectrum(a, options.spectrum)
                report.spectrum_source = "supplied"
            else:
                report.spectrum = factor_spectrum(report.charpoly)
                report.spectrum_source = "characteristic polynomial"
        except JordanError as exc:
            raise _stage("spectrum", exc)
        spectrum = report.spectrum
        report.screen = screen_standard_basis(a, spectrum)
        report.counters["spectrum"] = counter.snapshot()

        try:
            policy = SeedPolicy(prng_seed=options.seed, confirm=options.confirm)
            harvest = harvest_all(a, spectrum, policy)
        except JordanError as exc:
            raise _stage("chains", exc)
        report.chain_log = harvest.log
        report.chains = [
            {"eigenvalue": c.eigenvalue, "length": len(c), "phase": "seeded"} for c in harvest.chains
        ]
        report.counters["chains"] = counter.snapshot()

        try:
            log: list = []
            p, j, p_inv = complete(
                a, harvest.chains, spectrum, report.screen, log=log, fallback=options.fallback
            )
        except JordanError as exc:
            raise _stage("completion", exc)
        report.iterations = _number_iterations(log)
        for it in report.iterations:
            if "restart" in it:
                for c in report.chains:
                    if c["eigenvalue"] == it["eigenvalue"] and c["phase"] == "seeded":
                        c["phase"] = "dropped"
            else:
                report.chains.append(
                    {"eigenvalue": it["eigenvalue"], "length": it["block_size"], "phase": "completion"}
                )
        report.P, report.J, report.P_inv = p, j, p_inv
        report.counters["completion"] = counter.snapshot()

        report.verification = verify_decomposition(a, p, j)
        report.counters["verification"] = counter.snapshot()
    return report


def _number_iterations(log: list) -> list:
    out = []
    i = 0
    for entry in log:
        entry = dict(entry)
        if entry.get("restart"):
            i = 0
        else:
            i += 1
            entry["iteration"] = i
        out.append(entry)
    return out


def _shift_text(lam) -> str:
    if lam == 0:
        return ""
    if lam < 0:
        return f" + {render(-lam) if lam.denominator == 1 else '(' + render(-lam) + ')'}I"
    return f" - {render(lam) if lam.denominator == 1 else '(' + render(lam) + ')'}I"


def _kernel_label(i: int, lam, s: int) -> str:
    base = f"ker(J_{i}{_shift_text(lam)})" if lam != 0 else f"ker(J_{i})"
    return base if s == 1 else f"{base}^{s}"


def _seed_name(v) -> str:
    if all(x == 1 for x in v):
        return "all ones"
    if all(x == (-1) ** k for k, x in enumerate(v)):
        return "alternating signs"
    return "(" + ", ".join(render(x) for x in v) + ")"


def emit_plain(report: PipelineReport, trace: bool = False) -> str:
    out = [f"input sha256 {report.input_digest}  (n = {report.n})"]
    if report.charpoly is not None:
        out.append(f"characteristic polynomial: {report.charpoly}")
    if report.spectrum is not None:
        out.append(f"spectrum: {report.spectrum}  (from {report.spectrum_source})")
    if report.screen:
        hits = ", ".join(f"e_{k} for eigenvalue {render(lam)}" for k, lam in report.screen)
        out.append(f"standard basis eigenvectors (0-based): {hits}")
    else:
        out.append("standard basis eigenvectors: none")

    out.append("")
    out.append("seeded chains (matrix-vector products only)")
    for e in report.chain_log:
        lam = render(e["eigenvalue"])
        what = f"probe {e['probe']}" if e["probe"] else "first seed"
        if "length" not in e:
            out.append(f"  eigenvalue {lam}, {what}: seed {_seed_name(e['seed'])} has no component")
            continue
        line = (
            f"  eigenvalue {lam}, {what}: seed {_seed_name(e['seed'])} gives "
            f"chain length {e['length']} for eigenvalue {lam}, {e['outcome']}"
        )
        if e.get("refit"):
            line += " (projection redone with full multiplicities)"
        out.append(line)
    ch = report.counters.get("chains", {})
    out.append(
        f"  {report.seeded_vectors} of {report.n} basis vectors from seeds; "
        f"{ch.get('matvec', 0)} matrix-vector products, {ch.get('solve', 0)} solves, "
        f"{ch.get('kernel', 0)} kernel computations"
    )

    if report.iterations:
        out.append("")
        out.append("completion")
        for it in report.iterations:
            lam = it["eigenvalue"]
            if it.get("restart"):
                out.append(f"  restart without the seeded chains of eigenvalue {render(lam)}: {it['reason']}")
                continue
            i = it["iteration"]
            out.append(f"  iteration {i}: eigenvalue {render(lam)}")
            for s, d in enumerate(it["kernel_dims"], start=1):
                out.append(f"    {_kernel_label(i, lam, s)} dimension {d}")
            out.append(f"    block of size {it['block_size']}")

    if report.J is not None:
        out.append("")
        blocks = " ".join(f"{size}@{render(lam)}" for lam, size in report.blocks())
        out.append(f"Jordan blocks in column order: {blocks}")
        out.append("J =")
        out.append(render_matrix(report.J).split("\n", 1)[1].rstrip("\n"))
        if trace:
            out.append("P =")
            out.append(render_matrix(report.P).split("\n", 1)[1].rstrip("\n"))
            out.append("P^-1 =")
            out.append(render_matrix(report.P_inv).split("\n", 1)[1].rstrip("\n"))
    if report.verification is not None:
        v = report.verification
        verdict = "pass" if v.passed else "FAIL"
        out.append(
            f"verification: {verdict} (Jordan form {_yn(v.jordan_form)}, "
            f"A P = P J {_yn(v.similarity)}, P nonsingular {_yn(v.nonsingular)})"
        )
    if trace:
        for stage, snap in report.counters.items():
            parts = ", ".join(f"{k} {v}" for k, v in snap.items())
            out.append(f"counters after {stage}: {parts}")
    return "\n".join(out) + "\n"


def _yn(flag: bool) -> str:
    return "ok" if flag else "failed"


def report_to_dict(report: PipelineReport) -> dict:
    def chain_event(e):
        d = {k: v for k, v in e.items() if k not in ("eigenvalue", "seed")}
        d["eigenvalue"] = render(e["eigenvalue"])
        d["seed"] = [render(x) for x in e["seed"]]
        return d

    def iteration(it):
        d = dict(it)
        d["eigenvalue"] = render(it["eigenvalue"])
        return d

    return {
        "input_digest": report.input_digest,
        "n": report.n,
        "charpoly": [render(c) for c in report.charpoly.coefficients] if report.charpoly else None,
        "spectrum": [[render(lam), m] for lam, m in report.spectrum] if report.spectrum else None,
        "spectrum_source": report.spectrum_source,
        "screen": [[k, render(lam)] for k, lam in report.screen],
        "chains": [
            {"eigenvalue": render(c["eigenvalue"]), "length": c["length"], "phase": c["phase"]}
            for c in report.chains
        ],
        "chain_log": [chain_event(e) for e in report.chain_log],
        "iterations": [iteration(it) for it in report.iterations],
        "P": matrix_to_strings(report.P) if report.P is not None else None,
        "J": matrix_to_strings(report.J) if report.J is not None else None,
        "P_inv": matrix_to_strings(report.P_inv) if report.P_inv is not None else None,
        "verified": report.passed,
        "verification": report.verification.as_dict() if report.verification else None,
        "counters": report.counters,
    }


def emit(report: PipelineReport, fmt: str = "plain", trace: bool = False) -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "plain":
        return emit_plain(report, trace)
    raise ValueError(f"unknown format {fmt!r}")
