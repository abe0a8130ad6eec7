"""Command-line front end.

Subcommands: `info` summarizes a code file, `synthesize` builds a
minimal-memory encoder, `check` verifies a circuit against a code and
settles catastrophicity, `derive-decoder` produces the matching online
decoder, and `simulate` runs the depolarizing-channel Monte Carlo.

Exit codes: 0 success; 1 catastrophic verdict (check); 2 analysis
inconclusive (verdict unknown, or completion search exhausted); 64 bad
usage; 65 unreadable/invalid input data; 70 internal consistency
violation (a circuit or skeleton that contradicts itself).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .catastrophic import is_noncatastrophic
from .circuit import (
    CliffordCircuit,
    circuit_from_json,
    circuit_to_json,
    circuit_to_text,
    parse_circuit,
    wire_roles,
)
from .code import ConvolutionalCode, parse_code, validate
from .decoder import derive_online_decoder
from .errors import (
    CodeValidationError,
    CompletionSearchExhausted,
    MapConsistencyError,
    OrbitError,
    ParseError,
    SkeletonInconsistencyError,
    SynthesisError,
    TrellisError,
)
from .pipeline import synthesize_encoder, verify_encoder
from .simulate import estimate_wer
from .skeleton import (
    TransformationSkeleton,
    build_skeleton,
    minimal_memory,
    skeleton_commutation_matrix,
)

EX_OK = 0
EX_CATASTROPHIC = 1
EX_INCONCLUSIVE = 2
EX_USAGE = 64
EX_DATA = 65
EX_INTERNAL = 70

_WORKERS_ENV = "QCONVENC_WORKERS"


@dataclass
class JobConfig:
    command: str
    code: str = ""
    encoder: Optional[str] = None
    out: Optional[str] = None
    as_json: bool = False
    witness: bool = False
    skeleton: bool = False
    p: List[float] = field(default_factory=list)
    frames: int = 0
    trials: int = 0
    seed: int = 0
    workers: Optional[int] = None
    gnuplot: bool = False
    max_candidates: int = 20000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; the contract says 64
        raise _UsageError(message)


def _read_code(path: str) -> ConvolutionalCode:
    with open(path) as fh:
        code = parse_code(fh.read())
    validate(code)
    return code


def _read_circuit(path: str) -> CliffordCircuit:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return circuit_from_json(text)
    return parse_circuit(text)


def _write_circuit(path: str, circuit: CliffordCircuit, n: int, k: int, m: int, direction: str) -> None:
    if path.endswith(".json"):
        ins, outs = wire_roles(n, k, m, direction)
        payload = circuit_to_json(circuit, ins, outs)
    else:
        payload = circuit_to_text(circuit)
    with open(path, "w") as fh:
        fh.write(payload)


def _verdict_word(flag: Optional[bool]) -> str:
    if flag is None:
        return "unknown"
    return "non-catastrophic" if flag else "catastrophic"


def _emit(report: dict, config: JobConfig) -> None:
    if config.as_json:
        print(json.dumps(report, indent=2))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


def _render_skeleton(skel: TransformationSkeleton) -> List[str]:
    lines = []
    for i, chain in enumerate(skel.chains, 1):
        slots_in = ["I"] + [f"m[{i},{t}]" for t in range(1, chain.span)]
        slots_out = slots_in[1:] + ["I"]
        for t in range(chain.span):
            lines.append(
                f"{chain.label} frame {t + 1}: "
                f"({slots_in[t]} , {chain.inputs[t].to_string()}) -> "
                f"({chain.outputs[t].to_string()} , {slots_out[t]})"
            )
    return lines


def _render_witness(witness) -> List[str]:
    lines = ["zero-weight cycle with positive logical weight:"]
    for e in witness:
        lines.append(
            f"  {e.before.to_string()} -> {e.after.to_string()}"
            f"  ancilla={e.ancilla.to_string()} info={e.logical.to_string()}"
            f" (logical weight {e.logical_weight})"
        )
    return lines


def _cmd_info(config: JobConfig) -> int:
    code = _read_code(config.code)
    report = {
        "n": code.n,
        "k": code.k,
        "nu": code.nu,
        "generators": [g.to_string() for g in code.generators],
        "valid": True,
    }
    _emit(report, config)
    return EX_OK


def _cmd_synthesize(config: JobConfig) -> int:
    code = _read_code(config.code)
    result = synthesize_encoder(code, max_candidates=config.max_candidates)
    report = {
        "n": code.n,
        "k": code.k,
        "nu": code.nu,
        "memory": result.memory,
        "gates": len(result.circuit),
        "verdict": _verdict_word(result.verdict.non_catastrophic),
    }
    if config.out:
        _write_circuit(config.out, result.circuit, code.n, code.k, result.memory, "encoder")
        report["circuit_file"] = config.out
    if config.skeleton:
        report["skeleton"] = _render_skeleton(result.skeleton)
        if not config.as_json:
            report["skeleton"] = "\n" + "\n".join(report["skeleton"])
    _emit(report, config)
    return EX_OK


def _cmd_check(config: JobConfig) -> int:
    code = _read_code(config.code)
    circuit = _read_circuit(config.encoder)
    assignment = verify_encoder(code, circuit)  # raises on a broken circuit
    matrix = skeleton_commutation_matrix(build_skeleton(code))
    verdict = is_noncatastrophic(circuit, code.n, code.k, assignment.m)
    report = {
        "rows_verified": True,
        "memory": assignment.m,
        "minimal_memory": minimal_memory(matrix),
        "verdict": _verdict_word(verdict.non_catastrophic),
    }
    if verdict.note:
        report["note"] = verdict.note
    lines = None
    if config.witness and verdict.witness is not None:
        lines = _render_witness(verdict.witness)
        report["witness"] = lines if config.as_json else "\n" + "\n".join(lines)
    _emit(report, config)
    if verdict.non_catastrophic is None:
        return EX_INCONCLUSIVE
    return EX_OK if verdict.non_catastrophic else EX_CATASTROPHIC


def _cmd_derive_decoder(config: JobConfig) -> int:
    code = _read_code(config.code)
    circuit = _read_circuit(config.encoder)
    verify_encoder(code, circuit)
    result = derive_online_decoder(code, circuit)
    report = {
        "decoder_memory": result.memory,
        "gates": len(result.circuit),
        "verdict": _verdict_word(result.verdict.non_catastrophic),
    }
    if config.out:
        _write_circuit(config.out, result.circuit, code.n, code.k, result.memory, "decoder")
        report["circuit_file"] = config.out
    if config.skeleton:
        rendered = _render_skeleton(result.skeleton)
        report["skeleton"] = rendered if config.as_json else "\n" + "\n".join(rendered)
    _emit(report, config)
    return EX_OK


_GNUPLOT_TEMPLATE = """\
set datafile separator ","
set logscale y
set xlabel "depolarizing probability p"
set ylabel "word error rate"
set key left top
plot "{csv}" skip 1 using 1:5:6 with yerrorlines title "WER (95% CI)"
"""


def _cmd_simulate(config: JobConfig) -> int:
    code = _read_code(config.code)
    circuit = _read_circuit(config.encoder)
    verify_encoder(code, circuit)
    rows = []
    for p in config.p:
        res = estimate_wer(
            code, circuit, p, config.frames, config.trials,
            seed=config.seed, workers=config.workers,
        )
        rows.append(res)
    header = ["p", "frames", "trials", "failures", "wer", "ci95", "seed"]
    table = [
        [r.p, r.frames, r.trials, r.failures, r.word_error_rate, r.confidence_halfwidth, r.seed]
        for r in rows
    ]
    if config.out:
        with open(config.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(table)
    if config.as_json:
        print(json.dumps([dict(zip(header, row)) for row in table], indent=2))
    else:
        print(",".join(header))
        for row in table:
            print(",".join(str(v) for v in row))
    if config.gnuplot:
        if not config.out:
            raise _UsageError("--gnuplot needs --out (the script references the CSV)")
        script = config.out + ".gp"
        with open(script, "w") as fh:
            fh.write(_GNUPLOT_TEMPLATE.format(csv=config.out))
        print(f"gnuplot script: {script}", file=sys.stderr)
    return EX_OK


_COMMANDS = {
    "info": _cmd_info,
    "synthesize": _cmd_synthesize,
    "check": _cmd_check,
    "derive-decoder": _cmd_derive_decoder,
    "simulate": _cmd_simulate,
}


def run(config: JobConfig) -> int:
    """Execute one job; maps domain errors onto the documented exit codes."""
    try:
        return _COMMANDS[config.command](config)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ParseError, CodeValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATA
    except CompletionSearchExhausted as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EX_INCONCLUSIVE
    except (MapConsistencyError, SkeletonInconsistencyError, SynthesisError,
            OrbitError, TrellisError) as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return EX_INTERNAL


def _float_list(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise _UsageError(f"bad probability list: {text!r}")
    if not values:
        raise _UsageError("empty probability list")
    for v in values:
        if not 0.0 <= v < 0.75:
            raise _UsageError(f"p={v} outside [0, 3/4) where weight decoding is ML")
    return values


def build_parser() -> _Parser:
    parser = _Parser(prog="qconvenc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, encoder=False):
        p.add_argument("--code", required=True, help="code file")
        if encoder:
            p.add_argument("--encoder", required=True, help="encoder circuit file")
        p.add_argument("--json", dest="as_json", action="store_true",
                       help="machine-readable report")

    p = sub.add_parser("info", help="summarize and validate a code file")
    common(p)

    p = sub.add_parser("synthesize", help="build a minimal-memory encoder")
    common(p)
    p.add_argument("--out", help="write the encoder circuit here (.json for JSON)")
    p.add_argument("--skeleton", action="store_true",
                   help="also print the transformation rows with memory slots")
    p.add_argument("--max-candidates", type=int, default=20000,
                   help="completion search budget (default 20000)")

    p = sub.add_parser("check", help="verify a circuit against a code")
    common(p, encoder=True)
    p.add_argument("--witness", action="store_true",
                   help="print the offending zero-weight cycle if catastrophic")

    p = sub.add_parser("derive-decoder", help="derive the matching online decoder")
    common(p, encoder=True)
    p.add_argument("--out", help="write the decoder circuit here (.json for JSON)")
    p.add_argument("--skeleton", action="store_true",
                   help="also print the decoder transformation rows")

    p = sub.add_parser("simulate", help="depolarizing-channel Monte Carlo")
    common(p, encoder=True)
    p.add_argument("--p", required=True, type=_float_list,
                   help="comma-separated depolarizing probabilities")
    p.add_argument("--frames", required=True, type=int, help="window length N")
    p.add_argument("--trials", required=True, type=int, help="trials per point")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--workers", type=int,
                   default=int(os.environ[_WORKERS_ENV]) if os.environ.get(_WORKERS_ENV) else None,
                   help=f"worker processes (default ${_WORKERS_ENV} or serial)")
    p.add_argument("--out", help="write results CSV here")
    p.add_argument("--gnuplot", action="store_true",
                   help="also write a gnuplot script next to the CSV")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    fields = vars(ns).copy()
    if "p" in fields and fields["p"] is not None and fields["command"] == "simulate":
        if fields["frames"] < 1 or fields["trials"] < 1:
            print("usage error: --frames and --trials must be positive", file=sys.stderr)
            return EX_USAGE
    known = {f for f in JobConfig.__dataclass_fields__}
    config = JobConfig(**{k: v for k, v in fields.items() if k in known and v is not None})
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
