"""Command-line front end: run a sweep and write the results as CSV.

Example::

    irs-cf-sim --users 2 --sweep-m 4,8,16,32 --snr-db 5 --seed 7 --out rate_vs_m.csv

A ``--config`` file holds ``key = value`` lines using the long flag names
without the leading dashes (``users = 2``, ``sweep-snr-db = 0,5,10``,
``no-direct-link = true``). Flags given on the command line win.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import re
import shlex
import sys
import tempfile
from dataclasses import dataclass
from typing import IO, Sequence

from . import __version__
from .baselines import ALL_METHODS, MethodId
from .channel import CoefficientVector, SystemParams, db_to_linear
from .montecarlo import (
    DEFAULT_SEED,
    EvalConfig,
    SweepSpec,
    SweepTable,
    SweepVariable,
    run_sweep,
)
from .optimizer import AOConfig

PROG = "irs-cf-sim"
CSV_COLUMNS = ("sweep_var,sweep_value,method,mean_rate_bits,"
               "stderr_bits,num_realizations,num_inits")

DEFAULTS = {
    "users": 2,
    "irs_elements": 20,
    "snr_db": 5.0,
    "realizations": 100,
    "inits": 10,
    "random_samples": 10,
    "seed": DEFAULT_SEED,
    "max_ao_iters": 50,
    "no_direct_link": False,
    "shared_draws": False,
    "out": "-",
    "verbose": 0,
}
_SWEEP_KEYS = ("sweep_m", "sweep_snr_db")
_BOOL_KEYS = ("no_direct_link", "shared_draws")

_GAUSS_INT = re.compile(r"^([+-]?\d+)(?:([+-]\d+)i)?$")


class UsageError(Exception):
    """Invalid command line or configuration file."""


@dataclass(frozen=True)
class RunConfig:
    spec: SweepSpec
    output_path: str = "-"
    format: str = "csv"
    verbosity: int = 0
    # dB value as typed; SweepSpec only keeps the linear SNR
    snr_db: float | None = None


# -- literal parsers ----------------------------------------------------------

def parse_coeffs(text: str) -> CoefficientVector:
    """Parse ``"1+0i, 2-1i, 3"`` into a :class:`CoefficientVector`."""
    entries = []
    for tok in "".join(text.split()).split(","):
        m = _GAUSS_INT.match(tok)
        if m is None:
            raise ValueError(f"malformed complex-integer literal {tok!r}")
        entries.append(complex(int(m.group(1)), int(m.group(2) or 0)))
    return CoefficientVector(entries)


def _number_list(text: str, kind):
    vals = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty entry in {text!r}")
        vals.append(kind(tok))
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError("values must be strictly increasing")
    return tuple(vals)


def _methods(text: str) -> tuple[MethodId, ...]:
    if not text.strip():
        return ()
    return tuple(dict.fromkeys(MethodId.parse(t) for t in text.split(",")))


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _typed(kind, flag):
    def conv(text):
        try:
            return kind(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    conv.__name__ = flag
    return conv


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=PROG, argument_default=argparse.SUPPRESS,
                description="Monte-Carlo sweeps of IRS-assisted compute-and-forward rates.")
    p.add_argument("--config", metavar="PATH", help="key=value file; flags override it")
    p.add_argument("--users", type=int, metavar="K", help="number of users (default 2)")
    p.add_argument("--irs-elements", type=int, metavar="M",
                   help="IRS elements when sweeping SNR (default 20)")
    p.add_argument("--sweep-m", type=_typed(lambda s: _number_list(s, int), "list"),
                   metavar="M1,M2,...", help="sweep over the number of IRS elements")
    p.add_argument("--snr-db", type=float, metavar="DB",
                   help="SNR in dB when sweeping M (default 5)")
    p.add_argument("--sweep-snr-db", type=_typed(lambda s: _number_list(s, float), "list"),
                   metavar="S1,S2,...", help="sweep over SNR in dB")
    p.add_argument("--coeffs", type=_typed(parse_coeffs, "coeffs"), metavar="A",
                   help='Gaussian integers "1+0i,1+0i,..." (default all ones)')
    p.add_argument("--methods", type=_typed(_methods, "methods"),
                   help="comma list of " + ",".join(m.value for m in ALL_METHODS))
    p.add_argument("--realizations", type=int, help="channel realizations (default 100)")
    p.add_argument("--inits", type=int, help="AO initial phase vectors (default 10)")
    p.add_argument("--random-samples", type=int,
                   help="random phase vectors for RndPhz baselines (default 10)")
    p.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--no-direct-link", action="store_true", help="set h = 0")
    p.add_argument("--shared-draws", action="store_true",
                   help="reuse AO initial phases as RndPhz samples")
    p.add_argument("--max-ao-iters", type=int, help="AO sweep cap (default 50)")
    p.add_argument("--out", metavar="PATH", help="output CSV path, '-' for stdout")
    p.add_argument("-v", "--verbose", action="count", help="more logging")
    p.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    return p


def _read_config(path: str, parser) -> dict:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    tokens = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config: {path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "config":
            raise UsageError(f"--config: {path}:{n}: nested config not allowed")
        if key.replace("-", "_") in _BOOL_KEYS:
            try:
                if _bool(value):
                    tokens.append(f"--{key}")
            except ValueError as exc:
                raise UsageError(f"--{key}: {exc}") from None
        else:
            tokens += [f"--{key}", value]
    return vars(parser.parse_args(tokens))


def _positive(name, value, minimum=1):
    if value < minimum:
        bound = "positive" if minimum == 1 else f">= {minimum}"
        raise UsageError(f"--{name.replace('_', '-')} must be {bound}, got {value}")


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Turn command-line tokens into a :class:`RunConfig`.

    Raises
    ------
    UsageError
        With a message naming the offending flag.
    """
    parser = build_parser()
    cli = vars(parser.parse_args(list(argv)))
    opts = {}
    if "config" in cli:
        opts.update(_read_config(cli.pop("config"), parser))
        if any(k in cli for k in _SWEEP_KEYS):
            for k in _SWEEP_KEYS:
                opts.pop(k, None)
    opts.update(cli)
    for k, v in DEFAULTS.items():
        opts.setdefault(k, v)

    n_sweeps = sum(k in opts for k in _SWEEP_KEYS)
    if n_sweeps != 1:
        raise UsageError("exactly one of --sweep-m and --sweep-snr-db is required")

    for name in ("users", "realizations", "inits", "random_samples", "max_ao_iters"):
        _positive(name, opts[name])
    _positive("irs_elements", opts["irs_elements"], minimum=0)

    K = opts["users"]
    coeffs = opts.get("coeffs") or CoefficientVector.ones(K)
    if len(coeffs) != K:
        raise UsageError(f"--coeffs has {len(coeffs)} entries but --users is {K}")

    if "sweep_m" in opts:
        variable, values = SweepVariable.NUM_IRS_ELEMENTS, opts["sweep_m"]
        if values[0] < 0:
            raise UsageError("--sweep-m values must be non-negative")
        base_m = values[0]
    else:
        variable, values = SweepVariable.SNR_DB, opts["sweep_snr_db"]
        base_m = opts["irs_elements"]

    base = SystemParams(K, base_m, db_to_linear(opts["snr_db"]), coeffs,
                        not opts["no_direct_link"])
    eval_cfg = EvalConfig(
        num_chnl_realz=opts["realizations"],
        num_init_point=opts["inits"],
        n_random_phase=opts["random_samples"],
        ao=AOConfig(max_ao_iters=opts["max_ao_iters"]),
        master_seed=opts["seed"],
        methods=opts.get("methods", ALL_METHODS),
        shared_draws=opts["shared_draws"],
    )
    spec = SweepSpec(base, variable, values, eval_cfg)
    return RunConfig(spec, opts["out"], "csv", opts["verbose"], float(opts["snr_db"]))


# -- output -------------------------------------------------------------------

def _fmt(x) -> str:
    return format(float(x), ".12g")


def to_argv(config: RunConfig) -> list[str]:
    """Canonical flags that reproduce ``config`` (output path excluded)."""
    spec, ev = config.spec, config.spec.eval
    base = spec.base
    argv = ["--users", str(base.num_users), "--coeffs", base.coeffs.format()]
    joined = ",".join(str(v) if isinstance(v, int) else _fmt(v) for v in spec.values)
    if spec.variable is SweepVariable.NUM_IRS_ELEMENTS:
        snr_db = config.snr_db
        if snr_db is None:
            snr_db = 10.0 * math.log10(base.snr_linear)
        argv += ["--sweep-m", joined, "--snr-db", repr(float(snr_db))]
    else:
        argv += ["--sweep-snr-db", joined, "--irs-elements", str(base.num_irs_elements)]
    argv += ["--methods", ",".join(m.value for m in ev.methods),
             "--realizations", str(ev.num_chnl_realz),
             "--inits", str(ev.num_init_point),
             "--random-samples", str(ev.n_random_phase),
             "--seed", str(ev.master_seed),
             "--max-ao-iters", str(ev.ao.max_ao_iters)]
    if not base.direct_link_enabled:
        argv.append("--no-direct-link")
    if ev.shared_draws:
        argv.append("--shared-draws")
    return argv


def header_lines(config: RunConfig) -> list[str]:
    base, ev = config.spec.base, config.spec.eval
    direct = "true" if base.direct_link_enabled else "false"
    return [
        f"# {PROG} v{__version__} seed={ev.master_seed} k={base.num_users} "
        f"a={base.coeffs.format()} direct_link={direct}",
        "# args: " + shlex.join(to_argv(config)),
        CSV_COLUMNS,
    ]


def write_csv(table: SweepTable, config: RunConfig, out: IO[str]) -> None:
    """Write the header lines and one row per (sweep value, method)."""
    lines = header_lines(config)
    for value, st in table.rows:
        sval = str(value) if isinstance(value, int) else _fmt(value)
        lines.append(",".join([
            table.variable.value, sval, st.method.value, _fmt(st.mean_bits),
            _fmt(st.stderr_bits), str(st.num_realizations), str(st.num_inits)]))
    out.write("".join(line + "\n" for line in lines))


def write_csv_file(table: SweepTable, config: RunConfig, path: str) -> None:
    """Write atomically: a temp file in the target directory is renamed into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".irs-cf-", suffix=".csv.tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            write_csv(table, config, fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    level = {0: logging.WARNING, 1: logging.INFO}.get(config.verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    table = run_sweep(config.spec)
    path = config.output_path
    try:
        if path == "-":
            write_csv(table, config, sys.stdout)
        else:
            write_csv_file(table, config, path)
    except OSError as exc:
        print(f"{PROG}: error: cannot write {path}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
