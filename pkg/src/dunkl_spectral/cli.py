"""Command-line front end: basis tables, spectral transforms, self-checks, half-line runs.

Exit codes: 0 success, 2 validation error, 3 numerical failure (including a
failed verify suite and --strict truncation warnings), 4 I/O or input-format
error.  Identical configuration plus seed produces byte-identical output;
every number is written with 17 significant digits.

DUNKL_SPECTRAL_THREADS caps BLAS parallelism; it must be exported before the
process starts and is applied here before numpy loads.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional


def _apply_thread_cap():
    cap = os.environ.get("DUNKL_SPECTRAL_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


@dataclass
class RunConfig:
    sigma: float = 0.0
    s: float = 1.0
    K: int = 32
    N: Optional[int] = None
    grid_extent_factor: float = 1.5
    seed: int = 0
    output_format: str = "json"


_CONFIG_KEYS = ("sigma", "s", "K", "N", "grid_extent_factor", "seed", "output_format")


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        with open(args.config) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                from .errors import CsvFormatError

                raise CsvFormatError(exc.lineno, f"config is not valid JSON: {exc.msg}")
        for key in _CONFIG_KEYS:
            if key in data:
                setattr(cfg, key, data[key])
    # explicit flags override the config file
    overrides = {
        "sigma": args.sigma,
        "s": args.s,
        "K": args.K,
        "N": args.N,
        "grid_extent_factor": args.grid_extent_factor,
        "seed": args.seed,
        "output_format": args.format,
    }
    for key, val in overrides.items():
        if val is not None:
            setattr(cfg, key, val)
    if cfg.output_format not in ("json", "csv"):
        raise ValueError(f"output format must be json or csv (got {cfg.output_format})")
    return cfg


def _parse_k_list(text: str) -> list:
    """'0,1,2' and '0..5' (inclusive) forms, mixed freely."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or any(k < 0 for k in out):
        raise ValueError(f"bad index list {text!r}")
    return sorted(set(out))


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_basis(args) -> int:
    import numpy as np

    from ._serialize import csv_text
    from .basis import eval_xi, phi_rows
    from .norms import standard_grid
    from .params import SigmaParams

    cfg = _load_config(args)
    params = SigmaParams(cfg.sigma, cfg.s)
    ks = _parse_k_list(args.k)
    grid = standard_grid(params, max(ks), extent_factor=cfg.grid_extent_factor)
    rows = phi_rows(ks, grid, params)
    outdir = args.output or "."
    os.makedirs(outdir, exist_ok=True)
    weight = np.abs(grid) ** params.sigma
    for k in ks:
        phi = rows[k]
        xi = weight * phi
        text = csv_text(
            ("x", "phi", "xi"),
            ((float(x), float(p), float(q)) for x, p, q in zip(grid, phi, xi)),
        )
        path = os.path.join(outdir, f"basis_k{k}.csv")
        with open(path, "w") as fh:
            fh.write(text)
        print(path)
    return 0


_BUILTIN_FNS = ("phi<k>", "gauss", "xgauss")


def _builtin_fn(name: str, params):
    import numpy as np

    from .basis import eval_phi

    if name.startswith("phi") and name[3:].isdigit():
        k = int(name[3:])
        return lambda x: eval_phi(k, x, params)
    if name == "gauss":
        return lambda x: np.exp(-0.5 * params.s * np.asarray(x) ** 2)
    if name == "xgauss":
        return lambda x: np.asarray(x) * np.exp(-0.5 * params.s * np.asarray(x) ** 2)
    raise ValueError(f"unknown built-in function {name!r}; try one of {_BUILTIN_FNS}")


def cmd_transform(args) -> int:
    import warnings

    import numpy as np

    from ._serialize import read_xy_csv
    from .basis import GridFunction
    from .errors import TruncationWarning
    from .params import SigmaParams
    from .quadrature import analyze

    cfg = _load_config(args)
    params = SigmaParams(cfg.sigma, cfg.s)
    if bool(args.input) == bool(args.fn):
        raise ValueError("provide exactly one of --input or --fn")
    if args.input:
        xs, ys = read_xy_csv(args.input)
        order = np.argsort(xs)
        f = GridFunction(np.asarray(xs)[order], np.asarray(ys)[order])
    else:
        f = _builtin_fn(args.fn, params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        coeffs = analyze(f, cfg.K, params, n_nodes=cfg.N)
        truncated = [w for w in caught if issubclass(w.category, TruncationWarning)]
    for w in truncated:
        print(f"warning: {w.message}", file=sys.stderr)
    if cfg.output_format == "csv":
        _write(args.output, coeffs.to_csv())
    else:
        _write(args.output, coeffs.to_json())
    if truncated and args.strict:
        return 3
    return 0


def cmd_verify(args) -> int:
    from ._serialize import csv_text, json_dumps
    from .params import SigmaParams
    from .verify import run_suite

    cfg = _load_config(args)
    params = SigmaParams(cfg.sigma, cfg.s)
    report = run_suite(args.suite, params=params, trials=args.trials, seed=cfg.seed)
    if cfg.output_format == "csv" and args.suite == "decay":
        lines = []
        for name, rows in report["tables"].items():
            for row in rows:
                lines.append((name, row["k"], row["sup_sq"], row["normalized"]))
        _write(args.output, csv_text(("region", "k", "sup_sq", "normalized"), lines))
    else:
        _write(args.output, json_dumps(report))
    return 0 if report["all_passed"] else 3


def cmd_halfline(args) -> int:
    import numpy as np

    from ._serialize import csv_text, json_dumps, read_xy_csv
    from .basis import GridFunction
    from .halfline import PowerLawProblem, eigenvalue, extensions, solve

    cfg = _load_config(args)
    if args.problem:
        with open(args.problem) as fh:
            data = json.load(fh)
        prob = PowerLawProblem(float(data["c1"]), float(data["c2"]), float(data["s"]))
    else:
        if args.c1 is None or args.c2 is None:
            raise ValueError("provide --c1 and --c2 (or --problem file.json)")
        prob = PowerLawProblem(args.c1, args.c2, cfg.s)
    exts = extensions(prob)

    if args.action == "extensions":
        payload = {
            "c1": prob.c1,
            "c2": prob.c2,
            "s": prob.s,
            "extensions": [
                {"a": e.a, "sigma": e.sigma, "admissible": True} for e in exts
            ],
        }
        _write(args.output, json_dumps(payload))
        return 0

    if not exts:
        raise ValueError("no admissible self-adjoint extension for these coefficients")
    ext = exts[min(args.extension, len(exts) - 1)]

    if args.action == "eigen":
        ks = _parse_k_list(args.k or "0..5")
        rows = [(k, float(eigenvalue(ext, k))) for k in ks]
        _write(args.output, csv_text(("k", "lambda"), rows))
        return 0

    if args.action == "solve":
        if not args.input:
            raise ValueError("solve needs --input with samples of g")
        xs, ys = read_xy_csv(args.input)
        order = np.argsort(xs)
        g = GridFunction(np.asarray(xs)[order], np.asarray(ys)[order])
        u = solve(ext, g, cfg.K, shift=args.shift)
        _write(args.output, csv_text(("x", "u"), zip(map(float, u.nodes), map(float, u.values))))
        return 0
    raise ValueError(f"unknown half-line action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sigma", type=float, default=None, help="weight exponent (> -1/2)")
    common.add_argument("--s", type=float, default=None, help="oscillator scale (> 0)")
    common.add_argument("--K", type=int, default=None, help="truncation order")
    common.add_argument("--N", type=int, default=None, help="quadrature node count")
    common.add_argument("--grid-extent-factor", type=float, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--config", default=None, help="JSON config file; flags override")
    common.add_argument("--output", "-o", default=None, help="output file or directory")

    parser = argparse.ArgumentParser(
        prog="dunkl-spectral",
        description="Spectral toolkit for the Dunkl harmonic oscillator on the line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="sample phi_k and xi_k to CSV")
    p.add_argument("--k", required=True, help="indices, e.g. 0,1,2 or 0..12")

    p = sub.add_parser("transform", parents=[common], help="expand samples in the eigenbasis")
    p.add_argument("--input", default=None, help="CSV of x,f(x) samples")
    p.add_argument("--fn", default=None, help="built-in test function (phi3, gauss, xgauss)")
    p.add_argument("--strict", action="store_true", help="unresolved spectrum exits 3")

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=("algebra", "embeddings", "decay", "halfline", "all"), default="all")
    p.add_argument("--trials", type=int, default=50)

    p = sub.add_parser("halfline", parents=[common], help="half-line operator runs")
    p.add_argument("action", choices=("extensions", "eigen", "solve"))
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--problem", default=None, help="JSON file with c1, c2, s")
    p.add_argument("--k", default=None, help="eigen indices, e.g. 0..5")
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--input", default=None, help="CSV of x,g(x) samples on x > 0")
    p.add_argument("--extension", type=int, default=0, help="index into the extension list")
    return parser


_HANDLERS = {
    "basis": cmd_basis,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "halfline": cmd_halfline,
}


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)

    from .errors import CsvFormatError, TruncationLossError

    try:
        return _HANDLERS[args.command](args)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (OverflowError, FloatingPointError, TruncationLossError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        import numpy as np

        if isinstance(exc, np.linalg.LinAlgError):
            print(f"error: {exc}", file=sys.stderr)
            return 3
        if isinstance(exc, ValueError):
            print(f"error: {exc}", file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
