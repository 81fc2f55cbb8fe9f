"""Command line front end.

Exit codes: 0 positive verdict or success, 1 established negative verdict
(not PSD, entangled when asked about separability), 2 error or inconclusive.
Reports are canonical JSON (byte-identical across runs with the same
configuration); the hardy command can also emit a CSV trend table, and a few
commands render a PNG figure next to the report when --plot is given.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import block_cones, duality, entanglement, fejer_riesz, hardy, serialize
from .sampling import rng_from_seed
from .serialize import dumps_canonical
from .trig_core import Tolerance, fourier_coeff_via_roots, is_psd, pure_atom


@dataclass
class RunConfig:
    """Resolved invocation: subcommand, tolerances, grid, seed, and I/O paths."""

    command: str
    tol: Tolerance
    grid: int | None
    seed: int
    json_path: str | None
    out_path: str | None
    options: dict


def _load_json(path: str) -> dict:
    import json

    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(report: dict, out_path: str | None) -> None:
    text = dumps_canonical(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_psd(cfg: RunConfig) -> tuple[int, dict]:
    t = serialize.decode_toeplitz_like(_load_json(cfg.json_path))
    rep = is_psd(t.materialize(), cfg.tol)
    report = {
        "command": "psd",
        "claim": "matrix positivity of the (block) Toeplitz input",
        "n": t.n,
        "m": getattr(t, "m", 1),
        "is_psd": rep.is_psd,
        "min_eig": rep.min_eig,
        "eig_tol": cfg.tol.eig_tol,
    }
    return (0 if rep.is_psd else 1), report


def _cmd_pair(cfg: RunConfig) -> tuple[int, dict]:
    payload = _load_json(cfg.json_path)
    t = serialize.decode_toeplitz(payload["t"])
    f = serialize.decode_trig_poly(payload["f"])
    value = duality.pair(t, f)
    report = {
        "command": "pair",
        "claim": "duality pairing sum_k tau_{-k} a_k",
        "n": t.n,
        "value": [value.real, value.imag],
    }
    return 0, report


def _cmd_factorize(cfg: RunConfig) -> tuple[int, dict]:
    f = serialize.decode_poly(_load_json(cfg.json_path))
    factor = fejer_riesz.factorize(f, cfg.tol)
    if hasattr(factor.H, "m"):
        encoded = serialize.encode_block_trig_poly(factor.H)
    else:
        encoded = serialize.encode_trig_poly(factor.H)
    report = {
        "command": "factorize",
        "claim": "spectral factorization F = H* H with analytic H",
        "H": encoded,
        "residual": factor.residual,
        "iterations": factor.iterations,
        "regularization": factor.regularization,
    }
    return 0, report


def _cmd_caratheodory(cfg: RunConfig) -> tuple[int, dict]:
    t = serialize.decode_toeplitz(_load_json(cfg.json_path))
    mu = duality.caratheodory_decompose(t, cfg.tol)
    residual = float(np.linalg.norm(mu.reassemble(t.n) - t.materialize()))
    report = {
        "command": "caratheodory",
        "claim": "PSD Toeplitz = nonnegative combination of rank-one circle atoms",
        "n": t.n,
        "atoms": serialize.encode_atomic_measure(mu)["atoms"],
        "atom_count": mu.size,
        "residual": residual,
    }
    if cfg.options.get("plot"):
        from . import plots

        plots.plot_atoms(mu.lambdas, mu.weights, cfg.options["plot"])
        report["plot"] = True
    return 0, report


def _cmd_separate(cfg: RunConfig) -> tuple[int, dict]:
    t = serialize.decode_block_toeplitz(_load_json(cfg.json_path))
    eps = float(cfg.options.get("eps", 1e-3))
    try:
        dec = block_cones.separable_decompose(t, eps, grid=cfg.grid, tol=cfg.tol)
    except RuntimeError as exc:
        return 2, {
            "command": "separate",
            "claim": "grid-atom separable decomposition of T + eps I",
            "converged": False,
            "error": str(exc),
        }
    atoms = [
        {"lambda": [lam.real, lam.imag], "g": serialize._mat(g)}
        for lam, g in zip(dec.lambdas, dec.weights)
    ]
    report = {
        "command": "separate",
        "claim": "grid-atom separable decomposition of T + eps I",
        "n": t.n,
        "m": t.m,
        "epsilon": dec.epsilon,
        "grid": dec.grid,
        "iterations": dec.iterations,
        "residual": dec.residual,
        "converged": dec.converged,
        "atoms": atoms,
    }
    if cfg.options.get("plot"):
        from . import plots

        mags = [float(np.linalg.norm(g, 2)) for g in dec.weights]
        plots.plot_atoms(dec.lambdas, mags, cfg.options["plot"], ylabel="||g_j||")
        report["plot"] = True
    return 0, report


def _cmd_equiv_check(cfg: RunConfig) -> tuple[int, dict]:
    rng = rng_from_seed(cfg.seed)
    instances = int(cfg.options.get("instances", 20))
    symbols = int(cfg.options.get("symbols", 50))
    suite = block_cones.equivalence_suite(
        rng, instances=instances, symbols_per_instance=symbols, tol=cfg.tol
    )
    report = {
        "command": "equiv-check",
        "claim": "matrix positivity == positivity of all Schur pairings against PSD-valued symbols",
        "seed": cfg.seed,
        "instances": suite["instances"],
        "symbols_per_instance": suite["symbols_per_instance"],
        "disagreements": suite["disagreements"],
    }
    return (0 if suite["disagreements"] == 0 else 1), report


def _cmd_counterexample(cfg: RunConfig) -> tuple[int, dict]:
    which = cfg.options.get("which", "minmax")
    if which != "minmax":
        raise ValueError(f"unknown counterexample {which!r}")
    demo = block_cones.min_neq_max_demo(grid=cfg.grid or 512, tol=cfg.tol)
    report = {
        "command": "counterexample",
        "which": "minmax",
        "claim": "element min-positive with a certified margin yet not max-positive",
        **{
            k: demo[k]
            for k in (
                "floor",
                "lipschitz",
                "certified_margin",
                "min_positive_certified",
                "grid",
                "max_min_eig",
                "coarse_grid",
                "established",
            )
        },
        "obstruction_argmax": list(demo["obstruction_argmax"]),
    }
    if cfg.options.get("plot"):
        from . import plots

        plots.plot_obstruction_landscape(cfg.options["plot"])
        report["plot"] = True
    return (0 if demo["established"] else 2), report


def _cmd_xi(cfg: RunConfig) -> tuple[int, dict]:
    n = int(cfg.options.get("n", 2))
    samples = int(cfg.options.get("samples", 1024))
    xi = entanglement.build_xi(n)
    cert = entanglement.certify_entangled(xi, samples=samples, tol=cfg.tol)
    report = {
        "command": "xi",
        "claim": "separability of the rank-one-valued order-n element",
        "n": n,
        "verdict": cert.verdict,
        "samples": cert.samples,
        "max_second_eigenvalue": cert.max_second_eigenvalue,
        "tol": cert.tol,
    }
    if cert.off_diagonal_witness is not None:
        k, ell, z = cert.off_diagonal_witness
        report["off_diagonal_witness"] = {"row": k, "col": ell, "z": [z.real, z.imag]}
    return (1 if cert.verdict == "entangled" else 0), report


def _cmd_choi_demo(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.json_path:
        t = serialize.decode_toeplitz(_load_json(cfg.json_path))
    else:
        t = pure_atom(3, 1.0)
    demo = entanglement.choi_map_demo(t, cfg.tol)
    report = {
        "command": "choi-demo",
        "claim": "positive map on order-3 Toeplitz matrices acts as a Schur mask",
        **demo,
    }
    return 0, report


def _cmd_hardy(cfg: RunConfig) -> tuple[int, dict]:
    f = serialize.decode_trig_poly(_load_json(cfg.json_path))
    sizes = cfg.options.get("sizes") or [8, 16, 32, 64, 128]
    trend = hardy.hardy_trend_report(f, sizes, grid=cfg.grid or 2**14)
    report = {
        "command": "hardy",
        "claim": "finite-section floors decrease to the circle minimum of the symbol",
        **trend,
    }
    csv_path = cfg.options.get("csv")
    if csv_path:
        lines = ["N,min_eigenvalue"]
        lines += [f"{n},{format(v, '.17g')}" for n, v in zip(trend["sizes"], trend["min_eigenvalues"])]
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        report["csv"] = True
    if cfg.options.get("plot"):
        from . import plots

        plots.plot_hardy_trend(trend, cfg.options["plot"])
        report["plot"] = True
    return 0, report


def _cmd_fourier0(cfg: RunConfig) -> tuple[int, dict]:
    payload = _load_json(cfg.json_path)
    f = serialize.decode_trig_poly(payload if "d" in payload else payload["f"])
    p = int(cfg.options["prime"])
    result = fourier_coeff_via_roots(f, p)
    report = {
        "command": "fourier0",
        "claim": "mean coefficient from averaging over prime roots of unity",
        "p": p,
        "value": [result.real, result.imag],
    }
    return 0, report


_HANDLERS = {
    "psd": _cmd_psd,
    "pair": _cmd_pair,
    "factorize": _cmd_factorize,
    "caratheodory": _cmd_caratheodory,
    "separate": _cmd_separate,
    "equiv-check": _cmd_equiv_check,
    "counterexample": _cmd_counterexample,
    "xi": _cmd_xi,
    "choi-demo": _cmd_choi_demo,
    "hardy": _cmd_hardy,
    "fourier0": _cmd_fourier0,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toepcone",
        description="Positivity certificates for Toeplitz and block Toeplitz structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_json=False):
        p.add_argument("--json", dest="json_path", default=None, required=needs_json,
                       help="input JSON path")
        p.add_argument("--out", dest="out_path", default=None, help="report output path (default stdout)")
        p.add_argument("--tol", type=float, default=1e-8, help="residual tolerance")
        p.add_argument("--eig-tol", type=float, default=1e-10, help="eigenvalue tolerance")
        p.add_argument("--grid", type=int, default=None, help="grid size override")
        p.add_argument("--seed", type=int, default=0, help="random seed")

    common(sub.add_parser("psd", help="PSD verdict for a (block) Toeplitz matrix"), True)
    common(sub.add_parser("pair", help="duality pairing of a Toeplitz matrix with a polynomial"), True)
    common(sub.add_parser("factorize", help="spectral factorization of a nonnegative symbol"), True)

    p = sub.add_parser("caratheodory", help="atomic decomposition of a PSD Toeplitz matrix")
    common(p, True)
    p.add_argument("--plot", default=None, help="write an atom plot PNG to this path")

    p = sub.add_parser("separate", help="grid separable decomposition of a PSD block Toeplitz matrix")
    common(p, True)
    p.add_argument("--eps", type=float, default=1e-3, help="identity slack added before decomposing")
    p.add_argument("--plot", default=None, help="write an atom plot PNG to this path")

    p = sub.add_parser("equiv-check", help="randomized matrix-vs-pairing positivity cross-check")
    common(p)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--symbols", type=int, default=50)

    p = sub.add_parser("counterexample", help="worked separation of min and max positivity")
    common(p)
    p.add_argument("which", nargs="?", default="minmax", choices=["minmax"])
    p.add_argument("--plot", default=None, help="write the obstruction landscape PNG to this path")

    p = sub.add_parser("xi", help="entanglement certificate for the order-n element")
    common(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=1024)

    common(sub.add_parser("choi-demo", help="positive-map demo on order-3 Toeplitz matrices"))

    p = sub.add_parser("hardy", help="finite-section spectral floor trend")
    common(p, True)
    p.add_argument("--sizes", default=None, help="comma-separated section sizes")
    p.add_argument("--csv", default=None, help="also write the trend as CSV to this path")
    p.add_argument("--plot", default=None, help="write a trend plot PNG to this path")

    p = sub.add_parser("fourier0", help="mean coefficient via prime roots of unity")
    common(p, True)
    p.add_argument("--prime", type=int, required=True)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {}
    for key in ("eps", "instances", "symbols", "n", "samples", "prime", "csv", "plot", "which"):
        if hasattr(args, key):
            options[key] = getattr(args, key)
    if getattr(args, "sizes", None):
        options["sizes"] = [int(v) for v in str(args.sizes).split(",") if v]
    return RunConfig(
        command=args.command,
        tol=Tolerance(eig_tol=args.eig_tol, residual_tol=args.tol),
        grid=args.grid,
        seed=args.seed,
        json_path=args.json_path,
        out_path=args.out_path,
        options=options,
    )


def run(cfg: RunConfig) -> int:
    handler = _HANDLERS[cfg.command]
    try:
        code, report = handler(cfg)
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        _emit({"command": cfg.command, "error": str(exc)}, cfg.out_path)
        return 2
    _emit(report, cfg.out_path)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    raise SystemExit(main())
