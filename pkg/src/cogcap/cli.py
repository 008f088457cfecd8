"""Command-line surface: analysis and simulation subcommands.

Subcommands: capacity, region, mimo-limit, simulate, protocol, verify.
Channel descriptions come from a flat key/value config file (``key = value``
per line, ``#`` comments); see the README for the grammar.  JSON payloads go
to stdout, diagnostics to stderr.  Exit codes: 0 success, 2 usage/config
error, 3 domain or regime error.  Report paths that write CSV also render a
companion PNG figure (``--no-plot`` disables).

Seed precedence: command-line flag > ``seed`` key in the config file > 0.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .channel import (CONFIG_KEYS, PHASE_KEYS, CognitiveChannel,
                      channel_from_mapping, to_standard)
from .errors import CogcapError, ConfigError, DomainError, RegimeError
from .link_sim import SCHEMES, SimConfig, simulate
from .mimo_bc import CovariancePair, convergence_sweep
from .protocol import run_csi_acquisition, run_ramping_controller
from .rates_high import b_max, boundary_point_high, high_regime_point, mu_of_alpha
from .rates_low import alpha_star, alpha_diversity, cognitive_capacity
from .region import RegionCurve, frontier_low, sum_capacity
from .errors import DegenerateSlope, EmptySet, ToleranceError
from .verify import run_all

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_KNOWN_CONFIG_KEYS = set(CONFIG_KEYS) | set(PHASE_KEYS) | {"seed"}


def read_config(path: str) -> dict:
    """Parse the flat key/value channel config; strict about unknown keys."""
    values: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read channel config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, val = line.partition("=")
        key, val = key.strip().lower(), val.strip().strip('"').strip("'")
        if key not in _KNOWN_CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = int(val) if key == "seed" else float(val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad numeric value {val!r}") from exc
    return values


def load_channel(path: str) -> tuple[CognitiveChannel, dict]:
    values = read_config(path)
    return channel_from_mapping(values), values


def resolve_seed(flag_seed, config_values: dict) -> int:
    if flag_seed is not None:
        return int(flag_seed)
    if "seed" in config_values:
        return int(config_values["seed"])
    return 0


def _fmt12(x: float) -> str:
    """12 significant digits, '.' decimal point."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def emit_region_csv(curve: RegionCurve, path_or_handle) -> None:
    """Write the frontier CSV: '\n' newlines, 12 significant digits.

    Low regime header is ``alpha,rp,rc``; high regime adds the admissibility
    threshold and the boundary flag: ``alpha,rp,rc,a_min,on_boundary``.
    """
    high = curve.regime == "high"
    header = "alpha,rp,rc,a_min,on_boundary" if high else "alpha,rp,rc"
    rows = [header]
    a_min = curve.extras.get("a_min")
    on_boundary = curve.extras.get("on_boundary")
    for i in range(len(curve)):
        cells = [_fmt12(curve.alphas[i]), _fmt12(curve.rp[i]), _fmt12(curve.rc[i])]
        if high:
            cells.append(_fmt12(a_min[i]))
            cells.append("true" if on_boundary[i] else "false")
        rows.append(",".join(cells))
    text = "\n".join(rows) + "\n"
    if hasattr(path_or_handle, "write"):
        path_or_handle.write(text)
    else:
        with open(path_or_handle, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def parse_region_csv(path) -> dict:
    """Read back an emitted region CSV as column arrays (round-trip helper)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = lines[0].split(",")
    cols: dict = {h: [] for h in header}
    for ln in lines[1:]:
        for h, cell in zip(header, ln.split(",")):
            cols[h].append(cell == "true" if h == "on_boundary" else float(cell))
    return {h: (v if h == "on_boundary" else np.array(v)) for h, v in cols.items()}


def _print_json(obj, stream=None) -> None:
    json.dump(obj, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _channel_block(ch: CognitiveChannel) -> dict:
    return {"channel": ch.as_record(), "standard": to_standard(ch).as_record()}


def _maybe_plot(args, render) -> None:
    if getattr(args, "no_plot", False) or not args.output:
        return
    from . import plotting
    fig_path = str(args.output)
    fig_path = fig_path[:-4] + ".png" if fig_path.endswith(".csv") else fig_path + ".png"
    plotting.save_figure(render(), fig_path)
    print(f"figure written to {fig_path}", file=sys.stderr)


# ---------------------------------------------------------------- subcommands

def cmd_capacity(args) -> int:
    ch, _ = load_channel(args.channel)
    std = to_standard(ch)
    if not std.low_interference:
        raise RegimeError(
            f"cognitive capacity is characterized only in the low-interference "
            f"regime a <= 1; this channel has a = {std.a:.6g}"
        )
    split = alpha_star(std)
    cap = cognitive_capacity(std)
    out = {"alpha_star": split.alpha, "rp_star": cap.rp, "rc_star": cap.rc,
           "regime": "low", **_channel_block(ch)}
    _print_json(out)
    return EXIT_OK


def _region_low(args, std) -> tuple[RegionCurve, dict]:
    curve = frontier_low(std, n_points=args.n_points)
    summary: dict = {"regime": "low"}
    if std.low_interference:
        summary["alpha_star"] = alpha_star(std).alpha
    if std.a >= 1.0:
        summary["sum_capacity"] = sum_capacity(std)
    return curve, summary


def _region_high(args, std) -> tuple[RegionCurve, dict]:
    alphas = np.linspace(0.0, 1.0, args.n_points)
    rp, rc, a_min, flags, mus = [], [], [], [], []
    for al in alphas:
        pt = high_regime_point(std, float(al))
        rp.append(pt.rates.rp)
        rc.append(pt.rates.rc)
        a_min.append(pt.a_min)
        try:
            rep = boundary_point_high(std, float(al), n_grid=args.cov_grid,
                                      b_stop=args.b_stop)
            flags.append(rep.on_boundary)
            mu = rep.conditions["slope_weight"]["mu_alpha"]
        except (DegenerateSlope, ToleranceError):
            flags.append(False)
            mu = None
        if mu is not None and math.isfinite(mu):
            mus.append(mu)
    curve = RegionCurve(alphas=alphas, rp=np.array(rp), rc=np.array(rc), regime="high",
                        extras={"a_min": np.array(a_min), "on_boundary": flags})
    summary: dict = {"regime": "high"}
    try:
        summary["b_max"] = b_max(std.Pp, std.Pc, std.a, args.mu,
                                 b_stop=args.b_stop, n_grid=args.cov_grid)
    except (EmptySet, DomainError) as exc:
        summary["b_max"] = None
        print(f"b_max unavailable: {exc}", file=sys.stderr)
    summary["mu_range"] = [min(mus), max(mus)] if mus else None
    return curve, summary


def cmd_region(args) -> int:
    ch, _ = load_channel(args.channel)
    std = to_standard(ch)
    if args.regime == "low":
        if args.n_points is None:
            args.n_points = 1001
        curve, summary = _region_low(args, std)
    else:
        if args.n_points is None:
            args.n_points = 101
        curve, summary = _region_high(args, std)
    summary.update(_channel_block(ch))

    if args.output:
        emit_region_csv(curve, args.output)
        _print_json(summary)
    else:
        emit_region_csv(curve, sys.stdout)
        _print_json(summary, stream=sys.stderr)

    def render():
        from .plotting import region_figure
        marker = None
        if curve.regime == "low" and "alpha_star" in summary:
            cap = cognitive_capacity(std)
            marker = (cap.rp, cap.rc)
        return region_figure(curve, title=f"a={std.a:.3g}, b={std.b:.3g}", marker_point=marker)

    _maybe_plot(args, render)
    return EXIT_OK


def cmd_mimo_limit(args) -> int:
    ch, _ = load_channel(args.channel)
    std = to_standard(ch)
    alpha = float(args.alpha)
    beta = float(args.beta)
    kp_bound = math.sqrt(alpha * beta * std.Pp * std.Pc)
    kc_bound = math.sqrt((1.0 - alpha) * (1.0 - beta) * std.Pp * std.Pc)
    k_p = kp_bound if args.kp is None else float(args.kp)
    k_c = kc_bound if args.kc is None else float(args.kc)
    cov = CovariancePair(Pp=std.Pp, Pc=std.Pc, beta=beta, alpha=alpha, k_p=k_p, k_c=k_c)
    eps_seq = [10.0 ** (-k) for k in range(1, args.decades + 1)]
    m_seq = [10.0 ** k for k in range(1, args.decades + 1)]
    sweep = convergence_sweep(std, cov, eps_seq, m_seq)

    header = "eps,M,rp,rc,rp_limit,rc_limit,dev"
    lines = [header] + [
        ",".join(_fmt12(v) for v in (r.eps, r.M, r.rp, r.rc, r.rp_limit, r.rc_limit, r.dev))
        for r in sweep.rows
    ]
    text = "\n".join(lines) + "\n"
    summary = {"max_dev": sweep.max_dev, "final_dev": sweep.final_dev,
               "beta": beta, "alpha": alpha, "k_p": k_p, "k_c": k_c,
               **_channel_block(ch)}
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        _print_json(summary)
    else:
        sys.stdout.write(text)
        _print_json(summary, stream=sys.stderr)

    def render():
        from .plotting import sweep_figure
        return sweep_figure(sweep.rows, title=f"limit convergence, a={std.a:.3g}")

    _maybe_plot(args, render)
    return EXIT_OK


def cmd_simulate(args) -> int:
    ch, values = load_channel(args.channel)
    seed = resolve_seed(args.seed, values)
    std = to_standard(ch)

    if args.alpha == "auto":
        if args.scheme == "two-tap-isi":
            alpha = alpha_diversity(ch).alpha
        elif args.scheme == "aaf-probe":
            alpha = None
        else:
            alpha = alpha_star(std).alpha
    else:
        alpha = None if args.scheme == "aaf-probe" else float(args.alpha)

    channel = std if args.scheme == "superposition" else ch
    if args.scheme == "beamforming-complex" and not ch.is_complex:
        raise DomainError(
            "beamforming-complex needs a complex-gain channel; add phase_* keys "
            "to the config (phase 0.0 is fine)"
        )
    n_blocks = args.blocks if args.csv else 1
    cfg = SimConfig(scheme=args.scheme, channel=channel, n_symbols=args.n,
                    seed=seed, alpha=alpha, l_c=args.l_c, n_blocks=n_blocks)
    trace = simulate(cfg)

    out = {
        "scheme": trace.scheme, "n": trace.n_symbols, "seed": trace.seed,
        "alpha": trace.alpha,
        "empirical_sinr_p": trace.sinr_p, "empirical_sinr_s": trace.sinr_s,
        "implied_rp": trace.implied_rp, "implied_rc": trace.implied_rc,
        "target_rp": trace.target_rp, "target_rc": trace.target_rc,
        "rel_err": trace.rel_err, "flags": trace.flags,
        **_channel_block(ch),
    }
    _print_json(out)

    if args.csv and trace.blocks:
        keys = list(trace.blocks[0])
        lines = [",".join(keys)]
        for row in trace.blocks:
            lines.append(",".join(
                str(row[k]) if k == "block" else _fmt12(row[k]) for k in keys))
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
        if not args.no_plot:
            from .plotting import blocks_figure, save_figure
            fig_path = args.csv[:-4] + ".png" if args.csv.endswith(".csv") else args.csv + ".png"
            save_figure(blocks_figure(trace.blocks, title=trace.scheme), fig_path)
            print(f"figure written to {fig_path}", file=sys.stderr)
    return EXIT_OK


def cmd_protocol(args) -> int:
    ch, values = load_channel(args.channel)
    seed = resolve_seed(args.seed, values)
    if args.mode == "csi":
        res = run_csi_acquisition(ch, n_probe=args.n_probe,
                                  quantizer_bits=args.bits, seed=seed,
                                  noiseless=args.noiseless)
        final = {
            "f_hat": {"re": res.f_hat.real, "im": res.f_hat.imag},
            "p_hat": {"re": res.p_hat.real, "im": res.p_hat.imag},
            "h_hat": {"re": res.h_hat.real, "im": res.h_hat.imag},
            "arq_count": res.state.arq_count,
        }
        events = res.events
    else:
        res = run_ramping_controller(ch, steps=args.steps, dPc=args.dpc,
                                     dAlpha=args.dalpha, seed=seed,
                                     policy=args.policy)
        final = {
            "pc": res.state.Pc_current, "alpha": res.state.alpha_current,
            "arq_count": res.state.arq_count, "settled": res.settled,
            "epochs": res.epochs,
        }
        events = res.events
    out = {
        "mode": args.mode, "seed": seed,
        "events": [{"t": e.t, "kind": e.kind, "payload": e.payload} for e in events],
        "final": final, **_channel_block(ch),
    }
    _print_json(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = run_all()
    width = max(len(r.name) for r in rows)
    all_ok = True
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        all_ok = all_ok and r.passed
        print(f"[{status}] {r.name:<{width}}  {r.detail}")
    if args.json:
        _print_json({"all_passed": all_ok,
                     "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                                for r in rows]},
                    stream=sys.stderr)
    print(f"{'all checks passed' if all_ok else 'FAILURES present'}")
    return EXIT_OK if all_ok else 1


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogcap",
        description="Capacity analysis and link simulation for the Gaussian "
                    "cognitive radio channel (rates in nats/channel-use).")
    parser.add_argument("--version", action="version", version=f"cogcap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_channel(p):
        p.add_argument("--channel", required=True, help="flat key/value channel config file")

    p = sub.add_parser("capacity", help="optimal power split and cognitive capacity (a <= 1)")
    add_channel(p)
    p.set_defaults(fn=cmd_capacity)

    p = sub.add_parser("region", help="capacity-region frontier CSV + JSON summary")
    add_channel(p)
    p.add_argument("--regime", choices=["low", "high"], default="low")
    p.add_argument("--n-points", type=int, default=None,
                   help="alpha grid size (default 1001 low / 101 high)")
    p.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    p.add_argument("--mu", type=float, default=1.0,
                   help="weight used for the high-regime b_max summary")
    p.add_argument("--cov-grid", type=int, default=41,
                   help="per-axis grid for covariance maximizations in boundary checks")
    p.add_argument("--b-stop", type=float, default=4.0, help="upper end of the b_max scan")
    p.add_argument("--no-plot", action="store_true", help="skip the companion figure")
    p.set_defaults(fn=cmd_region)

    p = sub.add_parser("mimo-limit", help="genie-channel rates vs their analytic limit")
    add_channel(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--kp", type=float, default=None,
                   help="cross covariance of the relayed part (default: upper bound)")
    p.add_argument("--kc", type=float, default=None,
                   help="cross covariance of the own-message part (default: upper bound)")
    p.add_argument("--decades", type=int, default=6,
                   help="sweep eps=1e-1..1e-D and M=1e1..1e+D")
    p.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(fn=cmd_mimo_limit)

    p = sub.add_parser("simulate", help="symbol-level Monte Carlo SINR check")
    add_channel(p)
    p.add_argument("--scheme", choices=list(SCHEMES), required=True)
    p.add_argument("--n", type=int, default=100_000, help="number of symbols")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", default="auto",
                   help="power split in [0,1], or 'auto' for the scheme's optimum")
    p.add_argument("--l-c", type=int, default=1, help="listening delay (two-tap scheme)")
    p.add_argument("--csv", default=None, help="write per-block moments CSV here")
    p.add_argument("--blocks", type=int, default=16, help="blocks for --csv")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("protocol", help="CSI acquisition or ARQ ramping simulation")
    add_channel(p)
    p.add_argument("--mode", choices=["csi", "ramp"], required=True)
    p.add_argument("--n-probe", type=int, default=1000)
    p.add_argument("--bits", type=int, default=None, help="quantizer bits per real dimension")
    p.add_argument("--noiseless", action="store_true")
    p.add_argument("--dpc", type=float, default=None, help="power step (default Pc/100)")
    p.add_argument("--dalpha", type=float, default=0.01)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--policy", choices=["increase-alpha", "decrease-pc"],
                   default="increase-alpha")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_protocol)

    p = sub.add_parser("verify", help="run the oracle suite and print a pass/fail table")
    p.add_argument("--json", action="store_true", help="also emit JSON results to stderr")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CogcapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
