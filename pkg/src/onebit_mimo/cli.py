"""Reproduction harness: figure/table experiment configs in, CSV/JSON out.

Subcommands:
    run <config.json> [--out DIR] [--threads N]   compute one figure or table
    validate <config.json>                        schema + budget report
    breakeven --pt-dbm 23 --eta 0.4 --fom-pj 10 --bits 10

Exit codes: 0 ok, 2 config error, 3 enumeration-budget error.
"""

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .beamforming import (beamforming_ebn0_bounds, best_mi_quartet,
                          best_power_quartet, ergodic_beamforming_ebn0)
from .capacity import QuartetDistribution, blahut_arimoto, ergodic_mi, \
    mutual_information
from .channel import (ChannelSpec, LosGeometry, channel_spec_from_json,
                      complex_normal, los_planar, rayleigh_rng)
from .lowsnr import (LowSnrMetrics, equiprobable_ebn0_min,
                     iid_rayleigh_equiprobable_s0, low_snr_curve, metrics)
from .numerics import LOG2E
from .power_model import breakeven_bandwidth, watts_from_dbm
from .quantized_dmc import MAX_JOINT_BITS, EnumerationBudgetError
from .rayleigh_bounds import ergodic_bounds, table1_rows

FIGURE_IDS = ("fig1", "fig2_expansion_overlay", "fig4_planar_ebn0",
              "fig5_ebn0min_vs_n_los", "fig6_planar_snr_sweep",
              "fig7_eta1_bf_vs_eq", "fig8_eta_sweep", "fig9_rayleigh_ebn0min",
              "fig10_rayleigh_snr_sweep", "fig11_bounds_square",
              "fig12_bounds_skewed", "table1", "breakeven")


class ConfigError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))  # shortest round-trip decimal
    return str(v)


def _csv_text(columns, rows, meta: str) -> str:
    lines = [f"# {meta}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _pmap(func, items, threads: int):
    """Work pool over grid points; results assembled in order."""
    if threads <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _grid(cfg: dict, key: str, default) -> np.ndarray:
    g = np.asarray(cfg.get(key, default), dtype=float)
    if g.ndim != 1 or g.size < 1:
        raise ConfigError(f"{key} must be a non-empty 1-D list")
    if np.any(np.diff(g) <= 0):
        raise ConfigError(f"{key} must be strictly increasing")
    return g


def _check_mi_budget(nt: int, nr: int):
    if 2 * (nt + nr) > MAX_JOINT_BITS:
        raise EnumerationBudgetError(
            f"exact MI with Nt={nt}, Nr={nr} needs 2(Nt+Nr)="
            f"{2 * (nt + nr)} packed bits, over the {MAX_JOINT_BITS}-bit budget")


def _channel_spec(cfg: dict, default: dict) -> ChannelSpec:
    obj = dict(default)
    obj.update(cfg.get("channel", {}))
    try:
        return channel_spec_from_json(obj)
    except (KeyError, ValueError) as e:
        raise ConfigError(f"bad channel spec: {e}")


def _eta1_spherical(n: int, wavelength: float = 0.005,
                    range_d: float = 10.0) -> dict:
    # spacing chosen so eta = d^2 Nmax / (lambda D) hits exactly 1
    d = float(np.sqrt(wavelength * range_d / n))
    return {"model": "los_spherical", "nt": n, "nr": n,
            "wavelength": wavelength, "spacing_tx": d, "spacing_rx": d,
            "range_d": range_d}


# -- curve primitives ---------------------------------------------------------

def _parametric_se(snr_grid, se_values):
    """(snr_db, se_bits, ebn0_db) rows; zero-rate points are dropped."""
    rows = []
    for snr_db, se in zip(snr_grid, se_values):
        if se <= 1e-12:
            continue
        snr = 10.0 ** (snr_db / 10.0)
        rows.append((float(snr_db), float(se), float(10 * np.log10(snr / se))))
    return rows


def _fullres_siso_se(snr: float, n_samples: int, seed: int) -> float:
    """Ergodic E[log2(1 + SNR |h|^2)] for scalar Rayleigh, Monte Carlo."""
    rng = rayleigh_rng(seed)
    h = complex_normal(n_samples, rng)
    return float(np.mean(np.log2(1.0 + snr * np.abs(h) ** 2)))


def _strategy_point(h, snr: float, strategies):
    row = []
    for s in strategies:
        if s == "equiprobable":
            p = QuartetDistribution.equiprobable(h.nt)
            row.append(mutual_information(h, snr, p).mi_bits)
        elif s == "beamforming":
            best = best_mi_quartet(h, snr, mode="subset")
            row.append(best.objective)
            row.append(str(best.quartet.representative))  # sign pattern
        elif s == "capacity":
            row.append(blahut_arimoto(h, snr).capacity_bits)
        else:
            raise ConfigError(f"unknown strategy {s!r}")
    return row


def _strategy_columns(strategies):
    cols = []
    for s in strategies:
        if s == "capacity":
            cols.append("capacity_bits")
        elif s == "beamforming":
            cols += ["se_beamforming", "beamforming_quartet"]
        else:
            cols.append(f"se_{s}")
    return cols


def _channel_report(h) -> str:
    """Receive-set size and high-SNR limit for a fixed channel, as JSON."""
    from .quantized_dmc import receive_set
    try:
        size = len(receive_set(h))
        report = {"nt": h.nt, "nr": h.nr, "receive_set_size": size,
                  "c_infinity_bits": float(np.log2(size))}
    except ValueError:
        # degenerate channel: some Hx hits a quantization boundary exactly
        report = {"nt": h.nt, "nr": h.nr, "receive_set_size": None,
                  "c_infinity_bits": None}
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- figure handlers ----------------------------------------------------------

def _run_siso_overlay(cfg: dict, threads: int, low_snr_only: bool) -> dict:
    spec = _channel_spec(cfg, {"model": "iid_rayleigh", "nt": 1, "nr": 1})
    if (spec.nt, spec.nr) != (1, 1) or spec.model != "iid_rayleigh":
        raise ConfigError("this figure is defined for 1x1 IID Rayleigh")
    n = int(cfg.get("n_samples", 2000))
    seed = int(cfg.get("seed", 0))
    if low_snr_only:
        snr_grid = _grid(cfg, "snr_db_grid", np.arange(-15.0, 6.0, 1.0))
        ebn0_grid = _grid(cfg, "ebn0_db_grid", np.arange(-2.0, 4.25, 0.25))
    else:
        snr_grid = _grid(cfg, "snr_db_grid", np.arange(-15.0, 21.0, 1.0))
        ebn0_grid = _grid(cfg, "ebn0_db_grid", np.arange(-2.0, 10.25, 0.25))

    m1 = LowSnrMetrics(ebn0_min_linear=equiprobable_ebn0_min(1),
                       s0=iid_rayleigh_equiprobable_s0(1, 1))
    # full resolution: minimum scaled by 2/pi; Rayleigh slope 2(E|h|^2)^2/E|h|^4
    mf = LowSnrMetrics(ebn0_min_linear=m1.ebn0_min_linear * 2.0 / np.pi, s0=1.0)

    onebit = _pmap(lambda s: ergodic_mi(spec, 10 ** (s / 10.0), "equiprobable",
                                        n=n, seed=seed).mean,
                   snr_grid, threads)
    fullres = [_fullres_siso_se(10 ** (s / 10.0), n, seed) for s in snr_grid]

    par_cols = ("snr_db", "se_bits", "ebn0_db")
    exp_cols = ("ebn0_db", "se_bits")
    return {
        "onebit_exact.csv": (par_cols, _parametric_se(snr_grid, onebit)),
        "fullres_exact.csv": (par_cols, _parametric_se(snr_grid, fullres)),
        "onebit_expansion.csv":
            (exp_cols, list(zip(ebn0_grid, low_snr_curve(m1, ebn0_grid)))),
        "fullres_expansion.csv":
            (exp_cols, list(zip(ebn0_grid, low_snr_curve(mf, ebn0_grid)))),
    }


def _default_planar(nt: int, nr: int) -> dict:
    return {"model": "los_planar", "nt": nt, "nr": nr, "wavelength": 0.005,
            "spacing_tx": 0.0025, "spacing_rx": 0.0025,
            "elev_tx_deg": 45.0, "elev_rx_deg": 30.0, "azimuth_deg": 45.0}


def _run_fig4(cfg: dict, threads: int) -> dict:
    ns = [int(v) for v in cfg.get("n_grid", (1, 2, 4))]
    ebn0_grid = _grid(cfg, "ebn0_db_grid", np.arange(-6.0, 4.25, 0.25))
    seed = int(cfg.get("seed", 0))
    cols = ["ebn0_db"]
    curves = []
    for n in ns:
        _check_mi_budget(n, 1)  # point-mass distribution over 4^(n-1) quartets
        spec = _channel_spec(cfg, _default_planar(n, n))
        import dataclasses
        geom = dataclasses.replace(spec.geometry, nt=n, nr=n)
        h = los_planar(geom)
        q = best_power_quartet(h, "subset").quartet
        m = metrics(h, QuartetDistribution.point_mass(n, q.index), seed=seed)
        curves.append(low_snr_curve(m, ebn0_grid))
        cols.append(f"se_bits_n{n}")
    rows = [tuple([e] + [c[i] for c in curves]) for i, e in enumerate(ebn0_grid)]
    return {"fig4_planar_ebn0.csv": (tuple(cols), rows)}


def _run_fig5(cfg: dict, threads: int) -> dict:
    ns = [int(v) for v in cfg.get("n_grid", (1, 2, 4, 8, 16, 32, 64))]
    rows = []
    for n in ns:
        spec = _channel_spec(cfg, _default_planar(n, n))
        import dataclasses
        geom = dataclasses.replace(spec.geometry, nt=n, nr=n)
        h = los_planar(geom)
        power = best_power_quartet(h, "subset").objective
        bf = np.pi * n / (power * LOG2E)
        bounds = beamforming_ebn0_bounds(
            dataclasses.replace(spec, nt=n, nr=n, geometry=geom))
        rows.append((n, 10 * np.log10(bf), bounds.lower_db, bounds.upper_db,
                     10 * np.log10(equiprobable_ebn0_min(n)),
                     10 * np.log10(bf * 2.0 / np.pi)))
    cols = ("n", "beamforming_db", "lower_db", "upper_db",
            "equiprobable_db", "fullres_beamforming_db")
    return {"fig5_ebn0min_vs_n_los.csv": (cols, rows)}


def _run_snr_sweep(cfg: dict, threads: int, default_channel: dict,
                   name: str) -> dict:
    spec = _channel_spec(cfg, default_channel)
    _check_mi_budget(spec.nt, spec.nr)
    strategies = list(cfg.get("strategies",
                              ("equiprobable", "beamforming", "capacity")))
    snr_grid = _grid(cfg, "snr_db_grid", np.arange(-20.0, 21.0, 1.0))
    h = spec.sample()
    vals = _pmap(lambda s: _strategy_point(h, 10 ** (s / 10.0), strategies),
                 snr_grid, threads)
    cols = ["snr_db"] + _strategy_columns(strategies)
    rows = [tuple([snr_db] + v) for snr_db, v in zip(snr_grid, vals)]
    return {f"{name}.csv": (tuple(cols), rows),
            f"{name}_channel.json": _channel_report(h)}


def _run_fig8(cfg: dict, threads: int) -> dict:
    n = int(cfg.get("channel", {}).get("nt", 4))
    snr = 10 ** (float(cfg.get("snr_db", 0.0)) / 10.0)
    etas = _grid(cfg, "eta_grid", np.arange(0.25, 2.01, 0.25))
    strategies = list(cfg.get("strategies",
                              ("equiprobable", "beamforming", "capacity")))
    _check_mi_budget(n, n)
    wavelength, range_d = 0.005, 10.0

    def point(eta):
        # vary the antenna spacing at fixed range to sweep eta
        d = float(np.sqrt(eta * wavelength * range_d / n))
        obj = _eta1_spherical(n, wavelength, range_d)
        obj.update({"spacing_tx": d, "spacing_rx": d})
        h = channel_spec_from_json(obj).sample()
        return _strategy_point(h, snr, strategies)

    vals = _pmap(point, etas, threads)
    cols = ["eta"] + _strategy_columns(strategies)
    rows = [tuple([eta] + v) for eta, v in zip(etas, vals)]
    return {"fig8_eta_sweep.csv": (tuple(cols), rows)}


def _run_fig9(cfg: dict, threads: int) -> dict:
    ns = [int(v) for v in cfg.get("n_grid", (1, 2, 4, 8, 16, 32, 64))]
    n_samples = int(cfg.get("n_samples", 200))
    seed = int(cfg.get("seed", 0))

    def point(n):
        spec = ChannelSpec(model="iid_rayleigh", nt=n, nr=n, geometry=None,
                           seed=seed)
        bf = ergodic_beamforming_ebn0(spec, n_draws=n_samples, seed=seed)
        bounds = beamforming_ebn0_bounds(spec, n_draws=n_samples, seed=seed)
        return (n, 10 * np.log10(bf), bounds.lower_db, bounds.upper_db,
                10 * np.log10(equiprobable_ebn0_min(n)),
                10 * np.log10(bf * 2.0 / np.pi))

    rows = _pmap(point, ns, threads)
    cols = ("n", "beamforming_mc_db", "lower_db", "upper_db",
            "equiprobable_db", "fullres_beamforming_db")
    return {"fig9_rayleigh_ebn0min.csv": (cols, rows)}


def _run_fig10(cfg: dict, threads: int) -> dict:
    spec = _channel_spec(cfg, {"model": "iid_rayleigh", "nt": 2, "nr": 2})
    _check_mi_budget(spec.nt, spec.nr)
    snr_grid = _grid(cfg, "snr_db_grid", np.arange(-10.0, 26.0, 5.0))
    n_samples = int(cfg.get("n_samples", 500))
    seed = int(cfg.get("seed", 0))

    def point(snr_db):
        snr = 10 ** (snr_db / 10.0)
        est = ergodic_mi(spec, snr, "equiprobable", n=n_samples, seed=seed)
        b = ergodic_bounds(snr, spec.nt, spec.nr)
        return (snr_db, est.mean, est.stderr, b.lower_bits, b.upper_bits,
                b.jla_bits)

    rows = _pmap(point, snr_grid, threads)
    cols = ("snr_db", "se_mc", "stderr", "lower_bits", "upper_bits", "jla_bits")
    return {"fig10_rayleigh_snr_sweep.csv": (cols, rows)}


def _run_bounds_sweep(cfg: dict, threads: int, skewed: bool) -> dict:
    if skewed:
        nrs = [int(v) for v in cfg.get("n_grid", (1, 2, 4))]
        pairs = [(4 * nr, nr) for nr in nrs]
    else:
        pairs = [(int(v), int(v)) for v in cfg.get("n_grid", (2, 4, 8, 16))]
    snr_grid = _grid(cfg, "snr_db_grid", np.arange(-10.0, 26.0, 5.0))
    n_samples = int(cfg.get("n_samples", 200))
    seed = int(cfg.get("seed", 0))
    mc_pairs = [p for p in pairs if 2 * (p[0] + p[1]) <= MAX_JOINT_BITS]

    def point(snr_db):
        snr = 10 ** (snr_db / 10.0)
        row = [snr_db]
        for nt, nr in pairs:
            b = ergodic_bounds(snr, nt, nr)
            row += [b.lower_bits, b.upper_bits]
        for nt, nr in mc_pairs:
            spec = ChannelSpec(model="iid_rayleigh", nt=nt, nr=nr,
                               geometry=None, seed=seed)
            row.append(ergodic_mi(spec, snr, "equiprobable",
                                  n=n_samples, seed=seed).mean)
        return tuple(row)

    rows = _pmap(point, snr_grid, threads)
    cols = ["snr_db"]
    for nt, nr in pairs:
        cols += [f"lower_{nt}x{nr}", f"upper_{nt}x{nr}"]
    cols += [f"mc_{nt}x{nr}" for nt, nr in mc_pairs]
    name = "fig12_bounds_skewed" if skewed else "fig11_bounds_square"
    return {f"{name}.csv": (tuple(cols), rows)}


def _run_table1(cfg: dict, threads: int) -> dict:
    nts = tuple(int(v) for v in cfg.get("nt_list", (1, 2, 4, 8, 16, 32)))
    nrs = tuple(int(v) for v in cfg.get("nr_list", (1, 2, 4, 8, 16, 32)))
    rows = table1_rows(nts, nrs)
    return {"table1.csv": (("nr", "nt", "lower_bound_bits"), rows)}


def _breakeven_report(pt_dbm: float, eta: float, fom_pj: float, bits: int,
                      n_adc: int = 2, kappa: float = 2.0) -> dict:
    b = breakeven_bandwidth(watts_from_dbm(pt_dbm), eta, fom_pj * 1e-12,
                            bits, n_adc=n_adc, kappa=kappa)
    return {"threshold_hz": b,
            "inputs": {"pt_dbm": pt_dbm, "eta": eta, "fom_pj": fom_pj,
                       "bits": bits, "n_adc": n_adc, "kappa": kappa}}


# -- config validation and dispatch -------------------------------------------

def _load_config(path: str):
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}")
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON: {e}")
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg, hashlib.sha256(raw).hexdigest()[:12]


def validate_config(cfg: dict) -> dict:
    fig = cfg.get("figure_id")
    if fig not in FIGURE_IDS:
        raise ConfigError(f"unknown figure_id {fig!r}; one of {FIGURE_IDS}")
    report = {"figure_id": fig, "seed": int(cfg.get("seed", 0)), "ok": True}
    exact_mi = fig in ("fig1", "fig2_expansion_overlay", "fig6_planar_snr_sweep",
                       "fig7_eta1_bf_vs_eq", "fig8_eta_sweep",
                       "fig10_rayleigh_snr_sweep")
    if exact_mi:
        ch = cfg.get("channel", {})
        nt = int(ch.get("nt", 4 if fig.startswith(("fig6", "fig7", "fig8"))
                 else (2 if fig.startswith("fig10") else 1)))
        nr = int(ch.get("nr", nt if not fig.startswith(("fig1", "fig2")) else 1))
        _check_mi_budget(nt, nr)
        report["terms_per_mi_evaluation"] = 4 ** (nt - 1) * 4 ** (nr - 1)
        report["runtime_class"] = ("seconds" if nt + nr <= 6 else "minutes")
    else:
        report["runtime_class"] = "minutes" if fig in (
            "fig9_rayleigh_ebn0min", "table1") else "seconds"
    for key in ("snr_db_grid", "ebn0_db_grid", "eta_grid"):
        if key in cfg:
            _grid(cfg, key, None)
    if "n_samples" in cfg and int(cfg["n_samples"]) < 2:
        raise ConfigError("n_samples must be >= 2 for ergodic runs")
    return report


def run_config(cfg: dict, config_hash: str, out_dir: str,
               threads: int = 1) -> list[str]:
    report = validate_config(cfg)
    fig = report["figure_id"]
    if fig == "fig1":
        outputs = _run_siso_overlay(cfg, threads, low_snr_only=False)
    elif fig == "fig2_expansion_overlay":
        outputs = _run_siso_overlay(cfg, threads, low_snr_only=True)
    elif fig == "fig4_planar_ebn0":
        outputs = _run_fig4(cfg, threads)
    elif fig == "fig5_ebn0min_vs_n_los":
        outputs = _run_fig5(cfg, threads)
    elif fig == "fig6_planar_snr_sweep":
        outputs = _run_snr_sweep(cfg, threads, _default_planar(4, 4),
                                 "fig6_planar_snr_sweep")
    elif fig == "fig7_eta1_bf_vs_eq":
        n = int(cfg.get("channel", {}).get("nt", 4))
        outputs = _run_snr_sweep(cfg, threads, _eta1_spherical(n),
                                 "fig7_eta1_bf_vs_eq")
    elif fig == "fig8_eta_sweep":
        outputs = _run_fig8(cfg, threads)
    elif fig == "fig9_rayleigh_ebn0min":
        outputs = _run_fig9(cfg, threads)
    elif fig == "fig10_rayleigh_snr_sweep":
        outputs = _run_fig10(cfg, threads)
    elif fig == "fig11_bounds_square":
        outputs = _run_bounds_sweep(cfg, threads, skewed=False)
    elif fig == "fig12_bounds_skewed":
        outputs = _run_bounds_sweep(cfg, threads, skewed=True)
    elif fig == "table1":
        outputs = _run_table1(cfg, threads)
    elif fig == "breakeven":
        be = cfg.get("breakeven", {})
        rep = _breakeven_report(float(be.get("pt_dbm", 23.0)),
                                float(be.get("eta", 0.4)),
                                float(be.get("fom_pj", 10.0)),
                                int(be.get("bits", 10)),
                                int(be.get("n_adc", 2)),
                                float(be.get("kappa", 2.0)))
        text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
        outputs = {"breakeven.json": text}
    else:  # pragma: no cover - guarded by validate_config
        raise ConfigError(f"unhandled figure_id {fig!r}")

    meta = f"config_hash={config_hash} seed={report['seed']} version={__version__}"
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    # All texts are rendered before any file is touched: no partial outputs.
    rendered = {}
    for name, payload in outputs.items():
        if isinstance(payload, str):
            rendered[name] = payload
        else:
            cols, rows = payload
            rendered[name] = _csv_text(cols, rows, meta)
    for name, text in sorted(rendered.items()):
        path = os.path.join(out_dir, name)
        with open(path, "w") as f:
            f.write(text)
        paths.append(path)
    return paths


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="onebit-mimo",
        description="1-bit MIMO figure and table reproduction harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="compute a figure/table config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--threads", type=int, default=1)

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("config")

    p_be = sub.add_parser("breakeven", help="ADC power break-even bandwidth")
    p_be.add_argument("--pt-dbm", type=float, default=23.0)
    p_be.add_argument("--eta", type=float, default=0.4)
    p_be.add_argument("--fom-pj", type=float, default=10.0)
    p_be.add_argument("--bits", type=int, default=10)
    p_be.add_argument("--n-adc", type=int, default=2)
    p_be.add_argument("--kappa", type=float, default=2.0)

    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            cfg, config_hash = _load_config(args.config)
            report = validate_config(cfg)
            report["config_hash"] = config_hash
            print(json.dumps(report, indent=2, sort_keys=True))
        elif args.command == "run":
            cfg, config_hash = _load_config(args.config)
            out_dir = args.out or cfg.get("output_dir", ".")
            for path in run_config(cfg, config_hash, out_dir, args.threads):
                print(path)
        else:
            rep = _breakeven_report(args.pt_dbm, args.eta, args.fom_pj,
                                    args.bits, args.n_adc, args.kappa)
            print(json.dumps(rep, indent=2, sort_keys=True))
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except EnumerationBudgetError as e:
        print(f"budget error: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
