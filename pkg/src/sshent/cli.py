"""Batch driver: configure chains, run interval/parameter scans, emit CSV/JSON.

Subcommands
-----------
scan-interval   move an interval along the chain; lattice and/or closed forms
zero-mode-scan  fixed defect interval, sweep the zero-mode weight p
dimerized       exact fully dimerized tables
statmech        chemical-potential diagnostics on model spectra
aklt            spin-chain interface tables
selftest        quick end-to-end invariant suite

Exit codes: 0 success, 1 configuration error, 2 numerical-validation failure.
``SSHENT_THREADS`` sets the scan worker count (default 1); output row order is
independent of it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, aklt as aklt_mod, asymptotics as asym
from . import entanglement as ent
from . import groundstate as gs
from . import model
from . import serialize
from . import specialfn as sf
from . import statmech as sm
from .linalg import eigh_symmetric

SCAN_COLUMNS = [
    "m", "case", "p", "q", "dq", "n",
    "Z1_q", "S_n_q", "S", "S_c", "S_f", "source", "dev",
]
SCAN_SCHEMA = "1"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2


class ConfigError(Exception):
    pass


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SSHENT_THREADS", "1")))
    except ValueError:
        return 1


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _load_config(args: argparse.Namespace, defaults: dict) -> dict:
    config = dict(defaults)
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                config.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError(f"cannot read config {args.config}: {err}") from err
    overrides = {
        "n_sites": getattr(args, "n_sites", None),
        "delta": getattr(args, "delta", None),
        "t": getattr(args, "hopping", None),
        "window_length": getattr(args, "window_length", None),
        "mode": getattr(args, "mode", None),
        "tolerance": getattr(args, "tolerance", None),
        "bulk_margin": getattr(args, "bulk_margin", None),
    }
    chain_keys = {"n_sites", "delta", "t"}
    for key, val in overrides.items():
        if val is None:
            continue
        if key in chain_keys:
            config.setdefault("chain", {})[key] = val
        else:
            config[key] = val
    if getattr(args, "n_list", None):
        config["n_list"] = _parse_float_list(args.n_list)
    if getattr(args, "p_list", None):
        config["p_list"] = _parse_float_list(args.p_list)
    if getattr(args, "m_start", None) is not None or getattr(args, "m_stop", None) is not None:
        if args.m_start is None or args.m_stop is None:
            raise ConfigError("--m-start and --m-stop must be given together")
        config["m_range"] = [args.m_start, args.m_stop]
    if getattr(args, "csv", None):
        config.setdefault("outputs", {})["csv_path"] = args.csv
    if getattr(args, "json_path", None):
        config.setdefault("outputs", {})["json_path"] = args.json_path
    return config


def _chain_from_config(config: dict) -> model.ChainSpec:
    chain = config.get("chain")
    if not isinstance(chain, dict):
        raise ConfigError("config needs a 'chain' object")
    try:
        return model.ChainSpec.from_dict(chain)
    except (KeyError, ValueError, TypeError) as err:
        raise ConfigError(f"bad chain spec: {err}") from err


def _ring_distance(a: int, b: int, n_cells: int, periodic: bool) -> int:
    d = abs(a - b)
    return min(d, n_cells - d) if periodic else d


def _is_bulk_window(spec: model.ChainSpec, m: int, ell: int, margin: int) -> bool:
    """Bulk = every defect either well inside or well away from the window."""
    cells = model.window_cells(spec, m, ell)
    periodic = spec.boundary == model.PERIODIC
    inside = model.defects_in_window(spec, m, ell)
    for d in spec.defects:
        dist_to_window = min(
            _ring_distance(c, d.cell, spec.n_cells, periodic) for c in cells
        )
        if d in inside:
            edge_dist = min(
                _ring_distance(cells[0], d.cell, spec.n_cells, periodic),
                _ring_distance(cells[-1], d.cell, spec.n_cells, periodic),
            )
            if edge_dist < margin:
                return False
        elif dist_to_window < margin:
            return False
    return True


def _table_rows(
    table: ent.ChargeResolvedTable,
    *,
    m: int | None,
    case: str,
    n: float,
    ell: int,
    source: str,
    p: float | None = None,
) -> list[dict]:
    rows = []
    for i, q in enumerate(table.charges):
        rows.append(
            {
                "m": m,
                "case": case,
                "p": p,
                "q": int(q),
                "dq": int(q) - ell,
                "n": n,
                "Z1_q": float(table.probabilities[i]),
                "S_n_q": float(table.sre_renyi[i]),
                "S": table.total_vn,
                "S_c": table.config_entropy,
                "S_f": table.fluct_entropy,
                "source": source,
                "dev": None,
            }
        )
    return rows


def _fill_deviations(rows: list[dict]) -> None:
    lattice = {
        (r["m"], r["p"], r["q"], r["n"]): r for r in rows if r["source"] == "lattice"
    }
    for r in rows:
        if r["source"] != "lattice":
            key = (r["m"], r["p"], r["q"], r["n"])
            mate = lattice.get(key)
            if mate is not None:
                dev = abs(r["S_n_q"] - mate["S_n_q"])
                r["dev"] = dev
                mate["dev"] = dev


def _sort_rows(rows: list[dict]) -> list[dict]:
    order = {"lattice": 0, "asymptotic": 1, "dimerized": 2}
    return sorted(
        rows,
        key=lambda r: (
            r["m"] if r["m"] is not None else -1,
            r["p"] if r["p"] is not None else -1.0,
            r["q"],
            r["n"],
            order.get(r["source"], 9),
        ),
    )


def _emit(config: dict, rows: list[dict], columns: list[str], schema: str) -> None:
    outputs = config.get("outputs", {})
    csv_path = outputs.get("csv_path")
    json_path = outputs.get("json_path")
    if csv_path:
        serialize.write_csv(csv_path, schema, columns, rows)
        print(f"wrote {csv_path} ({len(rows)} rows)")
    if json_path:
        payload = {
            "schema": schema,
            "columns": columns,
            "config": config,
            "config_sha256": serialize.config_digest(config),
            "versions": {"sshent": __version__, "numpy": np.__version__},
            "rows": [[row.get(c) for c in columns] for row in rows],
        }
        serialize.write_json(json_path, payload)
        print(f"wrote {json_path}")
    if not csv_path and not json_path:
        print(serialize.render_csv(schema, columns, rows), end="")


def run_scan_interval(args: argparse.Namespace) -> int:
    config = _load_config(
        args,
        defaults={
            "window_length": 20,
            "n_list": [1.0, 2.0],
            "mode": "lattice",
            "tolerance": 1e-3,
            "bulk_margin": 8,
            "filling": "below_half",
        },
    )
    spec = _chain_from_config(config)
    ell = int(config["window_length"])
    mode = config["mode"]
    if mode not in ("lattice", "asymptotic", "both"):
        raise ConfigError(f"unknown mode {mode!r} for scan-interval")
    n_list = [float(n) for n in config["n_list"]]
    if "m_list" in config:
        m_values = [int(m) for m in config["m_list"]]
    else:
        lo, hi = config.get("m_range", [1, spec.n_cells])
        m_values = list(range(int(lo), int(hi) + 1))
    if spec.boundary == model.OPEN:
        # keep both interval boundaries in the interior so case labels exist
        m_values = [m for m in m_values if 2 <= m and m + ell - 1 <= spec.n_cells - 1]
    if not m_values:
        raise ConfigError("empty scan range")
    filling = config.get("filling", "below_half")
    if filling != "below_half":
        if spec.defects:
            raise ConfigError(
                "half filling with defects needs zero-mode-scan, not scan-interval"
            )
        if filling != "half":
            raise ConfigError(f"unknown filling {filling!r}")
    policy = (
        gs.OccupationPolicy.below_half()
        if filling == "below_half"
        else gs.OccupationPolicy.half()
    )

    needs_lattice = mode in ("lattice", "both")
    needs_asym = mode in ("asymptotic", "both")
    params = None
    if needs_asym:
        if not 0.0 < spec.dimerization < 1.0:
            raise ConfigError("asymptotic mode requires dimerization in (0, 1)")
        params = sf.EllipticParams.from_dimerization(spec.dimerization)

    eig = eigh_symmetric(model.build_hamiltonian(spec)) if needs_lattice else None

    asym_tables: dict[tuple[str, float], ent.ChargeResolvedTable] = {}

    def asym_table(case: str, n: float) -> ent.ChargeResolvedTable:
        key = (case, n)
        if key not in asym_tables:
            asym_tables[key] = asym.asymptotic_table(case, n, params, ell)
        return asym_tables[key]

    if needs_asym:
        # fill the cache up front; worker threads then only read it
        for case in {model.window_case(spec, m, ell) for m in m_values}:
            for n in n_list:
                asym_table(case, n)

    def one_window(m: int) -> list[dict]:
        out = []
        case = model.window_case(spec, m, ell)
        lam = None
        if needs_lattice:
            lam = gs.correlation_matrix(eig, spec, policy, (m, ell)).eigenvalues()
        for n in n_list:
            if lam is not None:
                out.extend(
                    _table_rows(
                        ent.charge_resolved_table(lam, n),
                        m=m, case=case, n=n, ell=ell, source="lattice",
                    )
                )
            if needs_asym:
                out.extend(
                    _table_rows(
                        asym_table(case, n),
                        m=m, case=case, n=n, ell=ell, source="asymptotic",
                    )
                )
        return out

    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(one_window, m_values))
    else:
        chunks = [one_window(m) for m in m_values]
    rows = [r for chunk in chunks for r in chunk]
    _fill_deviations(rows)
    rows = _sort_rows(rows)

    status = EXIT_OK
    if mode == "both":
        margin = int(config["bulk_margin"])
        tol = float(config["tolerance"])
        worst = 0.0
        for r in rows:
            if r["dev"] is None or not _is_bulk_window(spec, r["m"], ell, margin):
                continue
            if r["Z1_q"] < 1e-6:
                continue
            worst = max(worst, r["dev"])
        print(f"bulk-window max |lattice - asymptotic| = {worst:.3e} (tol {tol:g})")
        if worst > tol:
            print("numerical validation FAILED", file=sys.stderr)
            status = EXIT_VALIDATION
    _emit(config, rows, SCAN_COLUMNS, SCAN_SCHEMA)
    return status


def run_zero_mode_scan(args: argparse.Namespace) -> int:
    config = _load_config(
        args,
        defaults={
            "window_length": 20,
            "n_list": [1.0],
            "p_list": [0.0, 0.1, 0.5, 0.9, 1.0],
            "mode": "both",
            "tolerance": 1e-3,
            "bulk_margin": 8,
        },
    )
    spec = _chain_from_config(config)
    if len(spec.defects) != 2:
        raise ConfigError("zero-mode-scan needs a chain with exactly two defects")
    ell = int(config["window_length"])
    n_list = [float(n) for n in config["n_list"]]
    p_list = [float(p) for p in config["p_list"]]
    mode = config["mode"]
    if mode not in ("lattice", "asymptotic", "both"):
        raise ConfigError(f"unknown mode {mode!r} for zero-mode-scan")
    if "window_start" in config:
        m = int(config["window_start"])
    elif getattr(args, "window_start", None) is not None:
        m = int(args.window_start)
    else:
        m = spec.defects[0].cell - ell // 2 + 1
    inside = model.defects_in_window(spec, m, ell)
    if len(inside) != 1:
        raise ConfigError(
            f"window ({m}, {ell}) must contain exactly one defect, found {len(inside)}"
        )
    needs_asym = mode in ("asymptotic", "both")
    params = None
    if needs_asym:
        if not 0.0 < spec.dimerization < 1.0:
            raise ConfigError("asymptotic mode requires dimerization in (0, 1)")
        params = sf.EllipticParams.from_dimerization(spec.dimerization)
    needs_lattice = mode in ("lattice", "both")
    eig = pair = None
    if needs_lattice:
        eig = eigh_symmetric(model.build_hamiltonian(spec))
        pair = gs.localized_zero_modes(eig, spec)
    # p is the weight on the *second* defect; if the window holds the second
    # defect, the closed forms see the complementary outside weight
    window_holds_second = inside[0] == spec.defects[1]

    rows: list[dict] = []
    for p in p_list:
        lam = None
        if needs_lattice:
            policy = gs.OccupationPolicy.half(pair.with_weight(p))
            lam = gs.correlation_matrix(eig, spec, policy, (m, ell)).eigenvalues()
        p_out = (1.0 - p) if window_holds_second else p
        for n in n_list:
            if lam is not None:
                rows.extend(
                    _table_rows(
                        ent.charge_resolved_table(lam, n),
                        m=m, case=model.DEFECT, n=n, ell=ell,
                        source="lattice", p=p,
                    )
                )
            if needs_asym:
                rows.extend(
                    _table_rows(
                        asym.zero_mode_table(p_out, n, params, ell),
                        m=m, case=model.DEFECT, n=n, ell=ell,
                        source="asymptotic", p=p,
                    )
                )
    _fill_deviations(rows)
    rows = _sort_rows(rows)
    status = EXIT_OK
    if mode == "both":
        tol = float(config["tolerance"])
        worst = max(
            (r["dev"] for r in rows if r["dev"] is not None and r["Z1_q"] > 1e-6),
            default=0.0,
        )
        print(f"max |lattice - asymptotic| = {worst:.3e} (tol {tol:g})")
        if worst > tol:
            print("numerical validation FAILED", file=sys.stderr)
            status = EXIT_VALIDATION
    _emit(config, rows, SCAN_COLUMNS, SCAN_SCHEMA)
    return status


def run_dimerized(args: argparse.Namespace) -> int:
    config = _load_config(args, defaults={"window_length": 20, "n_list": [1.0, 2.0]})
    ell = int(config["window_length"])
    n_list = [float(n) for n in config["n_list"]]
    p_list = [float(p) for p in config.get("p_list", [])]
    rows: list[dict] = []
    for case in (model.TOPOLOGICAL, model.TRIVIAL, model.DEFECT):
        for n in n_list:
            rows.extend(
                _table_rows(
                    asym.dimerized_table(case, ell, n),
                    m=None, case=case, n=n, ell=ell, source="dimerized",
                )
            )
    for p in p_list:
        for n in n_list:
            rows.extend(
                _table_rows(
                    asym.dimerized_table(model.DEFECT, ell, n, zero_mode_p=p),
                    m=None, case=model.DEFECT, n=n, ell=ell,
                    source="dimerized", p=p,
                )
            )
    rows = _sort_rows(rows)
    _emit(config, rows, SCAN_COLUMNS, SCAN_SCHEMA)
    return EXIT_OK


STATMECH_COLUMNS = [
    "q", "mu", "constrained_S", "reconstructed_S", "sre_q",
    "nearest_level_distance", "mu_at_level", "level_degenerate", "sre_mu_drift",
]


def run_statmech(args: argparse.Namespace) -> int:
    if not 0.0 < args.delta < 1.0:
        raise ConfigError("statmech needs dimerization in (0, 1)")
    params = sf.EllipticParams.from_dimerization(args.delta)
    ell = args.window_length
    if args.cut == "defect":
        spectrum = asym.bulk_defect_spectrum(params, ell)
    else:
        half = asym.half_cut_spectrum(params, ell // 2, args.cut)
        spectrum = np.sort(np.concatenate([half, half]))
    if args.zero_level is not None:
        spectrum = np.sort(np.append(spectrum, args.zero_level))
    n_levels = spectrum.size
    center = n_levels // 2 if args.cut != "defect" else ell
    if args.q_list:
        q_values = _parse_int_list(args.q_list)
    else:
        q_values = list(range(center - 2, center + 3))
    q_values = [q for q in q_values if 0 < q < n_levels]
    if not q_values:
        raise ConfigError("no admissible charge targets")
    reports = sm.equipartition_report(spectrum, q_values)
    rows = [
        {
            "q": r.q,
            "mu": r.mu,
            "constrained_S": r.constrained_entropy,
            "reconstructed_S": r.reconstructed_entropy,
            "sre_q": r.sector_entropy,
            "nearest_level_distance": r.nearest_level_distance,
            "mu_at_level": r.mu_at_level,
            "level_degenerate": r.level_degenerate,
            "sre_mu_drift": r.sre_mu_drift,
        }
        for r in reports
    ]
    config = {
        "delta": args.delta,
        "cut": args.cut,
        "window_length": ell,
        "zero_level": args.zero_level,
        "outputs": {},
    }
    if args.csv:
        config["outputs"]["csv_path"] = args.csv
    if args.json_path:
        config["outputs"]["json_path"] = args.json_path
    _emit(config, rows, STATMECH_COLUMNS, "statmech-1")
    return EXIT_OK


AKLT_COLUMNS = [
    "aklt_case", "ground_state", "p", "eta", "jz", "n",
    "Z1_jz", "S_n_jz", "S", "S_c", "S_f",
]


def run_aklt(args: argparse.Namespace) -> int:
    n_list = _parse_float_list(args.n_list) if args.n_list else [1.0, 2.0]
    p_list = _parse_float_list(args.p_list) if args.p_list else [0.1, 0.25, 0.5]
    rows: list[dict] = []

    def add(case: str, state: str, n: float, p: float | None) -> None:
        table = aklt_mod.aklt_entropies(case, state, n, p)
        eta = aklt_mod.eta_from_weight(p) if p is not None else None
        for i, jz in enumerate(table.charges):
            rows.append(
                {
                    "aklt_case": case,
                    "ground_state": state,
                    "p": p,
                    "eta": eta,
                    "jz": int(jz),
                    "n": n,
                    "Z1_jz": float(table.probabilities[i]),
                    "S_n_jz": float(table.sre_renyi[i]),
                    "S": table.total_vn,
                    "S_c": table.config_entropy,
                    "S_f": table.fluct_entropy,
                }
            )

    for case in (aklt_mod.TRIVIAL_PRODUCT, aklt_mod.AKLT_BULK, aklt_mod.DEFECT_INTERFACE):
        for n in n_list:
            add(case, aklt_mod.TRIPLET, n, None)
    for p in p_list:
        for n in n_list:
            add(aklt_mod.DEFECT_INTERFACE, aklt_mod.HYBRID, n, p)
    config = {"n_list": n_list, "p_list": p_list, "outputs": {}}
    if args.csv:
        config["outputs"]["csv_path"] = args.csv
    if args.json_path:
        config["outputs"]["json_path"] = args.json_path
    _emit(config, rows, AKLT_COLUMNS, "aklt-1")
    return EXIT_OK


def run_selftest(args: argparse.Namespace) -> int:
    del args
    checks: list[tuple[str, bool, str]] = []

    def check(name: str, dev: float, tol: float) -> None:
        checks.append((name, dev <= tol, f"dev={dev:.3e} tol={tol:g}"))

    # fully dimerized exactness
    spec = model.ChainSpec(
        n_sites=200, dimerization=1.0,
        defects=(model.DefectSpec(25), model.DefectSpec(75)),
    )
    eig = eigh_symmetric(model.build_hamiltonian(spec))
    policy = gs.OccupationPolicy.below_half()
    targets = {"trivial": (45, 0.0), "topological": (5, 2 * math.log(2)),
               "defect": (21, math.log(2))}
    dev = 0.0
    for case, (m, s_want) in targets.items():
        lam = gs.correlation_matrix(eig, spec, policy, (m, 10)).eigenvalues()
        table = ent.charge_resolved_table(lam, 2.0)
        dev = max(dev, abs(table.total_vn - s_want), abs(table.total_renyi - s_want))
    check("dimerized totals", dev, 1e-12)

    # special-function identities
    params = sf.EllipticParams.from_dimerization(0.3)
    dev = abs(sf.theta2(0.3, 0.4) - sf.theta2_product(0.3, 0.4))
    dev = max(dev, abs(sf.theta3(0.3, 0.4) - sf.theta3_product(0.3, 0.4)))
    kn, _ = params.modulus_at(2.0)
    z2 = params.nome_at(2.0)
    dev = max(dev, abs(kn - (sf.theta2(0.0, z2) / sf.theta3(0.0, z2)) ** 2))
    dev = max(dev, sf.euler_product_residual(params.nome_at(1.0)))
    check("theta identities", dev, 1e-10)

    # lattice vs closed forms
    spec = model.ChainSpec(
        n_sites=400, dimerization=0.3,
        defects=(model.DefectSpec(50), model.DefectSpec(150)),
    )
    eig = eigh_symmetric(model.build_hamiltonian(spec))
    dev = 0.0
    for case, m in (("topological", 175), ("trivial", 90), ("defect", 141)):
        lam = gs.correlation_matrix(eig, spec, policy, (m, 20)).eigenvalues()
        lat = ent.charge_resolved_table(lam, 2.0)
        at = asym.asymptotic_table(case, 2.0, params, 20)
        for dq in (-1, 0, 1):
            dev = max(dev, abs(lat.sre(20 + dq) - at.sre(20 + dq)))
    check("lattice vs asymptotics", dev, 1e-3)

    # exact enumeration oracle at 4 modes
    lam = np.array([0.23, 0.71, 0.05, 0.5])
    zq = ent.srpf(lam, 2.0)
    brute = np.zeros(5)
    for bits in range(16):
        prob = 1.0
        q = 0
        for i in range(4):
            if bits >> i & 1:
                prob *= lam[i]
                q += 1
            else:
                prob *= 1 - lam[i]
        brute[q] += prob**2
    check("enumeration oracle", float(np.max(np.abs(zq - brute))), 1e-12)

    # constrained-spectrum diagnostics
    weak = asym.half_cut_spectrum(params, 10, "weak")
    doubled = np.sort(np.concatenate([weak, weak]))
    ell = doubled.size // 2
    dev = abs(sm.solve_mu(doubled, ell))
    dev = max(dev, abs(sm.solve_mu(doubled, ell + 1) - params.spacing))
    check("chemical potential pinning", dev, 1e-10)

    # determinism of rendered output
    table = asym.dimerized_table("topological", 10, 2.0)
    rows = _table_rows(table, m=None, case="topological", n=2.0, ell=10,
                       source="dimerized")
    text1 = serialize.render_csv(SCAN_SCHEMA, SCAN_COLUMNS, rows)
    text2 = serialize.render_csv(SCAN_SCHEMA, SCAN_COLUMNS, rows)
    checks.append(("deterministic rendering", text1 == text2, "byte comparison"))

    failed = 0
    for name, ok, detail in checks:
        print(f"[selftest] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        failed += 0 if ok else 1
    if failed:
        print(f"{failed} selftest check(s) failed", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sshent",
        description="Charge-resolved entanglement scans for dimerized chains "
                    "with topological defects",
    )
    parser.add_argument("--version", action="version", version=f"sshent {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--csv", help="CSV output path")
        p.add_argument("--json", dest="json_path", help="JSON output path")
        p.add_argument("--n-sites", type=int)
        p.add_argument("--delta", type=float)
        p.add_argument("--hopping", type=float)
        p.add_argument("--window-length", type=int)
        p.add_argument("--n-list", help="comma-separated Renyi indices (1 = von Neumann)")
        p.add_argument("--tolerance", type=float)

    p_scan = sub.add_parser("scan-interval", help="move an interval along the chain")
    add_common(p_scan)
    p_scan.add_argument("--mode", choices=["lattice", "asymptotic", "both"])
    p_scan.add_argument("--m-start", type=int)
    p_scan.add_argument("--m-stop", type=int)
    p_scan.add_argument("--bulk-margin", type=int)
    p_scan.set_defaults(func=run_scan_interval)

    p_zm = sub.add_parser("zero-mode-scan", help="sweep the zero-mode weight")
    add_common(p_zm)
    p_zm.add_argument("--mode", choices=["lattice", "asymptotic", "both"])
    p_zm.add_argument("--p-list", help="comma-separated weights on the second defect")
    p_zm.add_argument("--window-start", type=int)
    p_zm.set_defaults(func=run_zero_mode_scan)

    p_dim = sub.add_parser("dimerized", help="exact fully dimerized tables")
    add_common(p_dim)
    p_dim.add_argument("--p-list", help="zero-mode weights for the defect case")
    p_dim.set_defaults(func=run_dimerized)

    p_sm = sub.add_parser("statmech", help="chemical-potential diagnostics")
    p_sm.add_argument("--delta", type=float, required=True)
    p_sm.add_argument("--cut", choices=["defect", "strong", "weak"], default="defect")
    p_sm.add_argument("--window-length", type=int, default=20)
    p_sm.add_argument("--zero-level", type=float, default=None)
    p_sm.add_argument("--q-list", help="comma-separated charge targets")
    p_sm.add_argument("--csv")
    p_sm.add_argument("--json", dest="json_path")
    p_sm.set_defaults(func=run_statmech)

    p_aklt = sub.add_parser("aklt", help="spin-chain interface tables")
    p_aklt.add_argument("--n-list")
    p_aklt.add_argument("--p-list", help="hybridization weights")
    p_aklt.add_argument("--csv")
    p_aklt.add_argument("--json", dest="json_path")
    p_aklt.set_defaults(func=run_aklt)

    p_self = sub.add_parser("selftest", help="quick invariant suite")
    p_self.set_defaults(func=run_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
