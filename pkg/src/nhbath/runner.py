"""Experiment orchestration: run a validated config, write deterministic
plot-ready CSV/JSON datasets plus a manifest."""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .config import ExperimentConfig, serialize_config
from .dressed import bulk_dressed_state, edge_dressed_state
from .dynamics import (emitter_populations, evolve, localization_report,
                       photon_density)
from .effective import heff_closed_form, heff_numeric
from .lattice import build_total_hamiltonian
from .params import EmitterLayout, LatticeParams, excited_emitter_state
from .spectral import bloch_spectrum, obc_spectrum


def _fmt(x) -> str:
    """Shortest round-trip decimal form of a float (<= 17 significant digits)."""
    return repr(float(x))


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def max_workers() -> int:
    """Parallelism cap from NHBATH_THREADS (0 or unset = automatic)."""
    raw = os.environ.get("NHBATH_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"NHBATH_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ValueError(f"NHBATH_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def _time_grid(cfg: ExperimentConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.t_max, cfg.n_points)


def _spectrum_files(cfg: ExperimentConfig) -> dict:
    if cfg.lattice.periodic:
        res = bloch_spectrum(cfg.lattice)
        rows = [(ev.real, ev.imag, res.boundary, q)
                for ev, q in zip(res.eigenvalues, res.q_values)]
    else:
        res = obc_spectrum(cfg.lattice)
        order = np.argsort(res.eigenvalues.real, kind="stable")
        rows = [(res.eigenvalues[i].real, res.eigenvalues[i].imag,
                 res.boundary, float(k)) for k, i in enumerate(order)]
    return {"spectrum.csv": _csv(("re_E", "im_E", "boundary", "q_or_index"), rows)}


def _trajectory_files(cfg: ExperimentConfig, excited: int) -> dict:
    H = build_total_hamiltonian(cfg.lattice, cfg.emitters)
    psi0 = excited_emitter_state(cfg.lattice, cfg.emitters, which=excited)
    traj = evolve(H, psi0, _time_grid(cfg), tol=cfg.tol)
    pops = emitter_populations(traj)
    dens = photon_density(traj)
    pop_rows = [(t, i + 1, pops[k, i])
                for k, t in enumerate(traj.times)
                for i in range(pops.shape[1])]
    dens_rows = [(t, s, dens[k, s])
                 for k, t in enumerate(traj.times)
                 for s in range(dens.shape[1])]
    files = {
        "populations.csv": _csv(("t", "emitter_index", "p"), pop_rows),
        "density.csv": _csv(("t", "site_index", "density"), dens_rows),
    }
    if cfg.experiment == "emit":
        rep = localization_report(traj, cfg.emitters.cells[0], cfg.t_av)
        files["localization.csv"] = _csv(
            ("gamma", "P_loc", "P_L", "P_R"),
            [(cfg.lattice.gamma, rep.p_local, rep.p_left, rep.p_right)])
    return files


def _heff_files(cfg: ExperimentConfig) -> dict:
    if cfg.heff_method == "numeric":
        mat = heff_numeric(cfg.lattice, cfg.emitters)
    else:
        mat = heff_closed_form(cfg.lattice, cfg.emitters, form=cfg.heff_method)
    payload = {
        "method": mat.method,
        "boundary": mat.boundary,
        "params": {"N": cfg.lattice.n_cells, "t1": cfg.lattice.t1,
                   "t2": cfg.lattice.t2, "gamma": cfg.lattice.gamma,
                   "g": mat.g, "cells": list(mat.cells)},
        "entries": [[v.real, v.imag] for v in mat.entries.ravel(order="C")],
    }
    rows = [(str(cm), str(cn), mat.entries[i, k].real, mat.entries[i, k].imag)
            for i, cm in enumerate(mat.cells)
            for k, cn in enumerate(mat.cells)]
    return {
        "heff.json": json.dumps(payload, sort_keys=True, indent=2) + "\n",
        "heff.csv": _csv(("m", "n", "re", "im"), rows),
    }


def _dressed_files(cfg: ExperimentConfig) -> dict:
    if cfg.dressed_kind == "bulk":
        ds = bulk_dressed_state(cfg.lattice, cfg.emitters.cells[0],
                                cfg.emitters.g)
    else:
        ds = edge_dressed_state(cfg.lattice, cfg.emitters.g)
    amps = ds.state.photon_amps
    rows = [("emitter", 1.0, 0.0, 1.0)]
    for cell in range(1, cfg.lattice.n_cells + 1):
        for label, idx in (("alpha", cfg.lattice.a_index(cell)),
                           ("beta", cfg.lattice.b_index(cell))):
            amp = amps[idx]
            rows.append((f"{label}{cell}", amp.real, amp.imag, abs(amp)))
    return {"dressed.csv": _csv(("site_label", "re_amp", "im_amp", "modulus"),
                                rows)}


def _sweep_files(cfg: ExperimentConfig) -> dict:
    times = _time_grid(cfg)
    cell = cfg.emitters.cells[0]

    def one(gamma: float):
        lat = cfg.lattice.replace(gamma=gamma)
        H = build_total_hamiltonian(lat, cfg.emitters)
        psi0 = excited_emitter_state(lat, cfg.emitters)
        traj = evolve(H, psi0, times, tol=cfg.tol)
        rep = localization_report(traj, cell, cfg.t_av)
        return gamma, rep.p_local, rep.p_left, rep.p_right

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        rows = list(pool.map(one, cfg.gamma_values))
    return {"sweep.csv": _csv(("gamma", "P_loc", "P_L", "P_R"), rows)}


def run_experiment(cfg: ExperimentConfig) -> list:
    """Run the configured experiment and write its datasets.

    All results are computed before anything is written, so a failing run
    leaves no partial files.  Returns the list of paths written (the
    manifest last).  Identical configs produce byte-identical files.
    """
    if cfg.experiment == "spectrum":
        files = _spectrum_files(cfg)
    elif cfg.experiment == "emit":
        files = _trajectory_files(cfg, excited=1)
    elif cfg.experiment == "transfer":
        files = _trajectory_files(cfg, excited=cfg.excited_emitter)
    elif cfg.experiment == "heff":
        files = _heff_files(cfg)
    elif cfg.experiment == "dressed":
        files = _dressed_files(cfg)
    elif cfg.experiment == "sweep_gamma":
        files = _sweep_files(cfg)
    else:  # pragma: no cover - parse_config forbids this
        raise ValueError(f"unknown experiment {cfg.experiment!r}")

    canon = serialize_config(cfg)
    manifest = {
        "config_sha256": hashlib.sha256(canon.encode()).hexdigest(),
        "version": __version__,
        "experiment": cfg.experiment,
        "files": sorted(files),
    }
    os.makedirs(cfg.output_dir, exist_ok=True)
    written = []
    for name in sorted(files):
        path = os.path.join(cfg.output_dir, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(files[name])
        written.append(path)
    mpath = os.path.join(cfg.output_dir, "manifest.json")
    with open(mpath, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    written.append(mpath)
    return written
