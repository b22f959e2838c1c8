"""Parameter sweeps, optimum-phase location, figure datasets, file output.

Grid enumeration order is fixed (alpha, omega, T, phi ascending) and all
floats are serialized at full precision, so identical configurations
produce byte-identical output files.
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .analytic import (
    qfi_lossless,
    qfi_lossy,
    qfi_lossy_max,
    total_photon_number,
)
from .errors import DomainError
from .fock import EPS_TAIL, FockCutoff
from .qfi import EPS_RANK
from .simulate import probe_cutoff, qfi_numeric

NUMERIC_ALPHA_MAX = 1.5        # numeric path on by default only up to here
PHI_POINTS = 201
OMEGA_POINTS = 64
PHI_REFINE_TOL = 1e-6          # golden-section window width, radians
CSV_COLUMNS = (
    "alpha", "phi", "omega", "T", "F_analytic", "F_numeric",
    "abs_err", "tail_mass", "N", "N_sq",
)
FIGURE_IDS = ("fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c")
_METHODS = ("analytic", "numeric", "both")


def default_phi_grid(points: int = PHI_POINTS) -> tuple[float, ...]:
    """`points` equally spaced phases in [-pi/2, pi/2)."""
    return tuple(np.linspace(-math.pi / 2.0, math.pi / 2.0, points, endpoint=False))


def default_omega_grid(points: int = OMEGA_POINTS) -> tuple[float, ...]:
    """`points` equally spaced superposition phases in [0, pi)."""
    return tuple(i * math.pi / points for i in range(points))


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian sweep of (alpha, omega, T, phi) with one evaluation method."""

    alpha_values: tuple[float, ...]
    phi_grid: tuple[float, ...]
    omega_grid: tuple[float, ...]
    T_grid: tuple[float, ...]
    n_max: int | None = None
    method: str = "both"

    def __post_init__(self):
        for name, axis in (("alpha_values", self.alpha_values),
                           ("phi_grid", self.phi_grid),
                           ("omega_grid", self.omega_grid),
                           ("T_grid", self.T_grid)):
            if len(axis) == 0:
                raise DomainError(f"{name} must be non-empty")
            if any(b < a for a, b in zip(axis, axis[1:])):
                raise DomainError(f"{name} must be sorted ascending")
        if any(a < 0 for a in self.alpha_values):
            raise DomainError("alpha must be non-negative")
        if self.phi_grid[0] < -math.pi / 2.0 or self.phi_grid[-1] >= math.pi / 2.0:
            raise DomainError("phi must lie in [-pi/2, pi/2)")
        if self.omega_grid[0] < 0.0 or self.omega_grid[-1] >= math.pi:
            raise DomainError("omega must lie in [0, pi)")
        if self.T_grid[0] < 0.0 or self.T_grid[-1] > 1.0:
            raise DomainError("T must lie in [0,1]")
        if self.method not in _METHODS:
            raise DomainError(f"method must be one of {_METHODS}")

    def points(self) -> list[tuple[float, float, float, float]]:
        return [
            (a, phi, om, T)
            for a in self.alpha_values
            for om in self.omega_grid
            for T in self.T_grid
            for phi in self.phi_grid
        ]


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated grid point; None marks a column not computed."""

    alpha: float
    phi: float
    omega: float
    T: float
    F_analytic: float | None
    F_numeric: float | None
    abs_err: float | None
    tail_mass: float | None
    N: float
    N_sq: float


def analytic_qfi(alpha: float, phi: float, omega: float, T: float) -> float:
    """Closed-form QFI: lossless expression at T = 1, lossy one otherwise."""
    if T == 1.0:
        return qfi_lossless(alpha, phi, omega)
    return qfi_lossy(alpha, phi, omega, T)


def evaluate_point(
    alpha: float,
    phi: float,
    omega: float,
    T: float,
    method: str = "both",
    n_max: int | None = None,
) -> SweepRecord:
    if method not in _METHODS:
        raise DomainError(f"method must be one of {_METHODS}")
    run_numeric = method == "numeric" or (
        method == "both" and alpha <= NUMERIC_ALPHA_MAX
    )
    f_analytic = analytic_qfi(alpha, phi, omega, T) if method != "numeric" else None
    f_numeric = None
    tail = None
    if run_numeric:
        cutoff = FockCutoff(n_max) if n_max is not None else None
        res = qfi_numeric(alpha, phi, omega, T, cutoff)
        f_numeric = res.value
        tail = res.tail_mass
    abs_err = (
        abs(f_analytic - f_numeric)
        if f_analytic is not None and f_numeric is not None
        else None
    )
    n_total = total_photon_number(alpha, omega)
    return SweepRecord(alpha, phi, omega, T, f_analytic, f_numeric, abs_err,
                       tail, n_total, n_total * n_total)


def _evaluate_star(args) -> SweepRecord:
    point, method, n_max = args
    return evaluate_point(*point, method=method, n_max=n_max)


def resolve_jobs(jobs: int | None) -> int:
    """Explicit value, else MZQFI_JOBS, else 1."""
    if jobs is None:
        jobs = int(os.environ.get("MZQFI_JOBS", "1"))
    return max(1, jobs)


def run_grid(grid: SweepGrid, jobs: int | None = None) -> list[SweepRecord]:
    points = grid.points()
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(points) < 4:
        return [evaluate_point(*p, method=grid.method, n_max=grid.n_max)
                for p in points]
    payload = [(p, grid.method, grid.n_max) for p in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(payload) // (4 * jobs))
        return list(pool.map(_evaluate_star, payload, chunksize=chunk))


def golden_section_max(f, lo: float, hi: float, tol: float = PHI_REFINE_TOL) -> float:
    """Argmax of a unimodal f on [lo, hi] to within tol."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = f(x1)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class PhiScan:
    """QFI-vs-phi curve plus the refined optimum."""

    records: tuple[SweepRecord, ...]
    phi_m: float
    f_max: float


def scan_phi(
    alpha: float,
    omega: float,
    T: float,
    phi_grid: tuple[float, ...] | None = None,
    method: str = "analytic",
    n_max: int | None = None,
    refine_tol: float = PHI_REFINE_TOL,
) -> PhiScan:
    """Sweep phi, then refine the coarse argmax by golden-section search."""
    if phi_grid is None:
        phi_grid = default_phi_grid()
    records = [evaluate_point(alpha, p, omega, T, method=method, n_max=n_max)
               for p in phi_grid]
    if method == "numeric":
        cutoff = FockCutoff(n_max) if n_max is not None else None

        def f(p: float) -> float:
            return qfi_numeric(alpha, p, omega, T, cutoff).value

        values = [r.F_numeric for r in records]
    else:
        def f(p: float) -> float:
            return analytic_qfi(alpha, p, omega, T)

        values = [r.F_analytic for r in records]
    i = int(np.argmax(values))
    lo = phi_grid[max(i - 1, 0)]
    hi = phi_grid[min(i + 1, len(phi_grid) - 1)]
    phi_m = golden_section_max(f, lo, hi, refine_tol)
    return PhiScan(tuple(records), phi_m, f(phi_m))


@dataclass(frozen=True)
class FigureDataset:
    figure_id: str
    records: tuple[SweepRecord, ...]
    meta: dict


def _meta(figure_id: str, grid_desc: dict, n_max: int | None, numeric: bool) -> dict:
    return {
        "figure": figure_id,
        "version": __version__,
        "numeric": numeric,
        "n_max": n_max,
        "tolerances": {"eps_rank": EPS_RANK, "eps_tail": EPS_TAIL,
                       "phi_refine_tol": PHI_REFINE_TOL},
        **grid_desc,
    }


def figure_dataset(figure_id: str, n_max: int | None = None,
                   jobs: int | None = None) -> FigureDataset:
    """Full dataset behind one published-figure panel.

    fig1a/fig1b: QFI vs phi at alpha = 0.3 for T = 0.1..1.0, with
    omega = 0 / 6 pi / 7, analytic and Fock-numeric columns.
    fig1c: refined optimum phi_m vs omega at T = 0.83.
    fig2a/b/c: optimum QFI vs omega at alpha = 0.8 / 3 / 10 for
    T = 0.6..1.0, with total photon number N and N^2 reference columns
    (numeric only where the default-enabled alpha window allows).
    """
    if figure_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {figure_id!r}; expected {FIGURE_IDS}")
    if figure_id in ("fig1a", "fig1b"):
        omega = 0.0 if figure_id == "fig1a" else 6.0 * math.pi / 7.0
        eff_n_max = 20 if n_max is None else n_max
        grid = SweepGrid(
            alpha_values=(0.3,),
            phi_grid=default_phi_grid(),
            omega_grid=(omega,),
            T_grid=tuple(np.linspace(0.1, 1.0, 10)),
            n_max=eff_n_max,
            method="both",
        )
        records = run_grid(grid, jobs)
        meta = _meta(figure_id, {
            "alpha": 0.3, "omega": omega, "T_grid": list(grid.T_grid),
            "phi_points": len(grid.phi_grid),
        }, eff_n_max, True)
        return FigureDataset(figure_id, tuple(records), meta)
    if figure_id == "fig1c":
        omegas = default_omega_grid()
        records = []
        for om in omegas:
            scan = scan_phi(0.3, om, 0.83, method="analytic")
            records.append(evaluate_point(0.3, scan.phi_m, om, 0.83,
                                          method="analytic"))
        meta = _meta(figure_id, {
            "alpha": 0.3, "T": 0.83, "omega_points": len(omegas),
            "phi_column": "refined phi_m per omega",
        }, None, False)
        return FigureDataset(figure_id, tuple(records), meta)
    alpha = {"fig2a": 0.8, "fig2b": 3.0, "fig2c": 10.0}[figure_id]
    numeric = alpha <= NUMERIC_ALPHA_MAX
    grid = SweepGrid(
        alpha_values=(alpha,),
        phi_grid=(0.0,),
        omega_grid=default_omega_grid(),
        T_grid=tuple(np.linspace(0.6, 1.0, 5)),
        n_max=n_max,
        method="both",
    )
    records = run_grid(grid, jobs)
    eff_n_max = n_max
    if numeric and eff_n_max is None:
        eff_n_max = probe_cutoff(alpha).n_max
    meta = _meta(figure_id, {
        "alpha": alpha, "T_grid": list(grid.T_grid),
        "omega_points": len(grid.omega_grid), "phi": 0.0,
    }, eff_n_max if numeric else None, numeric)
    return FigureDataset(figure_id, tuple(records), meta)


@dataclass(frozen=True)
class ComparisonReport:
    """Worst numeric-vs-analytic deviation over a grid."""

    max_abs_err: float
    worst: SweepRecord | None
    compared: int
    records: tuple[SweepRecord, ...]


def compare_numeric_analytic(grid: SweepGrid, jobs: int | None = None
                             ) -> ComparisonReport:
    records = run_grid(grid, jobs)
    max_err = 0.0
    worst = None
    compared = 0
    for rec in records:
        if rec.abs_err is None:
            continue
        compared += 1
        if rec.abs_err >= max_err:
            max_err = rec.abs_err
            worst = rec
    return ComparisonReport(max_err, worst, compared, tuple(records))


@dataclass(frozen=True)
class LossSensitivityRow:
    T: float
    f_max: float
    n_total: float
    n_sq: float
    beats_heisenberg: bool


@dataclass(frozen=True)
class LossSensitivityReport:
    """How fast the optimum QFI collapses under small loss (omega = 0).

    ratio_small_loss = F_m(T=0.9) / F_m(T=1); for bright probes a 10%
    leak removes almost all of the Heisenberg-scaling advantage.
    """

    alpha: float
    rows: tuple[LossSensitivityRow, ...]
    ratio_small_loss: float


def loss_sensitivity_report(alpha: float,
                            T_grid: tuple[float, ...] = (0.6, 0.7, 0.8, 0.9, 1.0)
                            ) -> LossSensitivityReport:
    n_total = total_photon_number(alpha, 0.0)
    rows = []
    for T in T_grid:
        f_m = qfi_lossless(alpha, 0.0, 0.0) if T == 1.0 else qfi_lossy_max(alpha, 0.0, T)
        rows.append(LossSensitivityRow(T, f_m, n_total, n_total * n_total,
                                       f_m > n_total * n_total))
    f_ref = qfi_lossless(alpha, 0.0, 0.0)
    f_09 = qfi_lossy_max(alpha, 0.0, 0.9)
    return LossSensitivityReport(alpha, tuple(rows), f_09 / f_ref)


# ---------------------------------------------------------------------------
# file output
# ---------------------------------------------------------------------------

def _fmt(value: float | None) -> str:
    return "" if value is None else format(value, ".17g")


def _record_row(rec: SweepRecord) -> list[str]:
    return [_fmt(getattr(rec, col)) for col in CSV_COLUMNS]


def write_records_csv(path: str, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(_record_row(rec))


def write_records_json(path: str, records, meta: dict | None = None) -> None:
    payload = {
        "meta": meta or {},
        "records": [{col: getattr(rec, col) for col in CSV_COLUMNS}
                    for rec in records],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_records(path: str) -> tuple[list[SweepRecord], dict | None]:
    """Round-trip reader for both output formats."""
    if path.endswith(".json"):
        with open(path) as fh:
            payload = json.load(fh)
        records = [SweepRecord(**{k: row[k] for k in CSV_COLUMNS})
                   for row in payload["records"]]
        return records, payload.get("meta")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise DomainError(f"unexpected CSV header {header}")
        records = []
        for row in reader:
            vals = [None if cell == "" else float(cell) for cell in row]
            records.append(SweepRecord(**dict(zip(CSV_COLUMNS, vals))))
    return records, None
