"""Experiment drivers behind the command-line subcommands.

Each driver returns plain Python data (dataclasses or dicts) and leaves
file handling to :mod:`uncertainty_lab.cli`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cvgrid
from .bounds import mp_sum_bound, product_bound, saturating_perp, weak_sum_bound
from .errors import AlreadySaturatedError, UncertaintyLabError
from .hilbert import eigenstate_residual, variance
from .io import csv_text, encode_complex, encode_vector
from .mus import DEFAULT_TOL, mus_verdict, sum_mus_residual, theta_mus_angles
from .operators import DEFAULT_FOCK_DIM, fock_state, ladder_operators, position_momentum, spin_operators
from .random_states import haar_unitaries, make_rng, random_perp, theta_state

SWEEP_COLUMNS = ["theta", "lhs", "weak_rhs", "two_dadb", "residual_AiB", "residual_A2B2", "is_sum_mus"]
SLACK = 1e-10
CV_RESIDUAL_TOL = 1e-3
AUDIT_CHUNK = 10_000


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    theta_min: float = 0.0
    theta_max: float = 2 * np.pi
    steps: int = 200
    perp_samples: int = 30
    j: str = "1"
    hbar: float = 1.0
    observables: str = "z,y"

    def __post_init__(self):
        if self.steps < 2:
            raise UncertaintyLabError("steps must be >= 2")
        if self.perp_samples < 1:
            raise UncertaintyLabError("perp-samples must be >= 1")
        if not (np.isfinite(self.theta_min) and np.isfinite(self.theta_max)) or not self.theta_max > self.theta_min:
            raise UncertaintyLabError("invalid theta range: need finite theta-min < theta-max")
        if self.seed < 0 or self.seed >= 2**64:
            raise UncertaintyLabError("seed must be an unsigned 64-bit integer")

    def observable_pair(self):
        spin = spin_operators(self.j, self.hbar)
        names = [s.strip().lower() for s in self.observables.split(",")]
        if len(names) != 2 or any(n not in ("x", "y", "z") for n in names):
            raise UncertaintyLabError(f"observables must look like 'z,y', got {self.observables!r}")
        return spin.component(names[0]), spin.component(names[1])


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    lhs: float
    weak_rhs: float
    two_dadb: float
    mp_rhs: list = field(default_factory=list)
    residual_AiB: float = 0.0
    residual_A2B2: float = 0.0
    is_sum_mus: bool = False

    def violations(self, slack: float = SLACK) -> list[str]:
        bad = []
        if self.lhs < max(self.mp_rhs) - slack:
            bad.append("lhs < max(mp_rhs)")
        if min(self.mp_rhs) < self.weak_rhs - slack:
            bad.append("min(mp_rhs) < weak_rhs")
        if self.lhs < self.two_dadb - slack:
            bad.append("lhs < two_dadb")
        if self.two_dadb < self.weak_rhs - slack:
            bad.append("two_dadb < weak_rhs")
        return bad

    def row(self) -> list:
        return [self.theta, self.lhs, self.weak_rhs, self.two_dadb,
                self.residual_AiB, self.residual_A2B2, self.is_sum_mus, *self.mp_rhs]


def sweep_row(theta: float, a, b, rng, perp_samples: int) -> SweepRecord:
    psi = theta_state(theta, a.shape[0])
    weak = weak_sum_bound(psi, a, b)
    two_dadb = 2 * np.sqrt(variance(psi, a) * variance(psi, b))
    mp = [mp_sum_bound(psi, a, b, random_perp(psi, rng)).rhs for _ in range(perp_samples)]
    return SweepRecord(
        theta=float(theta),
        lhs=weak.lhs,
        weak_rhs=weak.rhs,
        two_dadb=float(two_dadb),
        mp_rhs=mp,
        residual_AiB=sum_mus_residual(psi, a, b)[0],
        residual_A2B2=eigenstate_residual(psi, a @ a + b @ b),
        is_sum_mus=weak.gap <= DEFAULT_TOL,
    )


def run_sweep(config: RunConfig) -> list[SweepRecord]:
    """One record per theta on a uniform grid; row ``k`` draws from stream ``(seed, k)``."""
    a, b = config.observable_pair()
    thetas = np.linspace(config.theta_min, config.theta_max, config.steps)
    return [
        sweep_row(t, a, b, make_rng(config.seed, k), config.perp_samples)
        for k, t in enumerate(thetas)
    ]


def sweep_csv(records: list[SweepRecord]) -> str:
    k = len(records[0].mp_rhs) if records else 0
    header = SWEEP_COLUMNS + [f"mp_rhs_{i}" for i in range(1, k + 1)]
    return csv_text(header, (r.row() for r in records))


def sweep_markers(config: RunConfig) -> dict[str, list[list[float]]]:
    """``[theta, lhs]`` pairs where the theta-state is an eigenstate of ``A -/+ iB`` or ``A^2 + B^2``."""
    a, b = config.observable_pair()
    angles = theta_mus_angles(a, b, config.theta_min, config.theta_max)
    out = {}
    for key, thetas in angles.items():
        pts = []
        for t in thetas:
            psi = theta_state(t, a.shape[0])
            pts.append([t, variance(psi, a) + variance(psi, b)])
        out[key] = pts
    return out


PLOT_TEMPLATE = '''\
"""Plot a theta sweep written by `uncertainty-lab sweep`.

Usage: python {script_name} [csv_path] [output.png]
"""
import csv
import sys

import matplotlib.pyplot as plt

CSV_PATH = sys.argv[1] if len(sys.argv) > 1 else {csv_name!r}
AIB_MARKERS = {aib!r}
A2B2_MARKERS = {a2b2!r}

with open(CSV_PATH) as fh:
    rows = list(csv.DictReader(fh))
theta = [float(r["theta"]) for r in rows]
mp_cols = [c for c in rows[0] if c.startswith("mp_rhs_")]

fig, ax = plt.subplots(figsize=(7, 4.5))
for c in mp_cols:
    ax.plot(theta, [float(r[c]) for r in rows], "k.", ms=1.5,
            label="MP right-hand side" if c == mp_cols[0] else None)
ax.plot(theta, [float(r["lhs"]) for r in rows], "g-", label="Var A + Var B")
ax.plot(theta, [float(r["weak_rhs"]) for r in rows], "r-", label="|i<[A,B]>|")
ax.plot(theta, [float(r["two_dadb"]) for r in rows], "b-", label="2 dA dB")
if AIB_MARKERS:
    ax.plot(*zip(*AIB_MARKERS), "co", ms=8, label="eigenstates of A -/+ iB")
if A2B2_MARKERS:
    ax.plot(*zip(*A2B2_MARKERS), "mx", ms=10, mew=2, label="eigenstates of A^2 + B^2")
ax.set_xlabel("theta (rad)")
ax.legend(fontsize=8)
fig.tight_layout()
if len(sys.argv) > 2:
    fig.savefig(sys.argv[2], dpi=150)
else:
    plt.show()
'''


def plot_script(config: RunConfig, csv_name: str, script_name: str) -> str:
    markers = sweep_markers(config)
    return PLOT_TEMPLATE.format(
        script_name=script_name,
        csv_name=csv_name,
        aib=[[float("%.17g" % t), float("%.17g" % v)] for t, v in markers["AiB"]],
        a2b2=[[float("%.17g" % t), float("%.17g" % v)] for t, v in markers["A2B2"]],
    )


def bounds_report(psi, a, b, perp_mode: str = "saturating", seed: int = 0,
                  psi_perp=None) -> dict:
    """All three relations plus a MUS verdict for one state and observable pair."""
    note = None
    if perp_mode == "file":
        if psi_perp is None:
            raise UncertaintyLabError("perp mode 'file' needs 'psi_perp' in the state file")
    elif perp_mode == "saturating":
        try:
            psi_perp = saturating_perp(psi, a, b)
        except AlreadySaturatedError:
            note = "state already saturates; random partner used"
            psi_perp = random_perp(psi, make_rng(seed))
    elif perp_mode == "random":
        psi_perp = random_perp(psi, make_rng(seed))
    else:
        raise UncertaintyLabError(f"unknown perp mode {perp_mode!r}")
    return {
        "dim": int(psi.shape[0]),
        "perp_mode": perp_mode,
        "perp_note": note,
        "psi_perp": encode_vector(psi_perp),
        "product": product_bound(psi, a, b).to_dict(),
        "mp_sum": mp_sum_bound(psi, a, b, psi_perp).to_dict(),
        "weak_sum": weak_sum_bound(psi, a, b).to_dict(),
        "mus": mus_verdict(psi, a, b, psi_perp=psi_perp).to_dict(),
    }


def cv_check(hbar: float = 1.0, a_mean: float = 1.0, b_mean: float = 0.5,
             n_points: int = cvgrid.DEFAULT_N, halfwidth: float = cvgrid.DEFAULT_HALFWIDTH,
             m_override: float | None = None, fock_dim: int = DEFAULT_FOCK_DIM) -> dict:
    """Riccati coefficients, finite-difference residuals and grid moments of both Gaussians.

    ``psi_L`` lives on a grid centered at ``a_mean``; ``psi_R`` on one
    centered at zero.  ``m_override`` replaces the Riccati value of ``m``
    and ``m'`` in the residuals, for negative checks.  The grid moments of
    ``psi_R`` are compared with the vacuum of a Fock space truncated at
    ``fock_dim``.
    """
    sol_l = cvgrid.riccati_solution("L", a_mean, b_mean, hbar)
    sol_r = cvgrid.riccati_solution("R", 0.0, 0.0, hbar)
    grid_l = cvgrid.default_grid(hbar, a_mean, halfwidth, n_points)
    grid_r = cvgrid.default_grid(hbar, 0.0, halfwidth, n_points)
    psi_l = cvgrid.gaussian_psi_L(grid_l, a_mean, b_mean)
    psi_r = cvgrid.gaussian_psi_R(grid_r)
    m = sol_l.m_value if m_override is None else float(m_override)
    m_prime = sol_r.m_value if m_override is None else float(m_override)
    res_l = cvgrid.ode_residual_L(psi_l, a_mean, b_mean, m)
    res_r = cvgrid.eigen_residual_R(psi_r, m_prime)

    alg = ladder_operators(fock_dim, hbar)
    xo, po = position_momentum(alg)
    vac = fock_state(0, fock_dim)
    mom_r = cvgrid.grid_moments(psi_r)
    fock = {"fock_dim": int(fock_dim), "var_x": variance(vac, xo), "var_p": variance(vac, po)}
    fock["max_abs_diff"] = max(abs(fock["var_x"] - mom_r["var_x"]), abs(fock["var_p"] - mom_r["var_p"]))

    def coeffs(sol):
        return {"c_linear": encode_complex(sol.c_linear), "c_const": encode_complex(sol.c_const),
                "m_value": sol.m_value}

    return {
        "hbar": hbar,
        "a_mean": a_mean,
        "b_mean": b_mean,
        "grid": {"n_points": n_points, "halfwidth": halfwidth, "h": grid_l.h},
        "riccati": {"L": coeffs(sol_l), "R": coeffs(sol_r)},
        "m_used": m,
        "m_prime_used": m_prime,
        "ode_residual_L": res_l,
        "eigen_residual_R": res_r,
        "moments_L": cvgrid.grid_moments(psi_l),
        "moments_R": mom_r,
        "fock_vacuum": fock,
        "m_equals_mprime_equals_hbar": bool(res_l < CV_RESIDUAL_TOL and res_r < CV_RESIDUAL_TOL),
    }


def _dft(dim: int) -> np.ndarray:
    k = np.arange(dim)
    return np.exp(2j * np.pi * np.outer(k, k) / dim) / np.sqrt(dim)


def haar_audit(dim: int = 3, samples: int = 100_000, seed: int = 0, bands: float = 3.0) -> dict:
    """Moment checks of the Haar sampler against ``E|U_ij|^2 = 1/d`` and ``E|U_11|^4 = 2/(d(d+1))``.

    Left invariance is probed by repeating the second-moment check on
    ``V U`` for the fixed discrete Fourier unitary ``V``.
    """
    if samples < 1000:
        raise UncertaintyLabError("haar-audit needs at least 1000 samples")
    if int(dim) != dim or dim < 2:
        raise UncertaintyLabError("dim must be an integer >= 2")
    rng = make_rng(seed)
    v = _dft(dim)
    eye = np.eye(dim)
    s1 = np.zeros((dim, dim))
    s2 = np.zeros((dim, dim))
    l1 = np.zeros((dim, dim))
    l2 = np.zeros((dim, dim))
    f1 = f2 = 0.0
    defect = 0.0
    done = 0
    while done < samples:
        n = min(AUDIT_CHUNK, samples - done)
        u = haar_unitaries(dim, n, rng)
        uh_u = np.conj(np.swapaxes(u, -1, -2)) @ u
        defect = max(defect, float(np.max(np.abs(uh_u - eye))))
        p = np.abs(u) ** 2
        s1 += p.sum(axis=0)
        s2 += (p**2).sum(axis=0)
        f1 += float((p[:, 0, 0] ** 2).sum())
        f2 += float((p[:, 0, 0] ** 4).sum())
        q = np.abs(v @ u) ** 2
        l1 += q.sum(axis=0)
        l2 += (q**2).sum(axis=0)
        done += n

    def stats(t1, t2, expected):
        mean = t1 / samples
        var = (t2 / samples - mean**2) * samples / (samples - 1)
        se = np.sqrt(var / samples)
        return mean, se, (mean - expected) / se

    mean, se, z = stats(s1, s2, 1 / dim)
    lmean, lse, lz = stats(l1, l2, 1 / dim)
    fmean, fse, fz = stats(f1, f2, 2 / (dim * (dim + 1)))
    cells_pass = bool(np.all(np.abs(z) <= bands))
    left_pass = bool(np.all(np.abs(lz) <= bands))
    fourth_pass = bool(abs(fz) <= bands)
    unitary_pass = defect < 1e-12
    return {
        "dim": dim,
        "samples": samples,
        "seed": seed,
        "max_unitarity_defect": defect,
        "expected_abs2": 1 / dim,
        "mean_abs2": mean.tolist(),
        "se_abs2": se.tolist(),
        "z_abs2": z.tolist(),
        "fourth_moment": {"mean": float(fmean), "se": float(fse),
                          "expected": 2 / (dim * (dim + 1)), "z": float(fz)},
        "left_invariance": {"mean_abs2_VU": lmean.tolist(), "z_abs2_VU": lz.tolist(),
                            "max_abs_z": float(np.max(np.abs(lz)))},
        "unitarity_pass": unitary_pass,
        "cells_pass": cells_pass,
        "fourth_moment_pass": fourth_pass,
        "left_invariance_pass": left_pass,
        "pass": unitary_pass and cells_pass and fourth_pass and left_pass,
    }
