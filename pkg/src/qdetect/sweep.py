"""Parameter sweeps over the channel zoo, producing one table row per point.

Rows carry the detected bounds (optimised over B1-B3 where that applies,
and for the fixed Bell-type basis) next to the closed-form reference values
for the family, which is the data behind the depolarizing, amplitude
damping and two-Kraus figures.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import log2
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import entropy
from .channels import (Channel, make_amplitude_damping, make_dephasing, make_depolarizing,
                       make_erasure, make_pauli, make_two_kraus, identity)
from .detection import BELL, default_basis, optimize_qdet, q_det
from .shotsim import estimate_report, sample_all

THREADS_ENV = "QDETECT_THREADS"

COLUMNS = ("q_det_optimized", "q_det_bell", "output_entropy", "shannon_H", "capacity",
           "hashing_bound", "upper_bound", "ce_lower", "p_lower", "basis_family",
           "theta1", "theta2", "clamped")


@dataclass(frozen=True)
class ChannelFamily:
    name: str
    params: Tuple[str, ...]
    build: Callable[..., Channel]
    references: Callable[..., Dict[str, Optional[float]]]


def _dephasing_refs(p, d):
    return {"capacity": entropy.capacity_dephasing(p) if d == 2 else None}


def _depolarizing_refs(p, d):
    return {"hashing_bound": entropy.hashing_bound(p, d),
            "upper_bound": entropy.depolarizing_upper(p) if d == 2 else None}


def _pauli_refs(px, py, pz, d):
    return {"hashing_bound": 1 - entropy.shannon([1 - px - py - pz, px, py, pz])}


FAMILIES: Dict[str, ChannelFamily] = {
    "identity": ChannelFamily("identity", (), lambda d: identity(d),
                              lambda d: {"capacity": log2(d)}),
    "dephasing": ChannelFamily("dephasing", ("p",), lambda p, d: make_dephasing(p, d),
                               _dephasing_refs),
    "depolarizing": ChannelFamily("depolarizing", ("p",), lambda p, d: make_depolarizing(p, d),
                                  _depolarizing_refs),
    "pauli": ChannelFamily("pauli", ("px", "py", "pz"),
                           lambda px, py, pz, d: make_pauli(1 - px - py - pz, px, py, pz),
                           _pauli_refs),
    "erasure": ChannelFamily("erasure", ("p",), lambda p, d: make_erasure(p, d),
                             lambda p, d: {"capacity": entropy.capacity_erasure(p, d)}),
    "amplitude-damping": ChannelFamily(
        "amplitude-damping", ("gamma",), lambda gamma, d: make_amplitude_damping(gamma),
        lambda gamma, d: {"capacity": entropy.capacity_amplitude_damping(gamma)}),
    "two-kraus": ChannelFamily(
        "two-kraus", ("alpha", "beta"), lambda alpha, beta, d: make_two_kraus(alpha, beta),
        lambda alpha, beta, d: {"capacity": entropy.capacity_two_kraus(alpha, beta)}),
}


def frange(start: float, stop: float, step: float) -> List[float]:
    """Inclusive arithmetic range, robust to float accumulation."""
    if step <= 0:
        raise ValueError("sweep step must be positive")
    n = int(np.floor((stop - start) / step + 1e-9))
    return [start + i * step for i in range(n + 1)]


def evaluate_point(channel: Union[str, Channel], params: Mapping[str, float], dim: int = 2,
                   mode: str = "exact", shots: int = 100_000,
                   seed: Optional[Sequence[int]] = None) -> Dict[str, object]:
    """Compute one output row for a named family (or a fixed custom channel)."""
    refs: Dict[str, Optional[float]] = {}
    if isinstance(channel, Channel):
        ch = channel
    else:
        fam = FAMILIES[channel]
        missing = [p for p in fam.params if p not in params]
        if missing:
            raise ValueError(f"missing parameters for {channel}: {missing}")
        args = [params[p] for p in fam.params]
        ch = fam.build(*args, d=dim)
        refs = fam.references(*args, d=dim)

    qubit = ch.d_in == 2 and ch.d_out == 2
    if mode == "shots":
        if not qubit:
            raise ValueError("shot mode supports qubit channels only")
        records = sample_all(ch, shots, seed)
        best = estimate_report(records)
        bell = estimate_report(records, BELL)
    elif mode == "exact":
        bell = q_det(ch, BELL if qubit else default_basis(ch))
        best = optimize_qdet(ch) if qubit else bell
    else:
        raise ValueError(f"unknown mode {mode!r}")

    row: Dict[str, object] = dict(params)
    row.update({
        "q_det_optimized": best.q_det,
        "q_det_bell": bell.q_det,
        "output_entropy": best.output_entropy,
        "shannon_H": best.shannon_entropy,
        "capacity": refs.get("capacity"),
        "hashing_bound": refs.get("hashing_bound"),
        "upper_bound": refs.get("upper_bound"),
        "ce_lower": best.ce_lower,
        "p_lower": best.p_lower,
        "basis_family": best.basis.family.name,
        "theta1": best.basis.theta1,
        "theta2": best.basis.theta2,
        "clamped": best.clamped or bell.clamped,
    })
    return row


def _evaluate(args):
    return evaluate_point(*args)


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep(channel: Union[str, Channel], points: Sequence[Mapping[str, float]], dim: int = 2,
          mode: str = "exact", shots: int = 100_000, seed: Optional[int] = None,
          workers: Optional[int] = None) -> List[Dict[str, object]]:
    """Evaluate every parameter point; rows come back in the order of ``points``.

    In shot mode point ``i`` draws from the seed sequence ``(seed, i)``, so
    results do not depend on the number of workers.
    """
    seed = 0 if seed is None else seed
    tasks = [(channel, dict(pt), dim, mode, shots, [seed, i]) for i, pt in enumerate(points)]
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(tasks) < 64:
        return [_evaluate(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_evaluate, tasks, chunksize=chunk))


def line_points(name: str, start: float, stop: float, step: float,
                fixed: Optional[Mapping[str, float]] = None) -> List[Dict[str, float]]:
    fixed = dict(fixed or {})
    return [{**fixed, name: v} for v in frange(start, stop, step)]


def grid_points(axes: Sequence[Tuple[str, float, float, float]],
                fixed: Optional[Mapping[str, float]] = None) -> List[Dict[str, float]]:
    """Long-format grid, first axis outermost."""
    fixed = dict(fixed or {})
    names = [a[0] for a in axes]
    values = [frange(*a[1:]) for a in axes]
    return [{**fixed, **dict(zip(names, combo))} for combo in product(*values)]
