# Copyright 2025 Joe Bears
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


from typing import NamedTuple

import numpy as np

from lateraltools.simulation.engine import SimLog
from lateraltools.utils import linterp


DECAY_FLOOR = 1e-9
CONVERGENCE_FLOOR = 1e-6


class Metrics(NamedTuple):
    """Summary of a run. Times that were never reached and statistics over
    windows the run did not cover are None."""
    status: str
    duration: float
    rms_z1: float
    max_abs_z1: float
    rms_z3: float
    max_abs_z3: float
    convergence_time_e_h1: float | None
    convergence_time_e_h3: float | None
    decay_rate: float | None
    initial_norm: float
    terminal_norm: float
    terminal_ratio: float | None
    saturation_duty: float
    saturation_events: int
    last_saturation_time: float | None
    peak_delta: float
    peak_z2_hat: float
    max_e_h2: float | None
    max_e_D_l: float | None
    chatter_e_h3: float | None


def rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(values))))

def convergence_time(t: np.ndarray, error: np.ndarray, band: float = 0.05,
        floor: float = CONVERGENCE_FLOOR) -> float | None:
    """Time after which |error| stays within band times its initial magnitude,
    or within floor when that is larger, interpolated between samples. None
    if the error is outside the band at the last sample.

    Parameters
    ==========

    t : np.ndarray
        Sample times

    error : np.ndarray
        Error samples

    band : float
        Band as a fraction of the initial magnitude

    floor : float
        Smallest band in the units of error"""
    magnitude = np.abs(np.asarray(error, dtype=float))
    threshold = max(band*magnitude[0], floor)
    outside = np.flatnonzero(magnitude > threshold)
    if len(outside) == 0:
        return float(t[0])
    last = outside[-1]
    if last == len(magnitude)-1:
        return None
    return float(linterp(magnitude[last], t[last], magnitude[last+1], t[last+1], threshold))

def decay_rate(t: np.ndarray, norm: np.ndarray, start: float, window: float,
        floor: float = DECAY_FLOOR) -> float | None:
    """Least-squares slope of log(norm) over [start, start + window], cut at
    the first sample at or below the floor. None with fewer than two samples.

    Parameters
    ==========

    t : np.ndarray
        Sample times

    norm : np.ndarray
        Error norm samples

    start : float
        Start of the fit window

    window : float
        Length of the fit window

    floor : float
        Numerical floor of the norm"""
    inside = (t >= start) & (t <= start+window)
    t, norm = t[inside], norm[inside]
    below = np.flatnonzero(norm <= floor)
    if len(below):
        t, norm = t[:below[0]], norm[:below[0]]
    if len(t) < 2:
        return None
    return float(np.polyfit(t, np.log(norm), 1)[0])

def saturation_episodes(saturated: np.ndarray) -> int:
    saturated = np.asarray(saturated, dtype=bool)
    if len(saturated) == 0:
        return 0
    return int(saturated[0])+int(np.count_nonzero(saturated[1:] & ~saturated[:-1]))

def metrics(
        log: SimLog,
        band: float = 0.05,
        transient: float = 2.0,
        decay_window: float = 5.0,
        peak_window: float = 1.0) -> Metrics:
    """Tracking, estimation and actuation statistics of a run. The decay fit
    and the terminal ratio use the path-following pair norm |(z1, z2)|.

    Parameters
    ==========

    log : SimLog
        Simulation log

    band : float
        Convergence band as a fraction of the initial estimation error

    transient : float
        End of the initial transient in s

    decay_window : float
        Length of the decay fit window in s

    peak_window : float
        Window after the start in s over which estimate peaking is measured"""
    data = log.data
    if data.empty:
        raise ValueError("Cannot compute metrics of an empty log")
    t = data["t"].to_numpy()
    z1 = data["z1"].to_numpy()
    z3 = data["z3"].to_numpy()
    norm = np.hypot(z1, data["z2"].to_numpy())
    saturated = data["saturated"].to_numpy(dtype=bool)
    settled = t >= transient
    duration = t[-1]-t[0]

    if np.any(settled):
        e_h3 = data["e_h3"].to_numpy()[settled]
        max_e_h2 = float(np.max(np.abs(data["e_h2"].to_numpy()[settled])))
        max_e_D_l = float(np.max(np.abs(data["e_D_l"].to_numpy()[settled])))
        settled_time = t[settled][-1]-t[settled][0]
        chatter_e_h3 = float(np.sum(np.abs(np.diff(e_h3)))/settled_time) if settled_time > 0 else None
    else:
        max_e_h2 = max_e_D_l = chatter_e_h3 = None

    return Metrics(
        status=log.status,
        duration=float(duration),
        rms_z1=rms(z1),
        max_abs_z1=float(np.max(np.abs(z1))),
        rms_z3=rms(z3),
        max_abs_z3=float(np.max(np.abs(z3))),
        convergence_time_e_h1=convergence_time(t, data["e_h1"].to_numpy(), band),
        convergence_time_e_h3=convergence_time(t, data["e_h3"].to_numpy(), band),
        decay_rate=decay_rate(t, norm, transient, decay_window),
        initial_norm=float(norm[0]),
        terminal_norm=float(norm[-1]),
        terminal_ratio=float(norm[-1]/norm[0]) if norm[0] > 0 else None,
        saturation_duty=float(np.mean(saturated)),
        saturation_events=saturation_episodes(saturated),
        last_saturation_time=float(t[saturated][-1]) if np.any(saturated) else None,
        peak_delta=float(np.max(np.abs(data["delta"].to_numpy()))),
        peak_z2_hat=float(np.max(np.abs(data["z2_hat"].to_numpy()[t <= t[0]+peak_window]))),
        max_e_h2=max_e_h2,
        max_e_D_l=max_e_D_l,
        chatter_e_h3=chatter_e_h3)
