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


import logging
from math import cos, sin
import time
from typing import NamedTuple, Sequence
import warnings

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from lateraltools.analysis import closed_loop_poles
from lateraltools.control import (compute_control, ControlTrace, disturbance_residual,
    Disturbances, ehgo_derivative, ObserverState)
from lateraltools.path import (error_rates, ErrorState, pose_errors, ReferencePath,
    ReferenceState, tracking_errors)
from lateraltools.simulation.integrators import integrate_step
from lateraltools.simulation.scenario import Scenario
from lateraltools.vehicle import PlantDerivative, plant_derivative, PlantState, RoadConditions


pd.options.mode.copy_on_write = True
logger = logging.getLogger(__name__)

# Column schema of every simulation log, one row per logged step
LOG_COLUMNS = (
    "t", "X", "Y", "psi", "y_dot", "psi_dot",
    "X_des", "Y_des", "psi_des", "psi_dot_des", "kappa", "phi",
    "z1", "z2", "z3", "z4",
    "z1_hat", "z2_hat", "D_l_hat", "z3_hat", "z4_hat", "D_psi_hat",
    "D_l", "D_psi",
    "e_h1", "e_h2", "e_h3", "e_h4", "e_D_l", "e_D_psi",
    "z1_meas", "z3_meas",
    "nu_h", "z3_des", "u_d", "u", "delta_raw", "delta", "saturated",
    "a_y", "theta_f", "theta_r",
)

FIXED_POINT_ITERATIONS = 50
FIXED_POINT_TOLERANCE = 1e-13


class SimLog(NamedTuple):
    """Result of a run. status is "completed" or "aborted", and an aborted
    log holds every row recorded before the failure. elapsed is the wall
    clock time of the run in s."""
    data: pd.DataFrame
    status: str = "completed"
    reason: str = ""
    abort_time: float | None = None
    elapsed: float = 0.0

    @property
    def aborted(self) -> bool:
        return self.status == "aborted"


class Truth(NamedTuple):
    state: PlantState
    reference: ReferenceState
    road: RoadConditions
    derivative: PlantDerivative
    errors: ErrorState
    disturbances: Disturbances


class ClosedLoop:
    """Plant, observers and controller of one scenario, stepped on a fixed
    grid. The composite state is (y_dot, psi, psi_dot, X, Y) followed by the
    six observer estimates."""
    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.params = scenario.plant
        self.coeffs = scenario.coefficients()
        self.reference = ReferencePath(scenario.curvature, scenario.v_x, scenario.dt,
            scenario.horizon)
        self.phi = np.asarray(scenario.banking.value(self.reference.t), dtype=float)
        self.half_step = scenario.dt/2
        self.delta = 0.0
        self.held_measurement = None
        self.noise = (0.0, 0.0)

    def initial_state(self) -> np.ndarray:
        ref = self.reference.sample(0)
        initial = self.scenario.initial
        return np.array([
            initial.y_dot,
            ref.psi_des+initial.z3,
            ref.psi_dot_des+initial.z4,
            ref.X_des-initial.z1*sin(ref.psi_des),
            ref.Y_des+initial.z1*cos(ref.psi_des),
            *initial.observer
        ], dtype=float)

    def plant_state(self, y: Sequence[float]) -> PlantState:
        return PlantState(y[0], y[1], y[2], self.scenario.v_x, y[3], y[4])

    def road(self, index: int) -> RoadConditions:
        return RoadConditions(self.phi[index], self.scenario.beta_x)

    def measure(self, index: int, y: Sequence[float]) -> tuple[float, float]:
        """Measured z1 and z3 at a grid index, noise included"""
        reference = self.reference
        offsets = pose_errors(y[3], y[4], y[1], reference.X_des[index], reference.Y_des[index],
            reference.psi_des[index])
        return offsets.z1+self.noise[0], offsets.z3+self.noise[1]

    def field(self, t: float, y: np.ndarray) -> np.ndarray:
        index = round(t/self.half_step)
        y = y.tolist()
        derivative = plant_derivative(self.plant_state(y), self.delta, self.road(index),
            self.params, self.scenario.slip_limit)
        measured = self.held_measurement or self.measure(index, y)
        estimates = ehgo_derivative(ObserverState(*y[5:]), measured, self.delta, self.coeffs,
            self.scenario.observer)
        return np.array((
            derivative.y_ddot,
            derivative.psi_dot,
            derivative.psi_ddot,
            derivative.X_dot,
            derivative.Y_dot,
            *estimates))

    def truth(self, index: int, y: Sequence[float], delta: float) -> Truth:
        """True errors and disturbances at a grid index for a given steering
        angle"""
        state = self.plant_state(y)
        reference = self.reference.sample(index)
        road = self.road(index)
        exact = self.scenario.exact_errors
        derivative = plant_derivative(state, delta, road, self.params, self.scenario.slip_limit)
        errors = tracking_errors(state, reference, exact)
        rates = error_rates(state, derivative, reference, exact)
        disturbances = disturbance_residual(errors, rates, delta, self.coeffs)
        return Truth(state, reference, road, derivative, errors, disturbances)

    def exact_control(self, index: int, y: Sequence[float]) -> ControlTrace:
        """Control law fed the true errors and disturbances. The disturbances
        depend on the steering angle through the tires, so the steering angle
        is a fixed point, found by iteration from the previous command and by
        bracketing on the clamp interval when iteration stalls."""
        def command(delta: float) -> ControlTrace:
            truth = self.truth(index, y, delta)
            z1, z2, z3, z4 = truth.errors
            D_l, D_psi = truth.disturbances
            return compute_control(ObserverState(z1, z2, D_l, z3, z4, D_psi), self.coeffs,
                self.scenario.controller)

        delta = self.delta
        for _ in range(FIXED_POINT_ITERATIONS):
            trace = command(delta)
            if abs(trace.delta-delta) <= FIXED_POINT_TOLERANCE*max(1.0, abs(delta)):
                return trace
            delta = trace.delta
        limit = self.scenario.controller.delta_limit
        logger.debug("Steering fixed point stalled at grid index %d, bracketing", index)
        return command(brentq(lambda delta: delta-command(delta).delta, -limit, limit,
            xtol=1e-15))

    def control(self, index: int, y: Sequence[float]) -> ControlTrace:
        if self.scenario.feedback == "exact":
            trace = self.exact_control(index, y)
        else:
            trace = compute_control(ObserverState(*y[5:]), self.coeffs, self.scenario.controller)
        self.delta = trace.delta
        return trace

    def record(self, index: int, y: Sequence[float], trace: ControlTrace) -> list[float]:
        truth = self.truth(index, y, self.delta)
        state, reference = truth.state, truth.reference
        z1, z2, z3, z4 = truth.errors
        D_l, D_psi = truth.disturbances
        estimates = ObserverState(*y[5:])
        z1_meas, z3_meas = self.held_measurement or (z1+self.noise[0], z3+self.noise[1])
        return [
            reference.t, state.X, state.Y, state.psi, state.y_dot, state.psi_dot,
            reference.X_des, reference.Y_des, reference.psi_des, reference.psi_dot_des,
            reference.kappa, truth.road.phi,
            z1, z2, z3, z4,
            *estimates,
            D_l, D_psi,
            z1-estimates.z1_hat, z2-estimates.z2_hat, z3-estimates.z3_hat, z4-estimates.z4_hat,
            D_l-estimates.D_l_hat, D_psi-estimates.D_psi_hat,
            z1_meas, z3_meas,
            trace.nu_h, trace.z3_des, trace.u_d, trace.u, trace.delta_raw, trace.delta,
            float(trace.saturated),
            truth.derivative.a_y, truth.derivative.tires.theta_bar_f,
            truth.derivative.tires.theta_bar_r,
        ]


def run_scenario(scenario: Scenario) -> SimLog:
    """Run a closed-loop simulation over the scenario horizon. Runs that leave
    the validity region of the plant model end early with status "aborted".

    Parameters
    ==========

    scenario : Scenario
        Validated scenario to run"""
    loop = ClosedLoop(scenario)
    poles = closed_loop_poles(loop.coeffs, scenario.controller)
    if np.any(poles.real >= 0):
        warnings.warn(f"Nominal closed loop of {scenario.name} has poles {poles} outside the open left half plane")

    dt = scenario.dt
    steps = scenario.steps
    log_every = scenario.log_every
    control_every = scenario.control_every
    measure_every = scenario.measure_every
    noise = scenario.noise
    noisy = noise.z1_std > 0 or noise.z3_std > 0
    rng = np.random.default_rng(noise.seed)
    rows = np.full((steps//log_every+1, len(LOG_COLUMNS)), np.nan)
    logger.info("Running %s: %d steps of %g s, %s feedback", scenario.name, steps, dt,
        scenario.feedback)

    start = time.perf_counter()
    y = loop.initial_state()
    row = 0
    status, reason, abort_time = "completed", "", None
    for k in range(steps+1):
        t = k*dt
        index = 2*k
        try:
            if noisy and (measure_every is None or k % measure_every == 0):
                loop.noise = (rng.normal(0, noise.z1_std), rng.normal(0, noise.z3_std))
            values = y.tolist()
            if measure_every is not None and k % measure_every == 0:
                loop.held_measurement = loop.measure(index, values)
            if k % control_every == 0:
                trace = loop.control(index, values)
            if k % log_every == 0:
                rows[row] = loop.record(index, values, trace)
                row += 1
            if k == steps:
                break
            y = integrate_step(loop.field, t, y, dt)
            if not np.all(np.isfinite(y)):
                raise FloatingPointError(f"Non-finite state in the step starting at t = {t:g} s")
        except (ValueError, ArithmeticError) as error:
            status, reason, abort_time = "aborted", str(error), t
            logger.warning("%s aborted at t = %g s: %s", scenario.name, t, error)
            break

    data = pd.DataFrame(rows[:row], columns=LOG_COLUMNS)
    data["saturated"] = data["saturated"].astype(bool)
    elapsed = time.perf_counter()-start
    logger.info("Finished %s (%s) in %.2f s", scenario.name, status, elapsed)
    return SimLog(data, status, reason, abort_time, elapsed)
