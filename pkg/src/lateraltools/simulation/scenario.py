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


from dataclasses import dataclass, field
from math import ceil, isfinite, pi, radians
from typing import NamedTuple

from lateraltools.control import (ControllerParams, nominal_coefficients, NominalCoefficients,
    ObserverGains, ObserverState, UncertaintySpec)
from lateraltools.path import Profile
from lateraltools.vehicle import V_MIN, VehicleParams


FEEDBACK_MODES = ("estimated", "exact")


class InitialConditions(NamedTuple):
    """Initial tracking errors and lateral velocity of the plant, and the
    initial observer state"""
    z1: float = 0.0
    z3: float = 0.0
    z4: float = 0.0
    y_dot: float = 0.0
    observer: ObserverState = ObserverState()


class NoiseConfig(NamedTuple):
    """Standard deviations of additive Gaussian noise on the measured z1 and
    z3 channels"""
    z1_std: float = 0.0
    z3_std: float = 0.0
    seed: int = 0


class Check(NamedTuple):
    metric: str
    min: float | None = None
    max: float | None = None


def default_step(observer: ObserverGains, controller: ControllerParams) -> float:
    """Largest step that resolves the observer time scale and keeps the
    sampled control loop stable: min(epsilon/5, 1/k4, 1/(tau*eta2))

    Parameters
    ==========

    observer : ObserverGains
        Observer gains

    controller : ControllerParams
        Controller parameters"""
    return min(
        observer.epsilon/5,
        1/controller.k4,
        1/(controller.tau*controller.eta2))

def fit_step(step: float, horizon: float) -> float:
    """Largest step not above the given one that divides the horizon

    Parameters
    ==========

    step : float
        Upper bound on the step

    horizon : float
        Simulation horizon"""
    return horizon/ceil(horizon/step*(1-1e-12))

def steps_per(period: float, dt: float, name: str) -> int:
    """Number of steps in a period that must be a whole multiple of the step

    Parameters
    ==========

    period : float
        Period in s

    dt : float
        Simulation step in s

    name : str
        Name of the period for error messages"""
    steps = round(period/dt)
    if steps < 1 or abs(steps*dt-period) > 1e-9*period:
        raise ValueError(f"{name} period ({period:g} s) must be a whole multiple of dt ({dt:g} s)")
    return steps


@dataclass(frozen=True)
class Scenario:
    """Validated description of one closed-loop run. vehicle holds the
    nominal parameters the controller and observers are built from, and the
    true plant is uncertainty applied to them. Rates are in Hz with None
    meaning an update at every integration step."""
    v_x: float
    curvature: Profile
    dt: float
    horizon: float
    controller: ControllerParams
    observer: ObserverGains
    name: str = "scenario"
    vehicle: VehicleParams = field(default_factory=VehicleParams)
    uncertainty: UncertaintySpec = field(default_factory=UncertaintySpec)
    banking: Profile | None = None
    beta_x: float = 0.0
    initial: InitialConditions = InitialConditions()
    feedback: str = "estimated"
    control_rate: float | None = None
    measurement_rate: float | None = None
    log_interval: float | None = None
    noise: NoiseConfig = NoiseConfig()
    exact_errors: bool = False
    a_lat_max: float = 2.0
    slip_limit: float = radians(85)
    checks: tuple[Check, ...] = ()

    def __post_init__(self):
        if self.banking is None:
            object.__setattr__(self, "banking", Profile.constant(0.0, self.curvature.horizon))
        if self.log_interval is None:
            object.__setattr__(self, "log_interval", self.dt)
        object.__setattr__(self, "checks", tuple(self.checks))
        self.validate()

    def validate(self) -> None:
        """Check every invariant of the scenario and raise a ValueError naming
        the first one that is violated"""
        if not (isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (isfinite(self.horizon) and self.horizon >= 1):
            raise ValueError(f"horizon must be at least 1 s, got {self.horizon}")
        steps_per(self.horizon, self.dt, "horizon")
        if self.dt > self.observer.epsilon/5*(1+1e-9):
            raise ValueError(
                f"dt ({self.dt:g} s) must not exceed epsilon/5 ({self.observer.epsilon/5:g} s)")
        if not self.v_x >= V_MIN:
            raise ValueError(f"v_x ({self.v_x} m/s) is below v_min = {V_MIN} m/s")
        for name in ("curvature", "banking"):
            profile = getattr(self, name)
            if profile.horizon < self.horizon*(1-1e-9):
                raise ValueError(
                    f"The {name} profile ({profile.horizon:g} s) is shorter than the horizon "
                    f"({self.horizon:g} s)")
        a_lat = self.curvature.max_abs()*self.v_x**2
        if a_lat > self.a_lat_max*(1+1e-12):
            raise ValueError(
                f"Desired lateral acceleration |kappa|*v_x^2 = {a_lat:.4g} m/s^2 exceeds "
                f"a_lat_max = {self.a_lat_max:g} m/s^2")
        if not self.banking.max_abs() < pi/2:
            raise ValueError("Banking angle must satisfy |phi| < pi/2")
        if not self.beta_x > -1:
            raise ValueError(f"beta_x must exceed -1, got {self.beta_x}")
        if self.feedback not in FEEDBACK_MODES:
            raise ValueError(f"feedback must be one of {FEEDBACK_MODES}, got {self.feedback!r}")
        for name in ("control_rate", "measurement_rate"):
            rate = getattr(self, name)
            if rate is not None:
                if not (isfinite(rate) and rate > 0):
                    raise ValueError(f"{name} must be positive, got {rate}")
                steps_per(1/rate, self.dt, name.replace("_rate", ""))
        steps_per(self.log_interval, self.dt, "log")
        period = self.control_period
        if period*self.controller.k4 > 2:
            raise ValueError(
                f"Control period ({period:g} s) times k4 ({self.controller.k4:g}) exceeds 2, "
                f"the sampled yaw loop is unstable")
        if period*self.controller.tau*self.controller.eta2 > 2:
            raise ValueError(
                f"Control period ({period:g} s) times tau*eta2 "
                f"({self.controller.tau*self.controller.eta2:g}) exceeds 2, "
                f"the sampled lateral loop is unstable")
        if self.noise.z1_std < 0 or self.noise.z3_std < 0:
            raise ValueError("Noise standard deviations must be non-negative")
        if not 0 < self.slip_limit < pi/2:
            raise ValueError(f"slip_limit must be in (0, pi/2), got {self.slip_limit}")

    @property
    def steps(self) -> int:
        return round(self.horizon/self.dt)

    @property
    def control_period(self) -> float:
        return self.dt if self.control_rate is None else 1/self.control_rate

    @property
    def control_every(self) -> int:
        return 1 if self.control_rate is None else steps_per(1/self.control_rate, self.dt, "control")

    @property
    def measure_every(self) -> int | None:
        if self.measurement_rate is None:
            return None
        return steps_per(1/self.measurement_rate, self.dt, "measurement")

    @property
    def log_every(self) -> int:
        return steps_per(self.log_interval, self.dt, "log")

    @property
    def plant(self) -> VehicleParams:
        return self.uncertainty.apply(self.vehicle)

    def coefficients(self) -> NominalCoefficients:
        return nominal_coefficients(self.vehicle, self.v_x, return_string=False).value
