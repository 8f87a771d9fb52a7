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


from collections.abc import Iterable
from dataclasses import asdict, dataclass, field
from math import isfinite
from typing import ClassVar

import numpy as np

from lateraltools.unit import NumericArray


def _check_duration(duration: float) -> None:
    if not (isfinite(duration) and duration > 0):
        raise ValueError(f"Segment duration must be positive and finite, got {duration}")


@dataclass(frozen=True, slots=True)
class Constant:
    kind: ClassVar[str] = "constant"
    duration: float
    value: float

    def __post_init__(self):
        _check_duration(self.duration)

    def evaluate(self, tau: np.ndarray) -> np.ndarray:
        return np.full_like(tau, self.value)

    def derivative(self, tau: np.ndarray) -> np.ndarray:
        return np.zeros_like(tau)

    def integral(self, tau: np.ndarray) -> np.ndarray:
        return self.value*tau

    def max_abs(self) -> float:
        return abs(self.value)


@dataclass(frozen=True, slots=True)
class Ramp:
    """Linear change from start to end over the segment duration"""
    kind: ClassVar[str] = "ramp"
    duration: float
    start: float
    end: float

    def __post_init__(self):
        _check_duration(self.duration)

    def evaluate(self, tau: np.ndarray) -> np.ndarray:
        return self.start+(self.end-self.start)*tau/self.duration

    def derivative(self, tau: np.ndarray) -> np.ndarray:
        return np.full_like(tau, (self.end-self.start)/self.duration)

    def integral(self, tau: np.ndarray) -> np.ndarray:
        return self.start*tau+(self.end-self.start)*tau**2/(2*self.duration)

    def max_abs(self) -> float:
        return max(abs(self.start), abs(self.end))


@dataclass(frozen=True, slots=True)
class Sinusoid:
    """bias + amplitude*sin(2*pi*tau/period + phase)"""
    kind: ClassVar[str] = "sinusoid"
    duration: float
    amplitude: float
    period: float
    bias: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        _check_duration(self.duration)
        if not (isfinite(self.period) and self.period > 0):
            raise ValueError(f"Sinusoid period must be positive and finite, got {self.period}")

    def evaluate(self, tau: np.ndarray) -> np.ndarray:
        return self.bias+self.amplitude*np.sin(2*np.pi*tau/self.period+self.phase)

    def derivative(self, tau: np.ndarray) -> np.ndarray:
        omega = 2*np.pi/self.period
        return self.amplitude*omega*np.cos(omega*tau+self.phase)

    def integral(self, tau: np.ndarray) -> np.ndarray:
        omega = 2*np.pi/self.period
        return (self.bias*tau
            +self.amplitude/omega*(np.cos(self.phase)-np.cos(omega*tau+self.phase)))

    def max_abs(self) -> float:
        # bound, reached only when the segment covers a crest
        return abs(self.bias)+abs(self.amplitude)


type Segment = Constant | Ramp | Sinusoid

segment_types = {segment.kind: segment for segment in (Constant, Ramp, Sinusoid)}


@dataclass(frozen=True)
class Profile:
    """Piecewise function of time built from consecutive segments starting at
    t = 0. Values, rates and running integrals are analytic per segment and
    evaluate element-wise on arrays. A time on a segment boundary belongs to
    the later segment."""
    segments: tuple[Segment, ...]
    _starts: np.ndarray = field(init=False, repr=False, compare=False)
    _offsets: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        segments = tuple(self.segments)
        if not segments:
            raise ValueError("A profile needs at least one segment")
        object.__setattr__(self, "segments", segments)
        durations = np.array([segment.duration for segment in segments])
        starts = np.concatenate(([0.0], np.cumsum(durations)[:-1]))
        areas = [float(segment.integral(np.array(segment.duration))) for segment in segments]
        offsets = np.concatenate(([0.0], np.cumsum(areas)[:-1]))
        object.__setattr__(self, "_starts", starts)
        object.__setattr__(self, "_offsets", offsets)

    @classmethod
    def constant(cls, value: float, duration: float) -> "Profile":
        return cls((Constant(duration, value),))

    @property
    def horizon(self) -> float:
        return float(self._starts[-1]+self.segments[-1].duration)

    def max_abs(self) -> float:
        return max(segment.max_abs() for segment in self.segments)

    def _locate(self, t: NumericArray) -> tuple[np.ndarray, np.ndarray]:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tolerance = 1e-9*max(1.0, self.horizon)
        if np.any(t < -tolerance) or np.any(t > self.horizon+tolerance):
            raise ValueError(
                f"Time outside the profile horizon [0, {self.horizon:g}] s: "
                f"[{t.min():g}, {t.max():g}]")
        index = np.clip(np.searchsorted(self._starts, t, side="right")-1, 0, len(self.segments)-1)
        return index, t-self._starts[index]

    def _evaluate(self, t: NumericArray, method: str, offsets: bool = False) -> NumericArray:
        index, tau = self._locate(t)
        result = self._offsets[index] if offsets else np.zeros_like(tau)
        for i, segment in enumerate(self.segments):
            mask = index == i
            if np.any(mask):
                result[mask] += getattr(segment, method)(tau[mask])
        if np.ndim(t) == 0:
            return float(result[0])
        return result

    def value(self, t: NumericArray) -> NumericArray:
        """Profile value at time t

        Parameters
        ==========

        t : NumericArray
            Time or array of times in s"""
        return self._evaluate(t, "evaluate")

    def rate(self, t: NumericArray) -> NumericArray:
        """Time derivative of the profile at time t

        Parameters
        ==========

        t : NumericArray
            Time or array of times in s"""
        return self._evaluate(t, "derivative")

    def integral(self, t: NumericArray) -> NumericArray:
        """Integral of the profile from 0 to t

        Parameters
        ==========

        t : NumericArray
            Time or array of times in s"""
        return self._evaluate(t, "integral", offsets=True)

    def to_records(self) -> list[dict[str, any]]:
        return [{"kind": segment.kind, **asdict(segment)} for segment in self.segments]

    @classmethod
    def from_records(cls, records: Iterable[dict[str, any]]) -> "Profile":
        """Create a Profile from segment mappings holding a "kind" key and the
        segment fields as plain numbers

        Parameters
        ==========

        records : Iterable[dict[str, any]]
            Segment mappings in time order"""
        segments = []
        for record in records:
            record = dict(record)
            kind = record.pop("kind", "constant")
            if kind not in segment_types:
                raise ValueError(f"Unrecognized segment kind: {kind}")
            try:
                segments.append(segment_types[kind](**record))
            except TypeError as error:
                raise ValueError(f"Invalid {kind} segment {record}: {error}")
        return cls(tuple(segments))
