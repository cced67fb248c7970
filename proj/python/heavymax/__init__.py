# Copyright 2026 The heavymax Authors
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

"""Partial maxima of heavy-tailed multivariate linear processes."""

from ._core import (
    Config,
    ConfigError,
    MetricResult,
    ParseError,
    StepPath,
    d_m1_monotone,
    d_m2,
    d_p,
    d_uniform,
    emit_experiment,
    limit_cdf,
    m_triple,
    oscillation,
    run_experiment,
    running_max,
    sample_limit_path,
    simulate,
)

__all__ = [
    "Config",
    "ConfigError",
    "MetricResult",
    "ParseError",
    "StepPath",
    "d_m1_monotone",
    "d_m2",
    "d_p",
    "d_uniform",
    "emit_experiment",
    "limit_cdf",
    "m_triple",
    "oscillation",
    "run_experiment",
    "running_max",
    "sample_limit_path",
    "simulate",
]
