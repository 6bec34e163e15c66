#    Copyright 2024 The pypathwise developers

#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at

#        http://www.apache.org/licenses/LICENSE-2.0

#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

from .config import RunConfig, load_config, validate_config
from .drift_fields import (
    DriftField,
    FieldCatalog,
    ScalarField,
    StepProfile,
    as_drift,
    catalog,
    difference_field,
)
from .dyadic_path import DyadicIndex, DyadicPath, generate, refine, rescale_window
from .estimators import (
    EstimateSummary,
    MonteCarloEstimator,
    constant_sweep,
    dyadic_modulus_sweep,
    l2_functional_bound,
    moment_bound,
    path_sanity,
    tail_bound,
)
from .kernel_lab import (
    HeatKernel,
    WordEnumerator,
    allowed_words,
    kernel_eval,
    kernel_l1_mass,
    second_moment_oracle,
)
from .occupation import OccupationCalculator, euler_chain, rho, rho_window, sigma
from .report import ReportGenerator
from .solver import (
    ConvergenceAnalyzer,
    EulerSolver,
    Partition,
    PicardIterator,
    convergence_study,
    euler,
    euler_interpolant,
    girsanov_transform,
    partition_factory,
    partition_independence,
    picard_uniqueness,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceAnalyzer",
    "DriftField",
    "DyadicIndex",
    "DyadicPath",
    "EstimateSummary",
    "EulerSolver",
    "FieldCatalog",
    "HeatKernel",
    "MonteCarloEstimator",
    "OccupationCalculator",
    "Partition",
    "PicardIterator",
    "ReportGenerator",
    "RunConfig",
    "ScalarField",
    "StepProfile",
    "WordEnumerator",
    "allowed_words",
    "as_drift",
    "catalog",
    "constant_sweep",
    "convergence_study",
    "difference_field",
    "dyadic_modulus_sweep",
    "euler",
    "euler_chain",
    "euler_interpolant",
    "generate",
    "girsanov_transform",
    "kernel_eval",
    "kernel_l1_mass",
    "l2_functional_bound",
    "load_config",
    "moment_bound",
    "partition_factory",
    "partition_independence",
    "path_sanity",
    "picard_uniqueness",
    "refine",
    "rescale_window",
    "rho",
    "rho_window",
    "second_moment_oracle",
    "sigma",
    "tail_bound",
    "validate_config",
]
