# Copyright 2026 dbracket contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact checks for derived brackets, Courant algebroids and the necklace
Poisson structure."""

import json
import os
from pathlib import Path

_presets = Path(__file__).with_name("presets")
if _presets.is_dir() and not os.environ.get("DBRACKET_PRESET_DIR"):
    os.environ["DBRACKET_PRESET_DIR"] = str(_presets)

from ._core import (  # noqa: E402
    SpecError,
    UsageError,
    commands,
    global_cohomology,
    mode_cohomology,
    normalize_spec,
    preset_dir,
    preset_names,
    run,
    volume,
)


def report(command, **kwargs):
    """Runs a command and returns (exit_code, parsed JSON report or None)."""
    code, out, err = run(command, format="json", **kwargs)
    return code, (json.loads(out) if out else None)


__all__ = [
    "SpecError",
    "UsageError",
    "commands",
    "global_cohomology",
    "mode_cohomology",
    "normalize_spec",
    "preset_dir",
    "preset_names",
    "report",
    "run",
    "volume",
]
