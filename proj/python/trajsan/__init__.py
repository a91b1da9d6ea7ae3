# Copyright 2026 The trajsan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Trajectory sanitization under local differential privacy."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import TrajsanError, __version__
from ._core import sanitize as _sanitize


def sanitize(checkins, sensitive, **kwargs):
    """Run the full pipeline and return (sanitized Dataset, report dict)."""
    dataset, report = _sanitize(checkins, sensitive, **kwargs)
    return dataset, _json.loads(report)


__all__ = ["sanitize", "TrajsanError", "__version__"]
