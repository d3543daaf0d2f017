# Copyright 2026 The Authors.
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

"""District-fair participatory budgeting solvers.

Thin wrapper around the compiled `_dfpb` extension.  All exact values
(budget shares, probabilities, covers) cross the boundary as canonical
``"p/q"`` strings; use :class:`fractions.Fraction` to compute with them.
"""

try:
    # Wheel layout: the extension is installed inside this package.
    from ._dfpb import *  # noqa: F401,F403
    from ._dfpb import __doc__ as _doc  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    # Build-tree layout: the extension sits on PYTHONPATH next to us.
    from _dfpb import *  # noqa: F401,F403

__version__ = "0.1.0"
