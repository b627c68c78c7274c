# Copyright 2026 The augrl Authors
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

"""Writes tests/data/dotreacher_trace.arlt from a standalone numpy renderer.

The C++ environment is not consulted: dynamics and rasterisation are
re-derived here (full-frame disk test, clamp to the unit square), so the
golden trace is an independent oracle rather than a recording.
"""

import struct
import sys

import numpy as np

SIZE = 84
RADIUS = 5.0
STEP = 0.05
AGENT = (0.2, 0.7)
TARGET = (0.8, 0.25)
# Includes clipped components and moves that hit the border.
ACTIONS = [
    (1.0, -1.0), (0.5, 0.25), (-0.3, 0.9), (2.0, 0.0), (0.0, -3.0),
    (-1.0, -1.0), (0.75, 0.1), (0.0, 0.0), (-0.25, 1.0), (1.0, 1.0),
]


def clamp(v, lo, hi):
    return min(max(v, lo), hi)


def render(agent, target):
    frame = np.zeros((3, SIZE, SIZE), dtype=np.uint8)
    ys, xs = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    for ch, (px, py) in ((0, agent), (1, target)):
        cx, cy = px * (SIZE - 1), py * (SIZE - 1)
        dx, dy = xs - cx, ys - cy
        frame[ch][dx * dx + dy * dy <= RADIUS * RADIUS] = 255
    return frame


def main(out):
    agent = list(AGENT)
    frames = [render(agent, TARGET)]
    for ax, ay in ACTIONS:
        agent[0] = clamp(agent[0] + clamp(ax, -1.0, 1.0) * STEP, 0.0, 1.0)
        agent[1] = clamp(agent[1] + clamp(ay, -1.0, 1.0) * STEP, 0.0, 1.0)
        frames.append(render(agent, TARGET))
    data = np.stack(frames)
    header = b"ARLT" + struct.pack("<5I", 1, *data.shape) + bytes(8)
    with open(out, "wb") as f:
        f.write(header + data.tobytes())


if __name__ == "__main__":
    main(sys.argv[1])
