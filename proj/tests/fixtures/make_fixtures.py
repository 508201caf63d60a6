#!/usr/bin/env python3
# Copyright 2026 The GSC Authors.
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
"""Regenerates the binary test fixtures.

Needs numpy, scikit-image (sample images) and, for the PIQE reference
scores, the `pypiqe` package on PYTHONPATH. Outputs are committed; rerun only
when a fixture must change.
"""

import json
import pathlib
import struct

import numpy as np
from skimage import color, data, transform

HERE = pathlib.Path(__file__).resolve().parent


def gray_u8(img):
    if img.ndim == 3:
        img = color.rgb2gray(img[..., :3])
    img = np.asarray(img, dtype=np.float64)
    if img.max() > 1.0:
        img = img / 255.0
    return np.clip(np.round(img * 255.0), 0, 255).astype(np.uint8)


def resize_u8(img, shape):
    out = transform.resize(img.astype(np.float64) / 255.0, shape,
                           anti_aliasing=True, order=1)
    return np.clip(np.round(out * 255.0), 0, 255).astype(np.uint8)


def write_pgm(path, img):
    h, w = img.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + img.tobytes())


def write_gsct_u8(path, arr):
    header = b"GSCT" + struct.pack("<BBB", 1, 0, arr.ndim)
    header += b"".join(struct.pack("<I", d) for d in arr.shape)
    path.write_bytes(header + np.ascontiguousarray(arr, dtype=np.uint8).tobytes())


def piqe_fixtures():
    out = HERE / "piqe"
    out.mkdir(exist_ok=True)
    sources = {
        "camera": data.camera(),
        "astronaut": data.astronaut(),
        "coins": data.coins(),
        "moon": data.moon(),
        "brick": data.brick(),
    }
    from pypiqe import piqe  # imported late: only this step needs it

    scores = {}
    for name, src in sources.items():
        img = resize_u8(gray_u8(src), (256, 256))
        write_pgm(out / f"{name}.pgm", img)
        scores[name] = float(piqe(img)[0])
    (out / "reference_scores.json").write_text(json.dumps(scores, indent=2) + "\n")


def pan_clip(img, frames, size, step):
    return np.stack([img[f * step // 2:f * step // 2 + size, f * step:f * step + size]
                     for f in range(frames)])


def meeting_fixtures():
    out = HERE / "meeting"
    out.mkdir(exist_ok=True)
    sources = {
        "clip_camera": gray_u8(data.camera()),
        "clip_astronaut": gray_u8(data.astronaut()),
        "clip_chelsea": resize_u8(gray_u8(data.chelsea()), (384, 512)),
    }
    for name, img in sources.items():
        write_gsct_u8(out / f"{name}.gsct", pan_clip(img, 8, 256, 12))


def road_fixtures():
    out = HERE / "road"
    out.mkdir(exist_ok=True)
    items = {
        "road_000": (data.rocket(), {"color": "white", "object": "truck",
                                     "action": "parked", "scene": "roadside"}),
        "road_001": (data.coffee(), {"color": "red", "object": "car",
                                     "action": "turning", "scene": "crossroad"}),
    }
    for name, (img, meta) in items.items():
        write_pgm(out / f"{name}.pgm", resize_u8(gray_u8(img), (64, 96)))
        (out / f"{name}.meta.json").write_text(json.dumps(meta, indent=2) + "\n")


if __name__ == "__main__":
    piqe_fixtures()
    meeting_fixtures()
    road_fixtures()
