"""Regenerate the bundled 128x128 test scene (image + instance mask).

Usage: python tools/make_fixture.py tests/data
"""

import sys
from pathlib import Path

import numpy as np
from PIL import Image


def build(size: int = 128, seed: int = 7):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)

    # Sky gradient over a textured ground plane.
    img = np.zeros((size, size, 3))
    sky = yy < 80
    img[..., 0] = np.where(sky, 0.45 + 0.3 * yy / 80, 0.35 + 0.1 * np.sin(xx / 5.0))
    img[..., 1] = np.where(sky, 0.65 + 0.2 * yy / 80, 0.45 + 0.05 * np.cos(yy / 3.0))
    img[..., 2] = np.where(sky, 0.95 - 0.1 * yy / 80, 0.25)

    mask = np.zeros((size, size), dtype=np.uint8)

    # Instance 1: a rounded body with a cabin, roughly car shaped.
    body = ((xx - 58) / 34) ** 2 + ((yy - 84) / 14) ** 2 <= 1.0
    cabin = (np.abs(xx - 58) <= 16) & (yy >= 62) & (yy <= 78)
    car = body | cabin
    mask[car] = 1
    img[car] = np.stack([0.75 + 0.15 * np.sin(xx[car] / 4.0), 0.2 + 0.1 * np.cos(yy[car] / 6.0),
                         0.2 + 0.05 * (xx[car] % 7) / 7], axis=-1)

    # Instance 2: a disc in the sky.
    sun = (xx - 102) ** 2 + (yy - 26) ** 2 <= 13 ** 2
    mask[sun] = 2
    img[sun] = np.array([0.98, 0.85, 0.35])

    img += rng.normal(0.0, 0.02, img.shape)
    img = np.clip(np.rint(np.clip(img, 0.0, 1.0) * 255.0), 0, 255).astype(np.uint8)
    return img, mask


def main() -> None:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
    out.mkdir(parents=True, exist_ok=True)
    img, mask = build()
    Image.fromarray(img, mode="RGB").save(out / "scene.png")
    Image.fromarray(mask, mode="L").save(out / "scene_mask.png")


if __name__ == "__main__":
    main()
