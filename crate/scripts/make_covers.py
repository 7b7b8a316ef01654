"""Regenerate the 512x512 grayscale PGM cover fixtures.

Sources are the sample images bundled with scikit-image and PyWavelets.
Color images are converted with skimage.color.rgb2gray and rounded.
"""
import pathlib

import numpy as np
import pywt.data
from skimage import color, data

ROOT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/data"


def gray(rgb):
    return np.round(color.rgb2gray(rgb) * 255).astype(np.uint8)


def write_pgm(path, img):
    h, w = img.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + img.astype(np.uint8).tobytes())


SETS = {
    "covers": {
        "camera": data.camera,
        "astronaut": lambda: gray(data.astronaut()),
        "ascent": pywt.data.ascent,
    },
    "extended": {
        "moon": data.moon,
        "ihc": lambda: gray(data.immunohistochemistry()),
        "aero": pywt.data.aero,
    },
}

for sub, images in SETS.items():
    for name, load in images.items():
        img = load()
        assert img.shape == (512, 512), (name, img.shape)
        write_pgm(ROOT / sub / f"{name}.pgm", img)
