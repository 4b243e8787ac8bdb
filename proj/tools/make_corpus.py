#!/usr/bin/env python3
"""Build the 512x512 grayscale PGM test corpus from scikit-image's bundled samples.

Usage: python3 tools/make_corpus.py [outdir]   (default: tests/data/corpus)

Images are converted to 8-bit luma, center-cropped to a square and resampled
to 512x512 with a Lanczos filter. The committed PGMs are the reference; this
script documents how they were produced.
"""
import os
import sys

import numpy as np
from PIL import Image
from skimage import data

SOURCES = [
    "camera", "moon", "astronaut", "coffee", "chelsea",
    "rocket", "hubble_deep_field", "stereo_motorcycle", "retina", "coins",
]


def to_gray512(arr):
    img = Image.fromarray(np.asarray(arr))
    img = img.convert("L")
    w, h = img.size
    side = min(w, h)
    left, top = (w - side) // 2, (h - side) // 2
    img = img.crop((left, top, left + side, top + side))
    if side != 512:
        img = img.resize((512, 512), Image.LANCZOS)
    return img


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join("tests", "data", "corpus")
    os.makedirs(out, exist_ok=True)
    for name in SOURCES:
        arr = getattr(data, name)()
        if isinstance(arr, tuple):
            arr = arr[0]
        to_gray512(arr).save(os.path.join(out, name + ".pgm"))
        print(name)


if __name__ == "__main__":
    main()
