"""Minimal PGM image IO: 8-bit grayscale, P2 (ASCII) and P5 (binary)."""

import numpy as np


def read_pgm(path):
    """Read a P2 or P5 PGM file with maxval <= 255 as a uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()

    tokens = []
    pos = 0
    while len(tokens) < 4:
        # Token scanner that skips whitespace and '#' comments.
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ValueError(f"truncated PGM header in {path}")
        tokens.append(data[start:pos])

    magic, width, height, maxval = tokens[0], *(int(t) for t in tokens[1:])
    if maxval < 1 or maxval > 255:
        raise ValueError(f"unsupported PGM maxval {maxval}")
    if magic == b"P5":
        pos += 1  # single whitespace byte separates header from raster
        raster = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    elif magic == b"P2":
        raster = np.array(data[pos:].split()[: width * height], dtype=np.uint8)
    else:
        raise ValueError(f"not a PGM file: magic {magic!r}")
    if raster.size != width * height:
        raise ValueError(f"truncated PGM raster in {path}")
    return raster.reshape(height, width).copy()


def write_pgm(path, image, binary=True):
    """Write a 2-D array of 0..255 values as P5 (binary) or P2 (ASCII)."""
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("image must be 2-D")
    if img.dtype != np.uint8:
        if img.min() < 0 or img.max() > 255:
            raise ValueError("pixel values must lie in 0..255")
        img = np.rint(img).astype(np.uint8)
    height, width = img.shape
    with open(path, "wb") as fh:
        if binary:
            fh.write(f"P5\n{width} {height}\n255\n".encode())
            fh.write(img.tobytes())
        else:
            fh.write(f"P2\n{width} {height}\n255\n".encode())
            lines = (" ".join(str(v) for v in row) for row in img)
            fh.write(("\n".join(lines) + "\n").encode())
