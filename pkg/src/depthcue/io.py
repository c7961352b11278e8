"""File I/O: PNG (8/16-bit), binary PPM/PGM, and PFM.

Transfer-function convention: 8-bit files are display-referred (sRGB) and
are linearized on load / encoded on save; 16-bit files carry linear data
verbatim, which keeps round trips inside the quantization bound and lets
16-bit PNGs double as depth/data planes. PFM is raw float, no transfer.
"""

from __future__ import annotations

import json
import os
import re

import cv2
import numpy as np

from .errors import FormatError
from .image import require_finite, srgb_decode, srgb_encode

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _read_bytes(path: str) -> bytes:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) == 0:
        raise OSError(f"empty file: {path}")
    return data


def load_image(path: str) -> np.ndarray:
    """Load a PNG or binary PPM/PGM as a linear float64 buffer.

    Returns (H, W) for grayscale input, (H, W, 3) for color. Integer
    samples are mapped onto [0, 1]; 8-bit inputs are sRGB-linearized.
    """
    data = _read_bytes(path)
    if data.startswith(_PNG_MAGIC):
        arr, bits = _decode_png(data, path)
        return _int_to_linear(arr, bits)
    if data[:2] in (b"P5", b"P6"):
        arr, maxval = _parse_pnm(data, path)
        return _int_to_linear(arr, 16 if maxval > 255 else 8, maxval)
    if data[:2] in (b"Pf", b"PF"):
        raise FormatError(f"PFM is a depth/data format, not an image input: {path}")
    name = data[:2].decode("latin-1", errors="replace")
    raise FormatError(f"unsupported image format (magic {name!r}): {path}")


def _decode_png(data: bytes, path: str) -> tuple[np.ndarray, int]:
    arr = cv2.imdecode(np.frombuffer(data, np.uint8), cv2.IMREAD_UNCHANGED)
    if arr is None:
        raise OSError(f"failed to decode PNG: {path}")
    if arr.ndim == 3:
        if arr.shape[2] == 4:
            arr = arr[:, :, :3]
        arr = arr[:, :, ::-1]  # BGR -> RGB
    bits = 16 if arr.dtype == np.uint16 else 8
    return arr.astype(np.float64), bits


def _int_to_linear(arr: np.ndarray, bits: int, maxval: int | None = None) -> np.ndarray:
    if maxval is None:
        maxval = 65535 if bits == 16 else 255
    scaled = arr / float(maxval)
    if bits == 8:
        scaled = srgb_decode(scaled)
    return scaled


def save_image(img: np.ndarray, path: str, bit_depth: int = 8) -> None:
    """Clamp to [0, 1] and write a PNG (8-bit sRGB-encoded or 16-bit linear)."""
    if bit_depth not in (8, 16):
        raise ValueError("bit_depth must be 8 or 16")
    require_finite(img)
    clipped = np.clip(img, 0.0, 1.0)
    if bit_depth == 8:
        encoded = srgb_encode(clipped)
        out = np.rint(encoded * 255.0).astype(np.uint8)
    else:
        out = np.rint(clipped * 65535.0).astype(np.uint16)
    if out.ndim == 3:
        out = out[:, :, ::-1]  # RGB -> BGR for the encoder
    ok, buf = cv2.imencode(".png", out)
    if not ok:
        raise OSError(f"PNG encoding failed for {path}")
    with open(path, "wb") as fh:
        fh.write(buf.tobytes())


def save_rgba(color: np.ndarray, alpha: np.ndarray, path: str) -> None:
    """Write an 8-bit straight-alpha RGBA PNG (color sRGB-encoded, alpha linear)."""
    rgb = np.rint(srgb_encode(np.clip(color, 0.0, 1.0)) * 255.0).astype(np.uint8)
    a = np.rint(np.clip(alpha, 0.0, 1.0) * 255.0).astype(np.uint8)
    bgra = np.dstack([rgb[:, :, ::-1], a])
    ok, buf = cv2.imencode(".png", bgra)
    if not ok:
        raise OSError(f"PNG encoding failed for {path}")
    with open(path, "wb") as fh:
        fh.write(buf.tobytes())


def load_rgba(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read an 8-bit RGBA PNG back into (linear color, alpha)."""
    data = _read_bytes(path)
    arr = cv2.imdecode(np.frombuffer(data, np.uint8), cv2.IMREAD_UNCHANGED)
    if arr is None:
        raise OSError(f"failed to decode PNG: {path}")
    if arr.ndim != 3 or arr.shape[2] != 4:
        raise FormatError(f"expected an RGBA PNG: {path}")
    rgba = arr[:, :, [2, 1, 0, 3]].astype(np.float64) / 255.0
    return srgb_decode(rgba[:, :, :3]), rgba[:, :, 3]


def load_raw(path: str) -> np.ndarray:
    """Load a PFM or PNG as raw sample values without any transfer function.

    PFM floats are returned as stored; PNG integers are scaled to [0, 1].
    Used for depth/disparity ingestion.
    """
    data = _read_bytes(path)
    if data[:2] in (b"Pf", b"PF"):
        return _parse_pfm(data, path)
    if data.startswith(_PNG_MAGIC):
        arr, bits = _decode_png(data, path)
        return arr / (65535.0 if bits == 16 else 255.0)
    if data[:2] in (b"P5", b"P6"):
        arr, maxval = _parse_pnm(data, path)
        return arr / float(maxval)
    name = data[:2].decode("latin-1", errors="replace")
    raise FormatError(f"unsupported depth format (magic {name!r}): {path}")


# --- PNM (binary PGM/PPM) ---

def _parse_pnm(data: bytes, path: str) -> tuple[np.ndarray, int]:
    channels = 3 if data[:2] == b"P6" else 1
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise OSError(f"truncated PNM header: {path}")
        fields.append(int(data[start:pos]))
    pos += 1  # single whitespace after maxval
    width, height, maxval = fields
    if maxval <= 0 or maxval > 65535:
        raise FormatError(f"PNM maxval {maxval} out of range: {path}")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    count = width * height * channels
    raw = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    if raw.size < count:
        raise OSError(f"truncated PNM payload: {path}")
    arr = raw.astype(np.float64).reshape(height, width, channels)
    if channels == 1:
        arr = arr[:, :, 0]
    return arr, maxval


def save_pnm(img: np.ndarray, path: str, maxval: int = 255) -> None:
    """Write a binary PGM (single plane) or PPM (color) of raw scaled samples."""
    if maxval not in (255, 65535):
        raise ValueError("maxval must be 255 or 65535")
    clipped = np.clip(img, 0.0, 1.0)
    quant = np.rint(clipped * maxval)
    quant = quant.astype(">u2" if maxval > 255 else "u1")
    if img.ndim == 2:
        header = f"P5\n{img.shape[1]} {img.shape[0]}\n{maxval}\n"
    else:
        header = f"P6\n{img.shape[1]} {img.shape[0]}\n{maxval}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(quant.tobytes())


# --- PFM ---

def _parse_pfm(data: bytes, path: str) -> np.ndarray:
    header = data[:2]
    channels = 3 if header == b"PF" else 1
    m = re.match(
        rb"P[fF]\s+(\d+)\s+(\d+)\s+([-+0-9.eE]+)\s", data, flags=re.DOTALL
    )
    if m is None:
        raise OSError(f"malformed PFM header: {path}")
    width, height = int(m.group(1)), int(m.group(2))
    scale = float(m.group(3))
    endian = "<" if scale < 0 else ">"
    offset = m.end()
    count = width * height * channels
    raw = np.frombuffer(data, dtype=f"{endian}f4", count=count, offset=offset)
    if raw.size < count:
        raise OSError(f"truncated PFM payload: {path}")
    arr = raw.astype(np.float64).reshape(height, width, channels)
    arr = arr[::-1]  # PFM rows are stored bottom-to-top
    if channels == 1:
        arr = arr[:, :, 0]
    return np.ascontiguousarray(arr)


def save_pfm(img: np.ndarray, path: str) -> None:
    """Write a little-endian PFM (single plane or 3-channel)."""
    arr = np.asarray(img, dtype=np.float32)
    if arr.ndim == 2:
        header = f"Pf\n{arr.shape[1]} {arr.shape[0]}\n-1.0\n"
        payload = arr[::-1]
    elif arr.ndim == 3 and arr.shape[2] == 3:
        header = f"PF\n{arr.shape[1]} {arr.shape[0]}\n-1.0\n"
        payload = arr[::-1]
    else:
        raise FormatError("PFM supports (H, W) or (H, W, 3) data")
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(payload.astype("<f4").tobytes())


def write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")


def read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
