"""Orbit serialization: the ORB1 binary column format and CSV export.

ORB1 layout (little-endian): magic "ORB1", u32 ell, u32 r, u32 bits,
u64 n, then n symbol bytes (1..ell), then n+1 points of bits/8 bytes each
as unsigned fixed-point fractions.  bits must be a multiple of 8.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import UsageError
from ..fixedpoint import fp_hex
from .generate import Orbit

MAGIC = b"ORB1"
HEADER = struct.Struct("<4sIIIQ")


def write_orb1(orbit: Orbit, path) -> None:
    if orbit.bits % 8:
        raise UsageError("ORB1 export requires bits to be a multiple of 8")
    width = orbit.bits // 8
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, orbit.ell, orbit.steps.r, orbit.bits, orbit.n))
        fh.write(orbit.omega.tobytes())
        for x in orbit.points:
            fh.write(x.to_bytes(width, "little"))


def read_orb1(path) -> dict:
    """Raw contents of an ORB1 file (header fields, symbols, points)."""
    with open(path, "rb") as fh:
        magic, ell, r, bits, n = HEADER.unpack(fh.read(HEADER.size))
        if magic != MAGIC:
            raise UsageError("not an ORB1 file")
        omega = np.frombuffer(fh.read(n), dtype=np.uint8)
        width = bits // 8
        raw = fh.read(width * (n + 1))
    points = [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(n + 1)]
    return {"ell": ell, "r": r, "bits": bits, "n": n, "omega": omega, "points": points}


def write_orbit_csv(orbit: Orbit, path) -> None:
    """Columns: n, omega, x_hex, N_1..N_ell, b_1..b_r (omega blank at n=0)."""
    counts = orbit.counts()
    bvec = orbit.bvec()
    header = (
        ["n", "omega", "x_hex"]
        + [f"N_{i+1}" for i in range(orbit.ell)]
        + [f"b_{j+1}" for j in range(orbit.steps.r)]
    )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(orbit.n + 1):
            row = [
                str(k),
                str(int(orbit.omega[k - 1])) if k else "",
                fp_hex(orbit.points[k], orbit.bits),
            ]
            row += [str(int(v)) for v in counts[k]]
            row += [str(int(v)) for v in bvec[k]]
            fh.write(",".join(row) + "\n")
