#!/usr/bin/env python3
"""One-time oracle data generation via mpmath.

Produces the bundled data files consumed by the Rust crates and tests:
  crates/li-lab/data/zeros-first100.txt      first 100 zeta zero ordinates, 30 decimals
  crates/li-lab/data/zeros-first100.json     table metadata with sha256
  crates/li-lab/data/stieltjes-512.txt       Stieltjes constants gamma_0..gamma_512, 550 digits
  tools/ref-zeros-sparse.txt                 spot-check ordinates for the bulk zero generator

mpmath's zetazero/stieltjes are independent of the Rust implementation,
which is the point: these files act as external oracles.
"""

import hashlib
import json
import multiprocessing as mp
import os
import sys
import time

import mpmath

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "crates", "li-lab", "data")

STIELTJES_MAX = 512
STIELTJES_DPS = 550


def gen_first100():
    mpmath.mp.dps = 40
    lines = ["# first 100 nontrivial zeta zero ordinates (mpmath.zetazero, 30 decimals)"]
    ts = []
    for k in range(1, 101):
        t = mpmath.zetazero(k).imag
        ts.append(t)
        lines.append(mpmath.nstr(t, 36, strip_zeros=False))
    # fixed 30 decimal places
    body_lines = []
    for t in ts:
        s = mpmath.nstr(t, 40, strip_zeros=False)
        ip, fp = s.split(".")
        body_lines.append(ip + "." + (fp + "0" * 30)[:30])
    content = lines[0] + "\n" + "\n".join(body_lines) + "\n"
    path = os.path.join(DATA, "zeros-first100.txt")
    with open(path, "w") as f:
        f.write(content)
    digest = hashlib.sha256(content.encode()).hexdigest()
    meta = {
        "source": "mpmath 1.3.0 zetazero (Riemann-Siegel root finder)",
        "digits": 30,
        "count": 100,
        "T": float(ts[-1]),
        "checksum_sha256": digest,
    }
    with open(os.path.join(DATA, "zeros-first100.json"), "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
    print("first100 done, T =", ts[-1])


def gen_sparse_refs():
    out = ["# k<TAB>ordinate  spot references for bulk generator validation"]
    for k, dps in [(1, 20), (2, 20), (100, 20), (1000, 20), (5000, 18),
                   (10000, 18), (25000, 16), (50000, 16), (75000, 16),
                   (99999, 16), (100000, 16)]:
        mpmath.mp.dps = dps + 10
        t0 = time.time()
        t = mpmath.zetazero(k).imag
        print(f"zetazero({k}) took {time.time()-t0:.1f}s")
        out.append(f"{k}\t{mpmath.nstr(t, dps)}")
    with open(os.path.join(ROOT, "tools", "ref-zeros-sparse.txt"), "w") as f:
        f.write("\n".join(out) + "\n")
    print("sparse refs done")


def _stieltjes_one(m):
    mpmath.mp.dps = STIELTJES_DPS
    t0 = time.time()
    g = mpmath.stieltjes(m)
    return m, mpmath.nstr(g, STIELTJES_DPS, strip_zeros=False), time.time() - t0


def gen_stieltjes():
    path = os.path.join(DATA, "stieltjes-512.txt")
    results = {}
    with mp.Pool(2) as pool:
        for m, s, dt in pool.imap_unordered(_stieltjes_one, range(STIELTJES_MAX + 1)):
            results[m] = s
            if m % 25 == 0:
                print(f"stieltjes({m}) done in {dt:.1f}s ({len(results)}/{STIELTJES_MAX+1})",
                      flush=True)
    lines = [f"# Stieltjes constants gamma_0..gamma_{STIELTJES_MAX} "
             f"(mpmath.stieltjes, {STIELTJES_DPS} significant digits)"]
    for m in range(STIELTJES_MAX + 1):
        lines.append(results[m])
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("stieltjes table done")


if __name__ == "__main__":
    os.makedirs(DATA, exist_ok=True)
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("all", "zeros"):
        gen_first100()
        gen_sparse_refs()
    if which in ("all", "stieltjes"):
        gen_stieltjes()
