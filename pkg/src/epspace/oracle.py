"""Grid-wide agreement of the two norm engines.

Every vector of a signed grid (entries drawn from a finite set, support in
the window) is evaluated twice:

* exhaustively, as max |L(x)| over every distinct functional of the window,
  with all functionals applied to the whole grid as one integer matrix product;
* by ``norm_bb``, which evaluates x+ and x- separately and returns the larger.
  The grid of sign-definite parts is small, so ``norm_bb`` is called once per
  part and the signed grid is read off that table.

A random sample of signed grid vectors is also run through ``norm_bb`` and
``norm_exhaustive`` directly, tying the table and the matrix to the engines.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .norm import norm_bb, norm_exhaustive, window_measures
from .space import SpaceConfig, SparseVector

MAX_GRID_COORDS = 12


@dataclass
class GridReport:
    vectors: int
    bb_calls: int
    sampled: int
    mismatches: list[SparseVector] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _digits(base: int, width: int) -> np.ndarray:
    """All base-``base`` digit rows of length ``width`` in lexicographic order."""
    idx = np.arange(base**width, dtype=np.int64)
    out = np.empty((idx.size, width), dtype=np.int64)
    for k in range(width - 1, -1, -1):
        out[:, k] = idx % base
        idx //= base
    return out


def grid_equivalence(cfg: SpaceConfig, entries: Sequence, sample: int = 2000, seed: int = 0,
                     split: int = 6, max_report: int = 20) -> GridReport:
    """Compare ``norm_bb`` with the exhaustive maximum on the whole grid ``entries^window``."""
    if not cfg.exact:
        raise ValueError("grid comparison runs in exact mode (integer p)")
    t0 = time.perf_counter()
    coords = list(cfg.window)
    d = len(coords)
    if d > MAX_GRID_COORDS:
        raise ValueError(f"grid limited to {MAX_GRID_COORDS} coordinates, got {d}")
    entries = sorted({Fraction(e) for e in entries})
    E = len(entries)
    levels = sorted({abs(e) for e in entries} | {Fraction(0)})
    L = len(levels)
    vden = lcm(*(e.denominator for e in entries))
    wden = cfg.weight_denominator
    scale = vden * wden

    # norm_bb on every sign-definite part, as integers over `scale`
    table = np.empty(L**d, dtype=np.int64)
    for i, row in enumerate(_digits(L, d)):
        x = SparseVector({c: levels[k] for c, k in zip(coords, row) if k})
        v = norm_bb(x, cfg).value * scale
        if v.denominator != 1:
            raise ArithmeticError("scaled norm is not an integer")
        table[i] = int(v)

    # every distinct functional of the window as an integer row
    rows = []
    for atoms in window_measures(cfg, coords):
        rows.append([int(Fraction(atoms.get(c, 0)) * wden) for c in coords])
    A = np.array(rows, dtype=np.int64)
    ent_int = np.array([int(e * vden) for e in entries], dtype=np.int64)
    pos_lvl = np.array([levels.index(max(e, 0)) for e in entries], dtype=np.int64)
    neg_lvl = np.array([levels.index(max(-e, 0)) for e in entries], dtype=np.int64)

    split = min(split, d)
    head_w = d - split
    base = _digits(E, split)
    # functional-major int32 layout keeps the per-chunk reduction fast
    bound = int(np.abs(A).sum(axis=1).max()) * int(np.abs(ent_int).max())
    if bound >= 2**31:
        raise OverflowError("grid values exceed int32")
    base_prod = np.ascontiguousarray((A[:, head_w:] @ ent_int[base].T).astype(np.int32))
    buf = np.empty_like(base_prod)
    ex = np.empty(base.shape[0], dtype=np.int32)
    lw = L ** np.arange(split - 1, -1, -1, dtype=np.int64)
    hw = L ** np.arange(d - 1, split - 1, -1, dtype=np.int64)
    base_pos = pos_lvl[base] @ lw
    base_neg = neg_lvl[base] @ lw
    mism: list[SparseVector] = []
    total = 0
    heads = _digits(E, head_w) if head_w else np.zeros((1, 0), dtype=np.int64)
    for head in heads:
        shift = (A[:, :head_w] @ ent_int[head]).astype(np.int32)[:, None]
        np.add(base_prod, shift, out=buf)
        np.abs(buf, out=buf)
        buf.max(axis=0, out=ex)
        pid = base_pos + int(pos_lvl[head] @ hw)
        nid = base_neg + int(neg_lvl[head] @ hw)
        bb = np.maximum(table[pid], table[nid])
        bad = np.nonzero(ex != bb)[0]
        total += base.shape[0]
        for b in bad[: max(0, max_report - len(mism))]:
            digs = list(head) + list(base[b])
            mism.append(SparseVector({c: entries[k] for c, k in zip(coords, digs) if entries[k]}))
        if bad.size and len(mism) >= max_report:
            break

    rng = random.Random(f"{seed}:grid")
    for _ in range(sample):
        x = SparseVector({c: rng.choice(entries) for c in coords})
        a, b = norm_exhaustive(x, cfg).value, norm_bb(x, cfg).value
        if a != b:
            mism.append(x)
    return GridReport(total, int(table.size), sample, mism, time.perf_counter() - t0)
