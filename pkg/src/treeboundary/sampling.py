"""Monte Carlo sampling of the boundary measure and statistical cross-checks.

Sampling follows the exact conditional law of the measure: the first
letter is uniform over the degree many letters, every following letter
uniform over the branching many letters that keep the word reduced.

Randomness comes from counter-based Philox streams (numpy).  Samples are
generated in fixed-size blocks and block b always uses the key
``(seed, b)``, so a batch is a pure function of (presentation, depth,
count, seed) no matter how blocks are scheduled.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Mapping

import numpy as np

from .action import act_cylinder
from .cylinders import Cylinder, CylinderUnion
from .words import Presentation, Word, sphere

BLOCK = 1 << 16

# 0.999 quantiles of the chi-square distribution by degrees of freedom
CHI2_Q999 = {
    1: 10.8276, 2: 13.8155, 3: 16.2662, 4: 18.4668, 5: 20.5150, 6: 22.4577,
    7: 24.3219, 8: 26.1245, 9: 27.8772, 10: 29.5883, 11: 31.2641, 12: 32.9095,
}


@dataclass(frozen=True)
class SampleBatch:
    """Depth-d truncations of boundary words drawn under the exact measure."""

    presentation: Presentation
    depth: int
    count: int
    seed: int
    counts: Mapping[Word, int]

    def frequency(self, region: CylinderUnion | Cylinder) -> Fraction:
        if isinstance(region, Cylinder):
            region = CylinderUnion(self.presentation, (region,))
        hits = sum(c for w, c in self.counts.items() if region.covers_word(w))
        return Fraction(hits, self.count)

    def cell_counts(self, m: int) -> dict[Word, int]:
        """Counts aggregated over the depth-m prefix (m <= batch depth)."""
        if m > self.depth:
            raise ValueError("aggregation depth exceeds batch depth")
        out: dict[Word, int] = {}
        for w, c in self.counts.items():
            key = w.prefix(m)
            out[key] = out.get(key, 0) + c
        return out

    def write_csv(self, fp: IO[str]) -> None:
        for w in sorted(self.counts, key=lambda w: (len(w), w.codes)):
            line = str(w) + "\n"
            for _ in range(self.counts[w]):
                fp.write(line)

    def summary_json(self) -> dict:
        freq = {
            str(w): [self.counts[w], str(Fraction(self.counts[w], self.count))]
            for w in sorted(self.counts, key=lambda w: (len(w), w.codes))
        }
        return {
            "s": self.presentation.s,
            "t": self.presentation.t,
            "depth": self.depth,
            "count": self.count,
            "seed": self.seed,
            "frequencies": freq,
        }


def _successor_table(p: Presentation) -> np.ndarray:
    rows = []
    for u in range(p.degree):
        rows.append([v for v in range(p.degree) if v != p.inverse_code(u)])
    return np.asarray(rows, dtype=np.int64)


def sample(p: Presentation, depth: int, count: int, seed: int) -> SampleBatch:
    """Draw ``count`` independent depth-``depth`` truncations under the measure."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if count < 1:
        raise ValueError("count must be at least 1")
    succ = _successor_table(p)
    degree, n = p.degree, p.branching
    totals: dict[tuple[int, ...], int] = {}
    for block_index in range(0, (count + BLOCK - 1) // BLOCK):
        lo = block_index * BLOCK
        size = min(BLOCK, count - lo)
        key = np.array([np.uint64(seed & (2**64 - 1)), np.uint64(block_index)])
        rng = np.random.Generator(np.random.Philox(key=key))
        codes = np.empty((size, depth), dtype=np.int64)
        codes[:, 0] = rng.integers(0, degree, size=size)
        for col in range(1, depth):
            draws = rng.integers(0, n, size=size)
            codes[:, col] = succ[codes[:, col - 1], draws]
        ids = np.zeros(size, dtype=np.int64)
        for col in range(depth):
            ids = ids * degree + codes[:, col]
        uniq, cnt = np.unique(ids, return_counts=True)
        for wid, c in zip(uniq.tolist(), cnt.tolist()):
            letters = []
            for _ in range(depth):
                wid, r = divmod(wid, degree)
                letters.append(r)
            key_t = tuple(reversed(letters))
            totals[key_t] = totals.get(key_t, 0) + c
    words = {Word(p, codes_t): c for codes_t, c in totals.items()}
    return SampleBatch(p, depth, count, seed, words)


@dataclass(frozen=True)
class EmpiricalRN:
    """Empirical versus exact scaling of one element on one cell."""

    cell: Cylinder
    estimate: Fraction | None
    exact: Fraction
    sigma: float

    @property
    def within(self) -> float | None:
        """Deviation from exact in sigma units, None for an empty cell."""
        if self.estimate is None:
            return None
        if self.sigma == 0:
            return 0.0 if self.estimate == self.exact else math.inf
        return abs(float(self.estimate) - float(self.exact)) / self.sigma


def empirical_rn(g: Word, batch: SampleBatch, cell_depth: int = 1) -> list[EmpiricalRN]:
    """Empirical mass ratio of g.cell against cell, with a delta-method sigma.

    The exact ratio equals measure(g.cell)/measure(cell); for cells on
    which the scaling is constant this is the table value.  The sigma
    accounts for the correlation of the two empirical masses.
    """
    p = batch.presentation
    if batch.depth <= len(g) + cell_depth:
        raise ValueError("batch depth must exceed element length plus cell depth")
    out = []
    base_cells = [Cylinder(w) for w in sphere(p, cell_depth)]
    for cell in base_cells:
        cell_union = CylinderUnion(p, (cell,))
        moved = act_cylinder(g, cell)
        p2 = cell.measure
        p1 = moved.measure
        p12 = (moved & cell_union).measure
        m2 = batch.frequency(cell_union)
        m1 = batch.frequency(moved)
        exact = p1 / p2
        if m2 == 0:
            warnings.warn(f"empty cell {cell} in batch; ratio undefined")
            out.append(EmpiricalRN(cell, None, exact, math.nan))
            continue
        N = batch.count
        var1 = float(p1) * (1 - float(p1)) / N
        var2 = float(p2) * (1 - float(p2)) / N
        cov = (float(p12) - float(p1) * float(p2)) / N
        ratio = float(p1) / float(p2)
        var_ratio = (var1 - 2 * ratio * cov + ratio * ratio * var2) / float(p2) ** 2
        sigma = math.sqrt(max(var_ratio, 0.0))
        out.append(EmpiricalRN(cell, m1 / m2, exact, sigma))
    return out


def frequency_sigma(exact: Fraction, count: int) -> float:
    """Standard deviation of an empirical frequency with true mass ``exact``."""
    q = float(exact)
    return math.sqrt(q * (1 - q) / count)


def chi_square(batch: SampleBatch, m: int) -> tuple[float, int, float]:
    """Chi-square statistic of depth-m cell counts against the exact law.

    Returns (statistic, degrees of freedom, 0.999 threshold).
    """
    p = batch.presentation
    observed = batch.cell_counts(m)
    stat = 0.0
    cells = sphere(p, m)
    for w in cells:
        expected = float(Cylinder(w).measure) * batch.count
        obs = observed.get(w, 0)
        stat += (obs - expected) ** 2 / expected
    dof = len(cells) - 1
    if dof not in CHI2_Q999:
        raise ValueError(f"no 0.999 quantile tabulated for {dof} degrees of freedom")
    return stat, dof, CHI2_Q999[dof]
