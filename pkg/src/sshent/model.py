"""Dimerized free-fermion chains with topological defects.

The chain has ``N = 2L`` sites grouped into ``L`` two-site unit cells; cell
``m`` (1-based) occupies sites ``2m-1`` and ``2m``.  Nearest-neighbour hopping
alternates between ``-t(1-delta)`` and ``-t(1+delta)``: bond ``r`` connects
sites ``r`` and ``r+1`` (bond ``N`` wraps to site 1 under periodic boundary
conditions).  For ``delta > 0`` the default alignment puts the strong bond
between cells, so the uniform chain is in its topological phase.

A defect is a point where the weak/strong alternation reverses.  Two physical
kinds are supported, named after their fully dimerized (``|delta| = 1``)
remnant:

* ``one_site``  -- two consecutive weak bonds; a single site decouples at
  full dimerization and hosts the zero mode.
* ``three_site`` -- two consecutive strong bonds; a trimer survives at full
  dimerization, hosting a zero mode plus one state above and one below the
  bands.

Defects are anchored at a cell index and processed left to right; each one
flips the alternation for all later bonds, so under periodic boundary
conditions only an even number of defects is consistent.  The bond at which
the flip starts is chosen so that the *physical* defect kind is preserved no
matter how many reversals precede it (a naive segment-wise substitution
``delta -> -delta`` would swap the two kinds at every second defect).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

ONE_SITE = "one_site"
THREE_SITE = "three_site"
PERIODIC = "periodic"
OPEN = "open"

TOPOLOGICAL = "topological"
TRIVIAL = "trivial"
DEFECT = "defect"


@dataclass(frozen=True)
class DefectSpec:
    """A dimerization-pattern reversal anchored at unit cell ``cell``."""

    cell: int
    kind: str = ONE_SITE

    def __post_init__(self):
        if self.kind not in (ONE_SITE, THREE_SITE):
            raise ValueError(f"unknown defect kind {self.kind!r}")
        if self.cell < 1:
            raise ValueError("defect cell index must be >= 1")


@dataclass(frozen=True)
class ChainSpec:
    """Full description of a dimerized chain.

    Parameters
    ----------
    n_sites : int
        Even number of lattice sites, ``N = 2L``.
    hopping : float
        Overall hopping scale ``t > 0``.
    dimerization : float
        Bond alternation ``delta`` in ``[-1, 1]``.  Positive values put the
        uniform chain in the topological phase; negative values swap the
        trivial/topological labels (and with them the physical character the
        defect ``kind`` labels refer to).
    boundary : str
        ``"periodic"`` or ``"open"``.
    defects : tuple of DefectSpec
        Pattern reversals, with strictly increasing cell indices.
    """

    n_sites: int
    hopping: float = 1.0
    dimerization: float = 0.0
    boundary: str = PERIODIC
    defects: tuple[DefectSpec, ...] = ()

    def __post_init__(self):
        if self.n_sites < 2 or self.n_sites % 2:
            raise ValueError("n_sites must be a positive even integer")
        if not self.hopping > 0:
            raise ValueError("hopping must be positive")
        if not -1.0 <= self.dimerization <= 1.0:
            raise ValueError("dimerization must lie in [-1, 1]")
        if self.boundary not in (PERIODIC, OPEN):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        object.__setattr__(self, "defects", tuple(self.defects))
        cells = [d.cell for d in self.defects]
        # Footprints and flip points must stay clear of the cell-1 wrap seam;
        # the ring is translation invariant, so rotate the chain if needed.
        for d in self.defects:
            last_ok = self.n_cells - 1 if d.kind == ONE_SITE else self.n_cells - 2
            if not 2 <= d.cell <= last_ok:
                raise ValueError(
                    f"defect cell {d.cell} out of the supported range "
                    f"[2, {last_ok}] for kind {d.kind!r}"
                )
        if any(b <= a for a, b in zip(cells, cells[1:])):
            raise ValueError("defect cells must be strictly increasing")
        if self.boundary == PERIODIC and len(self.defects) % 2:
            raise ValueError(
                "periodic boundary requires an even number of defects"
            )
        occupied = [c for cs in self._cell_footprints() for c in cs]
        if len(set(occupied)) != len(occupied):
            raise ValueError("defects overlap")

    @property
    def n_cells(self) -> int:
        return self.n_sites // 2

    def _cell_footprints(self) -> list[tuple[int, ...]]:
        out = []
        for d in self.defects:
            if d.kind == ONE_SITE:
                out.append((d.cell,))
            else:
                out.append((d.cell, d.cell + 1))
        return out

    def defect_cells(self) -> set[int]:
        """Cells occupied by any defect's footprint."""
        return {c for cs in self._cell_footprints() for c in cs}

    def to_json(self) -> str:
        return json.dumps(
            {
                "n_sites": self.n_sites,
                "t": self.hopping,
                "delta": self.dimerization,
                "boundary": self.boundary,
                "defects": [{"cell": d.cell, "kind": d.kind} for d in self.defects],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        data = json.loads(text)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ChainSpec":
        defects = tuple(
            DefectSpec(cell=int(d["cell"]), kind=str(d.get("kind", ONE_SITE)))
            for d in data.get("defects", ())
        )
        return cls(
            n_sites=int(data["n_sites"]),
            hopping=float(data.get("t", 1.0)),
            dimerization=float(data["delta"]),
            boundary=str(data.get("boundary", PERIODIC)),
            defects=defects,
        )


def localization_length(delta: float) -> float:
    """Decay length (in cells) of a defect or edge zero mode, 1/(2 artanh|delta|)."""
    if not 0 < abs(delta) < 1:
        raise ValueError("localization length requires 0 < |delta| < 1")
    return 1.0 / (2.0 * math.atanh(abs(delta)))


def _flip_points(spec: ChainSpec) -> list[int]:
    """1-based bond indices at which the alternation reverses.

    Entering a defect at cell j with an even number of previous reversals
    (base pattern), the flip starts at bond 2j (one_site) or 2j+1
    (three_site); with an odd number, at 2j-1 resp. 2j.  This keeps the
    physical structure around the anchor cell independent of which reversal
    region the defect sits in.
    """
    points = []
    for parity, d in enumerate(spec.defects):
        entering_odd = parity % 2
        if d.kind == ONE_SITE:
            points.append(2 * d.cell - entering_odd)
        else:
            points.append(2 * d.cell + 1 - entering_odd)
    return points


def bond_amplitudes(spec: ChainSpec) -> np.ndarray:
    """Hopping amplitude of every bond.

    Bond ``r`` (0-based index ``r-1`` in the returned array) connects sites
    ``r`` and ``r+1``.  Under periodic boundary conditions the array has
    length ``N`` and the last entry is the wrap bond; open chains have
    ``N - 1`` bonds.
    """
    n = spec.n_sites
    t, delta = spec.hopping, spec.dimerization
    n_bonds = n if spec.boundary == PERIODIC else n - 1
    weak, strong = -t * (1.0 - delta), -t * (1.0 + delta)
    flips = np.zeros(n_bonds + 2, dtype=int)
    for r0 in _flip_points(spec):
        flips[min(r0, n_bonds + 1):] += 1
    amps = np.empty(n_bonds)
    for r in range(1, n_bonds + 1):
        flipped = flips[r] % 2
        intra = r % 2 == 1
        amps[r - 1] = weak if intra ^ flipped else strong
    return amps


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Single-particle hopping matrix of the chain (real symmetric, N x N)."""
    n = spec.n_sites
    amps = bond_amplitudes(spec)
    h = np.zeros((n, n))
    for r, a in enumerate(amps, start=1):
        i, j = r - 1, r % n
        h[i, j] = h[j, i] = a
    return h


def defect_sites(spec: ChainSpec) -> list[tuple[DefectSpec, tuple[int, ...]]]:
    """1-based site indices making up each defect at full dimerization.

    For a one_site defect this is the single weakly coupled site (the zero
    mode's home); for a three_site defect, the three trimer sites.
    """
    out = []
    for parity, d in enumerate(spec.defects):
        entering_odd = parity % 2
        if d.kind == ONE_SITE:
            sites = (2 * d.cell - entering_odd,)
        else:
            base = 2 * d.cell - entering_odd
            sites = (base, base + 1, base + 2)
        sites = tuple((s - 1) % spec.n_sites + 1 for s in sites)
        out.append((d, sites))
    return out


def dispersion_eigenvalues(spec: ChainSpec) -> np.ndarray:
    """Sorted exact single-particle energies of the defect-free periodic chain.

    The two bands are ``+-2t sqrt(cos^2(k/2) + delta^2 sin^2(k/2))`` at
    momenta ``k = 2 pi j / L``; the band gap at ``k = pi`` is ``4 t |delta|``.
    """
    if spec.defects or spec.boundary != PERIODIC:
        raise ValueError("dispersion applies to the defect-free periodic chain")
    t, delta = spec.hopping, spec.dimerization
    k = 2.0 * np.pi * np.arange(spec.n_cells) / spec.n_cells
    band = 2.0 * t * np.sqrt(np.cos(k / 2) ** 2 + delta**2 * np.sin(k / 2) ** 2)
    return np.sort(np.concatenate([-band, band]))


def window_cells(spec: ChainSpec, start_cell: int, n_cells: int) -> list[int]:
    """Cells of the interval ``[m, m + ell - 1]``, wrapped under PBC."""
    if not 1 <= start_cell <= spec.n_cells:
        raise ValueError("window start cell out of range")
    if not 1 <= n_cells <= spec.n_cells:
        raise ValueError("window length out of range")
    if spec.boundary == OPEN and start_cell + n_cells - 1 > spec.n_cells:
        raise ValueError("window exceeds the open chain")
    return [(start_cell - 1 + i) % spec.n_cells + 1 for i in range(n_cells)]


def window_sites(spec: ChainSpec, start_cell: int, n_cells: int) -> np.ndarray:
    """0-based site indices of an interval of whole cells, in window order."""
    sites = []
    for c in window_cells(spec, start_cell, n_cells):
        sites.extend((2 * c - 2, 2 * c - 1))
    return np.asarray(sites, dtype=int)


def defects_in_window(spec: ChainSpec, start_cell: int, n_cells: int) -> list[DefectSpec]:
    """Defects whose footprint intersects the window (partial overlaps count)."""
    cells = set(window_cells(spec, start_cell, n_cells))
    hit = []
    for d, cs in zip(spec.defects, spec._cell_footprints()):
        if cells & set(cs):
            hit.append(d)
    return hit


def window_case(spec: ChainSpec, start_cell: int, n_cells: int) -> str:
    """Classify an interval as topological, trivial, or defect-containing.

    The label is read off the two bonds cut by the interval boundaries:
    two strong cuts -> topological, two weak cuts -> trivial, one of each ->
    defect.  Requires ``dimerization != 0``.
    """
    if spec.dimerization == 0.0:
        raise ValueError("window case is undefined at zero dimerization")
    if defects_in_window(spec, start_cell, n_cells):
        return DEFECT
    end_cell = start_cell + n_cells - 1
    if spec.boundary == OPEN and (start_cell == 1 or end_cell >= spec.n_cells):
        raise ValueError("case labeling needs both window boundaries interior")
    amps = bond_amplitudes(spec)
    left = (2 * (start_cell - 1) - 1) % spec.n_sites  # bond entering cell m
    right = (2 * end_cell - 1) % spec.n_sites
    weak = abs(spec.hopping) * (1.0 - abs(spec.dimerization))
    cuts_strong = [abs(amps[b]) > weak + 1e-15 for b in (left, right)]
    if all(cuts_strong):
        return TOPOLOGICAL
    if not any(cuts_strong):
        return TRIVIAL
    return DEFECT
