#!/usr/bin/env python3
"""Why equipartition holds or breaks: gaps vs degeneracies of the spectrum.

Prints the chemical-potential diagnostics for three model entanglement
spectra: the non-degenerate equidistant defect spectrum (full equipartition),
the doubly degenerate phase spectrum (parity alternation), and the defect
spectrum with an added zero-mode level at a crossing (single-sector
enhancement).
"""

import numpy as np

from sshent.asymptotics import bulk_defect_spectrum, half_cut_spectrum
from sshent.specialfn import EllipticParams
from sshent.statmech import equipartition_report

DELTA = 0.3
ELL = 10
params = EllipticParams.from_dimerization(DELTA)
eps = params.spacing


def show(title, spectrum, q_values):
    print(f"\n== {title} ==")
    print(f"{'q':>4} {'mu':>10} {'S~':>10} {'S(q)':>10} {'at level':>9} {'degenerate':>11}")
    for r in equipartition_report(spectrum, q_values):
        print(
            f"{r.q:>4} {r.mu:>10.4f} {r.constrained_entropy:>10.6f} "
            f"{r.sector_entropy:>10.6f} {str(r.mu_at_level):>9} "
            f"{str(r.level_degenerate):>11}"
        )


bulk = bulk_defect_spectrum(params, ELL)
show("defect interval: equidistant, non-degenerate", bulk,
     list(range(ELL - 2, ELL + 3)))

weak = half_cut_spectrum(params, ELL // 2, "weak")
doubled = np.sort(np.concatenate([weak, weak]))
show("trivial interval: equidistant, doubly degenerate", doubled,
     list(range(ELL - 2, ELL + 3)))

dq = 1
with_zero = np.sort(np.append(bulk, eps * dq))
show(f"defect interval + zero-mode level at the dq={dq} crossing", with_zero,
     list(range(ELL - 1, ELL + 4)))
