"""
Write Wigner grids for an even displaced squeezed cat and the two-addition
output that approximates it, then compare them point by point.
"""

import sys
from pathlib import Path

import numpy as np

from dsscat.circuit import CircuitSpec, coeffs_from_circuit
from dsscat.states import EVEN, TargetCat
from dsscat.wigner import emit_grid, w_dsscs, w_halffinished


def main(out_dir="."):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    target = TargetCat(1.4, EVEN, -1.32164j, -0.40712)
    spec = CircuitSpec.two_addition(1.32164j, -2.64328j)
    h = coeffs_from_circuit(spec.seed, spec.steps[1].beta)
    center = spec.seed + spec.steps[1].beta

    g_target = emit_grid(lambda x, p: w_dsscs(target, x, p), out / "target.txt", nx=121, np_=121)
    g_out = emit_grid(lambda x, p: w_halffinished(h, center, x, p), out / "circuit.txt", nx=121, np_=121)
    print("norms:", round(g_target.norm, 6), round(g_out.norm, 6))
    print("max |dW|:", float(np.max(np.abs(g_target.values - g_out.values))))


if __name__ == "__main__":
    main(*sys.argv[1:])
