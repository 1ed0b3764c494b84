"""
Single photon addition onto a coherent seed, compared with squeezed cats.

Prints the optimum fidelity for small even and odd cats and the Wigner
function of the odd-cat approximation at the origin.
"""

import numpy as np

from dsscat.circuit import AddPhoton, CircuitSpec, run_circuit
from dsscat.optimizer import OptConfig, maximize
from dsscat.states import EVEN, ODD
from dsscat.wigner import w_numeric


def main():
    config = OptConfig(restarts=8)
    for amp in (0.8, 1.0, 1.2):
        for q, name in ((EVEN, "even"), (ODD, "odd")):
            res = maximize(1, q, amp, config)
            ph = res.physical
            print(f"A={amp:.1f} {name:4s} F={res.fidelity_sq:.6f} r={ph['r']:+.4f} "
                  f"alpha_in={ph['alpha_in']:.4f} alpha_disp={ph['alpha_disp']:.4f}")

    # the vacuum seed gives |1>, whose Wigner function dips to -2/pi at the origin
    out = run_circuit(CircuitSpec(0, [AddPhoton()], 30))
    print("W(0, 0) of the one-photon output:", float(w_numeric(out, 0.0, 0.0)), "vs", -2 / np.pi)


if __name__ == "__main__":
    main()
