"""
Hadamard gate on coherent-state qubits at A = 1.4.

Both logical inputs share the intermediate displacement and squeeze; the
gate maps |+A> and |-A> (encoded through the absorber) onto displaced
squeezed even and odd cats.
"""

from dsscat.circuit import hadamard_fidelity, preprocess_front_end
from dsscat.reference import TABLE3
from dsscat.tables import branch_b, hadamard_params_from_row


def main():
    row = next(r for r in TABLE3 if r.alpha_scs == 1.4)
    params = hadamard_params_from_row(row, "a")
    for p in (params, branch_b(params)):
        encoded = preprocess_front_end(p.alpha_scs, p.gamma_absorb)
        print(f"branch {p.branch}: alpha_hg={p.alpha_hg:.6f} (front end gives {encoded:.6f}) "
              f"beta={p.beta:.6f} Gamma={p.gamma_absorb:.4f}")
        print(f"  F(+A -> even) = {hadamard_fidelity(+1, p):.6f}")
        print(f"  F(-A -> odd)  = {hadamard_fidelity(-1, p):.6f}")
    print("output centre shift:", abs(params.alpha_plus - params.alpha_minus))


if __name__ == "__main__":
    main()
