"""Tight parameterizations of the satellite knot K(6766, -817; p, q).

Prints the even-sequence chain, both rational values, the Schubert check
and the two symbolic parameterizations.  Pass alpha beta to try others.
"""

import sys

from tautknot.contfrac import format_rational
from tautknot.satellite import SatelliteSpec, alpha_beta, format_even_seq, satellite_chain, schubert_equivalent


def main(alpha: int = 6766, beta: int = -817) -> None:
    chain = satellite_chain(SatelliteSpec(alpha, beta))
    for name, seq in [("A", chain.a), ("A_e", chain.a_expanded), ("f(A_e)", chain.f_expanded), ("A'", chain.a_assoc)]:
        print(f"{name:7}= {format_even_seq(seq)}")
    print(f"[A]    = {format_rational(chain.value)}")
    print(f"[A']   = {format_rational(chain.assoc_value)}")
    print("same two-bridge link:", schubert_equivalent(alpha_beta(chain.value), alpha_beta(chain.assoc_value)))
    print(chain.first.text())
    print(chain.second.text())


if __name__ == "__main__":
    main(*map(int, sys.argv[1:3]))
