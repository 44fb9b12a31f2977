"""Exact models of the modular curves X(7), X(11), X(13).

Defining quartic ideals, Weil representations of PSL(2, F_p) and their
decompositions, classical invariant identities, and q-expansion checks.
"""

__version__ = "0.1.0"
