"""Fiedler-like pencils and structure-preserving Rosenbrock linearizations
of rational matrices given in state-space realization form.

Subpackages/modules:

- ``tuples``      index-tuple combinatorics (SIP, csf, consecutions, RCISS, ...)
- ``polymat``     matrix polynomials, elementary/Fiedler matrices, block transpose
- ``realize``     realizations G(lam) = P(lam) + C (lam E - A)^{-1} B and system matrices
- ``pencils``     FP / GFP / GFPR pencil builders (product and bordered paths)
- ``structured``  block-symmetric, symmetric, T-even/T-odd, (skew-)Hamiltonian,
                  skew-symmetric linearizations; quasi-identity search; Cauchy-Maslov index
- ``recover``     eigenvector / minimal-basis / minimal-index recovery maps
- ``verify``      numeric oracles (determinants, eigenvalues, nullspaces, degree sweeps)
- ``cli``         command-line front end
"""

__version__ = "0.1.0"
