"""Independent check of the exact-vs-model photon number deviation in the
strong-pump regime (alpha = 5, chi = 0.01), used to freeze the regression
bounds in the acceptance suite. Builds the truncated generator as a scipy
sparse matrix and applies exp(G t) with expm_multiply.

Output (recorded when the bounds were frozen):
    0.5 8.33851425671563e-06
    2.0 0.00013466105052591053
"""

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

D0, D = 80, 8
CHI, ALPHA = 0.01, 5.0


def lower(n):
    return sp.diags(np.sqrt(np.arange(1, n)), 1, format="csr")


def eye(n):
    return sp.identity(n, format="csr")


a0 = sp.kron(lower(D0), sp.kron(eye(D), eye(D)))
a1 = sp.kron(eye(D0), sp.kron(lower(D), eye(D)))
a2 = sp.kron(eye(D0), sp.kron(eye(D), lower(D)))
G = CHI * (a1.T @ a2.T @ a0 - a1 @ a2 @ a0.T)
N = a1.T @ a1 + a2.T @ a2

n = np.arange(D0)
pump = np.exp(-ALPHA**2 / 2 + n * np.log(ALPHA) - 0.5 * gammaln(n + 1))
vac = np.eye(D)[0]
psi0 = np.kron(pump, np.kron(vac, vac))

for horizon in (0.5, 2.0):
    ts = np.linspace(0.0, horizon, int(round(horizon / 0.01)) + 1)
    states = expm_multiply(G, psi0, start=0.0, stop=horizon, num=len(ts), endpoint=True)
    worst = 0.0
    for t, psi in zip(ts[1:], states[1:]):
        model = 2.0 * np.sinh(CHI * ALPHA * t) ** 2
        worst = max(worst, abs(psi @ (N @ psi) - model) / model)
    print(horizon, repr(float(worst)))
