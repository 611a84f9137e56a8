"""Reference ground-state energies of -d^2/dx^2 + (b x - k)^2 on the half-line
with a Dirichlet condition at 0, plus the two k-integrals the current tests
use, printed for freezing into the C++ tests.

Independent of the library: second-order finite differences on [0, L],
scipy's tridiagonal eigensolver, Richardson extrapolation over two
resolutions (the error is O(h^2)).

Run:  python3 tests/oracles/fiber_oracle.py
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal


def lambda1_fd(b, k, L, n):
    h = L / (n + 1)
    x = h * np.arange(1, n + 1)
    d = 2.0 / h**2 + (b * x - k) ** 2
    e = -np.ones(n - 1) / h**2
    return eigh_tridiagonal(d, e, select="i", select_range=(0, 0), eigvals_only=True)[0]


def lambda1(b, k, n=4000):
    L = 12.0 / np.sqrt(b) + abs(k) / b
    l1 = lambda1_fd(b, k, L, n)
    l2 = lambda1_fd(b, k, L, 2 * n + 1)  # same box, h halved
    return (4.0 * l2 - l1) / 3.0


def chi(k, lo=1.0, hi=2.0):
    s = (2 * k - hi - lo) / (hi - lo)
    return np.where(np.abs(s) < 1, np.exp(-1.0 / (1.0 - np.minimum(s * s, 1 - 1e-300))), 0.0)


def chi_deriv(k, lo=1.0, hi=2.0):
    s = (2 * k - hi - lo) / (hi - lo)
    ds = 2.0 / (hi - lo)
    return np.where(np.abs(s) < 1, chi(k, lo, hi) * (-2 * s / (1 - s * s) ** 2) * ds, 0.0)


def main():
    b = 1.0
    print("lambda1 (b = 1):")
    for k in (-1.0, 0.0, 1.0, 1.5, 2.0, 3.0):
        print(f"  k = {k:5.2f}  {lambda1(b, k):.12f}")
    # Gauss-Legendre over [1, 2]; only lambda1 enters the by-parts forms.
    xg, wg = np.polynomial.legendre.leggauss(48)
    k = 1.5 + 0.5 * xg
    w = 0.5 * wg
    lam = np.array([lambda1(b, kk) for kk in k])
    cc = chi(k) * chi_deriv(k)
    schr = -2.0 * np.sum(w * lam * cc)
    naber = -(2.0 / 0.25) * np.sum(w * lam**2 * cc)
    print(f"Schrodinger current -2 int lambda chi chi' = {schr:.10f}")
    print(f"Naber constant (alpha=1/2) -8 int lambda^2 chi chi' = {naber:.10f}")


if __name__ == "__main__":
    main()
