#!/usr/bin/env python3
"""Generate FCIDUMP fixtures for linear hydrogen chains in the STO-3G basis.

Restricted Hartree-Fock is solved for the chain, the integrals are
transformed to the canonical MO basis, and the result is written in
FCIDUMP format (chemists' notation, 8-fold symmetry, 1-based indices).

Only s-type Gaussians are needed for hydrogen, so all integrals have
closed forms in terms of the Boys function F0.

Usage: python3 scripts/make_fixtures.py <outdir>
"""

import math
import os
import sys

import numpy as np
from scipy.linalg import eigh
from scipy.special import erf

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092

# STO-3G hydrogen 1s: (exponent, contraction coefficient)
STO3G_H = [
    (3.42525091, 0.15432897),
    (0.62391373, 0.53532814),
    (0.16885540, 0.44463454),
]


def boys0(t):
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * math.sqrt(math.pi / t) * erf(math.sqrt(t))


def primitive_norm(alpha):
    return (2.0 * alpha / math.pi) ** 0.75


def build_basis(centers):
    """One contracted s function per center: list of (center, [(a, d_normalized)])."""
    basis = []
    for c in centers:
        prims = [(a, d * primitive_norm(a)) for a, d in STO3G_H]
        basis.append((np.asarray(c, dtype=float), prims))
    return basis


def overlap_prim(a, ra, b, rb):
    p = a + b
    ab2 = float(np.dot(ra - rb, ra - rb))
    return (math.pi / p) ** 1.5 * math.exp(-a * b / p * ab2)


def kinetic_prim(a, ra, b, rb):
    p = a + b
    mu = a * b / p
    ab2 = float(np.dot(ra - rb, ra - rb))
    return mu * (3.0 - 2.0 * mu * ab2) * overlap_prim(a, ra, b, rb)


def nuclear_prim(a, ra, b, rb, rc):
    p = a + b
    rp = (a * ra + b * rb) / p
    ab2 = float(np.dot(ra - rb, ra - rb))
    pc2 = float(np.dot(rp - rc, rp - rc))
    pref = -2.0 * math.pi / p * math.exp(-a * b / p * ab2)
    return pref * boys0(p * pc2)


def eri_prim(a, ra, b, rb, c, rc, d, rd):
    p = a + b
    q = c + d
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    ab2 = float(np.dot(ra - rb, ra - rb))
    cd2 = float(np.dot(rc - rd, rc - rd))
    pq2 = float(np.dot(rp - rq, rp - rq))
    pref = (
        2.0 * math.pi ** 2.5
        / (p * q * math.sqrt(p + q))
        * math.exp(-a * b / p * ab2 - c * d / q * cd2)
    )
    return pref * boys0(p * q / (p + q) * pq2)


def integrals(basis, charges, centers):
    n = len(basis)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i, (ri, pi) in enumerate(basis):
        for j, (rj, pj) in enumerate(basis):
            for a, da in pi:
                for b, db in pj:
                    s[i, j] += da * db * overlap_prim(a, ri, b, rj)
                    t[i, j] += da * db * kinetic_prim(a, ri, b, rj)
                    for z, rc in zip(charges, centers):
                        v[i, j] += z * da * db * nuclear_prim(a, ri, b, rj, rc)
    eri = np.zeros((n, n, n, n))
    for i, (ri, pi) in enumerate(basis):
        for j, (rj, pj) in enumerate(basis):
            for k, (rk, pk) in enumerate(basis):
                for l, (rl, pl) in enumerate(basis):
                    val = 0.0
                    for a, da in pi:
                        for b, db in pj:
                            for c, dc in pk:
                                for d, dd in pl:
                                    val += (
                                        da * db * dc * dd
                                        * eri_prim(a, ri, b, rj, c, rk, d, rl)
                                    )
                    eri[i, j, k, l] = val  # chemists' notation (ij|kl)
    return s, t + v, eri


def rhf(s, hcore, eri, n_elec, e_nuc, max_iter=200, tol=1e-12):
    n = s.shape[0]
    nocc = n_elec // 2
    # core guess
    e, c = eigh(hcore, s)
    dm = 2.0 * c[:, :nocc] @ c[:, :nocc].T
    e_old = 0.0
    for _ in range(max_iter):
        j = np.einsum("pqrs,rs->pq", eri, dm)
        k = np.einsum("prqs,rs->pq", eri, dm)
        f = hcore + j - 0.5 * k
        e_elec = 0.5 * np.sum(dm * (hcore + f))
        e, c = eigh(f, s)
        dm = 2.0 * c[:, :nocc] @ c[:, :nocc].T
        if abs(e_elec - e_old) < tol:
            break
        e_old = e_elec
    return e_elec + e_nuc, e, c


def write_fcidump(path, hmo, erimo, e_nuc, n_elec, thresh=1e-12):
    n = hmo.shape[0]
    with open(path, "w") as f:
        f.write(f"&FCI NORB={n},NELEC={n_elec},MS2=0,\n")
        f.write("  ORBSYM=" + "1," * n + "\n")
        f.write("  ISYM=1,\n")
        f.write("&END\n")
        for i in range(n):
            for j in range(i + 1):
                for k in range(i + 1):
                    lmax = j + 1 if k == i else k + 1
                    for l in range(lmax):
                        v = erimo[i, j, k, l]
                        if abs(v) > thresh:
                            f.write(
                                f" {v:23.16E} {i+1:3d} {j+1:3d} {k+1:3d} {l+1:3d}\n"
                            )
        for i in range(n):
            for j in range(i + 1):
                v = hmo[i, j]
                if abs(v) > thresh:
                    f.write(f" {v:23.16E} {i+1:3d} {j+1:3d}   0   0\n")
        f.write(f" {e_nuc:23.16E}   0   0   0   0\n")


def hydrogen_chain(n_atoms, spacing_angstrom):
    r = spacing_angstrom * ANGSTROM_TO_BOHR
    centers = [np.array([0.0, 0.0, i * r]) for i in range(n_atoms)]
    charges = [1.0] * n_atoms
    e_nuc = 0.0
    for i in range(n_atoms):
        for j in range(i + 1, n_atoms):
            e_nuc += 1.0 / float(np.linalg.norm(centers[i] - centers[j]))
    return centers, charges, e_nuc


def make(n_atoms, spacing, outpath):
    centers, charges, e_nuc = hydrogen_chain(n_atoms, spacing)
    basis = build_basis(centers)
    s, hcore, eri = integrals(basis, charges, centers)
    e_hf, mo_e, c = rhf(s, hcore, eri, n_atoms, e_nuc)
    hmo = c.T @ hcore @ c
    erimo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", c, c, c, c, eri, optimize=True)
    write_fcidump(outpath, hmo, erimo, e_nuc, n_atoms)
    print(f"{outpath}: E_HF = {e_hf:.10f}  mo_e = {np.array2string(mo_e, precision=6)}")
    return e_hf


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(outdir, exist_ok=True)
    # equilibrium H-H distance 0.75 A for the chains; H2 fixture at 0.735 A
    make(2, 0.735, os.path.join(outdir, "h2_sto3g_0.735.fcidump"))
    make(4, 0.75, os.path.join(outdir, "h4_sto3g_r1.0.fcidump"))
    make(4, 1.50, os.path.join(outdir, "h4_sto3g_r2.0.fcidump"))
    make(6, 0.75, os.path.join(outdir, "h6_sto3g_r1.0.fcidump"))
    make(6, 1.125, os.path.join(outdir, "h6_sto3g_r1.5.fcidump"))
    make(6, 1.50, os.path.join(outdir, "h6_sto3g_r2.0.fcidump"))


if __name__ == "__main__":
    main()
