#!/usr/bin/env python3
"""Independent determinant-basis FCI oracle over FCIDUMP fixtures.

Builds the second-quantized Hamiltonian directly (no Jordan-Wigner) in the
(N, Sz=0) determinant sector and diagonalizes it. Prints HF and FCI energies
used as frozen expected values in the Rust test suite.
"""

import itertools
import re
import sys

import numpy as np


def parse_fcidump(path):
    text = open(path).read()
    m = re.search(r"NORB\s*=\s*(\d+)", text)
    norb = int(m.group(1))
    nelec = int(re.search(r"NELEC\s*=\s*(\d+)", text).group(1))
    body = text[text.index("&END") + 4 :]
    core = 0.0
    h = np.zeros((norb, norb))
    g = np.zeros((norb, norb, norb, norb))  # chemists (ij|kl)
    for line in body.strip().splitlines():
        parts = line.split()
        if len(parts) != 5:
            continue
        v = float(parts[0])
        i, j, k, l = map(int, parts[1:])
        if i == 0:
            core = v
        elif k == 0:
            h[i - 1, j - 1] = v
            h[j - 1, i - 1] = v
        else:
            i, j, k, l = i - 1, j - 1, k - 1, l - 1
            for a, b, c, d in {
                (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
            }:
                g[a, b, c, d] = v
    return norb, nelec, core, h, g


def spin_orbital_ints(norb, h, g):
    n = 2 * norb
    hso = np.zeros((n, n))
    for p in range(n):
        for q in range(n):
            if p % 2 == q % 2:
                hso[p, q] = h[p // 2, q // 2]
    # antisymmetrized <pq||rs> physicists
    gso = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    d1 = g[p // 2, r // 2, q // 2, s // 2] if (p % 2 == r % 2 and q % 2 == s % 2) else 0.0
                    d2 = g[p // 2, s // 2, q // 2, r // 2] if (p % 2 == s % 2 and q % 2 == r % 2) else 0.0
                    gso[p, q, r, s] = d1 - d2
    return hso, gso


def apply_ops(det, ops):
    """ops: list of (index, create?) applied right-to-left. det: frozenset."""
    occ = set(det)
    sign = 1
    for idx, create in reversed(ops):
        if create:
            if idx in occ:
                return None, 0
            sign *= (-1) ** len([x for x in occ if x < idx])
            occ.add(idx)
        else:
            if idx not in occ:
                return None, 0
            sign *= (-1) ** len([x for x in occ if x < idx])
            occ.remove(idx)
    return frozenset(occ), sign


def fci(path):
    norb, nelec, core, h, g = parse_fcidump(path)
    hso, gso = spin_orbital_ints(norb, h, g)
    n = 2 * norb
    na = nelec // 2
    alphas = [c for c in itertools.combinations(range(0, n, 2), na)]
    betas = [c for c in itertools.combinations(range(1, n, 2), nelec - na)]
    dets = [frozenset(a + b) for a in alphas for b in betas]
    index = {d: i for i, d in enumerate(dets)}
    dim = len(dets)
    H = np.zeros((dim, dim))
    for jdet, d in enumerate(dets):
        for p in range(n):
            for q in range(n):
                if abs(hso[p, q]) < 1e-14:
                    continue
                nd, s = apply_ops(d, [(p, True), (q, False)])
                if nd is not None and nd in index:
                    H[index[nd], jdet] += s * hso[p, q]
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s_ in range(n):
                        v = gso[p, q, r, s_]
                        if abs(v) < 1e-14:
                            continue
                        nd, sg = apply_ops(
                            d, [(p, True), (q, True), (s_, False), (r, False)]
                        )
                        if nd is not None and nd in index:
                            H[index[nd], jdet] += 0.25 * sg * v
    evals = np.linalg.eigvalsh(H)
    hf_det = frozenset(range(nelec))
    i0 = index[hf_det]
    e_hf = H[i0, i0] + core
    return e_hf, evals[0] + core, dim


if __name__ == "__main__":
    for path in sys.argv[1:]:
        e_hf, e_fci, dim = fci(path)
        print(f"{path}: dim={dim} E_HF={e_hf:.12f} E_FCI={e_fci:.12f}")
