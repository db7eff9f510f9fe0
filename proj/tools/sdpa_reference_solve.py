#!/usr/bin/env python3
"""Solve a sparse SDPA file with cvxpy and print the optimum as JSON.

Convention: maximize tr(F0 Y) s.t. tr(Fi Y) = c_i, Y block-diagonal PSD
(negative block size = nonnegative diagonal block).
"""

import argparse
import json
import re
import sys

import cvxpy as cp
import numpy as np
import scipy.sparse as sp


def read_sdpa(path):
    with open(path) as fh:
        lines = [ln for ln in fh if ln.strip() and ln.lstrip()[0] not in '"*']
    tokens = re.sub(r"[,{}()]", " ", " ".join(lines[2:])).split()
    m = int(lines[0].split()[0])
    nblocks = int(lines[1].split()[0])
    sizes = [int(t) for t in tokens[:nblocks]]
    rhs = np.array([float(t) for t in tokens[nblocks:nblocks + m]])
    rest = tokens[nblocks + m:]
    entries = [(int(rest[k]), int(rest[k + 1]), int(rest[k + 2]), int(rest[k + 3]), float(rest[k + 4]))
               for k in range(0, len(rest), 5)]
    return m, sizes, rhs, entries


def solve(path, solver):
    m, sizes, rhs, entries = read_sdpa(path)
    blocks = []
    for s in sizes:
        if s > 0:
            blocks.append(cp.Variable((s, s), symmetric=True))
        else:
            blocks.append(cp.Variable(-s, nonneg=True))

    # Sparse coefficient matrices over each block's vectorization.
    rows = {b: ([], [], []) for b in range(len(sizes))}
    obj = {b: ([], [], []) for b in range(len(sizes))}
    for mat, blk, i, j, v in entries:
        b = blk - 1
        s = sizes[b]
        target = obj if mat == 0 else rows
        r = 0 if mat == 0 else mat - 1
        if s > 0:
            idx = [(i - 1) * s + (j - 1)] if i == j else [(i - 1) * s + (j - 1), (j - 1) * s + (i - 1)]
        else:
            idx = [i - 1]
        for k in idx:
            target[b][0].append(r)
            target[b][1].append(k)
            target[b][2].append(v)

    lhs = 0
    objective = 0
    for b, s in enumerate(sizes):
        width = s * s if s > 0 else -s
        vec = cp.vec(blocks[b], order="C") if s > 0 else blocks[b]
        if rows[b][0]:
            a = sp.csr_matrix((rows[b][2], (rows[b][0], rows[b][1])), shape=(m, width))
            lhs = lhs + a @ vec
        if obj[b][0]:
            c = sp.csr_matrix((obj[b][2], (obj[b][0], obj[b][1])), shape=(1, width))
            objective = objective + c @ vec
    cons = [lhs == rhs] + [blk >> 0 for blk, s in zip(blocks, sizes) if s > 0]
    prob = cp.Problem(cp.Maximize(cp.sum(objective)), cons)
    # Clarabel stalls on the redundant rows the builders keep; try the others in turn.
    order = [solver] + [s for s in ("CVXOPT", "CLARABEL", "SCS") if s != solver]
    for name in order:
        try:
            prob.solve(solver=name)
        except cp.error.SolverError:
            continue
        if prob.status in ("optimal", "infeasible", "unbounded"):
            return name, prob.status, prob.value
    return order[-1], prob.status, prob.value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("path")
    ap.add_argument("--solver", default="CVXOPT")
    args = ap.parse_args()
    name, status, value = solve(args.path, args.solver)
    json.dump({"solver": name, "status": status, "objective": value}, sys.stdout)
    sys.stdout.write("\n")
    return 0 if status == "optimal" else 1


if __name__ == "__main__":
    sys.exit(main())
