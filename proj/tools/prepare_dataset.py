#!/usr/bin/env python3
# SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
# SPDX-License-Identifier: Apache-2.0
"""Convert public social-network dumps into rescap input files.

Writes <out>/edges.txt (one "u v" pair per line) and <out>/attrs.csv
(columns node,gender). Gender codes in these dumps are anonymized, so the
mapping to labels is given explicitly with --label CODE=NAME; unmapped codes
are written verbatim and missing values are left empty (unknown).

  snap-ego DIR EGO   SNAP ego network: DIR/EGO.edges, .feat, .featnames, .egofeat.
                     The ego node is linked to every alter.
  facebook100 MAT    Facebook100 .mat file: sparse matrix A, local_info column 2.
"""

import argparse
import csv
import os
import sys


def parse_labels(pairs):
    mapping = {}
    for item in pairs:
        code, sep, name = item.partition("=")
        if not sep:
            sys.exit(f"--label expects CODE=NAME, got {item!r}")
        mapping[code] = name
    return mapping


def write_outputs(out, edges, genders, mapping):
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, "edges.txt"), "w") as f:
        for u, v in sorted(edges):
            f.write(f"{u} {v}\n")
    nodes = sorted({x for e in edges for x in e}, key=lambda s: (len(s), s))
    with open(os.path.join(out, "attrs.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["node", "gender"])
        for node in nodes:
            code = genders.get(node, "")
            w.writerow([node, mapping.get(code, code)])
    print(f"{len(nodes)} nodes, {len(edges)} edges -> {out}", file=sys.stderr)


def snap_ego(args, mapping):
    base = os.path.join(args.dir, args.ego)
    gender_cols = {}
    with open(base + ".featnames") as f:
        for line in f:
            idx, name = line.strip().split(" ", 1)
            key, _, value = name.partition(";anonymized feature ")
            if not value:
                key, _, value = name.partition(":")
            if key == "gender":
                gender_cols[int(idx)] = value.strip()

    def gender_of(bits):
        hits = [code for col, code in gender_cols.items() if bits[col] == "1"]
        return hits[0] if len(hits) == 1 else ""

    genders = {}
    with open(base + ".feat") as f:
        for line in f:
            parts = line.split()
            genders[parts[0]] = gender_of(parts[1:])
    with open(base + ".egofeat") as f:
        genders[args.ego] = gender_of(f.read().split())

    edges = set()
    with open(base + ".edges") as f:
        for line in f:
            u, v = line.split()[:2]
            if u != v:
                edges.add((min(u, v), max(u, v)))
    for alter in list(genders):
        if alter != args.ego:
            edges.add((min(alter, args.ego), max(alter, args.ego)))
    write_outputs(args.out, edges, genders, mapping)


def facebook100(args, mapping):
    from scipy.io import loadmat
    from scipy.sparse import triu

    data = loadmat(args.mat)
    upper = triu(data["A"], k=1).tocoo()
    edges = {(str(u), str(v)) for u, v in zip(upper.row, upper.col)}
    info = data["local_info"]
    genders = {str(i): ("" if int(row[1]) == 0 else str(int(row[1]))) for i, row in enumerate(info)}
    write_outputs(args.out, edges, genders, mapping)


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--label", action="append", default=[], metavar="CODE=NAME")
    sub = parser.add_subparsers(dest="kind", required=True)
    ego = sub.add_parser("snap-ego")
    ego.add_argument("dir")
    ego.add_argument("ego")
    fb = sub.add_parser("facebook100")
    fb.add_argument("mat")
    args = parser.parse_args()
    mapping = parse_labels(args.label)
    if args.kind == "snap-ego":
        snap_ego(args, mapping)
    else:
        facebook100(args, mapping)


if __name__ == "__main__":
    main()
