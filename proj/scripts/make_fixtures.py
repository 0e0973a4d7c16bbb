#!/usr/bin/env python3
# Copyright 2026 The Proxilink Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the synthetic fixtures under tests/fixtures."""

import argparse
import pathlib

import numpy as np


def homophilic(out: pathlib.Path, rng: np.random.Generator) -> None:
    n, m, d = 200, 4, 24
    cls = np.repeat(np.arange(m), n // m)
    rng.shuffle(cls)
    ids = rng.permutation(np.arange(1000, 1000 + 7 * n, 7))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            p = 0.07 if cls[u] == cls[v] else 0.006
            if rng.random() < p:
                edges.append((u, v))
    proto = rng.random((m, d)) < 0.35
    feats = np.zeros((n, d), dtype=int)
    for u in range(n):
        flip = rng.random(d) < 0.12
        feats[u] = np.logical_xor(proto[cls[u]], flip)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "edges.tsv", "w") as f:
        f.write("# synthetic homophilic graph, 4 planted classes\n")
        for u, v in edges:
            f.write(f"{ids[u]}\t{ids[v]}\n")
    with open(out / "features.csv", "w") as f:
        f.write("node_id," + ",".join(f"f{j}" for j in range(d)) + "\n")
        for u in range(n):
            f.write(f"{ids[u]}," + ",".join(str(x) for x in feats[u]) + "\n")
    with open(out / "classes.csv", "w") as f:
        f.write("node_id,class\n")
        for u in range(n):
            f.write(f"{ids[u]},{cls[u]}\n")


def collab(out: pathlib.Path, rng: np.random.Generator) -> None:
    n, d = 60, 8
    groups = rng.integers(0, 4, n)
    start = rng.integers(1975, 2012, n)
    records = []
    for u in range(n):
        for v in range(u + 1, n):
            p = 0.25 if groups[u] == groups[v] else 0.03
            if rng.random() >= p:
                continue
            first = max(start[u], start[v])
            years = sorted(set(rng.integers(first, 2020, rng.integers(1, 5))))
            for y in years:
                records.append((u, v, int(y), int(rng.integers(1, 4))))
    emb = rng.normal(size=(4, d))[groups] + 0.5 * rng.normal(size=(n, d))
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "edges.tsv", "w") as f:
        for u, v, y, w in records:
            f.write(f"{u}\t{v}\t{y}\t{w}\n")
    with open(out / "embeddings.csv", "w") as f:
        f.write("node_id," + ",".join(f"f{j}" for j in range(d)) + "\n")
        for u in range(n):
            f.write(f"{u}," + ",".join(f"{x:.6f}" for x in emb[u]) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    rng = np.random.default_rng(args.seed)
    homophilic(out / "synthetic", rng)
    collab(out / "collab", rng)
    (out / "k3.tsv").write_text("0\t1\n1\t2\n0\t2\n")
    (out / "g0.tsv").write_text("0\t1\n0\t2\n1\t2\n2\t3\n3\t4\n")


if __name__ == "__main__":
    main()
