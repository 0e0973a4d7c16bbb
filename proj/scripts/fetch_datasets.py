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

"""Downloads Cora (Planetoid) and Texas (Geom-GCN) and converts them to the
edge-list / attribute CSV layout plus a ready-to-run config.json each.

    python3 scripts/fetch_datasets.py --out data
    PROXILINK_DATA_DIR=data ./build/tests/acceptance

With --raw DIR the raw files are read from DIR/<dataset>/ instead of the
network (same file names as upstream).
"""

import argparse
import json
import pathlib
import pickle
import sys
import urllib.request

import numpy as np

PLANETOID = "https://github.com/kimiyoung/planetoid/raw/master/data/"
GEOM_GCN = "https://raw.githubusercontent.com/graphdml-uiuc-jlu/geom-gcn/master/new_data/"

CORA_FILES = [f"ind.cora.{s}" for s in ("x", "tx", "allx", "y", "ty", "ally", "graph", "test.index")]
TEXAS_FILES = ["out1_graph_edges.txt", "out1_node_feature_label.txt"]


def fetch(name: str, base: str, files: list[str], raw: pathlib.Path | None) -> dict[str, bytes]:
    out = {}
    for f in files:
        if raw is not None:
            out[f] = (raw / name / f).read_bytes()
        else:
            print(f"fetching {base}{f}", file=sys.stderr)
            with urllib.request.urlopen(base + f, timeout=60) as r:
                out[f] = r.read()
    return out


def write_dataset(out: pathlib.Path, name: str, edges, features: np.ndarray, labels: np.ndarray) -> None:
    out.mkdir(parents=True, exist_ok=True)
    n = features.shape[0]
    seen = set()
    with open(out / "edges.tsv", "w") as f:
        for u, v in edges:
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            f.write(f"{key[0]}\t{key[1]}\n")
    with open(out / "features.csv", "w") as f:
        f.write("node_id," + ",".join(f"f{i}" for i in range(features.shape[1])) + "\n")
        for u in range(n):
            f.write(str(u) + "," + ",".join(str(int(x)) for x in features[u]) + "\n")
    with open(out / "classes.csv", "w") as f:
        f.write("node_id,class\n")
        for u in range(n):
            f.write(f"{u},{int(labels[u])}\n")
    config = {
        "dataset": {
            "name": name,
            "edges": "edges.tsv",
            "binary_features": "features.csv",
            "classes": "classes.csv",
            "num_classes": int(labels.max()) + 1,
        },
        "profile": "binary",
        "split": {"ratios": [0.85, 0.05, 0.10]},
        "seeds": list(range(10)),
        "classifier": {"kind": "gbdt", "preset": "auc"},
        "metrics": ["auc"],
        "output_dir": f"out_{name}",
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n")
    print(f"{name}: {n} nodes, {len(seen)} edges, {features.shape[1]} features, "
          f"{int(labels.max()) + 1} classes -> {out}", file=sys.stderr)


def cora(out: pathlib.Path, raw: pathlib.Path | None) -> None:
    blobs = fetch("cora", PLANETOID, CORA_FILES, raw)

    def load(key):
        return pickle.loads(blobs[f"ind.cora.{key}"], encoding="latin1")

    tx, allx, ty, ally = (load(k) for k in ("tx", "allx", "ty", "ally"))
    graph = load("graph")
    test_idx = [int(line) for line in blobs["ind.cora.test.index"].decode().split()]
    order = np.sort(test_idx)
    features = np.vstack([allx.toarray(), tx.toarray()])
    labels = np.vstack([ally, ty])
    features[test_idx, :] = features[order, :]
    labels[test_idx, :] = labels[order, :]
    features = (features > 0).astype(int)
    edges = [(u, v) for u, nbrs in graph.items() for v in nbrs]
    write_dataset(out / "cora", "cora", edges, features, labels.argmax(axis=1))


def texas(out: pathlib.Path, raw: pathlib.Path | None) -> None:
    blobs = fetch("texas", GEOM_GCN + "texas/", TEXAS_FILES, raw)
    rows = blobs["out1_node_feature_label.txt"].decode().strip().splitlines()[1:]
    parsed = {}
    for line in rows:
        node, feats, label = line.split("\t")
        parsed[int(node)] = ([int(v) for v in feats.split(",")], int(label))
    n = max(parsed) + 1
    features = np.array([parsed[u][0] for u in range(n)])
    labels = np.array([parsed[u][1] for u in range(n)])
    edges = []
    for line in blobs["out1_graph_edges.txt"].decode().strip().splitlines()[1:]:
        u, v = line.split("\t")
        edges.append((int(u), int(v)))
    write_dataset(out / "texas", "texas", edges, (features > 0).astype(int), labels)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data"))
    ap.add_argument("--raw", type=pathlib.Path, help="read upstream files from RAW/<dataset>/")
    ap.add_argument("--only", choices=["cora", "texas"])
    args = ap.parse_args()
    if args.only in (None, "cora"):
        cora(args.out, args.raw)
    if args.only in (None, "texas"):
        texas(args.out, args.raw)


if __name__ == "__main__":
    main()
