#!/usr/bin/env python3
"""Regenerate the bundled CSV datasets under data/.

Real data: iris, wine and breast cancer (diagnostic) are copied from the
files shipped inside scikit-learn; balance scale is rebuilt from its
defining rule, which reproduces the UCI file row for row.

glass_like, seeds_like and haberman_like are synthetic Gaussian mixtures with
the sample/feature/class counts (and class proportions) of the UCI sets they
are named after. They are stand-ins for shape, not for content.

Every file is written raw (no normalization), features first, label last,
with a header row.
"""

import csv
import itertools
import os
import sys

import numpy as np
from sklearn import datasets

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def write(name, header, rows):
    path = os.path.join(OUT, name + ".csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"{path}: {len(rows)} rows, {len(header) - 1} features")


def balance_scale():
    rows = []
    for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
        left, right = lw * ld, rw * rd
        label = "L" if left > right else ("R" if right > left else "B")
        rows.append([lw, ld, rw, rd, label])
    write("balance_scale", ["left_weight", "left_distance", "right_weight", "right_distance", "class"], rows)


def from_sklearn(name, loader):
    bunch = loader()
    names = [str(n).replace(" ", "_") for n in bunch.feature_names]
    rows = [[repr(float(v)) for v in x] + [bunch.target_names[y]] for x, y in zip(bunch.data, bunch.target)]
    write(name, names + ["class"], rows)


def mixture(name, counts, features, seed, spread):
    rng = np.random.default_rng(seed)
    rows = []
    for label, count in enumerate(counts):
        centre = rng.uniform(0.0, 10.0, size=features)
        scale = rng.uniform(0.5, spread, size=features)
        pts = rng.normal(centre, scale, size=(count, features))
        for p in pts:
            rows.append([f"{v:.4f}" for v in p] + [f"c{label + 1}"])
    order = rng.permutation(len(rows))
    rows = [rows[i] for i in order]
    write(name, [f"f{j + 1}" for j in range(features)] + ["class"], rows)


def main():
    os.makedirs(OUT, exist_ok=True)
    balance_scale()
    from_sklearn("iris", datasets.load_iris)
    from_sklearn("wine", datasets.load_wine)
    from_sklearn("breast_cancer", datasets.load_breast_cancer)
    mixture("glass_like", [70, 76, 17, 13, 9, 29], 9, seed=214, spread=2.5)
    mixture("seeds_like", [70, 70, 70], 7, seed=210, spread=2.0)
    mixture("haberman_like", [225, 81], 3, seed=306, spread=3.0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
