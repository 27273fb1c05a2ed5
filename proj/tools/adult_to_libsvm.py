#!/usr/bin/env python3
# Copyright 2026 The ratecon Authors
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
"""Converts the raw UCI Adult files into the 123-feature binary LIBSVM layout.

The layout follows the classic "a9a" encoding: every continuous attribute is
quantized into bins, every categorical attribute is one-hot encoded, and
missing values ("?") produce no active feature. Feature blocks (1-based):

  age 1-5, workclass 6-13, fnlwgt 14-18, education 19-34, education-num 35-39,
  marital-status 40-46, occupation 47-60, relationship 61-66, race 67-71,
  sex 72-73 (72 = Female, 73 = Male), capital-gain 74-75, capital-loss 76-77,
  hours-per-week 78-82, native-country 83-123.

Quintile bin edges are computed on the training file and reused for the test
file. Capital gain/loss use a zero / nonzero split.

Usage: adult_to_libsvm.py adult.data adult.test OUT_DIR
"""

import bisect
import os
import sys

CATEGORIES = {
    "workclass": ["Private", "Self-emp-not-inc", "Self-emp-inc", "Federal-gov",
                  "Local-gov", "State-gov", "Without-pay", "Never-worked"],
    "education": ["Bachelors", "Some-college", "11th", "HS-grad", "Prof-school",
                  "Assoc-acdm", "Assoc-voc", "9th", "7th-8th", "12th",
                  "Masters", "1st-4th", "10th", "Doctorate", "5th-6th",
                  "Preschool"],
    "marital-status": ["Married-civ-spouse", "Divorced", "Never-married",
                       "Separated", "Widowed", "Married-spouse-absent",
                       "Married-AF-spouse"],
    "occupation": ["Tech-support", "Craft-repair", "Other-service", "Sales",
                   "Exec-managerial", "Prof-specialty", "Handlers-cleaners",
                   "Machine-op-inspct", "Adm-clerical", "Farming-fishing",
                   "Transport-moving", "Priv-house-serv", "Protective-serv",
                   "Armed-Forces"],
    "relationship": ["Wife", "Own-child", "Husband", "Not-in-family",
                     "Other-relative", "Unmarried"],
    "race": ["White", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other",
             "Black"],
    "sex": ["Female", "Male"],
    "native-country": [
        "United-States", "Cambodia", "England", "Puerto-Rico", "Canada",
        "Germany", "Outlying-US(Guam-USVI-etc)", "India", "Japan", "Greece",
        "South", "China", "Cuba", "Iran", "Honduras", "Philippines", "Italy",
        "Poland", "Jamaica", "Vietnam", "Mexico", "Portugal", "Ireland",
        "France", "Dominican-Republic", "Laos", "Ecuador", "Taiwan", "Haiti",
        "Columbia", "Hungary", "Guatemala", "Nicaragua", "Scotland",
        "Thailand", "Yugoslavia", "El-Salvador", "Trinadad&Tobago", "Peru",
        "Hong", "Holand-Netherlands"],
}

COLUMNS = ["age", "workclass", "fnlwgt", "education", "education-num",
           "marital-status", "occupation", "relationship", "race", "sex",
           "capital-gain", "capital-loss", "hours-per-week", "native-country"]

QUINTILE = {"age", "fnlwgt", "education-num", "hours-per-week"}
ZERO_SPLIT = {"capital-gain", "capital-loss"}


def read_rows(path):
    rows = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("|"):
                continue
            fields = [x.strip() for x in line.split(",")]
            if len(fields) != 15:
                continue
            label = 1 if fields[14].rstrip(".") == ">50K" else -1
            rows.append((fields[:14], label))
    return rows


def quintile_edges(values):
    values = sorted(values)
    n = len(values)
    edges = []
    for q in (1, 2, 3, 4):
        edges.append(values[min(n - 1, (q * n) // 5)])
    return edges


def main(argv):
    if len(argv) != 4:
        sys.stderr.write(__doc__)
        return 2
    train = read_rows(argv[1])
    test = read_rows(argv[2])
    edges = {}
    for col in QUINTILE:
        k = COLUMNS.index(col)
        edges[col] = quintile_edges([float(r[0][k]) for r in train])

    def encode(fields):
        feats = []
        offset = 1
        for k, col in enumerate(COLUMNS):
            raw = fields[k]
            if col in QUINTILE:
                if raw != "?":
                    feats.append(offset + bisect.bisect_right(edges[col],
                                                              float(raw)))
                offset += 5
            elif col in ZERO_SPLIT:
                if raw != "?":
                    feats.append(offset + (0 if float(raw) == 0 else 1))
                offset += 2
            else:
                cats = CATEGORIES[col]
                if raw in cats:
                    feats.append(offset + cats.index(raw))
                offset += len(cats)
        assert offset == 124, offset
        return feats

    os.makedirs(argv[3], exist_ok=True)
    for name, rows in (("adult123.train", train), ("adult123.test", test)):
        with open(os.path.join(argv[3], name), "w") as out:
            for fields, label in rows:
                feats = encode(fields)
                out.write(("+1" if label > 0 else "-1") +
                          "".join(" %d:1" % i for i in feats) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
