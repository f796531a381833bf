#!/usr/bin/env python3
# Copyright 2026 The vqaprobe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds hypernyms.tsv (term -> nearest-first path) from taxonomy.tsv."""

import argparse
import sys


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("taxonomy")
    parser.add_argument("output")
    args = parser.parse_args()

    parent = {}
    order = []
    with open(args.taxonomy, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            child, par = line.split("\t")
            if child in parent:
                sys.exit(f"duplicate child: {child}")
            parent[child] = par
            order.append(child)

    roots = sorted({p for p in parent.values() if p not in parent})
    with open(args.output, "w", encoding="utf-8") as out:
        out.write("# term<TAB>hypernym1<TAB>hypernym2... (nearest first)\n")
        for root in roots:
            out.write(root + "\n")
        for term in order:
            path = []
            node = term
            while node in parent:
                node = parent[node]
                if node in path:
                    sys.exit(f"cycle at {term}")
                path.append(node)
            out.write("\t".join([term] + path) + "\n")


if __name__ == "__main__":
    main()
