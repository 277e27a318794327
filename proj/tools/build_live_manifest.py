#!/usr/bin/env python3
# Copyright 2026 The PCDM Authors
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
"""Writes a ref,dist,dmos,class manifest for LIVE image quality release 2.

Expected layout under ROOT (as distributed):

  refimgs/*.bmp
  jp2k/img1.bmp ... img227.bmp
  jpeg/img1.bmp ... img233.bmp
  wn/img1.bmp ... img174.bmp
  gblur/img1.bmp ... img174.bmp
  fastfading/img1.bmp ... img174.bmp
  dmos_realigned.mat   (dmos_new, orgs)
  refnames_all.mat     (refnames_all)

Rows for undistorted originals (orgs == 1) are dropped. Paths in the
manifest are relative to ROOT, so the manifest is written there by default.
"""

import argparse
import csv
import pathlib
import sys

import numpy as np
import scipy.io

FOLDERS = [
    ("jp2k", "jp2k", 227),
    ("jpeg", "jpeg", 233),
    ("wn", "wn", 174),
    ("gblur", "gblur", 174),
    ("fastfading", "ff", 174),
]


def load_refnames(path):
  raw = scipy.io.loadmat(path)["refnames_all"]
  return [str(np.asarray(cell).squeeze()) for cell in raw.ravel()]


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("root", type=pathlib.Path)
  parser.add_argument("--dmos", default="dmos_realigned.mat")
  parser.add_argument("--dmos-key", default="dmos_new")
  parser.add_argument("--out", type=pathlib.Path)
  args = parser.parse_args()

  root = args.root
  mat = scipy.io.loadmat(root / args.dmos)
  dmos = np.asarray(mat[args.dmos_key], dtype=float).ravel()
  orgs = np.asarray(mat["orgs"]).ravel()
  refnames = load_refnames(root / "refnames_all.mat")
  total = sum(n for _, _, n in FOLDERS)
  if not (len(dmos) == len(orgs) == len(refnames) == total):
    sys.exit(f"expected {total} entries, got dmos={len(dmos)} "
             f"orgs={len(orgs)} refnames={len(refnames)}")

  out_path = args.out or root / "live_manifest.csv"
  rows = 0
  with open(out_path, "w", newline="") as f:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(["ref", "dist", "dmos", "class"])
    index = 0
    for folder, cls, count in FOLDERS:
      for k in range(1, count + 1):
        if orgs[index] == 0:
          ref = root / "refimgs" / refnames[index]
          dist = root / folder / f"img{k}.bmp"
          for p in (ref, dist):
            if not p.exists():
              sys.exit(f"missing {p}")
          writer.writerow([
              ref.relative_to(root).as_posix() if out_path.parent == root
              else ref.resolve().as_posix(),
              dist.relative_to(root).as_posix() if out_path.parent == root
              else dist.resolve().as_posix(),
              f"{dmos[index]:.6f}", cls
          ])
          rows += 1
        index += 1
  print(f"wrote {rows} rows to {out_path}")


if __name__ == "__main__":
  main()
