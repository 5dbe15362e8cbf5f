#!/usr/bin/env python3
"""Freezes row/column/nonzero counts of the QPS fixtures as read by HiGHS.

The parser tests compare against this file, so the counts come from a
reader that shares no code with ours.
"""
import glob
import json
import os
import shutil
import sys
import tempfile

import highspy


def counts(path):
    with tempfile.TemporaryDirectory() as tmp:
        mps = os.path.join(tmp, "model.mps")
        shutil.copy(path, mps)
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        if h.readModel(mps) != highspy.HighsStatus.kOk:
            raise RuntimeError(f"HiGHS could not read {path}")
        model = h.getModel()
        lp = model.lp_
        return {
            "rows": lp.num_row_,
            "cols": lp.num_col_,
            "nnz_a": sum(1 for v in lp.a_matrix_.value_ if v != 0),
            "nnz_q_lower": sum(1 for v in model.hessian_.value_ if v != 0),
        }


def main():
    fixture_dir = sys.argv[1]
    table = {}
    for path in sorted(glob.glob(os.path.join(fixture_dir, "*.qps"))):
        table[os.path.basename(path)] = counts(path)
    with open(os.path.join(fixture_dir, "reference_counts.json"), "w") as fh:
        json.dump(table, fh, indent=2, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
