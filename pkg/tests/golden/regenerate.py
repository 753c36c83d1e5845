"""Rebuild the golden tables. Run by hand only after the oracle checks pass.

    python tests/golden/regenerate.py
"""

import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracles import mullineux_by_crystal  # noqa: E402
from quiverreps.partitions import mullineux, partition_list, regular_partitions, wallcross_map  # noqa: E402
from quiverreps.quiver import single_vertex  # noqa: E402
from quiverreps.rational import fmt  # noqa: E402
from quiverreps.walls import singular_hyperplanes  # noqa: E402


def key(p):
    return ",".join(map(str, p))


def main():
    mull = {}
    for e in (2, 3, 4):
        table = {}
        for n in range(11):
            if n <= 8:
                oracle = mullineux_by_crystal(n, e)
                assert all(mullineux(p, e) == img for p, img in oracle.items()), (n, e)
            for p in regular_partitions(n, e):
                table[key(p)] = list(mullineux(p, e))
        mull[str(e)] = table
    wc = {str(m): {key(p): list(wallcross_map(p, m)) for n in range(9) for p in partition_list(n)} for m in (2, 3)}
    sing = {}
    for v in range(1, 5):
        for w in range(1, 6):
            hs = singular_hyperplanes(single_vertex(), (v,), (w,)).hyperplanes
            sing[f"{v},{w}"] = [fmt(h.offset) for h in hs]
    (HERE / "mullineux.json").write_text(json.dumps(mull, indent=1, sort_keys=True) + "\n")
    (HERE / "wallcross.json").write_text(json.dumps(wc, indent=1, sort_keys=True) + "\n")
    (HERE / "singular_vertex.json").write_text(json.dumps(sing, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
