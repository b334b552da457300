"""Write the standard pictures and tables for a few small examples.

Output goes to ``figures/`` (or ``--outdir``): the R-order of F(a,b,c) as DOT,
the quivers of F(a,b,c) and the three-line arrangement, and the Ext table
and global dimensions of B(C_4) over Q and F_2.
"""
import argparse
from pathlib import Path

import networkx as nx

from lrbtools.constructions import free_lrb, free_partially_commutative
from lrbtools.core import r_order
from lrbtools.corpus import by_name
from lrbtools.homological import ext_table, global_dimension, quiver
from lrbtools.linalg import QQ, Field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="figures")
    out = Path(ap.parse_args().outdir)
    out.mkdir(parents=True, exist_ok=True)

    F3 = free_lrb("abc")
    P = r_order(F3)
    (out / "free3_r_order.dot").write_text(P.to_dot(name="free3"))
    (out / "free3_quiver.dot").write_text(quiver(F3).to_dot("free3"))

    A = by_name("three-lines").monoid
    (out / "three_lines_quiver.dot").write_text(quiver(A).to_dot("three_lines"))
    (out / "three_lines_ext.csv").write_text(ext_table(A).to_csv())

    C4 = free_partially_commutative(nx.cycle_graph(4))
    (out / "c4_ext.csv").write_text(ext_table(C4).to_csv())
    for F in (QQ, Field(2)):
        print(f"B(C4) over {F}: {C4.size} elements, gl.dim {global_dimension(C4, F)}")
    print(f"three lines: gl.dim {global_dimension(A)}")
    print(f"F(a,b,c): {F3.size} elements, {len(P.hasse)} Hasse edges, "
          f"{quiver(F3).arrow_count()} quiver arrows")
    for p in sorted(out.iterdir()):
        print(f"wrote {p}")


if __name__ == "__main__":
    main()
