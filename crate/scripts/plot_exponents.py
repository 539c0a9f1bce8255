#!/usr/bin/env python3
"""Leading-power scan plot from `p3fox asym --alpha-scan` CSV output."""
import sys

import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "scan.csv"
    df = pd.read_csv(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(df.alpha, df.delta_exp_re, ".", ms=2)
    ax1.set_title("determinant leading power")
    ax1.set_xlabel("alpha")
    ax2.plot(df.alpha, df.u_exp_re, ".", ms=2)
    ax2.set_title("solution leading power")
    ax2.set_xlabel("alpha")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    out = path.rsplit(".", 1)[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
