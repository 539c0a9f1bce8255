#!/usr/bin/env python3
"""Plot a trace CSV (x_re,x_im,u_re,u_im,chart) produced by `p3fox trace`."""
import sys

import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "trace.csv"
    df = pd.read_csv(path)
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    ax1.plot(df.x_re, df.u_re, lw=0.8, label="Re u")
    ax1.plot(df.x_re, df.u_im, lw=0.8, label="Im u")
    ax1.set_ylim(-25, 25)
    ax1.set_ylabel("u")
    ax1.legend()
    in_v = (df.chart == "V").astype(int)
    ax2.step(df.x_re, in_v, where="post", lw=0.8)
    ax2.set_ylabel("chart (0 = U, 1 = V)")
    ax2.set_xlabel("Re x")
    fig.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
