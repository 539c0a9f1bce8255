#!/usr/bin/env python3
"""Phase/modulus plot of a grid CSV (x_re,x_im,u_re,u_im,status) from `p3fox grid`."""
import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "grid.csv"
    df = pd.read_csv(path)
    xs = np.sort(df.x_re.unique())
    ys = np.sort(df.x_im.unique())
    u = (df.u_re.values + 1j * df.u_im.values).reshape(len(ys), len(xs))
    status = df.status.values.reshape(len(ys), len(xs))
    hue = (np.angle(u) + np.pi) / (2 * np.pi)
    sat = np.ones_like(hue)
    val = 1.0 - 1.0 / (1.0 + np.abs(u) ** 0.4)
    rgb = plt.cm.hsv(hue)[..., :3] * val[..., None]
    rgb[status == "pole"] = [1.0, 1.0, 1.0]
    rgb[status == "failed"] = [0.3, 0.3, 0.3]
    fig, ax = plt.subplots(figsize=(7, 7 * (ys[-1] - ys[0]) / (xs[-1] - xs[0] + 1e-30)))
    ax.imshow(rgb, origin="lower", extent=(xs[0], xs[-1], ys[0], ys[-1]), aspect="auto")
    ax.set_xlabel("Re x")
    ax.set_ylabel("Im x")
    out = path.rsplit(".", 1)[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
