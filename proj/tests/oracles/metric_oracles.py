# Copyright 2026 The legendgen Authors
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

"""Reference values for the metric tests (numpy, scipy).

The worked chart is 200x120 with four bars; the legend is a 71x54 panel
anchored at (140, 30) holding three rows of right-aligned "Class k" labels
followed by 12 px swatches. Everything is painted with the pixel-center rule.
"""

import itertools

import numpy as np
from scipy.stats import kendalltau

W, H = 200, 120
BARS = [  # x, y, w, h, rgb
    (20, 40, 20, 60, (0x4E, 0x79, 0xA7)),
    (60, 60, 20, 40, (0xF2, 0x8E, 0x2B)),
    (100, 20, 20, 80, (0xE1, 0x57, 0x59)),
    (150, 50, 20, 50, (0x4E, 0x79, 0xA7)),
]
ANCHOR = (140, 30)
PANEL = (71, 54)
FONT = 11.0


def luminance(rgb):
    c = np.asarray(rgb, dtype=float) / 255.0
    c = np.where(c <= 0.03928, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    return float(c @ [0.2126, 0.7152, 0.0722])


def contrast(a, b):
    la, lb = luminance(a), luminance(b)
    return (max(la, lb) + 0.05) / (min(la, lb) + 0.05)


def fill_rect(img, x0, y0, x1, y1, rgb, alpha=1.0, half_open=False):
    ys, xs = np.mgrid[0 : img.shape[0], 0 : img.shape[1]] + 0.5
    if half_open:
        m = (xs >= x0) & (xs < x1) & (ys >= y0) & (ys < y1)
    else:
        m = (xs >= x0) & (xs <= x1) & (ys >= y0) & (ys <= y1)
    src = np.asarray(rgb, dtype=float)
    img[m] = np.round(img[m] + (src - img[m]) * alpha)


def ink_centroid_distance(img):
    g = 255.0 - img.mean(axis=2)
    h, w = g.shape
    ys, xs = np.mgrid[0:h, 0:w] + 0.5
    cx, cy = (g * xs).sum() / g.sum(), (g * ys).sum() / g.sum()
    return float(np.hypot(cx - w / 2, cy - h / 2))


def chart():
    img = np.full((H, W, 3), 255.0)
    for x, y, w, h, rgb in BARS:
        fill_rect(img, x, y, x + w, y + h, rgb)
    return img


def panel():
    pw, ph = PANEL
    img = np.full((ph, pw, 3), 255.0)
    # 1 px #d0d0d0 border centered on the rect inset by half a pixel
    img[0, :] = img[-1, :] = 0xD0
    img[:, 0] = img[:, -1] = 0xD0
    for k in range(3):
        top = 4 + 17 * k
        baseline = top + 9.3
        text_w = 0.6 * FONT * len("Class 1")
        right = 50.6
        fill_rect(img, right - text_w, baseline - 0.8 * FONT, right, baseline + 0.2 * FONT, (0, 0, 0), 0.6,
                  half_open=True)
        fill_rect(img, 54.6, top, 66.6, top + 12, BARS[k][4])
    return img


def tau_a(a, b):
    n = len(a)
    s = sum(np.sign(a[i] - a[j]) * np.sign(b[i] - b[j]) for i, j in itertools.combinations(range(n), 2))
    return s / (n * (n - 1) / 2)


def main():
    print(f"contrast #777777/#ffffff = {contrast((0x77,) * 3, (255,) * 3):.6f}")
    print(f"contrast black/white     = {contrast((0,) * 3, (255,) * 3):.6f}")

    half = np.zeros((10, 10))
    half[:, 5:] = 255
    print(f"O half black/white = {half.std():.6f}")

    dot = np.full((100, 100, 3), 255.0)
    dot[0, 0] = 0
    print(f"I single pixel (0,0) of 100x100 = {ink_centroid_distance(dot):.6f}")

    base = chart()
    ax, ay = ANCHOR
    pw, ph = PANEL
    region = base[ay : ay + ph, ax : min(ax + pw, W)].mean(axis=2)
    print(f"worked O = {region.std():.12f}")

    grown = np.full((H, ax + pw, 3), 255.0)
    grown[:, :W] = base
    grown[ay : ay + ph, ax : ax + pw] = panel()
    diag = np.hypot(*grown.shape[:2]) / 2
    print(f"worked I = {ink_centroid_distance(grown) / diag:.12f}")

    print(f"worked R = {contrast((0, 0, 0), (255, 255, 255)):.12f}")
    print(f"worked S = {((ax + pw) * H - W * H) / (W * H):.12f}")

    # Category centers: blue bars 0 and 3, orange bar 1, red bar 2.
    centers = {0: [], 1: [], 2: []}
    for k, (x, y, w, h, _) in enumerate(BARS):
        centers[[0, 1, 2, 0][k]].append((x + w / 2, y + h / 2))
    mx = [np.mean([c[0] for c in centers[k]]) for k in range(3)]
    my = [np.mean([c[1] for c in centers[k]]) for k in range(3)]
    order = [0, 1, 2]
    tx, ty = tau_a(order, mx), tau_a(order, my)
    assert abs(tx - kendalltau(order, mx).statistic) < 1e-12
    tau = tx if abs(tx) >= abs(ty) else ty
    c = 1.0 + 0.5 + (tau + 1) / 2
    print(f"worked C = {c:.12f}  (tau_x={tx:.6f}, tau_y={ty:.6f})")

    cx = min(ax + pw / 2, W)
    cy = min(ay + ph / 2, H)
    print(f"worked pref_h = {ax / W:.12f}")
    print(f"worked pref_v = {ay / H:.12f}")
    print(f"worked pref_c = {min(1.0, np.hypot(cx - W / 2, cy - H / 2) / (np.hypot(W, H) / 2)):.12f}")


if __name__ == "__main__":
    main()
