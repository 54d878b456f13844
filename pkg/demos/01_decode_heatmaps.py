"""Decoding gaze heatmaps to scene coordinates.

A gaze-following network emits a 56x56 grid of gaze-probability values;
the cell with the maximum value marks the predicted gaze point. This demo
builds a few synthetic heatmaps and decodes them to pixel coordinates in
a 2560x1440 scene.
"""

import numpy as np

from teamgaze import Heatmap, decode_heatmap

SCENE_W, SCENE_H = 2560, 1440

# A single confident spike.
spike = np.zeros((56, 56))
spike[13, 27] = 1.0
point = decode_heatmap(Heatmap(spike), SCENE_W, SCENE_H)
print(f"spike at (col 27, row 13)  -> gaze ({point.x:.2f}, {point.y:.2f})")

# A broad Gaussian blob: the argmax cell still decides.
rows, cols = np.mgrid[0:56, 0:56]
blob = np.exp(-((cols - 40.0) ** 2 + (rows - 8.0) ** 2) / 30.0)
point = decode_heatmap(Heatmap(blob), SCENE_W, SCENE_H)
print(f"blob centered (40, 8)      -> gaze ({point.x:.2f}, {point.y:.2f})")

# Scaling all values has no effect: only the argmax matters.
point_scaled = decode_heatmap(Heatmap(blob * 1000.0), SCENE_W, SCENE_H)
assert (point_scaled.x, point_scaled.y) == (point.x, point.y)
print("scaling the heatmap by 1000 leaves the decoded point unchanged")
