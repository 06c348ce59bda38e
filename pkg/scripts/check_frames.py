#!/usr/bin/env python3
"""Print frame bounds, essential bands and S0 constants for the built-in frames."""
from xsampler.frames import build_frame, frame_constants

if __name__ == "__main__":
    print(f"{'frame':<10}{'a':>8}{'b':>8}{'mu':>6}{'A1':>9}{'A2':>9}{'B [Hz]':>9}{'C0~':>9}")
    for name in ("trapezoid", "cosine", "bspline5"):
        fr = build_frame(name, 0.13)
        c = frame_constants(fr)
        print(f"{name:<10}{fr.a:8.4f}{fr.b:8.3f}{fr.mu:6.2f}{fr.A1:9.4f}{fr.A2:9.4f}"
              f"{fr.B:9.2f}{c.C0_tilde:9.2f}")
