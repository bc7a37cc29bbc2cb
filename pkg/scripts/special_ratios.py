"""Aspect ratios where the symmetric bowtie crosses at a right angle and where its
perimeter equals the billiard's."""

import math

from ebilliards.bowtie import crossing_angle, ellipse_perimeter, equal_perimeter_ratio, right_angle_ratio
from ebilliards.conic import Billiard


def main() -> None:
    r1 = right_angle_ratio()
    r2 = equal_perimeter_ratio()
    print(f"right angle:     a/b = {r1:.15f}  (sqrt(1+sqrt(2)) = {math.sqrt(1 + math.sqrt(2)):.15f})")
    print(f"equal perimeter: a/b = {r2:.15f}")
    for r in (r1, r2):
        B = Billiard.from_ratio(r)
        print(f"  a/b={r:.6f}: angle {math.degrees(crossing_angle(B)):.9f} deg, "
              f"bowtie L {4 * B.a**2 / B.c:.12f}, ellipse L {ellipse_perimeter(B.a, B.b):.12f}")


if __name__ == "__main__":
    main()
