#!/usr/bin/env python3
"""Replay the square-based pyramid session: cone smoothness, intersections with C1, fan predicates."""
from fank import catalog
from fank.geometry.cone import intersect
from fank.geometry.fan import is_complete, is_polytopal, is_simplicial, is_smooth_fan


def session_lines():
    fan = catalog.build("pyramid")
    lines = []

    # Check whether maximal cones are smooth
    for name in fan.cone_names:
        lines.append(f"isSmooth({name}) = {str(fan.cone(name).is_smooth).lower()}")

    # Intersections of the singular C1 with the other maximal cones
    top = fan.cone("C1")
    for name in fan.cone_names[1:]:
        face = intersect(top, fan.cone(name))
        label = "C1" + name[1:]
        lines.append(f"{label} = intersection(C1,{name}) = {fan.label(fan.names_of(face.rays))}")
        lines.append(f"isSmooth({label}) = {str(face.is_smooth).lower()}")

    # Properties of the fan
    lines.append(f"isSmooth(F) = {str(is_smooth_fan(fan)).lower()}")
    lines.append(f"isComplete(F) = {str(is_complete(fan)).lower()}")
    lines.append(f"isSimplicial(F) = {str(is_simplicial(fan)).lower()}")
    lines.append(f"isPolytopal(F) = {str(is_polytopal(fan)).lower()}")
    return lines


def main() -> None:
    for line in session_lines():
        print(line)


if __name__ == "__main__":
    main()
