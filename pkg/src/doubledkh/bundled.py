"""The bundled diagram table."""
from __future__ import annotations

from importlib import resources

from .diagram import ProjectiveDiagram, is_knot, parse_diagram

NAMES = (
    "unknot", "essential_circle", "trefoil_right", "trefoil_left", "hopf_positive", "hopf_negative",
    "degenerate_link", "knot_2_1", "knot_3_1", "knot_4_1", "three_lines",
)
ALIASES = {"2_1": "knot_2_1", "3_1": "knot_3_1", "4_1": "knot_4_1", "21": "knot_2_1",
           "31": "knot_3_1", "41": "knot_4_1"}


class MissingDiagram(FileNotFoundError):
    pass


def text(name: str) -> str:
    name = ALIASES.get(name, name)
    try:
        return resources.files("doubledkh.data").joinpath(f"{name}.rp3").read_text()
    except FileNotFoundError:
        raise MissingDiagram(f"no bundled diagram named {name!r}") from None


def load(name: str) -> ProjectiveDiagram:
    return parse_diagram(text(name))


def table() -> dict[str, ProjectiveDiagram]:
    return {n: load(n) for n in NAMES}


def knots() -> dict[str, ProjectiveDiagram]:
    return {n: d for n, d in table().items() if is_knot(d)}


def local_diagrams() -> dict[str, ProjectiveDiagram]:
    return {n: d for n, d in table().items() if not d.boundary}


MOVIES = (
    "tube_unknot", "tube_trefoil_right", "tube_trefoil_left", "tube_knot_2_1", "tube_knot_4_1",
    "trefoil_right_to_unknot", "trefoil_left_to_unknot", "knot_2_1_to_unknot", "knot_4_1_to_unknot",
)


def movie_text(name: str) -> str:
    try:
        return resources.files("doubledkh.data").joinpath("movies", f"{name}.movie").read_text()
    except FileNotFoundError:
        raise MissingDiagram(f"no bundled movie named {name!r}") from None


def load_movie(name: str):
    from .cobordism import parse_movie
    return parse_movie(movie_text(name), loader=load)
