"""Configurations shipped with the package.

``T``  toy basic-mode window used throughout the examples.
``G``  desk-scale section4 window: p = 2, theta = 1/2, alpha = 6/5,
       beta = gamma = 2/5, blocks as small as the 1 + 2/eps_n thresholds allow.
``W``  witness window with |F_n| = n + 4 starting at 6, for the lab-mode
       witness families.
"""

from __future__ import annotations

from pathlib import Path

from .space import SpaceConfig, parse_config

TOY_TEXT = """\
name = T
p = 2
mode = basic
blocks = [2-3, 4-6, 7-10]
"""

DESK_TEXT = """\
name = G
p = 2
mode = section4
blocks = [6-11, 12-17, 18-23, 24-30]
theta = 1/2
alpha = 6/5
beta = 2/5
gamma = 2/5
"""

WITNESS_TEXT = """\
name = W
p = 2
mode = basic
blocks = [6-10, 11-16, 17-23, 24-31, 32-40, 41-50]
"""

BUILTIN = {"T": TOY_TEXT, "G": DESK_TEXT, "W": WITNESS_TEXT}


def builtin(name: str) -> SpaceConfig:
    return parse_config(BUILTIN[name], name=name)


def load_config(source: str) -> SpaceConfig:
    """A builtin name (``T``, ``G``, ``W``) or a path to a config file."""
    if source in BUILTIN:
        return builtin(source)
    path = Path(source)
    return parse_config(path.read_text(encoding="utf-8"), name=path.stem)


TOY = builtin("T")
DESK = builtin("G")
WITNESS = builtin("W")
SHIPPED = (TOY, DESK, WITNESS)
