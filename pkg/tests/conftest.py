# -*- coding: utf-8 -*-
import os
import random

import pytest

from loop_ranking.core.business.loopmodel import build_transition_system
from loop_ranking.core.business.loopmodel import parse_loop

LOOPS_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.realpath(__file__))),
    "data",
    "loops",
)


def loop_path(name: str) -> str:
    return os.path.join(LOOPS_DIR, f"{name}.lcl")


def load_loop(name: str):
    with open(loop_path(name), encoding="utf-8") as loop_file:
        return build_transition_system(parse_loop(loop_file.read()))


@pytest.fixture(scope="session")
def loops_dir():
    return LOOPS_DIR


@pytest.fixture(scope="session")
def loop():
    return load_loop


def linear_text(coeffs, names, constant=0) -> str:
    parts = [(c, f"{abs(c)}*{name}") for c, name in zip(coeffs, names) if c]
    if constant or not parts:
        parts.append((constant, str(abs(constant))))
    text = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for value, body in parts[1:]:
        text += (" - " if value < 0 else " + ") + body
    return text


def random_loop(rng: random.Random, n: int = 2, k: int = 1, exact=True):
    """Random loop with small integer coefficients.

    With `exact` every update is an equality, so the loop is
    deterministic when it has one path.
    """
    names = [f"x{i + 1}" for i in range(n)]
    lines = ["vars: " + " ".join(names)]
    for _ in range(k):
        guard = []
        for _ in range(rng.randint(1, 2)):
            coeffs = [rng.randint(-2, 2) for _ in range(n)]
            if not any(coeffs):
                coeffs[rng.randrange(n)] = 1
            bound = rng.randint(-3, 3)
            guard.append(f"{linear_text(coeffs, names)} >= {bound}")
        update = []
        for i, name in enumerate(names):
            coeffs = [rng.randint(-1, 1) for _ in range(n)]
            coeffs[i] += 1
            relation = "=" if exact or rng.random() < 0.6 else "<="
            rhs = linear_text(coeffs, names, rng.randint(-3, 2))
            update.append(f"{name}' {relation} {rhs}")
        lines.append("path:")
        lines.append("  guard: " + "; ".join(guard))
        lines.append("  update: " + "; ".join(update))
    return build_transition_system(parse_loop("\n".join(lines) + "\n"))
