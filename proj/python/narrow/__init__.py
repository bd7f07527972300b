"""Solver, strategy agent and verifier for 1xn Dots-and-Boxes and Dots-and-Triangles."""

import json

from ._narrow import (
    MemoOverflow,
    Position,
    ServiceError,
    Solver,
    StrategyViolation,
    board_json,
    board_play,
    board_position,
    chains,
    classify_edge,
    double_deals,
    first_move,
    guaranteed_score,
    initial_board,
    render,
    scenario_check,
    scenario_names,
    score_table,
    strategy_supported,
)
from ._narrow import _GameService

__all__ = [
    "GameService",
    "MemoOverflow",
    "Position",
    "ServiceError",
    "Solver",
    "StrategyViolation",
    "board_json",
    "board_play",
    "board_position",
    "chains",
    "classify_edge",
    "double_deals",
    "first_move",
    "guaranteed_score",
    "initial_board",
    "render",
    "scenario_check",
    "scenario_names",
    "score_table",
    "strategy_supported",
]


class GameService:
    """In-process game sessions with the same request and response bodies as the HTTP API.

    Errors raise ServiceError with args (status, code, message).
    """

    def __init__(self):
        self._impl = _GameService()

    def create(self, request):
        return json.loads(self._impl.create(json.dumps(request)))

    def submit_move(self, game_id, request):
        return json.loads(self._impl.submit_move(game_id, json.dumps(request)))

    def fetch(self, game_id):
        return json.loads(self._impl.fetch(game_id))

    def analysis(self, game_id):
        return json.loads(self._impl.analysis(game_id))

    @property
    def session_count(self):
        return self._impl.session_count
