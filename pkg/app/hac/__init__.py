"""Hierarchical actor-critic: goal wiring, subgoal proposal, hindsight actions, subgoal testing."""

from .agents import AgentPair, GreedyMasterAgent, build_learned, build_scripted
from .config import GROUND_TRUTH_DIM, HacConfig
from .hierarchy import (
    HierarchyEpisode,
    SubEpisode,
    draw_subgoal_test,
    hindsight_action,
    propose_subgoal,
    run_hierarchy_episode,
    run_sub_episode,
    subgoal_test_step,
    within_offset_bound,
)
from .wiring import GoalWiring, wire_goals

__all__ = [
    "GROUND_TRUTH_DIM",
    "AgentPair",
    "GoalWiring",
    "GreedyMasterAgent",
    "HacConfig",
    "HierarchyEpisode",
    "SubEpisode",
    "build_learned",
    "build_scripted",
    "draw_subgoal_test",
    "hindsight_action",
    "propose_subgoal",
    "run_hierarchy_episode",
    "run_sub_episode",
    "subgoal_test_step",
    "wire_goals",
    "within_offset_bound",
]
