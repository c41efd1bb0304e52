"""Scenario-file command line front end."""

from .runner import Options, Report, run
from .scenario import Scenario, ScenarioError, parse_scenario

__all__ = ["Options", "Report", "run", "Scenario", "ScenarioError", "parse_scenario"]
