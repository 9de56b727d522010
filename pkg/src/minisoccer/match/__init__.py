from .builtin import (
    BuiltinPlaymaker,
    ScriptTrainer,
    decide_player,
    load_episode_script,
    parse_episode_script,
)
from .config import (
    MatchConfig,
    PLAYMAKER_BUILTIN,
    PLAYMAKER_NONE,
    TeamSpec,
    load_match_config,
    match_config_from_dict,
)
from .orchestrate import LaunchFailure, MatchResult, TeamReport, run_match
from .replay import (
    FORMAT_NAME,
    OutOfOrderCycle,
    ReplayWriter,
    SCHEMA_VERSION,
    canonical_json,
    read_replay,
    validate_replay,
)

__all__ = [
    "BuiltinPlaymaker",
    "FORMAT_NAME",
    "LaunchFailure",
    "MatchConfig",
    "MatchResult",
    "OutOfOrderCycle",
    "PLAYMAKER_BUILTIN",
    "PLAYMAKER_NONE",
    "ReplayWriter",
    "SCHEMA_VERSION",
    "ScriptTrainer",
    "TeamReport",
    "TeamSpec",
    "canonical_json",
    "decide_player",
    "load_episode_script",
    "load_match_config",
    "match_config_from_dict",
    "parse_episode_script",
    "read_replay",
    "run_match",
    "validate_replay",
]
