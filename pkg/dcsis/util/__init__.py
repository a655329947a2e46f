from .settings_dict import PipelineSettingsDict
from .inspect import pluck_kwargs_from, get_function_defaults
from .timers import Nanotimers
from .parallel import ordered_map, resolve_workers, split_blocks
