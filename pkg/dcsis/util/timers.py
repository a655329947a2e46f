from time import perf_counter_ns
from collections import defaultdict
from typing import Dict, List

import numpy as np


class Nanotimers:
    """ A timer with nanosecond precision

    This timer lets you do start() and stop() many times, measuring small intervals.
    It supports measuring many things at once, each having its distinct `name`.
    Every start()/stop() pair is also kept as a separate lap, so that repeated runs
    can be summarized with a median.

    Typical usage:

        # Init
        timers = Nanotimers()

        # Measure a `dcsis`
        for i in range(3):
            timers.start('dcsis')
            rank_features()
            timers.stop('dcsis')

        timers['dcsis']  # total seconds
        timers.median('dcsis')  # median lap, seconds
    """

    __slots__ = ('_timers', '_results', '_laps')

    def __init__(self):
        self._timers = {}
        self._results = defaultdict(int)
        self._laps = defaultdict(list)

    def start(self, name):
        """ Start measuring time for `name` """
        self._timers[name] = perf_counter_ns()

    def stop(self, name):
        """ Stop measuring time for `name`.

        You can add more time by calling start()/stop() again.
        """
        total = perf_counter_ns() - self._timers.pop(name)
        self._results[name] += total
        self._laps[name].append(total)

    def measure(self, name):
        """ Context manager: measure the enclosed block as one lap """
        return _Lap(self, name)

    def __getitem__(self, name) -> float:
        return self._results[name] / 10**9

    def __contains__(self, name):
        return name in self._results

    def laps(self, name) -> List[float]:
        """ Every lap of `name`, seconds """
        return [ns / 10**9 for ns in self._laps[name]]

    def median(self, name) -> float:
        return float(np.median(self.laps(name)))

    def dict(self) -> Dict[str, float]:
        return {name: ns / 10**9 for name, ns in self._results.items()}

    def results(self):
        """ Get results.

        This method does not only return the raw measured times, but also calculates the relative percentages.
        Example return value:

            {
                'your-name': dict(
                    time=1.2,  # seconds
                    perc=120,  # percent of the best time
                ),
                ...
            }
        """
        min_time = max(min(self._results.values()), 1)
        return {
            name: {
                'time': ns / 10**9,
                'perc': 100 * ns / min_time,
            }
            for name, ns in self._results.items()
        }

    def __str__(self):
        """ Format the measured values to make it look great! """
        return '\n'.join(
            f'{name}: {res["time"]:.02f}s ({res["perc"]:.02f}%)'
            for name, res in self.results().items()
        )


class _Lap:
    __slots__ = ('timers', 'name')

    def __init__(self, timers: Nanotimers, name: str):
        self.timers = timers
        self.name = name

    def __enter__(self):
        self.timers.start(self.name)
        return self.timers

    def __exit__(self, *exc):
        self.timers.stop(self.name)
        return False
