#    Copyright 2024 The pypathwise developers

#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at

#        http://www.apache.org/licenses/LICENSE-2.0

#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

import functools
import logging
import os

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)

LOG_LEVEL_VARIABLE = "PYPATHWISE_LOG_LEVEL"


def _configured_level() -> int:
    level = os.environ.get(LOG_LEVEL_VARIABLE, "INFO").upper()
    return getattr(logging, level, logging.INFO)


def logger_decorator(func):
    @functools.wraps(func)
    def wrapper(self, *args, **kwargs):
        name = f"pypathwise.{type(self).__name__}.{func.__name__}"
        outer = getattr(self, "logger", None)
        self.logger = logging.getLogger(name)
        self.logger.setLevel(_configured_level())
        try:
            return func(self, *args, **kwargs)
        finally:
            # nested decorated calls hand the caller its own logger back
            if outer is not None:
                self.logger = outer

    return wrapper
