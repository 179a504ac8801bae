VERSION = (1, 0, 0)
__version__ = '.'.join(map(str, VERSION if VERSION[-1] else VERSION[:2]))


from django.apps import AppConfig

from .exceptions import *
from .elements import *
from .groups import *
from .constructions import *
from .specs import *
from .validation import *
from .logic import *
from .solver import *
from .phases import *
from .obstruction import *
from .amplifier import *
from .cache import *


class SoficlabConfig(AppConfig):
    name = 'soficlab'
    verbose_name = 'Sofic approximation lab'
