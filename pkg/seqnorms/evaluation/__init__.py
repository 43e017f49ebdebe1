from . import optim
from . import spaces
from . import vector_norms
from . import summing
from . import tensor
from . import report
from . import suites
from . import common
from . import script
