from . import evaluation
from . import help_text
from . import compute_norm
from . import compute_dual_norm
from . import compute_vecnorm
from . import compute_summing
from . import compute_tensor
from . import verify
from . import cli
