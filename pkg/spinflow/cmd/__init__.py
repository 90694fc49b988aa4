from . import gaps
from . import spectrum
from . import flow
from . import verify
from . import sweep
from . import help  # @ReservedAssignment
