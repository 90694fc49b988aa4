from .state import FlowState, StepReport  # @UnusedImport
from .series import series, SeriesResult  # @UnusedImport
from .steps import (  # @UnusedImport
    init_flow, assemble_g, lie_schwinger, step_b, step_c, apply_step,
    finalize, run_flow, translation_pairs, prepare_step, StepContext,
    FinalResult, FlowRun, TranslationPair)
