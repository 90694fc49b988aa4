from .oracle import (  # @UnusedImport
    ed_spectrum, degenerate_groups, ground_degeneracy, fit_slope)
from .report import Check, VerifyReport, PASS, FAIL, REPORT  # @UnusedImport
from .checks import (  # @UnusedImport
    check_propositions, check_theorem_ferro, check_theorem_af,
    check_flow_against_ed, check_energy_splitting, check_hooked_scaling,
    check_ferro_zero_field, verify_battery, low_spectrum, hooked_ratio)
from .scenarios import run_scenarios, max_threads  # @UnusedImport
