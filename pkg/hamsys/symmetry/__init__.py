"""Schwarz rearrangement, polarization, Talenti comparison and the symmetry-breaking probe."""
from hamsys.symmetry.models import (
    BreakingRow,
    GrowthFit,
    HalfSpace,
    PolarizationComparison,
    Rearrangement,
    SchwarzProfile,
    SymmetryReport,
    TalentiReport,
)
from hamsys.symmetry.polarization import (
    best_axis,
    foliated_deficit,
    polarization_comparison,
    polarization_family,
    polarize,
    schwarz_polarization_deficit,
    symmetry_report,
)
from hamsys.symmetry.probe import fit_growth, growth_exponents, symmetry_breaking_probe
from hamsys.symmetry.rearrangement import radial_deficit, schwarz_profile, schwarz_rearrange, talenti_check

__all__ = [
    "BreakingRow",
    "GrowthFit",
    "HalfSpace",
    "PolarizationComparison",
    "Rearrangement",
    "SchwarzProfile",
    "SymmetryReport",
    "TalentiReport",
    "best_axis",
    "fit_growth",
    "foliated_deficit",
    "growth_exponents",
    "polarization_comparison",
    "polarization_family",
    "polarize",
    "radial_deficit",
    "schwarz_polarization_deficit",
    "schwarz_profile",
    "schwarz_rearrange",
    "symmetry_breaking_probe",
    "talenti_check",
]
