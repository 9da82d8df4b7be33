"""Random substitutions: legal languages, inflation word decompositions,
recognisability, spectral data and topological mixing verdicts."""
from .analysis import (
    AnalysisVerdict,
    BalanceReport,
    LengthSpectrum,
    MixConfig,
    balance_report,
    congruence_obstruction,
    inflation_length_density,
    mixing_verdict,
    return_length_spectrum,
)
from .core import (
    DeterministicSubstitution,
    IntMatrix,
    RandomSubstitution,
    abelianise,
    apply,
    dump_substitution,
    is_compatible,
    is_constant_length,
    is_primitive,
    is_primitive_substitution,
    load_substitution,
    marginals,
    power,
    substitution_matrix,
    validate_substitution,
)
from .decompose import (
    DecompositionSet,
    InflationDecomposition,
    decompositions,
    exact_preimages,
    find_recognisable_word,
    fib_recognisable_word,
    induced,
    is_legal_word,
    is_recognisable,
    local_recognisability,
    recognisability_radius,
    recognisable_ladder,
)
from .language import LanguageTable, complexity, is_legal, legal_words, marginal_containing
from .quadratic import QuadNumber
from .reproduce import reproduce_paper
from .spectral import (
    SpectralData,
    classify_periodicity,
    gcd_report,
    second_eigenvalue_of_periodic,
    spectral_data,
)
from .tiling import (
    TileLengths,
    epsilon_density_check,
    geometric_spectrum,
    natural_lengths,
    ratio_class,
    tiling_mixing_verdict,
)

__all__ = [
    "AnalysisVerdict",
    "BalanceReport",
    "DecompositionSet",
    "DeterministicSubstitution",
    "InflationDecomposition",
    "IntMatrix",
    "LanguageTable",
    "LengthSpectrum",
    "MixConfig",
    "QuadNumber",
    "RandomSubstitution",
    "SpectralData",
    "TileLengths",
    "abelianise",
    "apply",
    "balance_report",
    "classify_periodicity",
    "complexity",
    "congruence_obstruction",
    "decompositions",
    "dump_substitution",
    "epsilon_density_check",
    "exact_preimages",
    "fib_recognisable_word",
    "find_recognisable_word",
    "gcd_report",
    "geometric_spectrum",
    "induced",
    "inflation_length_density",
    "is_compatible",
    "is_constant_length",
    "is_legal",
    "is_legal_word",
    "is_primitive",
    "is_primitive_substitution",
    "is_recognisable",
    "legal_words",
    "load_substitution",
    "local_recognisability",
    "marginal_containing",
    "marginals",
    "mixing_verdict",
    "natural_lengths",
    "power",
    "ratio_class",
    "recognisability_radius",
    "recognisable_ladder",
    "reproduce_paper",
    "return_length_spectrum",
    "second_eigenvalue_of_periodic",
    "spectral_data",
    "substitution_matrix",
    "tiling_mixing_verdict",
    "validate_substitution",
]

__version__ = "0.1.0"
