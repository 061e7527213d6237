"""Model domains, Dirichlet eigenbases, quadrature and the operators built on them."""
from hamsys.spectral.bases import build_basis
from hamsys.spectral.models import Domain, DomainKind, Field, GridFunction, Mode, SpectralBasis

__all__ = ["Domain", "DomainKind", "Field", "GridFunction", "Mode", "SpectralBasis", "build_basis"]
