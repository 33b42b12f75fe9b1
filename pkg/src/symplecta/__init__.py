"""Phase-space geometry of quantum indeterminacy.

Centered convex bodies with hbar-scaled polar duality, quantum blobs and
their Gaussian states, symplectic capacities, and concentration checks for
the hbar-scaled Fourier transform.
"""

from .errors import (ConvergenceError, DegenerateBodyError, DimensionError,
                     DomainError, GridError, InternalConsistencyError,
                     NotPositiveDefiniteError, NotQuantumPairError,
                     NotSymplecticError, SymplectaError)
from .symplectic import (MatrixCheck, PreIwasawaFactors, WilliamsonForm,
                         is_symplectic, pre_iwasawa, random_symplectic,
                         random_symplectic_rotation, require_symplectic,
                         scaling, shear, symplectic_eigenvalues,
                         symplectic_form, symplectic_inverse,
                         symplectic_residual, williamson)
from .bodies import (EllipsoidBody, InclusionResult, MahlerReport,
                     PolytopeBody, QuantumPairReport, ball, box, contains,
                     ellipsoid, interval, linear_image, mahler_volume,
                     polar_dual, polytope_from_vertices, quantum_pair_check,
                     scale_body, support_function, volume)
from .states import (CovarianceMatrix, GaussianState, Generator, Marginal,
                     QuantumVerdict, covariance, covariance_ellipsoid,
                     fourier_generator, generator_matrix,
                     hermite_product_covariance, marginals, metaplectic_apply,
                     pauli_partners, quadratic_phase_generator,
                     quantum_condition_check, robertson_schrodinger_check,
                     scaling_generator, standard_state, wigner_matrix)
from .blobs import (BlobProjections, JohnEllipsoidResult, QuantumBlob,
                    RescaledBlobResult, blob_from_symplectic, blob_generator,
                    blob_normal_form, blob_to_gaussian, gaussian_to_blob,
                    john_of_pair, john_of_polytope_product, project_blob,
                    rescaled_blob_family)
from .capacities import (CapacityValue, ProjectionAreaReport,
                         ellipsoid_capacity, hz_planar, hz_product_pair,
                         projection_area_check)
from .concentration import (ConcentrationReport, DonohoStarkReport,
                            HardyReport, PolarBoundReport, SampledFunction1D,
                            concentration, concentration_report,
                            donoho_stark_check, gaussian_function,
                            hardy_check, hbar_fourier, hermite_function,
                            polar_concentration_bound, sampled_function)

__version__ = "0.1.0"
