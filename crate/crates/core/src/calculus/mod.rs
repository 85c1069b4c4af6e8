//! Jets of scalar fields, finite differences, quadrature and extrapolation.

mod extrapolate;
mod fd;
mod field;
mod jet;
mod quadrature;

pub use extrapolate::richardson_extrapolate;
pub use fd::{central_first, central_mixed, central_second, FdStep};
pub use field::{
    AreaSlope, AxisymmetricField, HorizonProfile, RadialKind, RadialProfile, ScalarField, Shifted,
};
pub use jet::{jet2, Jet2};
pub use quadrature::{
    gauss_legendre, radial_integrate, radial_integrate_offset, sphere_integrate, RadialQuadrature,
    SphereQuadrature,
};
