//! Distance laws, special functions and numerical integration.

pub mod kernels;
pub mod laws;
pub mod quadrature;
pub mod special;

pub use kernels::{nu, psi, rho, theta, PsiVariant};
pub use laws::{
    association_probabilities, cluster_center_distance_law, nearest_gw_distance_law, network_association_by_integral,
    serving_distance_pdf, Association, DistanceLaw, ServingDistance, Tier,
};
pub use quadrature::{integrate, integrate_pieces, Integral, QuadratureSpec};
pub use special::{exp_integral_e1, upper_incomplete_gamma, upper_incomplete_gamma_scaled};
