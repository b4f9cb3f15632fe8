//! Symmetric polynomials in three variables and the ideal `I_3` of `phi_3`.

pub mod ideal;
pub mod phi;
pub mod poly;

pub use ideal::{exactness_check, finitized_exactness_check, ideal3_basis, ExactnessReport};
pub use phi::{
    coupling, f_j, hyp_ode_check, nested_identity_check, phi3, phi3_symmetry_check,
    qr_identity_check, qr_reduction, squarefree_check,
};
pub use poly::{power_sum, Poly2, Poly3, SymPoly3};
