//! Laurent jets in `w = 2πiz`, the heat-type operators `H_j`, the level-5
//! rank–crank PDE and the theta ODE.

mod jet;
mod pde;
mod theta_ode;

pub use jet::{WJet, MIN_DEGREE};
pub use pde::{apply_h, assemble_a5, pde_residual, pde_rhs, A5Route};
pub use theta_ode::{theta_ode_residual, OdeForm, ThetaWhich};
